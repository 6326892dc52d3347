use super::{tau_bidegree, xi_bidegree, MilnorMonomial};
use crate::coefficients::{Bidegree, Prime};

/// All coefficient-free Milnor monomials of bidegree `(p, q)`, sorted by
/// the monomial order.
pub fn milnor_basis(p: i32, q: i32, prime: Prime) -> Vec<MilnorMonomial> {
    if p < 0 || q < 0 {
        return Vec::new();
    }
    let generators = generators_up_to(p, prime);
    let mut out = Vec::new();
    search(
        &generators,
        0,
        Bidegree::new(p, q),
        MilnorMonomial::one(),
        &mut out,
    );
    out.sort();
    out
}

/// All coefficient-free Milnor monomials of degree `p`, any weight.
pub fn milnor_basis_in_degree(p: i32, prime: Prime) -> Vec<MilnorMonomial> {
    let mut out: Vec<MilnorMonomial> = (0..=p).flat_map(|q| milnor_basis(p, q, prime)).collect();
    out.sort();
    out
}

#[derive(Clone, Copy)]
enum Gen {
    Tau(u32),
    Xi(u32),
}

fn generators_up_to(p: i32, prime: Prime) -> Vec<(Gen, Bidegree)> {
    let mut gens = Vec::new();
    for r in 0.. {
        let b = tau_bidegree(r, prime);
        if b.p > p {
            break;
        }
        gens.push((Gen::Tau(r), b));
    }
    for r in 1.. {
        let b = xi_bidegree(r, prime);
        if b.p > p {
            break;
        }
        gens.push((Gen::Xi(r), b));
    }
    gens
}

fn search(
    gens: &[(Gen, Bidegree)],
    index: usize,
    remaining: Bidegree,
    acc: MilnorMonomial,
    out: &mut Vec<MilnorMonomial>,
) {
    if remaining == Bidegree::ZERO {
        out.push(acc);
        return;
    }
    let Some(&(gen, b)) = gens.get(index) else {
        return;
    };
    let max_exp = match gen {
        Gen::Tau(_) => 1,
        Gen::Xi(_) => remaining.p / b.p,
    };
    for e in 0..=max_exp {
        let rest = remaining - b.scale(e);
        if rest.p < 0 || rest.q < 0 {
            break;
        }
        let next = match (gen, e) {
            (_, 0) => acc,
            (Gen::Tau(r), _) => acc.with_tau(r).0,
            (Gen::Xi(r), e) => acc.times_xi(r, e as u32),
        };
        search(gens, index + 1, rest, next, out);
    }
}
