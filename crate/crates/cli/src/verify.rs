//! Verification suites run by `steenrod verify`.

use clap::ValueEnum;
use motivic_steenrod::checks;
use motivic_steenrod::{
    milnor_basis, milnor_basis_in_degree, op_basis, op_basis_in_degree, pairing_matrix,
    AlgebraError, CoeffRing, DualGenerator, GammaElement, MilnorMonomial, Normalizer, OpElement,
    OpGenerator, OpMonomial, Prime,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    AdemOracle,
    Associativity,
    Health,
    Coassoc,
    Antipode,
    BasisCount,
    Pairing,
    CrossModel,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::AdemOracle => "adem-oracle",
            Suite::Associativity => "associativity",
            Suite::Health => "health",
            Suite::Coassoc => "coassoc",
            Suite::Antipode => "antipode",
            Suite::BasisCount => "basis-count",
            Suite::Pairing => "pairing",
            Suite::CrossModel => "cross-model",
        }
    }
}

/// Random pairs for the multiplicativity part of `coassoc`.
const RANDOM_PRODUCTS: usize = 500;

/// Bounds for a run; `None` picks the suite's default.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub max_degree: Option<i32>,
    pub max_p: Option<i32>,
    pub samples: Option<usize>,
    pub exhaustive_degree: Option<i32>,
    pub seed: u64,
    pub fuel: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_degree: None,
            max_p: None,
            samples: None,
            exhaustive_degree: None,
            seed: 0,
            fuel: motivic_steenrod::DEFAULT_FUEL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub ring: CoeffRing,
    pub checked: usize,
    pub skipped: usize,
    pub notes: Vec<String>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

fn judge(label: impl FnOnce() -> String, r: Result<bool, AlgebraError>) -> Outcome {
    match r {
        Ok(true) => Outcome::Pass,
        Ok(false) => Outcome::Fail(label()),
        Err(AlgebraError::UnsupportedScalarCommutation { .. }) => Outcome::Skip,
        Err(e) => Outcome::Fail(format!("{}: {e}", label())),
    }
}

fn report(suite: Suite, ring: CoeffRing, outcomes: Vec<Outcome>, notes: Vec<String>) -> Report {
    let mut r = Report {
        suite,
        ring,
        checked: 0,
        skipped: 0,
        notes,
        failures: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Pass => r.checked += 1,
            Outcome::Skip => r.skipped += 1,
            Outcome::Fail(msg) => {
                r.checked += 1;
                r.failures.push(msg);
            }
        }
    }
    r
}

pub fn run(suite: Suite, ring: CoeffRing, bounds: &Bounds) -> Report {
    let normalizer = Normalizer::with_fuel(bounds.fuel);
    let prime = ring.prime();
    match suite {
        Suite::AdemOracle => {
            let max = bounds.max_degree.unwrap_or(40);
            let outcomes: Vec<Outcome> = if prime.is_two() {
                square_pairs(max)
                    .par_iter()
                    .map(|&(a, b)| {
                        judge(
                            || format!("Sq{a} Sq{b}: normal form differs from the classical one"),
                            checks::squares_match_classical(&normalizer, ring, a, b),
                        )
                    })
                    .collect()
            } else {
                two_letter_words(prime, max)
                    .par_iter()
                    .map(|m| {
                        judge(
                            || format!("{m}: normal form differs from the classical one"),
                            checks::matches_classical(&normalizer, ring, m),
                        )
                    })
                    .collect()
            };
            let note = format!("{} two-letter words of degree <= {max}", outcomes.len());
            report(suite, ring, outcomes, vec![note])
        }
        Suite::Associativity | Suite::Health => {
            let (max, samples) = match suite {
                Suite::Associativity => (
                    bounds.max_degree.unwrap_or(30),
                    bounds.samples.unwrap_or(1_000),
                ),
                _ => (
                    bounds.max_degree.unwrap_or(60),
                    bounds.samples.unwrap_or(10_000),
                ),
            };
            let arity = if suite == Suite::Associativity { 3 } else { 2 };
            let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
            let cases: Vec<Vec<OpMonomial>> = (0..samples)
                .map(|_| random_monomials(&mut rng, prime, arity, max))
                .collect();
            let outcomes = cases
                .par_iter()
                .map(|ms| {
                    let es: Vec<OpElement> = ms
                        .iter()
                        .map(|m| OpElement::from_monomial(ring, m.clone()))
                        .collect();
                    let label = || {
                        let shown: Vec<String> = ms.iter().map(|m| format!("({m})")).collect();
                        shown.join(" * ")
                    };
                    let r = if arity == 3 {
                        checks::associative(&normalizer, &es[0], &es[1], &es[2])
                    } else {
                        checks::rewrite_healthy(&normalizer, &es[0], &es[1])
                    };
                    judge(label, r)
                })
                .collect();
            report(
                suite,
                ring,
                outcomes,
                vec![format!(
                    "{samples} random cases of total degree <= {max}, seed {}",
                    bounds.seed
                )],
            )
        }
        Suite::Coassoc => {
            let (ms, mut notes) = dual_sample(prime, bounds);
            let generators = generators_up_to(prime, bounds.max_degree.unwrap_or(60));
            let mut outcomes: Vec<Outcome> = ms
                .par_iter()
                .chain(generators.par_iter())
                .map(|m| {
                    let co = checks::coassociative(ring, m);
                    match co {
                        Ok(true) if !checks::counital(ring, m) => {
                            Outcome::Fail(format!("{m}: counit law fails"))
                        }
                        other => judge(|| format!("{m}: not coassociative"), other),
                    }
                })
                .collect();
            notes.push(format!("{} generators", generators.len()));

            // every generator times every monomial up to the exhaustive
            // degree, then random pairs up to degree 40
            let exhaustive = bounds.exhaustive_degree.unwrap_or(30);
            let mut pairs: Vec<(MilnorMonomial, MilnorMonomial)> =
                generators_up_to(prime, exhaustive)
                    .into_iter()
                    .flat_map(|g| {
                        let d = g.bidegree(prime).p;
                        monomials_up_to(prime, exhaustive - d)
                            .into_iter()
                            .map(move |m| (g, m))
                    })
                    .collect();
            notes.push(format!(
                "{} generator-times-monomial products of degree <= {exhaustive}",
                pairs.len()
            ));
            let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
            let pool = monomials_up_to(prime, 40);
            for _ in 0..RANDOM_PRODUCTS {
                let a = pool[rng.random_range(0..pool.len())];
                let room = 40 - a.bidegree(prime).p;
                let fits: Vec<&MilnorMonomial> = pool
                    .iter()
                    .filter(|m| m.bidegree(prime).p <= room)
                    .collect();
                pairs.push((a, *fits[rng.random_range(0..fits.len())]));
            }
            outcomes.par_extend(pairs.par_iter().map(|(g, m)| {
                let x = GammaElement::from_monomial(ring, *g);
                let y = GammaElement::from_monomial(ring, *m);
                judge(
                    || format!("Delta({g} * {m}) != Delta({g}) Delta({m})"),
                    checks::coproduct_multiplicative(&x, &y),
                )
            }));
            notes.push(format!(
                "{RANDOM_PRODUCTS} random products of degree <= 40, seed {}",
                bounds.seed
            ));
            report(suite, ring, outcomes, notes)
        }
        Suite::Antipode => {
            let (ms, notes) = dual_sample(prime, bounds);
            let mut outcomes: Vec<Outcome> = ms
                .par_iter()
                .map(|m| {
                    if checks::antipode_laws(&GammaElement::from_monomial(ring, *m)) {
                        Outcome::Pass
                    } else {
                        Outcome::Fail(format!("{m}: antipode law fails"))
                    }
                })
                .collect();
            for r in 0..=4 {
                for g in [DualGenerator::Tau(r), DualGenerator::Xi(r)] {
                    if g == DualGenerator::Xi(0) {
                        continue;
                    }
                    let x = GammaElement::from_monomial(ring, g.monomial());
                    outcomes.push(if checks::antipode_laws(&x) {
                        Outcome::Pass
                    } else {
                        Outcome::Fail(format!("{}: antipode recursion fails", g.monomial()))
                    });
                }
            }
            outcomes.push(if checks::antipode_swaps_units(ring) {
                Outcome::Pass
            } else {
                Outcome::Fail("c(eta_L(t)) != eta_R(t)".into())
            });
            let involutive = ms
                .par_iter()
                .filter(|m| {
                    let x = GammaElement::from_monomial(ring, **m);
                    motivic_steenrod::antipode(&motivic_steenrod::antipode(&x)) == x
                })
                .count();
            let mut notes = notes;
            notes.push(format!(
                "c(c(x)) = x on {involutive} of {} monomials (reported, not required)",
                ms.len()
            ));
            report(suite, ring, outcomes, notes)
        }
        Suite::BasisCount => {
            let max = bounds.max_p.unwrap_or(50);
            let mut notes = Vec::new();
            let mut outcomes = Vec::new();
            for p in 0..=max {
                for q in 0..=p {
                    let (a, d) = (op_basis(p, q, prime).len(), milnor_basis(p, q, prime).len());
                    if a + d == 0 {
                        continue;
                    }
                    notes.push(format!("({p},{q}): {a} admissible, {d} Milnor"));
                    outcomes.push(if a == d {
                        Outcome::Pass
                    } else {
                        Outcome::Fail(format!("({p},{q}): {a} admissible vs {d} Milnor"))
                    });
                }
            }
            report(suite, ring, outcomes, notes)
        }
        Suite::Pairing => {
            let max = bounds.max_p.unwrap_or(30);
            let bidegrees: Vec<(i32, i32)> = (0..=max)
                .flat_map(|p| (0..=p).map(move |q| (p, q)))
                .collect();
            let outcomes = bidegrees
                .par_iter()
                .map(|&(p, q)| {
                    let r = pairing_matrix(p, q, prime).and_then(|m| m.is_invertible());
                    judge(|| format!("({p},{q}): pairing matrix is singular"), r)
                })
                .collect();
            report(
                suite,
                CoeffRing::closed(prime),
                outcomes,
                vec![format!("bidegrees with p <= {max}, closed preset")],
            )
        }
        Suite::CrossModel => {
            let max = bounds.max_degree.unwrap_or(24);
            let closed = CoeffRing::closed(prime);
            let pairs: Vec<(OpMonomial, OpMonomial)> = (0..=max)
                .flat_map(|pu| (0..=max - pu).map(move |pv| (pu, pv)))
                .flat_map(|(pu, pv)| {
                    let vs = op_basis_in_degree(pv, prime);
                    op_basis_in_degree(pu, prime)
                        .into_iter()
                        .flat_map(move |u| vs.clone().into_iter().map(move |v| (u.clone(), v)))
                })
                .collect();
            let outcomes = pairs
                .par_iter()
                .map(|(u, v)| {
                    judge(
                        || format!("({u}) * ({v}): functional differs from the convolution"),
                        checks::pairing_compatible(&normalizer, closed, u, v),
                    )
                })
                .collect();
            report(
                suite,
                closed,
                outcomes,
                vec![format!(
                    "{} admissible pairs of total degree <= {max}, closed preset",
                    pairs.len()
                )],
            )
        }
    }
}

/// `Sq^a Sq^b` with `0 < a < 2b` at `l = 2`; `P^a P^b` and `P^a beta P^b`
/// below the admissible range at odd `l`.
/// Every `(a, b)` with `0 < a < 2b` and `a + b <= max`, including the
/// `Sq^1 Sq^{odd}` that vanish.
pub fn square_pairs(max_degree: i32) -> Vec<(u32, u32)> {
    let max = max_degree.max(0) as u32;
    (1..=max)
        .flat_map(|b| {
            (1..2 * b)
                .take_while(move |a| a + b <= max)
                .map(move |a| (a, b))
        })
        .collect()
}

pub fn two_letter_words(prime: Prime, max_degree: i32) -> Vec<OpMonomial> {
    let mut out = Vec::new();
    let max = max_degree.max(0) as u32;
    if prime.is_two() {
        for b in 1..=max {
            for a in (1..2 * b).take_while(|a| a + b <= max) {
                // Sq1 Sq(odd) contains beta beta and is zero on both sides
                out.extend(OpMonomial::from_squares(&[a, b]));
            }
        }
    } else {
        let l = prime.value();
        let step = 2 * (l - 1);
        for a in 1..=max / step {
            for b in 1..=max / step {
                for middle in [false, true] {
                    if (a + b) * step + middle as u32 > max || a >= l * b + middle as u32 {
                        continue;
                    }
                    let word = [OpGenerator::Power(a)]
                        .into_iter()
                        .chain(middle.then_some(OpGenerator::Bockstein))
                        .chain([OpGenerator::Power(b)]);
                    out.extend(OpMonomial::new(prime, word));
                }
            }
        }
    }
    out
}

/// `arity` random admissible monomials of total degree at most `max`.
pub fn random_monomials(
    rng: &mut impl Rng,
    prime: Prime,
    arity: usize,
    max: i32,
) -> Vec<OpMonomial> {
    loop {
        let mut budget = max;
        let mut out = Vec::with_capacity(arity);
        for _ in 0..arity {
            let d = rng.random_range(0..=budget);
            let basis = op_basis_in_degree(d, prime);
            if basis.is_empty() {
                break;
            }
            budget -= d;
            out.push(basis[rng.random_range(0..basis.len())].clone());
        }
        if out.len() == arity {
            // the first factor tends to be largest; mix the order
            let k = rng.random_range(0..arity);
            out.rotate_left(k);
            return out;
        }
    }
}

/// Every Milnor monomial up to the exhaustive degree, then `samples` (default
/// 8) seeded picks from each higher degree up to the maximum.
fn dual_sample(prime: Prime, bounds: &Bounds) -> (Vec<MilnorMonomial>, Vec<String>) {
    let max = bounds.max_degree.unwrap_or(60);
    let exhaustive = bounds.exhaustive_degree.unwrap_or(30).min(max);
    let per_degree = bounds.samples.unwrap_or(8);
    let mut ms = monomials_up_to(prime, exhaustive);
    let full = ms.len();
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    for d in exhaustive + 1..=max {
        let mut basis = milnor_basis_in_degree(d, prime);
        if basis.len() <= per_degree {
            ms.extend(basis);
            continue;
        }
        for _ in 0..per_degree {
            let i = rng.random_range(0..basis.len());
            ms.push(basis.swap_remove(i));
        }
    }
    let mut notes = vec![format!("all {full} monomials of degree <= {exhaustive}")];
    if exhaustive < max {
        notes.push(format!(
            "{} more of degree {}..={max}, up to {per_degree} per degree, seed {}",
            ms.len() - full,
            exhaustive + 1,
            bounds.seed
        ));
    }
    (ms, notes)
}

fn monomials_up_to(prime: Prime, max: i32) -> Vec<MilnorMonomial> {
    (0..=max)
        .flat_map(|p| milnor_basis_in_degree(p, prime))
        .collect()
}

fn generators_up_to(prime: Prime, max: i32) -> Vec<MilnorMonomial> {
    let mut out = Vec::new();
    for r in 0.. {
        let t = MilnorMonomial::tau(r);
        if t.bidegree(prime).p > max {
            break;
        }
        out.push(t);
        let x = MilnorMonomial::xi(r + 1, 1);
        if x.bidegree(prime).p <= max {
            out.push(x);
        }
    }
    out
}
