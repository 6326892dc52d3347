//! Fixed inputs shared by the benchmarks.

use motivic_steenrod::{
    milnor_basis_in_degree, op_basis_in_degree, CoeffRing, MilnorMonomial, OpElement, OpMonomial,
    Prime,
};

/// Every product `a * b` of admissible monomials with `deg a + deg b == degree`.
pub fn admissible_pairs(prime: Prime, degree: i32) -> Vec<(OpMonomial, OpMonomial)> {
    let mut out = Vec::new();
    for d in 0..=degree {
        for a in op_basis_in_degree(d, prime) {
            for b in op_basis_in_degree(degree - d, prime) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

/// The unnormalized composite of each pair as one element.
pub fn composites(ring: CoeffRing, pairs: &[(OpMonomial, OpMonomial)]) -> Vec<OpElement> {
    pairs
        .iter()
        .filter_map(|(a, b)| a.compose(b))
        .map(|w| OpElement::from_monomial(ring, w))
        .collect()
}

/// The Milnor monomial of `degree` with the most `tau` factors, the costliest
/// one to take coproducts of.
pub fn heaviest_monomial(prime: Prime, degree: i32) -> MilnorMonomial {
    milnor_basis_in_degree(degree, prime)
        .into_iter()
        .max_by_key(|m| (m.num_taus(), *m))
        .expect("degree has a Milnor monomial")
}
