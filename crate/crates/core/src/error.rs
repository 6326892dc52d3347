use thiserror::Error;

use crate::coefficients::{Bidegree, CoeffRing};

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("the universal preset F2[rho,tau] only exists at l = 2, got l = {0}")]
    UniversalRequiresTwo(u32),

    #[error("coefficient rings differ: {left} vs {right}")]
    RingMismatch { left: CoeffRing, right: CoeffRing },

    /// Moving a coefficient past a reduced power needs the action of the
    /// Steenrod algebra on the base cohomology, which only the closed preset
    /// determines.
    #[error("cannot commute the scalar `{scalar}` past `{operation}` in the universal preset")]
    UnsupportedScalarCommutation { scalar: String, operation: String },

    #[error("rewriting did not terminate within {fuel} steps")]
    FuelExhausted { fuel: u64 },

    #[error("`{0}` is already admissible")]
    AlreadyAdmissible(String),

    #[error("`{0}` does not match the hypothesis of any Adem relation")]
    NoMatchingRelation(String),

    #[error("the Milnor pairing is only evaluated in the closed preset")]
    UniversalPairing,

    #[error("bidegree {bidegree}: {operations} admissible monomials but {duals} Milnor monomials")]
    BasisSizeMismatch {
        bidegree: Bidegree,
        operations: usize,
        duals: usize,
    },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("tensor arities differ: {0} vs {1}")]
    ArityMismatch(usize, usize),
}
