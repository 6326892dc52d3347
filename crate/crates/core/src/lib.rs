//! Exact arithmetic in the mod-`l` motivic Steenrod algebra over a base
//! whose coefficient ring is `F_l`, `F_2[tau]` or `F_2[rho, tau]`.
//!
//! - [`ops`]: admissible monomials and normalization by the motivic Adem
//!   relations.
//! - [`dual`]: the dual Hopf algebroid `(A, Gamma)` with its structure maps.
//! - [`pairing`]: the pairing between the two bases and convolution of
//!   functionals.
//! - [`classical`]: the classical algebra, reached by `rho -> 0`, `tau -> 1`.

pub mod checks;
pub mod classical;
pub mod coefficients;
pub mod dual;
pub mod error;
pub mod linalg;
pub mod ops;
pub mod pairing;

pub use classical::{
    classical_multiply, classical_normalize, classical_normalize_squares, realize, ClassicalElement,
};
pub use coefficients::{
    binom_mod, scalar_multiply, specialize, BaseScalar, Bidegree, CoeffRing, Preset, Prime,
    ScalarMonomial,
};
pub use dual::{
    antipode, coproduct, counit, eta_left, eta_right, gamma_multiply, generator_antipode,
    generator_coproduct, milnor_basis, milnor_basis_in_degree, milnor_bidegree, monomial_coproduct,
    tensor_normalize, DualGenerator, GammaElement, MilnorMonomial, TensorElement,
};
pub use error::{AlgebraError, Result};
pub use linalg::{matrix_invertible, FpMatrix};
pub use ops::{
    adem_step, is_admissible, normalize, op_basis, op_basis_in_degree, op_bidegree, op_multiply,
    Normalizer, OpElement, OpGenerator, OpMonomial, DEFAULT_FUEL,
};
pub use pairing::{
    convolution_multiply, functional_of, pair, pairing_matrix, DualFunctional, SlotOrder,
};
