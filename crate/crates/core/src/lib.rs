//! The commutative algebra `R_n = R[x] / (x^n + 1)` on `R^n`.
//!
//! Exact arithmetic lives in [`algebra`] and [`sigma`]; [`spectral`] provides
//! the `O(n log n)` path through the eigenvalues of the representation
//! matrix. [`group`] covers zero divisors and inverses, [`haar`] the
//! invariant measure on the unit group, and [`analytic`] finite-difference
//! probes for differentiable maps `R_n → R_n`.

pub mod algebra;
pub mod analytic;
pub mod error;
pub mod group;
pub mod haar;
pub mod mc;
pub mod par;
pub mod sigma;
pub mod spectral;

pub use algebra::{
    algebra_norm, det_lu, euclidean_distance, multiply_naive, poly_eval, power, AlgebraContext, Element, ElementJson,
};
pub use error::{AlgebraError, Result};
pub use mc::MonteCarlo;
pub use par::Execution;
pub use sigma::{generator_power, sigma, sigma_inverse, SigmaMatrix};
pub use spectral::{
    det_via_spectrum, inverse_spectrum, inverse_via_spectrum, multiply_fast, spectrum, Determinant, SpectralPlan,
    Spectrum,
};
