//! Exact symbolic computation for the planar Galilean conformal algebra.
//!
//! The crate provides, over the computable coefficient field `Q(i)`:
//!
//! - [`scalar`]: exact Gaussian-rational arithmetic and its text syntax;
//! - [`gca`]: the algebra itself — basis `{L_n, H_n, I_n, J_n}`, grading,
//!   and the bracket;
//! - [`rank1`]: the two families of rank-one modules on two-variable
//!   polynomial rings, with numeric and symbolic-in-`n` actions;
//! - [`tensor`]: tensor products of rank-one factors with a restricted
//!   module, the composite monomial order, degrees, and Leibniz actions;
//! - [`linalg`]: exact sparse spans, generalized Vandermonde matrices with
//!   a closed-form determinant and its cofactor oracle, and component
//!   extraction from exponential-polynomial samples;
//! - [`theorems`]: stable spans `N(X, g, p)`, the certified exponent
//!   moves, the `D_g` invariant, truncated generation closures, the
//!   constructive simplicity reduction, and parameter recovery;
//! - [`sample`]: seeded random generation for property checks.
//!
//! Everything is exact and deterministic: values are immutable, maps are
//! ordered, and operations are pure, so results are reproducible bit for
//! bit and safe to share across threads.

// Error variants carry exact counterexample data (big rationals); they are
// cold paths and deliberately not boxed.
#![allow(clippy::result_large_err)]

pub mod gca;
pub mod linalg;
pub mod rank1;
pub mod sample;
pub mod scalar;
pub mod tensor;
pub mod theorems;

pub use scalar::Scalar;
