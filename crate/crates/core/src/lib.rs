//! Exact-arithmetic toolkit for linear-programming bounds on spherical codes
//! with constrained inner products, together with the supporting machinery:
//! orthogonal polynomial families, Sturm-chain root certification, a
//! certificate-checked rational simplex solver, positive-semidefinite
//! completion of partial matrices, Hamming-cube positivity tests, and
//! verification of entrywise positivity preservers.
//!
//! Every result that claims to be exact is computed over arbitrary-precision
//! rationals, and every certificate handed back by a solver is re-verified
//! by direct substitution before it is returned.

pub mod rat;
pub mod poly;
pub mod sturm;
pub mod codes;
pub mod delsarte;
pub mod hamming;
pub mod matio;
pub mod orthopoly;
pub mod preservers;
pub mod psd;
pub mod simplex;

pub use poly::Poly;
pub use rat::{Int, Rat};
