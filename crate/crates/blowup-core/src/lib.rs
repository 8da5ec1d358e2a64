//! Numerical and exact-arithmetic verification of the closed-form machinery
//! behind blow-up constructions on the upper half-space: the standard bubble
//! family and its derivative kernels, algebraic Weyl-type perturbation
//! tensors, sphere moment identities, the reduction polynomials `I(s)` and
//! `J(s)` together with their integer certificates, the reduced-energy
//! profile and its Hessian in the translation parameters, and the
//! warped-product energy comparison that yields non-uniqueness.
//!
//! Everything here is a pure function of its inputs. Claims come in pairs:
//! a closed form and an independent route (adaptive quadrature, exact sphere
//! moments, exact integer arithmetic, or finite differences), and the test
//! suites check the two routes against each other at fixed tolerances.

pub mod bubble;
pub mod curvature;
pub mod energy;
pub mod error;
pub mod linalg;
pub mod nonuniq;
pub mod reduction;
pub mod report;
pub mod specfun;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
