//! Generalized covariance algebra built around a fixed reference element,
//! with least-variance fitting, orthogonalization, hypergeometric polynomial
//! families, overdetermined-system solving, and quadrature/inequality tools.

pub mod error;
pub mod expectation_core;
pub(crate) mod linalg;
pub mod analysis_extras;
pub mod approx;
pub mod odsolve;
pub mod pcov;
pub mod polyfam;
pub mod uncorrelate;

pub use error::{Error, Result};
pub use expectation_core::{Element, ProbSpace, Scalar, WeightSpec};
pub use pcov::{FixedVar, PCovOp};
