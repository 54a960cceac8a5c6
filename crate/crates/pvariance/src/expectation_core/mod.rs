//! Probability spaces, random elements, and the expectation operator that the
//! rest of the crate consumes, with closed-form moment providers and an
//! adaptive quadrature fallback.

pub mod element;
mod expect;
pub mod quadrature;
pub mod scalar;
pub mod space;

pub use element::Element;
pub use scalar::{binomial, factorial, ln_gamma, pochhammer, pochhammer_shift, Scalar};
pub use space::{beta_integral, Endpoint, ProbSpace, WeightSpec};

use crate::error::Result;

/// Free-function form of [`ProbSpace::expect`].
pub fn expect(space: &ProbSpace, f: &Element) -> Result<Scalar> {
    space.expect(f)
}

/// Free-function form of [`ProbSpace::expect_product`].
pub fn expect_product(space: &ProbSpace, f: &Element, g: &Element) -> Result<Scalar> {
    space.expect_product(f, g)
}

/// Free-function form of [`ProbSpace::moment_kz`].
pub fn moment_kz(space: &ProbSpace, k: usize, z: &Element) -> Result<Scalar> {
    space.moment_kz(k, z)
}
