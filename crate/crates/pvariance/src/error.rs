//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors surfaced by expectation, basis-construction, fitting and solver code.
#[derive(Debug, Error)]
pub enum Error {
    /// A required moment integral does not converge (e.g. `x^λ` with `λ ≤ −1` near 0).
    #[error("divergent moment: {0}")]
    DivergentMoment(String),

    /// The element representation cannot be evaluated on the given space
    /// (e.g. tabulated values against a continuous interval).
    #[error("incompatible representation: {0}")]
    IncompatibleRepr(String),

    /// A variance evaluated below the negative tolerance floor under the
    /// float backend; indicates a genuine numeric breach, not roundoff.
    #[error("variance {0} below negative tolerance floor")]
    NegativeVariance(f64),

    /// A variance needed as a denominator is zero.
    #[error("degenerate (zero) variance: {0}")]
    DegenerateVariance(String),

    /// Basis construction hit a zero variance / zero Gram determinant.
    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),

    /// Linear system is singular with an inconsistent right-hand side.
    #[error("inconsistent singular system")]
    InconsistentSystem,

    /// Matrix columns are linearly dependent where full rank is required.
    #[error("rank-deficient matrix")]
    RankDeficient,

    /// The modified normal-equation matrix of the overdetermined solver is singular.
    #[error("singular modified system: {0}")]
    SingularModifiedSystem(String),

    /// Quadrature nodes must be pairwise distinct.
    #[error("duplicate quadrature nodes")]
    DuplicateNodes,

    /// Supplied envelope bounds fail verification.
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    /// A family supplied where orthogonality is required is not orthogonal.
    #[error("family not orthogonal: {0}")]
    NotOrthogonal(String),

    /// Family parameters violate their admissibility constraints.
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    /// A lower parameter of a terminating hypergeometric series hits a
    /// nonpositive integer inside the summation range.
    #[error("pole in lower hypergeometric parameters: {0}")]
    PoleInLowerParams(String),

    /// Malformed textual input (CSV cell, expression, number).
    #[error("parse error: {0}")]
    ParseError(String),

    /// Duplicate abscissa in an ingested sample set.
    #[error("duplicate x value: {0}")]
    DuplicateX(String),
}

pub type Result<T> = std::result::Result<T, Error>;
