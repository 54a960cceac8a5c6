//! Terminating generalized hypergeometric series with exact coefficients and
//! detection of poles in the lower parameters inside the summation range.

use crate::error::{Error, Result};
use crate::expectation_core::Scalar;

/// A series `Σ_k Π(a_i)_k / (Π(b_j)_k k!) x^k` that terminates because at
/// least one upper parameter is a nonpositive integer.
#[derive(Debug, Clone)]
pub struct HypTerminating {
    upper: Vec<Scalar>,
    lower: Vec<Scalar>,
    degree: usize,
}

impl HypTerminating {
    pub fn new(upper: Vec<Scalar>, lower: Vec<Scalar>) -> Result<Self> {
        let degree = upper
            .iter()
            .filter_map(|a| {
                a.to_exact_i64()
                    .filter(|v| *v <= 0)
                    .map(|v| (-v) as usize)
            })
            .min()
            .ok_or_else(|| {
                Error::ConstraintViolation(
                    "series does not terminate: no nonpositive-integer upper parameter".into(),
                )
            })?;
        Ok(Self {
            upper,
            lower,
            degree,
        })
    }

    /// Degree of the terminating polynomial (index of the last possibly
    /// nonzero term).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exact coefficients `[u_0, …, u_n]`, `u_k = Π(a_i)_k / (Π(b_j)_k k!)`.
    ///
    /// A lower parameter hitting a nonpositive integer strictly before the
    /// series terminates is an error unless the numerator vanished first.
    pub fn coeffs(&self) -> Result<Vec<Scalar>> {
        let n = self.degree;
        let mut out = Vec::with_capacity(n + 1);
        let mut term = Scalar::one();
        out.push(term.clone());
        for k in 0..n {
            let kf = Scalar::from_int(k as i64);
            let mut num = Scalar::one();
            for a in &self.upper {
                num = num * (a + &kf);
            }
            if num.is_zero() {
                // An upper parameter reached zero: every later term vanishes.
                out.resize(n + 1, Scalar::zero());
                return Ok(out);
            }
            let mut den = Scalar::from_int(k as i64 + 1);
            for b in &self.lower {
                let f = b + &kf;
                if f.is_zero() {
                    return Err(Error::PoleInLowerParams(format!(
                        "lower parameter {b} vanishes at term {}",
                        k + 1
                    )));
                }
                den = den * f;
            }
            term = term * (num / den);
            out.push(term.clone());
        }
        Ok(out)
    }

    /// Value of the terminating series at `x`.
    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let coeffs = self.coeffs()?;
        // Horner from the top.
        let mut acc = Scalar::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        Ok(acc)
    }

    /// Value of the terminating series at the argument `1` (plain sum of the
    /// coefficients).
    pub fn eval_at_one(&self) -> Result<Scalar> {
        Ok(self
            .coeffs()?
            .into_iter()
            .fold(Scalar::zero(), |a, c| a + c))
    }
}
