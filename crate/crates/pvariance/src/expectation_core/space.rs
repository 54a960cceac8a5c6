//! Probability spaces carrying the normalized expectation operator:
//! weighted continuous intervals with closed-form moment providers,
//! weighted discrete sample sets, and Euclidean vector spaces.

use std::sync::Arc;

use super::quadrature;
use super::scalar::{beta_f64, binomial, ln_gamma, pochhammer_shift, Scalar};
use crate::error::{Error, Result};

/// Upper endpoint of a continuous interval; `PosInf` only for gamma-type weights.
#[derive(Clone, Debug)]
pub enum Endpoint {
    Finite(Scalar),
    PosInf,
}

/// Weight families with closed-form moments, plus an opaque numeric fallback.
#[derive(Clone)]
pub enum WeightSpec {
    /// Constant weight 1 on the interval.
    Uniform01,
    /// `x^a (1−x)^b` on [0, 1]; exponents > −1.
    PowerBeta { a_exp: Scalar, b_exp: Scalar },
    /// `x^a e^{−rate·x}` on [0, ∞); `a > −1`, `rate > 0`.
    PowerGamma { a_exp: Scalar, rate: Scalar },
    /// The four half-integer cases of the Jacobi weight on [−1, 1].
    ChebyshevKind(u8),
    /// `(1−x)^α (1+x)^β` on [−1, 1]; `α, β > −1`.
    JacobiShifted { alpha: Scalar, beta: Scalar },
    /// Arbitrary positive weight evaluated numerically.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for WeightSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightSpec::Uniform01 => write!(f, "Uniform01"),
            WeightSpec::PowerBeta { a_exp, b_exp } => write!(f, "PowerBeta({a_exp:?},{b_exp:?})"),
            WeightSpec::PowerGamma { a_exp, rate } => write!(f, "PowerGamma({a_exp:?},{rate:?})"),
            WeightSpec::ChebyshevKind(k) => write!(f, "ChebyshevKind({k})"),
            WeightSpec::JacobiShifted { alpha, beta } => write!(f, "Jacobi({alpha:?},{beta:?})"),
            WeightSpec::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// An expectation operator `E[·]`.
#[derive(Clone, Debug)]
pub enum ProbSpace {
    ContinuousInterval {
        a: Scalar,
        b: Endpoint,
        weight: WeightSpec,
    },
    DiscreteSamples {
        points: Vec<Scalar>,
        masses: Vec<Scalar>,
    },
    EuclideanVectors {
        dim: usize,
    },
}

impl ProbSpace {
    /// Uniform weight on [0, 1].
    pub fn uniform01() -> Self {
        ProbSpace::ContinuousInterval {
            a: Scalar::zero(),
            b: Endpoint::Finite(Scalar::one()),
            weight: WeightSpec::Uniform01,
        }
    }

    /// Uniform weight on an arbitrary finite interval [a, b].
    pub fn uniform(a: Scalar, b: Scalar) -> Result<Self> {
        if !(a.to_f64() < b.to_f64()) {
            return Err(Error::InvalidBounds(format!("need a < b, got [{a}, {b}]")));
        }
        Ok(ProbSpace::ContinuousInterval {
            a,
            b: Endpoint::Finite(b),
            weight: WeightSpec::Uniform01,
        })
    }

    /// `x^a (1−x)^b` on [0, 1].
    pub fn power_beta(a_exp: Scalar, b_exp: Scalar) -> Result<Self> {
        if a_exp.to_f64() <= -1.0 || b_exp.to_f64() <= -1.0 {
            return Err(Error::ConstraintViolation(
                "beta-type exponents must exceed −1".into(),
            ));
        }
        Ok(ProbSpace::ContinuousInterval {
            a: Scalar::zero(),
            b: Endpoint::Finite(Scalar::one()),
            weight: WeightSpec::PowerBeta { a_exp, b_exp },
        })
    }

    /// `x^a e^{−rate·x}` on [0, ∞).
    pub fn power_gamma(a_exp: Scalar, rate: Scalar) -> Result<Self> {
        if a_exp.to_f64() <= -1.0 {
            return Err(Error::ConstraintViolation("gamma exponent must exceed −1".into()));
        }
        if !(rate.to_f64() > 0.0) {
            return Err(Error::ConstraintViolation("gamma rate must be positive".into()));
        }
        Ok(ProbSpace::ContinuousInterval {
            a: Scalar::zero(),
            b: Endpoint::PosInf,
            weight: WeightSpec::PowerGamma { a_exp, rate },
        })
    }

    /// Chebyshev weight of the given kind (1..4) on [−1, 1].
    pub fn chebyshev(kind: u8) -> Result<Self> {
        if !(1..=4).contains(&kind) {
            return Err(Error::ConstraintViolation(format!("Chebyshev kind {kind} ∉ 1..4")));
        }
        Ok(ProbSpace::ContinuousInterval {
            a: -Scalar::one(),
            b: Endpoint::Finite(Scalar::one()),
            weight: WeightSpec::ChebyshevKind(kind),
        })
    }

    /// `(1−x)^α (1+x)^β` on [−1, 1].
    pub fn jacobi(alpha: Scalar, beta: Scalar) -> Result<Self> {
        if alpha.to_f64() <= -1.0 || beta.to_f64() <= -1.0 {
            return Err(Error::ConstraintViolation("Jacobi exponents must exceed −1".into()));
        }
        Ok(ProbSpace::ContinuousInterval {
            a: -Scalar::one(),
            b: Endpoint::Finite(Scalar::one()),
            weight: WeightSpec::JacobiShifted { alpha, beta },
        })
    }

    /// Arbitrary positive weight on a finite interval, integrated numerically.
    pub fn custom<F>(weight: F, a: Scalar, b: Scalar) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(a.to_f64() < b.to_f64()) {
            return Err(Error::InvalidBounds(format!("need a < b, got [{a}, {b}]")));
        }
        Ok(ProbSpace::ContinuousInterval {
            a,
            b: Endpoint::Finite(b),
            weight: WeightSpec::Custom(Arc::new(weight)),
        })
    }

    /// Weighted discrete sample set; masses must be positive, points distinct.
    pub fn discrete(points: Vec<Scalar>, masses: Vec<Scalar>) -> Result<Self> {
        if points.len() != masses.len() || points.is_empty() {
            return Err(Error::ConstraintViolation(
                "points and masses must be nonempty and of equal length".into(),
            ));
        }
        if masses.iter().any(|m| !m.is_positive()) {
            return Err(Error::ConstraintViolation("all masses must be positive".into()));
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DuplicateX(format!("point {} repeated", points[i])));
                }
            }
        }
        Ok(ProbSpace::DiscreteSamples { points, masses })
    }

    /// Euclidean vector space of the given dimension with `E[XY] = X·Y/m`.
    pub fn vectors(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ConstraintViolation("dimension must be positive".into()));
        }
        Ok(ProbSpace::EuclideanVectors { dim })
    }

    /// Chebyshev kinds as Jacobi exponents.
    pub(crate) fn chebyshev_exponents(kind: u8) -> (Scalar, Scalar) {
        match kind {
            1 => (Scalar::ratio(-1, 2), Scalar::ratio(-1, 2)),
            2 => (Scalar::ratio(1, 2), Scalar::ratio(1, 2)),
            3 => (Scalar::ratio(-1, 2), Scalar::ratio(1, 2)),
            4 => (Scalar::ratio(1, 2), Scalar::ratio(-1, 2)),
            _ => unreachable!("validated at construction"),
        }
    }

    /// Normalized mixed moment `E[x^λ (1−x)^μ]` for the continuous families.
    pub fn moment_power(&self, lam: &Scalar, mu: &Scalar) -> Result<Scalar> {
        let (a, b, weight) = match self {
            ProbSpace::ContinuousInterval { a, b, weight } => (a, b, weight),
            _ => {
                return Err(Error::IncompatibleRepr(
                    "power moments require a continuous interval".into(),
                ))
            }
        };
        match weight {
            WeightSpec::Uniform01 => {
                let a0 = a.is_zero();
                let b1 = matches!(b, Endpoint::Finite(s) if *s == Scalar::one());
                if a0 && b1 {
                    return beta_integral(lam, mu);
                }
                let bf = match b {
                    Endpoint::Finite(s) => s,
                    Endpoint::PosInf => {
                        return Err(Error::DivergentMoment(
                            "uniform weight has no finite mass on [a, ∞)".into(),
                        ))
                    }
                };
                if mu.is_zero() {
                    if let Some(k) = lam.to_exact_i64() {
                        if k >= 0 {
                            // (b^{k+1} − a^{k+1}) / ((k+1)(b−a))
                            let e = (k + 1) as i32;
                            let num = bf.pow_i(e) - a.pow_i(e);
                            let den = Scalar::from_int(k + 1) * (bf - a);
                            return Ok(num / den);
                        }
                    }
                }
                // Numeric fallback; requires the integrand to be real on [a,b].
                self.numeric_power_moment(lam, mu)
            }
            WeightSpec::PowerBeta { a_exp, b_exp } => {
                let num = beta_integral(&(a_exp + lam), &(b_exp + mu))?;
                let den = beta_integral(a_exp, b_exp)?;
                Ok(num / den)
            }
            WeightSpec::PowerGamma { a_exp, rate } => {
                if !mu.is_zero() {
                    return Err(Error::IncompatibleRepr(
                        "(1−x)-type factors are not supported on [0, ∞)".into(),
                    ));
                }
                gamma_moment(a_exp, rate, lam)
            }
            WeightSpec::ChebyshevKind(kind) => {
                let (alpha, beta) = Self::chebyshev_exponents(*kind);
                jacobi_moment(&alpha, &beta, lam, mu)
            }
            WeightSpec::JacobiShifted { alpha, beta } => jacobi_moment(alpha, beta, lam, mu),
            WeightSpec::Custom(_) => self.numeric_power_moment(lam, mu),
        }
    }

    fn numeric_power_moment(&self, lam: &Scalar, mu: &Scalar) -> Result<Scalar> {
        let l = lam.to_f64();
        let m = mu.to_f64();
        let raw = self.integrate_weighted(|x| x.powf(l) * (1.0 - x).powf(m))?;
        let mass = self.mass()?.to_f64();
        if !raw.is_finite() {
            return Err(Error::DivergentMoment(format!(
                "numeric moment x^{l} (1−x)^{m} not finite on this space"
            )));
        }
        Ok(Scalar::float(raw / mass))
    }

    /// Endpoints of the support when it is a finite interval.
    pub fn finite_bounds(&self) -> Option<(f64, f64)> {
        match self {
            ProbSpace::ContinuousInterval {
                a,
                b: Endpoint::Finite(hi),
                ..
            } => Some((a.to_f64(), hi.to_f64())),
            _ => None,
        }
    }

    /// Weight value at a point (continuous spaces).
    pub fn weight_at(&self, x: f64) -> f64 {
        match self {
            ProbSpace::ContinuousInterval { weight, .. } => match weight {
                WeightSpec::Uniform01 => 1.0,
                WeightSpec::PowerBeta { a_exp, b_exp } => {
                    x.powf(a_exp.to_f64()) * (1.0 - x).powf(b_exp.to_f64())
                }
                WeightSpec::PowerGamma { a_exp, rate } => {
                    x.powf(a_exp.to_f64()) * (-rate.to_f64() * x).exp()
                }
                WeightSpec::ChebyshevKind(kind) => {
                    let (al, be) = Self::chebyshev_exponents(*kind);
                    (1.0 - x).powf(al.to_f64()) * (1.0 + x).powf(be.to_f64())
                }
                WeightSpec::JacobiShifted { alpha, beta } => {
                    (1.0 - x).powf(alpha.to_f64()) * (1.0 + x).powf(beta.to_f64())
                }
                WeightSpec::Custom(f) => f(x),
            },
            _ => 1.0,
        }
    }

    /// Raw weighted integral `∫ w f` over the support (continuous spaces).
    pub fn integrate_weighted<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        match self {
            ProbSpace::ContinuousInterval { a, b, .. } => {
                let lo = a.to_f64();
                let g = |x: f64| self.weight_at(x) * f(x);
                Ok(match b {
                    Endpoint::Finite(hi) => quadrature::integrate_tanh_sinh(g, lo, hi.to_f64()),
                    Endpoint::PosInf => quadrature::integrate_semi_infinite(g, lo),
                })
            }
            _ => Err(Error::IncompatibleRepr(
                "numeric integration requires a continuous interval".into(),
            )),
        }
    }

    /// Total mass: `∫ w` (continuous), `Σ j` (discrete), `m` (vectors).
    pub fn mass(&self) -> Result<Scalar> {
        match self {
            ProbSpace::ContinuousInterval { a, b, weight } => match weight {
                WeightSpec::Uniform01 => match b {
                    Endpoint::Finite(hi) => Ok(hi - a),
                    Endpoint::PosInf => Err(Error::DivergentMoment("infinite mass".into())),
                },
                WeightSpec::PowerBeta { a_exp, b_exp } => beta_integral(a_exp, b_exp),
                WeightSpec::PowerGamma { a_exp, rate } => {
                    // Γ(a+1)/rate^{a+1}
                    let af = a_exp.to_f64();
                    if let Some(k) = a_exp.to_exact_i64() {
                        if k >= 0 && rate.is_rational() {
                            let fact = super::scalar::factorial(k as usize);
                            return Ok(fact / rate.pow_i((k + 1) as i32));
                        }
                    }
                    let v = ln_gamma(af + 1.0).exp() / rate.to_f64().powf(af + 1.0);
                    Ok(Scalar::float(v))
                }
                WeightSpec::ChebyshevKind(kind) => {
                    let (al, be) = Self::chebyshev_exponents(*kind);
                    Ok(Scalar::float(jacobi_mass_f64(al.to_f64(), be.to_f64())))
                }
                WeightSpec::JacobiShifted { alpha, beta } => {
                    Ok(Scalar::float(jacobi_mass_f64(alpha.to_f64(), beta.to_f64())))
                }
                WeightSpec::Custom(_) => {
                    let raw = self.integrate_weighted(|_| 1.0)?;
                    Scalar::try_float(raw).map_err(Error::DivergentMoment)
                }
            },
            ProbSpace::DiscreteSamples { masses, .. } => {
                Ok(masses.iter().fold(Scalar::zero(), |acc, m| acc + m))
            }
            ProbSpace::EuclideanVectors { dim } => Ok(Scalar::from_int(*dim as i64)),
        }
    }
}

/// `∫_{−1}^1 (1−x)^α (1+x)^β dx = 2^{α+β+1} Γ(α+1)Γ(β+1)/Γ(α+β+2)`.
fn jacobi_mass_f64(alpha: f64, beta: f64) -> f64 {
    2f64.powf(alpha + beta + 1.0) * beta_f64(alpha, beta)
}

/// Raw Euler integral `∫_0^1 x^u (1−x)^v dx`, exact rational whenever `u` or
/// `v` is a nonnegative integer (binomial expansion), float via log-Γ otherwise.
pub fn beta_integral(u: &Scalar, v: &Scalar) -> Result<Scalar> {
    if u.to_f64() <= -1.0 || v.to_f64() <= -1.0 {
        return Err(Error::DivergentMoment(format!(
            "∫ x^{u} (1−x)^{v} diverges on [0,1]"
        )));
    }
    let expand = |t: i64, s: &Scalar| -> Scalar {
        // Σ_{k=0}^{t} C(t,k)(−1)^k / (s+k+1)
        let mut acc = Scalar::zero();
        let mut sign = Scalar::one();
        for k in 0..=(t as usize) {
            let denom = s + &Scalar::from_int(k as i64 + 1);
            acc = acc + &sign * binomial(t as usize, k) / denom;
            sign = -sign;
        }
        acc
    };
    if let Some(t) = v.to_exact_i64() {
        if t >= 0 {
            return Ok(expand(t, u));
        }
    }
    if let Some(t) = u.to_exact_i64() {
        if t >= 0 {
            return Ok(expand(t, v));
        }
    }
    Ok(Scalar::float(beta_f64(u.to_f64(), v.to_f64())))
}

/// Normalized Jacobi-weight moment
/// `∫(1−x)^{α+μ}(1+x)^β x^n dx / ∫(1−x)^α(1+x)^β dx` on [−1, 1].
///
/// Exact rational for integer `μ` (positive or negative) and nonnegative
/// integer `n`; float via log-Γ for fractional `μ`.
fn jacobi_moment(alpha: &Scalar, beta: &Scalar, lam: &Scalar, mu: &Scalar) -> Result<Scalar> {
    let n = match lam.to_exact_i64() {
        Some(k) if k >= 0 => k as usize,
        _ => {
            return Err(Error::IncompatibleRepr(
                "fractional powers of x are not integrable over [−1, 1]".into(),
            ))
        }
    };
    if alpha.to_f64() + mu.to_f64() <= -1.0 {
        return Err(Error::DivergentMoment(
            "(1−x) exponent at or below −1 over [−1, 1]".into(),
        ));
    }
    let ab2 = &(alpha + beta) + &Scalar::from_int(2);
    let a1 = alpha + &Scalar::one();
    // Γ(α+μ+k+1)Γ(α+β+2)/(Γ(α+1)Γ(α+β+μ+k+2)), as a function of integer s=μ+k.
    let ratio_exact = |s: i64| -> Scalar { pochhammer_shift(&a1, s) / pochhammer_shift(&ab2, s) };
    let ratio_float = |s: f64| -> Scalar {
        let av = alpha.to_f64();
        let bv = beta.to_f64();
        Scalar::float(
            (ln_gamma(av + s + 1.0) + ln_gamma(av + bv + 2.0)
                - ln_gamma(av + 1.0)
                - ln_gamma(av + bv + s + 2.0))
            .exp(),
        )
    };
    let two = Scalar::from_int(2);
    let pow2_mu = if let Some(m) = mu.to_exact_i64() {
        two.pow_i(m as i32)
    } else {
        Scalar::float(2f64.powf(mu.to_f64()))
    };
    let mut acc = Scalar::zero();
    let mut sign = Scalar::one();
    for k in 0..=n {
        let ratio = if let Some(m) = mu.to_exact_i64() {
            ratio_exact(m + k as i64)
        } else {
            ratio_float(mu.to_f64() + k as f64)
        };
        let coeff = binomial(n, k) * two.pow_i(k as i32);
        acc = acc + &sign * coeff * ratio;
        sign = -sign;
    }
    Ok(pow2_mu * acc)
}

/// Normalized gamma-weight moment `E[x^λ] = Γ(a+λ+1)/(Γ(a+1) rate^λ)`.
fn gamma_moment(a_exp: &Scalar, rate: &Scalar, lam: &Scalar) -> Result<Scalar> {
    let total = a_exp.to_f64() + lam.to_f64();
    if total <= -1.0 {
        return Err(Error::DivergentMoment(format!(
            "∫ x^{} e^{{−{rate}x}} diverges near 0",
            total
        )));
    }
    if let Some(k) = lam.to_exact_i64() {
        let a1 = a_exp + &Scalar::one();
        return Ok(pochhammer_shift(&a1, k) * rate.pow_i(-(k as i32)));
    }
    let l = lam.to_f64();
    let av = a_exp.to_f64();
    Ok(Scalar::float(
        (ln_gamma(av + l + 1.0) - ln_gamma(av + 1.0)).exp() / rate.to_f64().powf(l),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_integral_exact_when_one_exponent_integer() {
        // ∫ x^k dx = 1/(k+1)
        assert_eq!(
            beta_integral(&Scalar::from_int(3), &Scalar::zero()).unwrap(),
            Scalar::ratio(1, 4)
        );
        // ∫ x^{1/2} dx = 2/3 and ∫ x^i √(1−x) dx stays rational
        assert_eq!(
            beta_integral(&Scalar::ratio(1, 2), &Scalar::zero()).unwrap(),
            Scalar::ratio(2, 3)
        );
        assert_eq!(
            beta_integral(&Scalar::zero(), &Scalar::ratio(1, 2)).unwrap(),
            Scalar::ratio(2, 3)
        );
        assert_eq!(
            beta_integral(&Scalar::from_int(1), &Scalar::ratio(1, 2)).unwrap(),
            // ∫ x √(1−x) = 2/3 − 2/5 = 4/15
            Scalar::ratio(4, 15)
        );
    }

    #[test]
    fn beta_integral_pi_case() {
        // ∫ √x √(1−x) dx = π/8
        let v = beta_integral(&Scalar::ratio(1, 2), &Scalar::ratio(1, 2)).unwrap();
        assert!(v.approx_eq(&Scalar::float(std::f64::consts::PI / 8.0), 1e-13));
    }

    #[test]
    fn beta_integral_divergence() {
        assert!(beta_integral(&Scalar::from_int(-1), &Scalar::zero()).is_err());
    }

    #[test]
    fn jacobi_moments_legendre_case() {
        let sp = ProbSpace::jacobi(Scalar::zero(), Scalar::zero()).unwrap();
        assert_eq!(
            sp.moment_power(&Scalar::from_int(1), &Scalar::zero()).unwrap(),
            Scalar::zero()
        );
        assert_eq!(
            sp.moment_power(&Scalar::from_int(2), &Scalar::zero()).unwrap(),
            Scalar::ratio(1, 3)
        );
    }

    #[test]
    fn jacobi_negative_one_x_exponent() {
        // With α=2: E[(1−x)^{−1}] = ratio (α+β+1)/α of the masses.
        let sp = ProbSpace::jacobi(Scalar::from_int(2), Scalar::zero()).unwrap();
        let m = sp.moment_power(&Scalar::zero(), &Scalar::from_int(-1)).unwrap();
        // ∫(1−x)dx / ∫(1−x)² dx over [−1,1] = 2 / (8/3) = 3/4
        assert_eq!(m, Scalar::ratio(3, 4));
    }

    #[test]
    fn chebyshev_first_kind_moments() {
        let sp = ProbSpace::chebyshev(1).unwrap();
        // E[x²] under the arcsine weight is 1/2.
        assert_eq!(
            sp.moment_power(&Scalar::from_int(2), &Scalar::zero()).unwrap(),
            Scalar::ratio(1, 2)
        );
        assert!(sp.mass().unwrap().approx_eq(&Scalar::pi(), 1e-12));
    }

    #[test]
    fn gamma_moments() {
        let sp = ProbSpace::power_gamma(Scalar::from_int(1), Scalar::one()).unwrap();
        // E[x^2] with weight x e^{-x}: Γ(4)/Γ(2) = 6
        assert_eq!(
            sp.moment_power(&Scalar::from_int(2), &Scalar::zero()).unwrap(),
            Scalar::from_int(6)
        );
        assert_eq!(sp.mass().unwrap(), Scalar::one());
    }

    #[test]
    fn uniform_general_interval() {
        let sp = ProbSpace::uniform(-Scalar::one(), Scalar::one()).unwrap();
        assert_eq!(
            sp.moment_power(&Scalar::from_int(2), &Scalar::zero()).unwrap(),
            Scalar::ratio(1, 3)
        );
    }

    #[test]
    fn discrete_validation() {
        assert!(ProbSpace::discrete(
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::one(), Scalar::one()]
        )
        .is_err());
        assert!(ProbSpace::discrete(vec![Scalar::one()], vec![Scalar::zero()]).is_err());
    }
}
