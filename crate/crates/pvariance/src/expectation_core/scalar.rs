//! Two-backend scalar type: exact arbitrary-precision rationals and `f64`.
//!
//! Arithmetic promotes: rational∘rational stays rational, anything involving a
//! float becomes float. The rational backend is the exactness oracle; the float
//! backend is the general numeric path (irrational exponents, π-bearing values).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// Float scalar; panics on NaN/Inf (rejected at construction).
    pub fn float(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite float scalar: {v}");
        Scalar::Float(v)
    }

    pub fn try_float(v: f64) -> Result<Self, String> {
        if v.is_finite() {
            Ok(Scalar::Float(v))
        } else {
            Err(format!("non-finite float scalar: {v}"))
        }
    }

    pub fn pi() -> Self {
        Scalar::Float(std::f64::consts::PI)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Float(v) => *v < 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_positive(),
            Scalar::Float(v) => *v > 0.0,
        }
    }

    /// True when the value is an exact integer (rational backend only).
    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_integer(),
            Scalar::Float(_) => false,
        }
    }

    /// Exact integer value if this is a rational integer.
    pub fn to_exact_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or_else(|| {
                // Fall back to a quotient of leading digits for huge ratios.
                let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
                let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
                n / d
            }),
            Scalar::Float(v) => *v,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
        }
    }

    /// Integer power (negative allowed for nonzero base).
    pub fn pow_i(&self, e: i32) -> Scalar {
        if e == 0 {
            return Scalar::one();
        }
        match self {
            Scalar::Rational(r) => {
                assert!(!(r.is_zero() && e < 0), "zero to negative power");
                Scalar::Rational(r.pow(e))
            }
            Scalar::Float(v) => Scalar::float(v.powi(e)),
        }
    }

    /// Square root; exact when the rational is a perfect square, float otherwise.
    /// Panics on negative input.
    pub fn sqrt(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                assert!(!r.is_negative(), "sqrt of negative value");
                let num = r.numer().sqrt();
                let den = r.denom().sqrt();
                if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
                    Scalar::Rational(BigRational::new(num, den))
                } else {
                    Scalar::float(self.to_f64().sqrt())
                }
            }
            Scalar::Float(v) => {
                assert!(*v >= 0.0, "sqrt of negative value");
                Scalar::float(v.sqrt())
            }
        }
    }

    /// `|self − other| ≤ tol · max(1, |self|, |other|)`.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            if tol == 0.0 {
                return a == b;
            }
        }
        let a = self.to_f64();
        let b = other.to_f64();
        (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
    }

    /// Exact reciprocal. Panics on zero.
    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                assert!(!r.is_zero(), "reciprocal of zero");
                Scalar::Rational(r.recip())
            }
            Scalar::Float(v) => Scalar::float(1.0 / v),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a $op b),
                    _ => Scalar::float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl<'a, 'b> Div<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'b Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Rational(a / b)
            }
            _ => Scalar::float(self.to_f64() / rhs.to_f64()),
        }
    }
}
impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}
impl<'a> Div<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        (&self).div(rhs)
    }
}
impl<'a> Div<Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.div(&rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Rising factorial `(a)_k = a(a+1)···(a+k−1)` with `(a)_0 = 1`.
pub fn pochhammer(a: &Scalar, k: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc = &acc * &term;
        term = &term + &Scalar::one();
    }
    acc
}

/// Generalized rising factorial allowing negative shift:
/// `(a)_m` for `m ≥ 0`, and `(a)_{−m} = 1 / ((a−m)(a−m+1)···(a−1))`.
pub fn pochhammer_shift(a: &Scalar, m: i64) -> Scalar {
    if m >= 0 {
        pochhammer(a, m as usize)
    } else {
        let k = (-m) as usize;
        let start = a - &Scalar::from_int(k as i64);
        pochhammer(&start, k).recip()
    }
}

/// Exact `n!` as a scalar.
pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Scalar::Rational(BigRational::from_integer(acc))
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    Scalar::Rational(BigRational::new(num, den))
}

/// log Γ for the float path.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Γ(u+1)Γ(v+1)/Γ(u+v+2) computed in floats (the Euler integral on [0,1]).
pub fn beta_f64(u: f64, v: f64) -> f64 {
    (ln_gamma(u + 1.0) + ln_gamma(v + 1.0) - ln_gamma(u + v + 2.0)).exp()
}

/// Convenience: build a `Scalar` from an `f64` that is known to be finite.
impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::float(v)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl FromPrimitive for Scalar {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Scalar::from_int(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Scalar::Rational(BigRational::from_integer(BigInt::from(n))))
    }
    fn from_f64(n: f64) -> Option<Self> {
        Scalar::try_float(n).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_stays_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        let s = &a + &b;
        assert_eq!(s, Scalar::ratio(1, 2));
        assert!(s.is_rational());
    }

    #[test]
    fn float_promotes() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::float(0.25);
        assert!(!(&a * &b).is_rational());
        assert!((&a * &b).approx_eq(&Scalar::ratio(1, 8), 1e-15));
    }

    #[test]
    fn sqrt_exact_when_perfect_square() {
        assert_eq!(Scalar::ratio(9, 16).sqrt(), Scalar::ratio(3, 4));
        assert!(Scalar::ratio(1, 2).sqrt().approx_eq(&Scalar::float(0.5f64.sqrt()), 1e-15));
        assert!(!Scalar::ratio(1, 2).sqrt().is_rational());
    }

    #[test]
    fn pochhammer_and_factorial() {
        assert_eq!(pochhammer(&Scalar::ratio(1, 2), 3), Scalar::ratio(15, 8));
        assert_eq!(factorial(5), Scalar::from_int(120));
        assert_eq!(binomial(7, 3), Scalar::from_int(35));
        // (a)_{−2} = 1/((a−2)(a−1))
        let a = Scalar::from_int(5);
        assert_eq!(pochhammer_shift(&a, -2), Scalar::ratio(1, 12));
    }

    #[test]
    #[should_panic]
    fn non_finite_float_rejected() {
        let _ = Scalar::float(f64::INFINITY);
    }
}
