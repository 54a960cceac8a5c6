//! The normalized expectation operator and exact product expectations.

use super::element::Element;
use super::scalar::Scalar;
use super::space::ProbSpace;
use crate::error::{Error, Result};

impl ProbSpace {
    /// Normalized expectation `E[f]`.
    pub fn expect(&self, f: &Element) -> Result<Scalar> {
        self.expect_product(f, &Element::one())
    }

    /// Normalized expectation of the pointwise product, `E[f·g]`; for vector
    /// spaces this is the scaled dot product `f·g / m`.
    pub fn expect_product(&self, f: &Element, g: &Element) -> Result<Scalar> {
        match self {
            ProbSpace::EuclideanVectors { dim } => {
                let a = f.as_vector().ok_or_else(|| {
                    Error::IncompatibleRepr("vector space expects vector elements".into())
                })?;
                let b = g.as_vector().ok_or_else(|| {
                    Error::IncompatibleRepr("vector space expects vector elements".into())
                })?;
                if a.len() != *dim || b.len() != *dim {
                    return Err(Error::IncompatibleRepr(format!(
                        "vector length mismatch: {} and {} vs dimension {}",
                        a.len(),
                        b.len(),
                        dim
                    )));
                }
                let mut acc = Scalar::zero();
                for (x, y) in a.iter().zip(b.iter()) {
                    acc = acc + x * y;
                }
                Ok(acc / Scalar::from_int(*dim as i64))
            }
            ProbSpace::DiscreteSamples { points, masses } => {
                let mut num = Scalar::zero();
                let mut den = Scalar::zero();
                for (i, (x, j)) in points.iter().zip(masses.iter()).enumerate() {
                    let fv = eval_at_sample(f, i, x, points.len())?;
                    let gv = eval_at_sample(g, i, x, points.len())?;
                    num = num + j * &(fv * gv);
                    den = den + j;
                }
                Ok(num / den)
            }
            ProbSpace::ContinuousInterval { .. } => self.continuous_product(f, g),
        }
    }

    /// `E[x^k · z]`, the moment of order `k` against the fixed element.
    pub fn moment_kz(&self, k: usize, z: &Element) -> Result<Scalar> {
        self.expect_product(&Element::monomial(k), z)
    }

    fn continuous_product(&self, f: &Element, g: &Element) -> Result<Scalar> {
        use Element::*;
        match (f, g) {
            (Combo(ts), other) | (other, Combo(ts)) => {
                let mut acc = Scalar::zero();
                for (w, e) in ts {
                    acc = acc + w * &self.continuous_product(e, other)?;
                }
                Ok(acc)
            }
            (Tabulated(_), _) | (_, Tabulated(_)) | (Vector(_), _) | (_, Vector(_)) => {
                Err(Error::IncompatibleRepr(
                    "tabulated/vector elements cannot be integrated over an interval".into(),
                ))
            }
            (Poly(a), Poly(b)) => {
                let mut conv = vec![Scalar::zero(); a.len() + b.len() - 1];
                for (i, ai) in a.iter().enumerate() {
                    for (j, bj) in b.iter().enumerate() {
                        conv[i + j] = &conv[i + j] + &(ai * bj);
                    }
                }
                let mut acc = Scalar::zero();
                for (k, c) in conv.iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc
                            + c * &self.moment_power(&Scalar::from_int(k as i64), &Scalar::zero())?;
                    }
                }
                Ok(acc)
            }
            (Poly(a), Power(l)) | (Power(l), Poly(a)) => self.poly_against_power(a, l, &Scalar::zero()),
            (Poly(a), PowerProduct(l, m)) | (PowerProduct(l, m), Poly(a)) => {
                self.poly_against_power(a, l, m)
            }
            (Power(l1), Power(l2)) => self.moment_power(&(l1 + l2), &Scalar::zero()),
            (Power(l1), PowerProduct(l2, m)) | (PowerProduct(l2, m), Power(l1)) => {
                self.moment_power(&(l1 + l2), m)
            }
            (PowerProduct(l1, m1), PowerProduct(l2, m2)) => {
                self.moment_power(&(l1 + l2), &(m1 + m2))
            }
            // Anything involving a callable goes through numeric quadrature.
            (a, b) => {
                let raw = self.integrate_weighted(|x| a.eval_f64(x) * b.eval_f64(x))?;
                if !raw.is_finite() {
                    return Err(Error::DivergentMoment(
                        "numeric product expectation did not converge".into(),
                    ));
                }
                let mass = self.mass()?.to_f64();
                Ok(Scalar::float(raw / mass))
            }
        }
    }

    fn poly_against_power(&self, coeffs: &[Scalar], lam: &Scalar, mu: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let shifted = lam + &Scalar::from_int(k as i64);
                acc = acc + c * &self.moment_power(&shifted, mu)?;
            }
        }
        Ok(acc)
    }
}

fn eval_at_sample(e: &Element, idx: usize, x: &Scalar, n: usize) -> Result<Scalar> {
    match e {
        Element::Tabulated(vals) => {
            if vals.len() != n {
                return Err(Error::IncompatibleRepr(format!(
                    "tabulated element has {} values but the space has {} points",
                    vals.len(),
                    n
                )));
            }
            Ok(vals[idx].clone())
        }
        Element::Vector(_) => Err(Error::IncompatibleRepr(
            "vector element on a discrete sample space".into(),
        )),
        Element::Combo(ts) => {
            let mut acc = Scalar::zero();
            for (w, t) in ts {
                acc = acc + w * &eval_at_sample(t, idx, x, n)?;
            }
            Ok(acc)
        }
        other => other.eval_scalar(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_moments_on_uniform() {
        let sp = ProbSpace::uniform01();
        for k in 0..6usize {
            assert_eq!(
                sp.expect(&Element::monomial(k)).unwrap(),
                Scalar::ratio(1, k as i64 + 1)
            );
        }
    }

    #[test]
    fn product_of_monomials() {
        let sp = ProbSpace::uniform01();
        assert_eq!(
            sp.expect_product(&Element::monomial(2), &Element::monomial(3))
                .unwrap(),
            Scalar::ratio(1, 6)
        );
    }

    #[test]
    fn half_power_square_is_exact() {
        // E[(x^{1/2})²] = E[x] = 1/2
        let sp = ProbSpace::uniform01();
        let z = Element::power(Scalar::ratio(1, 2));
        assert_eq!(sp.expect_product(&z, &z).unwrap(), Scalar::ratio(1, 2));
    }

    #[test]
    fn sqrt_one_minus_x_moments() {
        let sp = ProbSpace::uniform01();
        let y = Element::power_product(Scalar::zero(), Scalar::ratio(1, 2));
        assert_eq!(sp.expect(&y).unwrap(), Scalar::ratio(2, 3));
        assert_eq!(
            sp.expect_product(&y, &Element::monomial(1)).unwrap(),
            Scalar::ratio(4, 15)
        );
        assert_eq!(
            sp.expect_product(&y, &Element::monomial(2)).unwrap(),
            Scalar::ratio(16, 105)
        );
        // E[Y²] = E[1−x] = 1/2 stays exact because the square is a polynomial.
        assert_eq!(sp.expect_product(&y, &y).unwrap(), Scalar::ratio(1, 2));
    }

    #[test]
    fn callable_falls_back_to_quadrature() {
        let sp = ProbSpace::uniform01();
        let y = Element::callable(|x| (1.0 - x).sqrt());
        let v = sp.expect(&y).unwrap();
        assert!(v.approx_eq(&Scalar::ratio(2, 3), 1e-10));
    }

    #[test]
    fn discrete_mean() {
        let sp = ProbSpace::discrete(
            vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(3)],
            vec![Scalar::one(), Scalar::one(), Scalar::one()],
        )
        .unwrap();
        let t = Element::tabulated(vec![
            Scalar::from_int(2),
            Scalar::from_int(4),
            Scalar::from_int(6),
        ]);
        assert_eq!(sp.expect(&t).unwrap(), Scalar::from_int(4));
        // Polynomial elements evaluate exactly at the sample points.
        assert_eq!(
            sp.expect(&Element::monomial(2)).unwrap(),
            Scalar::ratio(14, 3)
        );
    }

    #[test]
    fn vector_expectation() {
        let sp = ProbSpace::vectors(3).unwrap();
        let a = Element::vector(vec![Scalar::one(), Scalar::from_int(2), Scalar::from_int(3)]);
        assert_eq!(sp.expect_product(&a, &a).unwrap(), Scalar::ratio(14, 3));
    }

    #[test]
    fn normalization_of_constant() {
        for sp in [
            ProbSpace::uniform01(),
            ProbSpace::power_beta(Scalar::ratio(1, 3), Scalar::ratio(2, 5)).unwrap(),
            ProbSpace::chebyshev(2).unwrap(),
            ProbSpace::power_gamma(Scalar::ratio(1, 2), Scalar::from_int(2)).unwrap(),
        ] {
            assert!(sp
                .expect(&Element::one())
                .unwrap()
                .approx_eq(&Scalar::one(), 1e-12));
        }
    }
}
