//! The deformed covariance operator: an ordinary second-moment form minus a
//! weighted rank-one correction along one or more fixed reference elements.

use crate::error::{Error, Result};
use crate::expectation_core::{Element, ProbSpace, Scalar};

/// Relative threshold below which an exactly-representable float variance may
/// dip negative through roundoff and is clamped to zero.
pub const NEG_VAR_TOL: f64 = 1e-12;

/// One or more fixed reference elements `Z_k`, validated to have positive
/// second moments and (when several) to be mutually orthogonal.
#[derive(Debug, Clone)]
pub struct FixedVar {
    members: Vec<Element>,
    second_moments: Vec<Scalar>,
}

impl FixedVar {
    pub fn new(space: &ProbSpace, members: Vec<Element>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::ConstraintViolation(
                "at least one fixed reference element is required".into(),
            ));
        }
        let mut second_moments = Vec::with_capacity(members.len());
        for z in &members {
            let m2 = space.expect_product(z, z)?;
            if !m2.is_positive() {
                return Err(Error::DegenerateVariance(format!(
                    "fixed element has non-positive second moment {m2}"
                )));
            }
            second_moments.push(m2);
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let cross = space.expect_product(&members[i], &members[j])?;
                let scale = (second_moments[i].to_f64() * second_moments[j].to_f64()).sqrt();
                let ok = if cross.is_rational() {
                    cross.is_zero()
                } else {
                    cross.to_f64().abs() <= 1e-10 * scale.max(1.0)
                };
                if !ok {
                    return Err(Error::NotOrthogonal(format!(
                        "fixed elements {i} and {j} have cross moment {cross}"
                    )));
                }
            }
        }
        Ok(Self {
            members,
            second_moments,
        })
    }

    pub fn single(space: &ProbSpace, z: Element) -> Result<Self> {
        Self::new(space, vec![z])
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn second_moments(&self) -> &[Scalar] {
        &self.second_moments
    }
}

/// The covariance operator `cov_p(X, Y) = E[XY] − p Σ_k E[XZ_k]E[YZ_k]/E[Z_k²]`
/// for a deformation parameter `p ∈ [0, 1]`.
#[derive(Debug, Clone)]
pub struct PCovOp {
    space: ProbSpace,
    fixed: FixedVar,
    p: Scalar,
}

impl PCovOp {
    pub fn new(space: ProbSpace, fixed: FixedVar, p: Scalar) -> Result<Self> {
        if p.is_negative() || p > Scalar::one() {
            return Err(Error::ConstraintViolation(format!(
                "deformation parameter p = {p} must lie in [0, 1]"
            )));
        }
        Ok(Self { space, fixed, p })
    }

    /// Convenience constructor for a single fixed element.
    pub fn with_z(space: ProbSpace, z: Element, p: Scalar) -> Result<Self> {
        let fixed = FixedVar::single(&space, z)?;
        Self::new(space, fixed, p)
    }

    pub fn space(&self) -> &ProbSpace {
        &self.space
    }

    pub fn fixed(&self) -> &FixedVar {
        &self.fixed
    }

    pub fn p(&self) -> &Scalar {
        &self.p
    }

    /// The same operator with a different deformation parameter.
    pub fn with_p(&self, p: Scalar) -> Result<Self> {
        Self::new(self.space.clone(), self.fixed.clone(), p)
    }

    pub fn cov(&self, x: &Element, y: &Element) -> Result<Scalar> {
        let mut acc = self.space.expect_product(x, y)?;
        if !self.p.is_zero() {
            for (z, m2) in self
                .fixed
                .members
                .iter()
                .zip(self.fixed.second_moments.iter())
            {
                let xz = self.space.expect_product(x, z)?;
                let yz = self.space.expect_product(y, z)?;
                acc = acc - &self.p * &(&(&xz * &yz) / m2);
            }
        }
        Ok(acc)
    }

    /// `var_p(X) = cov_p(X, X)`, guaranteed non-negative; float roundoff just
    /// below zero is clamped, anything further below is an error.
    pub fn var(&self, x: &Element) -> Result<Scalar> {
        let v = self.cov(x, x)?;
        if !v.is_negative() {
            return Ok(v);
        }
        if v.is_rational() {
            return Err(Error::NegativeVariance(v.to_f64()));
        }
        let scale = self.space.expect_product(x, x)?.to_f64().abs().max(1.0);
        if v.to_f64() >= -NEG_VAR_TOL * scale {
            Ok(Scalar::float(0.0))
        } else {
            Err(Error::NegativeVariance(v.to_f64()))
        }
    }

    /// The correlation coefficient `ρ_p(X, Y) ∈ [−1, 1]`.
    pub fn rho(&self, x: &Element, y: &Element) -> Result<Scalar> {
        let vx = self.var(x)?;
        let vy = self.var(y)?;
        if vx.is_zero() || vy.is_zero() {
            return Err(Error::DegenerateVariance(
                "correlation undefined: an argument has zero variance".into(),
            ));
        }
        let c = self.cov(x, y)?;
        Ok(&c / &(vx * vy).sqrt())
    }

    /// Projection of `X` onto the span of the fixed elements under the plain
    /// second-moment inner product.
    pub fn proj_onto_fixed(&self, x: &Element) -> Result<Element> {
        let mut terms = Vec::with_capacity(self.fixed.members.len());
        for (z, m2) in self
            .fixed
            .members
            .iter()
            .zip(self.fixed.second_moments.iter())
        {
            let c = &self.space.expect_product(x, z)? / m2;
            terms.push((c, z.clone()));
        }
        Ok(Element::linear_combination(terms))
    }

    /// The standardized element `(X − (1 − √(1−p)) proj X) / √var_p(X)`: the
    /// shrinkage turns the deformed variance into a plain second moment, so
    /// the result satisfies `E[N²] = 1`.
    pub fn normalize(&self, x: &Element) -> Result<Element> {
        let v = self.var(x)?;
        if v.is_zero() {
            return Err(Error::DegenerateVariance(
                "cannot standardize an element of zero variance".into(),
            ));
        }
        let shrink = Scalar::one() - (Scalar::one() - self.p.clone()).sqrt();
        let proj = self.proj_onto_fixed(x)?;
        let centered = x.sub(&proj.scale(&shrink));
        let inv_sd = Scalar::one() / v.sqrt();
        Ok(centered.scale(&inv_sd))
    }

    /// Whether `cov_p(X, Y) = 0` to within `tol` (relative to the two
    /// variances; `tol = 0` demands exact rational zero).
    pub fn is_uncorrelated(&self, x: &Element, y: &Element, tol: f64) -> Result<bool> {
        let c = self.cov(x, y)?;
        if tol == 0.0 {
            return Ok(c.is_zero());
        }
        let scale = (self.var(x)?.to_f64() * self.var(y)?.to_f64()).sqrt();
        Ok(c.to_f64().abs() <= tol * scale.max(1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op_uniform_x(p: Scalar) -> PCovOp {
        PCovOp::with_z(ProbSpace::uniform01(), Element::x(), p).unwrap()
    }

    #[test]
    fn variance_vanishes_only_on_the_fixed_ray_at_p_one() {
        let op = op_uniform_x(Scalar::one());
        assert_eq!(op.var(&Element::x()).unwrap(), Scalar::zero());
        let scaled = Element::x().scale(&Scalar::ratio(7, 3));
        assert_eq!(op.var(&scaled).unwrap(), Scalar::zero());
        assert!(op.var(&Element::one()).unwrap().is_positive());
    }

    #[test]
    fn fixed_ray_identity() {
        // cov_p(X, Y) with Y = cX as the fixed element equals (1−p) E[XY].
        let sp = ProbSpace::uniform01();
        let x = Element::monomial(2);
        let y = Element::monomial(3);
        for p in [Scalar::zero(), Scalar::ratio(1, 2), Scalar::one()] {
            let op = PCovOp::with_z(
                sp.clone(),
                x.scale(&Scalar::ratio(5, 2)),
                p.clone(),
            )
            .unwrap();
            let lhs = op.cov(&x, &y).unwrap();
            let rhs = (Scalar::one() - p) * sp.expect_product(&x, &y).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn monotone_in_p() {
        let x = Element::poly(vec![Scalar::one(), Scalar::from_int(-2), Scalar::from_int(3)]);
        let v0 = op_uniform_x(Scalar::zero()).var(&x).unwrap();
        let vh = op_uniform_x(Scalar::ratio(1, 2)).var(&x).unwrap();
        let v1 = op_uniform_x(Scalar::one()).var(&x).unwrap();
        assert!(v1 <= vh && vh <= v0);
        assert_eq!(
            v0,
            ProbSpace::uniform01().expect_product(&x, &x).unwrap()
        );
    }

    #[test]
    fn standardized_element_has_unit_second_moment() {
        let op = op_uniform_x(Scalar::ratio(3, 4));
        let x = Element::poly(vec![Scalar::from_int(2), Scalar::one()]);
        let n = op.normalize(&x).unwrap();
        let m2 = op.space().expect_product(&n, &n).unwrap();
        assert!(m2.approx_eq(&Scalar::one(), 1e-12));
    }

    #[test]
    fn p_outside_unit_interval_rejected() {
        let r = PCovOp::with_z(ProbSpace::uniform01(), Element::x(), Scalar::ratio(3, 2));
        assert!(matches!(r, Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn multi_fixed_requires_orthogonality() {
        let sp = ProbSpace::uniform01();
        let bad = FixedVar::new(&sp, vec![Element::one(), Element::x()]);
        assert!(matches!(bad, Err(Error::NotOrthogonal(_))));
        // 1 and x − 1/2 are orthogonal on [0, 1].
        let good = FixedVar::new(
            &sp,
            vec![
                Element::one(),
                Element::poly(vec![Scalar::ratio(-1, 2), Scalar::one()]),
            ],
        );
        assert!(good.is_ok());
    }

    #[test]
    fn multi_fixed_nested_variance_shrinks() {
        let sp = ProbSpace::uniform01();
        let z1 = Element::one();
        let z2 = Element::poly(vec![Scalar::ratio(-1, 2), Scalar::one()]);
        let x = Element::monomial(2);
        let one_z = PCovOp::new(
            sp.clone(),
            FixedVar::new(&sp, vec![z1.clone()]).unwrap(),
            Scalar::one(),
        )
        .unwrap();
        let two_z = PCovOp::new(
            sp.clone(),
            FixedVar::new(&sp, vec![z1, z2]).unwrap(),
            Scalar::one(),
        )
        .unwrap();
        let v1 = one_z.var(&x).unwrap();
        let v2 = two_z.var(&x).unwrap();
        assert!(v2 < v1 && v2.is_positive());
    }
}
