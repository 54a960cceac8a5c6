//! Quadrature rules for the deformed variance functional, a Grüss-type
//! covariance bound, the sharpened Bessel inequality, and a Parseval-type
//! expansion of the covariance itself.

use crate::error::{Error, Result};
use crate::expectation_core::{Element, ProbSpace, Scalar};
use crate::pcov::PCovOp;

/// A node/weight rule approximating `var_p(f) ≅ Σ_k w_k f(x_k)`.
#[derive(Debug, Clone)]
pub struct PVQuadrature {
    pub nodes: Vec<Scalar>,
    pub weights: Vec<Scalar>,
}

impl PVQuadrature {
    /// Apply the rule to an element evaluable at the nodes.
    pub fn apply(&self, f: &Element) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (x, w) in self.nodes.iter().zip(self.weights.iter()) {
            acc = acc + w * &f.eval_scalar(x)?;
        }
        Ok(acc)
    }
}

fn check_distinct(nodes: &[Scalar]) -> Result<()> {
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(Error::DuplicateNodes);
            }
        }
    }
    if nodes.is_empty() {
        return Err(Error::ConstraintViolation("need at least one node".into()));
    }
    Ok(())
}

/// Undetermined-coefficients weights: solve the Vandermonde-transpose system
/// `Σ_k w_k x_k^j = var_p(x^j)` for `j = 0 … n−1`. The weights depend only on
/// the operator and the nodes, not on the integrand.
pub fn pv_quad_weights(op: &PCovOp, nodes: &[Scalar]) -> Result<PVQuadrature> {
    check_distinct(nodes)?;
    let n = nodes.len();
    let mut a = vec![vec![Scalar::zero(); n]; n];
    for (j, row) in a.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = nodes[k].pow_i(j as i32);
        }
    }
    let b: Vec<Scalar> = (0..n)
        .map(|j| op.var(&Element::monomial(j)))
        .collect::<Result<_>>()?;
    let out = crate::linalg::solve_full_pivot(&a, &b)?;
    if !out.free_columns.is_empty() {
        return Err(Error::RankDeficient);
    }
    Ok(PVQuadrature {
        nodes: nodes.to_vec(),
        weights: out.solution,
    })
}

/// Exact Lagrange cardinal polynomials for the node set.
pub fn lagrange_basis(nodes: &[Scalar]) -> Result<Vec<Element>> {
    check_distinct(nodes)?;
    let n = nodes.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut coeffs = vec![Scalar::one()];
        let mut denom = Scalar::one();
        for (j, xj) in nodes.iter().enumerate() {
            if j == k {
                continue;
            }
            // multiply by (x − x_j)
            let mut next = vec![Scalar::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(xj * c);
            }
            coeffs = next;
            denom = denom * (&nodes[k] - xj);
        }
        let inv = denom.recip();
        for c in coeffs.iter_mut() {
            *c = &*c * &inv;
        }
        out.push(Element::poly(coeffs));
    }
    Ok(out)
}

/// Interpolatory weights for a specific integrand:
/// `w_k = cov_p(f, L_k)` with `L_k` the Lagrange cardinal polynomials, so that
/// `Σ_k w_k f(x_k) = cov_p(f, interpolant of f)`. The rule reproduces
/// `var_p(f)` exactly whenever `f` is a polynomial of degree `< n`.
pub fn interpolatory_rule(op: &PCovOp, nodes: &[Scalar], f: &Element) -> Result<PVQuadrature> {
    let basis = lagrange_basis(nodes)?;
    let weights = basis
        .iter()
        .map(|l| op.cov(f, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(PVQuadrature {
        nodes: nodes.to_vec(),
        weights,
    })
}

/// A Grüss-type bound on the deformed covariance together with its actual
/// value: if `m_x Z ≤ X ≤ M_x Z` and `m_y Z ≤ Y ≤ M_y Z` pointwise, then
/// `|cov_1(X, Y)| ≤ (E[Z²]/4)(M_x − m_x)(M_y − m_y)`.
#[derive(Debug, Clone)]
pub struct GrussBound {
    pub bound: Scalar,
    pub actual: Scalar,
}

/// Number of grid points used to sanity-check supplied envelope bounds.
pub const ENVELOPE_GRID: usize = 64;

pub fn gruss_bound(
    op: &PCovOp,
    x: &Element,
    y: &Element,
    x_bounds: (&Scalar, &Scalar),
    y_bounds: (&Scalar, &Scalar),
) -> Result<GrussBound> {
    if op.p() != &Scalar::one() {
        return Err(Error::ConstraintViolation(
            "the envelope bound applies at full deformation (p = 1)".into(),
        ));
    }
    let z = &op.fixed().members()[0];
    verify_envelope(op.space(), x, z, x_bounds)?;
    verify_envelope(op.space(), y, z, y_bounds)?;
    let ezz = op.space().expect_product(z, z)?;
    let bound = &(&ezz / &Scalar::from_int(4))
        * &(&(x_bounds.1 - x_bounds.0) * &(y_bounds.1 - y_bounds.0));
    let actual = op.cov(x, y)?;
    Ok(GrussBound { bound, actual })
}

fn verify_envelope(
    space: &ProbSpace,
    x: &Element,
    z: &Element,
    (lo, hi): (&Scalar, &Scalar),
) -> Result<()> {
    if lo > hi {
        return Err(Error::InvalidBounds(format!(
            "lower envelope {lo} exceeds upper envelope {hi}"
        )));
    }
    let (lo_f, hi_f) = (lo.to_f64(), hi.to_f64());
    let check = |xv: f64, zv: f64| -> bool {
        // (M z − x)(x − m z) ≥ 0, with a little float slack.
        let slack = 1e-9 * (xv.abs() + zv.abs()).max(1.0);
        (hi_f * zv - xv) >= -slack && (xv - lo_f * zv) >= -slack
    };
    match space {
        ProbSpace::ContinuousInterval { .. } => {
            let (a, b) = space
                .finite_bounds()
                .ok_or_else(|| Error::InvalidBounds("unbounded support".into()))?;
            for i in 0..=ENVELOPE_GRID {
                let t = a + (b - a) * (i as f64) / (ENVELOPE_GRID as f64);
                let xv = x.eval_f64(t);
                let zv = z.eval_f64(t);
                if xv.is_finite() && zv.is_finite() && !check(xv, zv) {
                    return Err(Error::InvalidBounds(format!(
                        "envelope [{lo}, {hi}] violated at x = {t}"
                    )));
                }
            }
            Ok(())
        }
        ProbSpace::DiscreteSamples { points, .. } => {
            for pt in points {
                let t = pt.to_f64();
                if !check(x.eval_f64(t), z.eval_f64(t)) {
                    return Err(Error::InvalidBounds(format!(
                        "envelope [{lo}, {hi}] violated at sample {pt}"
                    )));
                }
            }
            Ok(())
        }
        ProbSpace::EuclideanVectors { .. } => {
            let xv = x.as_vector().ok_or_else(|| {
                Error::IncompatibleRepr("vector element expected".into())
            })?;
            let zv = z.as_vector().ok_or_else(|| {
                Error::IncompatibleRepr("vector element expected".into())
            })?;
            for (xi, zi) in xv.iter().zip(zv.iter()) {
                if !check(xi.to_f64(), zi.to_f64()) {
                    return Err(Error::InvalidBounds(format!(
                        "envelope [{lo}, {hi}] violated at component ({xi}, {zi})"
                    )));
                }
            }
            Ok(())
        }
    }
}

/// The two sides of the sharpened Bessel inequality for a partial expansion:
/// `s` is the plain mean-square error of the expansion, `v` subtracts the
/// squared component along the fixed element, and `0 ≤ v ≤ s` always.
#[derive(Debug, Clone)]
pub struct BesselImproved {
    pub s: Scalar,
    pub v: Scalar,
}

/// Expand `f` over a plainly-orthogonal family with ordinary Fourier
/// coefficients, then report both error functionals under `op`.
pub fn bessel_improved(op: &PCovOp, family: &[Element], f: &Element) -> Result<BesselImproved> {
    let space = op.space();
    let mut terms = vec![(-Scalar::one(), f.clone())];
    for phi in family {
        let denom = space.expect_product(phi, phi)?;
        if denom.is_zero() {
            return Err(Error::DegenerateVariance(
                "family member with zero second moment".into(),
            ));
        }
        let alpha = &space.expect_product(phi, f)? / &denom;
        terms.push((alpha, phi.clone()));
    }
    let err = Element::linear_combination(terms);
    let s = space.expect_product(&err, &err)?;
    let z = &op.fixed().members()[0];
    let ez2 = &op.fixed().second_moments()[0];
    let ezr = space.expect_product(z, &err)?;
    let v = &s - &(op.p() * &(&(&ezr * &ezr) / ez2));
    Ok(BesselImproved { s, v })
}

/// Parseval-type expansion of the covariance over a mutually uncorrelated
/// family: `Σ_k cov(Φ_k, f) cov(Φ_k, g) / var(Φ_k)`; equals `cov(f, g)`
/// exactly when both arguments lie in the family's span.
pub fn parseval_p(op: &PCovOp, family: &[Element], f: &Element, g: &Element) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for phi in family {
        let v = op.var(phi)?;
        if v.is_zero() {
            return Err(Error::DegenerateVariance(
                "family member with zero variance".into(),
            ));
        }
        acc = acc + &(&op.cov(phi, f)? * &op.cov(phi, g)?) / &v;
    }
    Ok(acc)
}
