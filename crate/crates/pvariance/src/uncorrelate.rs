//! Gram–Schmidt orthogonalization under the deformed covariance, Gram
//! determinants, the bordered-determinant representation of basis elements,
//! and orthogonal companion elements.

use crate::error::{Error, Result};
use crate::expectation_core::{Element, Scalar};
use crate::linalg;
use crate::pcov::PCovOp;

/// Relative floor under the float backend below which a basis variance counts
/// as degenerate during orthogonalization.
pub const DEGENERATE_VAR_TOL: f64 = 1e-10;

/// A sequence of mutually uncorrelated elements produced from ordered seeds,
/// together with their variances under the operator that built them.
#[derive(Debug, Clone)]
pub struct UncorrelatedBasis {
    pub elements: Vec<Element>,
    pub variances: Vec<Scalar>,
}

impl UncorrelatedBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn variance_is_degenerate(var: &Scalar, scale: f64) -> bool {
    if var.is_rational() {
        var.is_zero()
    } else {
        var.to_f64().abs() <= DEGENERATE_VAR_TOL * scale.max(1.0)
    }
}

/// Sequentially orthogonalize `seeds` under `op`:
/// `X_n = V_n − Σ_{k<n} (cov(X_k, V_n) / var(X_k)) X_k`.
///
/// A zero (or float-negligible) variance is allowed only on the final element;
/// anywhere earlier it blocks further projections and is an error.
pub fn gram_schmidt(op: &PCovOp, seeds: &[Element]) -> Result<UncorrelatedBasis> {
    let mut elements: Vec<Element> = Vec::with_capacity(seeds.len());
    let mut variances: Vec<Scalar> = Vec::with_capacity(seeds.len());
    for (n, v) in seeds.iter().enumerate() {
        if let Some(prev) = variances.last() {
            let scale = op.space().expect_product(v, v)?.to_f64().abs();
            if variance_is_degenerate(prev, scale) {
                return Err(Error::DegenerateBasis(format!(
                    "element {} has negligible variance; cannot orthogonalize element {n} against it",
                    n - 1
                )));
            }
        }
        let mut terms = vec![(Scalar::one(), v.clone())];
        for (x, var) in elements.iter().zip(variances.iter()) {
            let c = &op.cov(x, v)? / var;
            if !c.is_zero() {
                terms.push((-c, x.clone()));
            }
        }
        let x_n = Element::linear_combination(terms);
        let var = op.var(&x_n)?;
        elements.push(x_n);
        variances.push(var);
    }
    Ok(UncorrelatedBasis {
        elements,
        variances,
    })
}

/// Gram matrix `[cov(V_i, V_j)]` of the first `n + 1` seeds.
pub fn gram_matrix(op: &PCovOp, seeds: &[Element], n: usize) -> Result<Vec<Vec<Scalar>>> {
    let mut g = vec![vec![Scalar::zero(); n + 1]; n + 1];
    for i in 0..=n {
        for j in i..=n {
            let c = op.cov(&seeds[i], &seeds[j])?;
            g[i][j] = c.clone();
            g[j][i] = c;
        }
    }
    Ok(g)
}

/// Gram determinant `Δ_n = det [cov(V_i, V_j)]_{i,j ≤ n}`; `Δ_{−1} = 1` is
/// represented by calling with the convention `gram_det(op, seeds, n)` for
/// `n ≥ 0` only.
pub fn gram_det(op: &PCovOp, seeds: &[Element], n: usize) -> Result<Scalar> {
    Ok(linalg::det(&gram_matrix(op, seeds, n)?))
}

/// The `n`-th orthogonalized element written as a bordered determinant: the
/// Gram rows of `V_0 … V_{n−1}` bordered below by the symbols `V_0 … V_n`,
/// divided by `Δ_{n−1}` to make the leading coefficient one.
///
/// Expanding along the symbolic last row gives
/// `X_n = (1/Δ_{n−1}) Σ_j (−1)^{n+j} M_j V_j`,
/// where `M_j` deletes column `j` from the `n × (n+1)` block of Gram rows.
pub fn element_by_determinant(op: &PCovOp, seeds: &[Element], n: usize) -> Result<Element> {
    if n == 0 {
        return Ok(seeds[0].clone());
    }
    // Gram rows for i = 0..n−1 over columns j = 0..n.
    let mut rows = vec![vec![Scalar::zero(); n + 1]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = op.cov(&seeds[i], &seeds[j])?;
        }
    }
    let delta_prev = gram_det(op, seeds, n - 1)?;
    if delta_prev.is_zero() {
        return Err(Error::DegenerateBasis(format!(
            "Gram determinant of the first {n} seeds vanishes"
        )));
    }
    let mut terms = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let minor: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut cof = linalg::det(&minor);
        if (n + j) % 2 == 1 {
            cof = -cof;
        }
        let coef = cof / &delta_prev;
        if !coef.is_zero() {
            terms.push((coef, seeds[j].clone()));
        }
    }
    Ok(Element::linear_combination(terms))
}

/// The orthogonal companion `G = X − (1 − √(1−p)) proj X`: companions of an
/// uncorrelated family are orthogonal under the plain second-moment product
/// with `E[G_j²] = var_p(X_j)`.
pub fn orthogonal_companion(op: &PCovOp, x: &Element) -> Result<Element> {
    let shrink = Scalar::one() - (Scalar::one() - op.p().clone()).sqrt();
    if shrink.is_zero() {
        return Ok(x.clone());
    }
    let proj = op.proj_onto_fixed(x)?;
    Ok(x.sub(&proj.scale(&shrink)))
}

/// Diagnostic report from checking mutual uncorrelatedness of a family.
#[derive(Debug, Clone)]
pub struct BasisReport {
    /// Largest |cov(X_i, X_j)| / √(var_i · var_j) over pairs i ≠ j.
    pub worst_off_diagonal: f64,
    pub ok: bool,
}

/// Verify pairwise uncorrelatedness of `elements` under `op` to within `tol`
/// (relative; `tol = 0` demands exact zeros under the rational backend).
pub fn verify_basis(op: &PCovOp, elements: &[Element], tol: f64) -> Result<BasisReport> {
    let mut worst = 0.0f64;
    let mut ok = true;
    let vars: Vec<Scalar> = elements
        .iter()
        .map(|e| op.var(e))
        .collect::<Result<_>>()?;
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let c = op.cov(&elements[i], &elements[j])?;
            let scale = (vars[i].to_f64() * vars[j].to_f64()).sqrt().max(1e-300);
            let rel = c.to_f64().abs() / scale;
            worst = worst.max(rel);
            let pair_ok = if tol == 0.0 && c.is_rational() {
                c.is_zero()
            } else {
                rel <= tol.max(f64::EPSILON)
            };
            ok &= pair_ok;
        }
    }
    Ok(BasisReport {
        worst_off_diagonal: worst,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expectation_core::ProbSpace;

    fn monomial_seeds(n: usize) -> Vec<Element> {
        (0..=n).map(Element::monomial).collect()
    }

    fn op(p_num: i64, p_den: i64) -> PCovOp {
        PCovOp::with_z(
            ProbSpace::uniform01(),
            Element::x(),
            Scalar::ratio(p_num, p_den),
        )
        .unwrap()
    }

    #[test]
    fn basis_is_mutually_uncorrelated_exactly() {
        let op = op(1, 2);
        let basis = gram_schmidt(&op, &monomial_seeds(4)).unwrap();
        let rep = verify_basis(&op, &basis.elements, 0.0).unwrap();
        assert!(rep.ok);
        assert!(basis.variances.iter().all(Scalar::is_positive));
    }

    #[test]
    fn gram_det_is_product_of_variances() {
        let op = op(3, 4);
        let seeds = monomial_seeds(3);
        let basis = gram_schmidt(&op, &seeds).unwrap();
        for n in 0..seeds.len() {
            let prod = basis.variances[..=n]
                .iter()
                .fold(Scalar::one(), |a, v| a * v.clone());
            assert_eq!(gram_det(&op, &seeds, n).unwrap(), prod);
        }
    }

    fn op_half_power() -> PCovOp {
        // Fixed element x^{1/2} lies outside every polynomial span, so the
        // family never degenerates even at p = 1.
        PCovOp::with_z(
            ProbSpace::uniform01(),
            Element::power(Scalar::ratio(1, 2)),
            Scalar::one(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_representation_matches_gram_schmidt() {
        let op = op_half_power();
        let seeds = monomial_seeds(4);
        let basis = gram_schmidt(&op, &seeds).unwrap();
        for n in 0..seeds.len() {
            let via_det = element_by_determinant(&op, &seeds, n).unwrap();
            let diff = basis.elements[n].sub(&via_det);
            // Coefficient-wise zero polynomial.
            let coeffs = diff.as_poly().unwrap();
            assert!(coeffs.iter().all(Scalar::is_zero), "n = {n}: {coeffs:?}");
        }
    }

    #[test]
    fn companions_are_orthogonal_with_variance_norms() {
        let op = op_half_power();
        let basis = gram_schmidt(&op, &monomial_seeds(3)).unwrap();
        let comps: Vec<Element> = basis
            .elements
            .iter()
            .map(|x| orthogonal_companion(&op, x).unwrap())
            .collect();
        for i in 0..comps.len() {
            for j in 0..comps.len() {
                let m = op.space().expect_product(&comps[i], &comps[j]).unwrap();
                if i == j {
                    assert_eq!(m, basis.variances[i]);
                } else {
                    assert!(m.is_zero(), "({i},{j}) cross moment {m}");
                }
            }
        }
    }

    #[test]
    fn degenerate_intermediate_variance_is_an_error() {
        // With the fixed element equal to the first seed and p = 1, the first
        // orthogonalized element already has zero variance.
        let op = PCovOp::with_z(ProbSpace::uniform01(), Element::x(), Scalar::one()).unwrap();
        let seeds = vec![Element::x(), Element::monomial(2)];
        assert!(matches!(
            gram_schmidt(&op, &seeds),
            Err(Error::DegenerateBasis(_))
        ));
    }

    #[test]
    fn zero_variance_allowed_on_final_element() {
        let op = PCovOp::with_z(ProbSpace::uniform01(), Element::x(), Scalar::one()).unwrap();
        let seeds = vec![Element::one(), Element::x()];
        let basis = gram_schmidt(&op, &seeds).unwrap();
        assert!(basis.variances[0].is_positive());
        // The final element may be proportional to the fixed element.
    }
}
