//! Best approximation by minimizing the deformed variance of the residual:
//! normal-equation assembly, solving (including the degenerate convention for
//! a free coefficient), and expansions over already-uncorrelated bases.

use crate::error::{Error, Result};
use crate::expectation_core::{Element, Scalar};
use crate::linalg;
use crate::pcov::PCovOp;

/// Result of a least-variance fit.
#[derive(Debug, Clone)]
pub struct FitResult {
    /// Coefficients in the order of the supplied basis.
    pub coefficients: Vec<Scalar>,
    /// Deformed variance of the residual `Y − Σ c_k X_k`.
    pub residual_var_p: Scalar,
    /// Ordinary mean-square residual `E[(Y − Σ c_k X_k)²]`.
    pub residual_ls: Scalar,
    /// The basis elements the coefficients refer to.
    pub basis_used: Vec<Element>,
    /// Indices whose normal-equation column was free (singular system); their
    /// values were fixed by the mean-matching convention.
    pub degenerate_free_params: Vec<usize>,
}

/// Normal equations of the fit: matrix `[cov(X_i, X_j)]` and right-hand side
/// `[cov(X_i, Y)]`.
pub fn assemble_system(
    op: &PCovOp,
    basis: &[Element],
    y: &Element,
) -> Result<(Vec<Vec<Scalar>>, Vec<Scalar>)> {
    let n = basis.len();
    let mut a = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let c = op.cov(&basis[i], &basis[j])?;
            a[i][j] = c.clone();
            a[j][i] = c;
        }
    }
    let b = basis
        .iter()
        .map(|x| op.cov(x, y))
        .collect::<Result<Vec<_>>>()?;
    Ok((a, b))
}

/// Minimize `var_p(Y − Σ c_k X_k)` over the coefficients.
///
/// When the normal equations are singular but consistent, the minimizer is a
/// family; each free coefficient `c_j` is then fixed so the approximation
/// matches the mean of `Y`:
/// `c_j = (E[Y] − Σ_{k≠j} c_k E[X_k]) / E[X_j]` (left at zero if `E[X_j] = 0`).
pub fn fit(op: &PCovOp, basis: &[Element], y: &Element) -> Result<FitResult> {
    if basis.is_empty() {
        return Err(Error::ConstraintViolation("empty fitting basis".into()));
    }
    let (a, b) = assemble_system(op, basis, y)?;
    let out = linalg::solve_full_pivot(&a, &b)?;
    let mut coefficients = out.solution;
    let free = out.free_columns;
    if !free.is_empty() {
        let e_y = op.space().expect(y)?;
        let e_basis = basis
            .iter()
            .map(|x| op.space().expect(x))
            .collect::<Result<Vec<_>>>()?;
        for &j in &free {
            if e_basis[j].is_zero() {
                continue;
            }
            let mut acc = e_y.clone();
            for (k, (c, e)) in coefficients.iter().zip(e_basis.iter()).enumerate() {
                if k != j && !c.is_zero() {
                    acc = acc - &(c * e);
                }
            }
            coefficients[j] = acc / &e_basis[j];
        }
    }
    let mut terms = vec![(Scalar::one(), y.clone())];
    for (c, x) in coefficients.iter().zip(basis.iter()) {
        if !c.is_zero() {
            terms.push((-c.clone(), x.clone()));
        }
    }
    let residual = Element::linear_combination(terms);
    let residual_var_p = op.var(&residual)?;
    let residual_ls = op.space().expect_product(&residual, &residual)?;
    Ok(FitResult {
        coefficients,
        residual_var_p,
        residual_ls,
        basis_used: basis.to_vec(),
        degenerate_free_params: free,
    })
}

/// Expansion coefficients `c_k = cov(X_k, Y) / var(X_k)` over an already
/// mutually uncorrelated basis; exact minimizers of the residual variance.
pub fn expand(op: &PCovOp, basis: &[Element], y: &Element) -> Result<Vec<Scalar>> {
    basis
        .iter()
        .map(|x| {
            let v = op.var(x)?;
            if v.is_zero() {
                return Err(Error::DegenerateVariance(
                    "expansion coefficient over a zero-variance element".into(),
                ));
            }
            Ok(&op.cov(x, y)? / &v)
        })
        .collect()
}

/// Coefficients of `x · f_n` over the family `f_0 … f_{n+1}` via covariance
/// ratios: entry `k` is `cov(x f_n, f_k) / var(f_k)`. Valid whenever the
/// family is mutually uncorrelated and `x f_n` lies in its span.
pub fn multiplication_coeffs(op: &PCovOp, family: &[Element], n: usize) -> Result<Vec<Scalar>> {
    let p = family[n]
        .as_poly()
        .ok_or_else(|| Error::IncompatibleRepr("multiplication by x needs a polynomial".into()))?;
    let mut shifted = vec![Scalar::zero()];
    shifted.extend(p);
    let xf = Element::poly(shifted);
    let upto = (n + 1).min(family.len() - 1);
    family[..=upto]
        .iter()
        .map(|f| {
            let v = op.var(f)?;
            if v.is_zero() {
                return Err(Error::DegenerateVariance(
                    "recurrence coefficient over a zero-variance element".into(),
                ));
            }
            Ok(&op.cov(&xf, f)? / &v)
        })
        .collect()
}
