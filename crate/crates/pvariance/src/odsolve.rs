//! Overdetermined linear systems `A x ≅ b` solved by minimizing the deformed
//! squared-residual objective
//! `V(x) = ‖Ax − b‖² − (p/ZᵀZ)(Zᵀ(Ax − b))²`,
//! which interpolates between plain least squares (`p = 0`) and discounting
//! the residual component along a fixed direction `Z` (`p = 1`).

use crate::error::{Error, Result};
use crate::expectation_core::Scalar;
use crate::linalg;

/// An `m × n` system with `m ≥ n`, a right-hand side, a fixed direction, and
/// a deformation parameter.
#[derive(Debug, Clone)]
pub struct OverdeterminedProblem {
    pub a: Vec<Vec<Scalar>>,
    pub b: Vec<Scalar>,
    pub z: Vec<Scalar>,
    pub p: Scalar,
}

/// Solution with both objectives evaluated at the minimizer.
#[derive(Debug, Clone)]
pub struct OdSolution {
    pub x: Vec<Scalar>,
    /// Deformed objective `V` at `x`.
    pub objective_v: Scalar,
    /// Plain squared error `‖Ax − b‖²` at `x`.
    pub objective_ls: Scalar,
}

impl OverdeterminedProblem {
    /// New problem; `z` defaults to the all-ones direction and `p` to one
    /// when not supplied through [`Self::with_direction`].
    pub fn new(a: Vec<Vec<Scalar>>, b: Vec<Scalar>) -> Result<Self> {
        let m = a.len();
        let ones = vec![Scalar::one(); m];
        Self::with_direction(a, b, ones, Scalar::one())
    }

    pub fn with_direction(
        a: Vec<Vec<Scalar>>,
        b: Vec<Scalar>,
        z: Vec<Scalar>,
        p: Scalar,
    ) -> Result<Self> {
        let m = a.len();
        if m == 0 || a[0].is_empty() {
            return Err(Error::ConstraintViolation("empty system".into()));
        }
        let n = a[0].len();
        if a.iter().any(|row| row.len() != n) || b.len() != m || z.len() != m {
            return Err(Error::ConstraintViolation(
                "row lengths, right-hand side and direction must agree".into(),
            ));
        }
        if m < n {
            return Err(Error::ConstraintViolation(format!(
                "need at least as many rows as unknowns ({m} < {n})"
            )));
        }
        if p.is_negative() || p > Scalar::one() {
            return Err(Error::ConstraintViolation(format!(
                "deformation parameter p = {p} must lie in [0, 1]"
            )));
        }
        let zz = dot(&z, &z);
        if !zz.is_positive() {
            return Err(Error::DegenerateVariance(
                "fixed direction has zero norm".into(),
            ));
        }
        Ok(Self { a, b, z, p })
    }

    fn n(&self) -> usize {
        self.a[0].len()
    }

    /// `V(x) = ‖Ax − b‖² − (p/ZᵀZ)(Zᵀ(Ax − b))²`.
    pub fn objective_v(&self, x: &[Scalar]) -> Scalar {
        let r = self.residual(x);
        let rr = dot(&r, &r);
        let zr = dot(&self.z, &r);
        let zz = dot(&self.z, &self.z);
        rr - &self.p * &(&(&zr * &zr) / &zz)
    }

    /// `‖Ax − b‖²`.
    pub fn objective_ls(&self, x: &[Scalar]) -> Scalar {
        let r = self.residual(x);
        dot(&r, &r)
    }

    fn residual(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.a
            .iter()
            .zip(self.b.iter())
            .map(|(row, bi)| {
                let mut acc = -bi.clone();
                for (aij, xj) in row.iter().zip(x.iter()) {
                    acc = acc + aij * xj;
                }
                acc
            })
            .collect()
    }

    /// Plain least-squares minimizer (`p` ignored).
    pub fn ls_solve(&self) -> Result<OdSolution> {
        let (ata, atb) = self.normal_equations(&Scalar::zero())?;
        self.finish(ata, atb)
    }

    /// Minimizer of the deformed objective:
    /// `x = (AᵀA − (p/ZᵀZ) AᵀZZᵀA)⁻¹ (Aᵀb − (p/ZᵀZ) AᵀZZᵀb)`.
    pub fn solve(&self) -> Result<OdSolution> {
        let (m, rhs) = self.normal_equations(&self.p)?;
        self.finish(m, rhs)
    }

    fn normal_equations(&self, p: &Scalar) -> Result<(Vec<Vec<Scalar>>, Vec<Scalar>)> {
        let n = self.n();
        let zz = dot(&self.z, &self.z);
        let ratio = p / &zz;
        // AᵀZ and ZᵀB
        let atz: Vec<Scalar> = (0..n)
            .map(|j| {
                self.a
                    .iter()
                    .zip(self.z.iter())
                    .fold(Scalar::zero(), |acc, (row, zi)| acc + &row[j] * zi)
            })
            .collect();
        let ztb = dot(&self.z, &self.b);
        let mut m = vec![vec![Scalar::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut acc = Scalar::zero();
                for row in &self.a {
                    acc = acc + &row[i] * &row[j];
                }
                acc = acc - &ratio * &(&atz[i] * &atz[j]);
                m[i][j] = acc.clone();
                m[j][i] = acc;
            }
        }
        let rhs: Vec<Scalar> = (0..n)
            .map(|j| {
                let mut acc = Scalar::zero();
                for (row, bi) in self.a.iter().zip(self.b.iter()) {
                    acc = acc + &row[j] * bi;
                }
                acc - &ratio * &(&atz[j] * &ztb)
            })
            .collect();
        Ok((m, rhs))
    }

    fn finish(&self, m: Vec<Vec<Scalar>>, rhs: Vec<Scalar>) -> Result<OdSolution> {
        let out = linalg::solve_full_pivot(&m, &rhs).map_err(|e| match e {
            Error::InconsistentSystem => Error::SingularModifiedSystem(
                "modified normal equations are singular and inconsistent".into(),
            ),
            other => other,
        })?;
        if !out.free_columns.is_empty() {
            return Err(Error::SingularModifiedSystem(format!(
                "modified normal equations are rank deficient (free columns {:?})",
                out.free_columns
            )));
        }
        let x = out.solution;
        Ok(OdSolution {
            objective_v: self.objective_v(&x),
            objective_ls: self.objective_ls(&x),
            x,
        })
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b.iter())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}
