//! Small dense linear algebra over [`Scalar`]: fraction-free determinants for
//! the rational backend, pivoted elimination shared by both backends.

use crate::error::{Error, Result};
use crate::expectation_core::Scalar;

/// Outcome of solving `A x = b` with full pivoting.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solution: Vec<Scalar>,
    /// Column indices whose value was left free (set to 0) because the system
    /// was singular but consistent.
    pub free_columns: Vec<usize>,
    /// Numerical rank found during elimination (diagnostic).
    #[allow(dead_code)]
    pub rank: usize,
}

fn all_rational(m: &[Vec<Scalar>]) -> bool {
    m.iter().all(|row| row.iter().all(Scalar::is_rational))
}

/// Determinant: Bareiss fraction-free elimination under the rational backend,
/// partially pivoted LU under the float backend.
pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    if all_rational(m) {
        det_bareiss(m)
    } else {
        det_lu(m)
    }
}

fn det_bareiss(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut prev = Scalar::one();
    let mut sign = Scalar::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Pivot on a nonzero entry below.
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Scalar::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn det_lu(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .map(|row| row.iter().map(Scalar::to_f64).collect())
        .collect();
    let mut det = 1.0f64;
    for k in 0..n {
        let (p, mag) = (k..n)
            .map(|i| (i, a[i][k].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if mag == 0.0 {
            return Scalar::float(0.0);
        }
        if p != k {
            a.swap(k, p);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    Scalar::float(det)
}

/// Solve `A x = b` by Gauss–Jordan elimination with full pivoting.
///
/// Exact under the rational backend (a pivot is "zero" only when it is exactly
/// zero); under the float backend pivots below `tol · max|A|` count as zero.
/// Singular-but-consistent systems return the minimum-support solution with
/// free columns reported; inconsistent systems error.
pub fn solve_full_pivot(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<SolveOutcome> {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    debug_assert_eq!(b.len(), n);
    let rational = all_rational(a) && b.iter().all(Scalar::is_rational);
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|s| s.to_f64().abs())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let tol = if rational { 0.0 } else { 1e-12 * scale };

    let mut aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut r = row.to_vec();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut col_of_pivot: Vec<usize> = Vec::new(); // pivot column per elimination step
    let mut col_perm: Vec<usize> = (0..m).collect();
    let mut row = 0usize;

    for step in 0..m.min(n) {
        // Full pivot over remaining submatrix.
        let mut best: Option<(usize, usize, f64)> = None;
        for i in row..n {
            for j in step..m {
                let mag = aug[i][col_perm[j]].to_f64().abs();
                if best.map_or(true, |(_, _, bm)| mag > bm) {
                    best = Some((i, j, mag));
                }
            }
        }
        let Some((pi, pj, mag)) = best else { break };
        if mag <= tol || (rational && aug[pi][col_perm[pj]].is_zero()) {
            break;
        }
        aug.swap(row, pi);
        col_perm.swap(step, pj);
        let pc = col_perm[step];
        let pivot = aug[row][pc].clone();
        for i in 0..n {
            if i == row {
                continue;
            }
            if aug[i][pc].is_zero() {
                continue;
            }
            let f = &aug[i][pc] / &pivot;
            for j in 0..=m {
                let idx = if j == m { m } else { j };
                let val = &aug[i][idx] - &(&f * &aug[row][idx]);
                aug[i][idx] = val;
            }
            aug[i][pc] = Scalar::zero();
        }
        col_of_pivot.push(pc);
        row += 1;
    }

    let rank = row;
    // Consistency check on the remaining rows.
    for r in aug.iter().skip(rank) {
        let resid = r[m].to_f64().abs();
        let limit = if rational { 0.0 } else { 1e-9 * scale.max(1.0) };
        let zero = if rational { r[m].is_zero() } else { resid <= limit };
        if !zero {
            return Err(Error::InconsistentSystem);
        }
    }

    let mut solution = vec![Scalar::zero(); m];
    for (step, &pc) in col_of_pivot.iter().enumerate() {
        solution[pc] = &aug[step][m] / &aug[step][pc];
    }
    let free_columns: Vec<usize> = (0..m).filter(|c| !col_of_pivot.contains(c)).collect();
    Ok(SolveOutcome {
        solution,
        free_columns,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn bareiss_matches_hand_determinant() {
        let m = vec![
            vec![s(1, 1), s(2, 1), s(3, 1)],
            vec![s(4, 1), s(5, 1), s(6, 1)],
            vec![s(7, 1), s(8, 1), s(10, 1)],
        ];
        assert_eq!(det(&m), Scalar::from_int(-3));
    }

    #[test]
    fn hilbert_determinant_exact() {
        // det of the 4×4 Hilbert matrix = 1/6048000
        let m: Vec<Vec<Scalar>> = (0..4)
            .map(|i| (0..4).map(|j| s(1, (i + j + 1) as i64)).collect())
            .collect();
        assert_eq!(det(&m), Scalar::ratio(1, 6048000));
    }

    #[test]
    fn float_det_agrees() {
        let m = vec![
            vec![Scalar::float(2.0), Scalar::float(1.0)],
            vec![Scalar::float(1.0), Scalar::float(3.0)],
        ];
        assert!(det(&m).approx_eq(&Scalar::from_int(5), 1e-12));
    }

    #[test]
    fn solve_exact() {
        let a = vec![vec![s(2, 1), s(1, 1)], vec![s(1, 1), s(3, 1)]];
        let b = vec![s(5, 1), s(10, 1)];
        let out = solve_full_pivot(&a, &b).unwrap();
        assert_eq!(out.solution, vec![Scalar::from_int(1), Scalar::from_int(3)]);
        assert!(out.free_columns.is_empty());
    }

    #[test]
    fn singular_consistent_reports_free_column() {
        let a = vec![vec![s(1, 1), s(1, 1)], vec![s(2, 1), s(2, 1)]];
        let b = vec![s(3, 1), s(6, 1)];
        let out = solve_full_pivot(&a, &b).unwrap();
        assert_eq!(out.rank, 1);
        assert_eq!(out.free_columns.len(), 1);
    }

    #[test]
    fn singular_inconsistent_errors() {
        let a = vec![vec![s(1, 1), s(1, 1)], vec![s(1, 1), s(1, 1)]];
        let b = vec![s(1, 1), s(2, 1)];
        assert!(matches!(
            solve_full_pivot(&a, &b),
            Err(Error::InconsistentSystem)
        ));
    }
}
