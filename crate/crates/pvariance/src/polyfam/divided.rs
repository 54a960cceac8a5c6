//! Classical orthogonal polynomial recurrences (monic Jacobi and Laguerre,
//! first-kind Chebyshev) and exact divided differences at a point.

use crate::error::{Error, Result};
use crate::expectation_core::Scalar;

/// Recurrence coefficient `B_n` of the monic Jacobi family
/// `P̄_{n+1} = (x − B_n) P̄_n − C_n P̄_{n−1}`.
pub fn jacobi_b(n: usize, alpha: &Scalar, beta: &Scalar) -> Scalar {
    if n == 0 {
        // The general expression is 0/0 when α + β = 0.
        return &(beta - alpha) / &(alpha + beta + Scalar::from_int(2));
    }
    let s = alpha + beta;
    let two_n = Scalar::from_int(2 * n as i64);
    let num = &(beta * beta) - &(alpha * alpha);
    let den = &(&two_n + &s) * &(&two_n + &(&s + &Scalar::from_int(2)));
    num / den
}

/// Recurrence coefficient `C_n` (defined for `n ≥ 1`).
pub fn jacobi_c(n: usize, alpha: &Scalar, beta: &Scalar) -> Scalar {
    let one = Scalar::one();
    let s = alpha + beta;
    if n == 1 {
        // The general expression is 0/0 when α + β = −1.
        let ap1 = alpha + &one;
        let bp1 = beta + &one;
        let sp2 = &s + &Scalar::from_int(2);
        let sp3 = &s + &Scalar::from_int(3);
        return &(Scalar::from_int(4) * (ap1 * bp1)) / &(&(&sp2 * &sp2) * &sp3);
    }
    let nf = Scalar::from_int(n as i64);
    let two_n_s = &Scalar::from_int(2 * n as i64) + &s;
    let num = Scalar::from_int(4)
        * &nf
        * (&nf + alpha)
        * (&nf + beta)
        * (&nf + &s);
    let den = (&two_n_s + &one) * (&two_n_s * &two_n_s) * (&two_n_s - &one);
    num / den
}

/// Coefficients (ascending) of the monic Jacobi polynomial `P̄_n^{(α,β)}`.
pub fn monic_jacobi(n: usize, alpha: &Scalar, beta: &Scalar) -> Vec<Scalar> {
    monic_by_recurrence(n, |k| jacobi_b(k, alpha, beta), |k| jacobi_c(k, alpha, beta))
}

/// Coefficients of the monic generalized Laguerre polynomial `L̄_n^{(α)}`
/// (`B_n = 2n + α + 1`, `C_n = n(n + α)`).
pub fn monic_laguerre(n: usize, alpha: &Scalar) -> Vec<Scalar> {
    monic_by_recurrence(
        n,
        |k| Scalar::from_int(2 * k as i64 + 1) + alpha.clone(),
        |k| Scalar::from_int(k as i64) * (Scalar::from_int(k as i64) + alpha.clone()),
    )
}

fn monic_by_recurrence(
    n: usize,
    b: impl Fn(usize) -> Scalar,
    c: impl Fn(usize) -> Scalar,
) -> Vec<Scalar> {
    let mut prev: Vec<Scalar> = vec![Scalar::one()]; // P̄_0
    if n == 0 {
        return prev;
    }
    let mut cur = vec![-b(0), Scalar::one()]; // P̄_1 = x − B_0
    for k in 1..n {
        let mut next = shift_up(&cur);
        let bk = b(k);
        let ck = c(k);
        for (i, v) in cur.iter().enumerate() {
            next[i] = &next[i] - &(&bk * v);
        }
        for (i, v) in prev.iter().enumerate() {
            next[i] = &next[i] - &(&ck * v);
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of the classical first-kind Chebyshev polynomial `T_n`
/// (leading coefficient `2^{n−1}` for `n ≥ 1`).
pub fn chebyshev_t(n: usize) -> Vec<Scalar> {
    let mut prev = vec![Scalar::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![Scalar::zero(), Scalar::one()];
    for _ in 1..n {
        let mut next = shift_up(&cur);
        for v in next.iter_mut() {
            *v = &*v * &Scalar::from_int(2);
        }
        for (i, v) in prev.iter().enumerate() {
            next[i] = &next[i] - v;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn shift_up(p: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); p.len() + 1];
    for (i, v) in p.iter().enumerate() {
        out[i + 1] = v.clone();
    }
    out
}

/// Synthetic division of `p` (ascending coefficients) by `(x − λ)`:
/// returns the quotient `q` and the remainder `p(λ)`, so that
/// `(p(x) − p(λ)) / (x − λ) = q(x)` is the divided difference at `λ`.
pub fn divided_difference(p: &[Scalar], lambda: &Scalar) -> Result<(Vec<Scalar>, Scalar)> {
    if p.len() < 2 {
        return Err(Error::IncompatibleRepr(
            "divided difference needs a polynomial of degree at least 1".into(),
        ));
    }
    let deg = p.len() - 1;
    let mut q = vec![Scalar::zero(); deg];
    let mut carry = p[deg].clone();
    for i in (0..deg).rev() {
        q[i] = carry.clone();
        carry = &p[i] + &(lambda * &carry);
    }
    Ok((q, carry))
}

/// Evaluate ascending coefficients at `x` (Horner).
pub fn eval_poly(p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn monic_legendre_first_polynomials() {
        let z = Scalar::zero();
        // P̄_2 = x² − 1/3, P̄_3 = x³ − 3x/5 for α = β = 0.
        assert_eq!(monic_jacobi(2, &z, &z), vec![s(-1, 3), s(0, 1), s(1, 1)]);
        assert_eq!(
            monic_jacobi(3, &z, &z),
            vec![s(0, 1), s(-3, 5), s(0, 1), s(1, 1)]
        );
    }

    #[test]
    fn monic_chebyshev_first_kind() {
        let h = s(-1, 2);
        // T̄_2 = x² − 1/2, T̄_3 = x³ − 3x/4.
        assert_eq!(monic_jacobi(2, &h, &h), vec![s(-1, 2), s(0, 1), s(1, 1)]);
        assert_eq!(
            monic_jacobi(3, &h, &h),
            vec![s(0, 1), s(-3, 4), s(0, 1), s(1, 1)]
        );
    }

    #[test]
    fn classical_chebyshev() {
        // T_3 = 4x³ − 3x, T_4 = 8x⁴ − 8x² + 1.
        assert_eq!(chebyshev_t(3), vec![s(0, 1), s(-3, 1), s(0, 1), s(4, 1)]);
        assert_eq!(
            chebyshev_t(4),
            vec![s(1, 1), s(0, 1), s(-8, 1), s(0, 1), s(8, 1)]
        );
    }

    #[test]
    fn monic_laguerre_small() {
        let a = Scalar::zero();
        // L̄_2^{(0)} = x² − 4x + 2.
        assert_eq!(monic_laguerre(2, &a), vec![s(2, 1), s(-4, 1), s(1, 1)]);
    }

    #[test]
    fn divided_difference_of_quadratic() {
        // p = x² − 1, λ = 1 → quotient x + 1, remainder 0.
        let p = vec![s(-1, 1), s(0, 1), s(1, 1)];
        let (q, rem) = divided_difference(&p, &Scalar::one()).unwrap();
        assert_eq!(q, vec![s(1, 1), s(1, 1)]);
        assert!(rem.is_zero());
        // At λ = 2: remainder p(2) = 3, quotient x + 2.
        let (q2, rem2) = divided_difference(&p, &Scalar::from_int(2)).unwrap();
        assert_eq!(q2, vec![s(2, 1), s(1, 1)]);
        assert_eq!(rem2, s(3, 1));
    }
}
