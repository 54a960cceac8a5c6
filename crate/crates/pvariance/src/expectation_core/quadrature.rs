//! Adaptive numeric integration used as the fallback when no closed-form
//! moment is available: Gauss–Legendre of order 32 with panel bisection.

use std::sync::OnceLock;

const ORDER: usize = 32;
const REL_TOL: f64 = 1e-12;
const MAX_DEPTH: u32 = 12;

/// Nodes/weights of the order-32 Gauss–Legendre rule on [−1, 1].
fn gl32() -> &'static [(f64, f64); ORDER] {
    static TABLE: OnceLock<[(f64, f64); ORDER]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = ORDER;
        let mut out = [(0.0, 0.0); ORDER];
        for k in 0..n {
            // Newton iteration on P_n from the Chebyshev-based initial guess.
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_and_deriv(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_and_deriv(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out[k] = (x, w);
        }
        out
    })
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in gl32().iter() {
        acc += w * f(c + h * x);
    }
    acc * h
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, depth: u32) -> f64 {
    let c = 0.5 * (a + b);
    let left = panel(f, a, c);
    let right = panel(f, c, b);
    let sum = left + right;
    if depth >= MAX_DEPTH || (sum - whole).abs() <= REL_TOL * 1f64.max(sum.abs()) {
        sum
    } else {
        adaptive(f, a, c, left, depth + 1) + adaptive(f, c, b, right, depth + 1)
    }
}

/// ∫_a^b f(x) dx on a finite interval.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let whole = panel(&f, a, b);
    adaptive(&f, a, b, whole, 0)
}

/// ∫_a^b f(x) dx by the tanh-sinh (double-exponential) rule, robust to
/// integrable singularities at either endpoint. Non-finite integrand values
/// (only possible in vanishing-weight limits at the endpoints) count as zero.
pub fn integrate_tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let c = 0.5 * (a + b);
    let s = 0.5 * (b - a);
    let half_pi = std::f64::consts::FRAC_PI_2;
    const T_MAX: f64 = 3.6;
    let sum_at = |h: f64| -> f64 {
        let mut acc = 0.0;
        let mut k = 0i64;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            let sh = half_pi * t.sinh();
            let u = sh.tanh();
            let w = half_pi * t.cosh() / (sh.cosh() * sh.cosh());
            let mut term = {
                let v = f(c + s * u) * w;
                if v.is_finite() { v } else { 0.0 }
            };
            if k > 0 {
                let v = f(c - s * u) * w;
                term += if v.is_finite() { v } else { 0.0 };
            }
            acc += term;
            k += 1;
        }
        acc * h * s
    };
    let mut h = 1.0;
    let mut prev = sum_at(h);
    for _ in 0..10 {
        h *= 0.5;
        let cur = sum_at(h);
        if (cur - prev).abs() <= 1e-13 * cur.abs().max(1.0) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// ∫_a^∞ f(x) dx via the substitution x = a + t/(1−t), t ∈ [0, 1).
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, a: f64) -> f64 {
    integrate(
        |t| {
            let u = 1.0 - t;
            let v = f(a + t / u) / (u * u);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0 - 1e-14,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0);
        assert!((v - (4.0 - 4.0 + 2.0)).abs() < 1e-13);
    }

    #[test]
    fn sine_on_0_pi() {
        let v = integrate(|x| x.sin(), 0.0, std::f64::consts::PI);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sqrt_singularity() {
        let v = integrate(|x| (1.0 - x).sqrt(), 0.0, 1.0);
        assert!((v - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn gamma_tail() {
        // ∫_0^∞ x^2 e^{−x} dx = 2
        let v = integrate_semi_infinite(|x| x * x * (-x).exp(), 0.0);
        assert!((v - 2.0).abs() < 1e-10);
    }
}
