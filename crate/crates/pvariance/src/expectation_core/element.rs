//! Random elements over a probability space: polynomials, power functions,
//! tabulated values, vectors, numeric callables, and linear combinations.

use std::sync::Arc;

use super::scalar::{binomial, Scalar};
use crate::error::{Error, Result};

#[derive(Clone)]
pub enum Element {
    /// Polynomial with ascending monomial coefficients; trailing zeros trimmed.
    Poly(Vec<Scalar>),
    /// `x^λ`.
    Power(Scalar),
    /// `x^λ (1−x)^μ`.
    PowerProduct(Scalar, Scalar),
    /// Values aligned with the points of a discrete sample space.
    Tabulated(Vec<Scalar>),
    /// A vector in a Euclidean vector space.
    Vector(Vec<Scalar>),
    /// Opaque numeric function; forces the quadrature fallback.
    Callable(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// Weighted linear combination of other elements.
    Combo(Vec<(Scalar, Element)>),
}

impl std::fmt::Debug for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Element::Poly(c) => write!(f, "Poly({c:?})"),
            Element::Power(l) => write!(f, "x^{l:?}"),
            Element::PowerProduct(l, m) => write!(f, "x^{l:?}(1-x)^{m:?}"),
            Element::Tabulated(v) => write!(f, "Tabulated({v:?})"),
            Element::Vector(v) => write!(f, "Vector({v:?})"),
            Element::Callable(_) => write!(f, "Callable(..)"),
            Element::Combo(ts) => write!(f, "Combo({ts:?})"),
        }
    }
}

impl Element {
    pub fn poly(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, Scalar::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero());
        }
        Element::Poly(coeffs)
    }

    pub fn constant(c: Scalar) -> Self {
        Element::Poly(vec![c])
    }

    pub fn one() -> Self {
        Element::constant(Scalar::one())
    }

    pub fn zero() -> Self {
        Element::constant(Scalar::zero())
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Scalar::zero(); k + 1];
        c[k] = Scalar::one();
        Element::Poly(c)
    }

    pub fn x() -> Self {
        Element::monomial(1)
    }

    /// `x^λ`, normalized to a polynomial when `λ` is a nonnegative integer.
    pub fn power(lam: Scalar) -> Self {
        if let Some(k) = lam.to_exact_i64() {
            if k >= 0 {
                return Element::monomial(k as usize);
            }
        }
        Element::Power(lam)
    }

    /// `x^λ (1−x)^μ`, normalized to simpler shapes where possible.
    pub fn power_product(lam: Scalar, mu: Scalar) -> Self {
        if mu.is_zero() {
            return Element::power(lam);
        }
        if let (Some(l), Some(m)) = (lam.to_exact_i64(), mu.to_exact_i64()) {
            if l >= 0 && m >= 0 {
                // Expand x^l (1−x)^m into coefficients.
                let mut coeffs = vec![Scalar::zero(); (l + m) as usize + 1];
                let mut sign = Scalar::one();
                for k in 0..=(m as usize) {
                    coeffs[l as usize + k] = &sign * binomial(m as usize, k);
                    sign = -sign;
                }
                return Element::poly(coeffs);
            }
        }
        Element::PowerProduct(lam, mu)
    }

    pub fn tabulated(values: Vec<Scalar>) -> Self {
        Element::Tabulated(values)
    }

    pub fn vector(components: Vec<Scalar>) -> Self {
        Element::Vector(components)
    }

    pub fn callable<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Element::Callable(Arc::new(f))
    }

    /// Weighted linear combination, flattened and merged where the shapes allow.
    pub fn linear_combination(terms: Vec<(Scalar, Element)>) -> Self {
        let mut leaves: Vec<(Scalar, Element)> = Vec::new();
        fn push(leaves: &mut Vec<(Scalar, Element)>, w: Scalar, e: Element) {
            if w.is_zero() {
                return;
            }
            match e {
                Element::Combo(ts) => {
                    for (wi, ei) in ts {
                        push(leaves, &w * &wi, ei);
                    }
                }
                other => leaves.push((w, other)),
            }
        }
        for (w, e) in terms {
            push(&mut leaves, w, e);
        }
        if leaves.is_empty() {
            return Element::zero();
        }

        // Merge polynomial leaves into one polynomial.
        let mut poly_acc: Option<Vec<Scalar>> = None;
        let mut rest: Vec<(Scalar, Element)> = Vec::new();
        for (w, e) in leaves {
            match e {
                Element::Poly(cs) => {
                    let acc = poly_acc.get_or_insert_with(Vec::new);
                    if acc.len() < cs.len() {
                        acc.resize(cs.len(), Scalar::zero());
                    }
                    for (i, c) in cs.iter().enumerate() {
                        acc[i] = &acc[i] + &(&w * c);
                    }
                }
                other => rest.push((w, other)),
            }
        }
        // Fold vector leaves together.
        let mut vec_acc: Option<Vec<Scalar>> = None;
        let mut rest2: Vec<(Scalar, Element)> = Vec::new();
        for (w, e) in rest {
            match e {
                Element::Vector(vs) => {
                    let acc = vec_acc.get_or_insert_with(|| vec![Scalar::zero(); vs.len()]);
                    if acc.len() == vs.len() {
                        for (i, c) in vs.iter().enumerate() {
                            acc[i] = &acc[i] + &(&w * c);
                        }
                    } else {
                        rest2.push((w, Element::Vector(vs)));
                    }
                }
                other => rest2.push((w, other)),
            }
        }
        // Merge identical power leaves by summing weights.
        let mut merged: Vec<(Scalar, Element)> = Vec::new();
        'outer: for (w, e) in rest2 {
            if let Element::Power(l) = &e {
                for (mw, me) in merged.iter_mut() {
                    if let Element::Power(ml) = me {
                        if ml == l {
                            *mw = &*mw + &w;
                            continue 'outer;
                        }
                    }
                }
            }
            if let Element::PowerProduct(l, m) = &e {
                for (mw, me) in merged.iter_mut() {
                    if let Element::PowerProduct(ml, mm) = me {
                        if ml == l && mm == m {
                            *mw = &*mw + &w;
                            continue 'outer;
                        }
                    }
                }
            }
            merged.push((w, e));
        }
        let mut out: Vec<(Scalar, Element)> = Vec::new();
        if let Some(cs) = poly_acc {
            let p = Element::poly(cs);
            if !matches!(&p, Element::Poly(c) if c.len() == 1 && c[0].is_zero()) {
                out.push((Scalar::one(), p));
            }
        }
        if let Some(vs) = vec_acc {
            out.push((Scalar::one(), Element::Vector(vs)));
        }
        out.extend(merged.into_iter().filter(|(w, _)| !w.is_zero()));
        match out.len() {
            0 => Element::zero(),
            1 if out[0].0 == Scalar::one() => out.pop().map(|t| t.1).unwrap(),
            _ => Element::Combo(out),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element::linear_combination(vec![(c.clone(), self.clone())])
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::linear_combination(vec![
            (Scalar::one(), self.clone()),
            (Scalar::one(), other.clone()),
        ])
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element::linear_combination(vec![
            (Scalar::one(), self.clone()),
            (-Scalar::one(), other.clone()),
        ])
    }

    /// Polynomial coefficients if this element is (or flattens to) a polynomial.
    pub fn as_poly(&self) -> Option<Vec<Scalar>> {
        match self {
            Element::Poly(c) => Some(c.clone()),
            Element::Power(_) | Element::PowerProduct(_, _) => None,
            Element::Combo(ts) => {
                let mut acc: Vec<Scalar> = vec![Scalar::zero()];
                for (w, e) in ts {
                    let cs = e.as_poly()?;
                    if acc.len() < cs.len() {
                        acc.resize(cs.len(), Scalar::zero());
                    }
                    for (i, c) in cs.iter().enumerate() {
                        acc[i] = &acc[i] + &(w * c);
                    }
                }
                Some(acc)
            }
            _ => None,
        }
    }

    /// Degree of a polynomial element.
    pub fn degree(&self) -> Option<usize> {
        self.as_poly().map(|c| {
            let mut d = c.len() - 1;
            while d > 0 && c[d].is_zero() {
                d -= 1;
            }
            d
        })
    }

    /// Numeric evaluation (float path).
    pub fn eval_f64(&self, x: f64) -> f64 {
        match self {
            Element::Poly(c) => c.iter().rev().fold(0.0, |acc, ck| acc * x + ck.to_f64()),
            Element::Power(l) => x.powf(l.to_f64()),
            Element::PowerProduct(l, m) => x.powf(l.to_f64()) * (1.0 - x).powf(m.to_f64()),
            Element::Callable(f) => f(x),
            Element::Combo(ts) => ts.iter().map(|(w, e)| w.to_f64() * e.eval_f64(x)).sum(),
            Element::Tabulated(_) | Element::Vector(_) => f64::NAN,
        }
    }

    /// Exact evaluation where the representation allows it.
    pub fn eval_scalar(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            Element::Poly(c) => Ok(c
                .iter()
                .rev()
                .fold(Scalar::zero(), |acc, ck| &(&acc * x) + ck)),
            Element::Power(l) => scalar_pow(x, l),
            Element::PowerProduct(l, m) => {
                let a = scalar_pow(x, l)?;
                let b = scalar_pow(&(Scalar::one() - x), m)?;
                Ok(a * b)
            }
            Element::Callable(f) => Ok(Scalar::float(f(x.to_f64()))),
            Element::Combo(ts) => {
                let mut acc = Scalar::zero();
                for (w, e) in ts {
                    acc = acc + w * &e.eval_scalar(x)?;
                }
                Ok(acc)
            }
            Element::Tabulated(_) | Element::Vector(_) => Err(Error::IncompatibleRepr(
                "tabulated/vector elements have no pointwise value".into(),
            )),
        }
    }

    /// Components if this element is (or flattens to) a vector.
    pub fn as_vector(&self) -> Option<Vec<Scalar>> {
        match self {
            Element::Vector(v) => Some(v.clone()),
            Element::Combo(ts) => {
                let mut acc: Option<Vec<Scalar>> = None;
                for (w, e) in ts {
                    let vs = e.as_vector()?;
                    let acc = acc.get_or_insert_with(|| vec![Scalar::zero(); vs.len()]);
                    if acc.len() != vs.len() {
                        return None;
                    }
                    for (i, c) in vs.iter().enumerate() {
                        acc[i] = &acc[i] + &(w * c);
                    }
                }
                acc
            }
            _ => None,
        }
    }
}

fn scalar_pow(x: &Scalar, e: &Scalar) -> Result<Scalar> {
    if let Some(k) = e.to_exact_i64() {
        if k >= 0 || !x.is_zero() {
            return Ok(x.pow_i(k as i32));
        }
        return Err(Error::DivergentMoment("0 raised to a negative power".into()));
    }
    let xv = x.to_f64();
    let ev = e.to_f64();
    if xv < 0.0 {
        return Err(Error::IncompatibleRepr(
            "fractional power of a negative value".into(),
        ));
    }
    Ok(Scalar::float(xv.powf(ev)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_trim_and_eval() {
        let p = Element::poly(vec![Scalar::one(), Scalar::from_int(2), Scalar::zero()]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(
            p.eval_scalar(&Scalar::ratio(1, 2)).unwrap(),
            Scalar::from_int(2)
        );
    }

    #[test]
    fn power_product_expands_for_integer_exponents() {
        let e = Element::power_product(Scalar::from_int(1), Scalar::from_int(2));
        // x(1−x)² = x − 2x² + x³
        assert_eq!(
            e.as_poly().unwrap(),
            vec![
                Scalar::zero(),
                Scalar::one(),
                Scalar::from_int(-2),
                Scalar::one()
            ]
        );
    }

    #[test]
    fn combos_flatten() {
        let e = Element::linear_combination(vec![
            (Scalar::from_int(2), Element::monomial(1)),
            (Scalar::one(), Element::constant(Scalar::from_int(3))),
        ]);
        assert_eq!(
            e.as_poly().unwrap(),
            vec![Scalar::from_int(3), Scalar::from_int(2)]
        );
        let f = Element::linear_combination(vec![
            (Scalar::one(), Element::power(Scalar::ratio(1, 2))),
            (Scalar::from_int(2), Element::power(Scalar::ratio(1, 2))),
        ]);
        match f {
            Element::Combo(ts) => {
                assert_eq!(ts.len(), 1);
                assert_eq!(ts[0].0, Scalar::from_int(3));
            }
            other => panic!("expected combo, got {other:?}"),
        }
    }

    #[test]
    fn vector_combination() {
        let v = Element::linear_combination(vec![
            (
                Scalar::from_int(2),
                Element::vector(vec![Scalar::one(), Scalar::zero()]),
            ),
            (
                Scalar::one(),
                Element::vector(vec![Scalar::zero(), Scalar::one()]),
            ),
        ]);
        assert_eq!(
            v.as_vector().unwrap(),
            vec![Scalar::from_int(2), Scalar::one()]
        );
    }
}
