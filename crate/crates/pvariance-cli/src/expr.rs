//! Small expression language for targets, fixed elements, and weights.
//!
//! Grammar (sums of products):
//!   expr   := term (('+' | '-') term)*
//!   term   := factor ('*' factor)*
//!   factor := ['-'] atom ['^' number]
//!   atom   := number | 'x' | '(1-x)' | 'sqrt(1-x)'
//!          | 'exp(' coeff 'x'? ')' | 'sin(' coeff 'x'? ')' | 'cos(' coeff 'x'? ')'
//!   number := integer | decimal | integer '/' integer
//!
//! Numbers parse to exact rationals (decimals up to 15 digits); terms built
//! only from powers of `x` and `(1-x)` stay on the exact evaluation path,
//! while exp/sin/cos force a numeric callable.

use pvariance::{Element, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Scalar),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let mut num = parse_number(&text)?;
                // Rational literal a/b (only when a bare integer precedes '/').
                if i < chars.len() && chars[i] == '/' && !text.contains('.') {
                    let mut j = i + 1;
                    let dstart = j;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j > dstart {
                        let den: String = chars[dstart..j].iter().collect();
                        let den = parse_number(&den)?;
                        if den.is_zero() {
                            return Err("zero denominator in rational literal".into());
                        }
                        num = &num / &den;
                        i = j;
                    }
                }
                out.push(Tok::Num(num));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character '{other}'")),
        }
    }
    Ok(out)
}

/// Exact rational from an integer or decimal literal (≤ 15 digits).
pub fn parse_number(text: &str) -> Result<Scalar, String> {
    let digits = text.chars().filter(|c| c.is_ascii_digit()).count();
    if digits == 0 || digits > 15 || text.chars().filter(|c| *c == '.').count() > 1 {
        return Err(format!("malformed number '{text}'"));
    }
    if let Some(dot) = text.find('.') {
        let frac_len = text.len() - dot - 1;
        let joined: String = text.chars().filter(|c| *c != '.').collect();
        let mantissa: i64 = joined
            .parse()
            .map_err(|_| format!("malformed number '{text}'"))?;
        let mut den = Scalar::one();
        for _ in 0..frac_len {
            den = den * Scalar::from_int(10);
        }
        Ok(&Scalar::from_int(mantissa) / &den)
    } else {
        text.parse::<i64>()
            .map(Scalar::from_int)
            .map_err(|_| format!("malformed number '{text}'"))
    }
}

/// A rational value possibly prefixed by '-', e.g. for `--p` and intervals.
pub fn parse_scalar_arg(text: &str) -> Result<Scalar, String> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('-') {
        return parse_scalar_arg(rest).map(|s| -s);
    }
    if let Some((n, d)) = t.split_once('/') {
        let den = parse_number(d.trim())?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(&parse_number(n.trim())? / &den);
    }
    parse_number(t)
}

/// One multiplicative factor that cannot be folded into `x^λ (1−x)^μ`.
#[derive(Debug, Clone, Copy)]
enum Trans {
    Exp(f64),
    Sin(f64),
    Cos(f64),
}

impl Trans {
    fn eval(self, x: f64) -> f64 {
        match self {
            Trans::Exp(a) => (a * x).exp(),
            Trans::Sin(a) => (a * x).sin(),
            Trans::Cos(a) => (a * x).cos(),
        }
    }
}

/// Accumulated product `coeff · x^λ (1−x)^μ · Π transcendentals`.
struct Term {
    coeff: Scalar,
    lam: Scalar,
    mu: Scalar,
    trans: Vec<Trans>,
}

impl Term {
    fn unit() -> Self {
        Term {
            coeff: Scalar::one(),
            lam: Scalar::zero(),
            mu: Scalar::zero(),
            trans: Vec::new(),
        }
    }

    fn into_element(self) -> (Scalar, Element) {
        if self.trans.is_empty() {
            if self.lam.is_zero() && self.mu.is_zero() {
                return (self.coeff, Element::one());
            }
            return (self.coeff, Element::power_product(self.lam, self.mu));
        }
        let lam = self.lam.to_f64();
        let mu = self.mu.to_f64();
        let trans = self.trans;
        let el = Element::callable(move |x: f64| {
            let mut v = x.powf(lam) * (1.0 - x).powf(mu);
            for t in &trans {
                v *= t.eval(x);
            }
            v
        });
        (self.coeff, el)
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.bump() {
            Some(ref got) if *got == t => Ok(()),
            other => Err(format!("expected {t:?}, found {other:?}")),
        }
    }

    fn expr(&mut self) -> Result<Vec<Term>, String> {
        let mut sign = Scalar::one();
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            sign = -Scalar::one();
        } else if matches!(self.peek(), Some(Tok::Plus)) {
            self.bump();
        }
        let mut terms = vec![self.term(sign)?];
        while let Some(tok) = self.peek() {
            let sign = match tok {
                Tok::Plus => Scalar::one(),
                Tok::Minus => -Scalar::one(),
                _ => return Err(format!("expected '+' or '-', found {tok:?}")),
            };
            self.bump();
            terms.push(self.term(sign)?);
        }
        Ok(terms)
    }

    fn term(&mut self, sign: Scalar) -> Result<Term, String> {
        let mut acc = Term::unit();
        acc.coeff = sign;
        self.factor(&mut acc)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    self.factor(&mut acc)?;
                }
                // Implicit multiplication: `2x`, `3sin(x)`, `x(1-x)` …
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    self.factor(&mut acc)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Scalar, String> {
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(Scalar::one());
        }
        self.bump();
        let mut sign = Scalar::one();
        let parened = matches!(self.peek(), Some(Tok::LParen));
        if parened {
            self.bump();
        }
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            sign = -Scalar::one();
        }
        let v = match self.bump() {
            Some(Tok::Num(n)) => n,
            other => return Err(format!("expected numeric exponent, found {other:?}")),
        };
        if parened {
            self.expect(Tok::RParen)?;
        }
        Ok(&sign * &v)
    }

    fn factor(&mut self, acc: &mut Term) -> Result<(), String> {
        match self.bump() {
            Some(Tok::Num(n)) => {
                let e = self.exponent()?;
                if e == Scalar::one() {
                    acc.coeff = &acc.coeff * &n;
                } else if let Some(k) = e.to_exact_i64() {
                    acc.coeff = &acc.coeff * &n.pow_i(k as i32);
                } else {
                    return Err("non-integer exponent on a constant".into());
                }
                Ok(())
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => {
                    let e = self.exponent()?;
                    acc.lam = &acc.lam + &e;
                    Ok(())
                }
                "pi" => {
                    acc.coeff = &acc.coeff * &Scalar::pi();
                    Ok(())
                }
                "sqrt" => {
                    self.expect(Tok::LParen)?;
                    // Only `sqrt(1-x)` and `sqrt(x)` are supported.
                    match self.bump() {
                        Some(Tok::Num(n)) if n == Scalar::one() => {
                            self.expect(Tok::Minus)?;
                            match self.bump() {
                                Some(Tok::Ident(v)) if v == "x" => {}
                                other => {
                                    return Err(format!("unsupported sqrt body: {other:?}"))
                                }
                            }
                            self.expect(Tok::RParen)?;
                            acc.mu = &acc.mu + &Scalar::ratio(1, 2);
                            Ok(())
                        }
                        Some(Tok::Ident(v)) if v == "x" => {
                            self.expect(Tok::RParen)?;
                            acc.lam = &acc.lam + &Scalar::ratio(1, 2);
                            Ok(())
                        }
                        other => Err(format!("unsupported sqrt body: {other:?}")),
                    }
                }
                "exp" | "sin" | "cos" => {
                    self.expect(Tok::LParen)?;
                    let mut a = Scalar::one();
                    if let Some(Tok::Num(_)) = self.peek() {
                        if let Some(Tok::Num(n)) = self.bump() {
                            a = n;
                        }
                        if matches!(self.peek(), Some(Tok::Star)) {
                            self.bump();
                        }
                    }
                    match self.bump() {
                        Some(Tok::Ident(v)) if v == "x" => {}
                        other => return Err(format!("expected x inside {name}(..): {other:?}")),
                    }
                    self.expect(Tok::RParen)?;
                    let af = a.to_f64();
                    acc.trans.push(match name.as_str() {
                        "exp" => Trans::Exp(af),
                        "sin" => Trans::Sin(af),
                        _ => Trans::Cos(af),
                    });
                    Ok(())
                }
                other => Err(format!("unknown identifier '{other}'")),
            },
            Some(Tok::LParen) => {
                // Only the `(1 - x)` atom is accepted in parentheses.
                match self.bump() {
                    Some(Tok::Num(n)) if n == Scalar::one() => {}
                    other => return Err(format!("expected '(1-x)', found {other:?}")),
                }
                self.expect(Tok::Minus)?;
                match self.bump() {
                    Some(Tok::Ident(v)) if v == "x" => {}
                    other => return Err(format!("expected '(1-x)', found {other:?}")),
                }
                self.expect(Tok::RParen)?;
                let e = self.exponent()?;
                acc.mu = &acc.mu + &e;
                Ok(())
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parse an expression into an element.
pub fn parse_element(src: &str) -> Result<Element, String> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { toks, pos: 0 };
    let terms = p.expr()?;
    let parts: Vec<(Scalar, Element)> = terms.into_iter().map(Term::into_element).collect();
    Ok(Element::linear_combination(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pvariance::ProbSpace;

    #[test]
    fn exact_power_forms() {
        let sp = ProbSpace::uniform01();
        let e = parse_element("sqrt(1-x)").unwrap();
        assert_eq!(
            sp.expect_product(&e, &Element::one()).unwrap(),
            Scalar::ratio(2, 3)
        );
        let e = parse_element("x^0.5").unwrap();
        assert_eq!(
            sp.expect_product(&e, &e).unwrap(),
            Scalar::ratio(1, 2)
        );
        let e = parse_element("x^2 - 2x + 1").unwrap();
        assert_eq!(
            sp.expect_product(&e, &Element::one()).unwrap(),
            Scalar::ratio(1, 3)
        );
    }

    #[test]
    fn rational_and_decimal_literals() {
        assert_eq!(parse_scalar_arg("3/4").unwrap(), Scalar::ratio(3, 4));
        assert_eq!(parse_scalar_arg("-0.25").unwrap(), Scalar::ratio(-1, 4));
        assert!(parse_scalar_arg("1/0").is_err());
    }

    #[test]
    fn callables_evaluate() {
        let e = parse_element("2exp(3x) + sin(2x)").unwrap();
        let x = 0.37f64;
        let want = 2.0 * (3.0 * x).exp() + (2.0 * x).sin();
        assert!((e.eval_f64(x) - want).abs() < 1e-14);
    }

    #[test]
    fn malformed_rejected() {
        assert!(parse_element("x +").is_err());
        assert!(parse_element("log(x)").is_err());
        assert!(parse_element("(2-x)").is_err());
    }
}
