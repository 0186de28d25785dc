//! Sparse Laurent polynomials with integer coefficients, used for boundary
//! matrix entries.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::labeling::LaurentMonomial;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<LaurentMonomial, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(coeff: i64, mon: LaurentMonomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(coeff, mon);
        p
    }

    pub fn add_term(&mut self, coeff: i64, mon: LaurentMonomial) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(mon).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&LaurentMonomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(c, m.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(ca * cb, a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, k: i64) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms() {
            out.add_term(c * k, m.clone());
        }
        out
    }

    pub fn times_monomial(&self, mon: &LaurentMonomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, &c)| (m.mul(mon), c)).collect() }
    }

    /// Coefficient sign of the first term in monomial order; 0 for zero.
    pub fn leading_sign(&self) -> i64 {
        self.terms.values().next().map_or(0, |c| c.signum())
    }

    /// The same polynomial up to a global sign, normalized to a positive
    /// leading coefficient.
    pub fn up_to_sign(&self) -> Poly {
        if self.leading_sign() < 0 { self.scale(-1) } else { self.clone() }
    }

    /// Parse a sum of signed terms such as `"x3*y1 - x1*y3"` or `"-2*x1"`.
    pub fn parse(s: &str, n: usize) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Poly::zero();
        if s == "0" {
            return Ok(out);
        }
        let mut start = 0;
        let mut depth = 0;
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        for (k, &ch) in bytes.iter().enumerate() {
            match ch {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && k > start => {
                    pieces.push(&s[start..k]);
                    start = k;
                }
                _ => {}
            }
        }
        pieces.push(&s[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-1, &piece[1..]),
                Some(b'+') => (1, &piece[1..]),
                _ => (1, piece),
            };
            let (coeff, mono) = match body.split_once('*') {
                Some((c, rest)) if c.chars().all(|ch| ch.is_ascii_digit()) => (c.parse::<i64>().unwrap_or(1), rest),
                _ if body.chars().all(|ch| ch.is_ascii_digit()) && !body.is_empty() => {
                    (body.parse::<i64>().unwrap_or(1), "1")
                }
                _ => (1, body),
            };
            out.add_term(sign * coeff, LaurentMonomial::parse(mono, n)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let sep = if k > 0 { " " } else { "" };
            let body = if c.abs() == 1 { m.to_string() } else { format!("{}*{m}", c.abs()) };
            write!(f, "{sep}{sign}{}{body}", if k > 0 { " " } else { "" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str) -> LaurentMonomial {
        LaurentMonomial::parse(s, 4).unwrap()
    }

    #[test]
    fn cancellation() {
        let mut p = Poly::monomial(1, mono("x1*y3"));
        p.add_term(-1, mono("x3*y1"));
        assert_eq!(p.len(), 2);
        let q = p.add(&p.scale(-1));
        assert!(q.is_zero());
    }

    #[test]
    fn product_of_binomials() {
        let p = Poly::monomial(1, mono("x1")).add(&Poly::monomial(-1, mono("y1")));
        let q = p.mul(&p);
        assert_eq!(q.len(), 3);
        assert_eq!(q.to_string(), "y1^2 - 2*x1*y1 + x1^2");
        assert_eq!(Poly::parse(&q.to_string(), 4).unwrap(), q);
    }

    #[test]
    fn parse_signed_terms() {
        let p = Poly::parse("x4*y2*y3 - x2*x3*y4", 4).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(Poly::parse("-x3*y1", 4).unwrap().leading_sign(), -1);
        assert_eq!(Poly::parse("1", 4).unwrap(), Poly::monomial(1, LaurentMonomial::one(4)));
        assert!(Poly::parse("0", 4).unwrap().is_zero());
        assert_eq!(p.up_to_sign(), p.scale(-1).up_to_sign());
    }
}
