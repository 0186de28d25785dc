//! Laurent monomial labels in the variables `x1..xn, y1..yn` and their
//! class group degrees.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{floor_rat, to_i64, Lattice, Rat};
use crate::error::{Error, Result};
use crate::fan::ExactSeq;

/// `x^x * y^y` with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentMonomial {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

/// Degree in `Cl(X x X) = Cl(X)^2`, in the chosen basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClDegree {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

impl ClDegree {
    pub fn add(&self, other: &ClDegree) -> ClDegree {
        ClDegree { x: add(&self.x, &other.x), y: add(&self.y, &other.y) }
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(p, q)| p + q).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(p, q)| p - q).collect()
}

impl LaurentMonomial {
    pub fn one(n: usize) -> Self {
        LaurentMonomial { x: vec![0; n], y: vec![0; n] }
    }

    pub fn new(x: Vec<i64>, y: Vec<i64>) -> Self {
        assert_eq!(x.len(), y.len());
        LaurentMonomial { x, y }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_one(&self) -> bool {
        self.x.iter().chain(&self.y).all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentMonomial { x: add(&self.x, &other.x), y: add(&self.y, &other.y) }
    }

    pub fn div(&self, other: &Self) -> Self {
        LaurentMonomial { x: sub(&self.x, &other.x), y: sub(&self.y, &other.y) }
    }

    pub fn pow(&self, k: i64) -> Self {
        LaurentMonomial { x: self.x.iter().map(|e| e * k).collect(), y: self.y.iter().map(|e| e * k).collect() }
    }

    /// Componentwise max (the Laurent lcm).
    pub fn join(&self, other: &Self) -> Self {
        let mx = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| *p.max(q)).collect();
        LaurentMonomial { x: mx(&self.x, &other.x), y: mx(&self.y, &other.y) }
    }

    /// Componentwise min (the Laurent gcd).
    pub fn meet(&self, other: &Self) -> Self {
        let mn = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| *p.min(q)).collect();
        LaurentMonomial { x: mn(&self.x, &other.x), y: mn(&self.y, &other.y) }
    }

    /// All exponents nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.x.iter().chain(&self.y).all(|&e| e >= 0)
    }

    /// `self <= other` in all `2n` exponents.
    pub fn divides(&self, other: &Self) -> bool {
        self.x.iter().zip(&other.x).chain(self.y.iter().zip(&other.y)).all(|(a, b)| a <= b)
    }

    /// Multiply by `x^v / y^v`.
    pub fn shifted(&self, v: &[i64]) -> Self {
        LaurentMonomial { x: add(&self.x, v), y: sub(&self.y, v) }
    }

    pub fn degree(&self, seq: &ExactSeq) -> ClDegree {
        ClDegree { x: seq.pi_of(&self.x), y: seq.pi_of(&self.y) }
    }

    /// Total exponent vector `(x, y)` as one slice of length `2n`.
    pub fn exponents(&self) -> Vec<i64> {
        self.x.iter().chain(&self.y).copied().collect()
    }

    pub fn from_exponents(e: &[i64]) -> Self {
        let n = e.len() / 2;
        LaurentMonomial { x: e[..n].to_vec(), y: e[n..].to_vec() }
    }

    /// Parse `"x1*x2^2*y4/(x4*y1)"`, `"y2/x2"` or `"1"`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let err = |detail: String| Error::Parse { what: "monomial", detail };
        let mut out = Self::one(n);
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.to_string(), b.trim_start_matches('(').trim_end_matches(')').to_string()),
            None => (s.clone(), String::new()),
        };
        for (part, sign) in [(num, 1), (den, -1)] {
            for factor in part.split('*').filter(|f| !f.is_empty() && *f != "1") {
                let (var, exp) = match factor.split_once('^') {
                    Some((v, e)) => (v, e.parse::<i64>().map_err(|e| err(format!("{factor}: {e}")))?),
                    None => (factor, 1),
                };
                let (kind, idx) = var.split_at(1);
                let idx: usize = idx.parse().map_err(|_| err(format!("bad variable {var}")))?;
                if idx == 0 || idx > n {
                    return Err(err(format!("variable {var} out of range 1..={n}")));
                }
                match kind {
                    "x" => out.x[idx - 1] += sign * exp,
                    "y" => out.y[idx - 1] += sign * exp,
                    _ => return Err(err(format!("bad variable {var}"))),
                }
            }
        }
        Ok(out)
    }

    fn factors(&self, positive: bool) -> Vec<String> {
        let mut out = Vec::new();
        for (name, exps) in [('x', &self.x), ('y', &self.y)] {
            for (i, &e) in exps.iter().enumerate() {
                let e = if positive { e } else { -e };
                match e {
                    1 => out.push(format!("{name}{}", i + 1)),
                    e if e > 1 => out.push(format!("{name}{}^{e}", i + 1)),
                    _ => {}
                }
            }
        }
        out
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.factors(true);
        let den = self.factors(false);
        if num.is_empty() {
            write!(f, "1")?;
        } else {
            write!(f, "{}", num.join("*"))?;
        }
        match den.len() {
            0 => Ok(()),
            1 => write!(f, "/{}", den[0]),
            _ => write!(f, "/({})", den.join("*")),
        }
    }
}

/// `x^{floor p} / y^{floor p}`.
pub fn vertex_label(p: &[Rat]) -> LaurentMonomial {
    let f: Vec<i64> = p.iter().map(|x| to_i64(&floor_rat(x))).collect();
    LaurentMonomial { y: f.iter().map(|e| -e).collect(), x: f }
}

/// Laurent lcm of a nonempty set of labels.
pub fn face_label(labels: &[LaurentMonomial]) -> LaurentMonomial {
    let (first, rest) = labels.split_first().expect("face label of an empty vertex set");
    rest.iter().fold(first.clone(), |acc, l| acc.join(l))
}

pub fn degree_of(mon: &LaurentMonomial, seq: &ExactSeq) -> ClDegree {
    mon.degree(seq)
}

/// Translate by `v` in `L`; errors when `v` is not in the lattice.
pub fn translate_label(mon: &LaurentMonomial, v: &[i64], lattice: &Lattice) -> Result<LaurentMonomial> {
    if !lattice.contains(v) {
        return Err(Error::Parse { what: "lattice vector", detail: format!("{v:?} is not in the image of B") });
    }
    Ok(mon.shifted(v))
}

/// Canonical `L`-translate of a label: the `x` exponents are reduced to the
/// Hermite representative. Returns the translate and the `w` with
/// `mon = canonical * x^{Bw}/y^{Bw}`.
pub fn canonical_translate(mon: &LaurentMonomial, lattice: &Lattice) -> (LaurentMonomial, Vec<i64>) {
    let (_, w) = lattice.reduce(&mon.x);
    let bw = lattice.apply(&w);
    (mon.shifted(&bw.iter().map(|e| -e).collect::<Vec<_>>()), w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};
    use crate::fan::{fundamental_sequence, Fan};

    #[test]
    fn extra_vertex_label() {
        let p = vec![rat_frac(1, 2), rat(1), rat_frac(1, 2), rat(0), rat_frac(-1, 2)];
        let l = vertex_label(&p);
        assert_eq!(l.x, vec![0, 1, 0, 0, -1]);
        assert_eq!(l.to_string(), "x2*y5/(x5*y2)");
        assert!(vertex_label(&[rat(0), rat(0)]).is_one());
    }

    #[test]
    fn lattice_point_label() {
        let l = vertex_label(&[rat(1), rat(1), rat(0), rat(-1)]);
        assert_eq!(l.to_string(), "x1*x2*y4/(x4*y1*y2)");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["1", "y2/x2", "x1*x2*y4/(x4*y1*y2)", "x1*x2^2*x3*y5/(x5*y2)", "x1^3"] {
            assert_eq!(LaurentMonomial::parse(s, 5).unwrap().to_string(), s);
        }
        assert!(LaurentMonomial::parse("z1", 5).is_err());
        assert!(LaurentMonomial::parse("x6", 5).is_err());
    }

    #[test]
    fn face_label_is_the_join() {
        let a = LaurentMonomial::parse("x1*y3", 4).unwrap();
        let b = LaurentMonomial::parse("x2*x3*y4", 4).unwrap();
        assert_eq!(face_label(std::slice::from_ref(&a)), a);
        assert_eq!(face_label(&[a, b]).to_string(), "x1*x2*x3*y3*y4");
    }

    #[test]
    fn degrees_in_user_bases() {
        let fan = Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
            .unwrap();
        let seq = fundamental_sequence(&fan, Some(&[vec![0, 1, 0, 0], vec![0, 0, 1, 0]])).unwrap();
        let d = LaurentMonomial::parse("x1*x2*y3*y4", 4).unwrap().degree(&seq);
        assert_eq!(d, ClDegree { x: vec![1, 1], y: vec![1, 2] });

        let fan = Fan::new(
            2,
            vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 1], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
        )
        .unwrap();
        let seq = fundamental_sequence(&fan, None).unwrap();
        let d = LaurentMonomial::parse("x2*x3*x4*y5", 5).unwrap().degree(&seq);
        assert_eq!(d, ClDegree { x: vec![1, 2, 1], y: vec![1, 2, 1] });
    }

    #[test]
    fn translation_and_canonical_form() {
        let fan = Fan::new(2, vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
            .unwrap();
        let seq = fundamental_sequence(&fan, None).unwrap();
        let one = LaurentMonomial::one(4);
        let t = translate_label(&one, &[1, 1, 0, -1], &seq.lattice).unwrap();
        assert_eq!(t.to_string(), "x1*x2*y4/(x4*y1*y2)");
        assert!(translate_label(&one, &[1, 0, 0, 0], &seq.lattice).is_err());
        let (c, w) = canonical_translate(&t, &seq.lattice);
        assert!(c.is_one());
        assert_eq!(seq.lattice.apply(&w), vec![1, 1, 0, -1]);
    }
}
