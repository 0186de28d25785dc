use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::rat::{ceil_rat, floor_rat, rat, to_i64, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// `coeffs . x  rel  rhs`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rel: Relation, rhs: Rat) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn lt(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Self::new(coeffs, Relation::Lt, rhs)
    }

    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    /// `coeffs . x >= rhs`
    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Self::le(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    /// `coeffs . x > rhs`
    pub fn gt(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Self::lt(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn is_satisfied(&self, x: &[Rat]) -> bool {
        let lhs: Rat = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Lt => lhs < self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FmError {
    #[error("variable {0} is unbounded, cannot enumerate integer points")]
    Unbounded(usize),
    #[error("more than {0} integer points")]
    TooMany(usize),
}

// Inequality `coeffs . x < rhs` (strict) or `<= rhs`, scaled so the
// coefficient of highest nonzero index has absolute value one.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Ineq {
    coeffs: Vec<Rat>,
    strict: bool,
    rhs: Rat,
}

/// Fourier-Motzkin elimination of variables from last to first.
///
/// `stages[k]` constrains variables `0..=k` only, and describes exactly the
/// projection of the feasible set onto those coordinates.
#[derive(Clone, Debug)]
pub struct FourierMotzkin {
    dim: usize,
    stages: Vec<Vec<Ineq>>,
    feasible: bool,
}

/// A bound value and whether it is strict.
pub type Bound = Option<(Rat, bool)>;

impl FourierMotzkin {
    pub fn new(constraints: &[Constraint], dim: usize) -> Self {
        let mut current = Vec::new();
        for c in constraints {
            assert_eq!(c.coeffs.len(), dim, "constraint has wrong dimension");
            match c.rel {
                Relation::Le | Relation::Lt => current.push(Ineq {
                    coeffs: c.coeffs.clone(),
                    strict: c.rel == Relation::Lt,
                    rhs: c.rhs.clone(),
                }),
                Relation::Eq => {
                    current.push(Ineq { coeffs: c.coeffs.clone(), strict: false, rhs: c.rhs.clone() });
                    current.push(Ineq {
                        coeffs: c.coeffs.iter().map(|x| -x).collect(),
                        strict: false,
                        rhs: -c.rhs.clone(),
                    });
                }
            }
        }
        let mut feasible = true;
        let mut stages = vec![Vec::new(); dim];
        for k in (0..dim).rev() {
            let (ok, kept) = normalize(current);
            if !ok {
                feasible = false;
                current = Vec::new();
                break;
            }
            let (with_k, without): (Vec<Ineq>, Vec<Ineq>) =
                kept.into_iter().partition(|q| !q.coeffs[k].is_zero());
            let (upper, lower): (Vec<&Ineq>, Vec<&Ineq>) =
                with_k.iter().partition(|q| q.coeffs[k].is_positive());
            let mut next = without.clone();
            for u in &upper {
                for l in &lower {
                    let su = u.coeffs[k].clone();
                    let sl = -l.coeffs[k].clone();
                    let coeffs =
                        u.coeffs.iter().zip(&l.coeffs).map(|(a, b)| a / &su + b / &sl).collect();
                    next.push(Ineq {
                        coeffs,
                        strict: u.strict || l.strict,
                        rhs: &u.rhs / &su + &l.rhs / &sl,
                    });
                }
            }
            let mut stage = with_k;
            stage.extend(without);
            stages[k] = stage;
            current = next;
        }
        if feasible {
            feasible = normalize(current).0;
        }
        FourierMotzkin { dim, stages, feasible }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible
    }

    /// Bounds on variable `k` given values for `0..k`: `(lower, upper)`, each
    /// with a flag that is true for a strict bound. `None` if unbounded on
    /// that side.
    pub fn bounds(&self, k: usize, prefix: &[Rat]) -> (Bound, Bound) {
        assert_eq!(prefix.len(), k);
        let mut lower: Option<(Rat, bool)> = None;
        let mut upper: Option<(Rat, bool)> = None;
        for q in &self.stages[k] {
            let a = &q.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let rest: Rat = q.coeffs[..k].iter().zip(prefix).map(|(c, x)| c * x).sum();
            let bound = (&q.rhs - rest) / a;
            if a.is_positive() {
                let tighter = match &upper {
                    None => true,
                    Some((b, s)) => bound < *b || (bound == *b && q.strict && !s),
                };
                if tighter {
                    upper = Some((bound, q.strict));
                }
            } else {
                let tighter = match &lower {
                    None => true,
                    Some((b, s)) => bound > *b || (bound == *b && q.strict && !s),
                };
                if tighter {
                    lower = Some((bound, q.strict));
                }
            }
        }
        (lower, upper)
    }

    /// A feasible point, built coordinate by coordinate from interval
    /// midpoints.
    pub fn sample(&self) -> Option<Vec<Rat>> {
        if !self.feasible {
            return None;
        }
        let mut x = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let v = match self.bounds(k, &x) {
                (Some((lo, _)), Some((hi, _))) => (lo + hi) / rat(2),
                (Some((lo, _)), None) => lo + Rat::one(),
                (None, Some((hi, _))) => hi - Rat::one(),
                (None, None) => Rat::zero(),
            };
            x.push(v);
        }
        Some(x)
    }

    /// Every integer point of a bounded feasible set, in lexicographic order.
    pub fn integer_points(&self, limit: usize) -> Result<Vec<Vec<i64>>, FmError> {
        let mut out = Vec::new();
        if self.feasible {
            let mut prefix = Vec::with_capacity(self.dim);
            self.descend(&mut prefix, &mut out, limit)?;
        }
        Ok(out)
    }

    fn descend(&self, prefix: &mut Vec<Rat>, out: &mut Vec<Vec<i64>>, limit: usize) -> Result<(), FmError> {
        let k = prefix.len();
        if k == self.dim {
            if out.len() >= limit {
                return Err(FmError::TooMany(limit));
            }
            out.push(prefix.iter().map(|x| to_i64(x.numer())).collect());
            return Ok(());
        }
        let (Some((lo, ls)), Some((hi, hs))) = self.bounds(k, prefix) else {
            return Err(FmError::Unbounded(k));
        };
        let mut start = ceil_rat(&lo);
        if ls && Rat::from_integer(start.clone()) == lo {
            start += 1;
        }
        let mut end = floor_rat(&hi);
        if hs && Rat::from_integer(end.clone()) == hi {
            end -= 1;
        }
        let mut v = start;
        while v <= end {
            prefix.push(Rat::from_integer(v.clone()));
            self.descend(prefix, out, limit)?;
            prefix.pop();
            v += 1;
        }
        Ok(())
    }
}

// Scale, drop constant rows (reporting a violated one), and keep only the
// tightest inequality per direction.
fn normalize(rows: Vec<Ineq>) -> (bool, Vec<Ineq>) {
    let mut best: BTreeMap<Vec<Rat>, (Rat, bool)> = BTreeMap::new();
    let mut order: Vec<Vec<Rat>> = Vec::new();
    for q in rows {
        let Some(lead) = q.coeffs.iter().rev().find(|c| !c.is_zero()).map(|c| c.abs()) else {
            let ok = if q.strict { q.rhs.is_positive() } else { !q.rhs.is_negative() };
            if !ok {
                return (false, Vec::new());
            }
            continue;
        };
        let coeffs: Vec<Rat> = q.coeffs.iter().map(|c| c / &lead).collect();
        let rhs = &q.rhs / &lead;
        match best.get_mut(&coeffs) {
            Some((r, s)) => {
                if rhs < *r {
                    *r = rhs;
                    *s = q.strict;
                } else if rhs == *r && q.strict {
                    *s = true;
                }
            }
            None => {
                order.push(coeffs.clone());
                best.insert(coeffs, (rhs, q.strict));
            }
        }
    }
    // opposite pairs a.x <= r, -a.x <= s need -s <= r
    for c in &order {
        let neg: Vec<Rat> = c.iter().map(|x| -x).collect();
        if let (Some((r, s1)), Some((s, s2))) = (best.get(c), best.get(&neg)) {
            let gap = r + s;
            if gap.is_negative() || (gap.is_zero() && (*s1 || *s2)) {
                return (false, Vec::new());
            }
        }
    }
    let kept = order
        .into_iter()
        .map(|c| {
            let (rhs, strict) = best[&c].clone();
            Ineq { coeffs: c, strict, rhs }
        })
        .collect();
    (true, kept)
}

/// Some point satisfying all constraints, or `None` if there is none.
pub fn feasible_point(constraints: &[Constraint], dim: usize) -> Option<Vec<Rat>> {
    FourierMotzkin::new(constraints, dim).sample()
}

/// All integer points of a bounded system, capped at `limit`.
pub fn integer_points(constraints: &[Constraint], dim: usize, limit: usize) -> Result<Vec<Vec<i64>>, FmError> {
    FourierMotzkin::new(constraints, dim).integer_points(limit)
}
