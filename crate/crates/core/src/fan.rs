//! Fans, their classification, the divisor class group and irrelevant ideals.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int_determinant, rank_and_kernel, rat, smith_normal_form, to_i64, IntMatrix, Lattice, Rat, RatMatrix};
use crate::error::{Error, Result};

/// Rays (rows of `B`) and maximal cones of a simplicial fan in `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub m: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanClassification {
    /// `None` when the rank is too large for the covering test.
    pub complete: Option<bool>,
    pub smooth: bool,
    pub unimodular: bool,
    pub simplicial: bool,
}

impl Fan {
    /// Checks the structural invariants: primitive distinct rays, cone
    /// indices in range, every ray used, independent cone generators.
    pub fn new(m: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let bad = |msg: String| Err(Error::InvalidFan(msg));
        if m == 0 {
            return bad("ambient rank must be positive".into());
        }
        if rays.is_empty() || max_cones.is_empty() {
            return bad("need at least one ray and one cone".into());
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != m {
                return bad(format!("ray {} has length {}, expected {m}", i + 1, r.len()));
            }
            let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g != 1 {
                return bad(format!("ray {} = {r:?} is not primitive", i + 1));
            }
        }
        for (i, j) in (0..rays.len()).tuple_combinations() {
            if rays[i] == rays[j] {
                return bad(format!("rays {} and {} coincide", i + 1, j + 1));
            }
        }
        let mut used = vec![false; rays.len()];
        for (c, cone) in max_cones.iter().enumerate() {
            if cone.is_empty() || cone.iter().any(|&i| i >= rays.len()) {
                return bad(format!("cone {} has an invalid ray index", c + 1));
            }
            if cone.iter().duplicates().next().is_some() {
                return bad(format!("cone {} repeats a ray", c + 1));
            }
            let sub = IntMatrix::from_i64_rows(&cone.iter().map(|&i| rays[i].clone()).collect_vec(), m);
            if rank_and_kernel(&sub.to_rat()).0 != cone.len() {
                return bad(format!("cone {} has linearly dependent generators", c + 1));
            }
            for &i in cone {
                used[i] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return bad(format!("ray {} lies in no maximal cone", i + 1));
        }
        Ok(Fan { m, rays, max_cones })
    }

    pub fn n(&self) -> usize {
        self.rays.len()
    }

    /// `B`: one row per ray.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64_rows(&self.rays, self.m)
    }

    pub fn classify(&self) -> FanClassification {
        let simplicial = self.max_cones.iter().all(|c| c.len() <= self.m);
        let smooth = self.max_cones.iter().all(|c| c.len() == self.m && self.cone_det(c).abs().is_one());
        FanClassification {
            complete: (self.m <= 3).then(|| self.is_complete()),
            smooth,
            unimodular: is_unimodular(&self.ray_matrix()),
            simplicial,
        }
    }

    fn cone_det(&self, cone: &[usize]) -> BigInt {
        let rows = cone.iter().map(|&i| self.rays[i].clone()).collect_vec();
        int_determinant(&IntMatrix::from_i64_rows(&rows, self.m))
    }

    // Every wall is shared by exactly two cones on opposite sides, and an
    // interior point of the first cone lies in no other cone.
    fn is_complete(&self) -> bool {
        let m = self.m;
        if self.max_cones.iter().any(|c| c.len() != m) {
            return false;
        }
        let mut walls: Vec<(Vec<usize>, usize, usize)> = Vec::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for skip in 0..m {
                let mut wall = cone.clone();
                let apex = wall.remove(skip);
                wall.sort_unstable();
                walls.push((wall, ci, apex));
            }
        }
        walls.sort();
        for group in walls.chunk_by(|a, b| a.0 == b.0) {
            if group.len() != 2 {
                return false;
            }
            let wall = &group[0].0;
            let rows = wall.iter().map(|&i| self.rays[i].clone()).collect_vec();
            let (_, kernel) = rank_and_kernel(&IntMatrix::from_i64_rows(&rows, m).to_rat());
            let normal = &kernel[0];
            let side = |apex: usize| -> Rat {
                self.rays[apex].iter().zip(normal).map(|(&r, n)| rat(r) * n).sum()
            };
            let (a, b) = (side(group[0].2), side(group[1].2));
            if a.is_zero() || b.is_zero() || a.is_positive() == b.is_positive() {
                return false;
            }
        }
        let interior: Vec<i64> =
            (0..m).map(|k| self.max_cones[0].iter().map(|&i| self.rays[i][k]).sum()).collect();
        let containing = self
            .max_cones
            .iter()
            .filter(|cone| {
                let rows = cone.iter().map(|&i| self.rays[i].clone()).collect_vec();
                let a = IntMatrix::from_i64_rows(&rows, m).transpose().to_rat();
                let b = interior.iter().map(|&x| rat(x)).collect_vec();
                crate::arith::solve_linear(&a, &b)
                    .is_some_and(|lam| lam.iter().all(|l| !l.is_negative()))
            })
            .count();
        containing == 1
    }
}

/// Independent columns and every maximal minor in `{0, 1, -1}`.
pub fn is_unimodular(b: &IntMatrix) -> bool {
    let m = b.cols();
    if rank_and_kernel(&b.to_rat()).0 != m {
        return false;
    }
    (0..b.rows()).combinations(m).all(|rows| int_determinant(&b.select_rows(&rows)).abs() <= BigInt::one())
}

/// The sequence `0 -> Z^m -B-> Z^n -pi-> Cl(X) -> 0` with a chosen basis of
/// the (free) class group.
#[derive(Clone, Debug)]
pub struct ExactSeq {
    pub b: IntMatrix,
    pub lattice: Lattice,
    pub cl_rank: usize,
    /// `cl_rank x n`; column `i` is the class of `D_i` in the chosen basis.
    pub pi: Vec<Vec<i64>>,
    /// Each basis class as an integer combination of the `D_i`.
    pub basis: Vec<Vec<i64>>,
    pub user_basis: bool,
}

impl ExactSeq {
    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn m(&self) -> usize {
        self.b.cols()
    }

    pub fn pi_of(&self, v: &[i64]) -> Vec<i64> {
        self.pi.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Builds `B`, `Cl(X)` and `pi`. With `basis = None` the basis is the
/// lexicographically first set of divisor classes `D_i` that is a
/// `Z`-basis.
pub fn fundamental_sequence(fan: &Fan, basis: Option<&[Vec<i64>]>) -> Result<ExactSeq> {
    let b = fan.ray_matrix();
    let (n, m) = (b.rows(), b.cols());
    let snf = smith_normal_form(&b);
    let diag = snf.diagonal();
    if snf.rank() < m {
        return Err(Error::DependentColumns);
    }
    if diag.iter().any(|d| !d.is_one()) {
        return Err(Error::Torsion(diag.iter().filter(|d| !d.is_one()).map(|d| d.to_string()).collect()));
    }
    let r = n - m;
    // rows m.. of U map Z^n onto Z^r with kernel im B
    let raw: Vec<Vec<BigInt>> = (m..n).map(|i| snf.u.row(i).to_vec()).collect();
    let raw = IntMatrix::from_rows(&raw, n);

    let (chosen, user) = match basis {
        Some(rows) => {
            if rows.len() != r || rows.iter().any(|c| c.len() != n) {
                return Err(Error::InvalidBasis(format!("expected {r} combinations of {n} divisors")));
            }
            (rows.to_vec(), true)
        }
        None => {
            let cols = (0..n)
                .combinations(r)
                .find(|cols| {
                    let sub = IntMatrix::from_rows(
                        &(0..r).map(|i| cols.iter().map(|&c| raw[(i, c)].clone()).collect()).collect_vec(),
                        r,
                    );
                    int_determinant(&sub).abs().is_one()
                })
                .ok_or_else(|| Error::InvalidBasis("no divisor subset generates the class group".into()))?;
            let rows = cols
                .iter()
                .map(|&c| (0..n).map(|i| i64::from(i == c)).collect())
                .collect();
            (rows, false)
        }
    };
    // C[:, k] = raw * chosen[k]; pi = C^{-1} raw
    let c = raw.mul(&IntMatrix::from_i64_rows(&chosen, n).transpose());
    if !int_determinant(&c).abs().is_one() {
        return Err(Error::InvalidBasis("the given classes do not form a basis of Cl(X)".into()));
    }
    let inv = integer_inverse(&c);
    let pi_big = inv.mul(&raw);
    let pi = pi_big.to_rows().iter().map(|row| row.iter().map(to_i64).collect()).collect();
    Ok(ExactSeq { lattice: Lattice::from_columns(&b), b, cl_rank: r, pi, basis: chosen, user_basis: user })
}

fn integer_inverse(c: &IntMatrix) -> IntMatrix {
    let k = c.rows();
    let mut aug = RatMatrix::zeros(k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            aug[(i, j)] = Rat::from_integer(c[(i, j)].clone());
        }
        aug[(i, k + i)] = rat(1);
    }
    let (red, _) = crate::arith::rref(&aug);
    let mut out = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let x = &red[(i, k + j)];
            debug_assert!(x.is_integer());
            out[(i, j)] = x.to_integer();
        }
    }
    out
}

/// Irrelevant ideal of `X`, one squarefree generator `x^{sigma hat}` per
/// maximal cone, recorded by support. The ideal of `X x X` uses the same
/// supports in the `x` and `y` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrelevantIdeal {
    pub n: usize,
    pub generators: Vec<Vec<usize>>,
}

impl IrrelevantIdeal {
    pub fn from_cones(n: usize, cones: &[Vec<usize>]) -> Self {
        let generators = cones.iter().map(|c| (0..n).filter(|i| !c.contains(i)).collect()).collect();
        IrrelevantIdeal { n, generators }
    }

    pub fn x_generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn y_generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Supports of the monomial primes in the decomposition: the minimal
    /// transversals of the generator supports, in lexicographic order.
    pub fn prime_components(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = Vec::new();
        for size in 1..=self.n {
            for cand in (0..self.n).combinations(size) {
                let hits = self.generators.iter().all(|g| g.iter().any(|i| cand.contains(i)));
                let minimal = !found.iter().any(|f| f.iter().all(|i| cand.contains(i)));
                if hits && minimal {
                    found.push(cand);
                }
            }
        }
        found.sort();
        found
    }

    pub fn generator_strings(&self, var: char) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| if g.is_empty() { "1".to_string() } else { g.iter().map(|i| format!("{var}{}", i + 1)).join("*") })
            .collect()
    }

    /// Intersection form, e.g. `<x1,x3> ∩ <x2,x4>`; with `product` the `y`
    /// copy is appended for `X x X`.
    pub fn intersection_form(&self, product: bool) -> String {
        let comps = self.prime_components();
        let render = |var: char| {
            comps
                .iter()
                .map(|c| {
                    let inner = c.iter().map(|i| format!("{var}{}", i + 1)).join(",");
                    if c.len() == 1 { format!("({inner})") } else { format!("<{inner}>") }
                })
                .collect_vec()
        };
        let mut parts = render('x');
        if product {
            parts.extend(render('y'));
        }
        parts.join(" ∩ ")
    }
}

impl fmt::Display for IrrelevantIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.generator_strings('x').join(", "))
    }
}

pub fn irrelevant_ideal(fan: &Fan) -> IrrelevantIdeal {
    IrrelevantIdeal::from_cones(fan.n(), &fan.max_cones)
}

/// Maximal cones of a fan on a subset of the rays, for another chamber of
/// the effective cone. Removed rays lie in no cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub removed: Vec<usize>,
    pub cones: Vec<Vec<usize>>,
    pub ideal: IrrelevantIdeal,
}

/// Rebuild the complete fan on the remaining rays (rank 2 only: cones
/// between angularly consecutive rays) and its irrelevant ideal.
pub fn alternate_chamber(fan: &Fan, removed: &[usize]) -> Result<Chamber> {
    let mut removed = removed.to_vec();
    removed.sort_unstable();
    removed.dedup();
    if let Some(&i) = removed.iter().find(|&&i| i >= fan.n()) {
        return Err(Error::InvalidRemoval(format!("ray index {} out of range", i + 1)));
    }
    if removed.is_empty() {
        return Ok(Chamber { removed, cones: fan.max_cones.clone(), ideal: irrelevant_ideal(fan) });
    }
    if fan.m != 2 {
        return Err(Error::InvalidRemoval(format!("cannot rebuild a rank {} fan after removing rays", fan.m)));
    }
    let mut kept: Vec<usize> = (0..fan.n()).filter(|i| !removed.contains(i)).collect();
    if kept.len() < 3 {
        return Err(Error::InvalidRemoval("fewer than three rays remain".into()));
    }
    kept.sort_by(|&a, &b| angular_cmp(&fan.rays[a], &fan.rays[b]));
    let mut cones = Vec::new();
    for (k, &a) in kept.iter().enumerate() {
        let b = kept[(k + 1) % kept.len()];
        let (u, v) = (&fan.rays[a], &fan.rays[b]);
        if u[0] * v[1] - u[1] * v[0] <= 0 {
            return Err(Error::InvalidRemoval(format!(
                "rays {} and {} span an angle of at least pi; the remaining fan is not complete",
                a + 1,
                b + 1
            )));
        }
        let mut cone = vec![a, b];
        cone.sort_unstable();
        cones.push(cone);
    }
    cones.sort();
    let ideal = IrrelevantIdeal::from_cones(fan.n(), &cones);
    Ok(Chamber { removed, cones, ideal })
}

// counterclockwise from the positive first axis
fn angular_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let half = |v: &[i64]| u8::from(!(v[1] > 0 || (v[1] == 0 && v[0] > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}
