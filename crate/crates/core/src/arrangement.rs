//! Cells of the periodic arrangement `{p_i in Z}` on the affine space
//! `p = Bz + a`, modulo translations `z -> z + Z^m`.
//!
//! Vertices are found in the unit cube `[0,1)^m`. Every other cell touches a
//! vertex, so the cells are recovered from the sign patterns that are
//! realizable in a small neighbourhood of each vertex. Each cell is stored
//! once, as the canonical representative of its signature modulo `L`.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    ceil_rat, determinant, floor_rat, parse_rat, rank_and_kernel, rat, solve_linear, to_i64, Constraint, FourierMotzkin,
    Lattice, Rat, RatMatrix,
};
use crate::error::{Error, Result};
use crate::fan::ExactSeq;

/// Position of one ambient coordinate `p_i`: on the hyperplane `p_i = j`
/// or strictly between `j` and `j + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coord {
    At(i64),
    Between(i64),
}

impl Coord {
    pub fn index(self) -> i64 {
        match self {
            Coord::At(j) | Coord::Between(j) => j,
        }
    }

    pub fn is_at(self) -> bool {
        matches!(self, Coord::At(_))
    }

    fn with_index(self, j: i64) -> Coord {
        match self {
            Coord::At(_) => Coord::At(j),
            Coord::Between(_) => Coord::Between(j),
        }
    }

    pub fn contains(self, x: &Rat) -> bool {
        match self {
            Coord::At(j) => *x == rat(j),
            Coord::Between(j) => *x > rat(j) && *x < rat(j + 1),
        }
    }
}

pub type Signature = Vec<Coord>;

pub fn signature_of_point(p: &[Rat]) -> Signature {
    p.iter()
        .map(|x| {
            let f = to_i64(&floor_rat(x));
            if x.is_integer() {
                Coord::At(f)
            } else {
                Coord::Between(f)
            }
        })
        .collect()
}

/// Canonical representative of `sig + L` and the `w` with
/// `sig = canonical + Bw`.
pub fn canonical_signature(sig: &[Coord], lattice: &Lattice) -> (Signature, Vec<i64>) {
    let idx: Vec<i64> = sig.iter().map(|c| c.index()).collect();
    let (red, w) = lattice.reduce(&idx);
    (sig.iter().zip(red).map(|(c, j)| c.with_index(j)).collect(), w)
}

pub fn shift_signature(sig: &[Coord], bw: &[i64]) -> Signature {
    sig.iter().zip(bw).map(|(c, d)| c.with_index(c.index() + d)).collect()
}

/// The shift vector `a` of the deformed arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Deformation {
    pub a: Vec<Rat>,
}

impl Deformation {
    pub fn zero(n: usize) -> Self {
        Deformation { a: vec![Rat::zero(); n] }
    }

    pub fn new(a: Vec<Rat>) -> Self {
        Deformation { a }
    }

    /// Parse rational strings such as `["1/10", "0", "0", "1/10"]`.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let a = items
            .iter()
            .map(|s| {
                parse_rat(s.as_ref())
                    .ok_or_else(|| Error::Parse { what: "rational", detail: s.as_ref().to_string() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Deformation { a })
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }
}

/// A vertex of a cell's closure: vertex class `class` translated by `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRef {
    pub class: usize,
    pub shift: Vec<i64>,
    pub z: Vec<Rat>,
    pub p: Vec<Rat>,
}

/// A codimension-one face: class `cell` translated by `shift`, with the
/// incidence sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub cell: usize,
    pub shift: Vec<i64>,
    pub sign: i32,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub dim: usize,
    pub signature: Signature,
    /// Centroid of the closure vertices, in `z` coordinates.
    pub sample: Vec<Rat>,
    pub vertices: Vec<VertexRef>,
    pub facets: Vec<Facet>,
    /// Orientation: an ordered basis of the cell's direction space.
    pub basis: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub m: usize,
    pub n: usize,
    pub b: Vec<Vec<i64>>,
    pub a: Vec<Rat>,
    pub lattice: Lattice,
    /// Sorted by `(dim, signature)`.
    pub cells: Vec<Cell>,
    offsets: Vec<usize>,
}

impl QuotientComplex {
    pub fn cells_of_dim(&self, d: usize) -> Range<usize> {
        if d > self.m {
            return 0..0;
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.m).map(|d| self.cells_of_dim(d).len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn ambient(&self, z: &[Rat]) -> Vec<Rat> {
        ambient(&self.b, &self.a, z)
    }

    /// Index of the cell with this canonical signature.
    pub fn find(&self, sig: &[Coord]) -> Option<usize> {
        let dim = self.m - at_rank(&self.b, sig);
        let r = self.cells_of_dim(dim);
        self.cells[r.clone()].binary_search_by(|c| c.signature.as_slice().cmp(sig)).ok().map(|k| r.start + k)
    }

    /// Vertex classes whose ambient coordinates are all integers.
    pub fn integral_vertices(&self) -> usize {
        self.cells_of_dim(0)
            .filter(|&v| self.cells[v].signature.iter().all(|c| c.is_at()))
            .count()
    }
}

fn ambient(b: &[Vec<i64>], a: &[Rat], z: &[Rat]) -> Vec<Rat> {
    b.iter()
        .zip(a)
        .map(|(row, ai)| row.iter().zip(z).map(|(&bij, zj)| rat(bij) * zj).sum::<Rat>() + ai)
        .collect()
}

fn rows_matrix(b: &[Vec<i64>], rows: &[usize], m: usize) -> RatMatrix {
    let data = rows.iter().flat_map(|&i| b[i].iter().map(|&x| rat(x))).collect();
    RatMatrix::new(rows.len(), m, data)
}

fn at_rows(sig: &[Coord]) -> Vec<usize> {
    sig.iter().positions(|c| c.is_at()).collect()
}

fn at_rank(b: &[Vec<i64>], sig: &[Coord]) -> usize {
    let m = b[0].len();
    rank_and_kernel(&rows_matrix(b, &at_rows(sig), m)).0
}

fn orientation_basis(b: &[Vec<i64>], sig: &[Coord], m: usize) -> Vec<Vec<Rat>> {
    rank_and_kernel(&rows_matrix(b, &at_rows(sig), m)).1
}

/// Solve the vertex with the given signature; errors if its hyperplanes do
/// not pin down a point.
pub fn vertex_ambient_coords(seq: &ExactSeq, eps: &Deformation, v: &[Coord]) -> Result<Vec<Rat>> {
    let b = int_rows(seq);
    let m = seq.m();
    let rows = at_rows(v);
    let mat = rows_matrix(&b, &rows, m);
    if rank_and_kernel(&mat).0 != m {
        return Err(Error::Degenerate(format!("signature {v:?} is not a vertex")));
    }
    let rhs: Vec<Rat> = rows.iter().map(|&i| rat(v[i].index()) - &eps.a[i]).collect();
    let z = solve_linear(&mat, &rhs).ok_or_else(|| Error::Degenerate(format!("signature {v:?} is inconsistent")))?;
    Ok(ambient(&b, &eps.a, &z))
}

fn int_rows(seq: &ExactSeq) -> Vec<Vec<i64>> {
    seq.b.to_rows().iter().map(|r| r.iter().map(to_i64).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalityViolation {
    pub vertex: usize,
    /// Ambient coordinates whose hyperplanes pass through the vertex.
    pub hyperplanes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalityReport {
    pub transversal: bool,
    pub violations: Vec<TransversalityViolation>,
}

/// A vertex is transversal when exactly `m` coordinate hyperplanes meet it.
pub fn transversality_report(qc: &QuotientComplex) -> TransversalityReport {
    let violations: Vec<_> = qc
        .cells_of_dim(0)
        .filter_map(|v| {
            let hyperplanes = at_rows(&qc.cells[v].signature);
            (hyperplanes.len() != qc.m).then_some(TransversalityViolation { vertex: v, hyperplanes })
        })
        .collect();
    TransversalityReport { transversal: violations.is_empty(), violations }
}

struct Found {
    // closure vertices in the canonical representative's coordinates
    vertices: BTreeMap<Vec<Rat>, (usize, Vec<i64>)>,
}

/// Enumerate the quotient cell complex. Deterministic and single-threaded.
pub fn enumerate_cells(seq: &ExactSeq, eps: &Deformation) -> Result<QuotientComplex> {
    let (n, m) = (seq.n(), seq.m());
    if eps.a.len() != n {
        return Err(Error::DeformationLength { got: eps.a.len(), expected: n });
    }
    if !(1..=3).contains(&m) {
        return Err(Error::UnsupportedRank(m));
    }
    let b = int_rows(seq);
    let a = &eps.a;
    let lattice = &seq.lattice;

    // vertex classes, one representative z in [0,1)^m each
    let mut vertex_reps: BTreeMap<Signature, Vec<Rat>> = BTreeMap::new();
    for rows in (0..n).combinations(m) {
        let mat = rows_matrix(&b, &rows, m);
        if determinant(&mat).is_zero() {
            continue;
        }
        let ranges: Vec<Vec<i64>> = rows
            .iter()
            .map(|&i| {
                let lo: i64 = b[i].iter().map(|&x| x.min(0)).sum();
                let hi: i64 = b[i].iter().map(|&x| x.max(0)).sum();
                let lo = to_i64(&ceil_rat(&(rat(lo) + &a[i])));
                let hi = to_i64(&floor_rat(&(rat(hi) + &a[i])));
                (lo..=hi).collect()
            })
            .collect();
        for js in ranges.iter().multi_cartesian_product() {
            let rhs: Vec<Rat> = rows.iter().zip(&js).map(|(&i, &&j)| rat(j) - &a[i]).collect();
            let z = solve_linear(&mat, &rhs).expect("invertible system");
            if z.iter().all(|x| !x.is_negative() && *x < Rat::one()) {
                let p = ambient(&b, a, &z);
                vertex_reps.entry(signature_of_point(&p)).or_insert(z);
            }
        }
    }
    if vertex_reps.is_empty() {
        return Err(Error::Degenerate("no vertices found".into()));
    }

    let mut vertex_classes: Vec<(Signature, Vec<Rat>)> = Vec::new();
    for (sig, z) in &vertex_reps {
        let (canon, w) = canonical_signature(sig, lattice);
        let zc: Vec<Rat> = z.iter().zip(&w).map(|(x, &wk)| x - rat(wk)).collect();
        vertex_classes.push((canon, zc));
    }
    vertex_classes.sort();
    vertex_classes.dedup_by(|x, y| x.0 == y.0);

    // cells touching each vertex, from realizable local sign patterns
    let mut found: BTreeMap<Signature, Found> = BTreeMap::new();
    for (vi, (vsig, vz)) in vertex_classes.iter().enumerate() {
        let active = at_rows(vsig);
        for pattern in (0..active.len()).map(|_| 0..3u8).multi_cartesian_product() {
            let constraints: Vec<Constraint> = active
                .iter()
                .zip(&pattern)
                .map(|(&i, &s)| {
                    let row: Vec<Rat> = b[i].iter().map(|&x| rat(x)).collect();
                    match s {
                        0 => Constraint::eq(row, Rat::zero()),
                        1 => Constraint::gt(row, Rat::zero()),
                        _ => Constraint::lt(row, Rat::zero()),
                    }
                })
                .collect();
            if !FourierMotzkin::new(&constraints, m).is_feasible() {
                continue;
            }
            let mut sig = vsig.clone();
            for (&i, &s) in active.iter().zip(&pattern) {
                let j = vsig[i].index();
                sig[i] = match s {
                    0 => Coord::At(j),
                    1 => Coord::Between(j),
                    _ => Coord::Between(j - 1),
                };
            }
            let (canon, w) = canonical_signature(&sig, lattice);
            let zv: Vec<Rat> = vz.iter().zip(&w).map(|(x, &wk)| x - rat(wk)).collect();
            let neg_w: Vec<i64> = w.iter().map(|x| -x).collect();
            found
                .entry(canon)
                .or_insert_with(|| Found { vertices: BTreeMap::new() })
                .vertices
                .insert(zv, (vi, neg_w));
        }
    }

    // order cells by (dim, signature)
    let mut order: Vec<(usize, Signature)> = found.keys().map(|s| (m - at_rank(&b, s), s.clone())).collect();
    order.sort();
    let mut offsets = vec![0; m + 2];
    for (d, _) in &order {
        offsets[d + 1] += 1;
    }
    for d in 0..=m {
        offsets[d + 1] += offsets[d];
    }
    let index: BTreeMap<Signature, usize> = order.iter().enumerate().map(|(k, (_, s))| (s.clone(), k)).collect();
    let vertex_index: Vec<usize> = vertex_classes.iter().map(|(s, _)| index[s]).collect();

    let mut cells: Vec<Cell> = Vec::with_capacity(order.len());
    for (dim, sig) in &order {
        let f = &found[sig];
        let vertices: Vec<VertexRef> = f
            .vertices
            .iter()
            .map(|(z, (vi, shift))| VertexRef { class: vertex_index[*vi], shift: shift.clone(), z: z.clone(), p: ambient(&b, a, z) })
            .collect();
        let sample = centroid(vertices.iter().map(|v| &v.z), m);
        let p = ambient(&b, a, &sample);
        if signature_of_point(&p) != *sig {
            return Err(Error::Degenerate(format!("centroid of cell {sig:?} is not in its relative interior")));
        }
        cells.push(Cell {
            dim: *dim,
            signature: sig.clone(),
            sample,
            vertices,
            facets: Vec::new(),
            basis: orientation_basis(&b, sig, m),
        });
    }

    for k in 0..cells.len() {
        if cells[k].dim == 0 {
            continue;
        }
        let facets = facets_of(&cells[k], &cells, &index, &b, a, lattice, m)?;
        cells[k].facets = facets;
    }

    Ok(QuotientComplex { m, n, b, a: a.clone(), lattice: lattice.clone(), cells, offsets })
}

fn centroid<'a>(points: impl Iterator<Item = &'a Vec<Rat>>, m: usize) -> Vec<Rat> {
    let mut sum = vec![Rat::zero(); m];
    let mut count = 0i64;
    for p in points {
        for (s, x) in sum.iter_mut().zip(p) {
            *s += x;
        }
        count += 1;
    }
    sum.into_iter().map(|s| s / rat(count)).collect()
}

fn affine_dim(points: &[&Vec<Rat>], m: usize) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let data: Vec<Rat> = points[1..].iter().flat_map(|p| p.iter().zip(base).map(|(x, y)| x - y)).collect();
    rank_and_kernel(&RatMatrix::new(points.len() - 1, m, data)).0
}

fn facets_of(
    cell: &Cell,
    cells: &[Cell],
    index: &BTreeMap<Signature, usize>,
    b: &[Vec<i64>],
    a: &[Rat],
    lattice: &Lattice,
    m: usize,
) -> Result<Vec<Facet>> {
    let d = cell.dim;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for (i, c) in cell.signature.iter().enumerate() {
        let Coord::Between(j) = *c else { continue };
        for t in [j, j + 1] {
            let on: Vec<usize> = cell.vertices.iter().positions(|v| v.p[i] == rat(t)).collect();
            if on.is_empty() || !seen.insert(on.clone()) {
                continue;
            }
            let pts: Vec<&Vec<Rat>> = on.iter().map(|&k| &cell.vertices[k].z).collect();
            if affine_dim(&pts, m) + 1 != d {
                continue;
            }
            let g = centroid(pts.iter().copied(), m);
            let sig = signature_of_point(&ambient(b, a, &g));
            let (canon, w) = canonical_signature(&sig, lattice);
            let &gi = index
                .get(&canon)
                .ok_or_else(|| Error::Degenerate(format!("facet {canon:?} was not enumerated")))?;
            let outward: Vec<Rat> = g.iter().zip(&cell.sample).map(|(x, y)| x - y).collect();
            let sign = incidence_sign(&cell.basis, &outward, &cells[gi].basis, m)?;
            out.push(Facet { cell: gi, shift: w, sign });
        }
    }
    out.sort_by(|x, y| (x.cell, &x.shift).cmp(&(y.cell, &y.shift)));
    Ok(out)
}

// sign of det [outward, face basis...] written in the cell basis
fn incidence_sign(cell_basis: &[Vec<Rat>], outward: &[Rat], face_basis: &[Vec<Rat>], m: usize) -> Result<i32> {
    let d = cell_basis.len();
    let frame = RatMatrix::new(d, m, cell_basis.iter().flatten().cloned().collect()).transpose();
    let coords = |v: &[Rat]| {
        solve_linear(&frame, v).ok_or_else(|| Error::Degenerate("face direction leaves the cell's span".into()))
    };
    let mut cols = vec![coords(outward)?];
    for u in face_basis {
        cols.push(coords(u)?);
    }
    let mat = RatMatrix::new(d, d, cols.into_iter().flatten().collect()).transpose();
    let det = determinant(&mat);
    if det.is_zero() {
        return Err(Error::Degenerate("degenerate face orientation".into()));
    }
    Ok(if det.is_positive() { 1 } else { -1 })
}
