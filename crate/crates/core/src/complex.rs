//! The graded free complex supported on the quotient cell complex.

use std::fmt;

use serde::Serialize;

use crate::arith::{IntMatrix, Lattice};
use crate::arrangement::QuotientComplex;
use crate::error::{Error, Result};
use crate::fan::ExactSeq;
use crate::labeling::{canonical_translate, face_label, vertex_label, ClDegree, LaurentMonomial};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    /// Index of the cell in the quotient complex, if the generator came from one.
    pub cell: Option<usize>,
    pub dim: usize,
    pub degree: ClDegree,
    pub label: LaurentMonomial,
}

/// Dense matrix of polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Poly>>,
}

impl BoundaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BoundaryMatrix { rows, cols, entries: vec![vec![Poly::zero(); cols]; rows] }
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r][c]
    }

    pub fn mul(&self, other: &BoundaryMatrix) -> BoundaryMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BoundaryMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other.entries[k][j].is_zero() {
                        continue;
                    }
                    let prod = self.entries[i][k].mul(&other.entries[k][j]);
                    out.entries[i][j] = out.entries[i][j].add(&prod);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> BoundaryMatrix {
        let entries = row_order
            .iter()
            .map(|&r| col_order.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect();
        BoundaryMatrix { rows: row_order.len(), cols: col_order.len(), entries }
    }

    pub fn negate_row(&mut self, r: usize) {
        for e in &mut self.entries[r] {
            *e = e.scale(-1);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for row in &mut self.entries {
            row[c] = row[c].scale(-1);
        }
    }
}

impl fmt::Display for BoundaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Generators per homological degree and the differentials
/// `boundaries[d - 1] : F_d -> F_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeComplex {
    pub n: usize,
    /// Rows of `B`, so labels can be moved by lattice translations.
    pub b: Vec<Vec<i64>>,
    pub generators: Vec<Vec<Generator>>,
    pub boundaries: Vec<BoundaryMatrix>,
}

impl GradedFreeComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    pub fn lattice(&self) -> Lattice {
        let m = self.b.first().map_or(0, Vec::len);
        Lattice::from_columns(&IntMatrix::from_i64_rows(&self.b, m))
    }

    /// Equality of generator degrees, labels and differentials, ignoring
    /// which cells the generators came from.
    pub fn same_as(&self, other: &GradedFreeComplex) -> bool {
        let strip = |c: &GradedFreeComplex| -> Vec<Vec<(ClDegree, LaurentMonomial)>> {
            c.generators.iter().map(|gs| gs.iter().map(|g| (g.degree.clone(), g.label.clone())).collect()).collect()
        };
        self.n == other.n && strip(self) == strip(other) && self.boundaries == other.boundaries
    }

    /// `d_d` as a matrix, `1 <= d <= top`.
    pub fn boundary(&self, d: usize) -> &BoundaryMatrix {
        &self.boundaries[d - 1]
    }

    /// Sort generators by `(degree, canonical label)` within each dimension
    /// (stable, so ties keep their order), replace labels by canonical
    /// translates, and flip generator signs so the first nonzero entry of
    /// every column has a positive leading coefficient.
    pub fn canonicalize(&self) -> GradedFreeComplex {
        let lattice = self.lattice();
        let mut out = self.clone();
        for gens in &mut out.generators {
            for g in gens.iter_mut() {
                g.label = canonical_translate(&g.label, &lattice).0;
            }
        }
        let orders: Vec<Vec<usize>> = out
            .generators
            .iter()
            .map(|gens| {
                let mut idx: Vec<usize> = (0..gens.len()).collect();
                idx.sort_by_cached_key(|&k| (gens[k].degree.clone(), gens[k].label.to_string()));
                idx
            })
            .collect();
        for (d, order) in orders.iter().enumerate() {
            out.generators[d] = order.iter().map(|&k| out.generators[d][k].clone()).collect();
        }
        for d in 1..out.generators.len() {
            out.boundaries[d - 1] = out.boundaries[d - 1].permuted(&orders[d - 1], &orders[d]);
        }
        for d in 1..out.generators.len() {
            for c in 0..out.generators[d].len() {
                let lead = (0..out.boundaries[d - 1].rows)
                    .map(|r| out.boundaries[d - 1].entries[r][c].leading_sign())
                    .find(|&s| s != 0)
                    .unwrap_or(0);
                if lead < 0 {
                    out.boundaries[d - 1].negate_col(c);
                    if d < out.boundaries.len() {
                        out.boundaries[d].negate_row(c);
                    }
                }
            }
        }
        out
    }
}

/// Assemble the complex: face labels are lcms of closure vertex labels, and
/// the entry for a facet translate `G + s` of `F` is `sign * m_F / m_{G+s}`.
pub fn build_complex(qc: &QuotientComplex, seq: &ExactSeq) -> Result<GradedFreeComplex> {
    let labels: Vec<LaurentMonomial> = qc
        .cells
        .iter()
        .map(|c| face_label(&c.vertices.iter().map(|v| vertex_label(&v.p)).collect::<Vec<_>>()))
        .collect();
    let mut generators = Vec::new();
    for d in 0..=qc.m {
        generators.push(
            qc.cells_of_dim(d)
                .map(|k| Generator { cell: Some(k), dim: d, degree: labels[k].degree(seq), label: labels[k].clone() })
                .collect::<Vec<_>>(),
        );
    }
    let mut boundaries = Vec::new();
    for d in 1..=qc.m {
        let rows = qc.cells_of_dim(d - 1);
        let cols = qc.cells_of_dim(d);
        let mut mat = BoundaryMatrix::zeros(rows.len(), cols.len());
        for (c, k) in cols.clone().enumerate() {
            for facet in &qc.cells[k].facets {
                let face = labels[facet.cell].shifted(&qc.lattice.apply(&facet.shift));
                let ratio = labels[k].div(&face);
                if !ratio.is_polynomial() {
                    return Err(Error::NegativeExponent { cell: labels[k].to_string(), face: face.to_string() });
                }
                mat.entries[facet.cell - rows.start][c].add_term(i64::from(facet.sign), ratio);
            }
        }
        boundaries.push(mat);
    }
    Ok(GradedFreeComplex { n: qc.n, b: qc.b.clone(), generators, boundaries })
}

/// `x^a y^b - x^b y^a` with `a - b` in `L`, stored with a positive leading
/// term so that a set of binomials is sign-independent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Binomial {
    pub plus: LaurentMonomial,
    pub minus: LaurentMonomial,
}

impl Binomial {
    pub fn new(p: LaurentMonomial, q: LaurentMonomial) -> Self {
        if p >= q { Binomial { plus: p, minus: q } } else { Binomial { plus: q, minus: p } }
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

/// One binomial per edge: the image of its boundary under `e_v -> m_v`
/// with common factors removed. Edges whose image vanishes are skipped.
pub fn jl_binomials(c: &GradedFreeComplex) -> Vec<Binomial> {
    let mut out = Vec::new();
    if c.boundaries.is_empty() {
        return out;
    }
    let lattice = c.lattice();
    let d1 = &c.boundaries[0];
    for col in 0..d1.cols {
        let mut image = Poly::zero();
        for row in 0..d1.rows {
            image = image.add(&d1.entries[row][col].times_monomial(&c.generators[0][row].label));
        }
        let terms: Vec<(LaurentMonomial, i64)> = image.terms().map(|(m, k)| (m.clone(), k)).collect();
        if terms.len() != 2 || terms[0].1 != -terms[1].1 {
            continue;
        }
        let common = terms[0].0.meet(&terms[1].0);
        let p = terms[0].0.div(&common);
        let q = terms[1].0.div(&common);
        let diff: Vec<i64> = p.x.iter().zip(&q.x).map(|(a, b)| a - b).collect();
        debug_assert!(lattice.contains(&diff));
        let bin = Binomial::new(p, q);
        if !out.contains(&bin) {
            out.push(bin);
        }
    }
    out
}

/// Row and column permutations and signs with
/// `b[rows[i]][cols[j]] = row_signs[i] * col_signs[j] * a[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixIsomorphism {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub row_signs: Vec<i64>,
    pub col_signs: Vec<i64>,
}

/// Backtracking search for a signed permutation equivalence `a ~ b`.
pub fn find_isomorphism(a: &BoundaryMatrix, b: &BoundaryMatrix) -> Option<MatrixIsomorphism> {
    if a.rows != b.rows || a.cols != b.cols {
        return None;
    }
    let profile = |m: &BoundaryMatrix, r: usize| {
        let mut v: Vec<Poly> = m.entries[r].iter().map(Poly::up_to_sign).collect();
        v.sort();
        v
    };
    let pa: Vec<_> = (0..a.rows).map(|r| profile(a, r)).collect();
    let pb: Vec<_> = (0..b.rows).map(|r| profile(b, r)).collect();
    let mut rows = Vec::new();
    let mut signs = Vec::new();
    let mut used = vec![false; b.rows];
    search_rows(a, b, &pa, &pb, &mut rows, &mut signs, &mut used)
}

fn search_rows(
    a: &BoundaryMatrix,
    b: &BoundaryMatrix,
    pa: &[Vec<Poly>],
    pb: &[Vec<Poly>],
    rows: &mut Vec<usize>,
    signs: &mut Vec<i64>,
    used: &mut [bool],
) -> Option<MatrixIsomorphism> {
    let i = rows.len();
    if i == a.rows {
        return match_columns(a, b, rows, signs);
    }
    for r in 0..b.rows {
        if used[r] || pa[i] != pb[r] {
            continue;
        }
        for s in [1, -1] {
            rows.push(r);
            signs.push(s);
            used[r] = true;
            if partial_columns_ok(a, b, rows, signs) {
                if let Some(found) = search_rows(a, b, pa, pb, rows, signs, used) {
                    return Some(found);
                }
            }
            used[r] = false;
            rows.pop();
            signs.pop();
        }
    }
    None
}

fn column_matches(a: &BoundaryMatrix, b: &BoundaryMatrix, rows: &[usize], signs: &[i64], j: usize, k: usize) -> Option<i64> {
    [1, -1].into_iter().find(|&cs| {
        rows.iter()
            .zip(signs)
            .enumerate()
            .all(|(i, (&r, &s))| b.entries[r][k] == a.entries[i][j].scale(s * cs))
    })
}

// every column of a restricted to the assigned rows has some partner in b
fn partial_columns_ok(a: &BoundaryMatrix, b: &BoundaryMatrix, rows: &[usize], signs: &[i64]) -> bool {
    (0..a.cols).all(|j| (0..b.cols).any(|k| column_matches(a, b, rows, signs, j, k).is_some()))
}

fn match_columns(a: &BoundaryMatrix, b: &BoundaryMatrix, rows: &[usize], signs: &[i64]) -> Option<MatrixIsomorphism> {
    let mut cols = Vec::new();
    let mut col_signs = Vec::new();
    let mut used = vec![false; b.cols];
    for j in 0..a.cols {
        let (k, cs) = (0..b.cols)
            .filter(|&k| !used[k])
            .find_map(|k| column_matches(a, b, rows, signs, j, k).map(|cs| (k, cs)))?;
        used[k] = true;
        cols.push(k);
        col_signs.push(cs);
    }
    Some(MatrixIsomorphism { rows: rows.to_vec(), cols, row_signs: signs.to_vec(), col_signs })
}
