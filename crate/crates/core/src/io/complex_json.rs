use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{BoundaryMatrix, Generator, GradedFreeComplex};
use crate::error::{Error, Result};
use crate::labeling::{ClDegree, LaurentMonomial};
use crate::poly::Poly;

/// Sparse exponents keyed by 1-based variable index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMonomial {
    pub x: BTreeMap<String, i64>,
    pub y: BTreeMap<String, i64>,
}

impl SparseMonomial {
    fn from_monomial(m: &LaurentMonomial) -> Self {
        let sparse = |v: &[i64]| v.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| ((i + 1).to_string(), e)).collect();
        SparseMonomial { x: sparse(&m.x), y: sparse(&m.y) }
    }

    fn to_monomial(&self, n: usize) -> Result<LaurentMonomial> {
        let dense = |map: &BTreeMap<String, i64>| -> Result<Vec<i64>> {
            let mut v = vec![0; n];
            for (k, &e) in map {
                let i: usize = k.parse().map_err(|_| Error::Parse { what: "variable index", detail: k.clone() })?;
                if i == 0 || i > n {
                    return Err(Error::Parse { what: "variable index", detail: k.clone() });
                }
                v[i - 1] = e;
            }
            Ok(v)
        };
        Ok(LaurentMonomial::new(dense(&self.x)?, dense(&self.y)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub dim: usize,
    pub degree: ClDegree,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub sign: i64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub coefficient: i64,
    pub monomial: SparseMonomial,
}

fn one() -> i64 {
    1
}

fn is_one(x: &i64) -> bool {
    *x == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<EntryJson>,
}

/// Complex document. `n` and `lattice` (rows of `B`) make it self-contained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub lattice: Vec<Vec<i64>>,
    pub ranks: Vec<usize>,
    pub generators: Vec<GeneratorJson>,
    pub boundaries: Vec<BoundaryJson>,
}

pub fn complex_to_json(c: &GradedFreeComplex) -> ComplexJson {
    let generators = c
        .generators
        .iter()
        .flatten()
        .map(|g| GeneratorJson { dim: g.dim, degree: g.degree.clone(), label: g.label.to_string(), cell: g.cell })
        .collect();
    let boundaries = c
        .boundaries
        .iter()
        .map(|mat| {
            let mut entries = Vec::new();
            for (row, r) in mat.entries.iter().enumerate() {
                for (col, p) in r.iter().enumerate() {
                    for (t, k) in p.terms() {
                        entries.push(EntryJson {
                            row,
                            col,
                            sign: k.signum(),
                            coefficient: k.abs(),
                            monomial: SparseMonomial::from_monomial(t),
                        });
                    }
                }
            }
            BoundaryJson { rows: mat.rows, cols: mat.cols, entries }
        })
        .collect();
    ComplexJson { n: c.n, lattice: c.b.clone(), ranks: c.ranks(), generators, boundaries }
}

pub fn complex_from_json(doc: &ComplexJson) -> Result<GradedFreeComplex> {
    let n = doc.n;
    let mut generators: Vec<Vec<Generator>> = vec![Vec::new(); doc.ranks.len()];
    for g in &doc.generators {
        let slot = generators.get_mut(g.dim).ok_or_else(|| Error::Parse { what: "generator", detail: format!("dimension {}", g.dim) })?;
        slot.push(Generator { cell: g.cell, dim: g.dim, degree: g.degree.clone(), label: LaurentMonomial::parse(&g.label, n)? });
    }
    if generators.iter().map(Vec::len).ne(doc.ranks.iter().copied()) {
        return Err(Error::Parse { what: "complex", detail: "ranks disagree with generators".into() });
    }
    let mut boundaries = Vec::new();
    for (d, b) in doc.boundaries.iter().enumerate() {
        if b.rows != doc.ranks[d] || doc.ranks.get(d + 1) != Some(&b.cols) {
            return Err(Error::Parse { what: "boundary", detail: format!("d{} has shape {}x{}", d + 1, b.rows, b.cols) });
        }
        let mut mat = BoundaryMatrix::zeros(b.rows, b.cols);
        for e in &b.entries {
            if e.row >= b.rows || e.col >= b.cols {
                return Err(Error::Parse { what: "boundary entry", detail: format!("({}, {})", e.row, e.col) });
            }
            let term = Poly::monomial(e.sign * e.coefficient, e.monomial.to_monomial(n)?);
            mat.entries[e.row][e.col] = mat.entries[e.row][e.col].add(&term);
        }
        boundaries.push(mat);
    }
    Ok(GradedFreeComplex { n, b: doc.lattice.clone(), generators, boundaries })
}
