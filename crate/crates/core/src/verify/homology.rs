//! Rational homology of degree truncations of the periodic cell complex and
//! of the quotient torus.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::arith::{integer_points, rank_and_kernel, rat, Constraint, Rat, RatMatrix};
use crate::arrangement::QuotientComplex;
use crate::complex::GradedFreeComplex;
use crate::error::{Error, Result};
use crate::labeling::{face_label, vertex_label, LaurentMonomial};

/// Cap on lattice translates enumerated per cell.
const TRANSLATE_LIMIT: usize = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct AcyclicityReport {
    pub bound: String,
    /// `(cell class, shift)` pairs in the truncation.
    pub cells: Vec<(usize, Vec<i64>)>,
    /// Reduced Betti numbers in dimensions `-1, 0, .., m`.
    pub reduced_betti: Vec<usize>,
    pub empty: bool,
}

impl AcyclicityReport {
    /// Empty truncations impose no condition.
    pub fn is_acyclic(&self) -> bool {
        self.empty || self.reduced_betti.iter().all(|&b| b == 0)
    }
}

/// Label of every stored cell representative.
pub fn cell_labels(qc: &QuotientComplex) -> Vec<LaurentMonomial> {
    qc.cells.iter().map(|c| face_label(&c.vertices.iter().map(|v| vertex_label(&v.p)).collect::<Vec<_>>())).collect()
}

fn sparse_rank(rows: usize, cols: usize, entries: &HashMap<(usize, usize), i64>) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut m = RatMatrix::zeros(rows, cols);
    for (&(r, c), &v) in entries {
        m[(r, c)] = rat(v);
    }
    rank_and_kernel(&m).0
}

/// Cells `(c, w)` of the periodic complex with label `m_c * x^{Bw}/y^{Bw}`
/// dividing a bound, closed under taking faces.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub cells: Vec<Vec<(usize, Vec<i64>)>>,
    index: Vec<HashMap<(usize, Vec<i64>), usize>>,
}

impl Truncation {
    pub fn new(qc: &QuotientComplex, labels: &[LaurentMonomial], bound: &LaurentMonomial) -> Result<Self> {
        let m = qc.m;
        let mut cells: Vec<Vec<(usize, Vec<i64>)>> = vec![Vec::new(); m + 1];
        let mut index: Vec<HashMap<(usize, Vec<i64>), usize>> = vec![HashMap::new(); m + 1];
        for (k, cell) in qc.cells.iter().enumerate() {
            let label = &labels[k];
            let mut cs = Vec::new();
            for (i, row) in qc.b.iter().enumerate() {
                let coeffs: Vec<Rat> = row.iter().map(|&x| rat(x)).collect();
                cs.push(Constraint::le(coeffs.clone(), rat(bound.x[i] - label.x[i])));
                cs.push(Constraint::ge(coeffs, rat(label.y[i] - bound.y[i])));
            }
            for w in integer_points(&cs, m, TRANSLATE_LIMIT)? {
                index[cell.dim].insert((k, w.clone()), cells[cell.dim].len());
                cells[cell.dim].push((k, w));
            }
        }
        Ok(Truncation { cells, index })
    }

    pub fn is_empty(&self) -> bool {
        self.cells[0].is_empty()
    }

    pub fn position(&self, dim: usize, cell: usize, shift: &[i64]) -> Option<usize> {
        self.index[dim].get(&(cell, shift.to_vec())).copied()
    }

    /// Augmented boundary `C_d -> C_{d-1}` for `0 <= d <= m`; `C_{-1}` is
    /// one-dimensional.
    pub fn boundary(&self, qc: &QuotientComplex, d: usize) -> Result<RatMatrix> {
        if d == 0 {
            let mut out = RatMatrix::zeros(1, self.cells[0].len());
            for j in 0..self.cells[0].len() {
                out[(0, j)] = rat(1);
            }
            return Ok(out);
        }
        let mut out = RatMatrix::zeros(self.cells[d - 1].len(), self.cells[d].len());
        for (col, (k, w)) in self.cells[d].iter().enumerate() {
            for f in &qc.cells[*k].facets {
                let shift: Vec<i64> = f.shift.iter().zip(w).map(|(a, b)| a + b).collect();
                let row = self
                    .position(d - 1, f.cell, &shift)
                    .ok_or_else(|| Error::Degenerate(format!("face of cell {k} missing from truncation")))?;
                out[(row, col)] += rat(i64::from(f.sign));
            }
        }
        Ok(out)
    }

    /// Reduced Betti numbers in dimensions `-1, 0, .., m`.
    pub fn reduced_betti(&self, qc: &QuotientComplex) -> Result<Vec<usize>> {
        let m = self.cells.len() - 1;
        let mut ranks = vec![0usize; m + 2];
        for (d, r) in ranks.iter_mut().enumerate().take(m + 1) {
            *r = matrix_rank(&self.boundary(qc, d)?);
        }
        let mut out = vec![1 - ranks[0]];
        for d in 0..=m {
            out.push(self.cells[d].len() - ranks[d] - ranks[d + 1]);
        }
        Ok(out)
    }

    /// Whether inclusion into `big` induces zero on reduced homology.
    pub fn dies_in(&self, big: &Truncation, qc: &QuotientComplex) -> Result<bool> {
        let m = self.cells.len() - 1;
        // dimension -1: the class of the empty set dies once big is nonempty
        if self.is_empty() && big.is_empty() {
            return Ok(false);
        }
        for d in 0..=m {
            let (_, cycles) = rank_and_kernel(&self.boundary(qc, d)?);
            if cycles.is_empty() {
                continue;
            }
            let rows = big.cells[d].len();
            let bd = if d < m { big.boundary(qc, d + 1)? } else { RatMatrix::zeros(rows, 0) };
            let mut joined = RatMatrix::zeros(rows, bd.cols() + cycles.len());
            for r in 0..rows {
                for c in 0..bd.cols() {
                    joined[(r, c)] = bd[(r, c)].clone();
                }
            }
            for (j, z) in cycles.iter().enumerate() {
                for (i, coeff) in z.iter().enumerate() {
                    let (k, w) = &self.cells[d][i];
                    let r = big.position(d, *k, w).expect("truncations are nested");
                    joined[(r, bd.cols() + j)] = coeff.clone();
                }
            }
            if matrix_rank(&joined) != matrix_rank(&bd) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn matrix_rank(m: &RatMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 { 0 } else { rank_and_kernel(m).0 }
}

/// Reduced rational homology of the truncation at `bound`.
pub fn subcomplex_acyclicity(qc: &QuotientComplex, labels: &[LaurentMonomial], bound: &LaurentMonomial) -> Result<AcyclicityReport> {
    let t = Truncation::new(qc, labels, bound)?;
    let reduced = t.reduced_betti(qc)?;
    let empty = t.is_empty();
    Ok(AcyclicityReport { bound: bound.to_string(), cells: t.cells.into_iter().flatten().collect(), reduced_betti: reduced, empty })
}

/// An ordered pair of maximal cones.
pub type ConePair = (Vec<usize>, Vec<usize>);

/// Search for each generator `x^{s1^} y^{s2^}` of the irrelevant ideal of
/// the product a power `k <= max_power` whose multiple of `bound` kills the
/// homology of the truncation. Returns the smallest such `k` per cone pair,
/// or `None` where the search fails.
pub fn irrelevant_annihilators(
    qc: &QuotientComplex,
    labels: &[LaurentMonomial],
    bound: &LaurentMonomial,
    cones: &[Vec<usize>],
    max_power: i64,
) -> Result<Vec<(ConePair, Option<i64>)>> {
    let small = Truncation::new(qc, labels, bound)?;
    let n = qc.n;
    let mut out = Vec::new();
    for s1 in cones {
        for s2 in cones {
            let hat = |s: &[usize]| -> Vec<i64> { (0..n).map(|i| i64::from(!s.contains(&i))).collect() };
            let g = LaurentMonomial::new(hat(s1), hat(s2));
            let mut found = None;
            for k in 1..=max_power {
                let big = Truncation::new(qc, labels, &bound.mul(&g.pow(k)))?;
                if small.dies_in(&big, qc)? {
                    found = Some(k);
                    break;
                }
            }
            out.push(((s1.clone(), s2.clone()), found));
        }
    }
    Ok(out)
}

/// Betti numbers of the degree-`bound` strand of the free complex, read
/// directly from its symbolic differentials: position `d` is spanned by
/// `t * e_G` with `t` a monomial of `S` and `t * m_G` a lattice translate
/// of `bound`.
pub fn strand_betti(c: &GradedFreeComplex, bound: &LaurentMonomial) -> Result<Vec<usize>> {
    let lattice = c.lattice();
    let m = lattice.rank();
    let top = c.generators.len();
    let mut basis: Vec<Vec<(usize, LaurentMonomial)>> = vec![Vec::new(); top];
    let mut index: Vec<HashMap<(usize, LaurentMonomial), usize>> = vec![HashMap::new(); top];
    for (d, gens) in c.generators.iter().enumerate() {
        for (k, g) in gens.iter().enumerate() {
            // t = bound * x^{Bw}/y^{Bw} / m_G >= 0
            let mut cs = Vec::new();
            for (i, row) in c.b.iter().enumerate() {
                let coeffs: Vec<Rat> = row.iter().map(|&x| rat(x)).collect();
                cs.push(Constraint::ge(coeffs.clone(), rat(g.label.x[i] - bound.x[i])));
                cs.push(Constraint::le(coeffs, rat(bound.y[i] - g.label.y[i])));
            }
            for w in integer_points(&cs, m, TRANSLATE_LIMIT)? {
                let t = bound.shifted(&lattice.apply(&w)).div(&g.label);
                index[d].insert((k, t.clone()), basis[d].len());
                basis[d].push((k, t));
            }
        }
    }
    let mut ranks = vec![0usize; top + 1];
    for d in 1..top {
        let mat = &c.boundaries[d - 1];
        let mut out = RatMatrix::zeros(basis[d - 1].len(), basis[d].len());
        for (col, (k, t)) in basis[d].iter().enumerate() {
            for r in 0..mat.rows {
                for (s, coeff) in mat.entries[r][*k].terms() {
                    let row = index[d - 1]
                        .get(&(r, s.mul(t)))
                        .ok_or_else(|| Error::Degenerate(format!("strand of {bound} not closed under the differential")))?;
                    out[(*row, col)] += rat(coeff);
                }
            }
        }
        ranks[d] = matrix_rank(&out);
    }
    Ok((0..top).map(|d| basis[d].len() - ranks[d] - ranks[d + 1]).collect())
}

/// Rational Betti numbers of the quotient complex (a torus when the fan is
/// complete).
pub fn quotient_betti(qc: &QuotientComplex) -> Vec<usize> {
    let m = qc.m;
    let sizes: Vec<usize> = (0..=m).map(|d| qc.cells_of_dim(d).len()).collect();
    let mut ranks = vec![0usize; m + 2];
    for d in 1..=m {
        let rows = qc.cells_of_dim(d - 1);
        let mut entries = HashMap::new();
        for (col, k) in qc.cells_of_dim(d).enumerate() {
            for f in &qc.cells[k].facets {
                *entries.entry((f.cell - rows.start, col)).or_insert(0) += i64::from(f.sign);
            }
        }
        entries.retain(|_, v| *v != 0);
        ranks[d] = sparse_rank(sizes[d - 1], sizes[d], &entries);
    }
    (0..=m).map(|d| sizes[d] - ranks[d] - ranks[d + 1]).collect()
}

/// Degrees for the acyclicity spot check: every cell label and its
/// translates by `Bw`, `w` in `{-1,0,1}^m`, joined with every stored label;
/// then `extra` random perturbations of those.
pub fn sample_degrees<R: Rng>(qc: &QuotientComplex, labels: &[LaurentMonomial], rng: &mut R, extra: usize) -> Vec<LaurentMonomial> {
    let m = qc.m;
    let mut translates = BTreeSet::new();
    let shifts: Vec<Vec<i64>> = (0..3usize.pow(m as u32))
        .map(|mut k| {
            (0..m)
                .map(|_| {
                    let d = (k % 3) as i64 - 1;
                    k /= 3;
                    d
                })
                .collect()
        })
        .collect();
    for l in labels {
        for w in &shifts {
            translates.insert(l.shifted(&qc.lattice.apply(w)));
        }
    }
    let mut out = BTreeSet::new();
    for a in labels {
        for b in &translates {
            out.insert(a.join(b));
        }
    }
    let base: Vec<LaurentMonomial> = out.iter().cloned().collect();
    for _ in 0..extra {
        let pick = &base[rng.gen_range(0..base.len())];
        let e: Vec<i64> = pick.exponents().iter().map(|x| x + rng.gen_range(-1..=1)).collect();
        out.insert(LaurentMonomial::from_exponents(&e));
    }
    out.into_iter().collect()
}

/// Largest reduced Betti number, for summaries.
pub fn max_betti(reports: &[AcyclicityReport]) -> usize {
    reports.iter().flat_map(|r| r.reduced_betti.iter().copied()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::arrangement::Deformation;
    use crate::fixtures::{blow_up_basis, blow_up_fan, projective_line, twice_blow_up_fan};
    use crate::pipeline::resolve;

    #[test]
    fn torus_homology() {
        let r = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(4)).unwrap();
        assert_eq!(quotient_betti(&r.qc), vec![1, 2, 1]);
        let r = resolve(&projective_line(), None, &Deformation::zero(2)).unwrap();
        assert_eq!(quotient_betti(&r.qc), vec![1, 1]);
    }

    #[test]
    fn top_face_truncation_is_acyclic() {
        let r = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(4)).unwrap();
        let labels = cell_labels(&r.qc);
        let top = r.qc.cells_of_dim(2).start;
        let rep = subcomplex_acyclicity(&r.qc, &labels, &labels[top]).unwrap();
        assert!(!rep.empty);
        assert!(rep.is_acyclic(), "{rep:?}");
    }

    #[test]
    fn low_bound_is_empty() {
        let r = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(4)).unwrap();
        let labels = cell_labels(&r.qc);
        let low = LaurentMonomial::from_exponents(&[-1; 8]);
        let rep = subcomplex_acyclicity(&r.qc, &labels, &low).unwrap();
        assert!(rep.empty);
        assert_eq!(rep.reduced_betti[0], 1);
        assert!(rep.is_acyclic());
    }

    #[test]
    fn sampled_degrees_are_acyclic() {
        let r = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(4)).unwrap();
        let labels = cell_labels(&r.qc);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for b in sample_degrees(&r.qc, &labels, &mut rng, 50) {
            let rep = subcomplex_acyclicity(&r.qc, &labels, &b).unwrap();
            assert!(rep.is_acyclic(), "{rep:?}");
        }
    }

    #[test]
    fn strand_agrees_with_truncation() {
        let r = resolve(&twice_blow_up_fan(), None, &Deformation::zero(5)).unwrap();
        let labels = cell_labels(&r.qc);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for b in sample_degrees(&r.qc, &labels, &mut rng, 10).iter().step_by(7) {
            let rep = subcomplex_acyclicity(&r.qc, &labels, b).unwrap();
            let strand = strand_betti(&r.complex, b).unwrap();
            // position d carries reduced homology in dimension d, plus the
            // augmentation at position 0
            assert_eq!(&strand[1..], &rep.reduced_betti[2..], "{b}");
            assert_eq!(strand[0], rep.reduced_betti[1] + usize::from(!rep.empty), "{b}");
        }
    }

    #[test]
    fn enlarging_the_bound_keeps_cells() {
        let r = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(4)).unwrap();
        let labels = cell_labels(&r.qc);
        let b = labels[r.qc.cells_of_dim(2).start].clone();
        let bigger = b.join(&labels[r.qc.cells_of_dim(2).start + 1]);
        let small = subcomplex_acyclicity(&r.qc, &labels, &b).unwrap();
        let large = subcomplex_acyclicity(&r.qc, &labels, &bigger).unwrap();
        assert!(small.cells.iter().all(|c| large.cells.contains(c)));
    }
}
