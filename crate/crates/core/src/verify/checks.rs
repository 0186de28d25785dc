//! Structural checks on a graded free complex and its cell complex.

use rand::Rng;

use crate::arith::{rat_frac, Lattice, Rat};
use crate::arrangement::QuotientComplex;
use crate::complex::GradedFreeComplex;
use crate::fan::{ExactSeq, FanClassification};
use crate::labeling::{translate_label, vertex_label};

/// All composites `d_{d} d_{d+1}` vanish.
pub fn check_d_squared(c: &GradedFreeComplex) -> bool {
    c.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
}

/// Entries whose terms do not have degree `deg(F) - deg(G)`, and generators
/// whose stored degree disagrees with their label.
pub fn homogeneity_violations(c: &GradedFreeComplex, seq: &ExactSeq) -> Vec<String> {
    let mut out = Vec::new();
    for (d, gens) in c.generators.iter().enumerate() {
        for (k, g) in gens.iter().enumerate() {
            if g.label.degree(seq) != g.degree {
                out.push(format!("generator {k} in degree {d}: label {} has degree {:?}", g.label, g.label.degree(seq)));
            }
        }
    }
    for (i, mat) in c.boundaries.iter().enumerate() {
        let (rows, cols) = (&c.generators[i], &c.generators[i + 1]);
        for (r, row) in mat.entries.iter().enumerate() {
            for (col, entry) in row.iter().enumerate() {
                for (t, _) in entry.terms() {
                    if t.degree(seq).add(&rows[r].degree) != cols[col].degree {
                        out.push(format!("d{} entry ({r},{col}) term {t}", i + 1));
                    }
                }
            }
        }
    }
    out
}

pub fn check_homogeneity(c: &GradedFreeComplex, seq: &ExactSeq) -> bool {
    homogeneity_violations(c, seq).is_empty()
}

/// Entries with a term `t` that is not a monomial of `S`, or for which
/// `t * m_G` is not an `L`-translate of `m_F`.
pub fn divisibility_violations(c: &GradedFreeComplex) -> Vec<String> {
    let lattice = c.lattice();
    let mut out = Vec::new();
    for (i, mat) in c.boundaries.iter().enumerate() {
        let (rows, cols) = (&c.generators[i], &c.generators[i + 1]);
        for (r, row) in mat.entries.iter().enumerate() {
            for (col, entry) in row.iter().enumerate() {
                for (t, _) in entry.terms() {
                    let q = cols[col].label.div(&t.mul(&rows[r].label));
                    let translate = q.x.iter().zip(&q.y).all(|(a, b)| a + b == 0) && lattice.contains(&q.x);
                    if !t.is_polynomial() || !translate {
                        out.push(format!("d{} entry ({r},{col}) term {t}", i + 1));
                    }
                }
            }
        }
    }
    out
}

/// Alternating sum of ranks.
pub fn euler_characteristic(c: &GradedFreeComplex) -> i64 {
    c.ranks().iter().enumerate().map(|(d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
}

/// `vertex_label(p + v) == translate_label(vertex_label(p), v)` on random
/// rational `p` and random `v` in `L`; returns the failing pairs.
pub fn floor_translation_failures<R: Rng>(lattice: &Lattice, rng: &mut R, trials: usize) -> Vec<(Vec<Rat>, Vec<i64>)> {
    let n = lattice.ambient_dim();
    let m = lattice.rank();
    let mut out = Vec::new();
    for _ in 0..trials {
        let p: Vec<Rat> = (0..n).map(|_| rat_frac(rng.gen_range(-40..=40), rng.gen_range(1..=7))).collect();
        let w: Vec<i64> = (0..m).map(|_| rng.gen_range(-5..=5)).collect();
        let v = lattice.apply(&w);
        let moved: Vec<Rat> = p.iter().zip(&v).map(|(x, &d)| x + Rat::from_integer(d.into())).collect();
        let ok = translate_label(&vertex_label(&p), &v, lattice).is_ok_and(|t| t == vertex_label(&moved));
        if !ok {
            out.push((p, v));
        }
    }
    out
}

/// Unimodular exactly when every vertex class has integral coordinates.
pub fn unimodularity_cross_check(qc: &QuotientComplex, fc: &FanClassification) -> bool {
    let vertices = qc.cells_of_dim(0).len();
    fc.unimodular == (qc.integral_vertices() == vertices)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::arrangement::Deformation;
    use crate::fixtures::{blow_up_basis, blow_up_fan, twice_blow_up_fan};
    use crate::pipeline::resolve;
    use crate::poly::Poly;

    #[test]
    fn blow_up_passes() {
        let r = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(4)).unwrap();
        assert!(check_d_squared(&r.complex));
        assert!(check_homogeneity(&r.complex, &r.seq));
        assert!(divisibility_violations(&r.complex).is_empty());
        assert_eq!(euler_characteristic(&r.complex), 0);
        assert!(unimodularity_cross_check(&r.qc, &r.classification));
    }

    #[test]
    fn sign_flip_breaks_d_squared() {
        let r = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(4)).unwrap();
        let mut c = r.complex.clone();
        c.boundaries[1].entries[0][0] = c.boundaries[1].entries[0][0].scale(-1);
        assert!(!check_d_squared(&c));
    }

    #[test]
    fn exponent_change_breaks_homogeneity() {
        let r = resolve(&twice_blow_up_fan(), None, &Deformation::zero(5)).unwrap();
        let mut c = r.complex.clone();
        let (row, col) = (0..c.boundaries[1].rows)
            .flat_map(|i| (0..c.boundaries[1].cols).map(move |j| (i, j)))
            .find(|&(i, j)| !c.boundaries[1].entries[i][j].is_zero())
            .unwrap();
        let entry = &c.boundaries[1].entries[row][col];
        let (t, k) = entry.terms().next().map(|(t, k)| (t.clone(), k)).unwrap();
        let mut bumped = t.clone();
        bumped.x[0] += 1;
        let mut mutated = entry.add(&Poly::monomial(-k, t));
        mutated.add_term(k, bumped);
        c.boundaries[1].entries[row][col] = mutated;
        assert!(!check_homogeneity(&c, &r.seq));
    }

    #[test]
    fn floor_translation_holds() {
        let r = resolve(&twice_blow_up_fan(), None, &Deformation::zero(5)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(floor_translation_failures(&r.seq.lattice, &mut rng, 100).is_empty());
        assert!(unimodularity_cross_check(&r.qc, &r.classification));
        assert!(!r.classification.unimodular);
    }
}
