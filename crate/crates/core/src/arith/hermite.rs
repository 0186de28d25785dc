use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use super::rat::to_i64;

/// A sublattice of `Z^n` generated by the columns of an integer matrix,
/// kept together with its row-style Hermite normal form.
///
/// The Hermite basis gives every coset `v + L` a unique representative:
/// at each pivot column the representative's entry lies in `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    generators: IntMatrix,
    hnf: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    // hnf row k == sum_j transform[k][j] * (column j of generators)
    transform: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn from_columns(generators: &IntMatrix) -> Self {
        let mut g = generators.transpose();
        let k = g.rows();
        let n = g.cols();
        let mut t = IntMatrix::identity(k);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == k {
                break;
            }
            loop {
                let best = (r..k)
                    .filter(|&i| !g[(i, c)].is_zero())
                    .min_by(|&a, &b| g[(a, c)].abs().cmp(&g[(b, c)].abs()).then(a.cmp(&b)));
                let Some(p) = best else { break };
                g.swap_rows(r, p);
                t.swap_rows(r, p);
                let mut done = true;
                for i in r + 1..k {
                    if g[(i, c)].is_zero() {
                        continue;
                    }
                    let q = g[(i, c)].div_floor(&g[(r, c)]);
                    sub_row_multiple(&mut g, i, r, &q);
                    sub_row_multiple(&mut t, i, r, &q);
                    done &= g[(i, c)].is_zero();
                }
                if done {
                    break;
                }
            }
            if g[(r, c)].is_zero() {
                continue;
            }
            if g[(r, c)].is_negative() {
                negate_row(&mut g, r);
                negate_row(&mut t, r);
            }
            for i in 0..r {
                let q = g[(i, c)].div_floor(&g[(r, c)]);
                if !q.is_zero() {
                    sub_row_multiple(&mut g, i, r, &q);
                    sub_row_multiple(&mut t, i, r, &q);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let hnf = (0..r).map(|i| g.row(i).iter().map(to_i64).collect()).collect();
        let transform = (0..r).map(|i| t.row(i).iter().map(to_i64).collect()).collect();
        Lattice { generators: generators.clone(), hnf, pivots, transform }
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators.rows()
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    /// Image `B w` of an integer coefficient vector.
    pub fn apply(&self, w: &[i64]) -> Vec<i64> {
        assert_eq!(w.len(), self.generators.cols());
        (0..self.generators.rows())
            .map(|i| {
                self.generators
                    .row(i)
                    .iter()
                    .zip(w)
                    .map(|(b, x)| to_i64(b) * x)
                    .sum()
            })
            .collect()
    }

    /// Split `v = reduced + B w` with `reduced` the canonical representative
    /// of `v + L`.
    pub fn reduce(&self, v: &[i64]) -> (Vec<i64>, Vec<i64>) {
        assert_eq!(v.len(), self.ambient_dim());
        let mut out = v.to_vec();
        let mut w = vec![0i64; self.generators.cols()];
        for (k, row) in self.hnf.iter().enumerate() {
            let p = self.pivots[k];
            let q = out[p].div_euclid(row[p]);
            if q == 0 {
                continue;
            }
            for (o, h) in out.iter_mut().zip(row) {
                *o -= q * h;
            }
            for (wj, tj) in w.iter_mut().zip(&self.transform[k]) {
                *wj += q * tj;
            }
        }
        (out, w)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coefficients `w` with `v = B w`, if `v` lies in the lattice. Unique
    /// when the generators are independent.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let (rest, w) = self.reduce(v);
        rest.iter().all(|&x| x == 0).then_some(w)
    }
}

fn sub_row_multiple(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for c in 0..m.cols() {
        let delta = &m[(source, c)] * q;
        m[(target, c)] -= delta;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols() {
        m[(r, c)] = -m[(r, c)].clone();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blow_up() -> Lattice {
        let b = IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]], 2);
        Lattice::from_columns(&b)
    }

    #[test]
    fn reduction_is_a_translate() {
        let l = blow_up();
        let v = vec![3, -2, 7, 1];
        let (red, w) = l.reduce(&v);
        let bw = l.apply(&w);
        for i in 0..4 {
            assert_eq!(v[i], red[i] + bw[i]);
        }
        // unimodular pivots: the first two coordinates are cleared
        assert_eq!(&red[..2], &[0, 0]);
    }

    #[test]
    fn membership() {
        let l = blow_up();
        assert!(l.contains(&[1, 0, -1, 0]));
        assert!(l.contains(&[1, 1, 0, -1]));
        assert!(!l.contains(&[1, 0, 0, 0]));
        assert_eq!(l.coordinates(&[2, -1, -3, 1]), Some(vec![2, -1]));
    }

    #[test]
    fn non_unit_pivots() {
        let b = IntMatrix::from_i64_rows(&[vec![2], vec![4]], 1);
        let l = Lattice::from_columns(&b);
        assert_eq!(l.reduce(&[5, 1]).0, vec![1, -7]);
        assert!(l.contains(&[-2, -4]));
        assert!(!l.contains(&[1, 2]));
    }
}
