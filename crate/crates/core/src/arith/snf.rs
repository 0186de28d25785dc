use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == d`, with `u`, `v` unimodular and `d` diagonal with
/// nonnegative entries `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn add_row_multiple(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    for c in 0..m.cols() {
        let delta = &m[(source, c)] * factor;
        m[(target, c)] += delta;
    }
}

fn add_col_multiple(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    for r in 0..m.rows() {
        let delta = &m[(r, source)] * factor;
        m[(r, target)] += delta;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols() {
        m[(r, c)] = -m[(r, c)].clone();
    }
}

/// Smallest nonzero absolute value in the trailing submatrix starting at
/// `(t, t)`; ties go to the lowest `(row, col)`.
fn pick_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = pick_pivot(&d, t) else {
                return SnfResult { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                add_row_multiple(&mut d, i, t, &q);
                add_row_multiple(&mut u, i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&pivot);
                add_col_multiple(&mut d, j, t, &q);
                add_col_multiple(&mut v, j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; it becomes the next pivot
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    add_row_multiple(&mut d, t, i, &BigInt::one());
                    add_row_multiple(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SnfResult { d, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::linalg::int_determinant;

    fn m(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
        IntMatrix::from_i64_rows(rows, cols)
    }

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(r.u.mul(a).mul(&r.v), r.d);
        assert!(int_determinant(&r.u).abs().is_one());
        assert!(int_determinant(&r.v).abs().is_one());
        for i in 0..r.d.rows() {
            for j in 0..r.d.cols() {
                if i != j {
                    assert!(r.d[(i, j)].is_zero());
                }
            }
        }
        let diag = r.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        r
    }

    #[test]
    fn blow_up_ray_matrix_has_free_cokernel() {
        let b = m(&[vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]], 2);
        let r = check(&b);
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(r.rank(), 2);
    }

    #[test]
    fn identity_and_scalar() {
        let r = check(&IntMatrix::identity(3));
        assert_eq!(r.d, IntMatrix::identity(3));
        let r = check(&m(&[vec![2]], 1));
        assert_eq!(r.diagonal(), vec![BigInt::from(2)]);
    }

    #[test]
    fn torsion_and_divisibility() {
        let r = check(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3));
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let r = check(&m(&[vec![2, 0], vec![0, 3]], 2));
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let r = check(&IntMatrix::zeros(2, 3));
        assert_eq!(r.rank(), 0);
    }
}
