use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use super::rat::Rat;

/// Reduced row echelon form over the rationals, with the pivot column of each
/// nonzero row.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        for j in c..m.cols() {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..m.rows() {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..m.cols() {
                let delta = &f * &m[(r, j)];
                m[(i, j)] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Rank and a kernel basis (one vector per free column, read off the RREF).
pub fn rank_and_kernel(a: &RatMatrix) -> (usize, Vec<Vec<Rat>>) {
    let (red, pivots) = rref(a);
    let rank = pivots.len();
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); a.cols()];
            v[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -red[(row, f)].clone();
            }
            v
        })
        .collect();
    (rank, kernel)
}

/// Some solution of `a x = b`, free variables set to zero; `None` when the
/// system is inconsistent.
pub fn solve_linear(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let mut aug = RatMatrix::zeros(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols())] = b[i].clone();
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![Rat::zero(); a.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = red[(row, a.cols())].clone();
    }
    Some(x)
}

pub fn determinant(a: &RatMatrix) -> Rat {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let mut m = a.clone();
    let n = m.rows();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap_rows(p, c);
            det = -det;
        }
        let pivot = m[(c, c)].clone();
        det *= &pivot;
        for i in c + 1..n {
            if m[(i, c)].is_zero() {
                continue;
            }
            let f = &m[(i, c)] / &pivot;
            for j in c..n {
                let delta = &f * &m[(c, j)];
                m[(i, j)] -= delta;
            }
        }
    }
    det
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn int_determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat, rat_frac};

    fn rm(rows: &[Vec<i64>], cols: usize) -> RatMatrix {
        IntMatrix::from_i64_rows(rows, cols).to_rat()
    }

    #[test]
    fn zero_and_identity_ranks() {
        let (r, k) = rank_and_kernel(&RatMatrix::zeros(2, 3));
        assert_eq!((r, k.len()), (0, 3));
        let (r, k) = rank_and_kernel(&RatMatrix::identity(3));
        assert_eq!((r, k.len()), (3, 0));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = rm(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, -1, 2]], 4);
        let (r, k) = rank_and_kernel(&a);
        assert_eq!(r + k.len(), 4);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn extra_vertex_system() {
        // rows of the twice-blown-up ray matrix for the second and fourth rays
        let a = rm(&[vec![1, 1], vec![-1, 1]], 2);
        let z = solve_linear(&a, &[rat(1), rat(0)]).unwrap();
        assert_eq!(z, vec![rat_frac(1, 2), rat_frac(1, 2)]);
    }

    #[test]
    fn identity_and_inconsistent_systems() {
        let b = vec![rat(3), rat_frac(-2, 7)];
        assert_eq!(solve_linear(&RatMatrix::identity(2), &b), Some(b.clone()));
        let a = rm(&[vec![1], vec![1]], 1);
        assert_eq!(solve_linear(&a, &[rat(0), rat(1)]), None);
    }

    #[test]
    fn determinants_agree() {
        let rows = vec![vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]];
        let i = IntMatrix::from_i64_rows(&rows, 3);
        let d = int_determinant(&i);
        assert_eq!(Rat::from_integer(d.clone()), determinant(&i.to_rat()));
        assert_eq!(d, BigInt::from(-54));
        let sing = IntMatrix::from_i64_rows(&[vec![0, 1], vec![0, 2]], 2);
        assert!(int_determinant(&sing).is_zero());
    }
}
