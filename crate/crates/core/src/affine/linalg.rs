//! Exact linear algebra over integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row echelon form computed by fraction-free (Bareiss) elimination.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

/// `matrix` is row-major with `cols` columns.
pub(crate) fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots }
}

pub(crate) fn rank(matrix: Vec<Vec<BigInt>>, cols: usize) -> usize {
    bareiss(matrix, cols).pivots.len()
}

/// A nonzero kernel vector when the kernel is one-dimensional.
pub(crate) fn kernel_vector(matrix: Vec<Vec<BigInt>>, cols: usize) -> Option<Vec<BigRational>> {
    let ech = bareiss(matrix, cols);
    if ech.pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !ech.pivots.contains(c))?;
    let mut x = vec![BigRational::zero(); cols];
    x[free] = BigRational::one();
    for (i, &p) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[i];
        let mut acc = BigRational::zero();
        for j in p + 1..cols {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc += BigRational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[p] = -acc / BigRational::from_integer(row[p].clone());
    }
    Some(x)
}

/// Determinant by Gaussian elimination over the rationals.
pub(crate) fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            for j in c..n {
                let delta = &factor * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

pub(crate) fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = int_matrix(&[&[0, 2, 4, 1], &[0, 1, 2, 1], &[0, 3, 6, 2]]);
        assert_eq!(rank(m, 4), 2);
        let id = int_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rank(id, 3), 3);
        assert_eq!(rank(int_matrix(&[&[0, 0], &[0, 0]]), 2), 0);
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        // Columns (1,0), (0,1), (1,1): kernel spanned by (1, 1, -1).
        let m = int_matrix(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = kernel_vector(m, 3).unwrap();
        assert_eq!(x, vec![q(-1, 1), q(-1, 1), q(1, 1)]);
        assert!(kernel_vector(int_matrix(&[&[1, 0], &[0, 1]]), 2).is_none());
    }

    #[test]
    fn determinant_small_cases() {
        let m = vec![vec![q(1, 2), q(1, 1)], vec![q(3, 1), q(4, 1)]];
        assert_eq!(determinant(m), q(-1, 1));
        let swap = vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]];
        assert_eq!(determinant(swap), q(-1, 1));
    }
}
