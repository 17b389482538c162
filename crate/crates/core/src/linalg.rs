//! Exact linear algebra: rational row reduction and fraction-free determinants.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Pivots are 1, so the result is a canonical basis of the row space.
pub fn rref(rows: &mut Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].recip();
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &f * p;
                    }
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rank
}

/// Whether `v` lies in the row space of a matrix already in [`rref`] form.
pub fn in_row_space(basis: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    let mut v = v.to_vec();
    for row in basis {
        let Some(col) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if !v[col].is_zero() {
            let f = v[col].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &f * r;
            }
        }
    }
    v.iter().all(Zero::is_zero)
}

trait Exact: Clone + Zero + One + CheckedMul + CheckedSub + CheckedDiv + core::ops::Neg<Output = Self> {}
impl<T: Clone + Zero + One + CheckedMul + CheckedSub + CheckedDiv + core::ops::Neg<Output = T>> Exact for T {}

/// Bareiss elimination on a row-major `n x n` matrix; `None` on overflow.
fn bareiss<T: Exact>(mut a: Vec<T>, n: usize) -> Option<T> {
    if n == 0 {
        return Some(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return Some(T::zero());
            };
            for j in 0..n {
                a.swap(k * n + j, i * n + j);
            }
            negate = !negate;
        }
        let akk = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let x = a[i * n + j].checked_mul(&akk)?.checked_sub(&aik.checked_mul(&a[k * n + j])?)?;
                a[i * n + j] = x.checked_div(&prev)?;
            }
        }
        prev = akk;
    }
    let d = a[n * n - 1].clone();
    Some(if negate { -d } else { d })
}

/// Determinant of a square integer matrix given row-major.
pub fn det(entries: &[i64], n: usize) -> BigInt {
    debug_assert_eq!(entries.len(), n * n);
    let small: Vec<i128> = entries.iter().map(|&x| x as i128).collect();
    if let Some(d) = bareiss(small, n) {
        return BigInt::from(d);
    }
    let big: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
    bareiss(big, n).expect("BigInt elimination cannot overflow")
}

/// Determinant of a square matrix with arbitrary-precision entries.
pub fn det_big(entries: &[BigInt], n: usize) -> BigInt {
    bareiss(entries.to_vec(), n).expect("BigInt elimination cannot overflow")
}

/// Solves the square system `A x = b` (row-major `A`) by Cramer's rule; `None` if singular.
pub fn solve(a: &[i64], b: &[BigInt], n: usize) -> Option<Vec<BigRational>> {
    let d = det(a, n);
    if d.is_zero() {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    let big: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    for k in 0..n {
        let mut m = big.clone();
        for i in 0..n {
            m[i * n + k] = b[i].clone();
        }
        out.push(BigRational::new(det_big(&m, n), d.clone()));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&[], 0), BigInt::from(1));
        assert_eq!(det(&[1, 2, 3, 4], 2), BigInt::from(-2));
        assert_eq!(det(&[0, 1, 1, 0], 2), BigInt::from(-1));
        assert_eq!(det(&[2, 0, 1, 1, 3, 2, 1, 1, 2], 3), BigInt::from(6));
        assert_eq!(det(&[1, 2, 2, 4], 2), BigInt::from(0));
        let big = [i64::MAX, 1, 1, i64::MAX];
        let expected = BigInt::from(i64::MAX) * BigInt::from(i64::MAX) - 1;
        assert_eq!(det(&big, 2), expected);
    }

    #[test]
    fn row_reduction() {
        let mut rows = alloc::vec![
            alloc::vec![q(1), q(1), q(0)],
            alloc::vec![q(2), q(2), q(0)],
            alloc::vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rref(&mut rows), 2);
        assert_eq!(rows[0], [q(1), q(0), q(-1)]);
        assert!(in_row_space(&rows, &[q(1), q(2), q(1)]));
        assert!(!in_row_space(&rows, &[q(1), q(0), q(0)]));
    }

    #[test]
    fn cramer() {
        let x = solve(&[2, 1, 1, 3], &[BigInt::from(3), BigInt::from(5)], 2).unwrap();
        assert_eq!(x, [BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        assert!(solve(&[1, 1, 1, 1], &[BigInt::from(1), BigInt::from(1)], 2).is_none());
    }
}
