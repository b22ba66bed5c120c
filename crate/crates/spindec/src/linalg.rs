//! Exact dense linear algebra over the rationals.
//!
//! Plain Gaussian elimination; with exact arithmetic the only pivoting need
//! is a nonzero entry. Square and overdetermined-consistent systems both
//! yield the unique solution; rank deficiency and inconsistency are errors.

use crate::rational::BigRational;
use crate::Error;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

/// Row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch { expected: ncols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols: ncols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum())
            .collect()
    }
}

/// Solve A x = b exactly. A must have at least as many rows as columns;
/// extra rows must be consistent with the unique solution.
pub fn solve(a: &Matrix, b: &[BigRational]) -> Result<Vec<BigRational>, Error> {
    if b.len() != a.rows || a.rows < a.cols {
        return Err(Error::ShapeMismatch { expected: a.rows, found: b.len() });
    }
    let n = a.cols;
    let mut m = a.clone();
    let mut rhs = b.to_vec();

    let mut pivot_row = 0;
    for col in 0..n {
        let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
        let Some(src) = found else {
            return Err(Error::Singular);
        };
        if src != pivot_row {
            for c in 0..n {
                let tmp = m.get(src, c).clone();
                m.set(src, c, m.get(pivot_row, c).clone());
                m.set(pivot_row, c, tmp);
            }
            rhs.swap(src, pivot_row);
        }
        let inv = {
            let p = m.get(pivot_row, col).clone();
            BigRational::new(p.denom().clone(), p.numer().clone())
        };
        for r in (pivot_row + 1)..m.rows {
            if m.get(r, col).is_zero() {
                continue;
            }
            let factor = m.get(r, col) * &inv;
            for c in col..n {
                let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                m.set(r, c, v);
            }
            let v = &rhs[r] - &factor * &rhs[pivot_row];
            rhs[r] = v;
        }
        pivot_row += 1;
    }

    // leftover rows are all-zero on the left; they must be zero on the right
    for r in n..m.rows {
        if !rhs[r].is_zero() {
            return Err(Error::Inconsistent);
        }
    }

    let mut x = vec![BigRational::zero(); n];
    for col in (0..n).rev() {
        let mut acc = rhs[col].clone();
        for c in (col + 1)..n {
            acc -= m.get(col, c) * &x[c];
        }
        x[col] = acc / m.get(col, col);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn identity_passthrough() {
        let mut a = Matrix::zeros(2, 2);
        a.set(0, 0, int(1));
        a.set(1, 1, int(1));
        let b = vec![frac(3, 2), int(-1)];
        assert_eq!(solve(&a, &b).unwrap(), b);
    }

    #[test]
    fn diagonal_inverse() {
        let mut a = Matrix::zeros(2, 2);
        a.set(0, 0, int(2));
        a.set(1, 1, int(4));
        let x = solve(&a, &[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![frac(1, 2), frac(1, 4)]);
    }

    #[test]
    fn hilbert_like_recovery() {
        // A[i][j] = 1/(i+j+1); multiply a known vector, then recover it.
        let n = 10;
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, frac(1, (i + j + 1) as i64));
            }
        }
        let x: Vec<_> = (0..n).map(|i| frac(i as i64 - 4, 3)).collect();
        let b = a.mul_vec(&x);
        assert_eq!(solve(&a, &b).unwrap(), x);
    }

    #[test]
    fn singular_and_inconsistent() {
        let a = Matrix::from_rows(vec![
            vec![int(1), int(2)],
            vec![int(2), int(4)],
        ])
        .unwrap();
        assert_eq!(solve(&a, &[int(1), int(2)]), Err(crate::Error::Singular));

        // overdetermined, contradictory third row
        let a = Matrix::from_rows(vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ])
        .unwrap();
        assert_eq!(solve(&a, &[int(1), int(2), int(4)]), Err(crate::Error::Inconsistent));
        assert_eq!(solve(&a, &[int(1), int(2), int(3)]).unwrap(), vec![int(1), int(2)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn solve_recovers_random_vector(seed in any::<u64>(), n in 1usize..20) {
            // deterministic pseudo-random rationals from the seed
            let mut state = seed | 1;
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let v = ((state >> 33) % 19) as i64 - 9;
                let d = ((state >> 17) % 7) as i64 + 1;
                frac(v, d)
            };
            let mut a = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, next());
                }
            }
            let x: Vec<_> = (0..n).map(|_| next()).collect();
            let b = a.mul_vec(&x);
            match solve(&a, &b) {
                Ok(got) => prop_assert_eq!(got, x),
                Err(crate::Error::Singular) => {} // random matrix happened to be singular
                Err(e) => return Err(TestCaseError::fail(alloc::format!("{e}"))),
            }
        }
    }
}
