//! Dense exact linear algebra over the scalar field.
//!
//! Matrices here are small (fixed-point bases at desk scale), so plain
//! Gauss-Jordan with exact arithmetic is the right tool.

use super::scalar::ExactScalar;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<ExactScalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ExactScalar::one();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut ExactScalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn add(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = &*a + b;
        }
        out
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = &*a - b;
        }
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> DenseMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = out.at_mut(r, c);
                    *slot = &*slot + &(a * b);
                }
            }
        }
        out
    }

    /// Solve `self * X = B`; errors if the matrix is singular.
    pub fn solve(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.clone();
        for col in 0..n {
            // pivot: prefer the structurally simplest nonzero entry
            let pivot = (col..n)
                .filter(|&r| !a.at(r, col).is_zero())
                .min_by_key(|&r| {
                    a.at(r, col).numerator().num_terms() + a.at(r, col).denominator().num_terms()
                });
            let pivot = match pivot {
                Some(p) => p,
                None => {
                    return Err(Error::WallSolveSingular(format!(
                        "singular at column {}",
                        col
                    )))
                }
            };
            if pivot != col {
                for c in 0..n {
                    a.data.swap(col * n + c, pivot * n + c);
                }
                for c in 0..x.cols {
                    x.data.swap(col * x.cols + c, pivot * x.cols + c);
                }
            }
            let inv = a.at(col, col).inv()?;
            for c in 0..n {
                let v = &*a.at(col, c) * &inv;
                *a.at_mut(col, c) = v;
            }
            for c in 0..x.cols {
                let v = &*x.at(col, c) * &inv;
                *x.at_mut(col, c) = v;
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for c in 0..n {
                    let v = &*a.at(r, c) - &(&factor * a.at(col, c));
                    *a.at_mut(r, c) = v;
                }
                for c in 0..x.cols {
                    let v = &*x.at(r, c) - &(&factor * x.at(col, c));
                    *x.at_mut(r, c) = v;
                }
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        self.solve(&DenseMatrix::identity(self.rows))
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..a.cols {
            let pivot = (row..a.rows).find(|&r| !a.at(r, col).is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            if pivot != row {
                for c in 0..a.cols {
                    a.data.swap(row * a.cols + c, pivot * a.cols + c);
                }
            }
            let inv = a.at(row, col).inv().unwrap();
            for c in 0..a.cols {
                let v = &*a.at(row, c) * &inv;
                *a.at_mut(row, c) = v;
            }
            for r in 0..a.rows {
                if r == row || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for c in 0..a.cols {
                    let v = &*a.at(r, c) - &(&factor * a.at(row, c));
                    *a.at_mut(r, c) = v;
                }
            }
            rank += 1;
            row += 1;
            if row == a.rows {
                break;
            }
        }
        rank
    }
}

/// Solve the least-structured linear system `Σ_j c_j M_j = X` for scalars
/// `c_j`, where the `M_j` and `X` are matrices flattened entrywise. Returns
/// `None` when the system is inconsistent or underdetermined entries remain.
pub fn solve_in_span(basis: &[DenseMatrix], target: &DenseMatrix) -> Option<Vec<ExactScalar>> {
    if basis.is_empty() {
        return if target.is_zero() { Some(vec![]) } else { None };
    }
    let cells = target.rows * target.cols;
    let n = basis.len();
    // normal-system-free approach: row reduce the (cells x n) system
    let mut a = DenseMatrix::zeros(cells, n);
    let mut b = DenseMatrix::zeros(cells, 1);
    for i in 0..cells {
        for (j, m) in basis.iter().enumerate() {
            *a.at_mut(i, j) = m.data[i].clone();
        }
        *b.at_mut(i, 0) = target.data[i].clone();
    }
    // Gaussian elimination on rectangular system
    let mut row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..n {
        let pivot = (row..cells).find(|&r| !a.at(r, col).is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        if pivot != row {
            for c in 0..n {
                a.data.swap(row * n + c, pivot * n + c);
            }
            b.data.swap(row, pivot);
        }
        let inv = a.at(row, col).inv().ok()?;
        for c in 0..n {
            let v = &*a.at(row, c) * &inv;
            *a.at_mut(row, c) = v;
        }
        let v = &*b.at(row, 0) * &inv;
        *b.at_mut(row, 0) = v;
        for r in 0..cells {
            if r == row || a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col).clone();
            for c in 0..n {
                let v = &*a.at(r, c) - &(&factor * a.at(row, c));
                *a.at_mut(r, c) = v;
            }
            let v = &*b.at(r, 0) - &(&factor * b.at(row, 0));
            *b.at_mut(r, 0) = v;
        }
        pivots.push((row, col));
        row += 1;
        if row == cells {
            break;
        }
    }
    // consistency: rows beyond the pivot rows must have zero rhs
    for r in row..cells {
        if !b.at(r, 0).is_zero() {
            return None;
        }
    }
    let mut coeffs = vec![ExactScalar::zero(); n];
    for (r, c) in pivots {
        coeffs[c] = b.at(r, 0).clone();
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Var;

    #[test]
    fn inverse_roundtrip() {
        let q = ExactScalar::var(Var::Q);
        let mut m = DenseMatrix::identity(2);
        *m.at_mut(0, 1) = q.clone();
        *m.at_mut(1, 0) = ExactScalar::from_int(3);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), DenseMatrix::identity(2));
    }

    #[test]
    fn singular_detected() {
        let mut m = DenseMatrix::zeros(2, 2);
        *m.at_mut(0, 0) = ExactScalar::one();
        assert!(m.inverse().is_err());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn span_solve() {
        let mut m1 = DenseMatrix::zeros(2, 2);
        *m1.at_mut(0, 0) = ExactScalar::one();
        let mut m2 = DenseMatrix::zeros(2, 2);
        *m2.at_mut(1, 1) = ExactScalar::one();
        let q = ExactScalar::var(Var::Q);
        let target = m1.scale(&q).add(&m2.scale(&ExactScalar::from_int(5)));
        let c = solve_in_span(&[m1, m2], &target).unwrap();
        assert_eq!(c[0], q);
        assert_eq!(c[1], ExactScalar::from_int(5));
        // inconsistent target
        let mut bad = DenseMatrix::zeros(2, 2);
        *bad.at_mut(0, 1) = ExactScalar::one();
        let m1 = {
            let mut m = DenseMatrix::zeros(2, 2);
            *m.at_mut(0, 0) = ExactScalar::one();
            m
        };
        assert!(solve_in_span(&[m1], &bad).is_none());
    }
}
