//! Dense matrices over exact rationals, with a fraction-free determinant.
//!
//! The public indexing is 1-based to match the usual determinant-formula
//! conventions; formula transcriptions in this crate never touch raw storage
//! offsets, which is where off-by-one defects would otherwise creep in.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};

/// A rectangular matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    /// Builds a matrix from `f(i, j)` with 1-based `i in 1..=rows`,
    /// `j in 1..=cols`.
    pub fn from_fn1<F>(rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> BigRational,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::RaggedRows);
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigRational::from_integer).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn1(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "entry ({i}, {j}) outside {}x{} matrix",
            self.rows,
            self.cols
        );
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (1..=self.rows).all(|i| {
                (1..=self.cols).all(|j| {
                    let e = self.entry(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Exact matrix product.
    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        Ok(Self::from_fn1(self.rows, rhs.cols, |i, j| {
            (1..=self.cols)
                .map(|k| self.entry(i, k) * rhs.entry(k, j))
                .sum()
        }))
    }

    /// Copy with 1-based `row` and `col` struck out.
    pub fn strike(&self, row: usize, col: usize) -> Result<ExactMatrix> {
        if !(1..=self.rows).contains(&row) {
            return Err(Error::IndexOutOfRange {
                index: row,
                max: self.rows,
            });
        }
        if !(1..=self.cols).contains(&col) {
            return Err(Error::IndexOutOfRange {
                index: col,
                max: self.cols,
            });
        }
        let pick = |i: usize, bound: usize| if i < bound { i } else { i + 1 };
        Ok(Self::from_fn1(self.rows - 1, self.cols - 1, |i, j| {
            self.entry(pick(i, row), pick(j, col)).clone()
        }))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Denominators are cleared row by row first, so the elimination itself
    /// runs entirely over integers; the empty matrix has determinant 1.
    pub fn bareiss_det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut scale = BigInt::one();
        let mut work: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for i in 1..=self.rows {
            let lcm = (1..=self.cols).fold(BigInt::one(), |acc, j| {
                acc.lcm(self.entry(i, j).denom())
            });
            work.push(
                (1..=self.cols)
                    .map(|j| {
                        let e = self.entry(i, j);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect(),
            );
            scale *= lcm;
        }
        Ok(BigRational::new(int_bareiss_det(work), scale))
    }

    /// Exact inverse by Gauss-Jordan elimination over rationals.
    ///
    /// This is the generic oracle route; the closed-form inverse in
    /// [`crate::binomial_matrix`] is checked against it.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (1..=n)
            .map(|i| (1..=n).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = &factor * &a[col][j];
                    a[r][j] -= t;
                    let t = &factor * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
        ExactMatrix::from_rows(inv)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = texts.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", texts[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Fraction-free determinant of an integer matrix (consumes the buffer).
///
/// One-step Bareiss elimination: every division below is exact, and all
/// intermediate values are themselves minors of the input, which keeps the
/// growth polynomial instead of exponential.
pub(crate) fn int_bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let lead = std::mem::replace(&mut row[k], BigInt::zero());
            for j in k + 1..n {
                let val = &row[j] * &pivot_row[k] - &lead * &pivot_row[j];
                row[j] = val / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign_flip {
        -det
    } else {
        det
    }
}
