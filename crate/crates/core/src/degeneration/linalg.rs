//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    cols: usize,
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            cols,
            rows: vec![vec![BigRational::zero(); cols]; rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        RationalMatrix { cols, rows }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        RationalMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.rows[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.rows[r]
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(found) = (next..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(next, found);
            let inv = BigRational::one() / &m[next][col];
            for v in m[next].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m[next].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == next || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &factor * p;
                    }
                }
            }
            pivots.push(col);
            next += 1;
            if next == m.len() {
                break;
            }
        }
        (
            RationalMatrix {
                cols: self.cols,
                rows: m,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[free] = BigRational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.rows[row][free].clone();
                }
                v
            })
            .collect()
    }

    /// `A x`.
    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}
