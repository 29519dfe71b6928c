//! Dense matrices over an exact [`Scalar`] field: rank, inverse, null space.

use crate::field::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: &F) -> Self {
        Matrix::from_fn(rows, cols, |_, _| value.clone())
    }

    pub fn identity(n: usize, sample: &F) -> Self {
        let (zero, one) = (sample.zero_like(), sample.one_like());
        Matrix::from_fn(n, n, |r, c| if r == c { one.clone() } else { zero.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let zero = self.data[0].zero_like();
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(zero.clone(), |acc, k| {
                let a = self.get(r, k);
                if a.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(other.get(k, c)))
                }
            })
        })
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).add(other.get(r, c))
        })
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).sub(other.get(r, c))
        })
    }

    pub fn scale(&self, k: &F) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).mul(k))
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(v[0].zero_like(), |acc, c| {
                    acc.add(&self.get(r, c).mul(&v[c]))
                })
            })
            .collect()
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols))
            .fold(self.data[0].zero_like(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in 0..m.cols {
                let v = m.get(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = m.get(r, c).sub(&factor.mul(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let zero = self.data[0].zero_like();
        let one = zero.one_like();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![zero.clone(); self.cols];
                v[free] = one.clone();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(i, free).neg();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Vec<Vec<F>> {
        let (_, pivots) = self.rref();
        pivots
            .into_iter()
            .map(|c| (0..self.rows).map(|r| self.get(r, c).clone()).collect())
            .collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>]) -> Matrix<F> {
        let rows = cols[0].len();
        Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let one = self.data[0].one_like();
        let zero = one.zero_like();
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                one.clone()
            } else {
                zero.clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red.get(r, c + n).clone()))
    }
}
