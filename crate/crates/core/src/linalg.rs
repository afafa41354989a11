//! Dense exact linear algebra over ℚ.

use num_traits::{One, Zero};

use crate::series::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// One solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Rational congruence diagonalization of a symmetric matrix.
    ///
    /// Returns `(lambdas, p)` with `p` invertible and `p^T * self * p` diagonal
    /// with entries `lambdas` (nonzero entries first). The columns of `p` are
    /// the new coordinates expressed in the old ones.
    pub fn diagonalize_symmetric(&self) -> (Vec<Rational>, Matrix) {
        assert!(self.is_symmetric(), "matrix is not symmetric");
        let n = self.rows;
        let mut a = self.clone();
        let mut p = Self::identity(n);
        let mut k = 0;
        while k < n {
            // find a nonzero diagonal pivot, or manufacture one from an off-diagonal entry
            let piv = (k..n).find(|&i| !a.get(i, i).is_zero());
            let piv = match piv {
                Some(i) => i,
                None => {
                    let Some((i, j)) = (k..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !a.get(i, j).is_zero())
                    else {
                        break;
                    };
                    // e_i <- e_i + e_j gives diagonal 2 a_ij
                    a.add_congruence(i, j, &Rational::one());
                    p.add_col(i, j, &Rational::one());
                    i
                }
            };
            a.swap_congruence(k, piv);
            p.swap_cols(k, piv);
            let d = a.get(k, k).clone();
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let f = -(a.get(i, k) / &d);
                a.add_congruence(i, k, &f);
                p.add_col(i, k, &f);
            }
            k += 1;
        }
        let lambdas = (0..n).map(|i| a.get(i, i).clone()).collect();
        (lambdas, p)
    }

    /// Column `i` += f * column `j`, then row `i` += f * row `j`.
    fn add_congruence(&mut self, i: usize, j: usize, f: &Rational) {
        for r in 0..self.rows {
            let v = self.get(r, i) + f * self.get(r, j);
            self.set(r, i, v);
        }
        for c in 0..self.cols {
            let v = self.get(i, c) + f * self.get(j, c);
            self.set(i, c, v);
        }
    }

    fn swap_congruence(&mut self, a: usize, b: usize) {
        self.swap_rows(a, b);
        self.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn add_col(&mut self, i: usize, j: usize, f: &Rational) {
        for r in 0..self.rows {
            let v = self.get(r, i) + f * self.get(r, j);
            self.set(r, i, v);
        }
    }
}
