//! Dense matrices over exact scalars, with fraction Gaussian elimination.

use crate::exterior::PForm;
use crate::scalar::Scalar;
use crate::Result;
use std::fmt;

/// Row-major matrix over [`Scalar`].  Columns are images of basis vectors
/// when the matrix represents a linear map.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    a: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            a: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, a: Vec<Scalar>) -> Self {
        assert_eq!(a.len(), rows * cols);
        Matrix { rows, cols, a }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut a = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            a.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            a,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Integer diagonal matrix.
    pub fn diag(entries: &[i64]) -> Self {
        let mut m = Matrix::zero(entries.len(), entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, Scalar::from_int(v));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                acc += &(x * other.get(k, j));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let x = self.get(i, k);
                    if !x.is_zero() && !v[k].is_zero() {
                        acc += &(x * &v[k]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|v| v.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced row echelon form; returns (rref, rank, det-if-square).
    fn eliminate(&self) -> (Matrix, usize, Scalar) {
        let mut m = self.clone();
        let mut det = Scalar::one();
        let mut rank = 0usize;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if piv != rank {
                for j in 0..m.cols {
                    let x = m.get(rank, j).clone();
                    let y = m.get(piv, j).clone();
                    m.set(rank, j, y);
                    m.set(piv, j, x);
                }
                det = -det;
            }
            let pivot = m.get(rank, col).clone();
            det *= &pivot;
            let inv = pivot.inv();
            for j in col..m.cols {
                let v = m.get(rank, j) * &inv;
                m.set(rank, j, v);
            }
            for r in 0..m.rows {
                if r != rank && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in col..m.cols {
                        let v = m.get(r, j) - &(&factor * m.get(rank, j));
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        if rank < self.rows.min(self.cols) || self.rows != self.cols {
            det = Scalar::zero();
        }
        (m, rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        if self.rows == 0 {
            return Scalar::one();
        }
        self.eliminate().2
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (red, rank, _) = aug.eliminate();
        if rank < n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| red.get(i, n + j).clone()))
    }

    /// Basis of the kernel (right null space).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (red, rank, _) = self.eliminate();
        // locate pivot columns
        let mut pivots = Vec::with_capacity(rank);
        let mut col = 0usize;
        for r in 0..rank {
            while col < self.cols && red.get(r, col).is_zero() {
                col += 1;
            }
            pivots.push(col);
            col += 1;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -red.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b`; returns one solution if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (red, _, _) = aug.eliminate();
        let mut x = vec![Scalar::zero(); self.cols];
        for r in 0..self.rows {
            let mut lead = None;
            for j in 0..self.cols {
                if !red.get(r, j).is_zero() {
                    lead = Some(j);
                    break;
                }
            }
            match lead {
                Some(j) => x[j] = red.get(r, self.cols).clone(),
                None => {
                    if !red.get(r, self.cols).is_zero() {
                        return None; // inconsistent
                    }
                }
            }
        }
        Some(x)
    }

    /// Pullback of a form along this matrix (columns = images).
    pub fn pullback_form(&self, alpha: &PForm) -> Result<PForm> {
        alpha.pullback(self)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_f64()).collect())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
