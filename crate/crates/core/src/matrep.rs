//! Matrix representations and their block diagonalization.

use crate::algebra::NComplex;
use crate::error::{Error, Result};
use crate::spectral::{rotation_matrix, spectral_layout};

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("matrix rows must form a square".into()));
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Argument(format!("matrix sizes differ: {} vs {}", self.n, other.n)));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `M x` for a column vector.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// LU with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for c in 0..n {
            let piv = (c..n).max_by(|&i, &j| a[i * n + c].abs().total_cmp(&a[j * n + c].abs())).unwrap();
            if a[piv * n + c] == 0.0 {
                return 0.0;
            }
            if piv != c {
                for j in 0..n {
                    a.swap(c * n + j, piv * n + j);
                }
                det = -det;
            }
            let d = a[c * n + c];
            det *= d;
            for i in c + 1..n {
                let f = a[i * n + c] / d;
                if f != 0.0 {
                    for j in c..n {
                        a[i * n + j] -= f * a[c * n + j];
                    }
                }
            }
        }
        det
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Row `i` holds the coefficients of `h_i * u`.
pub fn representation_matrix(u: &NComplex) -> Matrix {
    let alg = u.algebra();
    let n = alg.n();
    let x = u.coeffs();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for (j, xj) in x.iter().enumerate() {
            let (s, l) = alg.table(i, j);
            m.data[i * n + l] += f64::from(s) * xj;
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq)]
pub enum Block {
    Line(f64),
    /// `[[v, v~], [-v~, v]]`.
    Plane([[f64; 2]; 2]),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiagonal {
    pub matrix: Matrix,
    pub blocks: Vec<Block>,
    /// Largest entry outside the diagonal blocks.
    pub off_block: f64,
}

/// `T U T^t` with `T` the orthonormal rotation matrix.
pub fn block_diagonalize(u: &NComplex) -> BlockDiagonal {
    let alg = u.algebra();
    let t = rotation_matrix(alg);
    let w = t
        .mul(&representation_matrix(u))
        .and_then(|m| m.mul(&t.transpose()))
        .expect("same dimension");
    let layout = spectral_layout(alg);
    let n = alg.n();
    let mut owner = vec![0usize; n];
    let mut blocks = Vec::with_capacity(layout.lines + layout.planes);
    for (i, o) in owner.iter_mut().enumerate().take(layout.lines) {
        *o = i;
        blocks.push(Block::Line(w.get(i, i)));
    }
    for k in 0..layout.planes {
        let i = layout.lines + 2 * k;
        owner[i] = layout.lines + k;
        owner[i + 1] = layout.lines + k;
        blocks.push(Block::Plane([[w.get(i, i), w.get(i, i + 1)], [w.get(i + 1, i), w.get(i + 1, i + 1)]]));
    }
    let mut off_block: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if owner[i] != owner[j] {
                off_block = off_block.max(w.get(i, j).abs());
            }
        }
    }
    BlockDiagonal { matrix: w, blocks, off_block }
}
