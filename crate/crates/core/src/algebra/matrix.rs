//! Dense vectors and matrices: rational ones for the one-particle space `H`,
//! polynomial ones for level-`n` operators on `H^{⊗n}`, and a float view
//! used only for norms and eigenvalues.

use std::ops::{Add, Mul};

use nalgebra::DMatrix;
use num_traits::{One, Zero};

use super::poly::{rational_to_f64, PolyScalar, Rational};
use crate::error::{Error, Result};

pub type RVector = Vec<Rational>;

pub fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Square rational matrix acting on `H = Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    dim: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn zeros(dim: usize) -> Self {
        RMatrix { dim, data: vec![Rational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Rational::one();
        }
        m
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("matrix rows must form a square".into()));
        }
        Ok(RMatrix { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.dim + j] = v;
    }

    pub fn apply(&self, x: &[Rational]) -> RVector {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j) * &x[j]).sum()).collect()
    }

    /// Column `j`, i.e. the image of the basis vector `e_j`.
    pub fn column(&self, j: usize) -> RVector {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &RMatrix) -> RMatrix {
        let d = self.dim;
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.data[i * d + j] = (0..d).map(|k| self.get(i, k) * o.get(k, j)).sum();
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| rational_to_f64(self.get(i, j)))
    }
}

/// Dense matrix with polynomial entries. Row/column `k` of a level-`n`
/// operator is the word whose base-`d` digits (first slot most significant)
/// spell `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<PolyScalar>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![PolyScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = PolyScalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PolyScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: PolyScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &PolyScalar) {
        self.data[i * self.cols + j] += v;
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn scale(&self, c: &PolyScalar) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// `self ⊗ I_d`.
    pub fn kron_identity(&self, d: usize) -> Self {
        let mut m = Self::zeros(self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                for k in 0..d {
                    m.set(i * d + k, j * d + k, v.clone());
                }
            }
        }
        m
    }

    pub fn try_mul(&self, o: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        m.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn eval(&self, alpha: &Rational, q: &Rational, t: &Rational) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.eval(alpha, q, t).into()).collect(),
        }
    }

    pub fn eval_f64(&self, alpha: f64, q: f64, t: f64) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval_f64(alpha, q, t))
    }

    /// Entries as canonical strings, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

impl Mul<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl Add<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Largest singular value.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    m.clone().symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Operator norm of `op` with respect to the inner product `<u, gram v>`
/// (`gram` symmetric positive definite): `|| L^T op L^{-T} ||_2` with
/// `gram = L L^T`.
pub fn weighted_operator_norm(op: &DMatrix<f64>, gram: &DMatrix<f64>) -> Option<f64> {
    let chol = gram.clone().cholesky()?;
    let l = chol.l();
    let lt = l.transpose();
    let lt_inv = lt.clone().try_inverse()?;
    Some(spectral_norm(&(lt * op * lt_inv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{rat, rat_int};

    #[test]
    fn rational_matrix_basics() {
        let j = RMatrix::diag(&[rat_int(1), rat_int(-1)]);
        assert!(j.is_symmetric());
        assert_eq!(j.mul(&j), RMatrix::identity(2));
        assert_eq!(j.apply(&[rat(1, 2), rat(3, 1)]), vec![rat(1, 2), rat(-3, 1)]);
        assert_eq!(dot(&[rat(1, 2), rat(1, 3)], &[rat(2, 1), rat(3, 1)]), rat(2, 1));
    }

    #[test]
    fn kron_and_product() {
        let mut a = PolyMatrix::zeros(1, 1);
        a.set(0, 0, PolyScalar::alpha());
        let k = a.kron_identity(2);
        assert_eq!(k.get(1, 1), &PolyScalar::alpha());
        assert!(k.get(0, 1).is_zero());
        let prod = &k * &PolyMatrix::identity(2);
        assert_eq!(prod, k);
        assert!(a.try_mul(&PolyMatrix::identity(2)).is_err());
    }

    #[test]
    fn float_helpers() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, -3.0]);
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-12);
        assert!((min_eigenvalue(&m) + 3.0).abs() < 1e-12);
        let g = DMatrix::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let op = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        // ||op||_g = sup <op v, g op v>^{1/2} / <v, g v>^{1/2} = 2 at v = e_2.
        assert!((weighted_operator_norm(&op, &g).unwrap() - 2.0).abs() < 1e-12);
    }
}
