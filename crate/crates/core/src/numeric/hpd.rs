use num_complex::Complex;

use super::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hermiticity tolerance on entries, relative to `max(1, max |m_ij|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive.
pub const PD_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns ascending eigenvalues and the unitary whose columns
/// are the matching eigenvectors.
pub fn hermitian_eigen<T: Real>(m: &CMatrix<T>) -> Result<(Vec<T>, CMatrix<T>)> {
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm().max(T::min_positive_value());
    let target = T::epsilon() * T::lit(0.5) * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= T::min_positive_value() {
                    continue;
                }
                let phase = apq / g;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (T::lit(2.0) * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) * real rotation, acting on (p, q).
                let mut j = CMatrix::identity(n);
                j[(p, p)] = Complex::new(c, T::zero());
                j[(p, q)] = Complex::new(s, T::zero());
                j[(q, p)] = phase.conj() * (-s);
                j[(q, q)] = phase.conj() * c;
                a = j.adjoint().matmul(&a).matmul(&j);
                v = v.matmul(&j);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target * T::lit(1e3) {
        return Err(Error::NoConvergence("Jacobi eigen-decomposition"));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.partial_cmp(&a[(y, y)].re).unwrap());
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, |r, col| v[(r, order[col])]);
    Ok((values, vectors))
}

fn off_diagonal_norm<T: Real>(a: &CMatrix<T>) -> T {
    let n = a.dim();
    let mut sum = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// A validated Hermitian positive definite matrix with its spectral
/// decomposition cached.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianPD<T: Real> {
    matrix: CMatrix<T>,
    vectors: CMatrix<T>,
    values: Vec<T>,
}

impl<T: Real> HermitianPD<T> {
    /// Validates `m` and decomposes it from scratch.
    pub fn new(m: CMatrix<T>) -> Result<Self> {
        let dev = m.hermitian_deviation();
        if dev > T::tol(HERMITIAN_TOL) * m.max_abs().max(T::one()) {
            return Err(Error::NotHermitian(dev.as_f64()));
        }
        let (values, vectors) = hermitian_eigen(&m)?;
        let smallest = values.first().copied().unwrap_or_else(T::one);
        if !(smallest > T::lit(PD_TOL)) {
            return Err(Error::NotPositiveDefinite(smallest.as_f64()));
        }
        Ok(Self {
            matrix: m.hermitian_part(),
            vectors,
            values,
        })
    }

    /// Builds `U diag(values) U*` from a known unitary and positive spectrum.
    pub fn from_spectral(vectors: CMatrix<T>, values: Vec<T>) -> Result<Self> {
        if vectors.dim() != values.len() {
            return Err(Error::Dimension("spectrum length differs from matrix size".into()));
        }
        if let Some(bad) = values.iter().find(|v| !(**v > T::lit(PD_TOL))) {
            return Err(Error::NotPositiveDefinite(bad.as_f64()));
        }
        let matrix = spectral_product(&vectors, &values, T::one());
        Ok(Self {
            matrix,
            vectors,
            values,
        })
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.values
    }

    pub fn eigenvectors(&self) -> &CMatrix<T> {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Primary power `U D^p U*` from the cached decomposition.
    pub fn power(&self, p: T) -> HermitianPD<T> {
        let values: Vec<T> = self.values.iter().map(|v| v.powf(p)).collect();
        HermitianPD {
            matrix: spectral_product(&self.vectors, &self.values, p),
            vectors: self.vectors.clone(),
            values,
        }
    }

    pub fn power_matrix(&self, p: T) -> CMatrix<T> {
        if p == T::one() {
            return self.matrix.clone();
        }
        spectral_product(&self.vectors, &self.values, p)
    }

    /// Relative Frobenius error of `U D U*` against the stored entries.
    pub fn reconstruction_error(&self) -> T {
        let rebuilt = spectral_product(&self.vectors, &self.values, T::one());
        rebuilt.sub(&self.matrix).frobenius_norm() / self.matrix.frobenius_norm()
    }
}

/// Primary matrix power of a positive definite matrix.
pub fn primary_power<T: Real>(m: &HermitianPD<T>, p: T) -> HermitianPD<T> {
    m.power(p)
}

fn spectral_product<T: Real>(u: &CMatrix<T>, values: &[T], p: T) -> CMatrix<T> {
    let n = u.dim();
    let d: Vec<T> = values.iter().map(|v| if p == T::one() { *v } else { v.powf(p) }).collect();
    let m = CMatrix::from_fn(n, |i, j| {
        (0..n).fold(Complex::default(), |acc, k| acc + u[(i, k)] * d[k] * u[(j, k)].conj())
    });
    m.hermitian_part()
}
