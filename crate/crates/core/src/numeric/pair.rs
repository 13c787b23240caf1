use num_complex::Complex;

use super::{eig_general, CMatrix, HermitianPD};
use crate::error::{Error, Result};
use crate::gword::{Letter, Word};
use crate::scalar::Real;
use crate::trace::Parameterization;

/// Diagonal entries for a parameterized pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagonalValues<T> {
    /// `A = diag(1, x1, y1)`, `E = diag(1, x2, y2)`.
    General { x1: T, y1: T, x2: T, y2: T },
    /// `A = diag(1, x, epsilon)`, `E = diag(1, y, epsilon)`.
    Positive { x: T, y: T, epsilon: T },
}

impl<T: Real> DiagonalValues<T> {
    fn diagonals(&self) -> ([T; 3], [T; 3]) {
        match *self {
            DiagonalValues::General { x1, y1, x2, y2 } => {
                ([T::one(), x1, y1], [T::one(), x2, y2])
            }
            DiagonalValues::Positive { x, y, epsilon } => {
                ([T::one(), x, epsilon], [T::one(), y, epsilon])
            }
        }
    }
}

/// `A = diag(...)` and `B = S E conj(S)`, both as validated PD matrices.
pub fn build_pair<T: Real>(
    param: &Parameterization<T>,
    values: DiagonalValues<T>,
) -> Result<(HermitianPD<T>, HermitianPD<T>)> {
    let (a, e) = values.diagonals();
    if a.iter().chain(&e).any(|v| !(*v > T::zero())) {
        return Err(Error::NonPositivePoint);
    }
    let a = HermitianPD::from_spectral(CMatrix::identity(3), a.to_vec())?;
    // conj(S) = S* for symmetric unitary S, so the columns of S are the
    // eigenvectors of B.
    let b = HermitianPD::from_spectral(param.s().clone(), e.to_vec())?;
    Ok((a, b))
}

/// Left-to-right product of the primary powers named by the word's blocks.
pub fn evaluate_word<T: Real>(word: &Word, a: &HermitianPD<T>, b: &HermitianPD<T>) -> CMatrix<T> {
    let n = a.dim();
    word.blocks()
        .iter()
        .fold(CMatrix::identity(n), |acc, block| {
            let m = match block.letter {
                Letter::A => a,
                Letter::B => b,
            };
            acc.matmul(&m.power_matrix(T::lit(block.exponent.to_f64())))
        })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport<T: Real> {
    pub all_positive: bool,
    /// `None` when the eigensolver failed and the verdict rests on the trace.
    pub eigenvalues: Option<Vec<Complex<T>>>,
    pub im_trace: T,
}

/// Whether every eigenvalue of the evaluated word is (numerically) real
/// and positive.
pub fn spectrum_check<T: Real>(
    word: &Word,
    a: &HermitianPD<T>,
    b: &HermitianPD<T>,
    tol: T,
) -> SpectrumReport<T> {
    let m = evaluate_word(word, a, b);
    let im_trace = m.trace().im;
    match eig_general(&m) {
        Ok(values) => {
            let all_positive = values
                .iter()
                .all(|l| l.im.abs() <= tol * (T::one() + l.norm()) && l.re > tol);
            SpectrumReport {
                all_positive,
                eigenvalues: Some(values),
                im_trace,
            }
        }
        Err(_) => SpectrumReport {
            all_positive: im_trace.abs() <= tol,
            eigenvalues: None,
            im_trace,
        },
    }
}
