use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, HermitianPD};
use crate::scalar::Real;

/// Haar-distributed unitary of size `n`, reproducible from `seed`.
pub fn haar_unitary<T: Real>(n: usize, seed: u64) -> CMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_unitary_with(n, &mut rng)
}

/// Haar-distributed unitary drawn from an existing generator.
///
/// A complex Gaussian matrix is QR-factored by Householder reflections and
/// the phases of `R`'s diagonal are pushed into `Q`.
pub fn haar_unitary_with<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix<T> {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut r = CMatrix::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(T::lit(re * half), T::lit(im * half))
    });
    let mut q = CMatrix::<T>::identity(n);

    for k in 0..n.saturating_sub(1) {
        let x: Vec<Complex<T>> = (k..n).map(|i| r[(i, k)]).collect();
        let norm = x.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        if norm <= T::min_positive_value() {
            continue;
        }
        let phase = if x[0].norm() > T::zero() {
            x[0] / x[0].norm()
        } else {
            Complex::new(T::one(), T::zero())
        };
        let mut v = x;
        v[0] += phase * norm;
        let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        for c in &mut v {
            *c /= vnorm;
        }
        // H = I - 2 v v*; apply on the left of R and the right of Q.
        for j in 0..n {
            let dot = (k..n).fold(Complex::<T>::default(), |acc, i| acc + v[i - k].conj() * r[(i, j)]);
            for i in k..n {
                let delta = v[i - k] * dot * T::lit(2.0);
                r[(i, j)] -= delta;
            }
        }
        for i in 0..n {
            let dot = (k..n).fold(Complex::<T>::default(), |acc, j| acc + q[(i, j)] * v[j - k]);
            for j in k..n {
                let delta = dot * v[j - k].conj() * T::lit(2.0);
                q[(i, j)] -= delta;
            }
        }
    }

    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > T::zero() {
            d / d.norm()
        } else {
            Complex::new(T::one(), T::zero())
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random Hermitian positive definite matrix: Haar eigenvectors and
/// eigenvalues log-uniform in `[lo, hi]`.
pub fn random_pd<T: Real, R: Rng + ?Sized>(n: usize, lo: f64, hi: f64, rng: &mut R) -> HermitianPD<T> {
    let u = haar_unitary_with(n, rng);
    let (a, b) = (lo.ln(), hi.ln());
    let values = (0..n).map(|_| T::lit(rng.random_range(a..=b).exp())).collect();
    HermitianPD::from_spectral(u, values).expect("log-uniform spectrum is positive")
}
