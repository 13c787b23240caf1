use num_complex::Complex;

use super::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest dimension accepted by [`eig_general`].
pub const MAX_EIG_DIM: usize = 6;
/// Acceptance threshold for the polished polynomial residual, relative to
/// `max(1, |z|^n)`.
pub const RESIDUAL_TOL: f64 = 1e-10;

const MAX_ITERS: usize = 1000;

/// Characteristic polynomial coefficients `[1, c1, ..., cn]` of
/// `det(zI - M) = z^n + c1 z^(n-1) + ... + cn`, by Faddeev-LeVerrier.
pub fn characteristic_polynomial<T: Real>(m: &CMatrix<T>) -> Vec<Complex<T>> {
    let n = m.dim();
    let mut coeffs = vec![Complex::new(T::one(), T::zero())];
    let mut mk = CMatrix::zeros(n);
    let identity = CMatrix::identity(n);
    for k in 1..=n {
        let prev = *coeffs.last().unwrap();
        mk = m.matmul(&mk.add(&identity.scale(prev)));
        let ck = -mk.trace() / T::from_usize(k).unwrap();
        coeffs.push(ck);
    }
    coeffs
}

/// Evaluates a monic-first coefficient list by Horner's rule.
pub fn horner<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coeffs.iter().fold(Complex::default(), |acc, c| acc * z + c)
}

/// Eigenvalues of a small general complex matrix, sorted by real then
/// imaginary part.
pub fn eig_general<T: Real>(m: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    let n = m.dim();
    if n == 0 || n > MAX_EIG_DIM {
        return Err(Error::Dimension(format!(
            "eigenvalues supported for sizes 1..={MAX_EIG_DIM}, got {n}"
        )));
    }
    if m.as_slice().iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NoConvergence("non-finite matrix entries"));
    }
    let mut values = if let Some(d) = triangular_diagonal(m) {
        d
    } else {
        let scale = power_of_two_scale(m);
        let scaled = m.scale(Complex::new(T::one() / scale, T::zero()));
        let coeffs = characteristic_polynomial(&scaled);
        let roots = durand_kerner(&coeffs)?;
        let roots = average_clusters(&coeffs, roots);
        for z in &roots {
            let residual = horner(&coeffs, *z).norm();
            let bound = T::lit(RESIDUAL_TOL) * T::one().max(z.norm().powi(n as i32));
            if !(residual < bound) {
                return Err(Error::NoConvergence("Durand-Kerner residual above tolerance"));
            }
        }
        roots.into_iter().map(|z| z * scale).collect()
    };
    values.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    Ok(values)
}

/// Residual of each eigenvalue against the characteristic polynomial of the
/// power-of-two scaled matrix, paired with the scaled value.
pub fn scaled_residuals<T: Real>(m: &CMatrix<T>, values: &[Complex<T>]) -> Vec<(Complex<T>, T)> {
    let scale = power_of_two_scale(m);
    let scaled = m.scale(Complex::new(T::one() / scale, T::zero()));
    let coeffs = characteristic_polynomial(&scaled);
    values
        .iter()
        .map(|v| {
            let z = v / scale;
            (z, horner(&coeffs, z).norm())
        })
        .collect()
}

fn triangular_diagonal<T: Real>(m: &CMatrix<T>) -> Option<Vec<Complex<T>>> {
    let n = m.dim();
    let zero = Complex::default();
    let upper = (0..n).all(|i| (0..i).all(|j| m[(i, j)] == zero));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m[(i, j)] == zero));
    (upper || lower).then(|| (0..n).map(|i| m[(i, i)]).collect())
}

fn power_of_two_scale<T: Real>(m: &CMatrix<T>) -> T {
    let norm = m.max_abs();
    if norm <= T::zero() {
        return T::one();
    }
    T::lit(2.0).powi(norm.log2().ceil().to_i32().unwrap_or(0))
}

/// Simultaneous Weierstrass iteration on a monic polynomial.
fn durand_kerner<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = coeffs.len() - 1;
    if n == 1 {
        return Ok(vec![-coeffs[1]]);
    }
    let radius = T::one() + coeffs[1..].iter().map(|c| c.norm()).fold(T::zero(), T::max);
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let angle = T::TAU() * T::from_usize(k).unwrap() / T::from_usize(n).unwrap() + T::lit(0.4);
            Complex::from_polar(radius, angle)
        })
        .collect();
    let tiny = T::epsilon() * T::lit(4.0);
    for _ in 0..MAX_ITERS {
        let mut largest_step = T::zero();
        for i in 0..n {
            let w = weierstrass(coeffs, &z, i);
            z[i] -= w;
            let step = w.norm() / T::one().max(z[i].norm());
            largest_step = largest_step.max(step);
        }
        if !z.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NoConvergence("Durand-Kerner diverged"));
        }
        if largest_step <= tiny {
            break;
        }
    }
    Ok(z)
}

fn weierstrass<T: Real>(coeffs: &[Complex<T>], z: &[Complex<T>], i: usize) -> Complex<T> {
    let mut denom = Complex::new(T::one(), T::zero());
    for (j, zj) in z.iter().enumerate() {
        if j != i {
            let d = z[i] - zj;
            denom *= if d == Complex::default() {
                Complex::new(T::epsilon(), T::epsilon())
            } else {
                d
            };
        }
    }
    horner(coeffs, z[i]) / denom
}

/// Replaces each group of roots whose inclusion disks overlap by the group
/// mean. Repeated roots converge slowly and scatter symmetrically about the
/// true value, so the mean is far more accurate than the members.
fn average_clusters<T: Real>(coeffs: &[Complex<T>], z: Vec<Complex<T>>) -> Vec<Complex<T>> {
    let n = z.len();
    let nf = T::from_usize(n).unwrap();
    let radii: Vec<T> = (0..n)
        .map(|i| nf * weierstrass(coeffs, &z, i).norm() + T::epsilon() * T::lit(4.0) * z[i].norm())
        .collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut out = z.clone();
    for i in 0..n {
        let root = find(&mut parent, i);
        let members: Vec<usize> = (0..n).filter(|&j| find(&mut parent, j) == root).collect();
        if members.len() > 1 {
            let sum = members.iter().fold(Complex::default(), |acc, &j| acc + z[j]);
            out[i] = sum / T::from_usize(members.len()).unwrap();
        }
    }
    out
}
