//! Generalized polynomials: sparse complex combinations of monomials whose
//! exponents are arbitrary reals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::scalar::Real;

/// Coefficients smaller than this in magnitude are dropped on reduction.
pub const COEF_TOL: f64 = 1e-14;

/// Exponent vectors closer than this (per coordinate) are merged by
/// [`GPoly::collapse`].
pub const EXP_TOL: f64 = 1e-12;

/// Exponent vector ordered lexicographically by value. NaN never enters:
/// constructors reject it.
#[derive(Debug, Clone)]
pub struct ExpVec<T>(pub Vec<T>);

impl<T: Real> PartialEq for ExpVec<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for ExpVec<T> {}

impl<T: Real> PartialOrd for ExpVec<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for ExpVec<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.partial_cmp(b).unwrap_or(Ordering::Equal) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
}

/// A reduced generalized polynomial: no two stored terms share an exponent
/// vector and no stored coefficient is (numerically) zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GPoly<T: Real> {
    vars: Vec<String>,
    terms: BTreeMap<ExpVec<T>, Complex<T>>,
}

impl<T: Real> GPoly<T> {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Self {
            vars: vars.iter().map(|v| v.as_ref().to_owned()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Complex<T>) -> Self {
        let n = vars.len();
        Self::reduce(vars, [(vec![T::zero(); n], c)]).expect("arity matches")
    }

    /// Builds a reduced polynomial from raw terms, summing coefficients of
    /// identical exponent vectors and dropping those below [`COEF_TOL`].
    pub fn reduce<S, I>(vars: &[S], terms: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Vec<T>, Complex<T>)>,
    {
        Self::reduce_with(vars, terms, COEF_TOL)
    }

    pub fn reduce_with<S, I>(vars: &[S], terms: I, coef_tol: f64) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Vec<T>, Complex<T>)>,
    {
        let mut poly = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != poly.vars.len() {
                return Err(Error::ArityMismatch {
                    expected: poly.vars.len(),
                    found: exps.len(),
                });
            }
            if exps.iter().any(|e| !e.is_finite()) {
                return Err(Error::InvalidConfig("non-finite exponent".into()));
            }
            // Adding +0 turns -0 into +0 so equal vectors share one key.
            let key = ExpVec(exps.into_iter().map(|e| e + T::zero()).collect());
            *poly.terms.entry(key).or_insert_with(Complex::default) += c;
        }
        poly.prune(coef_tol);
        Ok(poly)
    }

    fn prune(&mut self, coef_tol: f64) {
        let tol = T::lit(coef_tol);
        self.terms.retain(|_, c| c.norm() >= tol);
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[T], Complex<T>)> {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), *c))
    }

    /// Coefficient of the exact exponent vector (zero if absent).
    pub fn coefficient(&self, exps: &[T]) -> Complex<T> {
        self.terms
            .get(&ExpVec(exps.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(())
    }

    pub fn combine(op: Op, a: &Self, b: &Self) -> Result<Self> {
        a.check_vars(b)?;
        match op {
            Op::Add => {
                let terms = a.terms.iter().chain(&b.terms).map(|(e, c)| (e.0.clone(), *c));
                Self::reduce(&a.vars, terms)
            }
            Op::Mul => {
                let terms = a.terms.iter().flat_map(|(ea, ca)| {
                    b.terms.iter().map(move |(eb, cb)| {
                        let e = ea.0.iter().zip(&eb.0).map(|(x, y)| *x + *y).collect();
                        (e, *ca * *cb)
                    })
                });
                Self::reduce(&a.vars, terms)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::combine(Op::Add, self, other)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::combine(Op::Mul, self, other)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let terms = self.terms.iter().map(|(e, v)| (e.0.clone(), *v * c));
        Self::reduce(&self.vars, terms).expect("arity preserved")
    }

    /// Value at a point with every coordinate strictly positive.
    pub fn evaluate(&self, point: &[T]) -> Result<Complex<T>> {
        if point.len() != self.vars.len() {
            return Err(Error::ArityMismatch {
                expected: self.vars.len(),
                found: point.len(),
            });
        }
        if point.iter().any(|x| !(*x > T::zero())) {
            return Err(Error::NonPositivePoint);
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let monomial = e
                    .0
                    .iter()
                    .zip(point)
                    .filter(|(p, _)| !p.is_zero())
                    .fold(T::one(), |acc, (p, x)| acc * x.powf(*p));
                *c * monomial
            })
            .fold(Complex::default(), |acc, v| acc + v))
    }

    /// Keeps only the imaginary parts of the coefficients. Monomials are real
    /// on positive points, so this commutes with evaluation.
    pub fn imaginary_part(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.0.clone(), Complex::new(c.im, T::zero())));
        Self::reduce(&self.vars, terms).expect("arity preserved")
    }

    pub fn real_part(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.0.clone(), Complex::new(c.re, T::zero())));
        Self::reduce(&self.vars, terms).expect("arity preserved")
    }

    /// Identifies variables: every variable named on the left of a mapping
    /// pair is replaced by the one on the right, adding exponents. Unmapped
    /// variables keep their names; the new variable order follows first
    /// appearance.
    pub fn merge_variables(&self, mapping: &[(&str, &str)]) -> Self {
        let target_of = |v: &str| {
            mapping
                .iter()
                .find(|(from, _)| *from == v)
                .map(|(_, to)| *to)
                .unwrap_or(v)
                .to_owned()
        };
        let mut new_vars: Vec<String> = Vec::new();
        let mut slot = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let t = target_of(v);
            let idx = match new_vars.iter().position(|n| *n == t) {
                Some(i) => i,
                None => {
                    new_vars.push(t);
                    new_vars.len() - 1
                }
            };
            slot.push(idx);
        }
        let n = new_vars.len();
        let terms = self.terms.iter().map(|(e, c)| {
            let mut exps = vec![T::zero(); n];
            for (value, &s) in e.0.iter().zip(&slot) {
                exps[s] = exps[s] + *value;
            }
            (exps, *c)
        });
        Self::reduce(&new_vars, terms).expect("arity matches")
    }

    /// Merges terms whose exponent vectors agree within `exp_tol` in every
    /// coordinate (keeping the smallest vector as representative), then
    /// drops zero coefficients.
    pub fn collapse(&self, exp_tol: f64) -> Self {
        let tol = T::lit(exp_tol);
        let mut reps: Vec<(Vec<T>, Complex<T>)> = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let lead = e.0.first().copied().unwrap_or_else(T::zero);
            let near = reps.iter_mut().rev().take_while(|(r, _)| {
                r.first().copied().unwrap_or_else(T::zero) >= lead - tol
            });
            let mut merged = false;
            for (r, rc) in near {
                if r.iter().zip(&e.0).all(|(a, b)| (*a - *b).abs() <= tol) {
                    *rc = *rc + *c;
                    merged = true;
                    break;
                }
            }
            if !merged {
                reps.push((e.0.clone(), *c));
            }
        }
        Self::reduce(&self.vars, reps).expect("arity preserved")
    }

    pub fn to_json(&self) -> GPolyJson {
        GPolyJson {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.0.iter().map(|v| v.as_f64()).collect(),
                    re: c.re.as_f64(),
                    im: c.im.as_f64(),
                })
                .collect(),
        }
    }

    pub fn from_json(dto: &GPolyJson) -> Result<Self> {
        let terms = dto.terms.iter().map(|t| {
            (
                t.exp.iter().map(|v| T::lit(*v)).collect(),
                Complex::new(T::lit(t.re), T::lit(t.im)),
            )
        });
        Self::reduce_with(&dto.vars, terms, 0.0)
    }
}

/// Interchange form: `{"vars": [...], "terms": [{"exp": [...], "re", "im"}]}`
/// with terms in lexicographic exponent order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GPolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(serialize_with = "json::reals")]
    pub exp: Vec<f64>,
    #[serde(serialize_with = "json::real")]
    pub re: f64,
    #[serde(serialize_with = "json::real")]
    pub im: f64,
}

impl<T: Real> Serialize for GPoly<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<T: Real> fmt::Display for GPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({} {:+}i)", c.re, c.im)?;
            for (v, p) in self.vars.iter().zip(&e.0) {
                if !p.is_zero() {
                    write!(f, " {v}^{p}")?;
                }
            }
        }
        Ok(())
    }
}
