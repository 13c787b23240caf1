//! Search for an explicit positive definite pair on which a word has a
//! non-real or non-positive eigenvalue.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{build_pair, eig_general, evaluate_word, haar_unitary, CMatrix, DiagonalValues, HermitianPD};
use crate::error::{Error, Result};
use crate::gword::Word;
use crate::json;
use crate::trace::{Mode, Parameterization};

pub const DEFAULT_GRID: [f64; 7] = [0.9, 0.7, 0.5, 0.3, 0.1, 0.05, 0.01];
pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_EPSILON: f64 = 1e-2;
pub const EPSILON_FLOOR: f64 = 1e-8;
pub const DEFAULT_IM_THRESHOLD: f64 = 1e-9;
/// Eigenvalue evidence must leave the positive real axis by this much,
/// relative to `max(1, spectral radius)`.
pub const EIGEN_EVIDENCE_TOL: f64 = 1e-6;
/// Re-validation demands evidence this many times above the search threshold.
pub const REVALIDATION_FACTOR: f64 = 10.0;
/// Diagonal values are sampled log-uniformly from this range.
pub const SAMPLE_RANGE: (f64, f64) = (1e-2, 1e2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// The reference unitary, with the epsilon construction for positive
    /// words and random diagonals otherwise.
    PaperU,
    /// The reference unitary with random general diagonals only.
    GeneralParam,
    /// A fresh Haar unitary per sample.
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefuteConfig {
    pub strategy: Strategy,
    pub samples: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub im_threshold: f64,
    pub grid: Vec<f64>,
}

impl Default for RefuteConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::PaperU,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            epsilon: DEFAULT_EPSILON,
            im_threshold: DEFAULT_IM_THRESHOLD,
            grid: DEFAULT_GRID.to_vec(),
        }
    }
}

impl RefuteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) || !(self.im_threshold > 0.0) {
            return Err(Error::InvalidConfig("epsilon and im_threshold must be positive".into()));
        }
        if self.grid.is_empty() || self.grid.iter().any(|x| !(*x > 0.0)) {
            return Err(Error::InvalidConfig("grid must be non-empty and positive".into()));
        }
        Ok(())
    }

    /// The epsilon values tried at each grid point: start, start/10, ...
    /// down to the floor.
    pub fn epsilon_schedule(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut eps = self.epsilon;
        while eps >= EPSILON_FLOOR * (1.0 - 1e-9) {
            out.push(eps);
            eps /= 10.0;
        }
        if out.is_empty() {
            out.push(self.epsilon);
        }
        out
    }
}

/// How a counterexample pair was built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// Reference unitary, `A = diag(1, x, eps)`, `E = diag(1, y, eps)`.
    PaperU {
        #[serde(serialize_with = "json::real")]
        x: f64,
        #[serde(serialize_with = "json::real")]
        y: f64,
        #[serde(serialize_with = "json::real")]
        epsilon: f64,
    },
    /// Reference unitary, `A = diag(1, x1, y1)`, `E = diag(1, x2, y2)`.
    GeneralParam {
        #[serde(serialize_with = "json::real")]
        x1: f64,
        #[serde(serialize_with = "json::real")]
        y1: f64,
        #[serde(serialize_with = "json::real")]
        x2: f64,
        #[serde(serialize_with = "json::real")]
        y2: f64,
    },
    /// Haar unitary drawn from `seed`, general diagonals.
    Random {
        seed: u64,
        #[serde(serialize_with = "json::real")]
        x1: f64,
        #[serde(serialize_with = "json::real")]
        y1: f64,
        #[serde(serialize_with = "json::real")]
        x2: f64,
        #[serde(serialize_with = "json::real")]
        y2: f64,
    },
}

impl Construction {
    pub fn build(&self) -> Result<(HermitianPD<f64>, HermitianPD<f64>)> {
        match *self {
            Construction::PaperU { x, y, epsilon } => build_pair(
                &Parameterization::paper(Mode::Positive),
                DiagonalValues::Positive { x, y, epsilon },
            ),
            Construction::GeneralParam { x1, y1, x2, y2 } => build_pair(
                &Parameterization::paper(Mode::General),
                DiagonalValues::General { x1, y1, x2, y2 },
            ),
            Construction::Random { seed, x1, y1, x2, y2 } => build_pair(
                &Parameterization::from_unitary(&haar_unitary(3, seed), Mode::General)?,
                DiagonalValues::General { x1, y1, x2, y2 },
            ),
        }
    }
}

/// What makes the pair a counterexample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// The trace of the evaluated word is not real.
    ImTrace {
        #[serde(serialize_with = "json::real")]
        re: f64,
        #[serde(serialize_with = "json::real")]
        im: f64,
    },
    /// An eigenvalue off the positive real axis.
    Eigenvalue {
        #[serde(serialize_with = "json::real")]
        re: f64,
        #[serde(serialize_with = "json::real")]
        im: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// `|Im Tr|` must exceed this times `max(1, |W|_F)`.
    #[serde(serialize_with = "json::real")]
    pub im_threshold: f64,
    #[serde(serialize_with = "json::real")]
    pub eigen_tol: f64,
    #[serde(serialize_with = "json::real")]
    pub revalidation_factor: f64,
}

impl Tolerances {
    fn new(im_threshold: f64) -> Self {
        Self {
            im_threshold,
            eigen_tol: EIGEN_EVIDENCE_TOL,
            revalidation_factor: REVALIDATION_FACTOR,
        }
    }
}

/// A concrete PD pair on which the word is not good.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub word: Word,
    pub construction: Construction,
    pub a: HermitianPD<f64>,
    pub b: HermitianPD<f64>,
    pub evidence: Evidence,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleJson {
    pub word: String,
    pub construction: Construction,
    #[serde(serialize_with = "json::complex_pairs")]
    pub a: Vec<[f64; 2]>,
    #[serde(serialize_with = "json::complex_pairs")]
    pub b: Vec<[f64; 2]>,
    pub evidence: Evidence,
    pub tolerances: Tolerances,
}

impl Counterexample {
    pub fn to_json(&self) -> CounterexampleJson {
        CounterexampleJson {
            word: self.word.to_string(),
            construction: self.construction,
            a: self.a.matrix().to_pairs(),
            b: self.b.matrix().to_pairs(),
            evidence: self.evidence,
            tolerances: self.tolerances,
        }
    }

    /// Rebuilds a counterexample from its interchange form, validating both
    /// matrices from their entries.
    pub fn from_json(dto: &CounterexampleJson) -> Result<Self> {
        Ok(Self {
            word: Word::parse(&dto.word)?,
            construction: dto.construction,
            a: HermitianPD::new(CMatrix::from_pairs(&dto.a)?)?,
            b: HermitianPD::new(CMatrix::from_pairs(&dto.b)?)?,
            evidence: dto.evidence,
            tolerances: dto.tolerances,
        })
    }

    /// Re-checks the evidence from the stored entries alone: fresh
    /// decompositions, fresh word evaluation, and a threshold raised by the
    /// re-validation factor.
    pub fn revalidate(&self) -> Result<()> {
        let a = HermitianPD::new(self.a.matrix().clone())?;
        let b = HermitianPD::new(self.b.matrix().clone())?;
        let m = evaluate_word(&self.word, &a, &b);
        let tol = &self.tolerances;
        let failed = |what: String| Err(Error::InvalidConfig(format!("counterexample rejected: {what}")));
        match self.evidence {
            Evidence::ImTrace { re, im } => {
                let scale = m.frobenius_norm().max(1.0);
                let bound = tol.im_threshold * tol.revalidation_factor * scale;
                let t = m.trace();
                if t.im.abs() <= bound {
                    return failed(format!("|Im Tr| = {:e} not above {bound:e}", t.im.abs()));
                }
                if (t - Complex::new(re, im)).norm() > bound {
                    return failed("trace not reproduced".into());
                }
            }
            Evidence::Eigenvalue { re, im } => {
                let values = eig_general(&m)?;
                let rho = values.iter().map(|l| l.norm()).fold(1.0, f64::max);
                let recorded = Complex::new(re, im);
                let reproduced = values.iter().any(|l| {
                    off_axis(*l, rho) > tol.eigen_tol && (l - recorded).norm() <= tol.eigen_tol * tol.revalidation_factor * rho
                });
                if !reproduced {
                    return failed("offending eigenvalue not reproduced".into());
                }
            }
        }
        Ok(())
    }
}

/// How far an eigenvalue strays from the positive real axis, relative to
/// `rho`.
fn off_axis(l: Complex<f64>, rho: f64) -> f64 {
    l.im.abs().max(-l.re) / rho
}

/// Evidence that `word` fails on `(a, b)`, if any.
pub fn find_evidence(word: &Word, a: &HermitianPD<f64>, b: &HermitianPD<f64>, im_threshold: f64) -> Option<Evidence> {
    let m = evaluate_word(word, a, b);
    let t = m.trace();
    if t.im.abs() > im_threshold * m.frobenius_norm().max(1.0) {
        return Some(Evidence::ImTrace { re: t.re, im: t.im });
    }
    let values = eig_general(&m).ok()?;
    let rho = values.iter().map(|l| l.norm()).fold(1.0, f64::max);
    values
        .iter()
        .copied()
        .filter(|l| off_axis(*l, rho) > EIGEN_EVIDENCE_TOL)
        .max_by(|x, y| off_axis(*x, rho).total_cmp(&off_axis(*y, rho)))
        .map(|l| Evidence::Eigenvalue { re: l.re, im: l.im })
}

fn attempt(word: &Word, construction: Construction, config: &RefuteConfig) -> Option<Counterexample> {
    let (a, b) = construction.build().ok()?;
    let evidence = find_evidence(word, &a, &b, config.im_threshold)?;
    let candidate = Counterexample {
        word: word.clone(),
        construction,
        a,
        b,
        evidence,
        tolerances: Tolerances::new(config.im_threshold),
    };
    candidate.revalidate().ok().map(|_| candidate)
}

fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    let (lo, hi) = SAMPLE_RANGE;
    rng.random_range(lo.ln()..=hi.ln()).exp()
}

fn sampled_construction(strategy: Strategy, seed: u64, index: usize) -> Construction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index as u64);
    let unitary_seed: u64 = rng.random();
    let (x1, y1, x2, y2) = (
        log_uniform(&mut rng),
        log_uniform(&mut rng),
        log_uniform(&mut rng),
        log_uniform(&mut rng),
    );
    match strategy {
        Strategy::Random => Construction::Random {
            seed: unitary_seed,
            x1,
            y1,
            x2,
            y2,
        },
        Strategy::PaperU | Strategy::GeneralParam => Construction::GeneralParam { x1, y1, x2, y2 },
    }
}

/// Searches for a validated counterexample. Positive words under the
/// reference strategy first walk the epsilon construction over the grid;
/// then `samples` randomized constructions are tried, in parallel but with
/// the lowest-index success returned so results do not depend on
/// scheduling. `None` is inconclusive, never a proof of goodness.
pub fn refute(word: &Word, config: &RefuteConfig) -> Result<Option<Counterexample>> {
    config.validate()?;
    let word = word.standard_form();
    let k = word.class_number();
    if k < 2 {
        return Err(Error::ClassTooSmall {
            required: 2,
            found: k,
        });
    }
    if config.strategy == Strategy::PaperU && word.is_positive() {
        let schedule = config.epsilon_schedule();
        let walk: Vec<Construction> = config
            .grid
            .iter()
            .flat_map(|&x| schedule.iter().map(move |&epsilon| Construction::PaperU { x, y: x, epsilon }))
            .collect();
        let found = walk.into_par_iter().find_map_first(|c| attempt(&word, c, config));
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok((0..config.samples).into_par_iter().find_map_first(|i| {
        attempt(&word, sampled_construction(config.strategy, config.seed, i), config)
    }))
}
