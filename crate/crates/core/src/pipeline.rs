//! Classification of words into good / bad / unknown with certificates,
//! batch sweeps over finite exponent sets, and the unresolved-word report.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gword::{
    exactness, nearly_symmetric_split, thm31_relations, Exponent, ExactnessReport, NearSymmetry,
    RelationWitness, Word, MAX_CLASS, TIE_TOL,
};
use crate::numeric::refute::{self, CounterexampleJson};
use crate::numeric::{Counterexample, RefuteConfig, Strategy};

/// Largest enumeration a sweep accepts.
pub const ENUMERATION_CAP: u128 = 1_000_000;

/// Text attached to unknown verdicts so they are not read as proofs.
pub const UNKNOWN_NOTE: &str =
    "conjectured bad: not nearly symmetric, but no proof or witness was found";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BadReason {
    /// Class 2 and not nearly symmetric.
    Class2,
    /// Rational exponents with no nontrivial subset-sum relation.
    Thm31Violation,
    /// Positive exponents and an inexact pair-sum profile.
    InexactPositive,
}

impl BadReason {
    pub fn as_str(self) -> &'static str {
        match self {
            BadReason::Class2 => "class2",
            BadReason::Thm31Violation => "thm31_violation",
            BadReason::InexactPositive => "inexact_positive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    GoodNearlySymmetric,
    BadTheorem(BadReason),
    BadRefuted,
    UnknownConjecturedBad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Good,
    Bad,
    Unknown,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::GoodNearlySymmetric => "good_nearly_symmetric",
            Verdict::BadTheorem(_) => "bad_theorem",
            Verdict::BadRefuted => "bad_refuted",
            Verdict::UnknownConjecturedBad => "unknown_conjectured_bad",
        }
    }

    pub fn reason(self) -> Option<BadReason> {
        match self {
            Verdict::BadTheorem(r) => Some(r),
            _ => None,
        }
    }

    pub fn category(self) -> Category {
        match self {
            Verdict::GoodNearlySymmetric => Category::Good,
            Verdict::BadTheorem(_) | Verdict::BadRefuted => Category::Bad,
            Verdict::UnknownConjecturedBad => Category::Unknown,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason() {
            Some(r) => write!(f, "{}({})", self.label(), r.as_str()),
            None => f.write_str(self.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClassifyOptions {
    /// Run the numeric search when no theorem decides the word.
    pub refute: bool,
    /// Also search for an explicit witness behind theorem-based verdicts.
    pub witness: bool,
    pub config: RefuteConfig,
}

/// Subset-sum relation certificate in summary form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationSummary {
    pub nontrivial: u128,
    pub approximate: bool,
    /// A nontrivial witness for hand checking, when one exists.
    pub example: Option<RelationWitness>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub input: String,
    pub standard_form: Word,
    pub class_number: usize,
    pub verdict: Verdict,
    pub near_symmetry: Option<NearSymmetry>,
    pub exactness: Option<ExactnessReport>,
    /// Absent when the class exceeds the enumeration limit.
    pub relations: Option<RelationSummary>,
    pub counterexample: Option<Counterexample>,
    pub seed: u64,
    pub elapsed: Duration,
}

impl ClassificationReport {
    pub fn witness_found(&self) -> bool {
        self.counterexample.is_some()
    }

    /// Interchange form. Timings are left out so output is reproducible.
    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            input: self.input.clone(),
            standard_form: self.standard_form.to_string(),
            class_number: self.class_number,
            verdict: self.verdict.label(),
            reason: self.verdict.reason().map(BadReason::as_str),
            note: (self.verdict == Verdict::UnknownConjecturedBad).then_some(UNKNOWN_NOTE),
            certificates: CertificatesJson {
                near_symmetry: self.near_symmetry,
                exactness: self.exactness.as_ref().map(ExactnessJson::from),
                relations: self.relations.clone(),
                counterexample: self.counterexample.as_ref().map(Counterexample::to_json),
            },
            seed: self.seed,
        }
    }

    pub fn csv_row(&self) -> CsvRow {
        let ex = self.exactness.as_ref();
        CsvRow {
            word: self.standard_form.to_string(),
            class: self.class_number,
            verdict: self.verdict.label(),
            reason: self.verdict.reason().map_or("", BadReason::as_str),
            nearly_symmetric: self.near_symmetry.is_some(),
            exact: ex.map(|e| e.exact),
            n_min_indices: ex.map(|e| e.min_indices.len()),
            count_odd: ex.map(|e| e.count_odd),
            count_even: ex.map(|e| e.count_even),
            nontrivial_relations: self.relations.as_ref().map(|r| r.nontrivial),
            witness_found: self.witness_found(),
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportJson {
    pub input: String,
    pub standard_form: String,
    pub class_number: usize,
    pub verdict: &'static str,
    pub reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    pub certificates: CertificatesJson,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificatesJson {
    pub near_symmetry: Option<NearSymmetry>,
    pub exactness: Option<ExactnessJson>,
    pub relations: Option<RelationSummary>,
    pub counterexample: Option<CounterexampleJson>,
}

/// Exactness certificate with exponents written as exact strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactnessJson {
    pub l_values: Vec<String>,
    pub min_value: String,
    pub min_indices: Vec<usize>,
    pub count_odd: usize,
    pub count_even: usize,
    pub exact: bool,
}

impl From<&ExactnessReport> for ExactnessJson {
    fn from(r: &ExactnessReport) -> Self {
        Self {
            l_values: r.l_values.iter().map(Exponent::to_string).collect(),
            min_value: r.min_value.to_string(),
            min_indices: r.min_indices.clone(),
            count_odd: r.count_odd,
            count_even: r.count_even,
            exact: r.exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub word: String,
    pub class: usize,
    pub verdict: &'static str,
    pub reason: &'static str,
    pub nearly_symmetric: bool,
    pub exact: Option<bool>,
    pub n_min_indices: Option<usize>,
    pub count_odd: Option<usize>,
    pub count_even: Option<usize>,
    pub nontrivial_relations: Option<u128>,
    pub witness_found: bool,
    pub seed: u64,
}

pub fn classify(text: &str, options: &ClassifyOptions) -> Result<ClassificationReport> {
    let word = Word::parse(text)?;
    classify_word(text, &word, options)
}

/// Runs the decision procedure: near symmetry, class 2, subset-sum
/// relations, exactness, then (optionally) the numeric search.
pub fn classify_word(input: &str, word: &Word, options: &ClassifyOptions) -> Result<ClassificationReport> {
    let start = Instant::now();
    options.config.validate()?;
    let sf = word.standard_form();
    let k = sf.class_number();
    let near_symmetry = nearly_symmetric_split(&sf);
    let exactness = (k >= 1).then(|| exactness(&sf, TIE_TOL)).transpose()?;
    let relations = if (1..=MAX_CLASS).contains(&k) {
        let rel = thm31_relations(&sf)?;
        let example = rel.witnesses().find(|w| !w.trivial);
        Some(RelationSummary {
            nontrivial: rel.nontrivial_count(),
            approximate: rel.approximate,
            example,
        })
    } else {
        None
    };

    let theorem = if near_symmetry.is_some() {
        None
    } else if k == 2 {
        Some(BadReason::Class2)
    } else if sf.all_rational() && relations.as_ref().is_some_and(|r| !r.approximate && r.nontrivial == 0) {
        Some(BadReason::Thm31Violation)
    } else if sf.is_positive() && exactness.as_ref().is_some_and(|e| !e.exact) {
        Some(BadReason::InexactPositive)
    } else {
        None
    };

    let mut counterexample = None;
    let verdict = if near_symmetry.is_some() {
        Verdict::GoodNearlySymmetric
    } else if let Some(reason) = theorem {
        if options.witness {
            counterexample = refute::refute(&sf, &options.config)?;
        }
        Verdict::BadTheorem(reason)
    } else if options.refute {
        counterexample = refute::refute(&sf, &options.config)?;
        if counterexample.is_some() {
            Verdict::BadRefuted
        } else {
            Verdict::UnknownConjecturedBad
        }
    } else {
        Verdict::UnknownConjecturedBad
    };

    Ok(ClassificationReport {
        input: input.to_owned(),
        standard_form: sf,
        class_number: k,
        verdict,
        near_symmetry,
        exactness,
        relations,
        counterexample,
        seed: options.config.seed,
        elapsed: start.elapsed(),
    })
}

fn exponent_key_cmp(a: &[Exponent], b: &[Exponent]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

fn exponent_key(word: &Word) -> Vec<Exponent> {
    word.standard_form().blocks().iter().map(|b| b.exponent).collect()
}

/// Smallest representative of the word's orbit under pair rotation,
/// reversal and letter swap.
pub fn canonical_form(word: &Word) -> Word {
    let sf = word.standard_form();
    let k = sf.class_number().max(1);
    let mut best: Option<(Vec<Exponent>, Word)> = None;
    for base in [sf.clone(), sf.reversal()] {
        for w in [base.clone(), base.swap_letters()] {
            for r in 0..k {
                let cand = w.cycle_pairs(r as i64).standard_form();
                let key = exponent_key(&cand);
                if best.as_ref().is_none_or(|(b, _)| exponent_key_cmp(&key, b).is_lt()) {
                    best = Some((key, cand));
                }
            }
        }
    }
    best.expect("at least one candidate").1
}

/// Every class-`k` standard-form word with exponents drawn from `exponents`,
/// one per orbit, in canonical order.
pub fn enumerate_words(k: usize, exponents: &[Exponent]) -> Result<Vec<Word>> {
    let mut set: Vec<Exponent> = exponents.iter().copied().filter(|e| !e.is_zero()).collect();
    set.sort_by(|a, b| a.total_cmp(b));
    set.dedup();
    if set.is_empty() || k == 0 {
        return Ok(Vec::new());
    }
    let count = (set.len() as u128).checked_pow(2 * k as u32).unwrap_or(u128::MAX);
    if count > ENUMERATION_CAP {
        return Err(Error::EnumerationTooLarge {
            count,
            cap: ENUMERATION_CAP,
        });
    }
    let n = 2 * k;
    let mut out: Vec<(Vec<Exponent>, Word)> = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let ps: Vec<Exponent> = (0..k).map(|i| set[digits[2 * i]]).collect();
        let qs: Vec<Exponent> = (0..k).map(|i| set[digits[2 * i + 1]]).collect();
        let word = Word::from_pairs(&ps, &qs);
        let canon = canonical_form(&word);
        if canon.class_number() == k {
            out.push((exponent_key(&canon), canon));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                out.sort_by(|a, b| exponent_key_cmp(&a.0, &b.0));
                out.dedup_by(|a, b| exponent_key_cmp(&a.0, &b.0).is_eq());
                return Ok(out.into_iter().map(|(_, w)| w).collect());
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < set.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<ClassificationReport>,
    pub summary: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepJson {
    pub rows: Vec<ReportJson>,
    pub summary: BTreeMap<String, usize>,
}

impl SweepReport {
    pub fn to_json(&self) -> SweepJson {
        SweepJson {
            rows: self.rows.iter().map(ClassificationReport::to_json).collect(),
            summary: self.summary.clone(),
        }
    }
}

/// Classifies every enumerated word in parallel. Word `i` (in canonical
/// order) uses seed `options.config.seed ^ i`, so output is independent of
/// scheduling.
pub fn sweep(k: usize, exponents: &[Exponent], options: &ClassifyOptions) -> Result<SweepReport> {
    let words = enumerate_words(k, exponents)?;
    let rows = words
        .par_iter()
        .enumerate()
        .map(|(i, word)| {
            let mut opts = options.clone();
            opts.config.seed = options.config.seed ^ i as u64;
            classify_word(&word.to_string(), word, &opts)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = BTreeMap::new();
    for row in &rows {
        *summary.entry(row.verdict.to_string()).or_insert(0) += 1;
    }
    Ok(SweepReport { rows, summary })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Survivor {
    pub word: String,
    pub exact: Option<bool>,
    pub nontrivial_relations: Option<u128>,
}

/// Outcome of pushing every non-nearly-symmetric word to a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub class_number: usize,
    pub exponents: Vec<String>,
    pub budget: usize,
    pub words: usize,
    pub nearly_symmetric: usize,
    pub resolved_by_theorem: usize,
    pub resolved_by_search: usize,
    pub survivors: Vec<Survivor>,
}

/// Sample counts tried in turn: doubling from 50 up to the budget.
pub fn escalation_schedule(budget: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut n = 50.min(budget);
    while n > 0 {
        out.push(n);
        if n >= budget {
            break;
        }
        n = (n * 2).min(budget);
    }
    out
}

/// For every word that is neither nearly symmetric nor bad by a theorem,
/// runs the search with growing sample counts, alternating the reference
/// and Haar strategies, until a witness is found or the budget is spent.
pub fn conjecture_check(k: usize, exponents: &[Exponent], budget: usize, seed: u64) -> Result<ConjectureReport> {
    let words = enumerate_words(k, exponents)?;
    let base = ClassifyOptions::default();
    let outcomes = words
        .par_iter()
        .enumerate()
        .map(|(i, word)| -> Result<(Verdict, Option<Survivor>)> {
            let report = classify_word(&word.to_string(), word, &base)?;
            if report.verdict != Verdict::UnknownConjecturedBad || k < 2 {
                return Ok((report.verdict, None));
            }
            for (round, samples) in escalation_schedule(budget).into_iter().enumerate() {
                for strategy in [Strategy::PaperU, Strategy::Random] {
                    let config = RefuteConfig {
                        strategy,
                        samples,
                        seed: seed ^ i as u64 ^ ((round as u64) << 32),
                        ..RefuteConfig::default()
                    };
                    if refute::refute(word, &config)?.is_some() {
                        return Ok((Verdict::BadRefuted, None));
                    }
                }
            }
            let survivor = Survivor {
                word: report.standard_form.to_string(),
                exact: report.exactness.as_ref().map(|e| e.exact),
                nontrivial_relations: report.relations.as_ref().map(|r| r.nontrivial),
            };
            Ok((Verdict::UnknownConjecturedBad, Some(survivor)))
        })
        .collect::<Result<Vec<_>>>()?;

    let count = |pred: fn(&Verdict) -> bool| outcomes.iter().filter(|(v, _)| pred(v)).count();
    Ok(ConjectureReport {
        class_number: k,
        exponents: exponents.iter().map(Exponent::to_string).collect(),
        budget,
        words: words.len(),
        nearly_symmetric: count(|v| *v == Verdict::GoodNearlySymmetric),
        resolved_by_theorem: count(|v| matches!(v, Verdict::BadTheorem(_))),
        resolved_by_search: count(|v| *v == Verdict::BadRefuted),
        survivors: outcomes.into_iter().filter_map(|(_, s)| s).collect(),
    })
}

/// Thread pool sized by `GW_THREADS` when set to a positive integer.
pub fn thread_pool_from_env() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("GW_THREADS") {
        let n: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| Error::InvalidConfig(format!("GW_THREADS must be a positive integer, got `{value}`")))?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))
}
