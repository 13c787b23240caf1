//! Symbolic trace expansion of a word under the unitary parameterization
//! `A = diag(1, x1, y1)`, `B = S diag(1, x2, y2) conj(S)` (general mode) or
//! `A = diag(1, x, 0)`, `B = S diag(1, y, 0) conj(S)` (positive mode).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gpoly::{ExpVec, GPoly, GPolyJson, EXP_TOL};
use crate::gword::{adjacent, Letter, Word};
use crate::json;
use crate::numeric::CMatrix;
use crate::scalar::Real;

/// Largest class number the expansion engine accepts.
pub const MAX_TRACE_CLASS: usize = 8;
/// Tolerance for `S` being symmetric and unitary.
pub const UNITARY_TOL: f64 = 1e-12;
/// Threshold on `|Im Tr|` used by [`inexactness_certificate`].
pub const CERTIFICATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    General,
    Positive,
}

impl Mode {
    pub fn vars(self) -> &'static [&'static str] {
        match self {
            Mode::General => &["x1", "y1", "x2", "y2"],
            Mode::Positive => &["x", "y"],
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::General => "general",
            Mode::Positive => "positive",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Mode::General),
            "positive" => Ok(Mode::Positive),
            other => Err(Error::InvalidConfig(format!("unknown mode `{other}`"))),
        }
    }
}

/// The fixed 3x3 unitary whose symmetric square makes every non-nearly
/// symmetric class-2 word produce a non-real trace.
pub fn paper_unitary<T: Real>() -> CMatrix<T> {
    let e = |re: f64, im: f64| Complex::new(T::lit(re / 4.0), T::lit(im / 4.0));
    CMatrix::from_rows(&[
        vec![e(2.0, 0.0), e(-1.0, -1.0), e(3.0, -1.0)],
        vec![e(-1.0, 1.0), e(3.0, 0.0), e(1.0, -2.0)],
        vec![e(3.0, 1.0), e(1.0, 2.0), e(-1.0, 0.0)],
    ])
    .expect("square")
}

/// A symmetric unitary `S` together with the diagonal layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameterization<T: Real> {
    s: CMatrix<T>,
    mode: Mode,
}

impl<T: Real> Parameterization<T> {
    /// Validates that `s` is 3x3, symmetric and unitary.
    pub fn new(s: CMatrix<T>, mode: Mode) -> Result<Self> {
        if s.dim() != 3 {
            return Err(Error::Dimension(format!("S must be 3x3, got {}", s.dim())));
        }
        let asym = s.max_abs_diff(&s.transpose());
        let nonunitary = s.matmul(&s.adjoint()).max_abs_diff(&CMatrix::identity(3));
        let worst = asym.max(nonunitary);
        if worst > T::tol(UNITARY_TOL) {
            return Err(Error::NotSymmetricUnitary(worst.as_f64()));
        }
        Ok(Self { s, mode })
    }

    /// `S = U U^T` for a unitary `U`.
    pub fn from_unitary(u: &CMatrix<T>, mode: Mode) -> Result<Self> {
        Self::new(u.matmul(&u.transpose()), mode)
    }

    pub fn paper(mode: Mode) -> Self {
        Self::from_unitary(&paper_unitary(), mode).expect("reference unitary is exact")
    }

    pub fn s(&self) -> &CMatrix<T> {
        &self.s
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        Self {
            s: self.s.clone(),
            mode,
        }
    }

    pub fn vars(&self) -> &'static [&'static str] {
        self.mode.vars()
    }

    /// `s_ij` with 1-based indices.
    fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.s[(i - 1, j - 1)]
    }
}

/// Index subsets `(P1, P2, Q1, Q2)` (1-based, sorted) selecting, per block,
/// which diagonal slot contributed: `P1`/`Q1` the `x` slot, `P2`/`Q2` the `y`
/// slot, and every other block the constant slot.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Family {
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
    pub q1: Vec<usize>,
    pub q2: Vec<usize>,
}

const LANE: u32 = 16;

impl Family {
    pub fn new(p1: &[usize], p2: &[usize], q1: &[usize], q2: &[usize]) -> Self {
        let sorted = |v: &[usize]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        Self {
            p1: sorted(p1),
            p2: sorted(p2),
            q1: sorted(q1),
            q2: sorted(q2),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.p1.is_empty() && self.p2.is_empty() && self.q1.is_empty() && self.q2.is_empty()
    }

    /// Whether some index of `P1 ∪ P2` is adjacent to some index of
    /// `Q1 ∪ Q2` in a class-`k` word.
    pub fn has_adjacent_pair(&self, k: usize) -> bool {
        let ps = self.p1.iter().chain(&self.p2);
        ps.flat_map(|&i| self.q1.iter().chain(&self.q2).map(move |&j| (i, j)))
            .any(|(i, j)| adjacent(i, j, k))
    }

    fn validate(&self, k: usize, mode: Mode) -> Result<()> {
        let all = [&self.p1, &self.p2, &self.q1, &self.q2];
        if let Some(bad) = all.iter().flat_map(|v| v.iter()).find(|&&i| i == 0 || i > k) {
            return Err(Error::InvalidSubsets(format!("index {bad} outside 1..={k}")));
        }
        if self.p1.iter().any(|i| self.p2.contains(i)) || self.q1.iter().any(|j| self.q2.contains(j)) {
            return Err(Error::InvalidSubsets("x and y subsets overlap".into()));
        }
        if mode == Mode::Positive && !(self.p2.is_empty() && self.q2.is_empty()) {
            return Err(Error::InvalidSubsets("positive mode has no y1/y2 slots".into()));
        }
        Ok(())
    }

    fn from_mask(mask: u64) -> Self {
        let lane = |n: u32| -> Vec<usize> {
            let bits = (mask >> (n * LANE)) & 0xffff;
            (0..LANE as usize).filter(|b| bits >> b & 1 == 1).map(|b| b + 1).collect()
        };
        Self {
            p1: lane(0),
            p2: lane(1),
            q1: lane(2),
            q2: lane(3),
        }
    }

    /// Exponent vector in the mode's variable layout. Summands are added in
    /// ascending index order so equal subsets give bit-identical sums.
    pub fn exponents<T: Real>(&self, ps: &[T], qs: &[T], mode: Mode) -> Vec<T> {
        let sum = |idx: &[usize], vals: &[T]| idx.iter().fold(T::zero(), |acc, &i| acc + vals[i - 1]);
        match mode {
            Mode::General => vec![
                sum(&self.p1, ps),
                sum(&self.p2, ps),
                sum(&self.q1, qs),
                sum(&self.q2, qs),
            ],
            Mode::Positive => vec![sum(&self.p1, ps), sum(&self.q1, qs)],
        }
    }
}

/// One reduced term with every family that landed on its exponent vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerm<T: Real> {
    pub exponents: Vec<T>,
    pub coefficient: Complex<T>,
    pub families: Vec<(Family, Complex<T>)>,
}

/// The trace of a word as a generalized polynomial, with term provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceExpansion<T: Real> {
    word: Word,
    param: Parameterization<T>,
    poly: GPoly<T>,
    terms: Vec<ExpansionTerm<T>>,
    families: Vec<(Family, Complex<T>)>,
}

impl<T: Real> TraceExpansion<T> {
    /// The standard-form word that was expanded.
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn param(&self) -> &Parameterization<T> {
        &self.param
    }

    pub fn poly(&self) -> &GPoly<T> {
        &self.poly
    }

    pub fn terms(&self) -> &[ExpansionTerm<T>] {
        &self.terms
    }

    /// Every generated family with its own (uncombined) coefficient.
    pub fn families(&self) -> &[(Family, Complex<T>)] {
        &self.families
    }

    pub fn family_coefficient(&self, family: &Family) -> Complex<T> {
        self.families
            .iter()
            .find(|(f, _)| f == family)
            .map(|(_, c)| *c)
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> Complex<T> {
        self.poly.coefficient(&vec![T::zero(); self.param.vars().len()])
    }

    pub fn evaluate(&self, point: &[T]) -> Result<Complex<T>> {
        self.poly.evaluate(point)
    }

    pub fn to_json(&self) -> TraceExpansionJson {
        self.json_for(&self.poly)
    }

    /// Interchange form restricted to the imaginary parts of the
    /// coefficients; provenance keeps only the surviving terms.
    pub fn imaginary_json(&self) -> TraceExpansionJson {
        self.json_for(&self.poly.imaginary_part())
    }

    fn json_for(&self, poly: &GPoly<T>) -> TraceExpansionJson {
        TraceExpansionJson {
            word: self.word.to_string(),
            mode: self.param.mode,
            s: self.param.s.to_pairs(),
            poly: poly.to_json(),
            provenance: self
                .terms
                .iter()
                .filter(|t| poly.coefficient(&t.exponents) != Complex::default())
                .map(|t| ProvenanceJson {
                    exp: t.exponents.iter().map(|e| e.as_f64()).collect(),
                    families: t.families.iter().map(|(f, _)| f.clone()).collect(),
                })
                .collect(),
        }
    }
}

impl<T: Real> Serialize for TraceExpansion<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceExpansionJson {
    pub word: String,
    pub mode: Mode,
    #[serde(serialize_with = "json::complex_pairs")]
    pub s: Vec<[f64; 2]>,
    pub poly: GPolyJson,
    pub provenance: Vec<ProvenanceJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProvenanceJson {
    #[serde(serialize_with = "json::reals")]
    pub exp: Vec<f64>,
    pub families: Vec<Family>,
}

type Entry<T> = BTreeMap<u64, Complex<T>>;

/// 3x3 matrix whose entries are polynomials keyed by packed family masks.
struct SymbolicMatrix<T: Real> {
    entries: Vec<Entry<T>>,
}

impl<T: Real> SymbolicMatrix<T> {
    fn identity() -> Self {
        let mut entries = vec![Entry::new(); 9];
        for i in 0..3 {
            entries[i * 4].insert(0, Complex::new(T::one(), T::zero()));
        }
        Self { entries }
    }

    /// Right-multiplies by a numeric matrix.
    fn times(&self, m: &CMatrix<T>) -> Self {
        let mut entries = vec![Entry::new(); 9];
        for r in 0..3 {
            for c in 0..3 {
                let out = &mut entries[r * 3 + c];
                for j in 0..3 {
                    let factor = m[(j, c)];
                    if factor == Complex::default() {
                        continue;
                    }
                    for (&mask, &v) in &self.entries[r * 3 + j] {
                        *out.entry(mask).or_default() += v * factor;
                    }
                }
            }
        }
        Self { entries }
    }

    /// Right-multiplies by `diag(1, X, Y)`: column 1 gains the `x_bit`,
    /// column 2 the `y_bit`; a `None` bit zeroes the column.
    fn times_diag(&mut self, x_bit: Option<u64>, y_bit: Option<u64>) {
        for r in 0..3 {
            for (c, bit) in [(1, x_bit), (2, y_bit)] {
                let e = &mut self.entries[r * 3 + c];
                *e = match bit {
                    Some(b) => std::mem::take(e).into_iter().map(|(m, v)| (m | b, v)).collect(),
                    None => Entry::new(),
                };
            }
        }
    }

    fn trace(&self) -> Entry<T> {
        let mut out = Entry::new();
        for i in 0..3 {
            for (&mask, &v) in &self.entries[i * 4] {
                *out.entry(mask).or_default() += v;
            }
        }
        out
    }
}

struct Prepared<T: Real> {
    word: Word,
    k: usize,
    ps: Vec<T>,
    qs: Vec<T>,
}

fn prepare<T: Real>(word: &Word, mode: Mode) -> Result<Prepared<T>> {
    let sf = word.standard_form();
    let k = sf.class_number();
    if k == 0 {
        return Err(Error::ClassTooSmall {
            required: 1,
            found: 0,
        });
    }
    if k > MAX_TRACE_CLASS {
        return Err(Error::ClassTooLarge {
            max: MAX_TRACE_CLASS,
            found: k,
        });
    }
    if mode == Mode::Positive && !sf.is_positive() {
        return Err(Error::NonPositiveWord);
    }
    let (ps, qs) = sf.exponent_pairs();
    let conv = |v: Vec<_>| v.iter().map(|e: &crate::gword::Exponent| T::lit(e.to_f64())).collect();
    Ok(Prepared {
        word: sf,
        k,
        ps: conv(ps),
        qs: conv(qs),
    })
}

/// Runs the multilinear expansion. `live` restricts which A-blocks (first
/// mask) and B-blocks (second mask) keep their variable slots; the others
/// are replaced by `diag(1, 0, 0)`.
fn expand_families<T: Real>(
    k: usize,
    param: &Parameterization<T>,
    live: (u64, u64),
) -> Vec<(u64, Complex<T>)> {
    let s = &param.s;
    let s_bar = s.conj();
    let general = param.mode == Mode::General;
    let mut m = SymbolicMatrix::identity();
    for i in 0..k {
        let bit = 1u64 << i;
        let on = live.0 & bit != 0;
        m.times_diag(on.then_some(bit), (on && general).then_some(bit << LANE));
        m = m.times(s);
        let on = live.1 & bit != 0;
        m.times_diag(
            on.then_some(bit << (2 * LANE)),
            (on && general).then_some(bit << (3 * LANE)),
        );
        m = m.times(&s_bar);
    }
    m.trace().into_iter().collect()
}

/// Expands `Tr W(A, B)` symbolically. The word is brought to standard form
/// first; the trace is invariant under the cyclic rotation involved.
pub fn symbolic_trace<T: Real>(word: &Word, param: &Parameterization<T>) -> Result<TraceExpansion<T>> {
    let prep = prepare::<T>(word, param.mode)?;
    let all = (1u64 << prep.k) - 1;
    let raw = expand_families(prep.k, param, (all, all));
    Ok(assemble(prep, param, raw))
}

fn assemble<T: Real>(prep: Prepared<T>, param: &Parameterization<T>, raw: Vec<(u64, Complex<T>)>) -> TraceExpansion<T> {
    let mode = param.mode;
    let mut rows: Vec<(Vec<T>, Family, Complex<T>)> = raw
        .into_iter()
        .map(|(mask, c)| {
            let fam = Family::from_mask(mask);
            (fam.exponents(&prep.ps, &prep.qs, mode), fam, c)
        })
        .collect();
    rows.sort_by(|a, b| ExpVec(a.0.clone()).cmp(&ExpVec(b.0.clone())).then_with(|| a.1.cmp(&b.1)));

    let tol = T::lit(EXP_TOL);
    let mut clusters: Vec<ExpansionTerm<T>> = Vec::new();
    for (exps, fam, c) in &rows {
        let lead = exps.first().copied().unwrap_or_else(T::zero);
        let hit = clusters
            .iter_mut()
            .rev()
            .take_while(|t| t.exponents.first().copied().unwrap_or_else(T::zero) >= lead - tol)
            .find(|t| t.exponents.iter().zip(exps).all(|(a, b)| (*a - *b).abs() <= tol));
        match hit {
            Some(t) => {
                t.coefficient += *c;
                t.families.push((fam.clone(), *c));
            }
            None => clusters.push(ExpansionTerm {
                exponents: exps.clone(),
                coefficient: *c,
                families: vec![(fam.clone(), *c)],
            }),
        }
    }
    let poly = GPoly::reduce(
        param.vars(),
        clusters.iter().map(|t| (t.exponents.clone(), t.coefficient)),
    )
    .expect("layout arity");
    let terms = clusters
        .into_iter()
        .filter(|t| poly.coefficient(&t.exponents) != Complex::default())
        .collect();
    let mut families: Vec<(Family, Complex<T>)> = rows.into_iter().map(|(_, f, c)| (f, c)).collect();
    families.sort_by(|a, b| a.0.cmp(&b.0));
    TraceExpansion {
        word: prep.word,
        param: param.clone(),
        poly,
        terms,
        families,
    }
}

/// Coefficient of the exponent vector generated by `family`, computed from
/// the reduced product in which every block outside `P1 ∪ P2` (A-blocks) or
/// `Q1 ∪ Q2` (B-blocks) is replaced by `diag(1, 0, 0)`.
pub fn term_coefficient<T: Real>(
    word: &Word,
    param: &Parameterization<T>,
    family: &Family,
) -> Result<Complex<T>> {
    let prep = prepare::<T>(word, param.mode)?;
    family.validate(prep.k, param.mode)?;
    let mask = |a: &[usize], b: &[usize]| a.iter().chain(b).fold(0u64, |m, i| m | 1 << (i - 1));
    let live = (mask(&family.p1, &family.p2), mask(&family.q1, &family.q2));
    let exps = family.exponents(&prep.ps, &prep.qs, param.mode);
    let raw = expand_families(prep.k, param, live);
    let expansion = assemble(prep, param, raw);
    Ok(expansion
        .terms
        .iter()
        .find(|t| t.exponents.iter().zip(&exps).all(|(a, b)| (*a - *b).abs() <= T::lit(EXP_TOL)))
        .map(|t| t.coefficient)
        .unwrap_or_default())
}

/// Coefficient carried by one family alone. Each block's diagonal is
/// replaced by the unit vector of the slot the family picks, so the trace
/// of the resulting numeric product is exactly that family's contribution.
pub fn family_coefficient<T: Real>(
    word: &Word,
    param: &Parameterization<T>,
    family: &Family,
) -> Result<Complex<T>> {
    let prep = prepare::<T>(word, param.mode)?;
    family.validate(prep.k, param.mode)?;
    let slot = |one: &[usize], two: &[usize], i: usize| {
        let mut d = [T::zero(); 3];
        let idx = if one.contains(&i) {
            1
        } else if two.contains(&i) {
            2
        } else {
            0
        };
        d[idx] = T::one();
        d
    };
    Ok(diagonal_product_trace(&param.s, prep.k, |letter, i| match letter {
        Letter::A => slot(&family.p1, &family.p2, i),
        Letter::B => slot(&family.q1, &family.q2, i),
    }))
}

/// `Tr prod_i D_A(i) S D_B(i) conj(S)` with the diagonals supplied per
/// block (1-based block index).
pub fn diagonal_product_trace<T: Real>(
    s: &CMatrix<T>,
    k: usize,
    diag: impl Fn(Letter, usize) -> [T; 3],
) -> Complex<T> {
    let s_bar = s.conj();
    let mut m = CMatrix::identity(3);
    for i in 1..=k {
        m = m.matmul(&CMatrix::diag_real(&diag(Letter::A, i)));
        m = m.matmul(s);
        m = m.matmul(&CMatrix::diag_real(&diag(Letter::B, i)));
        m = m.matmul(&s_bar);
    }
    m.trace()
}

/// Numeric trace of the parameterized product at `point` (layout of the
/// mode), computed directly from 3x3 matrices.
pub fn numeric_trace<T: Real>(word: &Word, param: &Parameterization<T>, point: &[T]) -> Result<Complex<T>> {
    let prep = prepare::<T>(word, param.mode)?;
    let vars = param.vars().len();
    if point.len() != vars {
        return Err(Error::ArityMismatch {
            expected: vars,
            found: point.len(),
        });
    }
    if point.iter().any(|v| !(*v > T::zero())) {
        return Err(Error::NonPositivePoint);
    }
    let (xa, ya, xb, yb) = match param.mode {
        Mode::General => (point[0], Some(point[1]), point[2], Some(point[3])),
        Mode::Positive => (point[0], None, point[1], None),
    };
    Ok(diagonal_product_trace(&param.s, prep.k, |letter, i| {
        let (x, y, e) = match letter {
            Letter::A => (xa, ya, prep.ps[i - 1]),
            Letter::B => (xb, yb, prep.qs[i - 1]),
        };
        [T::one(), x.powf(e), y.map_or(T::zero(), |y| y.powf(e))]
    }))
}

/// Closed-form coefficient of an adjacent single-pair family, in both
/// conjugate variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjacentCoefficient<T: Real> {
    pub primary: Complex<T>,
    pub conjugate: Complex<T>,
    pub non_real: bool,
}

impl<T: Real> AdjacentCoefficient<T> {
    /// The variant carried by the family `x^{p_i} y^{q_j}` (or
    /// `x1^{p_i} y2^{q_j}`): `i = j` gives the primary form, the other
    /// adjacent placements its conjugate.
    pub fn for_pair(&self, i: usize, j: usize) -> Complex<T> {
        if i == j {
            self.primary
        } else {
            self.conjugate
        }
    }
}

/// General mode: `conj(s21) s11 conj(s31) s32 (s11 conj(s11))^(k-2)`;
/// positive mode: `s22 conj(s21)^2 s11 (s11 conj(s11))^(k-2)`.
pub fn adjacent_coefficient<T: Real>(k: usize, param: &Parameterization<T>) -> Result<AdjacentCoefficient<T>> {
    if k < 2 {
        return Err(Error::ClassTooSmall {
            required: 2,
            found: k,
        });
    }
    let s = |i, j| param.entry(i, j);
    let base = match param.mode {
        Mode::General => s(2, 1).conj() * s(1, 1) * s(3, 1).conj() * s(3, 2),
        Mode::Positive => s(2, 2) * s(2, 1).conj() * s(2, 1).conj() * s(1, 1),
    };
    let r = s(1, 1).norm_sqr();
    let primary = base * r.powi(k as i32 - 2);
    Ok(AdjacentCoefficient {
        primary,
        conjugate: primary.conj(),
        non_real: primary.im.abs() > T::tol(1e-14),
    })
}

/// Imaginary part of the class-2 trace with the reference unitary and
/// `x1 = x2 = x`, `y1 = y2 = y`, in closed form.
pub fn class2_imag_closed_form<T: Real>(p1: T, q1: T, p2: T, q2: T, x: T, y: T) -> Result<T> {
    if !(x > T::zero() && y > T::zero()) {
        return Err(Error::NonPositivePoint);
    }
    let f = |a: T, b: T| x.powf(b) * (y.powf(a) - T::one()) + x.powf(a) * (T::one() - y.powf(b)) + y.powf(b) - y.powf(a);
    Ok(T::lit(3.0 / 128.0) * f(p1, p2) * f(q1, q2))
}

/// First grid value `x` at which the positive-mode trace with `x = y` has
/// `|Im| > 1e-10`, with that imaginary part.
pub fn inexactness_certificate<T: Real>(
    word: &Word,
    s: &CMatrix<T>,
    grid: &[T],
) -> Result<Option<(T, T)>> {
    if !word.is_positive() {
        return Err(Error::NonPositiveWord);
    }
    let param = Parameterization::new(s.clone(), Mode::Positive)?;
    let expansion = symbolic_trace(word, &param)?;
    let imag = expansion.poly().imaginary_part();
    for &x in grid {
        let v = imag.evaluate(&[x, x])?.re;
        if v.abs() > T::tol(CERTIFICATE_TOL) {
            return Ok(Some((x, v)));
        }
    }
    Ok(None)
}

/// Sum of the imaginary parts of the positive-mode coefficients whose
/// total degree (with `x = y`) equals `degree`.
pub fn imaginary_sum_at_degree<T: Real>(expansion: &TraceExpansion<T>, degree: T) -> T {
    let merged = expansion.poly().merge_variables(&[("y", "x")]);
    merged.coefficient(&[degree]).im
}

/// The value the minimal-degree imaginary coefficient sum takes for a
/// positive word: `Im[adjacent coefficient] * (#odd - #even)` over the
/// minimizing positions of the cyclic pair sums.
pub fn predicted_minimal_imaginary_sum<T: Real>(
    k: usize,
    param: &Parameterization<T>,
    count_odd: usize,
    count_even: usize,
) -> Result<T> {
    let gamma = adjacent_coefficient(k, &param.with_mode(Mode::Positive))?.primary.im;
    Ok(gamma * (T::from_usize(count_odd).unwrap() - T::from_usize(count_even).unwrap()))
}
