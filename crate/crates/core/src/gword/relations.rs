use serde::Serialize;

use super::{Exponent, Word};
use crate::error::{Error, Result};

/// Largest class number the subset enumeration accepts.
pub const MAX_CLASS: usize = 20;

/// Tolerance for subset-sum equality when some exponent is not rational.
pub const APPROX_TOL: f64 = 1e-9;

/// A pair of index subsets with `sum(p over P) = p1` and `sum(q over Q) = q1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationWitness {
    /// 1-based indices into `p1..pk`.
    pub p_subset: Vec<usize>,
    /// 1-based indices into `q1..qk`.
    pub q_subset: Vec<usize>,
    pub trivial: bool,
    pub approximate: bool,
}

/// All subset-sum relations for the first exponent of each letter.
///
/// Witness pairs are the Cartesian product of `p_solutions` and
/// `q_solutions`; it is kept factored because the product can be large.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relations {
    pub class_number: usize,
    pub p_solutions: Vec<Vec<usize>>,
    pub q_solutions: Vec<Vec<usize>>,
    /// Sums were compared with [`APPROX_TOL`] instead of exactly.
    pub approximate: bool,
}

impl Relations {
    pub fn total_count(&self) -> u128 {
        self.p_solutions.len() as u128 * self.q_solutions.len() as u128
    }

    /// Number of witness pairs other than `P = {1}, Q = {1}`.
    pub fn nontrivial_count(&self) -> u128 {
        self.total_count().saturating_sub(1)
    }

    pub fn has_nontrivial(&self) -> bool {
        self.nontrivial_count() > 0
    }

    pub fn witnesses(&self) -> impl Iterator<Item = RelationWitness> + '_ {
        self.p_solutions.iter().flat_map(move |p| {
            self.q_solutions.iter().map(move |q| RelationWitness {
                p_subset: p.clone(),
                q_subset: q.clone(),
                trivial: p.as_slice() == [1] && q.as_slice() == [1],
                approximate: self.approximate,
            })
        })
    }
}

/// Enumerates every `(P, Q)` with `sum_P p = p1` and `sum_Q q = q1`.
///
/// With rational exponents the sums are compared exactly over a common
/// denominator; otherwise the result is flagged approximate.
pub fn thm31_relations(word: &Word) -> Result<Relations> {
    let (ps, qs) = word.exponent_pairs();
    let k = ps.len();
    if k == 0 {
        return Err(Error::ClassTooSmall {
            required: 1,
            found: 0,
        });
    }
    if k > MAX_CLASS {
        return Err(Error::ClassTooLarge {
            max: MAX_CLASS,
            found: k,
        });
    }
    let (p_solutions, p_exact) = solutions(&ps);
    let (q_solutions, q_exact) = solutions(&qs);
    Ok(Relations {
        class_number: k,
        p_solutions,
        q_solutions,
        approximate: !(p_exact && q_exact),
    })
}

/// Subsets of `values` summing to `values[0]`, and whether the comparison
/// was exact.
fn solutions(values: &[Exponent]) -> (Vec<Vec<usize>>, bool) {
    match scaled_integers(values) {
        Some(ints) => (subsets_hitting(&ints, |s| s == ints[0]), true),
        None => {
            let floats: Vec<f64> = values.iter().map(Exponent::to_f64).collect();
            let target = floats[0];
            let tol = APPROX_TOL * target.abs().max(1.0);
            (subsets_hitting(&floats, |s| (s - target).abs() <= tol), false)
        }
    }
}

/// Rewrites rationals as integers over their least common denominator.
fn scaled_integers(values: &[Exponent]) -> Option<Vec<i128>> {
    let rationals: Vec<_> = values
        .iter()
        .map(Exponent::as_rational)
        .collect::<Option<_>>()?;
    let lcd = rationals.iter().try_fold(1i128, |acc, r| {
        let d = *r.denom() as i128;
        acc.checked_mul(d / num_integer::gcd(acc, d))
    })?;
    // Headroom so that sums of up to MAX_CLASS terms cannot overflow.
    let limit = i128::MAX >> 8;
    rationals
        .iter()
        .map(|r| {
            let v = (*r.numer() as i128).checked_mul(lcd / *r.denom() as i128)?;
            (v.abs() < limit).then_some(v)
        })
        .collect()
}

fn subsets_hitting<V>(values: &[V], hit: impl Fn(V) -> bool) -> Vec<Vec<usize>>
where
    V: Copy + Default + std::ops::Add<Output = V>,
{
    let k = values.len();
    let mut sums = vec![V::default(); 1 << k];
    let mut found = Vec::new();
    for mask in 1usize..(1 << k) {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + values[low];
        if hit(sums[mask]) {
            found.push((0..k).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect());
        }
    }
    found.sort();
    found
}
