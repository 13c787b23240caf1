use super::{Exponent, Word};
use crate::error::{Error, Result};

/// Default tie tolerance for minima among non-rational sums.
pub const TIE_TOL: f64 = 1e-9;

/// The cyclic pairwise sums `L` of a standard-form word and the parity
/// statistics of the positions attaining their minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactnessReport {
    /// `L_1 = p1+q1, L_2 = q1+p2, ..., L_2k = qk+p1`.
    pub l_values: Vec<Exponent>,
    pub min_value: Exponent,
    /// 1-based positions in `l_values` attaining the minimum.
    pub min_indices: Vec<usize>,
    pub count_odd: usize,
    pub count_even: usize,
    pub exact: bool,
}

pub fn exactness(word: &Word, tol: f64) -> Result<ExactnessReport> {
    let sf = word.standard_form();
    let blocks = sf.blocks();
    let n = blocks.len();
    if n < 2 {
        return Err(Error::ClassTooSmall {
            required: 1,
            found: 0,
        });
    }
    let l_values: Vec<Exponent> = (0..n)
        .map(|i| blocks[i].exponent.add(&blocks[(i + 1) % n].exponent))
        .collect();

    let exact_mode = l_values.iter().all(Exponent::is_rational);
    let min_value = *l_values
        .iter()
        .min_by(|a, b| a.total_cmp(b))
        .expect("non-empty");
    let min_indices: Vec<usize> = l_values
        .iter()
        .enumerate()
        .filter(|(_, l)| {
            if exact_mode {
                **l == min_value
            } else {
                (l.to_f64() - min_value.to_f64()).abs() <= tol
            }
        })
        .map(|(i, _)| i + 1)
        .collect();
    let count_odd = min_indices.iter().filter(|&&i| i % 2 == 1).count();
    let count_even = min_indices.len() - count_odd;
    Ok(ExactnessReport {
        l_values,
        min_value,
        min_indices,
        count_odd,
        count_even,
        exact: count_odd == count_even,
    })
}
