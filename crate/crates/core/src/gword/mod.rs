//! Generalized words in two letters and their combinatorial invariants.

mod exactness;
mod exponent;
mod relations;
mod symmetry;
mod word;

pub use exactness::{exactness, ExactnessReport, TIE_TOL};
pub use exponent::Exponent;
pub use relations::{thm31_relations, RelationWitness, Relations, APPROX_TOL, MAX_CLASS};
pub use symmetry::{is_nearly_symmetric, is_symmetric, nearly_symmetric_split, NearSymmetry};
pub use word::{parse_exponent, Block, Letter, Transform, Word};

/// Whether `p_i` and `q_j` (1-based) are cyclic neighbours in a class-`k`
/// word: `i = j`, `i - 1 = j`, or `(i, j) = (1, k)`.
pub fn adjacent(i: usize, j: usize, k: usize) -> bool {
    i == j || i == j + 1 || (i == 1 && j == k)
}
