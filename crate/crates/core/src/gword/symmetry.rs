use serde::Serialize;

use super::{Block, Word};

/// Certificate that a word is nearly symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NearSymmetry {
    /// The standard form is itself a palindrome (class 0 and the identity).
    Symmetric,
    /// After rotating the standard form left by `rotation` block pairs, the
    /// first `2 * index - 1` blocks and the remaining blocks are palindromes.
    Split { rotation: usize, index: usize },
}

impl NearSymmetry {
    /// The two symmetric factors this certificate describes, as words.
    pub fn factors(&self, word: &Word) -> (Word, Word) {
        match *self {
            NearSymmetry::Symmetric => (word.standard_form(), Word::identity()),
            NearSymmetry::Split { rotation, index } => {
                let rotated = word.cycle_pairs(rotation as i64);
                let (head, tail) = rotated.blocks().split_at(2 * index - 1);
                (Word::new(head.to_vec()), Word::new(tail.to_vec()))
            }
        }
    }
}

fn palindrome(blocks: &[Block]) -> bool {
    let n = blocks.len();
    (0..n / 2).all(|i| blocks[i] == blocks[n - 1 - i])
}

/// Whether the (linearly normalized) word reads the same reversed.
pub fn is_symmetric(word: &Word) -> bool {
    palindrome(word.normalized().blocks())
}

/// Searches every pair rotation and split point of the standard form for a
/// factorization into two palindromes.
pub fn nearly_symmetric_split(word: &Word) -> Option<NearSymmetry> {
    let sf = word.standard_form();
    let k = sf.len() / 2;
    if k == 0 {
        return Some(NearSymmetry::Symmetric);
    }
    let mut blocks = sf.blocks().to_vec();
    for rotation in 0..k {
        for index in 1..=k {
            let (head, tail) = blocks.split_at(2 * index - 1);
            if palindrome(head) && palindrome(tail) {
                return Some(NearSymmetry::Split { rotation, index });
            }
        }
        blocks.rotate_left(2);
    }
    None
}

pub fn is_nearly_symmetric(word: &Word) -> bool {
    nearly_symmetric_split(word).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn symmetric_words() {
        assert!(is_symmetric(&w("A^2 B^3 A^2")));
        assert!(!is_symmetric(&w("A^2 B^3")));
        assert!(is_symmetric(&w("A^7")));
        assert!(is_symmetric(&w("A B A^0 B^-1 A^-1")));
    }

    #[test]
    fn class_two_split() {
        assert_eq!(
            nearly_symmetric_split(&w("A^2 B^3 A^2 B^5")),
            Some(NearSymmetry::Split {
                rotation: 0,
                index: 2
            })
        );
        assert_eq!(nearly_symmetric_split(&w("A B^2 A^2 B^4")), None);
    }

    #[test]
    fn exact_but_not_nearly_symmetric() {
        assert_eq!(nearly_symmetric_split(&w("A B^2 A B^3 A^4 B^5")), None);
    }

    #[test]
    fn degenerate_classes() {
        assert_eq!(nearly_symmetric_split(&w("A^3")), Some(NearSymmetry::Symmetric));
        assert_eq!(nearly_symmetric_split(&w("A B^-1 B A^-1")), Some(NearSymmetry::Symmetric));
        assert!(is_nearly_symmetric(&w("A^3 B^-2")));
    }

    #[test]
    fn factors_are_symmetric() {
        let word = w("A B^3 A^4 B^3 A B^2");
        let cert = nearly_symmetric_split(&word).expect("nearly symmetric");
        let (x, y) = cert.factors(&word);
        assert!(is_symmetric(&x) && is_symmetric(&y));
        let mut joined = x.blocks().to_vec();
        joined.extend_from_slice(y.blocks());
        let NearSymmetry::Split { rotation, .. } = cert else {
            panic!("class 3 word needs a split");
        };
        assert_eq!(Word::new(joined).standard_form(), word.cycle_pairs(rotation as i64));
        for j in 0..3 {
            assert!(is_nearly_symmetric(&word.cycle_pairs(j)));
        }
    }
}
