use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported generator count (letters are stored as bytes).
pub const MAX_GENERATORS: usize = 255;

/// Largest supported ambient dimension `n^s` of a homogeneous component.
pub const MAX_AMBIENT_DIM: usize = 1 << 16;

/// A monomial of the free algebra: a sequence of 0-based generator indices.
/// The empty word is the unit.
///
/// Words are ordered by length first, then lexicographically, which for a
/// fixed length is the base-n positional order used by [`word_index`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Word {
        assert!(i < MAX_GENERATORS, "generator index {i} too large");
        Word(vec![i as u8])
    }

    pub fn from_letters<I: IntoIterator<Item = usize>>(letters: I) -> Word {
        Word(
            letters
                .into_iter()
                .map(|i| {
                    assert!(i < MAX_GENERATORS, "generator index {i} too large");
                    i as u8
                })
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().map(|&b| b as usize)
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().map(|&b| b as usize)
    }

    /// The word with its first letter removed.
    pub fn tail(&self) -> Word {
        Word(self.0.get(1..).unwrap_or_default().to_vec())
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().max().map(|&b| b as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Letters sorted ascending: the commutative image of the word.
    pub fn sorted(&self) -> Word {
        let mut v = self.0.clone();
        v.sort_unstable();
        Word(v)
    }

    /// Position of this word among all words of its length over `n` letters.
    pub fn index(&self, n: usize) -> usize {
        self.0.iter().fold(0, |acc, &b| acc * n + b as usize)
    }

    pub fn from_index(mut index: usize, n: usize, degree: usize) -> Word {
        let mut v = vec![0u8; degree];
        for slot in v.iter_mut().rev() {
            *slot = (index % n) as u8;
            index /= n;
        }
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &b in &self.0 {
            write!(f, "x{}", b as usize + 1)?;
        }
        Ok(())
    }
}

/// `n^s`, refusing dimensions beyond [`MAX_AMBIENT_DIM`].
pub fn ambient_dim(n: usize, degree: usize) -> Result<usize> {
    if n == 1 {
        return Ok(1);
    }
    u32::try_from(degree)
        .ok()
        .and_then(|exp| n.checked_pow(exp))
        .filter(|&d| d <= MAX_AMBIENT_DIM)
        .ok_or(Error::TooLarge { n, degree })
}

/// Index of `w` in the canonical enumeration of degree-`s` words over `n`
/// generators (base-n positional value, leftmost letter most significant).
pub fn word_index(w: &Word, n: usize, s: usize) -> Result<usize> {
    if w.degree() != s {
        return Err(Error::DegreeMismatch { expected: s, found: w.degree() });
    }
    if let Some(m) = w.max_letter() {
        if m >= n {
            return Err(Error::IndexOutOfRange { index: m, bound: n });
        }
    }
    Ok(w.index(n))
}

/// Inverse of [`word_index`].
pub fn index_word(index: usize, n: usize, s: usize) -> Result<Word> {
    let dim = ambient_dim(n, s)?;
    if index >= dim {
        return Err(Error::IndexOutOfRange { index, bound: dim });
    }
    Ok(Word::from_index(index, n, s))
}
