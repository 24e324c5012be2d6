//! Words over `Z/sZ` and the free monoid on two letters.

use std::fmt;

use super::FusionError;
use crate::partition::Color;

/// Letters are kept in `1..=s`; the class of zero is written `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    s: u32,
    letters: Vec<u32>,
}

impl Word {
    pub fn new(letters: Vec<u32>, s: u32) -> Result<Self, FusionError> {
        if s == 0 {
            return Err(FusionError::InvalidLabel("the modulus s must be at least 1".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&a| a == 0 || a > s) {
            return Err(FusionError::InvalidLabel(format!("letter {bad} outside 1..={s}")));
        }
        Ok(Self { s, letters })
    }

    pub fn empty(s: u32) -> Self {
        Self { s, letters: vec![] }
    }

    pub fn letter(a: u32, s: u32) -> Self {
        Self::new(vec![a], s).expect("letter in range")
    }

    pub fn modulus(&self) -> u32 {
        self.s
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the letters, each read in `1..=s`.
    pub fn letter_sum(&self) -> u64 {
        self.letters.iter().map(|&a| a as u64).sum()
    }

    fn negate(a: u32, s: u32) -> u32 {
        // −a mod s, read back into 1..=s
        if a == s {
            s
        } else {
            s - a
        }
    }

    /// Letters negated, order reversed.
    pub fn involution(&self) -> Word {
        Word {
            s: self.s,
            letters: self.letters.iter().rev().map(|&a| Self::negate(a, self.s)).collect(),
        }
    }

    /// The last letter of `self` and the first of `other` are added; absent
    /// when either word is empty.
    pub fn fuse(&self, other: &Word) -> Option<Word> {
        let (&last, head) = self.letters.split_last()?;
        let (&first, tail) = other.letters.split_first()?;
        let mut mid = (last + first) % self.s;
        if mid == 0 {
            mid = self.s;
        }
        let mut letters = head.to_vec();
        letters.push(mid);
        letters.extend_from_slice(tail);
        Some(Word { s: self.s, letters })
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { s: self.s, letters }
    }

    pub(crate) fn split_at(&self, i: usize) -> (Word, Word) {
        let (a, b) = self.letters.split_at(i);
        (
            Word { s: self.s, letters: a.to_vec() },
            Word { s: self.s, letters: b.to_vec() },
        )
    }

    /// Every word over `1..=s` with letter sum exactly `total`.
    pub fn with_letter_sum(total: u64, s: u32) -> Vec<Word> {
        let mut out = Vec::new();
        fn rec(rest: u64, s: u32, cur: &mut Vec<u32>, out: &mut Vec<Word>) {
            if rest == 0 {
                out.push(Word { s, letters: cur.clone() });
                return;
            }
            for a in 1..=s.min(rest as u32) {
                cur.push(a);
                rec(rest - a as u64, s, cur, out);
                cur.pop();
            }
        }
        rec(total, s, &mut Vec::new(), &mut out);
        out
    }
}

/// `x̄` for a word.
pub fn word_involution(w: &Word) -> Word {
    w.involution()
}

/// `a · b`, or `None` when either word is empty.
pub fn word_fusion(a: &Word, b: &Word) -> Result<Option<Word>, FusionError> {
    if a.s != b.s {
        return Err(FusionError::ModulusMismatch(a.s, b.s));
    }
    Ok(a.fuse(b))
}

/// `r[1,2,1]`; the alternate form `{:#}` appends the modulus, `r[1,2,1]@3`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("r[")?;
        for (i, a) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")?;
        if f.alternate() {
            write!(f, "@{}", self.s)?;
        }
        Ok(())
    }
}

/// A word in the free monoid on `α` (white) and `ᾱ` (black).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(pub Vec<Color>);

impl FreeWord {
    pub fn involution(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|c| c.inverted()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("f[")?;
        for c in &self.0 {
            write!(f, "{}", c.letter())?;
        }
        f.write_str("]")
    }
}
