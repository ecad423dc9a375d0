//! Words in the free group `F_n` and automorphisms of it.
//!
//! Words are kept freely reduced at all times. Composition of endomorphisms is
//! function composition: `f.compose(&g)` applies `g` first.

mod abelian;
mod automorphism;
mod gersten;

pub use abelian::{abelianize, abelianize_mod2, act_on_functional, Functional, IntMatrix, Mod2Matrix};
pub use automorphism::{is_inner, nielsen, outer_equal, Automorphism, Endomorphism, NielsenKind};
pub use gersten::{
    gersten_relations, verify_gersten, FamilyResult, Gen, GenLetter, GenWord, GerstenFamily,
    GerstenReport, Relation,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator `a_i` or its inverse, stored as a signed nonzero index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    /// `index` is 1-based.
    pub fn new(index: usize, inverse: bool) -> Letter {
        debug_assert!(index >= 1);
        let i = index as i32;
        Letter(if inverse { -i } else { i })
    }

    pub fn from_signed(raw: i32, rank: usize) -> Result<Letter> {
        if raw == 0 || raw.unsigned_abs() as usize > rank {
            return Err(Error::IndexOutOfRange { index: raw as i64, rank });
        }
        Ok(Letter(raw))
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn sign(self) -> i64 {
        if self.0 < 0 {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    pub fn raw(self) -> i32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "a{}^-1", self.index())
        } else {
            write!(f, "a{}", self.index())
        }
    }
}

/// A freely reduced word of the free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

/// Push `letter` onto a reduced stack, cancelling against the top if possible.
fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    if stack.last() == Some(&letter.inverse()) {
        stack.pop();
    } else {
        stack.push(letter);
    }
}

impl Word {
    pub fn identity(rank: usize) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// The generator `a_index`.
    pub fn generator(rank: usize, index: usize) -> Result<Word> {
        Word::from_letters(rank, &[Letter::from_signed(index as i32, rank)?])
    }

    /// `a_index^power`.
    pub fn generator_power(rank: usize, index: usize, power: i64) -> Result<Word> {
        let letter = Letter::from_signed(index as i32, rank)?;
        let letter = if power < 0 { letter.inverse() } else { letter };
        Ok(Word { rank, letters: vec![letter; power.unsigned_abs() as usize] })
    }

    /// Freely reduce a raw signed-index sequence.
    pub fn reduce(rank: usize, raw: &[i32]) -> Result<Word> {
        if rank == 0 {
            return Err(Error::InvalidRank(rank));
        }
        let mut stack = Vec::with_capacity(raw.len());
        for &r in raw {
            push_reduced(&mut stack, Letter::from_signed(r, rank)?);
        }
        Ok(Word { rank, letters: stack })
    }

    pub fn from_letters(rank: usize, letters: &[Letter]) -> Result<Word> {
        let raw: Vec<i32> = letters.iter().map(|l| l.raw()).collect();
        Word::reduce(rank, &raw)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn to_raw(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.raw()).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// The reduced product `self * other`.
    pub fn mul(&self, other: &Word) -> Result<Word> {
        check_rank(self.rank, other.rank)?;
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut stack, l);
        }
        Ok(Word { rank: self.rank, letters: stack })
    }

    /// `w^{-1} self w`.
    pub fn conjugate_by(&self, w: &Word) -> Result<Word> {
        w.inverse().mul(self)?.mul(w)
    }

    /// Exponent sum of each generator, indexed from 0.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.rank];
        for l in &self.letters {
            sums[l.index() - 1] += l.sign();
        }
        sums
    }

    /// Split into `(s, core)` with `self = s^{-1} core s` and `core` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let len = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < len && self.letters[k] == self.letters[len - 1 - k].inverse() {
            k += 1;
        }
        let core = Word { rank: self.rank, letters: self.letters[k..len - k].to_vec() };
        let suffix = Word { rank: self.rank, letters: self.letters[len - k..].to_vec() };
        (suffix, core)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_rank(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::RankMismatch { left, right });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert!(Word::reduce(3, &[1, -1]).unwrap().is_empty());
        assert_eq!(Word::reduce(3, &[1, 2, -2, 3]).unwrap().to_raw(), vec![1, 3]);
        assert!(Word::reduce(3, &[2, -1, 1, -2]).unwrap().is_empty());
    }

    #[test]
    fn reduce_rejects_bad_index() {
        assert_eq!(
            Word::reduce(2, &[1, 3]),
            Err(Error::IndexOutOfRange { index: 3, rank: 2 })
        );
        assert!(Word::reduce(2, &[0]).is_err());
    }

    #[test]
    fn mul_rank_mismatch() {
        let a = Word::generator(2, 1).unwrap();
        let b = Word::generator(3, 1).unwrap();
        assert_eq!(a.mul(&b), Err(Error::RankMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn cyclic_decomposition_recovers_conjugate() {
        let w = Word::reduce(3, &[2, -3, 1, 3, -2]).unwrap();
        let (s, core) = w.cyclic_decomposition();
        assert_eq!(core.to_raw(), vec![1]);
        assert_eq!(s.to_raw(), vec![3, -2]);
        assert_eq!(core.conjugate_by(&s).unwrap(), w);
    }

    #[test]
    fn display() {
        let w = Word::reduce(2, &[1, -2]).unwrap();
        assert_eq!(w.to_string(), "a1 a2^-1");
        assert_eq!(Word::identity(2).to_string(), "1");
    }
}
