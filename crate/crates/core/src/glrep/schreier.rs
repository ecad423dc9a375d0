//! The index-2 subgroup `K = ker f`, `f(a_i) = [i = n]`, and its free basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{act_on_functional, Automorphism, Functional, Letter, Word};

/// The distinguished functional `f = e_n*`.
pub fn base_functional(n: usize) -> Functional {
    Functional::base(n)
}

/// Whether `a` fixes `f`, i.e. lies in the stabiliser `G`.
pub fn stabilizes_f(a: &Automorphism) -> bool {
    let n = a.rank();
    (1..=n).all(|i| {
        let parity = a.forward().image(i).letters().iter().filter(|l| l.index() == n).count() % 2;
        parity == usize::from(i == n)
    })
}

/// Same test through the coset action; used to cross-check `stabilizes_f`.
pub fn stabilizes_f_via_action(a: &Automorphism) -> Result<bool> {
    let f = base_functional(a.rank());
    Ok(act_on_functional(a, &f)? == f)
}

/// Free basis of `K` from the transversal `{1, a_n}`: `x_i = a_i`,
/// `y_i = a_n a_i a_n^-1` (`i < n`) and `z = a_n^2`, ordered `x.., y.., z`.
///
/// Symbol words are stored as words of rank `2n − 1`: `x_i ↦ i`,
/// `y_i ↦ n − 1 + i`, `z ↦ 2n − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchreierBasis {
    n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    X(usize),
    Y(usize),
    Z,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::X(i) => write!(f, "x{i}"),
            Symbol::Y(i) => write!(f, "y{i}"),
            Symbol::Z => write!(f, "z"),
        }
    }
}

impl SchreierBasis {
    pub fn new(n: usize) -> Result<SchreierBasis> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        Ok(SchreierBasis { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2n − 1`.
    pub fn size(&self) -> usize {
        2 * self.n - 1
    }

    pub fn symbol_index(&self, s: Symbol) -> usize {
        match s {
            Symbol::X(i) => i,
            Symbol::Y(i) => self.n - 1 + i,
            Symbol::Z => 2 * self.n - 1,
        }
    }

    pub fn symbol(&self, index: usize) -> Symbol {
        if index < self.n {
            Symbol::X(index)
        } else if index < 2 * self.n - 1 {
            Symbol::Y(index - self.n + 1)
        } else {
            Symbol::Z
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        (1..=self.size()).map(|k| self.symbol(k)).collect()
    }

    /// The element of `F_n` a symbol stands for.
    pub fn definition(&self, s: Symbol) -> Word {
        let n = self.n as i32;
        let raw: Vec<i32> = match s {
            Symbol::X(i) => vec![i as i32],
            Symbol::Y(i) => vec![n, i as i32, -n],
            Symbol::Z => vec![n, n],
        };
        Word::reduce(self.n, &raw).expect("indices in range")
    }

    /// Rewrite `w ∈ K` in the basis.
    pub fn rewrite(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.n {
            return Err(Error::RankMismatch { left: w.rank(), right: self.n });
        }
        let n = self.n;
        let mut coset = 0u8;
        let mut out: Vec<Letter> = Vec::new();
        let mut emit = |s: Symbol, inverse: bool| out.push(Letter::new(self.symbol_index(s), inverse));
        for l in w.letters() {
            if l.index() < n {
                let s = if coset == 0 { Symbol::X(l.index()) } else { Symbol::Y(l.index()) };
                emit(s, l.is_inverse());
                continue;
            }
            // a_n: coset 0 -> 1 silently, 1 -> 0 emitting z
            // a_n^-1: coset 0 -> 1 emitting z^-1, 1 -> 0 silently
            match (coset, l.is_inverse()) {
                (1, false) => emit(Symbol::Z, false),
                (0, true) => emit(Symbol::Z, true),
                _ => {}
            }
            coset ^= 1;
        }
        if coset != 0 {
            return Err(Error::NotInKernel);
        }
        Word::from_letters(self.size(), &out)
    }

    /// Substitute definitions back into a symbol word.
    pub fn expand(&self, symbols: &Word) -> Result<Word> {
        let mut raw = Vec::new();
        for l in symbols.letters() {
            let d = self.definition(self.symbol(l.index()));
            let d = if l.is_inverse() { d.inverse() } else { d };
            raw.extend(d.to_raw());
        }
        Word::reduce(self.n, &raw)
    }

    pub fn display(&self, symbols: &Word) -> String {
        if symbols.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = symbols
            .letters()
            .iter()
            .map(|l| {
                let s = self.symbol(l.index());
                if l.is_inverse() {
                    format!("{s}^-1")
                } else {
                    s.to_string()
                }
            })
            .collect();
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, raw: &[i32]) -> Word {
        Word::reduce(n, raw).unwrap()
    }

    #[test]
    fn rewriting_examples() {
        let b = SchreierBasis::new(3).unwrap();
        assert_eq!(b.display(&b.rewrite(&w(3, &[1])).unwrap()), "x1");
        assert_eq!(b.display(&b.rewrite(&w(3, &[3, 1, -3])).unwrap()), "y1");
        assert_eq!(b.display(&b.rewrite(&w(3, &[3, 1, 3])).unwrap()), "y1 z");
        assert_eq!(b.display(&b.rewrite(&w(3, &[-3, -3])).unwrap()), "z^-1");
        assert_eq!(b.rewrite(&w(3, &[3])), Err(Error::NotInKernel));
    }

    #[test]
    fn expand_inverts_rewrite() {
        let b = SchreierBasis::new(4).unwrap();
        for raw in [vec![4, 2, -4, 1, 4, 4], vec![-4, 3, -4], vec![1, 2, 3], vec![4, -1, 4, 2, -4, -4]] {
            let word = w(4, &raw);
            assert_eq!(b.expand(&b.rewrite(&word).unwrap()).unwrap(), word);
        }
    }

    #[test]
    fn stabiliser_membership() {
        let n = 4;
        let r12 = Automorphism::rho(n, 1, 2).unwrap();
        let r1n = Automorphism::rho(n, 1, n).unwrap();
        let pc = r1n.compose(&Automorphism::lambda(n, 1, n).unwrap().inverse()).unwrap();
        for (a, expected) in [(&r12, true), (&r1n, false), (&pc, true)] {
            assert_eq!(stabilizes_f(a), expected);
            assert_eq!(stabilizes_f_via_action(a).unwrap(), expected);
        }
    }
}
