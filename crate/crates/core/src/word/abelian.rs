use std::fmt;

use serde::{Deserialize, Serialize};

use super::Automorphism;
use crate::error::{Error, Result};

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> IntMatrix {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntMatrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix expected");
        IntMatrix { n, entries: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        IntMatrix { n, entries }
    }

    /// Bareiss fraction-free determinant.
    pub fn det(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k * n + k] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                    return 0;
                };
                for c in 0..n {
                    m.swap(k * n + c, swap * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
                }
            }
            prev = m[k * n + k];
        }
        (sign * m[n * n - 1]) as i64
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

/// Action on `H_1(F_n; Z)`: column `i` holds the exponent sums of `a(a_i)`.
///
/// With this convention `abelianize(f ∘ g) = abelianize(f) * abelianize(g)`.
pub fn abelianize(a: &Automorphism) -> IntMatrix {
    let n = a.rank();
    let mut entries = vec![0; n * n];
    for (col, image) in a.forward().images().iter().enumerate() {
        for (row, s) in image.exponent_sums().into_iter().enumerate() {
            entries[row * n + col] = s;
        }
    }
    IntMatrix { n, entries }
}

/// A matrix over `Z_2`, stored as column bitmasks (bit `r` = row `r`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mod2Matrix {
    n: usize,
    columns: Vec<u64>,
}

impl Mod2Matrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col] >> row & 1 == 1
    }

    pub fn column(&self, col: usize) -> u64 {
        self.columns[col]
    }
}

pub fn abelianize_mod2(a: &Automorphism) -> Mod2Matrix {
    let n = a.rank();
    assert!(n <= 64, "mod-2 matrices are limited to rank 64");
    let columns = a
        .forward()
        .images()
        .iter()
        .map(|image| {
            let mut mask = 0u64;
            for l in image.letters() {
                mask ^= 1 << (l.index() - 1);
            }
            mask
        })
        .collect();
    Mod2Matrix { n, columns }
}

/// A nonzero homomorphism `F_n -> Z_2`; bit `i - 1` is the value on `a_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Functional {
    n: usize,
    bits: u64,
}

impl Functional {
    pub fn new(n: usize, bits: u64) -> Result<Functional> {
        if n == 0 || n > 63 {
            return Err(Error::InvalidRank(n));
        }
        let bits = bits & ((1u64 << n) - 1);
        if bits == 0 {
            return Err(Error::ZeroFunctional);
        }
        Ok(Functional { n, bits })
    }

    /// The dual basis vector `e_i^*`.
    pub fn coordinate(n: usize, i: usize) -> Result<Functional> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i as i64, rank: n });
        }
        Functional::new(n, 1 << (i - 1))
    }

    /// The base functional: `1` on `a_n`, `0` elsewhere.
    pub fn base(n: usize) -> Functional {
        Functional::coordinate(n, n).expect("n >= 1")
    }

    /// All `2^n - 1` nonzero functionals, ordered by bitmask.
    pub fn all(n: usize) -> Vec<Functional> {
        (1..(1u64 << n)).map(|bits| Functional { n, bits }).collect()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn value(&self, i: usize) -> bool {
        self.bits >> (i - 1) & 1 == 1
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (1..=self.n).map(|i| if self.value(i) { '1' } else { '0' }).collect();
        write!(f, "({s})")
    }
}

/// The left action `a.s = s ∘ a^{-1}` on nonzero functionals.
pub fn act_on_functional(a: &Automorphism, s: &Functional) -> Result<Functional> {
    super::check_rank(a.rank(), s.n)?;
    let inv = abelianize_mod2(&a.inverse());
    let mut bits = 0u64;
    for j in 0..s.n {
        if (s.bits & inv.column(j)).count_ones() % 2 == 1 {
            bits |= 1 << j;
        }
    }
    Functional::new(s.n, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianize_rho() {
        let m = abelianize(&Automorphism::rho(3, 1, 2).unwrap());
        assert_eq!(m.rows(), vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.det(), 1);
    }

    #[test]
    fn abelianize_eps_det() {
        assert_eq!(abelianize(&Automorphism::eps(4, 1).unwrap()).det(), -1);
        assert_eq!(abelianize(&Automorphism::sigma(4, 1, 3).unwrap()).det(), -1);
        assert_eq!(abelianize(&Automorphism::delta(3).unwrap()).det(), -1);
    }

    #[test]
    fn partial_conjugation_is_in_ia() {
        let n = 4;
        let g = Automorphism::rho(n, 1, 2).unwrap().compose(&Automorphism::lambda(n, 1, 2).unwrap().inverse()).unwrap();
        assert_eq!(abelianize(&g), IntMatrix::identity(n));
    }

    #[test]
    fn det_of_singular_and_permuted() {
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).det(), 0);
        assert_eq!(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).det(), -1);
        assert_eq!(IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]).det(), 6);
    }

    #[test]
    fn act_examples() {
        let n = 4;
        for bits in 1..16 {
            let s = Functional::new(n, bits).unwrap();
            assert_eq!(act_on_functional(&Automorphism::eps(n, 1).unwrap(), &s).unwrap(), s);
        }
        let e1 = Functional::coordinate(n, 1).unwrap();
        let e2 = Functional::coordinate(n, 2).unwrap();
        assert_eq!(act_on_functional(&Automorphism::sigma(n, 1, 2).unwrap(), &e1).unwrap(), e2);
        let f = Functional::base(n);
        assert_eq!(act_on_functional(&Automorphism::rho(n, 1, 2).unwrap(), &f).unwrap(), f);
        assert_ne!(act_on_functional(&Automorphism::rho(n, 1, n).unwrap(), &f).unwrap(), f);
    }

    #[test]
    fn zero_functional_rejected() {
        assert_eq!(Functional::new(3, 0), Err(Error::ZeroFunctional));
        assert_eq!(Functional::new(3, 8), Err(Error::ZeroFunctional));
        assert_eq!(Functional::all(3).len(), 7);
    }
}
