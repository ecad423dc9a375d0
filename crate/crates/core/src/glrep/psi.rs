//! The representations `ψ: G → GL_{2n−1}(Z)` on `K^ab` and `ψ′` on the
//! `(−1)`-eigenspace of the deck involution, plus the two Schur squares.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::schreier::{stabilizes_f, SchreierBasis, Symbol};
use crate::error::{Error, Result};
use crate::exactla::RationalMatrix;
use crate::word::{Automorphism, IntMatrix};

/// Matrix of `a ∈ G` acting on `K^ab ≅ Z^{2n−1}` in the `(x, y, z)` ordering.
pub fn psi(a: &Automorphism) -> Result<IntMatrix> {
    if !stabilizes_f(a) {
        return Err(Error::NotInStabilizer);
    }
    let basis = SchreierBasis::new(a.rank())?;
    let size = basis.size();
    let mut rows = vec![vec![0i64; size]; size];
    for (col, s) in basis.symbols().into_iter().enumerate() {
        let image = a.apply(&basis.definition(s))?;
        let sums = basis.rewrite(&image)?.exponent_sums();
        for (row, v) in sums.into_iter().enumerate() {
            rows[row][col] = v;
        }
    }
    Ok(IntMatrix::from_rows(&rows))
}

/// The deck transformation: `x_i ↔ y_i`, `z` fixed.
pub fn tau_matrix(n: usize) -> Result<IntMatrix> {
    let basis = SchreierBasis::new(n)?;
    let size = basis.size();
    let mut rows = vec![vec![0i64; size]; size];
    for s in basis.symbols() {
        let t = match s {
            Symbol::X(i) => Symbol::Y(i),
            Symbol::Y(i) => Symbol::X(i),
            Symbol::Z => Symbol::Z,
        };
        rows[basis.symbol_index(t) - 1][basis.symbol_index(s) - 1] = 1;
    }
    Ok(IntMatrix::from_rows(&rows))
}

pub fn to_rational(m: &IntMatrix) -> RationalMatrix {
    RationalMatrix::from_i64_rows(&m.rows())
}

/// `ψ(a)` restricted to `span{α_l = x_l − y_l}`, in the `α` basis.
pub fn psi_prime(a: &Automorphism) -> Result<RationalMatrix> {
    let p = psi(a)?;
    let n = a.rank();
    let basis = SchreierBasis::new(n)?;
    let d = n - 1;
    let z = basis.symbol_index(Symbol::Z) - 1;
    let mut rows = vec![vec![0i64; d]; d];
    for l in 1..=d {
        let (xl, yl) = (basis.symbol_index(Symbol::X(l)) - 1, basis.symbol_index(Symbol::Y(l)) - 1);
        let image: Vec<i64> = (0..basis.size()).map(|r| p.get(r, xl) - p.get(r, yl)).collect();
        if image[z] != 0 {
            return Err(Error::Precondition(format!("ψ(α_{l}) has a z-component")));
        }
        for k in 1..=d {
            let (xk, yk) = (basis.symbol_index(Symbol::X(k)) - 1, basis.symbol_index(Symbol::Y(k)) - 1);
            if image[xk] != -image[yk] {
                return Err(Error::Precondition(format!("ψ(α_{l}) leaves the α-span")));
            }
            rows[k - 1][l - 1] = image[xk];
        }
    }
    Ok(RationalMatrix::from_i64_rows(&rows))
}

/// The two supported partitions of 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mu {
    /// `(1,1)`: exterior square.
    Exterior,
    /// `(2)`: symmetric square.
    Symmetric,
}

impl Mu {
    pub fn parts(self) -> Vec<usize> {
        match self {
            Mu::Exterior => vec![1, 1],
            Mu::Symmetric => vec![2],
        }
    }

    pub fn dim(self, d: usize) -> usize {
        match self {
            Mu::Exterior => d * d.saturating_sub(1) / 2,
            Mu::Symmetric => d * (d + 1) / 2,
        }
    }

    /// The partition used by default at rank `n`.
    pub fn default_for(n: usize) -> Mu {
        if n == 3 {
            Mu::Symmetric
        } else {
            Mu::Exterior
        }
    }
}

impl fmt::Display for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mu::Exterior => "1,1",
            Mu::Symmetric => "2",
        })
    }
}

impl FromStr for Mu {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mu> {
        let cleaned: String = s.chars().filter(|c| !matches!(c, '(' | ')' | ' ')).collect();
        match cleaned.as_str() {
            "1,1" | "11" => Ok(Mu::Exterior),
            "2" => Ok(Mu::Symmetric),
            _ => Err(Error::UnsupportedPartition(s.to_string())),
        }
    }
}

pub fn schur_square(m: &RationalMatrix, mu: Mu) -> Result<RationalMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    Ok(match mu {
        Mu::Exterior => m.exterior_square(),
        Mu::Symmetric => m.symmetric_square(),
    })
}
