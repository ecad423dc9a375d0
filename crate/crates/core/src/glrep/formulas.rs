//! Case-by-case check of the closed formulas for `ψ′` on the generators of
//! `IA`-bar, plus the structural facts about `τ`.

use serde::Serialize;

use super::psi::{psi, psi_prime, tau_matrix, to_rational};
use crate::error::Result;
use crate::exactla::{rat, RationalMatrix, Subspace};
use crate::word::{Automorphism, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `ρ_ij λ_ij^-1`
    PartialConjugation,
    /// `[ρ_ij, ρ_ik]`
    Commutator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCase {
    pub family: Family,
    pub i: usize,
    pub j: usize,
    /// Unused (0) for partial conjugations.
    pub k: usize,
    pub l: usize,
    /// Coefficients of `ψ′(g)(α_l)` in the `α` basis.
    pub expected: Vec<i64>,
    pub actual: Vec<i64>,
}

impl FormulaCase {
    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InnerCheck {
    pub i: usize,
    /// `±1`: the scalar `ψ′(c_{a_i})` should equal.
    pub expected_scalar: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaReport {
    pub n: usize,
    pub cases: Vec<FormulaCase>,
    /// `ψ′(c_{a_i}) = I` for `i < n` and `−I` for `i = n`.
    pub inner: Vec<InnerCheck>,
    pub tau_commutes: bool,
    /// Dimensions of the `(−1)` and `(+1)` eigenspaces of `τ`.
    pub tau_eigen_dims: (usize, usize),
}

impl FormulaReport {
    pub fn mismatches(&self) -> Vec<&FormulaCase> {
        self.cases.iter().filter(|c| !c.matches()).collect()
    }

    pub fn passed(&self) -> bool {
        self.mismatches().is_empty()
            && self.inner.iter().all(|c| c.holds)
            && self.tau_commutes
            && self.tau_eigen_dims == (self.n - 1, self.n)
    }
}

fn unit(d: usize, l: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[l - 1] = 1;
    v
}

fn expected_partial_conjugation(n: usize, i: usize, j: usize, l: usize) -> Vec<i64> {
    let mut v = unit(n - 1, l);
    if j == n && l == i {
        v[i - 1] = -1;
    }
    v
}

fn expected_commutator(n: usize, i: usize, j: usize, k: usize, l: usize) -> Vec<i64> {
    let mut v = unit(n - 1, l);
    if l == i {
        if j == n {
            v[k - 1] -= 2;
        } else if k == n {
            v[j - 1] += 2;
        }
    }
    v
}

fn column(m: &RationalMatrix, l: usize) -> Vec<i64> {
    m.column(l - 1)
        .iter()
        .map(|x| {
            assert!(x.is_integer(), "ψ′ has integer entries");
            i64::try_from(x.to_integer()).expect("small entries")
        })
        .collect()
}

pub fn partial_conjugation(n: usize, i: usize, j: usize) -> Result<Automorphism> {
    Automorphism::rho(n, i, j)?.compose(&Automorphism::lambda(n, i, j)?.inverse())
}

pub fn rho_commutator(n: usize, i: usize, j: usize, k: usize) -> Result<Automorphism> {
    Automorphism::rho(n, i, j)?.commutator(&Automorphism::rho(n, i, k)?)
}

pub fn verify_closed_formulas(n: usize) -> Result<FormulaReport> {
    let mut cases = Vec::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            let m = psi_prime(&partial_conjugation(n, i, j)?)?;
            for l in 1..n {
                cases.push(FormulaCase {
                    family: Family::PartialConjugation,
                    i,
                    j,
                    k: 0,
                    l,
                    expected: expected_partial_conjugation(n, i, j, l),
                    actual: column(&m, l),
                });
            }
            for k in (1..=n).filter(|&k| k != i && k != j) {
                let m = psi_prime(&rho_commutator(n, i, j, k)?)?;
                for l in 1..n {
                    cases.push(FormulaCase {
                        family: Family::Commutator,
                        i,
                        j,
                        k,
                        l,
                        expected: expected_commutator(n, i, j, k, l),
                        actual: column(&m, l),
                    });
                }
            }
        }
    }

    let mut inner = Vec::new();
    for i in 1..=n {
        // c_w(x) = w^-1 x w; conjugation by a_i
        let c = Automorphism::inner(&Word::reduce(n, &[i as i32])?);
        let sign = if i == n { -1 } else { 1 };
        inner.push(InnerCheck { i, expected_scalar: sign, holds: psi_prime(&c)? == RationalMatrix::scalar(n - 1, rat(sign)) });
    }

    let tau = tau_matrix(n)?;
    let mut tau_commutes = true;
    let mut samples = vec![Automorphism::eps(n, 1)?, Automorphism::eps(n, n)?];
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            samples.push(partial_conjugation(n, i, j)?);
            if j != n {
                samples.push(Automorphism::rho(n, i, j)?);
            }
        }
    }
    for a in &samples {
        let p = psi(a)?;
        tau_commutes &= p.mul(&tau) == tau.mul(&p);
    }

    let t = to_rational(&tau);
    let size = 2 * n - 1;
    let minus = Subspace::kernel(&(&t + &RationalMatrix::identity(size))).dim();
    let plus = Subspace::kernel(&(&t - &RationalMatrix::identity(size))).dim();

    Ok(FormulaReport { n, cases, inner, tau_commutes, tau_eigen_dims: (minus, plus) })
}
