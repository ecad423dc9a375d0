//! Characters of the few named `S_n` representations, and multiplicities.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::group::{GroupKind, GroupWord};
use super::rational::{format_rational, rat, Rational};
use super::rep::FiniteRep;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedRep {
    Trivial,
    Determinant,
    Standard,
    Permutation,
    SignedStandard,
}

impl NamedRep {
    pub const ALL: [NamedRep; 5] =
        [NamedRep::Trivial, NamedRep::Determinant, NamedRep::Standard, NamedRep::Permutation, NamedRep::SignedStandard];

    /// The irreducible ones; `permutation` is `trivial ⊕ standard`.
    pub const IRREDUCIBLE: [NamedRep; 4] =
        [NamedRep::Trivial, NamedRep::Determinant, NamedRep::Standard, NamedRep::SignedStandard];

    pub fn dim(self, n: usize) -> usize {
        match self {
            NamedRep::Trivial | NamedRep::Determinant => 1,
            NamedRep::Permutation => n,
            NamedRep::Standard | NamedRep::SignedStandard => n - 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedRep::Trivial => "trivial",
            NamedRep::Determinant => "determinant",
            NamedRep::Standard => "standard",
            NamedRep::Permutation => "permutation",
            NamedRep::SignedStandard => "signed_standard",
        }
    }
}

impl fmt::Display for NamedRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedRep {
    type Err = Error;

    fn from_str(s: &str) -> Result<NamedRep> {
        NamedRep::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| Error::UnknownRepresentation(s.to_string()))
    }
}

/// All partitions of `n`, parts in decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn check_partition(cycle_type: &[usize], n: usize) -> Result<()> {
    if cycle_type.iter().sum::<usize>() != n || cycle_type.contains(&0) {
        return Err(Error::InvalidPartition(cycle_type.to_vec(), n));
    }
    Ok(())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n! / ∏ k^{m_k} m_k!`.
pub fn class_size(cycle_type: &[usize]) -> BigInt {
    let n: usize = cycle_type.iter().sum();
    let mut denom = BigInt::one();
    for k in 1..=n {
        let m = cycle_type.iter().filter(|&&p| p == k).count();
        denom *= BigInt::from(k).pow(m as u32) * factorial(m);
    }
    factorial(n) / denom
}

pub fn named_character(name: NamedRep, n: usize, cycle_type: &[usize]) -> Result<Rational> {
    check_partition(cycle_type, n)?;
    let fixed = cycle_type.iter().filter(|&&p| p == 1).count() as i64;
    let sign = if cycle_type.iter().filter(|&&p| p % 2 == 0).count() % 2 == 0 { 1 } else { -1 };
    Ok(rat(match name {
        NamedRep::Trivial => 1,
        NamedRep::Determinant => sign,
        NamedRep::Permutation => fixed,
        NamedRep::Standard => fixed - 1,
        NamedRep::SignedStandard => sign * (fixed - 1),
    }))
}

/// A word in the Coxeter generators `sigma_k_{k+1}` of the given cycle type.
pub fn class_representative(cycle_type: &[usize]) -> GroupWord {
    let mut word = Vec::new();
    let mut start = 0;
    for &len in cycle_type {
        // (a a+1)(a+1 a+2)...(a+len-2 a+len-1) is a len-cycle
        word.extend((start..start + len - 1).map(|k| (k, 1)));
        start += len;
    }
    GroupWord(word)
}

fn symmetric_degree(rep: &FiniteRep) -> Result<usize> {
    match rep.kind() {
        GroupKind::Symmetric(n) => Ok(n),
        _ => Err(Error::Precondition(format!("multiplicities need an S_n representation, got {}", rep.group().name))),
    }
}

/// Character inner product `<χ_rep, χ_name>`; must be a nonnegative integer.
pub fn multiplicity(rep: &FiniteRep, name: NamedRep) -> Result<usize> {
    let n = symmetric_degree(rep)?;
    let mut total = Rational::zero();
    for lambda in partitions(n) {
        let trace = rep.evaluate(&class_representative(&lambda)).trace();
        let chi = named_character(name, n, &lambda)?;
        total += Rational::from_integer(class_size(&lambda)) * trace * chi;
    }
    let m = total / Rational::from_integer(factorial(n));
    if !m.is_integer() || m.is_negative() {
        return Err(Error::NonIntegralMultiplicity(format_rational(&m)));
    }
    m.to_integer().to_usize().ok_or_else(|| Error::NonIntegralMultiplicity(format_rational(&m)))
}

/// Multiplicity of the trivial representation, for any group: the dimension of
/// the common fixed space.
pub fn trivial_multiplicity(rep: &FiniteRep) -> usize {
    rep.fixed_space_dim()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingReport {
    pub n: usize,
    /// Multiplicity in the restriction to `S_n`, per named representation.
    pub multiplicities: Vec<(NamedRep, usize)>,
    pub passed: bool,
}

/// Restrict the standard representation of `S_{n+1}`, realised on the homology
/// of the `(n+1)`-cage, to the stabiliser `S_n` of the last point: it must be
/// `standard ⊕ trivial`.
///
/// For `n = 3` the signed standard representation coincides with the standard
/// one, so its expected multiplicity is 1 there.
pub fn branching_check(n: usize) -> Result<BranchingReport> {
    if n < 3 {
        return Err(Error::SizeOutOfRange(format!("branching check needs n >= 3, got {n}")));
    }
    let action = crate::graphact::builtin_action(&format!("cage:{}", n + 1), &format!("S{}", n + 1))?;
    let big = action.homology_rep()?;
    let mut passed = multiplicity(&big, NamedRep::Standard)? == 1 && multiplicity(&big, NamedRep::Trivial)? == 0;
    let sub = super::group::GroupDescriptor::symmetric(n)?;
    let words: Vec<GroupWord> = (0..n - 1).map(GroupWord::single).collect();
    let small = big.restrict(sub, &words)?;
    let mut multiplicities = Vec::new();
    for name in NamedRep::IRREDUCIBLE {
        let m = multiplicity(&small, name)?;
        let expected = match name {
            NamedRep::Trivial | NamedRep::Standard => 1,
            NamedRep::SignedStandard if n == 3 => 1,
            _ => 0,
        };
        passed &= m == expected;
        multiplicities.push((name, m));
    }
    Ok(BranchingReport { n, multiplicities, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::group::{perm_relations_hold, GroupDescriptor, Perm};

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(8).len(), 22);
        assert_eq!(partitions(5)[0], vec![5]);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=8 {
            let total: BigInt = partitions(n).iter().map(|p| class_size(p)).sum();
            assert_eq!(total, factorial(n));
        }
        assert_eq!(class_size(&[2, 1, 1]), BigInt::from(6));
    }

    #[test]
    fn representatives_have_their_cycle_type() {
        let d = GroupDescriptor::symmetric(6).unwrap();
        let (deg, gens) = d.permutation_model().unwrap();
        assert!(perm_relations_hold(&d, deg, &gens));
        let inv: Vec<Perm> = gens.iter().map(Perm::inverse).collect();
        for lambda in partitions(6) {
            let p = class_representative(&lambda).evaluate(&gens, &inv, Perm::identity(6), |a, b| a.compose(b));
            assert_eq!(p.cycle_type(), lambda);
        }
    }

    #[test]
    fn character_values() {
        assert_eq!(named_character(NamedRep::Standard, 5, &[5]).unwrap(), rat(-1));
        assert_eq!(named_character(NamedRep::Permutation, 4, &[1, 1, 1, 1]).unwrap(), rat(4));
        assert_eq!(named_character(NamedRep::SignedStandard, 4, &[2, 1, 1]).unwrap(), rat(-1));
        assert!(named_character(NamedRep::Trivial, 4, &[2, 1]).is_err());
    }

    #[test]
    fn permutation_rep_multiplicities() {
        for n in 2..=6 {
            let rep = FiniteRep::permutation(GroupDescriptor::symmetric(n).unwrap()).unwrap();
            assert_eq!(multiplicity(&rep, NamedRep::Trivial).unwrap(), 1);
            assert_eq!(multiplicity(&rep, NamedRep::Standard).unwrap(), 1);
            assert_eq!(multiplicity(&rep, NamedRep::Permutation).unwrap(), 2);
            assert_eq!(trivial_multiplicity(&rep), 1);
        }
    }

    #[test]
    fn branching_from_the_cage() {
        for n in 3..=6 {
            assert!(branching_check(n).unwrap().passed, "n = {n}");
        }
        assert!(branching_check(2).is_err());
    }

    #[test]
    fn restricting_the_trivial_rep() {
        let s5 = FiniteRep::trivial(GroupDescriptor::symmetric(5).unwrap(), 1).unwrap();
        let s4 = s5.restrict(GroupDescriptor::symmetric(4).unwrap(), &(0..3).map(GroupWord::single).collect::<Vec<_>>()).unwrap();
        assert_eq!(multiplicity(&s4, NamedRep::Trivial).unwrap(), 1);
    }

    #[test]
    fn determinant_rep_multiplicities() {
        let rep = FiniteRep::determinant(GroupDescriptor::symmetric(5).unwrap()).unwrap();
        assert_eq!(multiplicity(&rep, NamedRep::Determinant).unwrap(), 1);
        for other in [NamedRep::Trivial, NamedRep::Standard, NamedRep::SignedStandard] {
            assert_eq!(multiplicity(&rep, other).unwrap(), 0);
        }
    }
}
