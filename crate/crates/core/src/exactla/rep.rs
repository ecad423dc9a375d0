use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::group::{GroupDescriptor, GroupKind, GroupWord};
use super::matrix::RationalMatrix;
use super::rational::rat;
use crate::error::{Error, Result};
use crate::word::{abelianize, Gen};

/// A finite-dimensional rational representation of a presented group.
///
/// Construction checks invertibility and every defining relator, so a value of
/// this type is always a genuine representation of the descriptor's group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRep {
    group: GroupDescriptor,
    dim: usize,
    matrices: Vec<RationalMatrix>,
    inverses: Vec<RationalMatrix>,
}

impl FiniteRep {
    /// `matrices[k]` is the image of generator `k` of the descriptor.
    pub fn new(group: GroupDescriptor, dim: usize, matrices: Vec<RationalMatrix>) -> Result<FiniteRep> {
        if matrices.len() != group.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} generators for {} with {} generators",
                matrices.len(),
                group.name,
                group.rank()
            )));
        }
        for (name, m) in group.generators.iter().zip(&matrices) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let inverses = matrices.iter().map(RationalMatrix::inverse).collect::<Result<Vec<_>>>()?;
        let rep = FiniteRep { group, dim, matrices, inverses };
        rep.check_relations()?;
        Ok(rep)
    }

    pub fn from_named(group: GroupDescriptor, dim: usize, named: &BTreeMap<String, RationalMatrix>) -> Result<FiniteRep> {
        for name in named.keys() {
            group.generator_index(name)?;
        }
        let matrices = group
            .generators
            .iter()
            .map(|g| named.get(g).cloned().ok_or_else(|| Error::UnknownGenerator(format!("{g} has no matrix"))))
            .collect::<Result<Vec<_>>>()?;
        FiniteRep::new(group, dim, matrices)
    }

    fn check_relations(&self) -> Result<()> {
        for r in &self.group.relations {
            if !self.evaluate(r).is_identity() {
                return Err(Error::RelationFails { group: self.group.name.clone(), relation: self.group.relation_name(r) });
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[RationalMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, name: &str) -> Result<&RationalMatrix> {
        Ok(&self.matrices[self.group.generator_index(name)?])
    }

    pub fn named(&self) -> BTreeMap<String, RationalMatrix> {
        self.group.generators.iter().cloned().zip(self.matrices.iter().cloned()).collect()
    }

    pub fn evaluate(&self, w: &GroupWord) -> RationalMatrix {
        w.evaluate(&self.matrices, &self.inverses, RationalMatrix::identity(self.dim), |a, b| a * b)
    }

    /// Apply a functorial construction generator-wise. Relations are re-checked.
    pub fn map(&self, f: impl Fn(&RationalMatrix) -> RationalMatrix) -> Result<FiniteRep> {
        let matrices: Vec<_> = self.matrices.iter().map(&f).collect();
        let dim = matrices.first().map_or_else(|| f(&RationalMatrix::identity(self.dim)).rows(), RationalMatrix::rows);
        FiniteRep::new(self.group.clone(), dim, matrices)
    }

    pub fn trivial(group: GroupDescriptor, dim: usize) -> Result<FiniteRep> {
        let matrices = vec![RationalMatrix::identity(dim); group.rank()];
        FiniteRep::new(group, dim, matrices)
    }

    /// Permutation representation from the descriptor's permutation model.
    pub fn permutation(group: GroupDescriptor) -> Result<FiniteRep> {
        let (degree, perms) = group
            .permutation_model()
            .ok_or_else(|| Error::UnknownRepresentation(format!("{} has no permutation model", group.name)))?;
        FiniteRep::new(group, degree, perms.iter().map(|p| p.permutation_matrix()).collect())
    }

    /// The sign character of a permutation model.
    pub fn determinant(group: GroupDescriptor) -> Result<FiniteRep> {
        let (_, perms) = group
            .permutation_model()
            .ok_or_else(|| Error::UnknownRepresentation(format!("{} has no permutation model", group.name)))?;
        FiniteRep::new(group, 1, perms.iter().map(|p| RationalMatrix::scalar(1, rat(p.sign()))).collect())
    }

    /// `W_n` acting on `Q^n` by signed permutations.
    pub fn signed_permutation(n: usize) -> Result<FiniteRep> {
        let group = GroupDescriptor::signed(n)?;
        let mut matrices = Vec::new();
        for i in 0..n {
            let mut m = RationalMatrix::identity(n);
            m.set(i, i, rat(-1));
            matrices.push(m);
        }
        for k in 0..n - 1 {
            matrices.push(super::group::Perm::transposition(n, k, k + 1).permutation_matrix());
        }
        FiniteRep::new(group, n, matrices)
    }

    /// `Out(F_n)` acting on `Q^n` through its abelianisation.
    pub fn abelianization(n: usize) -> Result<FiniteRep> {
        let group = GroupDescriptor::out(n)?;
        let matrices = group
            .generators
            .iter()
            .map(|name| {
                let a = name.parse::<Gen>()?.automorphism(n)?;
                Ok(RationalMatrix::from_i64_rows(&abelianize(&a).rows()))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteRep::new(group, n, matrices)
    }

    pub fn direct_sum(&self, other: &FiniteRep) -> Result<FiniteRep> {
        self.same_group(other)?;
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.direct_sum(b)).collect();
        FiniteRep::new(self.group.clone(), self.dim + other.dim, matrices)
    }

    pub fn tensor(&self, other: &FiniteRep) -> Result<FiniteRep> {
        self.same_group(other)?;
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.kronecker(b)).collect();
        FiniteRep::new(self.group.clone(), self.dim * other.dim, matrices)
    }

    pub fn exterior_square(&self) -> Result<FiniteRep> {
        let d = self.dim * self.dim.saturating_sub(1) / 2;
        FiniteRep::new(self.group.clone(), d, self.matrices.iter().map(RationalMatrix::exterior_square).collect())
    }

    pub fn symmetric_square(&self) -> Result<FiniteRep> {
        let d = self.dim * (self.dim + 1) / 2;
        FiniteRep::new(self.group.clone(), d, self.matrices.iter().map(RationalMatrix::symmetric_square).collect())
    }

    /// Restrict along `sub -> self.group`, generator `k` of `sub` mapping to `images[k]`.
    pub fn restrict(&self, sub: GroupDescriptor, images: &[GroupWord]) -> Result<FiniteRep> {
        if images.len() != sub.rank() {
            return Err(Error::DimensionMismatch("one image word per subgroup generator".into()));
        }
        FiniteRep::new(sub, self.dim, images.iter().map(|w| self.evaluate(w)).collect())
    }

    /// Dimension of the space of vectors fixed by every generator.
    pub fn fixed_space_dim(&self) -> usize {
        if self.matrices.is_empty() {
            return self.dim;
        }
        let id = RationalMatrix::identity(self.dim);
        let mut stacked = RationalMatrix::zeros(0, self.dim);
        for m in &self.matrices {
            stacked = stacked.vstack(&(m - &id)).expect("same width");
        }
        self.dim - stacked.rank()
    }

    fn same_group(&self, other: &FiniteRep) -> Result<()> {
        if self.group != other.group {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.group.name, other.group.name)));
        }
        Ok(())
    }

    pub fn kind(&self) -> GroupKind {
        self.group.kind
    }
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    group: GroupDescriptor,
    dim: usize,
    generators: BTreeMap<String, RationalMatrix>,
}

impl Serialize for FiniteRep {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RepJson { group: self.group.clone(), dim: self.dim, generators: self.named() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteRep {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RepJson::deserialize(deserializer)?;
        FiniteRep::from_named(raw.group, raw.dim, &raw.generators).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_reps_pass_relations() {
        FiniteRep::signed_permutation(4).unwrap();
        FiniteRep::abelianization(3).unwrap();
        FiniteRep::abelianization(4).unwrap();
        let p = FiniteRep::permutation(GroupDescriptor::symmetric(4).unwrap()).unwrap();
        assert_eq!(p.fixed_space_dim(), 1);
        assert_eq!(p.exterior_square().unwrap().dim(), 6);
        assert_eq!(p.tensor(&p).unwrap().dim(), 16);
        FiniteRep::determinant(GroupDescriptor::symmetric(4).unwrap()).unwrap();
    }

    #[test]
    fn wrong_matrices_are_rejected() {
        let group = GroupDescriptor::cyclic(2).unwrap();
        let m = RationalMatrix::from_i64_rows(&[vec![0, 1], vec![1, 1]]);
        assert!(matches!(FiniteRep::new(group.clone(), 2, vec![m]), Err(Error::RelationFails { .. })));
        let singular = RationalMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(FiniteRep::new(group, 2, vec![singular]), Err(Error::Singular));
    }

    #[test]
    fn json_round_trip() {
        let rep = FiniteRep::signed_permutation(3).unwrap();
        let s = serde_json::to_string(&rep).unwrap();
        let back: FiniteRep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn restriction_to_point_stabiliser() {
        let s4 = FiniteRep::permutation(GroupDescriptor::symmetric(4).unwrap()).unwrap();
        let s3 = GroupDescriptor::symmetric(3).unwrap();
        let r = s4.restrict(s3, &[GroupWord::single(0), GroupWord::single(1)]).unwrap();
        assert_eq!(r.fixed_space_dim(), 2);
    }
}
