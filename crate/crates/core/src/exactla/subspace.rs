use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A subspace of `Q^d`, stored by a basis of independent columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
}

impl Subspace {
    /// Span of the columns of `m`; dependent columns are dropped.
    pub fn span(m: &RationalMatrix) -> Subspace {
        let ambient = m.rows();
        // independent columns of m = pivot columns of its echelon form
        let ech = super::elim::echelon(m, m.cols());
        Subspace { ambient, basis: m.select_columns(&ech.pivots) }
    }

    /// Wrap a basis, checking independence.
    pub fn from_basis(basis: RationalMatrix) -> Result<Subspace> {
        if basis.rank() != basis.cols() {
            return Err(Error::DimensionMismatch("basis columns are dependent".into()));
        }
        Ok(Subspace { ambient: basis.rows(), basis })
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: RationalMatrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { ambient, basis: RationalMatrix::identity(ambient) }
    }

    pub fn kernel(m: &RationalMatrix) -> Subspace {
        Subspace { ambient: m.cols(), basis: m.kernel_basis() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let col = RationalMatrix::from_columns(self.ambient, &[v.to_vec()]);
        matches!(self.basis.solve(&col), Ok(Some(_)))
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        if other.ambient != self.ambient {
            return false;
        }
        if other.dim() == 0 {
            return true;
        }
        let aug = self.basis.hstack(&other.basis).expect("same ambient");
        aug.rank() == self.dim()
    }

    /// Equality by mutual containment; bases need not agree.
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Ok(Subspace::span(&self.basis.hstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("intersect: ambient dimensions differ".into()));
        }
        // [A | -B] (x; y) = 0 gives A x = B y
        let stacked = self.basis.hstack(&(-&other.basis))?;
        let k = stacked.kernel_basis();
        let top: Vec<usize> = (0..self.dim()).collect();
        let coeffs = RationalMatrix::from_rows(top.iter().map(|&r| k.row(r).to_vec()).collect())?;
        let coeffs = if self.dim() == 0 { RationalMatrix::zeros(0, k.cols()) } else { coeffs };
        Ok(Subspace::span(&(&self.basis * &coeffs)))
    }

    /// Image of this subspace under `m`.
    pub fn image(&self, m: &RationalMatrix) -> Subspace {
        Subspace::span(&(m * &self.basis))
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let col = RationalMatrix::from_columns(self.ambient, &[v.to_vec()]);
        self.basis.solve(&col).ok().flatten().map(|x| x.column(0))
    }
}
