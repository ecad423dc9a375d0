//! Simultaneous `±1`-eigenspaces of commuting involutions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::rational::rat;
use super::rep::FiniteRep;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// `V = ⊕ E_I`, with `I` a bitmask: bit `j-1` set iff the `j`-th involution acts by `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsDecomposition {
    n: usize,
    ambient: usize,
    spaces: BTreeMap<u64, Subspace>,
}

pub fn subset_label(mask: u64) -> String {
    let members: Vec<String> = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
    format!("{{{}}}", members.join(","))
}

impl EpsDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Nonzero eigenspaces only.
    pub fn spaces(&self) -> &BTreeMap<u64, Subspace> {
        &self.spaces
    }

    pub fn space(&self, mask: u64) -> Subspace {
        self.spaces.get(&mask).cloned().unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    pub fn dim(&self, mask: u64) -> usize {
        self.spaces.get(&mask).map_or(0, Subspace::dim)
    }

    /// `dim V_i` for `i = 0..=n`.
    pub fn layer_dims(&self) -> Vec<usize> {
        let mut layers = vec![0; self.n + 1];
        for (mask, s) in &self.spaces {
            layers[mask.count_ones() as usize] += s.dim();
        }
        layers
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(Subspace::dim).sum()
    }

    /// `dim E_I` keyed by a readable subset label, nonzero entries only.
    pub fn dims_table(&self) -> BTreeMap<String, usize> {
        self.spaces.iter().map(|(&m, s)| (subset_label(m), s.dim())).collect()
    }

    /// `⊕ E_J` over the given masks, as one subspace.
    pub fn sum_of(&self, masks: impl IntoIterator<Item = u64>) -> Subspace {
        let mut cols = Vec::new();
        for m in masks {
            if let Some(s) = self.spaces.get(&m) {
                cols.extend(s.basis().columns());
            }
        }
        Subspace::span(&RationalMatrix::from_columns(self.ambient, &cols))
    }
}

/// Split `V` by the commuting involutions `ms`.
///
/// Each piece is refined by restricting the next involution to it and taking
/// the two eigenspaces of the restriction.
pub fn simultaneous_eigenspaces(ms: &[RationalMatrix]) -> Result<EpsDecomposition> {
    let d = ms.first().map_or(0, RationalMatrix::rows);
    for (k, m) in ms.iter().enumerate() {
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch(format!("involution {} is not {d}x{d}", k + 1)));
        }
        if !(m * m).is_identity() {
            return Err(Error::NotInvolution(format!("input {}", k + 1)));
        }
    }
    for a in 0..ms.len() {
        for b in a + 1..ms.len() {
            if &ms[a] * &ms[b] != &ms[b] * &ms[a] {
                return Err(Error::NotCommuting(format!("inputs {} and {}", a + 1, b + 1)));
            }
        }
    }
    let mut pieces: Vec<(u64, RationalMatrix)> = vec![(0, RationalMatrix::identity(d))];
    for (j, m) in ms.iter().enumerate() {
        let mut next = Vec::new();
        for (mask, basis) in pieces {
            // the piece is m-invariant, so m·B = B·R for a unique R
            let restricted = basis.solve(&(m * &basis))?.expect("eigen-pieces are invariant under commuting involutions");
            let k = basis.cols();
            for (sign, bit) in [(1, 0u64), (-1, 1u64 << j)] {
                let shifted = &restricted - &RationalMatrix::scalar(k, rat(sign));
                let coords = shifted.kernel_basis();
                if coords.cols() > 0 {
                    next.push((mask | bit, &basis * &coords));
                }
            }
        }
        pieces = next;
    }
    let spaces = pieces.into_iter().filter(|(_, b)| b.cols() > 0).map(|(m, b)| (m, Subspace::span(&b))).collect();
    Ok(EpsDecomposition { n: ms.len(), ambient: d, spaces })
}

/// Decompose a representation by its `eps_1..eps_n` generators.
pub fn eps_decomposition(rep: &FiniteRep, n: usize) -> Result<EpsDecomposition> {
    let ms = (1..=n).map(|i| rep.matrix(&format!("eps_{i}")).cloned()).collect::<Result<Vec<_>>>()?;
    simultaneous_eigenspaces(&ms)
}

/// Whether `ρ E_I ⊆ ⊕_{I △ J ⊆ {i,j}} E_J` for every `I`.
pub fn check_diamond(rho: &RationalMatrix, decomp: &EpsDecomposition, i: usize, j: usize) -> Result<bool> {
    if rho.rows() != decomp.ambient || rho.cols() != decomp.ambient {
        return Err(Error::DimensionMismatch("rho does not act on the decomposed space".into()));
    }
    if i == 0 || j == 0 || i > decomp.n || j > decomp.n || i == j {
        return Err(Error::InvalidIndices(format!("({i}, {j}) for n = {}", decomp.n)));
    }
    let bi = 1u64 << (i - 1);
    let bj = 1u64 << (j - 1);
    for (&mask, space) in &decomp.spaces {
        let allowed = decomp.sum_of([mask, mask ^ bi, mask ^ bj, mask ^ bi ^ bj]);
        if !allowed.contains(&space.image(rho)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCheck {
    pub i: usize,
    pub dim: usize,
    pub binomial: u128,
    pub divides: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub n: usize,
    pub layers: Vec<LayerCheck>,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.layers.iter().all(|l| l.divides)
    }

    pub fn violations(&self) -> Vec<usize> {
        self.layers.iter().filter(|l| !l.divides).map(|l| l.i).collect()
    }
}

/// `binom(n, i)` must divide `dim V_i` for a representation of `W_n`.
pub fn divisibility_check(decomp: &EpsDecomposition) -> DivisibilityReport {
    let layers = decomp
        .layer_dims()
        .into_iter()
        .enumerate()
        .map(|(i, dim)| {
            let b = binomial(decomp.n, i);
            LayerCheck { i, dim, binomial: b, divides: (dim as u128).is_multiple_of(b) }
        })
        .collect();
    DivisibilityReport { n: decomp.n, layers }
}
