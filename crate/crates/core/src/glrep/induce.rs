//! Induction from the stabiliser `G` of `f` to `Out(F_n)`.
//!
//! `θ(g)` has exactly one nonzero block per block column, so it is stored as a
//! block-monomial matrix: a coset map plus one `dim U`-square block per column.

use std::collections::{BTreeMap, VecDeque};

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::psi::{psi_prime, schur_square, Mu};
use super::schreier::base_functional;
use crate::error::{Error, Result};
use crate::exactla::{GroupDescriptor, RationalMatrix};
use crate::word::{abelianize, act_on_functional, Automorphism, Functional, Gen, IntMatrix};

/// `t_s` for every nonzero functional `s`, with `t_s · f = s` and `t_f = 1`.
///
/// Breadth-first search from `f` over `σ_ij` (`i < j`) then `ρ_ij`, setting
/// `t_s = g ∘ t_{s′}` the first time `g` carries `s′` to `s`.
pub fn coset_transversal(n: usize) -> Result<BTreeMap<u64, Automorphism>> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    let mut moves = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            moves.push(Automorphism::sigma(n, i, j)?);
        }
    }
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            moves.push(Automorphism::rho(n, i, j)?);
        }
    }
    let f = base_functional(n);
    let mut out = BTreeMap::new();
    out.insert(f.bits(), Automorphism::identity(n));
    let mut queue = VecDeque::from([f]);
    while let Some(s) = queue.pop_front() {
        for g in &moves {
            let t = act_on_functional(g, &s)?;
            if !out.contains_key(&t.bits()) {
                let lifted = g.compose(&out[&s.bits()])?;
                out.insert(t.bits(), lifted);
                queue.push_back(t);
            }
        }
    }
    for (&bits, t) in &out {
        if act_on_functional(t, &f)?.bits() != bits {
            return Err(Error::Precondition(format!("transversal element for {bits:#b} misses its coset")));
        }
    }
    if out.len() != (1usize << n) - 1 {
        return Err(Error::Precondition("transversal does not reach every coset".into()));
    }
    Ok(out)
}

/// Block matrix with one nonzero block per block column: column `c` is sent
/// to row `target[c]` through `blocks[c]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMonomial {
    target: Vec<usize>,
    blocks: Vec<RationalMatrix>,
    block_dim: usize,
}

impl BlockMonomial {
    pub fn new(target: Vec<usize>, blocks: Vec<RationalMatrix>, block_dim: usize) -> Result<BlockMonomial> {
        let k = target.len();
        let mut seen = vec![false; k];
        for &t in &target {
            if t >= k || std::mem::replace(&mut seen[t], true) {
                return Err(Error::DimensionMismatch("block targets are not a permutation".into()));
            }
        }
        if blocks.len() != k || blocks.iter().any(|b| b.rows() != block_dim || b.cols() != block_dim) {
            return Err(Error::DimensionMismatch("block shapes".into()));
        }
        Ok(BlockMonomial { target, blocks, block_dim })
    }

    pub fn identity(cosets: usize, block_dim: usize) -> BlockMonomial {
        BlockMonomial {
            target: (0..cosets).collect(),
            blocks: vec![RationalMatrix::identity(block_dim); cosets],
            block_dim,
        }
    }

    pub fn cosets(&self) -> usize {
        self.target.len()
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn dim(&self) -> usize {
        self.cosets() * self.block_dim
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    /// Block in column `c` (at row `target[c]`).
    pub fn block(&self, c: usize) -> &RationalMatrix {
        &self.blocks[c]
    }

    pub fn mul(&self, other: &BlockMonomial) -> BlockMonomial {
        let target = other.target.iter().map(|&t| self.target[t]).collect();
        let blocks = other.target.iter().zip(&other.blocks).map(|(&t, b)| &self.blocks[t] * b).collect();
        BlockMonomial { target, blocks, block_dim: self.block_dim }
    }

    pub fn inverse(&self) -> Result<BlockMonomial> {
        let k = self.cosets();
        let mut target = vec![0; k];
        let mut blocks = vec![RationalMatrix::zeros(0, 0); k];
        for c in 0..k {
            let t = self.target[c];
            target[t] = c;
            blocks[t] = self.blocks[c].inverse()?;
        }
        Ok(BlockMonomial { target, blocks, block_dim: self.block_dim })
    }

    pub fn is_block_diagonal(&self) -> bool {
        self.target.iter().enumerate().all(|(c, &t)| c == t)
    }

    pub fn is_identity(&self) -> bool {
        self.is_block_diagonal() && self.blocks.iter().all(RationalMatrix::is_identity)
    }

    /// Smallest `k` with `(M − I)^k = 0`, if `M` is block diagonal and unipotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        if !self.is_block_diagonal() {
            return None;
        }
        let d = self.block_dim;
        let mut worst = 0;
        for b in &self.blocks {
            let n = b - &RationalMatrix::identity(d);
            let mut power = RationalMatrix::identity(d);
            let mut k = 0;
            while !power.is_zero() {
                if k == d {
                    return None;
                }
                power = &power * &n;
                k += 1;
            }
            worst = worst.max(k);
        }
        Some(worst)
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let d = self.block_dim;
        let mut m = RationalMatrix::zeros(self.dim(), self.dim());
        for (c, (&t, b)) in self.target.iter().zip(&self.blocks).enumerate() {
            for r in 0..d {
                for q in 0..d {
                    m.set(t * d + r, c * d + q, b.get(r, q).clone());
                }
            }
        }
        m
    }
}

/// Cosets and transversal; evaluates `θ` on arbitrary automorphisms.
#[derive(Debug, Clone)]
pub struct Inducer {
    n: usize,
    mu: Mu,
    cosets: Vec<Functional>,
    transversal: Vec<Automorphism>,
    index: BTreeMap<u64, usize>,
}

impl Inducer {
    pub fn new(n: usize, mu: Mu) -> Result<Inducer> {
        if n < 3 {
            return Err(Error::InvalidRank(n));
        }
        if n == 3 && mu == Mu::Exterior {
            // the exterior square of a 2-dimensional space is the determinant
            return Err(Error::UnsupportedPartition(format!("({mu}) at rank 3")));
        }
        let map = coset_transversal(n)?;
        let mut cosets = Vec::new();
        let mut transversal = Vec::new();
        let mut index = BTreeMap::new();
        for (bits, t) in map {
            index.insert(bits, cosets.len());
            cosets.push(Functional::new(n, bits)?);
            transversal.push(t);
        }
        Ok(Inducer { n, mu, cosets, transversal, index })
    }

    pub fn block_dim(&self) -> usize {
        self.mu.dim(self.n - 1)
    }

    /// `θ(g)`: block `(s, s′) = U(t_s⁻¹ g t_{s′})` where `s = g · s′`.
    pub fn theta(&self, g: &Automorphism) -> Result<BlockMonomial> {
        let mut target = Vec::with_capacity(self.cosets.len());
        let mut blocks = Vec::with_capacity(self.cosets.len());
        for (c, s) in self.cosets.iter().enumerate() {
            let t = self.index[&act_on_functional(g, s)?.bits()];
            let h = self.transversal[t].inverse().compose(g)?.compose(&self.transversal[c])?;
            let block = schur_square(&psi_prime(&h).map_err(|e| match e {
                Error::NotInStabilizer => Error::Precondition("coset-return element outside G".into()),
                other => other,
            })?, self.mu)?;
            target.push(t);
            blocks.push(block);
        }
        BlockMonomial::new(target, blocks, self.block_dim())
    }

    pub fn generator(&self, name: &str) -> Result<Automorphism> {
        let g: Gen = name.parse()?;
        g.automorphism(self.n)
    }

    pub fn assemble(self, generators: Vec<(String, BlockMonomial)>) -> InducedRep {
        InducedRep { inducer: self, generators }
    }
}

/// The generator names `θ` is evaluated on: `eps_i`, `rho_i_j`, `lambda_i_j`.
pub fn generator_names(n: usize) -> Result<Vec<String>> {
    Ok(GroupDescriptor::out(n)?.generators)
}

#[derive(Debug, Clone)]
pub struct InducedRep {
    inducer: Inducer,
    generators: Vec<(String, BlockMonomial)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub relator: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateOutcome {
    pub generator: String,
    pub abelianizes_trivially: bool,
    pub block_diagonal: bool,
    pub non_identity: bool,
    /// Nilpotency index of `θ(g) − I` when unipotent.
    pub nilpotency_index: Option<usize>,
}

impl CandidateOutcome {
    pub fn certifies(&self) -> bool {
        self.abelianizes_trivially && self.non_identity && self.nilpotency_index.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// First candidate whose image is a non-identity unipotent matrix.
    pub witness: Option<CandidateOutcome>,
    pub tried: Vec<CandidateOutcome>,
}

impl Certificate {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn induce(n: usize, mu: Mu) -> Result<InducedRep> {
    let inducer = Inducer::new(n, mu)?;
    let mut generators = Vec::new();
    for name in generator_names(n)? {
        let theta = inducer.theta(&inducer.generator(&name)?)?;
        generators.push((name, theta));
    }
    Ok(inducer.assemble(generators))
}

impl InducedRep {
    pub fn n(&self) -> usize {
        self.inducer.n
    }

    pub fn mu(&self) -> Mu {
        self.inducer.mu
    }

    /// `(2^n − 1) · dim U`.
    pub fn m(&self) -> usize {
        self.inducer.cosets.len() * self.inducer.block_dim()
    }

    pub fn cosets(&self) -> &[Functional] {
        &self.inducer.cosets
    }

    pub fn transversal(&self) -> &[Automorphism] {
        &self.inducer.transversal
    }

    pub fn inducer(&self) -> &Inducer {
        &self.inducer
    }

    pub fn generators(&self) -> &[(String, BlockMonomial)] {
        &self.generators
    }

    pub fn matrix(&self, name: &str) -> Option<&BlockMonomial> {
        self.generators.iter().find(|(g, _)| g == name).map(|(_, m)| m)
    }

    fn lookup(&self, name: &str) -> Result<&BlockMonomial> {
        self.matrix(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Every defining relator of `Out(F_n)` evaluated in block form.
    pub fn check_relators(&self) -> Result<Vec<RelatorCheck>> {
        let d = GroupDescriptor::out(self.n())?;
        let gens: Vec<BlockMonomial> = d.generators.iter().map(|g| self.lookup(g).cloned()).collect::<Result<_>>()?;
        let inverses: Vec<BlockMonomial> = gens.iter().map(BlockMonomial::inverse).collect::<Result<_>>()?;
        let id = BlockMonomial::identity(self.inducer.cosets.len(), self.inducer.block_dim());
        Ok(d.relations
            .iter()
            .map(|r| RelatorCheck {
                relator: d.relation_name(r),
                holds: r.evaluate(&gens, &inverses, id.clone(), BlockMonomial::mul).is_identity(),
            })
            .collect())
    }

    fn candidate(&self, label: String, g: &Automorphism, image: BlockMonomial) -> CandidateOutcome {
        CandidateOutcome {
            generator: label,
            abelianizes_trivially: abelianize(g) == IntMatrix::identity(self.n()),
            block_diagonal: image.is_block_diagonal(),
            non_identity: !image.is_identity(),
            nilpotency_index: image.nilpotency_index(),
        }
    }
}

/// Search the standard generators of `IA`-bar — partial conjugations, then
/// commutators `[ρ_ij, ρ_ik]` — for one whose image is unipotent and not the
/// identity. Images are products of the rep's own generator matrices.
pub fn check_not_factoring(rep: &InducedRep) -> Result<Certificate> {
    let n = rep.n();
    let mut tried = Vec::new();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    for &(i, j) in &pairs {
        let g = Automorphism::rho(n, i, j)?.compose(&Automorphism::lambda(n, i, j)?.inverse())?;
        let image = rep.lookup(&format!("rho_{i}_{j}"))?.mul(&rep.lookup(&format!("lambda_{i}_{j}"))?.inverse()?);
        let outcome = rep.candidate(format!("rho_{i}_{j} lambda_{i}_{j}^-1"), &g, image);
        let done = outcome.certifies();
        tried.push(outcome);
        if done {
            return Ok(Certificate { witness: tried.last().cloned(), tried });
        }
    }
    for &(i, j) in &pairs {
        for k in (1..=n).filter(|&k| k != i && k != j) {
            let g = Automorphism::rho(n, i, j)?.commutator(&Automorphism::rho(n, i, k)?)?;
            let a = rep.lookup(&format!("rho_{i}_{j}"))?;
            let b = rep.lookup(&format!("rho_{i}_{k}"))?;
            let image = a.mul(b).mul(&a.inverse()?).mul(&b.inverse()?);
            let outcome = rep.candidate(format!("[rho_{i}_{j}, rho_{i}_{k}]"), &g, image);
            let done = outcome.certifies();
            tried.push(outcome);
            if done {
                return Ok(Certificate { witness: tried.last().cloned(), tried });
            }
        }
    }
    Ok(Certificate { witness: None, tried })
}

struct DenseGenerators<'a>(&'a [(String, BlockMonomial)]);

impl Serialize for DenseGenerators<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, m) in self.0 {
            map.serialize_entry(name, &m.to_dense())?;
        }
        map.end()
    }
}

impl Serialize for InducedRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("InducedRep", 5)?;
        s.serialize_field("n", &self.n())?;
        s.serialize_field("mu", &self.mu().parts())?;
        s.serialize_field("m", &self.m())?;
        s.serialize_field("cosets", &self.cosets().iter().map(Functional::bits).collect::<Vec<_>>())?;
        s.serialize_field("generators", &DenseGenerators(&self.generators))?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transversal_covers_all_cosets() {
        for n in 2..=5 {
            let t = coset_transversal(n).unwrap();
            assert_eq!(t.len(), (1 << n) - 1);
            assert!(t[&base_functional(n).bits()].is_identity());
        }
        // e_1* is reached by the swap σ_1n
        let t = coset_transversal(4).unwrap();
        assert_eq!(t[&1], Automorphism::sigma(4, 1, 4).unwrap());
    }

    #[test]
    fn dimensions() {
        assert_eq!(induce(3, Mu::Symmetric).unwrap().m(), 21);
        assert_eq!(induce(4, Mu::Exterior).unwrap().m(), 45);
        assert!(matches!(induce(3, Mu::Exterior), Err(Error::UnsupportedPartition(_))));
    }

    #[test]
    fn theta_of_identity() {
        let ind = Inducer::new(3, Mu::Symmetric).unwrap();
        assert!(ind.theta(&Automorphism::identity(3)).unwrap().is_identity());
    }

    #[test]
    fn relators_hold_rank_three() {
        let rep = induce(3, Mu::Symmetric).unwrap();
        let checks = rep.check_relators().unwrap();
        let failing: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
        assert!(failing.is_empty(), "{failing:?}");
    }

    #[test]
    fn theta_is_multiplicative() {
        let ind = Inducer::new(3, Mu::Symmetric).unwrap();
        let a = Automorphism::rho(3, 1, 2).unwrap();
        let b = Automorphism::lambda(3, 3, 1).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ind.theta(&ab).unwrap(), ind.theta(&a).unwrap().mul(&ind.theta(&b).unwrap()));
    }

    #[test]
    fn block_monomial_dense_agrees() {
        let ind = Inducer::new(3, Mu::Symmetric).unwrap();
        let a = ind.theta(&Automorphism::rho(3, 2, 3).unwrap()).unwrap();
        let b = ind.theta(&Automorphism::eps(3, 1).unwrap()).unwrap();
        assert_eq!(a.mul(&b).to_dense(), &a.to_dense() * &b.to_dense());
        assert_eq!(a.inverse().unwrap().to_dense(), a.to_dense().inverse().unwrap());
    }

    fn commutator(rep: &InducedRep, x: &str, y: &str) -> BlockMonomial {
        let (a, b) = (rep.matrix(x).unwrap(), rep.matrix(y).unwrap());
        a.mul(b).mul(&a.inverse().unwrap()).mul(&b.inverse().unwrap())
    }

    #[test]
    fn certificate_rank_three() {
        let rep = induce(3, Mu::Symmetric).unwrap();
        let cert = check_not_factoring(&rep).unwrap();
        let w = cert.witness.unwrap();
        assert_eq!(w.generator, "[rho_1_2, rho_1_3]");
        assert!(w.abelianizes_trivially && w.block_diagonal);
        // partial conjugations are tried first and are not unipotent
        assert!(cert.tried[..6].iter().all(|c| c.nilpotency_index.is_none() && c.non_identity));
    }

    #[test]
    fn partial_conjugation_square_is_unipotent() {
        let rep = induce(3, Mu::Symmetric).unwrap();
        let g = rep.matrix("rho_1_2").unwrap().mul(&rep.matrix("lambda_1_2").unwrap().inverse().unwrap());
        let sq = g.mul(&g);
        assert!(!sq.is_identity());
        assert_eq!(sq.nilpotency_index(), Some(3));
    }

    #[test]
    fn commutator_with_last_letter_rank_four() {
        let rep = induce(4, Mu::Exterior).unwrap();
        let c = commutator(&rep, "rho_1_2", "rho_1_4");
        assert!(!c.is_identity());
        assert_eq!(c.nilpotency_index(), Some(2));
    }
}
