//! The relations of Gersten's presentation of `Out(F_n)` and their verification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{outer_equal, Automorphism};
use crate::error::{Error, Result};

/// A named generator symbol. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Eps(usize),
    Rho(usize, usize),
    Lambda(usize, usize),
    Sigma(usize, usize),
    Delta,
}

impl Gen {
    pub fn automorphism(self, n: usize) -> Result<Automorphism> {
        match self {
            Gen::Eps(i) => Automorphism::eps(n, i),
            Gen::Rho(i, j) => Automorphism::rho(n, i, j),
            Gen::Lambda(i, j) => Automorphism::lambda(n, i, j),
            Gen::Sigma(i, j) => Automorphism::sigma(n, i, j),
            Gen::Delta => Automorphism::delta(n),
        }
    }

    pub fn letter(self) -> GenLetter {
        GenLetter { gen: self, inverse: false }
    }

    pub fn inv(self) -> GenLetter {
        GenLetter { gen: self, inverse: true }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Eps(i) => write!(f, "eps_{i}"),
            Gen::Rho(i, j) => write!(f, "rho_{i}_{j}"),
            Gen::Lambda(i, j) => write!(f, "lambda_{i}_{j}"),
            Gen::Sigma(i, j) => write!(f, "sigma_{i}_{j}"),
            Gen::Delta => write!(f, "delta"),
        }
    }
}

impl FromStr for Gen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gen> {
        let bad = || Error::Parse(format!("bad generator name {s:?}"));
        let mut parts = s.split('_');
        let head = parts.next().ok_or_else(bad)?;
        let idx: Vec<usize> = parts.map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        match (head, idx.as_slice()) {
            ("eps", [i]) => Ok(Gen::Eps(*i)),
            ("rho", [i, j]) => Ok(Gen::Rho(*i, *j)),
            ("lambda", [i, j]) => Ok(Gen::Lambda(*i, *j)),
            ("sigma", [i, j]) => Ok(Gen::Sigma(*i, *j)),
            ("delta", []) => Ok(Gen::Delta),
            _ => Err(bad()),
        }
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLetter {
    pub gen: Gen,
    pub inverse: bool,
}

impl GenLetter {
    pub fn inverted(self) -> GenLetter {
        GenLetter { gen: self.gen, inverse: !self.inverse }
    }
}

impl fmt::Display for GenLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A word in generator symbols; the leftmost letter acts last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GenWord(pub Vec<GenLetter>);

impl GenWord {
    pub fn single(l: GenLetter) -> GenWord {
        GenWord(vec![l])
    }

    pub fn inverse(&self) -> GenWord {
        GenWord(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn then(mut self, other: &GenWord) -> GenWord {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn pow(&self, k: usize) -> GenWord {
        GenWord(self.0.repeat(k))
    }

    /// `[g, h] = g h g^-1 h^-1`
    pub fn commutator(g: &GenWord, h: &GenWord) -> GenWord {
        g.clone().then(h).then(&g.inverse()).then(&h.inverse())
    }

    /// `g^h = h^-1 g h`
    pub fn conjugate(g: &GenWord, h: &GenWord) -> GenWord {
        h.inverse().then(g).then(h)
    }

    pub fn evaluate(&self, n: usize) -> Result<Automorphism> {
        let mut acc = Automorphism::identity(n);
        for l in &self.0 {
            let a = l.gen.automorphism(n)?;
            let a = if l.inverse { a.inverse() } else { a };
            acc = acc.compose(&a)?;
        }
        Ok(acc)
    }

    pub fn letters(&self) -> &[GenLetter] {
        &self.0
    }
}

impl From<GenLetter> for GenWord {
    fn from(l: GenLetter) -> GenWord {
        GenWord(vec![l])
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The relation families of the presentation, in the order they are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GerstenFamily {
    /// `[rho_ij, rho_kl] = [lambda_ij, lambda_kl] = 1`, `k ∉ {i,j}`, `l != i`
    CommutingSameSide,
    /// `[lambda_ij, rho_kl] = 1`, `k != j`, `l != i`
    CommutingMixed,
    /// the four expressions for `rho_ik^-1`
    RhoCommutator,
    /// the four expressions for `lambda_ik^-1`
    LambdaCommutator,
    /// `rho_ij rho_ji^-1 lambda_ij = lambda_ij lambda_ji^-1 rho_ij` and its fourth power
    SwapRelation,
    /// `[eps_1, rho_ij] = [eps_1, lambda_ij] = 1`, `i, j != 1`
    EpsCommuting,
    /// `rho_12^eps_1 = lambda_12^-1`, `rho_21^eps_1 = rho_21^-1`
    EpsConjugation,
    /// `eps_1^2 = 1`
    EpsInvolution,
    /// `prod_{i != j} rho_ij lambda_ij^-1 = 1`
    InnerProduct,
}

impl GerstenFamily {
    pub const ALL: [GerstenFamily; 9] = [
        GerstenFamily::CommutingSameSide,
        GerstenFamily::CommutingMixed,
        GerstenFamily::RhoCommutator,
        GerstenFamily::LambdaCommutator,
        GerstenFamily::SwapRelation,
        GerstenFamily::EpsCommuting,
        GerstenFamily::EpsConjugation,
        GerstenFamily::EpsInvolution,
        GerstenFamily::InnerProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GerstenFamily::CommutingSameSide => "[rho_ij,rho_kl]=[lambda_ij,lambda_kl]=1",
            GerstenFamily::CommutingMixed => "[lambda_ij,rho_kl]=1",
            GerstenFamily::RhoCommutator => "commutators equal to rho_ik^-1",
            GerstenFamily::LambdaCommutator => "commutators equal to lambda_ik^-1",
            GerstenFamily::SwapRelation => "rho_ij rho_ji^-1 lambda_ij = lambda_ij lambda_ji^-1 rho_ij, (rho_ij rho_ji^-1 lambda_ij)^4=1",
            GerstenFamily::EpsCommuting => "[eps_1,rho_ij]=[eps_1,lambda_ij]=1",
            GerstenFamily::EpsConjugation => "rho_12^eps_1=lambda_12^-1, rho_21^eps_1=rho_21^-1",
            GerstenFamily::EpsInvolution => "eps_1^2=1",
            GerstenFamily::InnerProduct => "prod_i rho_ij lambda_ij^-1=1",
        }
    }
}

/// One instantiated relation `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub family: GerstenFamily,
    pub lhs: GenWord,
    pub rhs: GenWord,
}

impl Relation {
    /// `lhs rhs^-1`, which must map to the identity.
    pub fn relator(&self) -> GenWord {
        self.lhs.clone().then(&self.rhs.inverse())
    }

    pub fn holds_in_out(&self, n: usize) -> Result<bool> {
        outer_equal(&self.lhs.evaluate(n)?, &self.rhs.evaluate(n)?)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

fn w(l: GenLetter) -> GenWord {
    GenWord::single(l)
}

/// Every relation of the presentation, instantiated over all admissible index tuples.
pub fn gersten_relations(n: usize) -> Result<Vec<Relation>> {
    if n < 3 {
        return Err(Error::InvalidRank(n));
    }
    use Gen::{Eps, Lambda, Rho};
    let one = GenWord::default();
    let mut out = Vec::new();
    let mut push = |family, lhs: GenWord, rhs: GenWord| out.push(Relation { family, lhs, rhs });
    let idx = || 1..=n;
    let pairs = || idx().flat_map(move |i| idx().filter(move |&j| j != i).map(move |j| (i, j)));

    for (i, j) in pairs() {
        for (k, l) in pairs() {
            if k != i && k != j && l != i {
                push(
                    GerstenFamily::CommutingSameSide,
                    GenWord::commutator(&w(Rho(i, j).letter()), &w(Rho(k, l).letter())),
                    one.clone(),
                );
                push(
                    GerstenFamily::CommutingSameSide,
                    GenWord::commutator(&w(Lambda(i, j).letter()), &w(Lambda(k, l).letter())),
                    one.clone(),
                );
            }
        }
    }
    for (i, j) in pairs() {
        for (k, l) in pairs() {
            if k != j && l != i {
                push(
                    GerstenFamily::CommutingMixed,
                    GenWord::commutator(&w(Lambda(i, j).letter()), &w(Rho(k, l).letter())),
                    one.clone(),
                );
            }
        }
    }
    for (i, j) in pairs() {
        for k in idx().filter(|&k| k != i && k != j) {
            for (side, other, family) in [
                (Rho as fn(usize, usize) -> Gen, Lambda as fn(usize, usize) -> Gen, GerstenFamily::RhoCommutator),
                (Lambda, Rho, GerstenFamily::LambdaCommutator),
            ] {
                let target = w(side(i, k).inv());
                let a = side(i, j);
                let b = side(j, k);
                let c = other(j, k);
                push(family, GenWord::commutator(&w(a.inv()), &w(b.inv())), target.clone());
                push(family, GenWord::commutator(&w(a.letter()), &w(c.letter())), target.clone());
                push(family, GenWord::commutator(&w(a.inv()), &w(b.letter())).inverse(), target.clone());
                push(family, GenWord::commutator(&w(a.letter()), &w(c.inv())).inverse(), target);
            }
        }
    }
    for (i, j) in pairs() {
        let left = GenWord(vec![Rho(i, j).letter(), Rho(j, i).inv(), Lambda(i, j).letter()]);
        let right = GenWord(vec![Lambda(i, j).letter(), Lambda(j, i).inv(), Rho(i, j).letter()]);
        push(GerstenFamily::SwapRelation, left.clone(), right);
        push(GerstenFamily::SwapRelation, left.pow(4), one.clone());
    }
    for (i, j) in pairs().filter(|&(i, j)| i != 1 && j != 1) {
        let e = w(Eps(1).letter());
        push(GerstenFamily::EpsCommuting, GenWord::commutator(&e, &w(Rho(i, j).letter())), one.clone());
        push(GerstenFamily::EpsCommuting, GenWord::commutator(&e, &w(Lambda(i, j).letter())), one.clone());
    }
    let e = w(Eps(1).letter());
    push(GerstenFamily::EpsConjugation, GenWord::conjugate(&w(Rho(1, 2).letter()), &e), w(Lambda(1, 2).inv()));
    push(GerstenFamily::EpsConjugation, GenWord::conjugate(&w(Rho(2, 1).letter()), &e), w(Rho(2, 1).inv()));
    push(GerstenFamily::EpsInvolution, e.pow(2), one.clone());
    for j in idx() {
        let mut prod = GenWord::default();
        for i in idx().filter(|&i| i != j) {
            prod.0.push(Rho(i, j).letter());
            prod.0.push(Lambda(i, j).inv());
        }
        push(GerstenFamily::InnerProduct, prod, one.clone());
    }
    Ok(out)
}

/// Outcome for one relation family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyResult {
    pub family: GerstenFamily,
    pub name: String,
    pub tuples: usize,
    pub failures: Vec<String>,
}

impl FamilyResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GerstenReport {
    pub n: usize,
    pub families: Vec<FamilyResult>,
}

impl GerstenReport {
    pub fn all_pass(&self) -> bool {
        self.families.iter().all(FamilyResult::passed)
    }

    pub fn total_relations(&self) -> usize {
        self.families.iter().map(|f| f.tuples).sum()
    }

    /// Fold per-relation outcomes, in relation order, into a report.
    pub fn from_outcomes(n: usize, outcomes: &[(Relation, bool)]) -> GerstenReport {
        let families = GerstenFamily::ALL
            .iter()
            .map(|&family| {
                let mine: Vec<_> = outcomes.iter().filter(|(r, _)| r.family == family).collect();
                FamilyResult {
                    family,
                    name: family.name().to_string(),
                    tuples: mine.len(),
                    failures: mine.iter().filter(|(_, ok)| !ok).map(|(r, _)| r.to_string()).collect(),
                }
            })
            .collect();
        GerstenReport { n, families }
    }
}

/// Check every relation as an equality in `Out(F_n)`.
pub fn verify_gersten(n: usize) -> Result<GerstenReport> {
    let outcomes = gersten_relations(n)?
        .into_iter()
        .map(|r| {
            let ok = r.holds_in_out(n)?;
            Ok((r, ok))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GerstenReport::from_outcomes(n, &outcomes))
}
