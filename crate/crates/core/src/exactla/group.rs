//! Finitely presented groups by descriptor: generator names plus defining relators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{gersten_relations, Gen, GenWord};

/// A word in the generators of a descriptor: `(generator index, exponent)` pairs,
/// leftmost factor acting last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(pub Vec<(usize, i64)>);

impl GroupWord {
    pub fn single(g: usize) -> GroupWord {
        GroupWord(vec![(g, 1)])
    }

    pub fn power(g: usize, k: i64) -> GroupWord {
        GroupWord(vec![(g, k)])
    }

    pub fn then(mut self, other: &GroupWord) -> GroupWord {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|&(g, k)| (g, -k)).collect())
    }

    pub fn pow(&self, k: usize) -> GroupWord {
        GroupWord(self.0.repeat(k))
    }

    pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.clone().then(b).then(&a.inverse()).then(&b.inverse())
    }

    /// Evaluate in any group given images of the generators and their inverses.
    pub fn evaluate<T: Clone>(&self, gens: &[T], inverses: &[T], identity: T, mul: impl Fn(&T, &T) -> T) -> T {
        let mut acc = identity;
        for &(g, k) in &self.0 {
            let factor = if k >= 0 { &gens[g] } else { &inverses[g] };
            for _ in 0..k.unsigned_abs() {
                acc = mul(&acc, factor);
            }
        }
        acc
    }

    /// Parse `"a b^-1 c^3"` against a list of generator names.
    pub fn parse(s: &str, names: &[String]) -> Result<GroupWord> {
        let mut out = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((name, e)) => (name, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?),
                None => (token, 1),
            };
            let g = names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            out.push((g, exp));
        }
        Ok(GroupWord(out))
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, k)| if k == 1 { names[g].clone() } else { format!("{}^{}", names[g], k) })
            .collect();
        parts.join(" ")
    }
}

/// Which family a descriptor belongs to; `Custom` carries only its presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Trivial,
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    /// `W_n = Z_2^n ⋊ S_n`, signed permutations.
    Signed(usize),
    /// `G_n = Z_2 × S_{n+1}`, acting on the `(n+1)`-cage.
    Cage(usize),
    /// `Out(F_n)` by Gersten's generators, with every `ε_i` included.
    Out(usize),
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub name: String,
    pub kind: GroupKind,
    pub generators: Vec<String>,
    pub relations: Vec<GroupWord>,
    /// Only selects which lemma checks apply; never inferred.
    pub perfect: bool,
}

fn coxeter(gens: &[usize], relations: &mut Vec<GroupWord>) {
    for (a, &s) in gens.iter().enumerate() {
        relations.push(GroupWord::power(s, 2));
        for (b, &t) in gens.iter().enumerate().skip(a + 1) {
            let st = GroupWord::single(s).then(&GroupWord::single(t));
            relations.push(st.pow(if b == a + 1 { 3 } else { 2 }));
        }
    }
}

impl GroupDescriptor {
    pub fn custom(name: &str, generators: Vec<String>, relations: Vec<GroupWord>) -> GroupDescriptor {
        GroupDescriptor { name: name.into(), kind: GroupKind::Custom, generators, relations, perfect: false }
    }

    pub fn trivial() -> GroupDescriptor {
        GroupDescriptor { name: "trivial".into(), kind: GroupKind::Trivial, generators: vec![], relations: vec![], perfect: true }
    }

    pub fn cyclic(k: usize) -> Result<GroupDescriptor> {
        if k < 1 {
            return Err(Error::SizeOutOfRange(format!("cyclic group of order {k}")));
        }
        Ok(GroupDescriptor {
            name: format!("Z_{k}"),
            kind: GroupKind::Cyclic(k),
            generators: vec!["g".into()],
            relations: vec![GroupWord::power(0, k as i64)],
            perfect: k == 1,
        })
    }

    /// `S_n` on the Coxeter generators `sigma_i_{i+1}`.
    pub fn symmetric(n: usize) -> Result<GroupDescriptor> {
        if n < 1 {
            return Err(Error::SizeOutOfRange("S_0".into()));
        }
        let generators: Vec<String> = (1..n).map(|i| format!("sigma_{}_{}", i, i + 1)).collect();
        let mut relations = Vec::new();
        coxeter(&(0..n - 1).collect::<Vec<_>>(), &mut relations);
        Ok(GroupDescriptor { name: format!("S_{n}"), kind: GroupKind::Symmetric(n), generators, relations, perfect: n == 1 })
    }

    /// `A_n` on `x_i = (1 2 i+2)`: `x_i^3 = (x_i x_j)^2 = 1`.
    pub fn alternating(n: usize) -> Result<GroupDescriptor> {
        if n < 3 {
            return Err(Error::SizeOutOfRange(format!("A_{n} needs n >= 3")));
        }
        let k = n - 2;
        let generators: Vec<String> = (1..=k).map(|i| format!("x_{i}")).collect();
        let mut relations: Vec<GroupWord> = (0..k).map(|i| GroupWord::power(i, 3)).collect();
        for i in 0..k {
            for j in i + 1..k {
                relations.push(GroupWord::single(i).then(&GroupWord::single(j)).pow(2));
            }
        }
        Ok(GroupDescriptor { name: format!("A_{n}"), kind: GroupKind::Alternating(n), generators, relations, perfect: n >= 5 })
    }

    /// `W_n` on `eps_1..eps_n` and `sigma_i_{i+1}`.
    pub fn signed(n: usize) -> Result<GroupDescriptor> {
        if n < 1 {
            return Err(Error::SizeOutOfRange("W_0".into()));
        }
        let mut generators: Vec<String> = (1..=n).map(|i| format!("eps_{i}")).collect();
        generators.extend((1..n).map(|i| format!("sigma_{}_{}", i, i + 1)));
        let eps = |i: usize| i - 1;
        let sig = |k: usize| n + k - 1;
        let mut relations = Vec::new();
        for i in 1..=n {
            relations.push(GroupWord::power(eps(i), 2));
            for j in i + 1..=n {
                relations.push(GroupWord::commutator(&GroupWord::single(eps(i)), &GroupWord::single(eps(j))));
            }
        }
        coxeter(&(1..n).map(sig).collect::<Vec<_>>(), &mut relations);
        for k in 1..n {
            // σ_k ε_k σ_k = ε_{k+1}
            relations.push(GroupWord(vec![(sig(k), 1), (eps(k), 1), (sig(k), 1), (eps(k + 1), -1)]));
            for i in (1..=n).filter(|&i| i != k && i != k + 1) {
                relations.push(GroupWord::commutator(&GroupWord::single(sig(k)), &GroupWord::single(eps(i))));
            }
        }
        Ok(GroupDescriptor { name: format!("W_{n}"), kind: GroupKind::Signed(n), generators, relations, perfect: false })
    }

    /// `G_n = Z_2 × S_{n+1}` on `delta` and `sigma_i_{i+1}`, `i = 1..n`.
    pub fn cage_group(n: usize) -> Result<GroupDescriptor> {
        if n < 1 {
            return Err(Error::SizeOutOfRange("G_0".into()));
        }
        let mut generators = vec!["delta".to_string()];
        generators.extend((1..=n).map(|i| format!("sigma_{}_{}", i, i + 1)));
        let mut relations = vec![GroupWord::power(0, 2)];
        for k in 1..=n {
            relations.push(GroupWord::commutator(&GroupWord::single(0), &GroupWord::single(k)));
        }
        coxeter(&(1..=n).collect::<Vec<_>>(), &mut relations);
        Ok(GroupDescriptor { name: format!("G_{n}"), kind: GroupKind::Cage(n), generators, relations, perfect: false })
    }

    /// `Out(F_n)` on `eps_i`, `rho_i_j`, `lambda_i_j`: the Gersten relators plus the
    /// standard relations tying every `eps_i` to the transvections.
    pub fn out(n: usize) -> Result<GroupDescriptor> {
        if n < 3 {
            return Err(Error::InvalidRank(n));
        }
        let mut gens: Vec<Gen> = (1..=n).map(Gen::Eps).collect();
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        gens.extend(pairs.iter().map(|&(i, j)| Gen::Rho(i, j)));
        gens.extend(pairs.iter().map(|&(i, j)| Gen::Lambda(i, j)));
        let generators: Vec<String> = gens.iter().map(ToString::to_string).collect();
        let index = |g: Gen| gens.iter().position(|&h| h == g).expect("generator listed");
        let convert = |w: &GenWord| {
            GroupWord(w.letters().iter().map(|l| (index(l.gen), if l.inverse { -1 } else { 1 })).collect())
        };
        let mut relations: Vec<GroupWord> = gersten_relations(n)?.iter().map(|r| convert(&r.relator())).collect();
        let e = |i| GroupWord::single(index(Gen::Eps(i)));
        for i in 1..=n {
            relations.push(e(i).pow(2));
            for j in i + 1..=n {
                relations.push(GroupWord::commutator(&e(i), &e(j)));
            }
        }
        for &(i, j) in &pairs {
            let rho = GroupWord::single(index(Gen::Rho(i, j)));
            let lambda = GroupWord::single(index(Gen::Lambda(i, j)));
            // ε_j ρ_ij ε_j = ρ_ij^-1 and ε_i ρ_ij ε_i = λ_ij^-1
            relations.push(e(j).then(&rho).then(&e(j)).then(&rho));
            relations.push(e(i).then(&rho).then(&e(i)).then(&lambda));
            for k in (1..=n).filter(|&k| k != i && k != j) {
                relations.push(GroupWord::commutator(&e(k), &rho));
                relations.push(GroupWord::commutator(&e(k), &lambda));
            }
        }
        Ok(GroupDescriptor { name: format!("Out_{n}"), kind: GroupKind::Out(n), generators, relations, perfect: false })
    }

    /// Parse names like `S_4`, `A5`, `W_4`, `G_6`, `Out_4`, `Z_2`, `trivial`.
    pub fn by_name(name: &str) -> Result<GroupDescriptor> {
        let bad = || Error::Parse(format!("unknown group name {name:?}"));
        if name == "trivial" || name == "1" {
            return Ok(GroupDescriptor::trivial());
        }
        let split = name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (head, tail) = name.split_at(split);
        let head = head.trim_end_matches('_');
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "S" => GroupDescriptor::symmetric(n),
            "A" => GroupDescriptor::alternating(n),
            "W" => GroupDescriptor::signed(n),
            "G" => GroupDescriptor::cage_group(n),
            "Out" => GroupDescriptor::out(n),
            "Z" | "C" => GroupDescriptor::cyclic(n),
            _ => Err(bad()),
        }
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators.iter().position(|g| g == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relation_name(&self, r: &GroupWord) -> String {
        r.display(&self.generators)
    }

    /// Degree and generator images of the natural permutation model, when there is one.
    pub fn permutation_model(&self) -> Option<(usize, Vec<Perm>)> {
        match self.kind {
            GroupKind::Symmetric(n) => Some((n, (0..n - 1).map(|i| Perm::transposition(n, i, i + 1)).collect())),
            GroupKind::Alternating(n) => {
                Some((n, (0..n - 2).map(|i| Perm::from_cycle(n, &[0, 1, i + 2])).collect()))
            }
            GroupKind::Cyclic(k) => Some((k, vec![Perm::from_cycle(k, &(0..k).collect::<Vec<_>>())])),
            GroupKind::Trivial => Some((1, vec![])),
            _ => None,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[derive(Serialize, Deserialize)]
struct DescriptorJson {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relations: Option<Vec<String>>,
    #[serde(default)]
    perfect: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DescriptorRepr {
    Name(String),
    Full(DescriptorJson),
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DescriptorJson {
            name: self.name.clone(),
            generators: Some(self.generators.clone()),
            relations: Some(self.relations.iter().map(|r| self.relation_name(r)).collect()),
            perfect: self.perfect,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match DescriptorRepr::deserialize(deserializer)? {
            DescriptorRepr::Name(name) => GroupDescriptor::by_name(&name).map_err(D::Error::custom),
            DescriptorRepr::Full(raw) => {
                let builtin = GroupDescriptor::by_name(&raw.name).ok();
                match (raw.generators, builtin) {
                    (None, Some(b)) => Ok(b),
                    (None, None) => Err(D::Error::custom(format!("group {:?} needs generators", raw.name))),
                    (Some(generators), builtin) => {
                        let relations = raw
                            .relations
                            .unwrap_or_default()
                            .iter()
                            .map(|r| GroupWord::parse(r, &generators))
                            .collect::<Result<Vec<_>>>()
                            .map_err(D::Error::custom)?;
                        // a spelled-out builtin keeps its kind only if it matches exactly
                        if let Some(b) = builtin {
                            if b.generators == generators && b.relations == relations {
                                return Ok(b);
                            }
                        }
                        let mut d = GroupDescriptor::custom(&raw.name, generators, relations);
                        d.perfect = raw.perfect;
                        Ok(d)
                    }
                }
            }
        }
    }
}

/// A permutation of `0..degree`; `compose` applies the right factor first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::Precondition(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut p = Perm::identity(n);
        p.0.swap(a, b);
        p
    }

    /// The cycle `c_0 -> c_1 -> ... -> c_0`.
    pub fn from_cycle(n: usize, cycle: &[usize]) -> Perm {
        let mut p = Perm::identity(n);
        for (k, &c) in cycle.iter().enumerate() {
            p.0[c] = cycle[(k + 1) % cycle.len()];
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycle lengths, sorted decreasingly (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn sign(&self) -> i64 {
        let odd = self.cycle_type().iter().filter(|&&l| l % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &x)| i == x).count()
    }

    pub fn permutation_matrix(&self) -> super::matrix::RationalMatrix {
        let n = self.0.len();
        let mut m = super::matrix::RationalMatrix::zeros(n, n);
        for (i, &x) in self.0.iter().enumerate() {
            m.set(x, i, super::rational::rat(1));
        }
        m
    }
}

/// Check every relator of `d` against a permutation model.
pub fn perm_relations_hold(d: &GroupDescriptor, degree: usize, gens: &[Perm]) -> bool {
    let inverses: Vec<Perm> = gens.iter().map(Perm::inverse).collect();
    d.relations
        .iter()
        .all(|r| r.evaluate(gens, &inverses, Perm::identity(degree), |a, b| a.compose(b)).is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_models_satisfy_their_relations() {
        for d in [
            GroupDescriptor::symmetric(5).unwrap(),
            GroupDescriptor::alternating(5).unwrap(),
            GroupDescriptor::alternating(6).unwrap(),
            GroupDescriptor::cyclic(3).unwrap(),
        ] {
            let (deg, gens) = d.permutation_model().unwrap();
            assert!(perm_relations_hold(&d, deg, &gens), "{}", d.name);
        }
    }

    #[test]
    fn broken_model_fails() {
        let d = GroupDescriptor::alternating(5).unwrap();
        let gens = vec![Perm::transposition(5, 0, 1), Perm::from_cycle(5, &[0, 1, 3]), Perm::from_cycle(5, &[0, 1, 4])];
        assert!(!perm_relations_hold(&d, 5, &gens));
    }

    #[test]
    fn perm_basics() {
        let c = Perm::from_cycle(4, &[0, 1, 2]);
        assert_eq!(c.cycle_type(), vec![3, 1]);
        assert_eq!(c.sign(), 1);
        assert_eq!(Perm::transposition(4, 0, 3).sign(), -1);
        assert!(c.compose(&c.inverse()).is_identity());
        let t = Perm::transposition(3, 0, 1);
        let u = Perm::transposition(3, 1, 2);
        // right factor first: 0 -> 0 -> 1
        assert_eq!(t.compose(&u).apply(0), 1);
        assert_eq!(c.permutation_matrix().apply(&[1, 0, 0, 0].map(crate::exactla::rational::rat)), [0, 1, 0, 0].map(crate::exactla::rational::rat).to_vec());
    }

    #[test]
    fn names_parse() {
        assert_eq!(GroupDescriptor::by_name("S_4").unwrap().kind, GroupKind::Symmetric(4));
        assert_eq!(GroupDescriptor::by_name("A7").unwrap().kind, GroupKind::Alternating(7));
        assert_eq!(GroupDescriptor::by_name("G6").unwrap().generators.len(), 7);
        assert_eq!(GroupDescriptor::by_name("Out_3").unwrap().generators.len(), 3 + 12);
        assert!(GroupDescriptor::by_name("Q_8").is_err());
    }

    #[test]
    fn json_forms() {
        let d: GroupDescriptor = serde_json::from_str(r#""W_3""#).unwrap();
        assert_eq!(d.kind, GroupKind::Signed(3));
        let s = serde_json::to_string(&d).unwrap();
        let back: GroupDescriptor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let custom: GroupDescriptor =
            serde_json::from_str(r#"{"name":"flip","generators":["f"],"relations":["f^2"]}"#).unwrap();
        assert_eq!(custom.kind, GroupKind::Custom);
        assert_eq!(custom.relations, vec![GroupWord::power(0, 2)]);
        assert!(serde_json::from_str::<GroupDescriptor>(r#"{"name":"x","generators":["f"],"relations":["g"]}"#).is_err());
    }
}
