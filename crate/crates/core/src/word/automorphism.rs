use std::fmt;

use serde::{Deserialize, Serialize};

use super::{check_rank, push_reduced, Letter, Word};
use crate::error::{Error, Result};

/// An endomorphism of `F_n` given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(rank: usize, images: Vec<Word>) -> Result<Endomorphism> {
        if rank == 0 || images.len() != rank {
            return Err(Error::InvalidRank(images.len()));
        }
        for w in &images {
            check_rank(rank, w.rank())?;
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn identity(rank: usize) -> Endomorphism {
        let images = (1..=rank).map(|i| Word::generator(rank, i).unwrap()).collect();
        Endomorphism { rank, images }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, index: usize) -> &Word {
        &self.images[index - 1]
    }

    /// Substitute images letter by letter and reduce.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        check_rank(self.rank, w.rank())?;
        let mut stack: Vec<Letter> = Vec::with_capacity(w.len() * 2);
        for &l in w.letters() {
            let image = &self.images[l.index() - 1];
            if l.is_inverse() {
                for &m in image.letters().iter().rev() {
                    push_reduced(&mut stack, m.inverse());
                }
            } else {
                for &m in image.letters() {
                    push_reduced(&mut stack, m);
                }
            }
        }
        Ok(Word { rank: self.rank, letters: stack })
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        check_rank(self.rank, other.rank)?;
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<_>>()?;
        Ok(Endomorphism { rank: self.rank, images })
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, w)| w.letters() == [Letter::new(k + 1, false)])
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "a{} -> {}", k + 1, w)?;
        }
        Ok(())
    }
}

/// An automorphism carrying a certified inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    forward: Endomorphism,
    backward: Endomorphism,
}

/// The named elementary automorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NielsenKind {
    /// `a_i -> a_i a_j`
    Rho,
    /// `a_i -> a_j a_i`
    Lambda,
    /// `a_i -> a_i^{-1}`
    Eps,
    /// swap `a_i` and `a_j`
    Sigma,
    /// `a_i -> a_i^{-1}`, `a_j -> a_j a_i^{-1}` for `j != i`
    SigmaStar,
    /// invert every generator
    Delta,
}

fn word(rank: usize, raw: &[i32]) -> Word {
    Word::reduce(rank, raw).expect("indices validated by caller")
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i as i64, rank: n });
    }
    Ok(())
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<()> {
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(Error::InvalidIndices(format!("i = j = {i}")));
    }
    Ok(())
}

/// Build a named generator of `Aut(F_n)` with its inverse attached.
///
/// `j` is ignored for `Eps`, `SigmaStar` and `Delta`; `i` is ignored for `Delta`.
pub fn nielsen(kind: NielsenKind, i: usize, j: usize, n: usize) -> Result<Automorphism> {
    if n == 0 {
        return Err(Error::InvalidRank(n));
    }
    let (ii, jj) = (i as i32, j as i32);
    let mut fwd = Endomorphism::identity(n);
    let mut bwd = Endomorphism::identity(n);
    match kind {
        NielsenKind::Rho => {
            check_pair(i, j, n)?;
            fwd.images[i - 1] = word(n, &[ii, jj]);
            bwd.images[i - 1] = word(n, &[ii, -jj]);
        }
        NielsenKind::Lambda => {
            check_pair(i, j, n)?;
            fwd.images[i - 1] = word(n, &[jj, ii]);
            bwd.images[i - 1] = word(n, &[-jj, ii]);
        }
        NielsenKind::Eps => {
            check_index(i, n)?;
            fwd.images[i - 1] = word(n, &[-ii]);
            bwd = fwd.clone();
        }
        NielsenKind::Sigma => {
            check_pair(i, j, n)?;
            fwd.images[i - 1] = word(n, &[jj]);
            fwd.images[j - 1] = word(n, &[ii]);
            bwd = fwd.clone();
        }
        NielsenKind::SigmaStar => {
            check_index(i, n)?;
            for k in 1..=n {
                let kk = k as i32;
                fwd.images[k - 1] = if k == i { word(n, &[-ii]) } else { word(n, &[kk, -ii]) };
            }
            // the map is an involution
            bwd = fwd.clone();
        }
        NielsenKind::Delta => {
            for k in 1..=n {
                fwd.images[k - 1] = word(n, &[-(k as i32)]);
            }
            bwd = fwd.clone();
        }
    }
    Ok(Automorphism { forward: fwd, backward: bwd })
}

impl Automorphism {
    /// Pair an endomorphism with a claimed inverse, verifying both compositions.
    pub fn new(forward: Endomorphism, backward: Endomorphism) -> Result<Automorphism> {
        check_rank(forward.rank, backward.rank)?;
        if !forward.compose(&backward)?.is_identity() || !backward.compose(&forward)?.is_identity() {
            return Err(Error::NotAnInverse);
        }
        Ok(Automorphism { forward, backward })
    }

    pub fn identity(rank: usize) -> Automorphism {
        let e = Endomorphism::identity(rank);
        Automorphism { forward: e.clone(), backward: e }
    }

    pub fn rho(n: usize, i: usize, j: usize) -> Result<Automorphism> {
        nielsen(NielsenKind::Rho, i, j, n)
    }

    pub fn lambda(n: usize, i: usize, j: usize) -> Result<Automorphism> {
        nielsen(NielsenKind::Lambda, i, j, n)
    }

    pub fn eps(n: usize, i: usize) -> Result<Automorphism> {
        nielsen(NielsenKind::Eps, i, 0, n)
    }

    pub fn sigma(n: usize, i: usize, j: usize) -> Result<Automorphism> {
        nielsen(NielsenKind::Sigma, i, j, n)
    }

    /// `sigma_{i(n+1)}`, the extra transposition of `S_{n+1}`.
    pub fn sigma_star(n: usize, i: usize) -> Result<Automorphism> {
        nielsen(NielsenKind::SigmaStar, i, 0, n)
    }

    pub fn delta(n: usize) -> Result<Automorphism> {
        nielsen(NielsenKind::Delta, 0, 0, n)
    }

    /// The inner automorphism `c_w: x -> w^{-1} x w`.
    pub fn inner(w: &Word) -> Automorphism {
        let n = w.rank();
        let winv = w.inverse();
        let conj = |a: &Word, b: &Word| -> Vec<Word> {
            (1..=n)
                .map(|i| {
                    let g = Word::generator(n, i).unwrap();
                    a.mul(&g).unwrap().mul(b).unwrap()
                })
                .collect()
        };
        Automorphism {
            forward: Endomorphism { rank: n, images: conj(&winv, w) },
            backward: Endomorphism { rank: n, images: conj(w, &winv) },
        }
    }

    pub fn rank(&self) -> usize {
        self.forward.rank
    }

    pub fn forward(&self) -> &Endomorphism {
        &self.forward
    }

    pub fn backward(&self) -> &Endomorphism {
        &self.backward
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.forward.apply(w)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        Ok(Automorphism {
            forward: self.forward.compose(&other.forward)?,
            backward: other.backward.compose(&self.backward)?,
        })
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism { forward: self.backward.clone(), backward: self.forward.clone() }
    }

    pub fn pow(&self, k: i64) -> Automorphism {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Automorphism::identity(self.rank());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base).expect("same rank");
        }
        acc
    }

    /// `self^h = h^{-1} self h`.
    pub fn conjugate_by(&self, h: &Automorphism) -> Result<Automorphism> {
        h.inverse().compose(self)?.compose(h)
    }

    /// `[self, h] = self h self^{-1} h^{-1}`.
    pub fn commutator(&self, h: &Automorphism) -> Result<Automorphism> {
        self.compose(h)?.compose(&self.inverse())?.compose(&h.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.forward.is_identity()
    }

    /// Product of a sequence, leftmost factor applied last.
    pub fn product<'a, I>(rank: usize, factors: I) -> Result<Automorphism>
    where
        I: IntoIterator<Item = &'a Automorphism>,
    {
        factors
            .into_iter()
            .try_fold(Automorphism::identity(rank), |acc, f| acc.compose(f))
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.forward)
    }
}

/// Find `w` with `a = c_w`, i.e. `a(x) = w^{-1} x w` for every `x`.
///
/// The centraliser of `a_1` is `<a_1>`, so the conjugator is pinned down by the
/// images of `a_1` and `a_2` up to an exponent that the `a_2` image determines
/// exactly. The candidate is then verified on every generator.
pub fn is_inner(a: &Automorphism) -> Option<Word> {
    let n = a.rank();
    let u1 = a.forward.image(1);
    let (s, core) = u1.cyclic_decomposition();
    if core.letters() != [Letter::new(1, false)] {
        return None;
    }
    // a(a_1) = s^{-1} a_1 s, so w = a_1^t s for some t
    let w = if n == 1 {
        s
    } else {
        let v = s.mul(a.forward.image(2)).ok()?.mul(&s.inverse()).ok()?;
        let t = conjugating_exponent(&v)?;
        Word::generator_power(n, 1, t).ok()?.mul(&s).ok()?
    };
    let candidate = Automorphism::inner(&w);
    if candidate.forward == a.forward {
        Some(w)
    } else {
        None
    }
}

/// If `v = a_1^{-t} a_2 a_1^t`, return `t`.
fn conjugating_exponent(v: &Word) -> Option<i64> {
    let letters = v.letters();
    let pos = letters.iter().position(|l| l.index() != 1)?;
    if letters[pos] != Letter::new(2, false) {
        return None;
    }
    let lead: i64 = letters[..pos].iter().map(|l| l.sign()).sum();
    let trail: i64 = letters[pos + 1..]
        .iter()
        .map(|l| if l.index() == 1 { Some(l.sign()) } else { None })
        .sum::<Option<i64>>()?;
    if lead != -trail {
        return None;
    }
    Some(trail)
}

/// Equality in `Out(F_n)`.
pub fn outer_equal(a: &Automorphism, b: &Automorphism) -> Result<bool> {
    check_rank(a.rank(), b.rank())?;
    Ok(is_inner(&a.compose(&b.inverse())?).is_some())
}

#[derive(Serialize, Deserialize)]
struct AutomorphismJson {
    n: usize,
    images: Vec<Vec<i32>>,
    inverse_images: Vec<Vec<i32>>,
}

impl Serialize for Automorphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AutomorphismJson {
            n: self.rank(),
            images: self.forward.images.iter().map(Word::to_raw).collect(),
            inverse_images: self.backward.images.iter().map(Word::to_raw).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Automorphism {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = AutomorphismJson::deserialize(deserializer)?;
        let words = |ws: &[Vec<i32>]| -> Result<Vec<Word>> {
            ws.iter().map(|w| Word::reduce(raw.n, w)).collect()
        };
        let build = || -> Result<Automorphism> {
            Automorphism::new(
                Endomorphism::new(raw.n, words(&raw.images)?)?,
                Endomorphism::new(raw.n, words(&raw.inverse_images)?)?,
            )
        };
        build().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, raw: &[i32]) -> Word {
        Word::reduce(n, raw).unwrap()
    }

    #[test]
    fn apply_examples() {
        let n = 3;
        let rho = Automorphism::rho(n, 1, 2).unwrap();
        assert_eq!(rho.apply(&w(n, &[1])).unwrap().to_raw(), vec![1, 2]);
        let eps = Automorphism::eps(n, 1).unwrap();
        assert_eq!(eps.apply(&w(n, &[1, 2])).unwrap().to_raw(), vec![-1, 2]);
        let x = w(n, &[3, -1, 2, 2]);
        assert_eq!(Automorphism::identity(n).apply(&x).unwrap(), x);
    }

    #[test]
    fn apply_rank_mismatch() {
        let rho = Automorphism::rho(3, 1, 2).unwrap();
        assert!(matches!(rho.apply(&w(2, &[1])), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn compose_examples() {
        let n = 3;
        let eps = Automorphism::eps(n, 1).unwrap();
        assert!(eps.compose(&eps).unwrap().is_identity());
        let rho = Automorphism::rho(n, 1, 2).unwrap();
        assert!(rho.compose(&rho.inverse()).unwrap().is_identity());
        // rho_12^-1 rho_23^-1 rho_12 rho_23 = rho_13^-1
        let r12 = Automorphism::rho(n, 1, 2).unwrap();
        let r23 = Automorphism::rho(n, 2, 3).unwrap();
        let c = Automorphism::product(n, &[r12.inverse(), r23.inverse(), r12.clone(), r23.clone()]).unwrap();
        assert_eq!(c.apply(&w(n, &[1])).unwrap().to_raw(), vec![1, -3]);
        assert_eq!(c, Automorphism::rho(n, 1, 3).unwrap().inverse());
        // the same relation written with the commutator convention [g,h] = g h g^-1 h^-1
        assert_eq!(r12.inverse().commutator(&r23.inverse()).unwrap(), c);
    }

    #[test]
    fn nielsen_errors() {
        assert!(matches!(nielsen(NielsenKind::Rho, 1, 1, 3), Err(Error::InvalidIndices(_))));
        assert!(matches!(nielsen(NielsenKind::Lambda, 1, 4, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(nielsen(NielsenKind::Eps, 0, 0, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(nielsen(NielsenKind::Delta, 0, 0, 3).is_ok());
    }

    #[test]
    fn sigma_star_images() {
        let n = 4;
        let s = Automorphism::sigma_star(n, 1).unwrap();
        assert_eq!(s.forward().image(1).to_raw(), vec![-1]);
        for j in 2..=n {
            assert_eq!(s.forward().image(j).to_raw(), vec![j as i32, -1]);
        }
        assert!(s.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn delta_squared_is_identity() {
        let d = Automorphism::delta(5).unwrap();
        assert!(d.compose(&d).unwrap().is_identity());
    }

    #[test]
    fn eps_sigma_identity_holds_in_aut() {
        for n in 2..=5 {
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let lhs = Automorphism::eps(n, i).unwrap().compose(&Automorphism::sigma(n, i, j).unwrap()).unwrap();
                    let rhs = Automorphism::product(
                        n,
                        &[
                            Automorphism::lambda(n, i, j).unwrap(),
                            Automorphism::lambda(n, j, i).unwrap().inverse(),
                            Automorphism::rho(n, i, j).unwrap(),
                        ],
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn inner_examples() {
        let n = 3;
        assert_eq!(is_inner(&Automorphism::identity(n)), Some(Word::identity(n)));
        let c = Automorphism::inner(&w(n, &[2]));
        assert_eq!(is_inner(&c).unwrap().to_raw(), vec![2]);
        assert_eq!(is_inner(&Automorphism::rho(n, 1, 2).unwrap()), None);
        assert_eq!(is_inner(&Automorphism::eps(n, 2).unwrap()), None);
        // product of partial conjugations by a_j over all i != j
        for j in 1..=n {
            let factors: Vec<Automorphism> = (1..=n)
                .filter(|&i| i != j)
                .map(|i| {
                    Automorphism::rho(n, i, j)
                        .unwrap()
                        .compose(&Automorphism::lambda(n, i, j).unwrap().inverse())
                        .unwrap()
                })
                .collect();
            let p = Automorphism::product(n, &factors).unwrap();
            assert_eq!(is_inner(&p).unwrap().to_raw(), vec![j as i32]);
        }
    }

    #[test]
    fn inner_rank_one() {
        let e = Automorphism::eps(1, 1).unwrap();
        assert_eq!(is_inner(&e), None);
        assert_eq!(is_inner(&Automorphism::identity(1)), Some(Word::identity(1)));
    }

    #[test]
    fn outer_equal_examples() {
        let n = 3;
        let r12 = Automorphism::rho(n, 1, 2).unwrap();
        assert!(outer_equal(&r12, &r12).unwrap());
        let conj = r12.conjugate_by(&Automorphism::eps(n, 1).unwrap()).unwrap();
        assert!(outer_equal(&conj, &Automorphism::lambda(n, 1, 2).unwrap().inverse()).unwrap());
        assert!(!outer_equal(&r12, &Automorphism::lambda(n, 1, 2).unwrap()).unwrap());
        assert!(matches!(
            outer_equal(&r12, &Automorphism::rho(4, 1, 2).unwrap()),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn eps_sigma_star_is_product_of_rho() {
        for n in 3..=6 {
            let lhs = Automorphism::eps(n, 1).unwrap().compose(&Automorphism::sigma_star(n, 1).unwrap()).unwrap();
            let factors: Vec<_> = (2..=n).map(|i| Automorphism::rho(n, i, 1).unwrap()).collect();
            let rhs = Automorphism::product(n, &factors).unwrap();
            assert_eq!(lhs, rhs);
            assert!(outer_equal(&lhs, &rhs).unwrap());
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let a = Automorphism::rho(3, 1, 2).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":3,"images":[[1,2],[2],[3]],"inverse_images":[[1,-2],[2],[3]]}"#);
        let back: Automorphism = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let bad = r#"{"n":3,"images":[[1,2],[2],[3]],"inverse_images":[[1,2],[2],[3]]}"#;
        assert!(serde_json::from_str::<Automorphism>(bad).is_err());
    }
}
