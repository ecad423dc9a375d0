use outfn_core::word::{abelianize, is_inner, nielsen, outer_equal, Automorphism, NielsenKind, Word};
use proptest::prelude::*;

const KINDS: [NielsenKind; 6] =
    [NielsenKind::Rho, NielsenKind::Lambda, NielsenKind::Eps, NielsenKind::Sigma, NielsenKind::SigmaStar, NielsenKind::Delta];

fn raw_word(n: usize, max: usize) -> impl Strategy<Value = Vec<i32>> {
    let n = n as i32;
    prop::collection::vec((1..=n, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i }), 0..=max)
}

fn automorphism(n: usize, max: usize) -> impl Strategy<Value = Automorphism> {
    prop::collection::vec((0..KINDS.len(), 1..=n, 1..n, any::<bool>()), 0..=max).prop_map(move |steps| {
        steps.into_iter().fold(Automorphism::identity(n), |acc, (k, i, shift, inv)| {
            let j = (i - 1 + shift) % n + 1;
            let g = nielsen(KINDS[k], i, j, n).unwrap();
            let g = if inv { g.inverse() } else { g };
            acc.compose(&g).unwrap()
        })
    })
}

/// Reduce by cancelling adjacent inverse pairs in a caller-chosen order.
fn reduce_in_order(raw: &[i32], picks: &[usize]) -> Vec<i32> {
    let mut w = raw.to_vec();
    let mut k = 0;
    loop {
        let spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| w[p] == -w[p + 1]).collect();
        if spots.is_empty() {
            return w;
        }
        let p = spots[picks.get(k).copied().unwrap_or(0) % spots.len()];
        k += 1;
        w.drain(p..p + 2);
    }
}

fn exponent_sums(n: usize, raw: &[i32]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &r in raw {
        v[r.unsigned_abs() as usize - 1] += r.signum() as i64;
    }
    v
}

proptest! {
    #[test]
    fn free_reduction_is_confluent(raw in raw_word(3, 24), picks in prop::collection::vec(any::<usize>(), 24)) {
        let expected = Word::reduce(3, &raw).unwrap().to_raw();
        prop_assert_eq!(reduce_in_order(&raw, &picks), expected.clone());
        prop_assert_eq!(reduce_in_order(&raw, &[]), expected);
    }

    #[test]
    fn word_group_axioms(a in raw_word(3, 10), b in raw_word(3, 10), c in raw_word(3, 10)) {
        let (a, b, c) = (Word::reduce(3, &a).unwrap(), Word::reduce(3, &b).unwrap(), Word::reduce(3, &c).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert!(a.mul(&a.inverse()).unwrap().is_empty());
    }

    #[test]
    fn abelianize_is_a_homomorphism(a in automorphism(3, 5), b in automorphism(3, 5)) {
        prop_assert_eq!(abelianize(&a.compose(&b).unwrap()), abelianize(&a).mul(&abelianize(&b)));
    }

    #[test]
    fn abelianize_tracks_exponent_sums(a in automorphism(3, 4), raw in raw_word(3, 12)) {
        // exponent sums of a(w) = abelianize(a) · exponent sums of w
        let w = Word::reduce(3, &raw).unwrap();
        let image = a.apply(&w).unwrap();
        let m = abelianize(&a);
        let v = exponent_sums(3, &raw);
        let mv: Vec<i64> = (0..3).map(|r| (0..3).map(|c| m.get(r, c) * v[c]).sum()).collect();
        prop_assert_eq!(exponent_sums(3, &image.to_raw()), mv);
    }

    #[test]
    fn inverse_undoes(a in automorphism(4, 6)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
    }

    #[test]
    fn conjugations_are_detected(phi in automorphism(3, 4), raw in raw_word(3, 8)) {
        // φ c_w φ^-1 = c_{φ(w)} for c_w(x) = w^-1 x w
        let w = Word::reduce(3, &raw).unwrap();
        let conj = phi.compose(&Automorphism::inner(&w)).unwrap().compose(&phi.inverse()).unwrap();
        prop_assert_eq!(is_inner(&conj), Some(phi.apply(&w).unwrap()));
    }

    #[test]
    fn is_inner_is_sound(a in automorphism(3, 4)) {
        if let Some(w) = is_inner(&a) {
            let inner = Automorphism::inner(&w);
            prop_assert_eq!(inner.forward(), a.forward());
        }
        prop_assert!(outer_equal(&a, &a).unwrap());
    }

    #[test]
    fn non_trivial_abelianization_is_not_inner(a in automorphism(3, 4)) {
        let id = outfn_core::word::IntMatrix::identity(3);
        if abelianize(&a) != id {
            prop_assert!(is_inner(&a).is_none());
        }
    }
}
