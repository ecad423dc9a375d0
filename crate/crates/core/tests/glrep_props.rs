use outfn_core::exactla::{rat, RationalMatrix};
use outfn_core::glrep::{psi, schur_square, stabilizes_f, tau_matrix, Inducer, Mu, SchreierBasis};
use outfn_core::graphact::Graph;
use outfn_core::word::{Automorphism, Gen, Word};
use proptest::prelude::*;

const N: usize = 4;

fn gens(n: usize) -> Vec<Automorphism> {
    let mut out = vec![Automorphism::delta(n).unwrap()];
    for i in 1..=n {
        out.push(Automorphism::eps(n, i).unwrap());
        for j in (1..=n).filter(|&j| j != i) {
            out.push(Gen::Rho(i, j).automorphism(n).unwrap());
            out.push(Gen::Lambda(i, j).automorphism(n).unwrap());
            if i < j {
                out.push(Automorphism::sigma(n, i, j).unwrap());
            }
        }
    }
    out
}

/// Random elements of Aut(F_n), optionally conditioned to stabilise f.
fn product(n: usize, max: usize) -> impl Strategy<Value = Automorphism> {
    let g = gens(n);
    let len = g.len();
    prop::collection::vec((0..len, any::<bool>()), 0..=max).prop_map(move |steps| {
        steps.iter().fold(Automorphism::identity(n), |acc, &(k, inv)| {
            let x = if inv { g[k].inverse() } else { g[k].clone() };
            acc.compose(&x).unwrap()
        })
    })
}

fn in_g(n: usize, max: usize) -> impl Strategy<Value = Automorphism> {
    product(n, max).prop_filter("stabilises f", stabilizes_f)
}

fn kernel_word(n: usize) -> impl Strategy<Value = Word> {
    let n32 = n as i32;
    prop::collection::vec((1..=n32, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i }), 0..=10).prop_map(
        move |mut raw| {
            if raw.iter().filter(|r| r.unsigned_abs() as usize == n).count() % 2 == 1 {
                raw.push(n as i32);
            }
            Word::reduce(n, &raw).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rewrite_round_trips(w in kernel_word(N)) {
        let basis = SchreierBasis::new(N).unwrap();
        prop_assert_eq!(basis.expand(&basis.rewrite(&w).unwrap()).unwrap(), w);
    }

    #[test]
    fn psi_is_a_homomorphism(a in in_g(N, 4), b in in_g(N, 4)) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(psi(&ab).unwrap(), psi(&a).unwrap().mul(&psi(&b).unwrap()));
    }

    #[test]
    fn psi_commutes_with_tau(a in in_g(N, 4)) {
        let (p, t) = (psi(&a).unwrap(), tau_matrix(N).unwrap());
        prop_assert_eq!(p.mul(&t), t.mul(&p));
        prop_assert_eq!(p.det().abs(), 1);
    }

    #[test]
    fn schur_square_ignores_sign(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 3)) {
        let m = RationalMatrix::from_i64_rows(&rows);
        let minus = &RationalMatrix::scalar(3, rat(-1)) * &m;
        for mu in [Mu::Exterior, Mu::Symmetric] {
            prop_assert_eq!(schur_square(&minus, mu).unwrap(), schur_square(&m, mu).unwrap());
        }
    }

    #[test]
    fn theta_is_a_homomorphism(a in product(3, 3), b in product(3, 3)) {
        let ind = Inducer::new(3, Mu::Symmetric).unwrap();
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ind.theta(&ab).unwrap(), ind.theta(&a).unwrap().mul(&ind.theta(&b).unwrap()));
    }

    #[test]
    fn theta_kills_inner_automorphisms(raw in prop::collection::vec(prop::sample::select(vec![1, 2, 3, -1, -2, -3]), 0..6)) {
        let ind = Inducer::new(3, Mu::Symmetric).unwrap();
        let c = Automorphism::inner(&Word::reduce(3, &raw).unwrap());
        prop_assert!(ind.theta(&c).unwrap().is_identity());
    }
}

#[test]
fn cover_homology_matches_schreier_basis() {
    for n in 3..=6 {
        assert_eq!(Graph::cover_of_rose(n).unwrap().betti(), SchreierBasis::new(n).unwrap().size());
    }
}
