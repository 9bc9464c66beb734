mod common;

use kr_core::chainred::Pivot;
use kr_core::ring::{exact_div, rat};
use kr_core::twist::homology;
use kr_core::{Mark, Monomial, Polynomial, TangleWord};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(coeffs: &[(i64, u32, u32)]) -> Polynomial {
    let mut p = Polynomial::zero();
    for &(c, a, b) in coeffs {
        p.add_term(Monomial::from_pairs(&[(Mark(1), a), (Mark(2), b)]), rat(c));
    }
    p
}

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-4i64..=4, 0u32..4, 0u32..4), 0..5).prop_map(|v| poly(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn elimination_preserves_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rc = common::random_complex(&mut rng);
        prop_assert_eq!(rc.complex.homology().unwrap(), rc.truth.clone());
        prop_assert_eq!(rc.complex.homology_by_elimination().unwrap(), rc.truth.clone());
        let mut c = rc.complex.clone();
        c.simplify_by(|ps: &[Pivot]| rng.random_range(0..ps.len())).unwrap();
        prop_assert_eq!(c.chain_dimensions(), rc.truth);
    }

    #[test]
    fn dual_complex_mirrors_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rc = common::random_complex(&mut rng);
        prop_assert_eq!(rc.complex.dual().homology().unwrap(), rc.truth.mirrored());
    }

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(exact_div(&(&a * &b), &b).unwrap(), a);
        }
    }

    #[test]
    fn word_display_round_trips(gens in prop::collection::vec(any::<bool>(), 1..12), closed in any::<bool>()) {
        let text: String = gens.iter().map(|&g| if g { 'T' } else { 'M' }).collect::<String>() + if closed { "!" } else { "" };
        let w: TangleWord = text.parse().unwrap();
        prop_assert_eq!(w.to_string().parse::<TangleWord>().unwrap(), w.clone());
        prop_assert_eq!(w.mirror().mirror(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mirror_duality(gens in prop::collection::vec(any::<bool>(), 1..5), n in 2u32..=3) {
        let text: String = gens.iter().map(|&g| if g { 'T' } else { 'M' }).collect::<String>() + "!";
        let w: TangleWord = text.parse().unwrap();
        prop_assert_eq!(homology(&w.mirror(), n).unwrap(), homology(&w, n).unwrap().mirrored());
    }

    #[test]
    fn homology_depends_on_net_twist(gens in prop::collection::vec(any::<bool>(), 1..6)) {
        let text: String = gens.iter().map(|&g| if g { 'T' } else { 'M' }).collect::<String>() + "!";
        let w: TangleWord = text.parse().unwrap();
        let net = w.net_twist();
        prop_assume!(net != 0);
        prop_assert_eq!(homology(&w, 2).unwrap(), homology(&TangleWord::twist(net, true), 2).unwrap());
    }
}
