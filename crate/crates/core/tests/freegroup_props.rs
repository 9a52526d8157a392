mod common;

use braidmon::{FreeEndo, FreeWord};
use proptest::prelude::*;

const RANK: usize = 4;

fn raw_word(max: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..=RANK as i32, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i }), 0..max)
}

fn word(max: usize) -> impl Strategy<Value = FreeWord> {
    raw_word(max).prop_map(|l| FreeWord::new(RANK, l).unwrap())
}

fn endo() -> impl Strategy<Value = FreeEndo> {
    prop::collection::vec(word(5), RANK).prop_map(|imgs| FreeEndo::new(imgs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn reduction_is_idempotent_and_matches_the_oracle(raw in raw_word(30)) {
        let w = FreeWord::new(RANK, raw.clone()).unwrap();
        prop_assert_eq!(w.letters().to_vec(), common::reduce(&raw));
        let again = FreeWord::new(RANK, w.letters().to_vec()).unwrap();
        prop_assert_eq!(&again, &w);
    }

    #[test]
    fn composition_is_a_right_action(a in endo(), b in endo(), w in word(12)) {
        let ab = a.then(&b).unwrap();
        prop_assert_eq!(ab.apply(&w).unwrap(), b.apply(&a.apply(&w).unwrap()).unwrap());
    }

    #[test]
    fn apply_agrees_with_substitution(a in endo(), w in word(12)) {
        let imgs: Vec<Vec<i32>> = a.images().iter().map(|i| i.letters().to_vec()).collect();
        let expected = common::substitute(w.letters(), &imgs);
        prop_assert_eq!(a.apply(&w).unwrap().letters().to_vec(), expected);
    }

    #[test]
    fn product_length_is_bounded(u in word(20), v in word(20)) {
        prop_assert!(u.mul(&v).unwrap().len() <= u.len() + v.len());
    }

    #[test]
    fn inverse_cancels(u in word(20)) {
        prop_assert!(u.mul(&u.inverse()).unwrap().is_identity());
    }

    #[test]
    fn cyclic_reduction_preserves_conjugacy_class(u in word(20), y in word(6)) {
        let c = u.conjugate_by(&y).unwrap();
        let (a, b) = (c.cyclically_reduced(), u.cyclically_reduced());
        prop_assert_eq!(a.len(), b.len());
        let doubled = [b.letters(), b.letters()].concat();
        prop_assert!(a.is_empty() || doubled.windows(a.len()).any(|w| w == a.letters()));
        prop_assert_eq!(c.exponent_sums(), u.exponent_sums());
    }

    #[test]
    fn delta_is_an_involution(w in word(12)) {
        let d = FreeEndo::delta(RANK);
        prop_assert_eq!(d.apply(&d.apply(&w).unwrap()).unwrap(), w);
    }
}
