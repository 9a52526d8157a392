mod common;

use braidmon::extract::{extract, random_real_arrangement, vertices, Arrangement};
use braidmon::monodromy::{infinity_check, monodromy};
use braidmon::scalar::rat;
use proptest::prelude::*;
use rand::Rng;

/// Vertex sets of the extraction, in input line numbering, sorted.
fn relabelled(a: &Arrangement, flip: bool) -> (Vec<Vec<usize>>, braidmon::wiring::Diagram) {
    let e = extract(a, flip).unwrap();
    let mut sets: Vec<Vec<usize>> = e
        .diagram
        .vertex_sets()
        .iter()
        .map(|s| {
            let mut v: Vec<usize> = s.iter().map(|&w| e.labels[w - 1]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    sets.sort();
    (sets, e.diagram)
}

fn incidences(a: &Arrangement) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = vertices(a).into_iter().map(|r| r.lines).collect();
    v.sort();
    v
}

/// Intersection data straight from the coefficients: lines `z = a x + b`
/// meet where `(a_i - a_j) x = b_j - b_i`.
fn real_incidences(pairs: &[(i64, i64, i64, i64)]) -> Vec<Vec<usize>> {
    use num::rational::Ratio;
    use std::collections::BTreeMap;
    let coef = |&(an, ad, bn, bd): &(i64, i64, i64, i64)| (Ratio::new(an, ad), Ratio::new(bn, bd));
    let mut points: BTreeMap<(Ratio<i64>, Ratio<i64>), Vec<usize>> = BTreeMap::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let ((ai, bi), (aj, bj)) = (coef(&pairs[i]), coef(&pairs[j]));
            if ai == aj {
                continue;
            }
            let x = (bj - bi) / (ai - aj);
            let e = points.entry((x, ai * x + bi)).or_default();
            for l in [i + 1, j + 1] {
                if !e.contains(&l) {
                    e.push(l);
                }
            }
        }
    }
    let mut v: Vec<Vec<usize>> = points
        .into_values()
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn real_arrangements_give_unbraided_diagrams(seed in any::<u64>(), n in 2usize..=6, flip in any::<bool>()) {
        let mut r = common::rng(seed);
        let pairs: Vec<(i64, i64, i64, i64)> = loop {
            let p: Vec<_> = (0..n).map(|_| (r.gen_range(-4..=4), r.gen_range(1..=2), r.gen_range(-4..=4), r.gen_range(1..=2))).collect();
            let distinct = (0..n).all(|i| (0..i).all(|j| {
                let (a, b) = (&p[i], &p[j]);
                (a.0 * b.1 != b.0 * a.1) || (a.2 * b.3 != b.2 * a.3)
            }));
            if distinct {
                break p;
            }
        };
        let a = Arrangement::real(&pairs.iter().map(|&(an, ad, bn, bd)| (rat(an, ad), rat(bn, bd))).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(incidences(&a), real_incidences(&pairs));
        let (sets, d) = relabelled(&a, flip);
        prop_assert!(d.validate().is_ok());
        prop_assert!(d.is_unbraided());
        prop_assert_eq!(sets, incidences(&a));
        if !a.has_parallel() {
            prop_assert!(infinity_check(&monodromy(&d)));
        }
    }

    #[test]
    fn complex_arrangements_keep_their_incidences(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = common::rng(seed);
        let mut small = || rat(r.gen_range(-3..=3), r.gen_range(1..=2));
        let coords: Vec<[num::BigRational; 4]> = (0..n).map(|_| [small(), small(), small(), small()]).collect();
        prop_assume!(Arrangement::new(-1, coords.clone()).is_ok());
        let a = Arrangement::new(-1, coords).unwrap();
        let (sets, d) = relabelled(&a, false);
        prop_assert!(d.validate().is_ok());
        prop_assert_eq!(sets, incidences(&a));
    }
}

#[test]
fn random_real_arrangements_close_at_infinity() {
    let mut r = common::rng(5);
    for _ in 0..30 {
        let a = random_real_arrangement(5, &mut r, false);
        let e = extract(&a, false).unwrap();
        assert!(e.diagram.is_unbraided());
        assert!(infinity_check(&monodromy(&e.diagram)), "{a}");
    }
}
