mod common;

use braidmon::monodromy::monodromy;
use braidmon::presentation::{
    abelianization, arvola_presentation, braid_presentation, braid_presentation_full, conjugator_identity_holds, hom_count,
    meridians, randell_presentation, tietze_simplify, vertex_identity_holds, Presentation, DEFAULT_HOM_BUDGET,
};
use braidmon::wiring::random_diagram;
use proptest::prelude::*;

/// All permutations of `0..k`, as image vectors.
fn perms(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(k - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, k - 1);
            out.push(q);
        }
    }
    out
}

/// Brute-force count of assignments of generators to `Sym(k)` killing every relator.
fn brute_hom_count(p: &Presentation, k: usize) -> u64 {
    let all = perms(k);
    let inv: Vec<Vec<usize>> = all
        .iter()
        .map(|q| {
            let mut r = vec![0; k];
            for (i, &x) in q.iter().enumerate() {
                r[x] = i;
            }
            r
        })
        .collect();
    let n = p.generators();
    let mut count = 0;
    let mut idx = vec![0usize; n];
    loop {
        let ok = p.relators().iter().all(|w| {
            let mut cur: Vec<usize> = (0..k).collect();
            for &l in w.letters() {
                let g = idx[l.unsigned_abs() as usize - 1];
                let q = if l > 0 { &all[g] } else { &inv[g] };
                cur = cur.iter().map(|&x| q[x]).collect();
            }
            cur.iter().enumerate().all(|(i, &x)| i == x)
        });
        count += ok as u64;
        let mut pos = 0;
        loop {
            if pos == n {
                return count;
            }
            idx[pos] += 1;
            if idx[pos] < all.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn s3(p: &Presentation) -> u64 {
    hom_count(p, 3, DEFAULT_HOM_BUDGET).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hom_count_matches_brute_force(seed in any::<u64>(), n in 2usize..6, s in 1usize..6, braid in 0usize..3) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        let p = arvola_presentation(&d);
        prop_assert_eq!(s3(&p), brute_hom_count(&p, 3));
    }

    #[test]
    fn unbraided_presentations_agree(seed in any::<u64>(), n in 2usize..8, s in 1usize..=10) {
        let d = random_diagram(n, s, 0, &mut common::rng(seed));
        let (b, a) = (braid_presentation(&monodromy(&d)), arvola_presentation(&d));
        let r = randell_presentation(&d).unwrap();
        prop_assert_eq!(b.generators(), a.generators());
        prop_assert_eq!(abelianization(&b), abelianization(&a));
        prop_assert_eq!(s3(&b), s3(&a));
        prop_assert_eq!(a.cyclic_relator_multiset(), r.cyclic_relator_multiset());
    }

    #[test]
    fn full_braid_presentation_matches_arvola(seed in any::<u64>(), n in 2usize..7, s in 1usize..8, braid in 1usize..4) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        let (b, a) = (braid_presentation_full(&monodromy(&d)), arvola_presentation(&d));
        prop_assert_eq!(abelianization(&b), abelianization(&a));
        prop_assert_eq!(s3(&b), s3(&a));
    }

    #[test]
    fn first_homology_is_free_on_the_lines(seed in any::<u64>(), n in 2usize..8, s in 1usize..10, braid in 0usize..4) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        let ab = abelianization(&arvola_presentation(&d));
        prop_assert_eq!(ab.rank, n);
        prop_assert!(ab.torsion.is_empty());
    }

    #[test]
    fn meridian_identities(seed in any::<u64>(), n in 2usize..8, s in 1usize..10, braid in 0usize..4) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        let t = meridians(&d);
        prop_assert!(conjugator_identity_holds(&d, &t));
        prop_assert!(vertex_identity_holds(&d, &t));
    }

    #[test]
    fn simplification_keeps_invariants(seed in any::<u64>(), n in 2usize..6, s in 1usize..6, braid in 0usize..3) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        let p = arvola_presentation(&d);
        for eliminate in [false, true] {
            let q = tietze_simplify(&p, eliminate);
            prop_assert_eq!(abelianization(&q), abelianization(&p));
            prop_assert_eq!(s3(&q), s3(&p));
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 2usize..7, s in 1usize..8, braid in 0usize..3) {
        let p = arvola_presentation(&random_diagram(n, s, braid, &mut common::rng(seed)));
        prop_assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }
}
