mod common;

use braidmon::wiring::{random_diagram, Diagram};
use proptest::prelude::*;

/// Vertex wire sets by moving labelled wires through the picture. Braid
/// words are traversed right to left: their left end meets the next vertex.
fn simulated_sets(d: &Diagram) -> Vec<Vec<usize>> {
    let n = d.n();
    let mut at: Vec<usize> = (0..=n).collect();
    let cross = |at: &mut Vec<usize>, letters: &[i32]| {
        for &l in letters.iter().rev() {
            let i = l.unsigned_abs() as usize;
            at.swap(i, i + 1);
        }
    };
    cross(&mut at, d.initial().letters());
    let mut out = Vec::new();
    for (v, b) in d.vertices().iter().zip(d.braids()) {
        let mut set: Vec<usize> = v.heights().map(|h| at[h]).collect();
        set.sort_unstable();
        out.push(set);
        at[v.low..=v.high()].reverse();
        cross(&mut at, b.letters());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vertex_sets_follow_the_wires(seed in any::<u64>(), n in 2usize..8, s in 1usize..10, braid in 0usize..4) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        prop_assert_eq!(d.vertex_sets(), simulated_sets(&d));
        for k in 1..=d.s() {
            prop_assert_eq!(d.vertex_set(k).unwrap(), d.vertex_sets()[k - 1].clone());
        }
    }

    #[test]
    fn states_agree_with_validation(seed in any::<u64>(), n in 2usize..8, s in 1usize..10, braid in 0usize..4) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        prop_assert_eq!(d.validate().unwrap(), d.states());
        prop_assert_eq!(d.states().len(), d.s() + 1);
    }

    #[test]
    fn conjugation_keeps_vertex_sets(seed in any::<u64>(), n in 2usize..8, s in 1usize..10, braid in 0usize..4) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        let c = d.conjugate();
        let (mut a, mut b) = (d.vertex_sets(), c.vertex_sets());
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(c.conjugate(), d);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 2usize..8, s in 1usize..10, braid in 0usize..4) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        prop_assert_eq!(Diagram::parse(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn random_diagrams_are_pseudoline_arrangements(seed in any::<u64>(), n in 2usize..8, s in 1usize..10, braid in 0usize..4) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        let sets = d.vertex_sets();
        for (a, x) in sets.iter().enumerate() {
            for y in &sets[a + 1..] {
                prop_assert!(x.iter().filter(|w| y.contains(w)).count() <= 1);
            }
        }
    }
}

#[test]
fn malformed_diagrams_are_rejected() {
    assert!(Diagram::parse("n=3\nv 3 2\n").is_err());
    assert!(Diagram::parse("n=3\nv 1 1\n").is_err());
    assert!(Diagram::parse("v 1 2\n").is_err());
}
