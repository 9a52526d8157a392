mod common;

use braidmon::fixtures::FixtureId;
use braidmon::lattice::{lattice_invariants, lattice_isomorphic, lattice_of, VertexMap};
use braidmon::markov::{applicable_moves, apply_move};
use braidmon::monodromy::monodromy;
use braidmon::perm::Perm;
use braidmon::wiring::random_diagram;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// `V'[π(k)] = ρ(V[k])` for every k.
fn is_witness(v: &VertexMap, w: &VertexMap, pi: &Perm, rho: &Perm) -> bool {
    v.sets().iter().enumerate().all(|(k, s)| {
        let mut img: Vec<usize> = s.iter().map(|&l| rho.apply(l)).collect();
        img.sort_unstable();
        w.sets()[pi.apply(k + 1) - 1] == img
    })
}

fn relabel(v: &VertexMap, r: &mut impl Rng) -> VertexMap {
    let mut lines: Vec<usize> = (1..=v.n()).collect();
    lines.shuffle(r);
    let mut sets: Vec<Vec<usize>> = v
        .sets()
        .iter()
        .map(|s| {
            let mut t: Vec<usize> = s.iter().map(|&l| lines[l - 1]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    sets.shuffle(r);
    VertexMap::new(v.n(), sets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn relabelling_is_detected(seed in any::<u64>(), n in 2usize..9, s in 1usize..12, braid in 0usize..3) {
        let mut r = common::rng(seed);
        let v = lattice_of(&random_diagram(n, s, braid, &mut r));
        let w = relabel(&v, &mut r);
        prop_assert_eq!(lattice_invariants(&v), lattice_invariants(&w));
        let (pi, rho) = lattice_isomorphic(&v, &w).expect("relabelled lattice");
        prop_assert!(is_witness(&v, &w, &pi, &rho));
        let (pi2, rho2) = lattice_isomorphic(&w, &v).expect("symmetric");
        prop_assert!(is_witness(&w, &v, &pi2, &rho2));
        prop_assert!(is_witness(&w, &v, &pi.inverse(), &rho.inverse()));
    }

    #[test]
    fn diagram_and_monodromy_lattices_agree(seed in any::<u64>(), n in 2usize..8, s in 1usize..10, braid in 0usize..3) {
        let d = random_diagram(n, s, braid, &mut common::rng(seed));
        prop_assert_eq!(lattice_of(&d), lattice_of(&monodromy(&d)));
    }

    #[test]
    fn markov_chains_keep_the_lattice(seed in any::<u64>(), n in 3usize..7, s in 2usize..8, steps in 1usize..8) {
        let mut r = common::rng(seed);
        let start = random_diagram(n, s, 1, &mut r);
        let mut d = start.clone();
        for _ in 0..steps {
            let moves = applicable_moves(&d);
            let Some(m) = moves.choose(&mut r) else { break };
            d = apply_move(&d, m).unwrap();
        }
        let (v, w) = (lattice_of(&monodromy(&start)), lattice_of(&monodromy(&d)));
        let (pi, rho) = lattice_isomorphic(&v, &w).expect("equivalent diagrams share a lattice");
        prop_assert!(is_witness(&v, &w, &pi, &rho));
    }
}

#[test]
fn fs_pair_shares_a_lattice() {
    let v = lattice_of(&FixtureId::FsPlus.diagram().unwrap());
    let w = lattice_of(&FixtureId::FsMinus.diagram().unwrap());
    let (pi, rho) = lattice_isomorphic(&v, &w).unwrap();
    assert!(is_witness(&v, &w, &pi, &rho));
}

#[test]
fn maclane_pair_shares_a_lattice() {
    let v = lattice_of(&FixtureId::MaclanePlus.diagram().unwrap());
    let w = lattice_of(&FixtureId::MaclaneMinus.diagram().unwrap());
    assert!(lattice_isomorphic(&v, &w).is_some());
}

#[test]
fn falk_pair_lattices_differ() {
    let v = lattice_of(&FixtureId::FalkA.diagram().unwrap());
    let w = lattice_of(&FixtureId::FalkA2.diagram().unwrap());
    assert!(lattice_isomorphic(&v, &w).is_none());
    assert_ne!(lattice_invariants(&v), lattice_invariants(&w));
}
