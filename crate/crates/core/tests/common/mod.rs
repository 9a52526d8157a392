//! Shared helpers for the integration tests: an independent word-problem
//! oracle and seeded generators for structured inputs.
#![allow(dead_code)]

use braidmon::BraidWord;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Free reduction of a signed-letter word.
pub fn reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|l| -l).collect()
}

/// Substitutes `images[t-1]` for each letter `t` (and its inverse for `-t`).
pub fn substitute(w: &[i32], images: &[Vec<i32>]) -> Vec<i32> {
    let mut out = Vec::new();
    for &l in w {
        let img = &images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(invert(img));
        }
        out = reduce(&out);
    }
    out
}

/// Images of `t_1..t_n` under a single letter `σ_i^{±1}`:
/// `σ_i: t_i ↦ t_i t_{i+1} t_i⁻¹, t_{i+1} ↦ t_i`.
fn letter_images(n: usize, l: i32) -> Vec<Vec<i32>> {
    let i = l.unsigned_abs() as i32;
    let mut imgs: Vec<Vec<i32>> = (1..=n as i32).map(|t| vec![t]).collect();
    if l > 0 {
        imgs[i as usize - 1] = vec![i, i + 1, -i];
        imgs[i as usize] = vec![i];
    } else {
        imgs[i as usize - 1] = vec![i + 1];
        imgs[i as usize] = vec![-(i + 1), i, i + 1];
    }
    imgs
}

/// Acts on `w` one letter at a time, left to right.
pub fn act(n: usize, letters: &[i32], w: &[i32]) -> Vec<i32> {
    letters.iter().fold(reduce(w), |acc, &l| substitute(&acc, &letter_images(n, l)))
}

/// Images of every generator under a braid word.
pub fn images(n: usize, letters: &[i32]) -> Vec<Vec<i32>> {
    (1..=n as i32).map(|t| act(n, letters, &[t])).collect()
}

/// Artin's representation is faithful, so equal images decide equality.
pub fn oracle_equal(a: &BraidWord, b: &BraidWord) -> bool {
    assert_eq!(a.strands(), b.strands());
    images(a.strands(), a.letters()) == images(b.strands(), b.letters())
}

pub fn random_letters(n: usize, len: usize, rng: &mut impl Rng) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) { i } else { -i }
        })
        .collect()
}

pub fn random_braid(n: usize, max_len: usize, rng: &mut impl Rng) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    BraidWord::new(n, random_letters(n, len, rng)).unwrap()
}

pub fn braid(n: usize, letters: &[i32]) -> BraidWord {
    BraidWord::new(n, letters.to_vec()).unwrap()
}

/// A random subset of `lo..=hi` of the given size, sorted.
pub fn random_subset(lo: usize, hi: usize, size: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut pool: Vec<usize> = (lo..=hi).collect();
    let mut out = Vec::with_capacity(size);
    for _ in 0..size {
        out.push(pool.swap_remove(rng.gen_range(0..pool.len())));
    }
    out.sort_unstable();
    out
}
