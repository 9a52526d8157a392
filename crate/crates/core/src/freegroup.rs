//! Reduced words in a free group of finite rank and endomorphisms given by
//! generator images.
//!
//! A letter is a nonzero `i32`: `g` stands for the `g`-th generator and `-g`
//! for its inverse. Words are always kept freely reduced, so two words are
//! equal in the group iff their letter sequences are equal.
//!
//! Products follow the convention `x^y = y⁻¹xy`, `[x,y] = xyx⁻¹y⁻¹`, and
//! endomorphisms compose as right actions: `a.then(b)` applies `a` first.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("endomorphism has {got} images, expected {rank}")]
    ImageCount { rank: usize, got: usize },
    #[error("zero is not a letter")]
    ZeroLetter,
}

/// Appends `letters` to `out`, cancelling against the tail of `out`.
pub(crate) fn push_reduced(out: &mut Vec<i32>, letters: impl IntoIterator<Item = i32>) {
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

pub(crate) fn invert_letters(letters: &[i32]) -> impl Iterator<Item = i32> + '_ {
    letters.iter().rev().map(|l| -l)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    /// Reduces a raw letter sequence, checking indices.
    pub fn new(rank: usize, letters: impl IntoIterator<Item = i32>) -> Result<Self, FreeGroupError> {
        let mut out = Vec::new();
        for l in letters {
            if l == 0 {
                return Err(FreeGroupError::ZeroLetter);
            }
            let index = l.unsigned_abs() as usize;
            if index > rank {
                return Err(FreeGroupError::IndexOutOfRange { index, rank });
            }
            push_reduced(&mut out, [l]);
        }
        Ok(FreeWord { rank, letters: out })
    }

    /// Builds from letters already known to be in range and reduced.
    pub(crate) fn from_reduced(rank: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        FreeWord { rank, letters }
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    /// The generator `t_index` (1-based).
    pub fn generator(rank: usize, index: usize) -> Result<Self, FreeGroupError> {
        FreeWord::new(rank, [index as i32])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Self) -> Result<(), FreeGroupError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(FreeGroupError::RankMismatch(self.rank, other.rank))
        }
    }

    pub fn inverse(&self) -> Self {
        FreeWord { rank: self.rank, letters: invert_letters(&self.letters).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FreeGroupError> {
        self.check_rank(other)?;
        let mut out = self.letters.clone();
        push_reduced(&mut out, other.letters.iter().copied());
        Ok(FreeWord { rank: self.rank, letters: out })
    }

    /// `y⁻¹ x y` with `x = self`.
    pub fn conjugate_by(&self, y: &Self) -> Result<Self, FreeGroupError> {
        y.inverse().mul(self)?.mul(y)
    }

    /// `[x, y] = x y x⁻¹ y⁻¹` with `x = self`.
    pub fn commutator(&self, y: &Self) -> Result<Self, FreeGroupError> {
        self.mul(y)?.mul(&self.inverse())?.mul(&y.inverse())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..e.unsigned_abs() {
            push_reduced(&mut out, base.letters.iter().copied());
        }
        FreeWord { rank: self.rank, letters: out }
    }

    /// Cyclic reduction: strips matching first/last letter pairs.
    pub fn cyclically_reduced(&self) -> Self {
        let l = &self.letters;
        let (mut a, mut b) = (0usize, l.len());
        while b >= a + 2 && l[a] == -l[b - 1] {
            a += 1;
            b -= 1;
        }
        FreeWord { rank: self.rank, letters: l[a..b].to_vec() }
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    /// Same letters viewed in a larger (or equal) rank.
    pub fn with_rank(&self, rank: usize) -> Result<Self, FreeGroupError> {
        FreeWord::new(rank, self.letters.iter().copied())
    }

    /// Writes the word with generator prefix `prefix`, `1` for the identity.
    pub fn to_string_with(&self, prefix: &str) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("{prefix}{l}")
                } else {
                    format!("{prefix}{}^-1", -l)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("t"))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// An endomorphism of `F_n` given by the images of the generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeEndo {
    rank: usize,
    images: Vec<Vec<i32>>,
}

impl FreeEndo {
    pub fn new(images: Vec<FreeWord>) -> Result<Self, FreeGroupError> {
        let rank = images.len();
        for w in &images {
            if w.rank != rank {
                return Err(FreeGroupError::RankMismatch(rank, w.rank));
            }
        }
        Ok(FreeEndo { rank, images: images.into_iter().map(|w| w.letters).collect() })
    }

    pub(crate) fn from_raw(rank: usize, images: Vec<Vec<i32>>) -> Self {
        debug_assert_eq!(images.len(), rank);
        FreeEndo { rank, images }
    }

    pub fn identity(rank: usize) -> Self {
        FreeEndo { rank, images: (1..=rank as i32).map(|g| vec![g]).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Image of the generator `index` (1-based).
    pub fn image(&self, index: usize) -> FreeWord {
        FreeWord::from_reduced(self.rank, self.images[index - 1].clone())
    }

    pub fn images(&self) -> Vec<FreeWord> {
        (1..=self.rank).map(|i| self.image(i)).collect()
    }

    pub(crate) fn apply_raw(&self, letters: &[i32]) -> Vec<i32> {
        let mut out = Vec::new();
        for &l in letters {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                push_reduced(&mut out, img.iter().copied());
            } else {
                push_reduced(&mut out, invert_letters(img));
            }
        }
        out
    }

    /// Substitutes each letter of `w` by its image and reduces.
    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord, FreeGroupError> {
        if w.rank != self.rank {
            return Err(FreeGroupError::RankMismatch(self.rank, w.rank));
        }
        Ok(FreeWord::from_reduced(self.rank, self.apply_raw(&w.letters)))
    }

    /// The product `self · other`: apply `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Result<Self, FreeGroupError> {
        if self.rank != other.rank {
            return Err(FreeGroupError::RankMismatch(self.rank, other.rank));
        }
        Ok(FreeEndo {
            rank: self.rank,
            images: self.images.iter().map(|img| other.apply_raw(img)).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, img)| img.len() == 1 && img[0] == i as i32 + 1)
    }

    /// `δ_s(x_k) = (x_1⋯x_{k-1}) · x_k⁻¹ · (x_1⋯x_{k-1})⁻¹`.
    pub fn delta(rank: usize) -> Self {
        let images = (1..=rank as i32)
            .map(|k| {
                let prefix: Vec<i32> = (1..k).collect();
                let mut w = prefix.clone();
                push_reduced(&mut w, [-k]);
                push_reduced(&mut w, invert_letters(&prefix));
                w
            })
            .collect();
        FreeEndo { rank, images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, l: &[i32]) -> FreeWord {
        FreeWord::new(rank, l.iter().copied()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w(2, &[1, 2, -2]).letters(), &[1]);
        assert!(w(2, &[]).is_identity());
        assert_eq!(w(2, &[-1, 1, 1]).letters(), &[1]);
        assert_eq!(
            FreeWord::new(2, [3]),
            Err(FreeGroupError::IndexOutOfRange { index: 3, rank: 2 })
        );
    }

    #[test]
    fn word_ops() {
        let t1 = w(2, &[1]);
        let t2 = w(2, &[2]);
        assert!(t1.mul(&t1.inverse()).unwrap().is_identity());
        assert_eq!(t1.conjugate_by(&t2).unwrap().letters(), &[-2, 1, 2]);
        assert_eq!(t1.commutator(&t2).unwrap().letters(), &[1, 2, -1, -2]);
        assert_eq!(t1.mul(&w(3, &[1])), Err(FreeGroupError::RankMismatch(2, 3)));
    }

    #[test]
    fn endo_examples() {
        // t1 -> t1 t2 t1^-1, t2 -> t1
        let e = FreeEndo::new(vec![w(2, &[1, 2, -1]), w(2, &[1])]).unwrap();
        assert_eq!(e.apply(&w(2, &[2])).unwrap().letters(), &[1]);
        assert_eq!(e.apply(&w(2, &[1, 2])).unwrap().letters(), &[1, 2]);
        let id = FreeEndo::identity(2);
        assert_eq!(id.then(&e).unwrap(), e);
        assert_eq!(id.apply(&w(2, &[2, -1])).unwrap(), w(2, &[2, -1]));
        // applying twice to t1: t1 t2 t1^-1 -> (t1 t2 t1^-1)(t1)(t1 t2^-1 t1^-1)
        let ee = e.then(&e).unwrap();
        assert_eq!(ee.apply(&w(2, &[1])).unwrap().letters(), &[1, 2, 1, -2, -1]);
    }

    #[test]
    fn involution_composes_to_identity() {
        let swap = FreeEndo::new(vec![w(2, &[2]), w(2, &[1])]).unwrap();
        assert!(swap.then(&swap).unwrap().is_identity());
    }

    #[test]
    fn delta_examples() {
        let d1 = FreeEndo::delta(1);
        assert_eq!(d1.image(1).letters(), &[-1]);
        let d2 = FreeEndo::delta(2);
        assert_eq!(d2.image(2).letters(), &[1, -2, -1]);
        // δ sends x_1⋯x_j to its inverse, so it is an involution
        for s in 1..=5 {
            let d = FreeEndo::delta(s);
            assert!(d.then(&d).unwrap().is_identity());
        }
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w(3, &[2, 1, 3, -2]).cyclically_reduced().letters(), &[1, 3]);
        assert!(w(3, &[1, -1]).cyclically_reduced().is_identity());
    }
}
