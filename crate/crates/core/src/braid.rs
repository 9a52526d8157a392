//! Braid words, the Artin action on free groups, and pure braid machinery.
//!
//! Words act on `F_n = ⟨t_1..t_n⟩` from the right: the word `b = l_1 l_2 ⋯ l_m`
//! sends `t` to `l_m(⋯ l_1(t))`, where
//! `σ_i: t_i ↦ t_i t_{i+1} t_i⁻¹, t_{i+1} ↦ t_i`. Since this representation is
//! faithful, two braids are equal iff they induce the same automorphism; that
//! is the equality test used throughout the crate.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::freegroup::{invert_letters, push_reduced, FreeEndo, FreeGroupError, FreeWord};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("generator s{index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("bad pure generator indices ({i},{j}) for {n} strands")]
    BadPair { i: usize, j: usize, n: usize },
    #[error("index set {0:?} needs at least two elements")]
    SetTooSmall(Vec<usize>),
    #[error("index set {set:?} out of range for {n} strands")]
    SetOutOfRange { set: Vec<usize>, n: usize },
    #[error("index set {0:?} is not a contiguous range")]
    NotContiguous(Vec<usize>),
    #[error("J-set {j:?} meets vertex set {v:?}")]
    JMeetsV { v: Vec<usize>, j: Vec<usize> },
    #[error("J-set {j:?} is not inside the hull of {v:?}")]
    JOutsideHull { v: Vec<usize>, j: Vec<usize> },
    #[error("full twist needs at least 2 strands")]
    TooFewStrands,
    #[error(transparent)]
    Free(#[from] FreeGroupError),
}

/// A word in the Artin generators `σ_1..σ_{n-1}` and their inverses.
///
/// Letters are nonzero `i32`s: `i` is `σ_i`, `-i` is `σ_i⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: impl IntoIterator<Item = i32>) -> Result<Self, BraidError> {
        let letters: Vec<i32> = letters.into_iter().collect();
        for &l in &letters {
            let index = l.unsigned_abs() as usize;
            if l == 0 || index >= strands {
                return Err(BraidError::GeneratorOutOfRange { index, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub(crate) fn from_raw(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < strands));
        BraidWord { strands, letters }
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// `σ_i^{sign}`.
    pub fn sigma(strands: usize, i: usize, inverse: bool) -> Result<Self, BraidError> {
        let l = if inverse { -(i as i32) } else { i as i32 };
        BraidWord::new(strands, [l])
    }

    pub fn strands(&self) -> usize {
        self.strands
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

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: invert_letters(&self.letters).collect() }
    }

    /// Concatenation `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub(crate) fn append(&mut self, other: &BraidWord) {
        debug_assert_eq!(self.strands, other.strands);
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// `y⁻¹ · self · y`.
    pub fn conjugate_by(&self, y: &Self) -> Result<Self, BraidError> {
        y.inverse().mul(self)?.mul(y)
    }

    /// The involution `σ_i ↦ σ_i⁻¹`, letter by letter.
    pub fn epsilon(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` pairs.
    pub fn free_reduced(&self) -> Self {
        let mut out = Vec::new();
        push_reduced(&mut out, self.letters.iter().copied());
        BraidWord { strands: self.strands, letters: out }
    }

    /// Underlying permutation, tracking positions through the letters from
    /// left to right.
    pub fn perm(&self) -> Perm {
        let mut p = Perm::identity(self.strands);
        for &l in &self.letters {
            p.swap_values(l.unsigned_abs() as usize);
        }
        p
    }

    pub fn is_pure(&self) -> bool {
        self.perm().is_identity()
    }

    /// The automorphism of `F_n` induced by the Artin action.
    pub fn automorphism(&self) -> FreeEndo {
        let n = self.strands;
        let mut img: Vec<Vec<i32>> = (1..=n as i32).map(|g| vec![g]).collect();
        // prepend letters one at a time: (l·φ)(t) = φ(l(t))
        for &l in self.letters.iter().rev() {
            let i = l.unsigned_abs() as usize - 1;
            let (a, b) = (img[i].clone(), img[i + 1].clone());
            if l > 0 {
                let mut new_a = a.clone();
                push_reduced(&mut new_a, b.iter().copied());
                push_reduced(&mut new_a, invert_letters(&a));
                img[i] = new_a;
                img[i + 1] = a;
            } else {
                let mut new_b: Vec<i32> = invert_letters(&b).collect();
                push_reduced(&mut new_b, a.iter().copied());
                push_reduced(&mut new_b, b.iter().copied());
                img[i] = b;
                img[i + 1] = new_b;
            }
        }
        FreeEndo::from_raw(n, img)
    }

    /// Artin action on a word of `F_n`.
    pub fn act(&self, w: &FreeWord) -> Result<FreeWord, BraidError> {
        if w.rank() != self.strands {
            return Err(BraidError::StrandMismatch(self.strands, w.rank()));
        }
        Ok(self.automorphism().apply(w)?)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{}]", self.strands, self)
    }
}

/// Artin action of `b` on `w`.
pub fn artin_act(b: &BraidWord, w: &FreeWord) -> Result<FreeWord, BraidError> {
    b.act(w)
}

/// Word-problem oracle: compares the induced automorphisms.
pub fn braids_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    if a.strands != b.strands {
        return Err(BraidError::StrandMismatch(a.strands, b.strands));
    }
    Ok(a.automorphism() == b.automorphism())
}

/// `A_{i,j} = σ_{j-1}⋯σ_{i+1} σ_i² σ_{i+1}⁻¹⋯σ_{j-1}⁻¹`.
pub fn pure_gen(i: usize, j: usize, n: usize) -> Result<BraidWord, BraidError> {
    if !(1 <= i && i < j && j <= n) {
        return Err(BraidError::BadPair { i, j, n });
    }
    let mut letters: Vec<i32> = ((i + 1)..j).rev().map(|k| k as i32).collect();
    letters.push(i as i32);
    letters.push(i as i32);
    letters.extend(((i + 1)..j).map(|k| -(k as i32)));
    Ok(BraidWord::from_raw(n, letters))
}

/// `Δ² = (σ_1⋯σ_{n-1})ⁿ`.
pub fn delta_sq(n: usize) -> Result<BraidWord, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands);
    }
    let row: Vec<i32> = (1..n as i32).collect();
    Ok(BraidWord::from_raw(n, row.repeat(n)))
}

fn check_contiguous(set: &[usize], n: usize) -> Result<(usize, usize), BraidError> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() < 2 {
        return Err(BraidError::SetTooSmall(set.to_vec()));
    }
    if s[0] == 0 || *s.last().unwrap() > n {
        return Err(BraidError::SetOutOfRange { set: set.to_vec(), n });
    }
    if s.len() != set.len() || s.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(BraidError::NotContiguous(set.to_vec()));
    }
    Ok((s[0], s.len()))
}

/// Half twist `μ_I` on the contiguous block `{low..low+size-1}`:
/// `(σ_j⋯σ_{j+r-2})(σ_j⋯σ_{j+r-3})⋯(σ_j)`.
pub fn half_twist_range(low: usize, size: usize, n: usize) -> Result<BraidWord, BraidError> {
    if size < 2 {
        return Err(BraidError::SetTooSmall((low..low + size).collect()));
    }
    if low == 0 || low + size - 1 > n {
        return Err(BraidError::SetOutOfRange { set: (low..low + size).collect(), n });
    }
    let mut letters = Vec::with_capacity(size * (size - 1) / 2);
    for top in (low..low + size - 1).rev() {
        letters.extend((low..=top).map(|k| k as i32));
    }
    Ok(BraidWord::from_raw(n, letters))
}

/// Half twist on an explicit height set, which must be contiguous.
pub fn half_twist(set: &[usize], n: usize) -> Result<BraidWord, BraidError> {
    let (low, size) = check_contiguous(set, n)?;
    half_twist_range(low, size, n)
}

fn sorted_set(set: &[usize], n: usize) -> Result<Vec<usize>, BraidError> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.iter().any(|&i| i == 0 || i > n) {
        return Err(BraidError::SetOutOfRange { set: set.to_vec(), n });
    }
    Ok(s)
}

/// One factor `A_{i,j}^{±1}` of a pure braid word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PureFactor {
    pub i: usize,
    pub j: usize,
    pub inverse: bool,
}

impl PureFactor {
    pub fn new(i: usize, j: usize) -> Self {
        PureFactor { i, j, inverse: false }
    }

    pub fn inv(self) -> Self {
        PureFactor { inverse: !self.inverse, ..self }
    }
}

/// A word in the pure braid generators `A_{i,j}^{±1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PureBraidWord {
    strands: usize,
    factors: Vec<PureFactor>,
}

impl PureBraidWord {
    pub fn new(strands: usize, factors: Vec<PureFactor>) -> Result<Self, BraidError> {
        for f in &factors {
            if !(1 <= f.i && f.i < f.j && f.j <= strands) {
                return Err(BraidError::BadPair { i: f.i, j: f.j, n: strands });
            }
        }
        Ok(PureBraidWord { strands, factors })
    }

    pub fn identity(strands: usize) -> Self {
        PureBraidWord { strands, factors: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[PureFactor] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn inverse(&self) -> Self {
        PureBraidWord {
            strands: self.strands,
            factors: self.factors.iter().rev().map(|f| f.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.push_reduced(other.factors.iter().copied());
        out
    }

    fn push_reduced(&mut self, fs: impl IntoIterator<Item = PureFactor>) {
        for f in fs {
            if self.factors.last() == Some(&f.inv()) {
                self.factors.pop();
            } else {
                self.factors.push(f);
            }
        }
    }

    /// Cancels adjacent inverse factors.
    pub fn reduced(&self) -> Self {
        let mut out = PureBraidWord::identity(self.strands);
        out.push_reduced(self.factors.iter().copied());
        out
    }

    /// Expansion into Artin generators.
    pub fn expand(&self) -> BraidWord {
        let mut out = BraidWord::identity(self.strands);
        for f in &self.factors {
            let g = pure_gen(f.i, f.j, self.strands).expect("validated factor");
            out.append(&if f.inverse { g.inverse() } else { g });
        }
        out
    }
}

impl fmt::Display for PureBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|p| {
                if p.inverse {
                    format!("A[{},{}]^-1", p.i, p.j)
                } else {
                    format!("A[{},{}]", p.i, p.j)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Twist braid `A_I = (A_{i1,i2})(A_{i1,i3} A_{i2,i3})⋯(A_{i1,ir}⋯A_{i_{r-1},ir})`.
/// Unordered input is sorted first.
pub fn twist(set: &[usize], n: usize) -> Result<PureBraidWord, BraidError> {
    let s = sorted_set(set, n)?;
    if s.len() < 2 {
        return Err(BraidError::SetTooSmall(set.to_vec()));
    }
    let mut factors = Vec::new();
    for c in 1..s.len() {
        for a in 0..c {
            factors.push(PureFactor::new(s[a], s[c]));
        }
    }
    Ok(PureBraidWord { strands: n, factors })
}

/// Conjugation of a single pure generator by `σ_k^{±1}`.
///
/// Returns the new index pair and an optional conjugator `Y`, meaning
/// `A_{i,j}^{σ_k^{±1}} = A_{i',j'}^{Y}`.
pub fn conjugate_pure_gen(i: usize, j: usize, k: usize, inverse: bool) -> ((usize, usize), Option<PureFactor>) {
    if !inverse {
        if k + 1 == i {
            ((i - 1, j), None)
        } else if k == i && i + 1 < j {
            ((i + 1, j), Some(PureFactor::new(i, i + 1)))
        } else if k + 1 == j && k > i {
            ((i, j - 1), None)
        } else if k == j {
            ((i, j + 1), Some(PureFactor::new(j, j + 1)))
        } else {
            ((i, j), None)
        }
    } else if k + 1 == i {
        ((i - 1, j), Some(PureFactor::new(i - 1, i).inv()))
    } else if k == i && i + 1 < j {
        ((i + 1, j), None)
    } else if k + 1 == j && k > i {
        ((i, j - 1), Some(PureFactor::new(j - 1, j).inv()))
    } else if k == j {
        ((i, j + 1), None)
    } else {
        ((i, j), None)
    }
}

/// Rewrites `C^{σ_k^{±1}}` factor by factor.
fn conjugate_pure_word(c: &PureBraidWord, k: usize, inverse: bool) -> PureBraidWord {
    let mut out = PureBraidWord::identity(c.strands);
    for f in &c.factors {
        let ((i, j), y) = conjugate_pure_gen(f.i, f.j, k, inverse);
        let x = PureFactor { i, j, inverse: f.inverse };
        match y {
            None => out.push_reduced([x]),
            Some(y) => out.push_reduced([y.inv(), x, y]),
        }
    }
    out
}

/// `A_I^b = A_{ω(I)}^C` with `ω = perm(b)`; returns `(ω(I), C)`.
///
/// `b` is consumed one letter at a time. For a letter `σ_k^{±1}` with exactly
/// one of `k, k+1` in the current set the twist picks up the conjugator
/// `A_{k,k+1}^{±1}` (or nothing, depending on sign and side); the running
/// conjugator is rewritten with the single-generator rules.
pub fn conj_set(set: &[usize], b: &BraidWord) -> Result<(Vec<usize>, PureBraidWord), BraidError> {
    let n = b.strands();
    let mut cur: BTreeSet<usize> = sorted_set(set, n)?.into_iter().collect();
    let mut c = PureBraidWord::identity(n);
    for &l in b.letters() {
        let k = l.unsigned_abs() as usize;
        let inverse = l < 0;
        let (lo, hi) = (cur.contains(&k), cur.contains(&(k + 1)));
        let d = match (lo, hi, inverse) {
            (true, false, false) => Some(PureFactor::new(k, k + 1)),
            (false, true, true) => Some(PureFactor::new(k, k + 1).inv()),
            _ => None,
        };
        if lo != hi {
            if lo {
                cur.remove(&k);
                cur.insert(k + 1);
            } else {
                cur.remove(&(k + 1));
                cur.insert(k);
            }
        }
        let conj = conjugate_pure_word(&c, k, inverse);
        let mut next = PureBraidWord::identity(n);
        next.push_reduced(d);
        next.push_reduced(conj.factors);
        c = next;
    }
    Ok((cur.into_iter().collect(), c))
}

/// `B_J = ∏ A_{j,i}` over `j ∈ J`, `i ∈ V`, `j < i`, ordered as a subword of
/// `A_{1..n}` (by `i`, then `j`).
pub fn b_j(v: &[usize], j: &[usize], n: usize) -> Result<PureBraidWord, BraidError> {
    let v = sorted_set(v, n)?;
    let js = sorted_set(j, n)?;
    let mut factors = Vec::new();
    for &i in &v {
        for &jj in &js {
            if jj < i {
                factors.push(PureFactor::new(jj, i));
            }
        }
    }
    Ok(PureBraidWord { strands: n, factors })
}

/// `A_V^J = B_J⁻¹ A_V B_J` as a braid word.
pub fn twist_with_j(v: &[usize], j: &[usize], n: usize) -> Result<BraidWord, BraidError> {
    let bj = b_j(v, j, n)?;
    Ok(bj.inverse().mul(&twist(v, n)?).mul(&bj).expand())
}

fn t_of(set: &[usize]) -> Vec<i32> {
    set.iter().map(|&i| i as i32).collect()
}

fn conj_letters(x: &[i32], by: &[i32]) -> Vec<i32> {
    // by · x · by⁻¹
    let mut out = by.to_vec();
    push_reduced(&mut out, x.iter().copied());
    push_reduced(&mut out, invert_letters(by));
    out
}

/// Closed form of `A_V^J(t_i)`.
///
/// With `J = ∅` this is the three-case formula for plain twists; otherwise
/// the `J = ∅` image is twisted by `γ_J` and conjugated by `z_{J,i}`.
pub fn twist_action(v: &[usize], j: &[usize], i: usize, n: usize) -> Result<FreeWord, BraidError> {
    let v = sorted_set(v, n)?;
    let js = sorted_set(j, n)?;
    if v.len() < 2 {
        return Err(BraidError::SetTooSmall(v));
    }
    if i == 0 || i > n {
        return Err(BraidError::SetOutOfRange { set: vec![i], n });
    }
    if js.iter().any(|x| v.contains(x)) {
        return Err(BraidError::JMeetsV { v, j: js });
    }
    let (vmin, vmax) = (v[0], *v.last().unwrap());
    if js.iter().any(|&x| x < vmin || x > vmax) {
        return Err(BraidError::JOutsideHull { v, j: js });
    }
    let in_hull = vmin <= i && i <= vmax;
    if js.contains(&i) || !in_hull {
        return Ok(FreeWord::generator(n, i)?);
    }
    let gamma = RandellConjugator::new(&v, &js, n);
    let tv = t_of(&v);
    let inner = if v.contains(&i) {
        conj_letters(&[i as i32], &tv)
    } else {
        let below: Vec<usize> = v.iter().copied().filter(|&x| x < i).collect();
        let above: Vec<usize> = v.iter().copied().filter(|&x| x > i).collect();
        let (a, b) = (t_of(&below), t_of(&above));
        let mut comm = a.clone();
        push_reduced(&mut comm, b.iter().copied());
        push_reduced(&mut comm, invert_letters(&a));
        push_reduced(&mut comm, invert_letters(&b));
        conj_letters(&[i as i32], &comm)
    };
    let z = gamma.z(i);
    let mut out: Vec<i32> = invert_letters(&z).collect();
    push_reduced(&mut out, gamma.endo().apply_raw(&inner));
    push_reduced(&mut out, z.iter().copied());
    Ok(FreeWord::from_reduced(n, out))
}

/// The conjugating words `z_{J,i}` and the automorphism `γ_J(t_i) = z t_i z⁻¹`
/// attached to a vertex set `V` and a set `J` of wires passing above it.
#[derive(Clone, Debug)]
pub struct RandellConjugator {
    n: usize,
    zs: Vec<Vec<i32>>,
}

impl RandellConjugator {
    pub fn new(v: &[usize], j: &[usize], n: usize) -> Self {
        let mut js = j.to_vec();
        js.sort_unstable();
        let vmax = v.iter().copied().max().unwrap_or(0);
        let zs = (1..=n)
            .map(|i| {
                if js.is_empty() {
                    return Vec::new();
                }
                let (j1, jmax) = (js[0], *js.last().unwrap());
                if i < j1 || js.contains(&i) || i > vmax {
                    Vec::new()
                } else if i < jmax {
                    js.iter().filter(|&&x| x < i).map(|&x| x as i32).collect()
                } else {
                    t_of(&js)
                }
            })
            .collect();
        RandellConjugator { n, zs }
    }

    /// `z_{J,i}` as raw letters.
    pub fn z(&self, i: usize) -> Vec<i32> {
        self.zs[i - 1].clone()
    }

    pub fn endo(&self) -> FreeEndo {
        let imgs = (1..=self.n).map(|i| conj_letters(&[i as i32], &self.zs[i - 1])).collect();
        FreeEndo::from_raw(self.n, imgs)
    }

    /// `γ_J(t_i)`.
    pub fn gamma(&self, i: usize) -> FreeWord {
        FreeWord::from_reduced(self.n, conj_letters(&[i as i32], &self.zs[i - 1]))
    }
}
