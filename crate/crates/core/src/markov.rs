//! Markov moves on braided wiring diagrams, their effect on monodromy, and
//! braid-equivalence witnesses.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::braid::{artin_act, braids_equal, conj_set, BraidError, BraidWord};
use crate::freegroup::FreeWord;
use crate::lattice::{lattice_isomorphic, lattice_of};
use crate::monodromy::Monodromy;
use crate::parse::{parse_braid, ParseError};
use crate::wiring::{Diagram, Vertex, WiringError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkovError {
    #[error("bad move `{0}`: expected e.g. 3b@4, 5d-@2, 4@0, 1:<braid>")]
    Syntax(String),
    #[error("move needs a braid payload")]
    MissingPayload,
    #[error("payload: {0}")]
    Payload(#[from] ParseError),
    #[error("position {k} out of range 0..={max}")]
    Position { k: usize, max: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("rewritten diagram is invalid: {0}")]
    Invalid(#[from] WiringError),
    #[error("witness strands: ψ has {psi} (want {s}), φ has {phi} (want {n})")]
    Strands { psi: usize, s: usize, phi: usize, n: usize },
    #[error("monodromies differ in shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sub {
    /// Resolved from the diagram.
    Auto,
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Insert a braid at the start.
    InsertInitial,
    /// Insert a braid at the end.
    InsertFinal,
    /// Exchange two adjacent vertices.
    Exchange(Sub),
    /// Reduce, or replace by an equal word, one intermediate braid.
    Reduce,
    /// Slide a letter through a vertex.
    Slide(Sub),
}

/// A move and where to apply it.
///
/// `position` is the vertex index for exchanges (vertices `k`, `k+1`) and
/// slides (the letter just before vertex `k`), the braid slot for
/// reductions (0 is the initial braid, `k` follows vertex `k`), and unused
/// for insertions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveSpec {
    pub kind: MoveKind,
    pub position: usize,
    pub payload: Option<String>,
    /// Opposite crossing parity. For slides it asserts the letter is negative.
    pub switched: bool,
}

impl MoveSpec {
    pub fn new(kind: MoveKind, position: usize) -> Self {
        MoveSpec { kind, position, payload: None, switched: false }
    }

    pub fn switched(mut self) -> Self {
        self.switched = true;
        self
    }

    pub fn with_payload(mut self, braid: impl Into<String>) -> Self {
        self.payload = Some(braid.into());
        self
    }

    fn payload(&self, n: usize) -> Result<Option<BraidWord>, MarkovError> {
        self.payload.as_deref().map(|p| parse_braid(p, n).map_err(MarkovError::from)).transpose()
    }
}

fn sub_letter(s: Sub) -> &'static str {
    match s {
        Sub::Auto => "",
        Sub::A => "a",
        Sub::B => "b",
        Sub::C => "c",
        Sub::D => "d",
    }
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.switched { "-" } else { "" };
        match self.kind {
            MoveKind::InsertInitial => write!(f, "1")?,
            MoveKind::InsertFinal => write!(f, "2")?,
            MoveKind::Exchange(s) => write!(f, "3{}{sign}@{}", sub_letter(s), self.position)?,
            MoveKind::Reduce => write!(f, "4@{}", self.position)?,
            MoveKind::Slide(s) => write!(f, "5{}{sign}@{}", sub_letter(s), self.position)?,
        }
        if let Some(p) = &self.payload {
            write!(f, ":{p}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveSpec {
    type Err = MarkovError;

    fn from_str(text: &str) -> Result<Self, MarkovError> {
        let bad = || MarkovError::Syntax(text.to_string());
        let (head, payload) = match text.split_once(':') {
            Some((h, p)) => (h.trim(), Some(p.trim().to_string())),
            None => (text.trim(), None),
        };
        let (code, position) = match head.split_once('@') {
            Some((c, p)) => (c, p.trim().parse::<usize>().map_err(|_| bad())?),
            None => (head, 0),
        };
        let (code, switched) = match code.strip_suffix('-') {
            Some(c) => (c, true),
            None => (code, false),
        };
        let mut chars = code.chars();
        let digit = chars.next().ok_or_else(bad)?;
        let sub = match chars.as_str() {
            "" => Sub::Auto,
            "a" => Sub::A,
            "b" => Sub::B,
            "c" => Sub::C,
            "d" => Sub::D,
            _ => return Err(bad()),
        };
        let kind = match (digit, sub) {
            ('1', Sub::Auto) => MoveKind::InsertInitial,
            ('2', Sub::Auto) => MoveKind::InsertFinal,
            ('3', s) if s != Sub::D => MoveKind::Exchange(s),
            ('4', Sub::Auto) => MoveKind::Reduce,
            ('5', s) => MoveKind::Slide(s),
            _ => return Err(bad()),
        };
        let at = head.contains('@');
        let needs_at = !matches!(kind, MoveKind::InsertInitial | MoveKind::InsertFinal);
        if at != needs_at || (switched && !matches!(kind, MoveKind::Exchange(_) | MoveKind::Slide(_))) {
            return Err(bad());
        }
        if matches!(kind, MoveKind::InsertInitial | MoveKind::InsertFinal) && payload.is_none() {
            return Err(MarkovError::MissingPayload);
        }
        if matches!(kind, MoveKind::Exchange(_) | MoveKind::Slide(_)) && payload.is_some() {
            return Err(bad());
        }
        Ok(MoveSpec { kind, position, payload, switched })
    }
}

fn word(n: usize, letters: Vec<i32>) -> BraidWord {
    BraidWord::new(n, letters).expect("compensating braid letters in range")
}

/// `cnt` runs of `len` letters; run `t` starts at `start + t` and descends.
fn descending_runs(n: usize, cnt: usize, start: usize, len: usize, sign: i32) -> Vec<i32> {
    let mut out = Vec::with_capacity(cnt * len);
    for t in 0..cnt {
        for u in 0..len {
            out.push(sign * (start + t - u) as i32);
        }
    }
    debug_assert!(out.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < n));
    out
}

/// Braid slots: 0 is the initial braid, `k` follows vertex `k`.
struct Parts {
    n: usize,
    slots: Vec<BraidWord>,
    vertices: Vec<Vertex>,
}

impl Parts {
    fn of(d: &Diagram) -> Self {
        let mut slots = vec![d.initial().clone()];
        slots.extend(d.braids().iter().cloned());
        Parts { n: d.n(), slots, vertices: d.vertices().to_vec() }
    }

    /// Letters adjacent to a vertex sit at the left end of the slot before
    /// it and the right end of the slot after it.
    fn prepend(&mut self, slot: usize, letters: Vec<i32>) {
        let w = word(self.n, letters);
        self.slots[slot] = w.mul(&self.slots[slot]).expect("same strands");
    }

    fn append(&mut self, slot: usize, letters: Vec<i32>) {
        let w = word(self.n, letters);
        self.slots[slot] = self.slots[slot].mul(&w).expect("same strands");
    }

    fn build(self) -> Result<Diagram, MarkovError> {
        let mut slots = self.slots.into_iter();
        let initial = slots.next().expect("initial slot");
        Ok(Diagram::new(self.n, initial, self.vertices, slots.collect())?)
    }
}

fn resolve_exchange(first: Vertex, second: Vertex) -> Option<Sub> {
    let (a, b, c, d) = (first.low, first.high(), second.low, second.high());
    if b < c || a > d {
        Some(Sub::A)
    } else if b == c {
        Some(Sub::B)
    } else if a == d {
        Some(Sub::C)
    } else {
        None
    }
}

fn resolve_slide(i: usize, v: Vertex) -> Sub {
    let (j, k) = (v.low, v.high());
    if i + 1 < j || i > k {
        Sub::A
    } else if i == k {
        Sub::B
    } else if i + 1 == j {
        Sub::C
    } else {
        Sub::D
    }
}

fn check_sub(asked: Sub, actual: Sub, what: &str) -> Result<Sub, MarkovError> {
    if asked != Sub::Auto && asked != actual {
        return Err(MarkovError::Precondition(format!("{what} fits case {}, not {}", sub_letter(actual), sub_letter(asked))));
    }
    Ok(actual)
}

/// Applies one move, returning the validated rewritten diagram.
pub fn apply_move(d: &Diagram, m: &MoveSpec) -> Result<Diagram, MarkovError> {
    let n = d.n();
    let s = d.s();
    let mut p = Parts::of(d);
    match m.kind {
        MoveKind::InsertInitial => {
            let b = m.payload(n)?.ok_or(MarkovError::MissingPayload)?;
            p.append(0, b.letters().to_vec());
        }
        MoveKind::InsertFinal => {
            let b = m.payload(n)?.ok_or(MarkovError::MissingPayload)?;
            if s == 0 {
                return Err(MarkovError::Precondition("no vertex to follow".into()));
            }
            p.prepend(s, b.letters().to_vec());
        }
        MoveKind::Reduce => {
            let k = m.position;
            if k > s {
                return Err(MarkovError::Position { k, max: s });
            }
            p.slots[k] = match m.payload(n)? {
                Some(b) if braids_equal(&b, &p.slots[k])? => b,
                Some(_) => return Err(MarkovError::Precondition(format!("replacement differs from braid {k}"))),
                None => p.slots[k].free_reduced(),
            };
        }
        MoveKind::Exchange(asked) => {
            let k = m.position;
            if k == 0 || k + 1 > s {
                return Err(MarkovError::Position { k, max: s.saturating_sub(1) });
            }
            if !p.slots[k].is_empty() {
                return Err(MarkovError::Precondition(format!("braid between vertices {k} and {} is not empty", k + 1)));
            }
            let (first, second) = (p.vertices[k - 1], p.vertices[k]);
            let sub = resolve_exchange(first, second)
                .ok_or_else(|| MarkovError::Precondition("local indices overlap in more than one height".into()))?;
            let sub = check_sub(asked, sub, "vertex pair")?;
            if sub == Sub::A && m.switched {
                return Err(MarkovError::Precondition("disjoint exchange has no parity".into()));
            }
            let par = if m.switched { -1 } else { 1 };
            let (a, b, c, dd) = (first.low, first.high(), second.low, second.high());
            match sub {
                Sub::A => p.vertices.swap(k - 1, k),
                Sub::B => {
                    let mut x = descending_runs(n, dd - c, c, c - a, par);
                    x.reverse();
                    p.prepend(k - 1, x);
                    p.append(k + 1, descending_runs(n, dd - c, c - 1, c - a, -par));
                    p.vertices[k - 1] = Vertex::new(a, dd - c + 1);
                    p.vertices[k] = Vertex::new(a + dd - c, b - a + 1);
                }
                Sub::C => {
                    let mut x = descending_runs(n, b - a, a - 1, a - c, par);
                    x.reverse();
                    p.prepend(k - 1, x);
                    p.append(k + 1, descending_runs(n, b - a, a, a - c, -par));
                    p.vertices[k - 1] = Vertex::new(b + c - a, a - c + 1);
                    p.vertices[k] = Vertex::new(c, b - a + 1);
                }
                Sub::Auto | Sub::D => unreachable!("resolved above"),
            }
        }
        MoveKind::Slide(asked) => {
            let k = m.position;
            if k == 0 || k > s {
                return Err(MarkovError::Position { k, max: s });
            }
            let before = &p.slots[k - 1];
            let Some(&letter) = before.letters().first() else {
                return Err(MarkovError::Precondition(format!("no braid letter just before vertex {k}")));
            };
            let par = letter.signum();
            if m.switched != (par < 0) {
                return Err(MarkovError::Precondition(format!("letter before vertex {k} has the other parity")));
            }
            let i = letter.unsigned_abs() as usize;
            let v = p.vertices[k - 1];
            let sub = check_sub(asked, resolve_slide(i, v), "letter and vertex")?;
            p.slots[k - 1] = word(n, before.letters()[1..].to_vec());
            let (j, hi) = (v.low, v.high());
            match sub {
                Sub::A => p.append(k, vec![letter]),
                Sub::D => p.append(k, vec![par * (j + hi - i - 1) as i32]),
                Sub::B => {
                    if hi + 1 > n {
                        return Err(MarkovError::Precondition("vertex would leave the top".into()));
                    }
                    p.prepend(k - 1, (j..hi).map(|x| -par * x as i32).collect());
                    p.append(k, (j..=hi).rev().map(|x| par * x as i32).collect());
                    p.vertices[k - 1] = Vertex::new(j + 1, v.size);
                }
                Sub::C => {
                    p.prepend(k - 1, (j..hi).rev().map(|x| -par * x as i32).collect());
                    p.append(k, (j - 1..hi).map(|x| par * x as i32).collect());
                    p.vertices[k - 1] = Vertex::new(j - 1, v.size);
                }
                Sub::Auto => unreachable!("resolved above"),
            }
        }
    }
    p.build()
}

/// How a move changes the monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveEffect {
    /// `λ̂_k = β⁻¹ λ_k β` for every `k`.
    Conjugate(BraidWord),
    /// `λ̂ ≖ λ` elementwise.
    Unchanged,
    /// Forward: `λ̂_k = λ_k λ_{k+1} λ_k⁻¹`, `λ̂_{k+1} = λ_k`.
    /// Backward: `λ̂_k = λ_{k+1}`, `λ̂_{k+1} = λ_{k+1}⁻¹ λ_k λ_{k+1}`.
    Hurwitz { k: usize, forward: bool },
}

/// Declared effect of a move on diagrams with `n` wires.
pub fn move_effect(m: &MoveSpec, n: usize) -> Result<MoveEffect, MarkovError> {
    Ok(match m.kind {
        MoveKind::InsertInitial => MoveEffect::Conjugate(m.payload(n)?.ok_or(MarkovError::MissingPayload)?),
        MoveKind::InsertFinal | MoveKind::Reduce | MoveKind::Slide(_) => MoveEffect::Unchanged,
        MoveKind::Exchange(_) => MoveEffect::Hurwitz { k: m.position, forward: !m.switched },
    })
}

impl MoveEffect {
    /// The monodromy the effect predicts.
    pub fn predict(&self, m: &Monodromy) -> Monodromy {
        let mut values = m.values().to_vec();
        let mut sets = m.sets().to_vec();
        match self {
            MoveEffect::Conjugate(b) => {
                for v in &mut values {
                    *v = v.conjugate_by(b).expect("same strands");
                }
            }
            MoveEffect::Unchanged => {}
            &MoveEffect::Hurwitz { k, forward } => {
                let (l, r) = (values[k - 1].clone(), values[k].clone());
                let mul = |x: &BraidWord, y: &BraidWord| x.mul(y).expect("same strands");
                if forward {
                    values[k - 1] = mul(&mul(&l, &r), &l.inverse());
                    values[k] = l;
                } else {
                    values[k - 1] = r.clone();
                    values[k] = mul(&mul(&r.inverse(), &l), &r);
                }
                sets.swap(k - 1, k);
            }
        }
        Monodromy::new(m.n(), values, sets).expect("same shape")
    }

    /// Witness certifying `M` against the predicted `M̂`.
    pub fn witness(&self, s: usize, n: usize) -> EquivalenceWitness {
        let (psi, phi) = match self {
            MoveEffect::Conjugate(b) => (BraidWord::identity(s), b.clone()),
            MoveEffect::Unchanged => (BraidWord::identity(s), BraidWord::identity(n)),
            &MoveEffect::Hurwitz { k, forward } => (BraidWord::sigma(s, k, forward).expect("k < s"), BraidWord::identity(n)),
        };
        EquivalenceWitness { psi, phi }
    }
}

/// `ψ ∈ B_s`, `φ ∈ B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub psi: BraidWord,
    pub phi: BraidWord,
}

impl EquivalenceWitness {
    pub fn identity(s: usize, n: usize) -> Self {
        EquivalenceWitness { psi: BraidWord::identity(s), phi: BraidWord::identity(n) }
    }

    /// Two lines: ψ then φ, in the braid grammar.
    pub fn parse(text: &str, s: usize, n: usize) -> Result<Self, MarkovError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let (Some(psi), Some(phi), None) = (lines.next(), lines.next(), lines.next()) else {
            return Err(MarkovError::Syntax("witness file needs exactly two lines".into()));
        };
        Ok(EquivalenceWitness { psi: parse_braid(psi, s)?, phi: parse_braid(phi, n)? })
    }
}

impl fmt::Display for EquivalenceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.psi)?;
        writeln!(f, "{}", self.phi)
    }
}

/// Which side `φ` conjugates from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Conjugation {
    /// `φ⁻¹ λ_k φ`
    #[default]
    Right,
    /// `φ λ_k φ⁻¹`
    Left,
}

fn check_shape(m: &Monodromy, m2: &Monodromy) -> Result<(), MarkovError> {
    if m.n() != m2.n() || m.s() != m2.s() {
        return Err(MarkovError::Shape(format!("({}, {}) vs ({}, {})", m.s(), m.n(), m2.s(), m2.n())));
    }
    Ok(())
}

/// True iff `M'(ψ(x_k)) ≖ φ⁻¹ λ_k φ` for every `k` (or `φ λ_k φ⁻¹`).
pub fn witness_check(m: &Monodromy, m2: &Monodromy, w: &EquivalenceWitness, dir: Conjugation) -> Result<bool, MarkovError> {
    check_shape(m, m2)?;
    let (s, n) = (m.s(), m.n());
    if w.psi.strands() != s.max(1) || w.phi.strands() != n {
        return Err(MarkovError::Strands { psi: w.psi.strands(), s, phi: w.phi.strands(), n });
    }
    let phi = match dir {
        Conjugation::Right => w.phi.clone(),
        Conjugation::Left => w.phi.inverse(),
    };
    let ok = (1..=s).into_par_iter().all(|k| {
        let x = FreeWord::generator(s, k).expect("k in range");
        let lhs = m2.eval(&artin_act(&w.psi, &x).expect("rank s"));
        let rhs = m.get(k).conjugate_by(&phi).expect("same strands");
        braids_equal(&lhs, &rhs).unwrap_or(false)
    });
    Ok(ok)
}

/// Freely reduced words of each length up to `max_len`.
fn words_by_length(strands: usize, max_len: usize) -> Vec<Vec<BraidWord>> {
    let letters: Vec<i32> = (1..strands as i32).flat_map(|i| [i, -i]).collect();
    let mut out = vec![vec![BraidWord::identity(strands)]];
    for len in 1..=max_len {
        let next: Vec<BraidWord> = out[len - 1]
            .iter()
            .flat_map(|w| {
                let last = w.letters().last().copied();
                letters.iter().filter(move |&&l| Some(-l) != last).map(move |&l| {
                    let mut v = w.letters().to_vec();
                    v.push(l);
                    BraidWord::new(strands, v).expect("in range")
                })
            })
            .collect();
        out.push(next);
    }
    out
}

/// Iterative deepening over `(ψ, φ)` with both words of length at most
/// `max_len`. `None` is inconclusive.
pub fn bounded_search(m: &Monodromy, m2: &Monodromy, max_len: usize, dir: Conjugation) -> Option<EquivalenceWitness> {
    check_shape(m, m2).ok()?;
    lattice_isomorphic(&lattice_of(m), &lattice_of(m2))?;
    let (s, n) = (m.s(), m.n());
    let psis = words_by_length(s.max(1), max_len);
    let phis = words_by_length(n, max_len);
    let (psis, phis) = (&psis, &phis);
    let sorted = |v: &[usize]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    // which generator of M' each ψ(x_k) is a conjugate of
    let targets = |psi: &BraidWord| -> Vec<usize> {
        (1..=s)
            .map(|k| {
                let img = artin_act(psi, &FreeWord::generator(s, k).expect("k in range")).expect("rank s");
                img.exponent_sums().iter().position(|&e| e != 0).expect("conjugate of a generator") + 1
            })
            .collect()
    };
    let phi_sets = |phi: &BraidWord| -> Vec<Vec<usize>> {
        let phi = if dir == Conjugation::Right { phi.clone() } else { phi.inverse() };
        m.sets().iter().map(|v| conj_set(&sorted(v), &phi).expect("valid set").0).collect()
    };
    let targets_sets = m2.sets().iter().map(|v| sorted(v)).collect::<Vec<_>>();
    for depth in 0..=max_len {
        let pairs: Vec<(&BraidWord, &BraidWord)> = (0..=depth)
            .flat_map(|i| {
                let js: Vec<usize> = if i == depth { (0..=depth).collect() } else { vec![depth] };
                js.into_iter().map(move |j| (i, j))
            })
            .flat_map(|(i, j)| psis[i].iter().flat_map(move |p| phis[j].iter().map(move |f| (p, f))))
            .collect();
        let found = pairs.par_iter().find_first(|(psi, phi)| {
            let t = targets(psi);
            let ps = phi_sets(phi);
            if (0..s).any(|k| ps[k] != targets_sets[t[k] - 1]) {
                return false;
            }
            let w = EquivalenceWitness { psi: (*psi).clone(), phi: (*phi).clone() };
            witness_check(m, m2, &w, dir).unwrap_or(false)
        });
        if let Some((psi, phi)) = found {
            return Some(EquivalenceWitness { psi: (*psi).clone(), phi: (*phi).clone() });
        }
    }
    None
}

/// Every parameter-free move that applies to `d`, with both parities where
/// they exist. Insertions are left out since they take a braid.
pub fn applicable_moves(d: &Diagram) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    let (s, n) = (d.s(), d.n());
    for k in 0..=s {
        out.push(MoveSpec::new(MoveKind::Reduce, k));
    }
    for k in 1..s {
        if !d.braid_after(k).is_empty() {
            continue;
        }
        let vs = d.vertices();
        match resolve_exchange(vs[k - 1], vs[k]) {
            Some(Sub::A) => out.push(MoveSpec::new(MoveKind::Exchange(Sub::A), k)),
            Some(sub) => {
                out.push(MoveSpec::new(MoveKind::Exchange(sub), k));
                out.push(MoveSpec::new(MoveKind::Exchange(sub), k).switched());
            }
            None => {}
        }
    }
    for k in 1..=s {
        let before = if k == 1 { d.initial() } else { d.braid_after(k - 1) };
        if let Some(&l) = before.letters().first() {
            let v = d.vertices()[k - 1];
            let sub = resolve_slide(l.unsigned_abs() as usize, v);
            if sub == Sub::B && v.high() + 1 > n {
                continue;
            }
            let spec = MoveSpec::new(MoveKind::Slide(sub), k);
            out.push(if l < 0 { spec.switched() } else { spec });
        }
    }
    out
}
