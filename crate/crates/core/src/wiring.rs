//! Braided wiring diagrams: vertex events at local height ranges separated by
//! intermediate braids, with derived height states.

use std::fmt;

use thiserror::Error;

use crate::braid::{half_twist_range, BraidError, BraidWord};
use crate::parse::{parse_braid, ParseError};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WiringError {
    #[error("vertex {k}: size {size} is below 2")]
    VertexTooSmall { k: usize, size: usize },
    #[error("vertex {k}: heights {low}..{high} outside 1..{n}")]
    VertexOutOfRange { k: usize, low: usize, high: usize, n: usize },
    #[error("vertex {k}: wires {wires:?} are not height-contiguous")]
    NotContiguous { k: usize, wires: Vec<usize> },
    #[error("braid after vertex {k}: {source}")]
    Braid { k: usize, source: BraidError },
    #[error("braid after vertex {k} has {got} strands, diagram has {n}")]
    BraidStrands { k: usize, got: usize, n: usize },
    #[error("vertex index {k} out of range 1..{s}")]
    IndexOutOfRange { k: usize, s: usize },
    #[error("diagram is braided: braid after vertex {k} is nontrivial")]
    Braided { k: usize },
    #[error("diagram needs at least one wire")]
    NoWires,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}, {source}")]
    Word { line: usize, source: ParseError },
}

/// A vertex event occupying heights `low..low+size-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub low: usize,
    pub size: usize,
}

impl Vertex {
    pub fn new(low: usize, size: usize) -> Self {
        Vertex { low, size }
    }

    pub fn high(&self) -> usize {
        self.low + self.size - 1
    }

    pub fn heights(&self) -> std::ops::RangeInclusive<usize> {
        self.low..=self.high()
    }

    /// The half twist `μ_I`.
    pub fn half_twist(&self, n: usize) -> BraidWord {
        half_twist_range(self.low, self.size, n).expect("validated vertex")
    }

    /// Reversal of the block as a permutation of heights.
    pub fn reversal(&self, n: usize) -> Perm {
        let images: Vec<usize> = (1..=n)
            .map(|q| if self.heights().contains(&q) { self.low + self.high() - q } else { q })
            .collect();
        Perm::from_images(&images).expect("block reversal")
    }
}

/// A braided wiring diagram.
///
/// `braids[k-1]` is the braid following vertex `k`; the last one is the
/// (optional) final braid. All braids are read left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    initial: BraidWord,
    vertices: Vec<Vertex>,
    braids: Vec<BraidWord>,
}

impl Diagram {
    /// Builds and validates a diagram.
    pub fn new(
        n: usize,
        initial: BraidWord,
        vertices: Vec<Vertex>,
        braids: Vec<BraidWord>,
    ) -> Result<Self, WiringError> {
        let mut braids = braids;
        if braids.len() > vertices.len() {
            return Err(WiringError::Syntax { line: 0, msg: "more braids than vertices".into() });
        }
        braids.resize(vertices.len(), BraidWord::identity(n));
        let d = Diagram { n, initial, vertices, braids };
        d.validate()?;
        Ok(d)
    }

    /// Unbraided diagram from vertex local indices.
    pub fn unbraided(n: usize, vertices: Vec<Vertex>) -> Result<Self, WiringError> {
        Diagram::new(n, BraidWord::identity(n), vertices, Vec::new())
    }

    /// Unbraided diagram from an ordered list of vertex wire sets; each set
    /// must be height-contiguous at its state.
    pub fn from_vertex_sets(n: usize, sets: &[Vec<usize>]) -> Result<Self, WiringError> {
        let mut state = Perm::identity(n);
        let mut vertices = Vec::with_capacity(sets.len());
        for (idx, set) in sets.iter().enumerate() {
            let k = idx + 1;
            if set.iter().any(|&w| w == 0 || w > n) {
                return Err(WiringError::VertexOutOfRange { k, low: 0, high: 0, n });
            }
            let inv = state.inverse();
            let mut hs: Vec<usize> = set.iter().map(|&w| inv.apply(w)).collect();
            hs.sort_unstable();
            hs.dedup();
            if hs.len() < 2 {
                return Err(WiringError::VertexTooSmall { k, size: hs.len() });
            }
            if hs.len() != set.len() || hs.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err(WiringError::NotContiguous { k, wires: set.clone() });
            }
            let v = Vertex::new(hs[0], hs.len());
            state = v.reversal(n).then(&state);
            vertices.push(v);
        }
        Diagram::unbraided(n, vertices)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices.
    pub fn s(&self) -> usize {
        self.vertices.len()
    }

    pub fn initial(&self) -> &BraidWord {
        &self.initial
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Braid following vertex `k` (1-based).
    pub fn braid_after(&self, k: usize) -> &BraidWord {
        &self.braids[k - 1]
    }

    pub fn braids(&self) -> &[BraidWord] {
        &self.braids
    }

    /// Checks invariants and returns the states `Π_1..Π_{s+1}`.
    pub fn validate(&self) -> Result<Vec<Perm>, WiringError> {
        let n = self.n;
        if n == 0 {
            return Err(WiringError::NoWires);
        }
        let check_braid = |k: usize, b: &BraidWord| {
            if b.strands() != n {
                return Err(WiringError::BraidStrands { k, got: b.strands(), n });
            }
            BraidWord::new(n, b.letters().iter().copied()).map_err(|source| WiringError::Braid { k, source })?;
            Ok(())
        };
        check_braid(0, &self.initial)?;
        if self.braids.len() != self.vertices.len() {
            return Err(WiringError::Syntax { line: 0, msg: "braid count does not match vertex count".into() });
        }
        for (idx, v) in self.vertices.iter().enumerate() {
            let k = idx + 1;
            if v.size < 2 {
                return Err(WiringError::VertexTooSmall { k, size: v.size });
            }
            if v.low == 0 || v.high() > n {
                return Err(WiringError::VertexOutOfRange { k, low: v.low, high: v.high(), n });
            }
            check_braid(k, &self.braids[idx])?;
        }
        Ok(self.states_unchecked())
    }

    fn states_unchecked(&self) -> Vec<Perm> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.s() + 1);
        let mut state = self.initial.perm();
        out.push(state.clone());
        for (v, b) in self.vertices.iter().zip(&self.braids) {
            // Π_{k+1} = τ(β_{k,k+1}) · μ̄_{I_k} · Π_k, read left to right
            state = b.perm().then(&v.reversal(n)).then(&state);
            out.push(state.clone());
        }
        out
    }

    /// `Π_1..Π_{s+1}`, each mapping heights to wire labels.
    pub fn states(&self) -> Vec<Perm> {
        self.states_unchecked()
    }

    pub fn local_index(&self, k: usize) -> Result<Vertex, WiringError> {
        self.check_k(k)?;
        Ok(self.vertices[k - 1])
    }

    fn check_k(&self, k: usize) -> Result<(), WiringError> {
        if k == 0 || k > self.s() {
            return Err(WiringError::IndexOutOfRange { k, s: self.s() });
        }
        Ok(())
    }

    /// `V_k = Π_k(I_k)`, sorted increasingly.
    pub fn vertex_set(&self, k: usize) -> Result<Vec<usize>, WiringError> {
        self.check_k(k)?;
        let st = &self.states()[k - 1];
        Ok(Self::wires_at(st, &self.vertices[k - 1]))
    }

    fn wires_at(state: &Perm, v: &Vertex) -> Vec<usize> {
        let mut w: Vec<usize> = v.heights().map(|q| state.apply(q)).collect();
        w.sort_unstable();
        w
    }

    /// All vertex wire sets in order.
    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        let states = self.states();
        self.vertices.iter().zip(&states).map(|(v, st)| Self::wires_at(st, v)).collect()
    }

    /// Incident wires of vertex `k` ordered by height, bottom up.
    pub fn vertex_wires_by_height(&self, k: usize) -> Result<Vec<usize>, WiringError> {
        self.check_k(k)?;
        let st = &self.states()[k - 1];
        Ok(self.vertices[k - 1].heights().map(|q| st.apply(q)).collect())
    }

    /// True when the initial braid and every braid between vertices is
    /// trivial. The final braid does not affect monodromy and is ignored.
    pub fn is_unbraided(&self) -> bool {
        self.first_braided().is_none()
    }

    fn first_braided(&self) -> Option<usize> {
        if !self.initial.is_empty() {
            return Some(0);
        }
        let s = self.s();
        (1..s).find(|&k| !self.braids[k - 1].is_empty())
    }

    /// Diagram of the conjugate arrangement: every braid letter reversed.
    pub fn conjugate(&self) -> Diagram {
        Diagram {
            n: self.n,
            initial: self.initial.epsilon(),
            vertices: self.vertices.clone(),
            braids: self.braids.iter().map(|b| b.epsilon()).collect(),
        }
    }

    /// `J_k = (V̄_k ∖ V_k) ∩ U_k` for an unbraided diagram.
    pub fn j_set(&self, k: usize) -> Result<Vec<usize>, WiringError> {
        self.check_k(k)?;
        if let Some(b) = self.first_braided() {
            return Err(WiringError::Braided { k: b });
        }
        Ok(self.j_sets()[k - 1].clone())
    }

    pub(crate) fn j_sets(&self) -> Vec<Vec<usize>> {
        let states = self.states();
        self.vertices
            .iter()
            .zip(&states)
            .map(|(v, st)| {
                let vs = Self::wires_at(st, v);
                let (lo, hi) = (vs[0], *vs.last().unwrap());
                let mut j: Vec<usize> = ((v.high() + 1)..=self.n)
                    .map(|q| st.apply(q))
                    .filter(|&w| lo < w && w < hi)
                    .collect();
                j.sort_unstable();
                j
            })
            .collect()
    }

    pub fn parse(text: &str) -> Result<Diagram, WiringError> {
        let mut n: Option<usize> = None;
        let mut initial: Option<BraidWord> = None;
        let mut vertices = Vec::new();
        let mut braids: Vec<BraidWord> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let syn = |msg: &str| WiringError::Syntax { line, msg: msg.to_string() };
            if let Some(rest) = body.strip_prefix("n=").or_else(|| body.strip_prefix("n =")) {
                if n.is_some() {
                    return Err(syn("duplicate header"));
                }
                n = Some(rest.trim().parse().map_err(|_| syn("bad wire count"))?);
                continue;
            }
            let Some(n) = n else {
                return Err(syn("expected `n=<int>` header first"));
            };
            if let Some(rest) = body.strip_prefix("initial=") {
                if initial.is_some() || !vertices.is_empty() {
                    return Err(syn("initial braid must precede all vertices"));
                }
                let word = quoted(rest).ok_or_else(|| syn("expected a quoted braid word"))?;
                initial = Some(parse_braid(word, n).map_err(|source| WiringError::Word { line, source })?);
            } else if let Some(rest) = body.strip_prefix("v ") {
                let nums: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| syn("bad vertex field")))
                    .collect::<Result<_, _>>()?;
                let [low, size] = nums[..] else {
                    return Err(syn("vertex line needs `v <low> <size>`"));
                };
                if size < 2 {
                    return Err(WiringError::VertexTooSmall { k: vertices.len() + 1, size });
                }
                vertices.push(Vertex::new(low, size));
                braids.push(BraidWord::identity(n));
            } else if let Some(rest) = body.strip_prefix("b ") {
                if vertices.is_empty() {
                    return Err(syn("braid before the first vertex; use initial="));
                }
                let last = braids.last_mut().unwrap();
                if !last.is_empty() {
                    return Err(syn("two braids in a row"));
                }
                let word = quoted(rest).ok_or_else(|| syn("expected a quoted braid word"))?;
                *last = parse_braid(word, n).map_err(|source| WiringError::Word { line, source })?;
            } else {
                return Err(syn("unrecognized line"));
            }
        }
        let n = n.ok_or(WiringError::Syntax { line: 0, msg: "missing `n=<int>` header".into() })?;
        Diagram::new(n, initial.unwrap_or_else(|| BraidWord::identity(n)), vertices, braids)
    }
}

fn quoted(s: &str) -> Option<&str> {
    s.trim().strip_prefix('"')?.strip_suffix('"')
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        if !self.initial.is_empty() {
            writeln!(f, "initial=\"{}\"", self.initial)?;
        }
        for (v, b) in self.vertices.iter().zip(&self.braids) {
            writeln!(f, "v {} {}", v.low, v.size)?;
            if !b.is_empty() {
                writeln!(f, "b \"{b}\"")?;
            }
        }
        Ok(())
    }
}

/// Random diagram in which no two wires meet twice. Braids between events
/// have up to `max_braid` letters; zero gives an unbraided diagram. Stops
/// early once every block of unmet wires is exhausted.
pub fn random_diagram(n: usize, s: usize, max_braid: usize, rng: &mut impl rand::Rng) -> Diagram {
    fn random_braid(n: usize, max_braid: usize, rng: &mut impl rand::Rng) -> BraidWord {
        if n < 2 || max_braid == 0 {
            return BraidWord::identity(n);
        }
        let len = rng.gen_range(0..=max_braid);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        BraidWord::new(n, letters).expect("letters in range")
    }
    let initial = random_braid(n, max_braid, rng);
    let mut state = initial.perm();
    let mut met = vec![vec![false; n + 1]; n + 1];
    let mut vertices = Vec::new();
    let mut braids = Vec::new();
    for _ in 0..s {
        let free: Vec<Vertex> = (2..=n.min(4))
            .flat_map(|size| (1..=n + 1 - size).map(move |low| Vertex::new(low, size)))
            .filter(|v| {
                let w: Vec<usize> = v.heights().map(|q| state.apply(q)).collect();
                w.iter().enumerate().all(|(a, &x)| w[a + 1..].iter().all(|&y| !met[x][y]))
            })
            .collect();
        if free.is_empty() {
            break;
        }
        let v = free[rng.gen_range(0..free.len())];
        let w: Vec<usize> = v.heights().map(|q| state.apply(q)).collect();
        for &x in &w {
            for &y in &w {
                met[x][y] = true;
            }
        }
        let b = if vertices.len() + 1 < s { random_braid(n, max_braid, rng) } else { BraidWord::identity(n) };
        state = b.perm().then(&v.reversal(n)).then(&state);
        vertices.push(v);
        braids.push(b);
    }
    Diagram::new(n, initial, vertices, braids).expect("generated diagram is valid")
}
