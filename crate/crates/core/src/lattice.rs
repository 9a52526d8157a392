//! Intersection lattices as vertex maps, and exact isomorphism testing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::extract::{vertices, Arrangement};
use crate::monodromy::Monodromy;
use crate::perm::Perm;
use crate::wiring::Diagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vertex {k} has fewer than two lines")]
    TooSmall { k: usize },
    #[error("vertex {k} mentions line {line} outside 1..{n}")]
    OutOfRange { k: usize, line: usize, n: usize },
    #[error("vertices {0} and {1} share two lines")]
    SharedPair(usize, usize),
    #[error("vertices {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// Ordered vertex sets on lines `1..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl VertexMap {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self, LatticeError> {
        let mut sorted = Vec::with_capacity(sets.len());
        for (idx, s) in sets.into_iter().enumerate() {
            let k = idx + 1;
            let mut s = s;
            s.sort_unstable();
            s.dedup();
            if s.len() < 2 {
                return Err(LatticeError::TooSmall { k });
            }
            if let Some(&line) = s.iter().find(|&&l| l == 0 || l > n) {
                return Err(LatticeError::OutOfRange { k, line, n });
            }
            sorted.push(s);
        }
        for a in 0..sorted.len() {
            for b in a + 1..sorted.len() {
                if sorted[a] == sorted[b] {
                    return Err(LatticeError::Duplicate(a + 1, b + 1));
                }
                if sorted[a].iter().filter(|l| sorted[b].contains(l)).count() > 1 {
                    return Err(LatticeError::SharedPair(a + 1, b + 1));
                }
            }
        }
        Ok(VertexMap { n, sets: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Line count is taken as the largest index unless `n` is given.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self, LatticeError> {
        let mut sets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let set: Result<Vec<usize>, _> = body.split(',').map(|p| p.trim().parse::<usize>()).collect();
            let set = set.map_err(|_| LatticeError::Syntax { line: idx + 1, msg: format!("bad vertex `{body}`") })?;
            sets.push(set);
        }
        let n = n.unwrap_or_else(|| sets.iter().flatten().copied().max().unwrap_or(0));
        VertexMap::new(n, sets)
    }
}

impl fmt::Display for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sets {
            let p: Vec<String> = s.iter().map(|l| l.to_string()).collect();
            writeln!(f, "{}", p.join(","))?;
        }
        Ok(())
    }
}

/// Anything carrying vertex incidence data.
pub trait LatticeSource {
    fn vertex_map(&self) -> VertexMap;
}

impl LatticeSource for Diagram {
    fn vertex_map(&self) -> VertexMap {
        VertexMap::new(self.n(), self.vertex_sets()).expect("diagram vertex sets form a lattice")
    }
}

impl LatticeSource for Monodromy {
    fn vertex_map(&self) -> VertexMap {
        VertexMap { n: self.n(), sets: self.sets().iter().map(|s| { let mut s = s.clone(); s.sort_unstable(); s }).collect() }
    }
}

impl LatticeSource for Arrangement {
    fn vertex_map(&self) -> VertexMap {
        VertexMap::new(self.len(), vertices(self).into_iter().map(|v| v.lines).collect())
            .expect("incidences of distinct lines form a lattice")
    }
}

pub fn lattice_of(source: &impl LatticeSource) -> VertexMap {
    source.vertex_map()
}

/// Sizes of the vertex sets through each line, sorted.
fn degree_profiles(v: &VertexMap) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); v.n];
    for s in &v.sets {
        for &l in s {
            out[l - 1].push(s.len());
        }
    }
    for p in &mut out {
        p.sort_unstable();
    }
    out
}

/// `meet[i][j]`: size of the vertex set through lines `i` and `j`, or 0.
fn meets(v: &VertexMap) -> Vec<Vec<usize>> {
    let mut m = vec![vec![0; v.n]; v.n];
    for s in &v.sets {
        for &a in s {
            for &b in s {
                if a != b {
                    m[a - 1][b - 1] = s.len();
                }
            }
        }
    }
    m
}

/// Finds `(π, ρ)` with `V'[π(k)] = ρ(V[k])`, or `None` if the lattices differ.
pub fn lattice_isomorphic(v: &VertexMap, w: &VertexMap) -> Option<(Perm, Perm)> {
    if v.n != w.n || v.s() != w.s() || lattice_invariants(v) != lattice_invariants(w) {
        return None;
    }
    let n = v.n;
    let (pv, pw) = (degree_profiles(v), degree_profiles(w));
    let (mv, mw) = (meets(v), meets(w));
    // lines with the rarest profiles first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (pw.iter().filter(|p| **p == pv[i]).count(), std::cmp::Reverse(pv[i].len()), i));
    let mut rho = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let index: HashMap<&Vec<usize>, usize> = w.sets.iter().enumerate().map(|(k, s)| (s, k)).collect();

    fn go(
        depth: usize,
        order: &[usize],
        rho: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ctx: (&[Vec<usize>], &[Vec<usize>], &[Vec<usize>], &[Vec<usize>]),
        leaf: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        let (pv, pw, mv, mw) = ctx;
        if depth == order.len() {
            return leaf(rho);
        }
        let i = order[depth];
        for j in 0..used.len() {
            if used[j] || pv[i] != pw[j] {
                continue;
            }
            if order[..depth].iter().any(|&a| mv[i][a] != mw[j][rho[a]]) {
                continue;
            }
            rho[i] = j;
            used[j] = true;
            if go(depth + 1, order, rho, used, ctx, leaf) {
                return true;
            }
            used[j] = false;
            rho[i] = usize::MAX;
        }
        false
    }

    let images = |rho: &[usize]| -> Option<Vec<usize>> {
        v.sets
            .iter()
            .map(|s| {
                let mut img: Vec<usize> = s.iter().map(|&l| rho[l - 1] + 1).collect();
                img.sort_unstable();
                index.get(&img).map(|k| k + 1)
            })
            .collect()
    };
    let leaf = |rho: &[usize]| images(rho).is_some();
    if !go(0, &order, &mut rho, &mut used, (&pv, &pw, &mv, &mw), &leaf) {
        return None;
    }
    let pi = images(&rho)?;
    let rho = Perm::from_images(&rho.iter().map(|r| r + 1).collect::<Vec<_>>())?;
    Some((Perm::from_images(&pi)?, rho))
}

/// Isomorphism-invariant fingerprint of a vertex map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeProfile {
    pub n: usize,
    pub s: usize,
    /// multiplicity ↦ number of points of that multiplicity
    pub multiplicities: BTreeMap<usize, usize>,
    /// per-line sorted multiplicities, sorted
    pub line_degrees: Vec<Vec<usize>>,
    /// pairs of points of multiplicity ≥ 3 lying on a common line
    pub collinear_multiple_pairs: usize,
}

impl fmt::Display for LatticeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lines {}", self.n)?;
        writeln!(f, "points {}", self.s)?;
        let m: Vec<String> = self.multiplicities.iter().map(|(k, c)| format!("{k}:{c}")).collect();
        writeln!(f, "multiplicities {}", m.join(" "))?;
        let d: Vec<String> =
            self.line_degrees.iter().map(|p| format!("[{}]", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
        writeln!(f, "line-degrees {}", d.join(" "))?;
        writeln!(f, "collinear-multiple-pairs {}", self.collinear_multiple_pairs)
    }
}

pub fn lattice_invariants(v: &VertexMap) -> LatticeProfile {
    let mut multiplicities = BTreeMap::new();
    for s in &v.sets {
        *multiplicities.entry(s.len()).or_insert(0) += 1;
    }
    let mut line_degrees = degree_profiles(v);
    line_degrees.sort();
    let big: Vec<&Vec<usize>> = v.sets.iter().filter(|s| s.len() >= 3).collect();
    let mut collinear_multiple_pairs = 0;
    for a in 0..big.len() {
        for b in a + 1..big.len() {
            if big[a].iter().any(|l| big[b].contains(l)) {
                collinear_multiple_pairs += 1;
            }
        }
    }
    LatticeProfile { n: v.n, s: v.s(), multiplicities, line_degrees, collinear_multiple_pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::FixtureId;

    fn vm(id: FixtureId) -> VertexMap {
        lattice_of(&id.diagram().unwrap())
    }

    #[test]
    fn pencil_is_one_point() {
        let v = vm(FixtureId::Pencil(4));
        assert_eq!(v.sets(), &[vec![1, 2, 3, 4]]);
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let v = vm(FixtureId::FalkA);
        let (pi, rho) = lattice_isomorphic(&v, &v).unwrap();
        for (k, s) in v.sets().iter().enumerate() {
            let mut img: Vec<usize> = s.iter().map(|&l| rho.apply(l)).collect();
            img.sort_unstable();
            assert_eq!(&v.sets()[pi.apply(k + 1) - 1], &img);
        }
    }

    #[test]
    fn falk_pair_differs() {
        let (a, b) = (vm(FixtureId::FalkA), vm(FixtureId::FalkA2));
        assert!(lattice_isomorphic(&a, &b).is_none());
        assert_eq!(lattice_invariants(&a).collinear_multiple_pairs, 0);
        assert_eq!(lattice_invariants(&b).collinear_multiple_pairs, 1);
    }

    #[test]
    fn maclane_pair_isomorphic() {
        assert!(lattice_isomorphic(&vm(FixtureId::MaclanePlus), &vm(FixtureId::MaclaneMinus)).is_some());
    }

    #[test]
    fn generic_arrangement_all_doubles() {
        let sets: Vec<Vec<usize>> = (1..=4).flat_map(|i| (i + 1..=4).map(move |j| vec![i, j])).collect();
        let p = lattice_invariants(&VertexMap::new(4, sets).unwrap());
        assert_eq!(p.multiplicities.get(&2), Some(&6));
        assert_eq!(p.s, 6);
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(VertexMap::new(3, vec![vec![1]]).is_err());
        assert!(VertexMap::new(4, vec![vec![1, 2, 3], vec![2, 3, 4]]).is_err());
        assert!(VertexMap::parse("1,2\n2,x\n", None).is_err());
        let v = VertexMap::parse("1,2,3\n# c\n3,4\n", None).unwrap();
        assert_eq!(VertexMap::parse(&v.to_string(), Some(4)).unwrap(), v);
    }
}
