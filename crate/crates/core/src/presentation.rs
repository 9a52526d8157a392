//! Group presentations from monodromy and from diagrams, and cheap invariants.

use std::collections::HashSet;
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::braid::{artin_act, RandellConjugator};
use crate::freegroup::{FreeEndo, FreeWord};
use crate::monodromy::{conjugators, Monodromy};
use crate::parse::{parse_free, ParseError};
use crate::perm::Perm;
use crate::wiring::{Diagram, WiringError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("randell presentation needs an unbraided diagram: {0}")]
    Braided(#[from] WiringError),
    #[error("hom count needs {needed} tuples, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("hom count supports Sym(1)..Sym(4), got Sym({0})")]
    Degree(usize),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Word { line: usize, source: ParseError },
}

/// Generators `t_1..t_n` and relators `w = 1`, each tagged with its vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    n: usize,
    relators: Vec<FreeWord>,
    families: Vec<usize>,
}

impl Presentation {
    /// Drops relators that reduce to the identity.
    pub fn new(n: usize, tagged: impl IntoIterator<Item = (usize, FreeWord)>) -> Self {
        let (families, relators) = tagged.into_iter().filter(|(_, w)| !w.is_identity()).unzip();
        Presentation { n, relators, families }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Vertex index of each relator.
    pub fn families(&self) -> &[usize] {
        &self.families
    }

    /// Relators sorted as letter sequences, for order-free comparison.
    pub fn relator_multiset(&self) -> Vec<Vec<i32>> {
        let mut v: Vec<Vec<i32>> = self.relators.iter().map(|w| w.letters().to_vec()).collect();
        v.sort();
        v
    }

    /// Relators up to cyclic permutation: each cyclically reduced and
    /// rotated to its least letter sequence, then sorted.
    pub fn cyclic_relator_multiset(&self) -> Vec<Vec<i32>> {
        let mut v: Vec<Vec<i32>> = self
            .relators
            .iter()
            .map(|w| {
                let l = w.cyclically_reduced().letters().to_vec();
                (0..l.len().max(1)).map(|r| [&l[r.min(l.len())..], &l[..r.min(l.len())]].concat()).min().unwrap_or_default()
            })
            .collect();
        v.sort();
        v
    }

    pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
        let mut n = None;
        let mut family = 0;
        let mut tagged = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() {
                continue;
            }
            if let Some(c) = body.strip_prefix('#') {
                if let Some(k) = c.trim().strip_prefix("family k=") {
                    family = k.trim().parse().map_err(|_| PresentationError::Syntax { line, msg: "bad family tag".into() })?;
                }
                continue;
            }
            if let Some(g) = body.strip_prefix("gens") {
                let v = g.trim().parse().map_err(|_| PresentationError::Syntax { line, msg: "bad generator count".into() })?;
                n = Some(v);
                continue;
            }
            let rank = n.ok_or(PresentationError::Syntax { line, msg: "expected `gens <n>` first".into() })?;
            let w = parse_free(body, rank).map_err(|source| PresentationError::Word { line, source })?;
            tagged.push((family, w));
        }
        let n = n.ok_or(PresentationError::Syntax { line: 1, msg: "missing `gens` header".into() })?;
        Ok(Presentation::new(n, tagged))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.n)?;
        let mut last = None;
        for (w, &k) in self.relators.iter().zip(&self.families) {
            if last != Some(k) {
                writeln!(f, "# family k={k}")?;
                last = Some(k);
            }
            writeln!(f, "{}", w.to_string_with("t"))?;
        }
        Ok(())
    }
}

fn gen(n: usize, i: usize) -> FreeWord {
    FreeWord::generator(n, i).expect("generator in range")
}

fn product(n: usize, ws: &[FreeWord]) -> FreeWord {
    ws.iter().fold(FreeWord::identity(n), |acc, w| acc.mul(w).expect("same rank"))
}

/// `λ_k(t_i) t_i⁻¹` for `i ∈ V_k ∖ max V_k`.
pub fn braid_presentation(m: &Monodromy) -> Presentation {
    let n = m.n();
    let mut tagged = Vec::new();
    for (idx, (lambda, set)) in m.values().iter().zip(m.sets()).enumerate() {
        let mut set = set.clone();
        set.sort_unstable();
        set.pop();
        for &i in &set {
            let t = gen(n, i);
            let img = artin_act(lambda, &t).expect("same rank");
            tagged.push((idx + 1, img.mul(&t.inverse()).expect("same rank")));
        }
    }
    Presentation::new(n, tagged)
}

/// Every relation `λ_k(t_i) = t_i`, before any index selection.
pub fn braid_presentation_full(m: &Monodromy) -> Presentation {
    let n = m.n();
    let mut tagged = Vec::new();
    for (idx, lambda) in m.values().iter().enumerate() {
        for i in 1..=n {
            let t = gen(n, i);
            let img = artin_act(lambda, &t).expect("same rank");
            tagged.push((idx + 1, img.mul(&t.inverse()).expect("same rank")));
        }
    }
    Presentation::new(n, tagged)
}

/// Relators `g_c⋯g_{c-1} · (g_{c+1}⋯g_c)⁻¹` for the cyclic family `[g_1,…,g_r]`.
pub fn cyclic_family(n: usize, gs: &[FreeWord]) -> Vec<FreeWord> {
    let r = gs.len();
    let rot = |c: usize| -> FreeWord {
        let v: Vec<FreeWord> = (0..r).map(|i| gs[(c + i) % r].clone()).collect();
        product(n, &v)
    };
    (0..r.saturating_sub(1)).map(|c| rot(c).mul(&rot(c + 1).inverse()).expect("same rank")).collect()
}

/// Meridians `x_i(k)` before vertex `k` and `y_i(k)` just after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeridianTable {
    n: usize,
    x: Vec<Vec<FreeWord>>,
    y: Vec<Vec<FreeWord>>,
    phi: Vec<FreeEndo>,
    psi: Vec<FreeEndo>,
}

impl MeridianTable {
    /// `x_i(k)`; wires and states are 1-based.
    pub fn x(&self, i: usize, k: usize) -> &FreeWord {
        &self.x[k - 1][i - 1]
    }

    pub fn y(&self, i: usize, k: usize) -> &FreeWord {
        &self.y[k - 1][i - 1]
    }

    /// `φ_k(t_q) = x_i(k)` where wire `i` is at height `q` in state `Π_k`.
    pub fn phi(&self, k: usize) -> &FreeEndo {
        &self.phi[k - 1]
    }

    /// `ψ_k(t_q) = y_i(k)` where wire `i` is at height `q` just after vertex `k`.
    pub fn psi(&self, k: usize) -> &FreeEndo {
        &self.psi[k - 1]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn states(&self) -> usize {
        self.x.len()
    }
}

/// Sweeps the diagram, tracking meridians through vertices and braids.
pub fn meridians(d: &Diagram) -> MeridianTable {
    let n = d.n();
    let states = d.states();
    let by_height = |state: &Perm, words: &[FreeWord]| -> FreeEndo {
        FreeEndo::new((1..=n).map(|q| words[state.apply(q) - 1].clone()).collect()).expect("rank n")
    };
    // x_i(1): the initial braid acts on the trivial meridians
    let mut cur: Vec<FreeWord> = vec![FreeWord::identity(n); n];
    for q in 1..=n {
        cur[states[0].apply(q) - 1] = artin_act(d.initial(), &gen(n, q)).expect("rank n");
    }
    let mut table = MeridianTable { n, x: Vec::new(), y: Vec::new(), phi: Vec::new(), psi: Vec::new() };
    for (idx, v) in d.vertices().iter().enumerate() {
        let k = idx + 1;
        let st = &states[idx];
        let wires = d.vertex_wires_by_height(k).expect("vertex in range");
        let mut y = cur.clone();
        let mut prefix = FreeWord::identity(n);
        for &i in &wires {
            y[i - 1] = cur[i - 1].conjugate_by(&prefix.inverse()).expect("rank n");
            prefix = prefix.mul(&cur[i - 1]).expect("rank n");
        }
        let after = v.reversal(n).then(st);
        let psi = by_height(&after, &y);
        table.phi.push(by_height(st, &cur));
        table.x.push(cur.clone());
        table.y.push(y);
        let next_state = &states[k];
        let braid = d.braid_after(k);
        let mut next = vec![FreeWord::identity(n); n];
        for q in 1..=n {
            let w = artin_act(braid, &gen(n, q)).expect("rank n");
            next[next_state.apply(q) - 1] = psi.apply(&w).expect("rank n");
        }
        table.psi.push(psi);
        cur = next;
    }
    table
}

/// `x_i(k) = β_k(t_q)` where wire `i` sits at height `q` in `Π_k`, for every state.
pub fn conjugator_identity_holds(d: &Diagram, table: &MeridianTable) -> bool {
    let n = d.n();
    let states = d.states();
    conjugators(d).iter().enumerate().all(|(idx, beta)| {
        (1..=n).all(|q| artin_act(beta, &gen(n, q)).expect("rank n") == *table.x(states[idx].apply(q), idx + 1))
    })
}

/// `ψ_k(t_q) = φ_k(μ_{I_k}(t_q))` at every vertex.
pub fn vertex_identity_holds(d: &Diagram, table: &MeridianTable) -> bool {
    let n = d.n();
    d.vertices().iter().enumerate().all(|(idx, v)| {
        let mu = v.half_twist(n);
        (1..=n).all(|q| {
            let lhs = table.psi(idx + 1).image(q);
            let rhs = table.phi(idx + 1).apply(&artin_act(&mu, &gen(n, q)).expect("rank n")).expect("rank n");
            lhs == rhs
        })
    })
}

/// Families `[x_{i_1}(k),…,x_{i_r}(k)]`, wires ordered by height.
pub fn arvola_presentation(d: &Diagram) -> Presentation {
    let n = d.n();
    let table = meridians(d);
    let mut tagged = Vec::new();
    for k in 1..=d.s() {
        let wires = d.vertex_wires_by_height(k).expect("vertex in range");
        let gs: Vec<FreeWord> = wires.iter().map(|&i| table.x(i, k).clone()).collect();
        tagged.extend(cyclic_family(n, &gs).into_iter().map(|w| (k, w)));
    }
    Presentation::new(n, tagged)
}

fn randell_parts(d: &Diagram) -> Result<Vec<(Vec<usize>, FreeEndo)>, PresentationError> {
    let n = d.n();
    let mut out = Vec::with_capacity(d.s());
    for k in 1..=d.s() {
        let j = d.j_set(k)?;
        let v = d.vertex_set(k)?;
        out.push((v.clone(), RandellConjugator::new(&v, &j, n).endo()));
    }
    Ok(out)
}

/// Families `[γ_k(t_{i_1}),…,γ_k(t_{i_r})]` for an unbraided diagram.
pub fn randell_presentation(d: &Diagram) -> Result<Presentation, PresentationError> {
    let n = d.n();
    let mut tagged = Vec::new();
    for (idx, (v, gamma)) in randell_parts(d)?.into_iter().enumerate() {
        let gs: Vec<FreeWord> = v.iter().map(|&i| gamma.image(i)).collect();
        tagged.extend(cyclic_family(n, &gs).into_iter().map(|w| (idx + 1, w)));
    }
    Ok(Presentation::new(n, tagged))
}

/// Relators `γ_k(t_V t_i t_V⁻¹) · γ_k(t_i)⁻¹` for `i ∈ V_k ∖ max V_k`.
pub fn randell_monodromy_presentation(d: &Diagram) -> Result<Presentation, PresentationError> {
    let n = d.n();
    let mut tagged = Vec::new();
    for (idx, (v, gamma)) in randell_parts(d)?.into_iter().enumerate() {
        let tv = product(n, &v.iter().map(|&i| gen(n, i)).collect::<Vec<_>>());
        for &i in &v[..v.len() - 1] {
            let t = gen(n, i);
            let lhs = gamma.apply(&t.conjugate_by(&tv.inverse()).expect("rank n")).expect("rank n");
            let rhs = gamma.apply(&t).expect("rank n");
            tagged.push((idx + 1, lhs.mul(&rhs.inverse()).expect("rank n")));
        }
    }
    Ok(Presentation::new(n, tagged))
}

/// Abelianization `Z^rank ⊕ ⊕ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 || self.torsion.is_empty() {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Diagonal of the Smith normal form (nonzero entries, divisibility chain).
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the rest of the block by the pivot
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let m: Vec<Vec<BigInt>> = p.relators.iter().map(|w| w.exponent_sums().into_iter().map(BigInt::from).collect()).collect();
    let diag = smith_diagonal(m);
    let rank = p.n - diag.len();
    let torsion = diag.into_iter().filter(|d| !d.is_one()).collect();
    Abelianization { rank, torsion }
}

fn sym_elements(k: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Default tuple budget for [`hom_count`].
pub const DEFAULT_HOM_BUDGET: u128 = 200_000_000;

/// Number of homomorphisms into `Sym(k)`, `k ≤ 4`.
pub fn hom_count(p: &Presentation, k: usize, budget: u128) -> Result<u64, PresentationError> {
    if k == 0 || k > 4 {
        return Err(PresentationError::Degree(k));
    }
    let elems = sym_elements(k);
    let size = elems.len();
    let needed = (size as u128).checked_pow(p.n as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(PresentationError::Budget { needed, budget });
    }
    if p.n == 0 {
        return Ok(1);
    }
    let index = |perm: &[u8]| elems.iter().position(|e| e.as_slice() == perm).unwrap();
    let mul: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index(&a.iter().map(|&x| b[x as usize]).collect::<Vec<_>>())).collect())
        .collect();
    let inv: Vec<usize> = (0..size).map(|a| (0..size).find(|&b| mul[a][b] == 0).unwrap()).collect();
    // relators checked as soon as their largest generator is assigned
    let mut by_level: Vec<Vec<&[i32]>> = vec![Vec::new(); p.n];
    for w in &p.relators {
        let top = w.letters().iter().map(|l| l.unsigned_abs() as usize).max().unwrap();
        by_level[top - 1].push(w.letters());
    }

    fn count(level: usize, assign: &mut Vec<usize>, ctx: &(Vec<Vec<&[i32]>>, Vec<Vec<usize>>, Vec<usize>, usize)) -> u64 {
        let (by_level, mul, inv, size) = ctx;
        if level == by_level.len() {
            return 1;
        }
        let mut total = 0;
        for g in 0..*size {
            assign[level] = g;
            let ok = by_level[level].iter().all(|w| {
                let mut acc = 0;
                for &l in w.iter() {
                    let e = assign[l.unsigned_abs() as usize - 1];
                    acc = mul[acc][if l > 0 { e } else { inv[e] }];
                }
                acc == 0
            });
            if ok {
                total += count(level + 1, assign, ctx);
            }
        }
        total
    }

    let ctx = (by_level, mul, inv, size);
    let total = (0..size)
        .into_par_iter()
        .map(|g| {
            let mut assign = vec![0; p.n];
            assign[0] = g;
            let ok = ctx.0[0].iter().all(|w| {
                let mut acc = 0;
                for &l in w.iter() {
                    acc = ctx.1[acc][if l > 0 { g } else { ctx.2[g] }];
                }
                acc == 0
            });
            if ok {
                count(1, &mut assign, &ctx)
            } else {
                0
            }
        })
        .sum();
    Ok(total)
}

/// Free and cyclic reduction, dropping trivial and repeated relators;
/// with `eliminate`, removes generators occurring once in some relator.
pub fn tietze_simplify(p: &Presentation, eliminate: bool) -> Presentation {
    let mut n = p.n;
    let mut rels: Vec<(usize, FreeWord)> =
        p.relators.iter().zip(&p.families).map(|(w, &k)| (k, w.cyclically_reduced())).collect();
    if eliminate {
        while let Some((ri, g)) = rels.iter().enumerate().find_map(|(ri, (_, w))| {
            let counts = w.letters().iter().fold(vec![0usize; n], |mut c, l| {
                c[l.unsigned_abs() as usize - 1] += 1;
                c
            });
            (1..=n).find(|&g| counts[g - 1] == 1).map(|g| (ri, g))
        }) {
            // w = u · t_g^e · v  gives  t_g = (u⁻¹ v⁻¹)^e
            let (_, w) = rels.remove(ri);
            let pos = w.letters().iter().position(|l| l.unsigned_abs() as usize == g).unwrap();
            let e = w.letters()[pos].signum();
            let u = FreeWord::new(n, w.letters()[..pos].iter().copied()).unwrap();
            let v = FreeWord::new(n, w.letters()[pos + 1..].iter().copied()).unwrap();
            let mut value = u.inverse().mul(&v.inverse()).unwrap();
            if e < 0 {
                value = value.inverse();
            }
            // substitute and renumber generators above g
            let images: Vec<Vec<i32>> = (1..=n)
                .map(|i| {
                    if i == g {
                        value.letters().iter().map(|&l| shift(l, g)).collect()
                    } else {
                        vec![shift(i as i32, g)]
                    }
                })
                .collect();
            n -= 1;
            rels = rels
                .into_iter()
                .map(|(k, w)| {
                    let letters: Vec<i32> = w
                        .letters()
                        .iter()
                        .flat_map(|&l| {
                            let img = &images[l.unsigned_abs() as usize - 1];
                            if l > 0 {
                                img.clone()
                            } else {
                                img.iter().rev().map(|x| -x).collect()
                            }
                        })
                        .collect();
                    (k, FreeWord::new(n, letters).unwrap().cyclically_reduced())
                })
                .collect();
        }
    }
    let mut seen = HashSet::new();
    let kept = rels.into_iter().filter(|(_, w)| !w.is_identity() && seen.insert(w.letters().to_vec()));
    Presentation::new(n, kept)
}

fn shift(l: i32, removed: usize) -> i32 {
    let a = l.unsigned_abs() as usize;
    if a > removed {
        l - l.signum()
    } else {
        l
    }
}
