//! Exact extraction of a braided wiring diagram from lines `z = a·x + b`.
//!
//! The projection is `x' = x + c·z` for a shear `c` in the coefficient
//! field, rational whenever a rational one is generic. Vertices are
//! visited by decreasing real part of their abscissa along a piecewise-linear
//! path; wires are ordered by the real part of their fiber coordinate, lowest
//! at height 1. Every comparison is an exact sign in the quadratic field.

use std::collections::HashMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::scalar::{format_rational, parse_rational, ComplexQuad, RealQuad, ScalarError};
use crate::wiring::{Diagram, Vertex, WiringError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("lines {0} and {1} coincide")]
    DuplicateLines(usize, usize),
    #[error("arrangement has no lines")]
    Empty,
    #[error("line {line} is vertical after shear {c}")]
    Vertical { line: usize, c: String },
    #[error("projection not generic: {0}")]
    NotGeneric(String),
    #[error("crossing of lines {0} and {1} could not be resolved")]
    Unresolved(usize, usize),
    #[error(transparent)]
    Wiring(#[from] WiringError),
}

/// Lines `z = a·x + b` over `Q(√d)`; `√d` is imaginary when `d < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    d: i64,
    lines: Vec<(ComplexQuad, ComplexQuad)>,
    source: Vec<[BigRational; 4]>,
}

impl Arrangement {
    pub fn new(d: i64, coords: Vec<[BigRational; 4]>) -> Result<Self, ExtractError> {
        if coords.is_empty() {
            return Err(ExtractError::Empty);
        }
        let mut lines = Vec::with_capacity(coords.len());
        for c in &coords {
            let a = ComplexQuad::from_field_coords(c[0].clone(), c[1].clone(), d)?;
            let b = ComplexQuad::from_field_coords(c[2].clone(), c[3].clone(), d)?;
            lines.push((a, b));
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i] == lines[j] {
                    return Err(ExtractError::DuplicateLines(i + 1, j + 1));
                }
            }
        }
        Ok(Arrangement { d, lines, source: coords })
    }

    /// Real arrangement from integer-pair rationals `(a, b)`.
    pub fn real(lines: &[(BigRational, BigRational)]) -> Result<Self, ExtractError> {
        let z = BigRational::zero();
        Arrangement::new(1, lines.iter().map(|(a, b)| [a.clone(), z.clone(), b.clone(), z.clone()]).collect())
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[(ComplexQuad, ComplexQuad)] {
        &self.lines
    }

    fn t(&self) -> u64 {
        self.d.unsigned_abs()
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.lines.iter().all(|(a, b)| a.is_real() && b.is_real())
    }

    /// True when two lines share a slope.
    pub fn has_parallel(&self) -> bool {
        (0..self.len()).any(|i| (i + 1..self.len()).any(|j| self.lines[i].0 == self.lines[j].0))
    }

    /// Complex conjugate arrangement.
    pub fn conjugate(&self) -> Arrangement {
        let mut out = self.clone();
        for l in &mut out.lines {
            *l = (l.0.conj(), l.1.conj());
        }
        if self.d < 0 {
            for c in &mut out.source {
                c[1] = -c[1].clone();
                c[3] = -c[3].clone();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Arrangement, ExtractError> {
        let mut d = None;
        let mut coords = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let syntax = |msg: String| ExtractError::Syntax { line, msg };
            if let Some(rest) = body.strip_prefix("field") {
                if d.is_some() {
                    return Err(syntax("repeated field header".into()));
                }
                let v: i64 = rest.trim().parse().map_err(|_| syntax(format!("bad discriminant `{}`", rest.trim())))?;
                if v == 0 {
                    return Err(syntax("discriminant must be nonzero".into()));
                }
                d = Some(v);
                continue;
            }
            if d.is_none() {
                return Err(syntax("expected `field <d>` header first".into()));
            }
            let parts: Vec<&str> = body.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(syntax(format!("expected 4 rationals, found {}", parts.len())));
            }
            let mut c: [BigRational; 4] = Default::default();
            for (slot, p) in c.iter_mut().zip(&parts) {
                *slot = parse_rational(p).ok_or_else(|| syntax(format!("bad rational `{p}`")))?;
            }
            coords.push(c);
        }
        let d = d.ok_or(ExtractError::Syntax { line: 1, msg: "missing `field` header".into() })?;
        Arrangement::new(d, coords)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.d)?;
        for c in &self.source {
            let s: Vec<String> = c.iter().map(format_rational).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// A multiple point: abscissa, height and the incident lines (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    pub x: ComplexQuad,
    pub z: ComplexQuad,
    pub lines: Vec<usize>,
}

type Line = (ComplexQuad, ComplexQuad);

fn eval(l: &Line, x: &ComplexQuad) -> ComplexQuad {
    &(&l.0 * x) + &l.1
}

fn vertices_of(lines: &[Line]) -> Vec<VertexRecord> {
    let mut index: HashMap<(ComplexQuad, ComplexQuad), usize> = HashMap::new();
    let mut out: Vec<VertexRecord> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let da = &lines[i].0 - &lines[j].0;
            if da.is_zero() {
                continue;
            }
            let x = (&lines[j].1 - &lines[i].1).checked_div(&da).expect("nonzero slope difference");
            let z = eval(&lines[i], &x);
            let slot = *index.entry((x.clone(), z.clone())).or_insert_with(|| {
                out.push(VertexRecord { x, z, lines: Vec::new() });
                out.len() - 1
            });
            for l in [i + 1, j + 1] {
                if !out[slot].lines.contains(&l) {
                    out[slot].lines.push(l);
                }
            }
        }
    }
    for v in &mut out {
        v.lines.sort_unstable();
    }
    out
}

/// All multiple points of the arrangement, in discovery order.
pub fn vertices(a: &Arrangement) -> Vec<VertexRecord> {
    vertices_of(&a.lines)
}

/// Shear `c = c0 + c1·w`, with `w` the generator of the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shear {
    pub c0: BigRational,
    pub c1: BigRational,
}

impl Shear {
    pub fn rational(c0: BigRational) -> Self {
        Shear { c0, c1: BigRational::zero() }
    }

    pub fn is_rational(&self) -> bool {
        self.c1.is_zero()
    }

    fn value(&self, d: i64) -> Result<ComplexQuad, ExtractError> {
        Ok(ComplexQuad::from_field_coords(self.c0.clone(), self.c1.clone(), d)?)
    }
}

/// `c0` or `c0 c1`, as printed.
impl std::str::FromStr for Shear {
    type Err = ExtractError;

    fn from_str(text: &str) -> Result<Self, ExtractError> {
        let bad = || ExtractError::Syntax { line: 0, msg: format!("bad shear `{text}`") };
        let parts: Vec<&str> = text.split_whitespace().collect();
        let rat = |t: &str| parse_rational(t).ok_or_else(bad);
        match parts[..] {
            [c0] => Ok(Shear::rational(rat(c0)?)),
            [c0, c1] => Ok(Shear { c0: rat(c0)?, c1: rat(c1)? }),
            _ => Err(bad()),
        }
    }
}

impl From<BigRational> for Shear {
    fn from(c0: BigRational) -> Self {
        Shear::rational(c0)
    }
}

impl fmt::Display for Shear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            f.write_str(&format_rational(&self.c0))
        } else {
            write!(f, "{} {}", format_rational(&self.c0), format_rational(&self.c1))
        }
    }
}

/// Lines in coordinates `x' = x + c·z`.
fn shear(a: &Arrangement, c: &Shear) -> Result<Vec<Line>, ExtractError> {
    let cq = c.value(a.d)?;
    let one = ComplexQuad::one(a.t());
    let mut out = Vec::with_capacity(a.len());
    for (idx, (sa, sb)) in a.lines.iter().enumerate() {
        let den = &one + &(&cq * sa);
        if den.is_zero() {
            return Err(ExtractError::Vertical { line: idx + 1, c: c.to_string() });
        }
        out.push((sa.checked_div(&den)?, sb.checked_div(&den)?));
    }
    Ok(out)
}

/// Rational shears in order of increasing height: `0, 1, -1, 1/2, -1/2, 2, -2, 1/3, ...`.
pub fn shear_candidates() -> impl Iterator<Item = BigRational> {
    std::iter::once(BigRational::zero()).chain((1i64..).flat_map(|h| {
        let mut v = Vec::new();
        for q in 1..=h {
            if num::integer::gcd(q, h) != 1 {
                continue;
            }
            for (num, den) in [(q, h), (h, q)] {
                let r = BigRational::new(BigInt::from(num), BigInt::from(den));
                if !v.contains(&r) {
                    v.push(r.clone());
                    v.push(-r);
                }
            }
        }
        v
    }))
}

/// Sheared lines, vertices sorted by decreasing real part, and the sweep step.
struct Layout {
    lines: Vec<Line>,
    verts: Vec<VertexRecord>,
    eps: RealQuad,
}

fn min_positive(vals: impl IntoIterator<Item = RealQuad>) -> Option<RealQuad> {
    vals.into_iter().filter(|v| v.sign() > 0).min()
}

fn distinct_real_parts(vals: &[ComplexQuad]) -> bool {
    let mut re: Vec<&RealQuad> = vals.iter().map(|v| &v.re).collect();
    re.sort();
    re.windows(2).all(|w| w[0] != w[1])
}

/// Checks the strengthened genericity conditions for shear `c` and builds the layout.
fn layout(a: &Arrangement, c: &Shear) -> Result<Layout, ExtractError> {
    let lines = shear(a, c)?;
    let t = a.t();
    let n = lines.len();
    let bad = |msg: String| ExtractError::NotGeneric(msg);
    for i in 0..n {
        for j in i + 1..n {
            let da = &lines[i].0 - &lines[j].0;
            if da.is_zero() && (&lines[i].1 - &lines[j].1).re.is_zero() {
                return Err(bad(format!("parallel lines {} and {} share a real part", i + 1, j + 1)));
            }
        }
    }
    let mut verts = vertices_of(&lines);
    verts.sort_by(|p, q| q.x.re.cmp(&p.x.re));
    if let Some(w) = verts.windows(2).find(|w| w[0].x.re == w[1].x.re) {
        return Err(bad(format!("vertices on lines {:?} and {:?} share a real abscissa", w[0].lines, w[1].lines)));
    }
    let mut gaps: Vec<RealQuad> = verts.windows(2).map(|w| &w[0].x.re - &w[1].x.re).collect();
    for v in &verts {
        for &i in &v.lines {
            for &j in &v.lines {
                if i < j && (&lines[i - 1].0 - &lines[j - 1].0).re.is_zero() {
                    return Err(bad(format!("lines {i} and {j} stay tied in real part near their vertex")));
                }
            }
        }
        let mut fiber: Vec<ComplexQuad> = vec![v.z.clone()];
        fiber.extend((1..=n).filter(|l| !v.lines.contains(l)).map(|l| eval(&lines[l - 1], &v.x)));
        if !distinct_real_parts(&fiber) {
            return Err(bad(format!("fiber over the vertex on lines {:?} has tied real parts", v.lines)));
        }
        // where pairs swap real parts along the horizontal line through the vertex
        for i in 0..n {
            for j in i + 1..n {
                let da = (&lines[i].0 - &lines[j].0).re;
                if da.is_zero() {
                    continue;
                }
                let r0 = (&eval(&lines[i], &v.x) - &eval(&lines[j], &v.x)).re;
                let u = (-&r0).checked_div(&da)?;
                let u = if u.sign() < 0 { -u } else { u };
                gaps.push(u);
            }
        }
    }
    let eps = match min_positive(gaps) {
        Some(g) => g.checked_div(&RealQuad::from_int(2, t))?,
        None => RealQuad::one(t),
    };
    Ok(Layout { lines, verts, eps })
}

/// True if shear `c` passes every genericity check.
pub fn is_generic(a: &Arrangement, c: &Shear) -> bool {
    layout(a, c).is_ok()
}

/// Rational shears tried before any irrational one.
const RATIONAL_TRIES: usize = 256;

/// Shears in search order: the first rational candidates, then (over an
/// imaginary field) `c0 + c1·w` with `c1 ≠ 0` by growing height.
///
/// Rational shears alone can fail forever: two lines with complex
/// conjugate slopes keep conjugate slopes under every real shear, so their
/// real parts stay tied along every horizontal segment.
pub fn projection_candidates(d: i64) -> impl Iterator<Item = Shear> {
    let rational = shear_candidates().take(RATIONAL_TRIES).map(Shear::rational);
    let mixed = (d < 0).then(|| {
        (1usize..).flat_map(|m| {
            let r: Vec<BigRational> = shear_candidates().take(m + 1).collect();
            let last = r[m].clone();
            let mut v = vec![Shear { c0: BigRational::zero(), c1: last.clone() }];
            for c in &r[1..m] {
                v.push(Shear { c0: c.clone(), c1: last.clone() });
                v.push(Shear { c0: last.clone(), c1: c.clone() });
            }
            v.push(Shear { c0: last.clone(), c1: last });
            v
        })
    });
    rational.chain(mixed.into_iter().flatten())
}

/// Smallest-height shear passing the genericity checks.
pub fn choose_projection(a: &Arrangement) -> Shear {
    projection_candidates(a.d).find(|c| is_generic(a, c)).expect("some shear is generic")
}

/// An extracted diagram with `labels[w-1]` the input line carried by wire `w`.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub diagram: Diagram,
    pub labels: Vec<usize>,
    pub shear: Shear,
}

struct Sweep<'a> {
    lines: &'a [Line],
    flip: bool,
    t: u64,
}

impl Sweep<'_> {
    fn re_at(&self, l: usize, x: &ComplexQuad) -> RealQuad {
        eval(&self.lines[l], x).re
    }

    /// Appends the crossings met along the straight segment `p → q`.
    /// `order[h]` is the line at height `h + 1`.
    fn segment(
        &self,
        p: &ComplexQuad,
        q: &ComplexQuad,
        order: &mut Vec<usize>,
        out: &mut Vec<i32>,
        depth: usize,
    ) -> Result<(), ExtractError> {
        let dir = q - p;
        let n = order.len();
        let mut events: Vec<(RealQuad, usize, usize)> = Vec::new();
        let mut degenerate = None;
        for i in 0..n {
            for j in i + 1..n {
                let (li, lj) = (&self.lines[i], &self.lines[j]);
                let da = &li.0 - &lj.0;
                let r0 = (&eval(li, p) - &eval(lj, p)).re;
                let r1 = (&da * &dir).re;
                if r1.is_zero() {
                    if r0.is_zero() {
                        degenerate = Some((i, j));
                    }
                    continue;
                }
                let s = (-&r0).checked_div(&r1)?;
                let one = RealQuad::one(self.t);
                if s.sign() == 0 || s == one {
                    degenerate = Some((i, j));
                } else if s.sign() > 0 && s < one {
                    events.push((s, i, j));
                }
            }
        }
        if let Some((i, j)) = degenerate {
            return self.subdivide(p, q, order, out, depth, (i, j));
        }
        events.sort_by(|a, b| a.0.cmp(&b.0));
        let mut start = 0;
        while start < events.len() {
            let mut end = start + 1;
            while end < events.len() && events[end].0 == events[start].0 {
                end += 1;
            }
            let group = &events[start..end];
            let mut swaps: Vec<usize> = Vec::new();
            for &(_, i, j) in group {
                let hi = order.iter().position(|&l| l == i).unwrap();
                let hj = order.iter().position(|&l| l == j).unwrap();
                if hi.abs_diff(hj) != 1 {
                    return self.subdivide(p, q, order, out, depth, (i, j));
                }
                swaps.push(hi.min(hj));
            }
            swaps.sort_unstable();
            if swaps.windows(2).any(|w| w[1] <= w[0] + 1) {
                let (_, i, j) = group[0];
                return self.subdivide(p, q, order, out, depth, (i, j));
            }
            let x = p + &dir.scale(&group[0].0);
            for &h in &swaps {
                let (lo, up) = (order[h], order[h + 1]);
                let cmp = eval(&self.lines[lo], &x).im.cmp(&eval(&self.lines[up], &x).im);
                if cmp == std::cmp::Ordering::Equal {
                    return Err(ExtractError::Unresolved(lo + 1, up + 1));
                }
                let positive = (cmp == std::cmp::Ordering::Greater) != self.flip;
                let letter = (h + 1) as i32;
                out.push(if positive { letter } else { -letter });
                order.swap(h, h + 1);
            }
            start = end;
        }
        Ok(())
    }

    /// Splits `p → q` at a vertically offset midpoint and sweeps both halves.
    /// The strip between consecutive vertices holds no vertex, so the detour is homotopic.
    fn subdivide(
        &self,
        p: &ComplexQuad,
        q: &ComplexQuad,
        order: &mut Vec<usize>,
        out: &mut Vec<i32>,
        depth: usize,
        pair: (usize, usize),
    ) -> Result<(), ExtractError> {
        if depth > 24 {
            return Err(ExtractError::Unresolved(pair.0 + 1, pair.1 + 1));
        }
        let half = RealQuad::rational(BigRational::new(BigInt::one(), BigInt::from(2)), self.t);
        let mid = (p + q).scale(&half);
        for k in 1..=16i64 {
            for sign in [1i64, -1] {
                let off = BigRational::new(BigInt::from(sign * k), BigInt::from(k * k + 1));
                let m = ComplexQuad::new(mid.re.clone(), &mid.im + &RealQuad::rational(off, self.t));
                let fiber: Vec<ComplexQuad> = (0..order.len()).map(|l| eval(&self.lines[l], &m)).collect();
                if !distinct_real_parts(&fiber) {
                    continue;
                }
                let saved = (order.clone(), out.len());
                let res = self
                    .segment(p, &m, order, out, depth + 1)
                    .and_then(|_| self.segment(&m, q, order, out, depth + 1));
                match res {
                    Ok(()) => return Ok(()),
                    Err(_) => {
                        *order = saved.0;
                        out.truncate(saved.1);
                    }
                }
            }
        }
        Err(ExtractError::Unresolved(pair.0 + 1, pair.1 + 1))
    }
}

/// Extracts the diagram for shear `c`; `flip` reverses every crossing sign.
pub fn extract_diagram(a: &Arrangement, c: &Shear, flip: bool) -> Result<Extraction, ExtractError> {
    let lay = layout(a, c)?;
    let n = lay.lines.len();
    let t = a.t();
    let sweep = Sweep { lines: &lay.lines, flip, t };
    if lay.verts.is_empty() {
        let mut order: Vec<usize> = (0..n).collect();
        let x0 = ComplexQuad::zero(t);
        order.sort_by(|&i, &j| sweep.re_at(i, &x0).cmp(&sweep.re_at(j, &x0)));
        let labels = order.iter().map(|l| l + 1).collect();
        let diagram = Diagram::new(n, BraidWord::identity(n), Vec::new(), Vec::new())?;
        return Ok(Extraction { diagram, labels, shear: c.clone() });
    }
    let eps = ComplexQuad::real(lay.eps.clone());
    let right = |v: &VertexRecord| &v.x + &eps;
    let left = |v: &VertexRecord| &v.x - &eps;
    let y0 = right(&lay.verts[0]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sweep.re_at(i, &y0).cmp(&sweep.re_at(j, &y0)));
    let labels: Vec<usize> = order.iter().map(|l| l + 1).collect();
    let mut vertices = Vec::with_capacity(lay.verts.len());
    let mut braids = Vec::with_capacity(lay.verts.len());
    for (k, v) in lay.verts.iter().enumerate() {
        if k > 0 {
            let mut letters = Vec::new();
            sweep.segment(&left(&lay.verts[k - 1]), &right(v), &mut order, &mut letters, 0)?;
            // met in sweep order; a slot word starts next to the following vertex
            letters.reverse();
            braids.push(BraidWord::new(n, letters).expect("letters in range"));
        }
        let mut hs: Vec<usize> = v.lines.iter().map(|&l| order.iter().position(|&o| o == l - 1).unwrap()).collect();
        hs.sort_unstable();
        if hs.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(ExtractError::NotGeneric(format!("lines {:?} are not adjacent at their vertex", v.lines)));
        }
        order[hs[0]..=hs[hs.len() - 1]].reverse();
        vertices.push(Vertex::new(hs[0] + 1, hs.len()));
    }
    let diagram = Diagram::new(n, BraidWord::identity(n), vertices, braids)?;
    Ok(Extraction { diagram, labels, shear: c.clone() })
}

/// Chooses a projection and extracts.
pub fn extract(a: &Arrangement, flip: bool) -> Result<Extraction, ExtractError> {
    extract_diagram(a, &choose_projection(a), flip)
}

/// Random real arrangement of `n` lines with small rational coefficients.
pub fn random_real_arrangement(n: usize, rng: &mut impl rand::Rng, allow_parallel: bool) -> Arrangement {
    loop {
        let mut pairs: Vec<(BigRational, BigRational)> = Vec::with_capacity(n);
        while pairs.len() < n {
            let a = BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=3)));
            let b = BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=3)));
            if pairs.iter().any(|(pa, pb)| (pa == &a && pb == &b) || (!allow_parallel && pa == &a)) {
                continue;
            }
            pairs.push((a, b));
        }
        if let Ok(a) = Arrangement::real(&pairs) {
            return a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{EXAMPLE73A, EXAMPLE73B};
    use crate::monodromy::{infinity_check, monodromy};
    use crate::parse::parse_braid;
    use crate::scalar::rat;

    fn real(pairs: &[(i64, i64)]) -> Arrangement {
        Arrangement::real(&pairs.iter().map(|&(a, b)| (rat(a, 1), rat(b, 1))).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn two_lines_meet_once() {
        let a = real(&[(0, 0), (1, 0)]);
        let v = vertices(&a);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].lines, vec![1, 2]);
        let e = extract(&a, false).unwrap();
        assert_eq!(e.diagram.s(), 1);
        assert!(e.diagram.is_unbraided());
    }

    #[test]
    fn parallel_lines_have_no_vertex() {
        assert!(vertices(&real(&[(1, 0), (1, 1)])).is_empty());
    }

    #[test]
    fn duplicate_lines_rejected() {
        assert!(matches!(
            Arrangement::real(&[(rat(1, 1), rat(0, 1)), (rat(1, 1), rat(0, 1))]),
            Err(ExtractError::DuplicateLines(1, 2))
        ));
    }

    #[test]
    fn vertical_shear_rejected() {
        let a = real(&[(0, 0), (1, 0), (2, 1)]);
        assert!(matches!(shear(&a, &rat(-1, 1).into()), Err(ExtractError::Vertical { line: 2, .. })));
        assert!(!is_generic(&a, &rat(-1, 2).into()));
    }

    #[test]
    fn shear_order_starts_small() {
        let c: Vec<BigRational> = shear_candidates().take(7).collect();
        assert_eq!(c, vec![rat(0, 1), rat(1, 1), rat(-1, 1), rat(1, 2), rat(-1, 2), rat(2, 1), rat(-2, 1)]);
    }

    #[test]
    fn generic_triangle_needs_no_shear() {
        let a = real(&[(0, 0), (1, 0), (-1, 2)]);
        assert_eq!(choose_projection(&a), rat(0, 1).into());
    }

    #[test]
    fn central_triple() {
        let a = Arrangement::parse(EXAMPLE73A).unwrap();
        let e = extract(&a, false).unwrap();
        let m = monodromy(&e.diagram);
        assert_eq!(m.s(), 1);
        assert!(crate::braids_equal(m.get(1), &parse_braid("A[1,2,3]", 3).unwrap()).unwrap());
    }

    #[test]
    fn parallel_pair_with_transversal() {
        let a = Arrangement::parse(EXAMPLE73B).unwrap();
        let e = extract(&a, false).unwrap();
        let m = monodromy(&e.diagram);
        assert_eq!(m.sets(), &[vec![1, 2], vec![1, 3]]);
        assert!(crate::braids_equal(m.get(1), &parse_braid("A[1,2]", 3).unwrap()).unwrap());
        assert!(crate::braids_equal(m.get(2), &parse_braid("A[1,3]", 3).unwrap()).unwrap());
    }

    #[test]
    fn generic_real_arrangement_closes_at_infinity() {
        let a = real(&[(0, 0), (1, 0), (-1, 3), (2, -5), (3, 1)]);
        let e = extract(&a, false).unwrap();
        assert!(e.diagram.is_unbraided());
        assert!(infinity_check(&monodromy(&e.diagram)));
    }

    #[test]
    fn conjugate_slopes_need_an_irrational_shear() {
        // slopes 1 ± i stay conjugate under every real shear
        let a = Arrangement::parse("field -1\n2 -1 0 0\n1 1 -1 -1/2\n1 -1 -2 1\n").unwrap();
        assert!(shear_candidates().take(40).all(|c| !is_generic(&a, &c.into())));
        let c = choose_projection(&a);
        assert!(!c.is_rational());
        let e = extract_diagram(&a, &c, false).unwrap();
        assert_eq!(e.diagram.s(), 3);
    }

    #[test]
    fn shear_text_round_trip() {
        for t in ["0", "-1/2", "1 1/3"] {
            assert_eq!(t.parse::<Shear>().unwrap().to_string(), t);
        }
        assert!("1 2 3".parse::<Shear>().is_err());
        assert!("x".parse::<Shear>().is_err());
    }

    #[test]
    fn parse_round_trip() {
        let a = Arrangement::parse("field -3\n1/3 0 0 0\n7/26 1/26 -1/13 -2/13\n").unwrap();
        assert_eq!(Arrangement::parse(&a.to_string()).unwrap(), a);
        assert!(Arrangement::parse("1 0 0 0\n").is_err());
        assert!(Arrangement::parse("field 1\n1 0 0\n").is_err());
    }
}
