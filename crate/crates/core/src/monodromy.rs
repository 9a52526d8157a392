//! Braid monodromy of a wiring diagram, the closed form for unbraided
//! diagrams, and the identities relating monodromies.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::braid::{b_j, braids_equal, conj_set, delta_sq, twist, BraidError, BraidWord, PureBraidWord};
use crate::freegroup::{FreeEndo, FreeWord};
use crate::parse::{parse_braid, ParseError};
use crate::wiring::{Diagram, WiringError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error(transparent)]
    Wiring(#[from] WiringError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("generator {k} has {got} strands, expected {n}")]
    Strands { k: usize, got: usize, n: usize },
    #[error("generator {k} is not a pure braid")]
    NotPure { k: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}, {source}")]
    Word { line: usize, source: ParseError },
}

/// Monodromy generators `λ_1..λ_s`, each tagged with its vertex wire set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monodromy {
    n: usize,
    values: Vec<BraidWord>,
    sets: Vec<Vec<usize>>,
}

impl Monodromy {
    pub fn new(n: usize, values: Vec<BraidWord>, sets: Vec<Vec<usize>>) -> Result<Self, MonodromyError> {
        if values.len() != sets.len() {
            return Err(MonodromyError::Syntax { line: 0, msg: "one vertex set per generator required".into() });
        }
        for (idx, v) in values.iter().enumerate() {
            if v.strands() != n {
                return Err(MonodromyError::Strands { k: idx + 1, got: v.strands(), n });
            }
            if !v.is_pure() {
                return Err(MonodromyError::NotPure { k: idx + 1 });
            }
        }
        Ok(Monodromy { n, values, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BraidWord] {
        &self.values
    }

    /// `λ_k`, 1-based.
    pub fn get(&self, k: usize) -> &BraidWord {
        &self.values[k - 1]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Each generator freely reduced.
    pub fn reduced(&self) -> Monodromy {
        Monodromy { values: self.values.iter().map(|b| b.free_reduced()).collect(), ..self.clone() }
    }

    /// Evaluates the homomorphism `x_k ↦ λ_k` on a word of `F_s`.
    pub fn eval(&self, w: &FreeWord) -> BraidWord {
        let mut out = BraidWord::identity(self.n);
        for &l in w.letters() {
            let b = &self.values[l.unsigned_abs() as usize - 1];
            out.append(&if l > 0 { b.clone() } else { b.inverse() });
        }
        out
    }

    /// `λ_1 ⋯ λ_s`.
    pub fn product(&self) -> BraidWord {
        let mut out = BraidWord::identity(self.n);
        for b in &self.values {
            out.append(b);
        }
        out
    }

    /// `ε` applied to every generator.
    pub fn epsilon(&self) -> Monodromy {
        Monodromy { values: self.values.iter().map(|b| b.epsilon()).collect(), ..self.clone() }
    }

    /// Elementwise equality under the word-problem oracle.
    pub fn equivalent_elementwise(&self, other: &Monodromy) -> bool {
        self.n == other.n
            && self.s() == other.s()
            && self
                .values
                .par_iter()
                .zip(&other.values)
                .all(|(a, b)| braids_equal(a, b).unwrap_or(false))
    }

    pub fn parse(text: &str) -> Result<Monodromy, MonodromyError> {
        let mut n: Option<usize> = None;
        let mut pending: Option<Vec<usize>> = None;
        let mut values = Vec::new();
        let mut sets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() {
                continue;
            }
            let syn = |msg: &str| MonodromyError::Syntax { line, msg: msg.to_string() };
            if let Some(c) = body.strip_prefix('#') {
                let c = c.trim();
                if let Some(rest) = c.strip_prefix("n =").or_else(|| c.strip_prefix("n=")) {
                    n = Some(rest.trim().parse().map_err(|_| syn("bad strand count"))?);
                } else if let Some(rest) = c.strip_prefix("V =").or_else(|| c.strip_prefix("V=")) {
                    let inner = rest.trim().trim_start_matches('{').trim_end_matches('}');
                    let set = inner
                        .split(',')
                        .map(|t| t.trim().parse::<usize>().map_err(|_| syn("bad vertex set")))
                        .collect::<Result<Vec<_>, _>>()?;
                    pending = Some(set);
                }
                continue;
            }
            let n = n.ok_or_else(|| syn("expected `# n = <int>` header first"))?;
            let set = pending.take().ok_or_else(|| syn("generator without a `# V = {..}` tag"))?;
            let word = parse_braid(body, n).map_err(|source| MonodromyError::Word { line, source })?;
            values.push(word);
            sets.push(set);
        }
        let n = n.ok_or(MonodromyError::Syntax { line: 0, msg: "missing `# n = <int>` header".into() })?;
        Monodromy::new(n, values, sets)
    }
}

fn fmt_set(set: &[usize]) -> String {
    set.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Monodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# n = {}", self.n)?;
        for (b, v) in self.values.iter().zip(&self.sets) {
            writeln!(f, "# V = {{{}}}", fmt_set(v))?;
            writeln!(f, "{b}")?;
        }
        Ok(())
    }
}

/// `λ_k = A_{V_k}^{C_k}` in pure form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureGenerator {
    pub set: Vec<usize>,
    pub conj: PureBraidWord,
}

impl PureGenerator {
    pub fn expand(&self) -> BraidWord {
        let n = self.conj.strands();
        let a = twist(&self.set, n).expect("vertex set").expand();
        a.conjugate_by(&self.conj.expand()).expect("same strands")
    }
}

impl fmt::Display for PureGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A[{}]", fmt_set(&self.set))?;
        if !self.conj.is_empty() {
            write!(f, "^{{{}}}", self.conj)?;
        }
        Ok(())
    }
}

/// Closed-form generator `A_V^J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistGenerator {
    pub set: Vec<usize>,
    pub j: Vec<usize>,
}

impl fmt::Display for TwistGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A[{}]", fmt_set(&self.set))?;
        if !self.j.is_empty() {
            write!(f, "^{{{{{}}}}}", fmt_set(&self.j))?;
        }
        Ok(())
    }
}

/// `β_1..β_s` with `β_1 = β_{0,1}` and `β_{k+1} = β_{k,k+1} · μ_{I_k} · β_k`.
pub fn conjugators(d: &Diagram) -> Vec<BraidWord> {
    let n = d.n();
    let mut out = Vec::with_capacity(d.s());
    let mut beta = d.initial().clone();
    for (k, v) in d.vertices().iter().enumerate() {
        out.push(beta.clone());
        if k + 1 < d.s() {
            let mut next = d.braid_after(k + 1).clone();
            next.append(&v.half_twist(n));
            next.append(&beta);
            beta = next;
        }
    }
    out
}

/// `λ_k = β_k⁻¹ A_{I_k} β_k`.
pub fn monodromy(d: &Diagram) -> Monodromy {
    let n = d.n();
    let values = conjugators(d)
        .iter()
        .zip(d.vertices())
        .map(|(beta, v)| {
            let set: Vec<usize> = v.heights().collect();
            twist(&set, n).expect("vertex").expand().conjugate_by(beta).expect("same strands")
        })
        .collect();
    Monodromy { n, values, sets: d.vertex_sets() }
}

/// Pure form of each generator, via `A_{I_k}^{β_k} = A_{V_k}^{C_k}`.
pub fn monodromy_pure(d: &Diagram) -> Vec<PureGenerator> {
    conjugators(d)
        .iter()
        .zip(d.vertices())
        .map(|(beta, v)| {
            let set: Vec<usize> = v.heights().collect();
            let (set, conj) = conj_set(&set, beta).expect("valid vertex");
            PureGenerator { set, conj }
        })
        .collect()
}

/// `(V_k, J_k)` for an unbraided diagram.
pub fn cf_generators(d: &Diagram) -> Result<Vec<TwistGenerator>, MonodromyError> {
    if d.s() > 0 {
        d.j_set(1)?;
    }
    Ok(d.vertex_sets().into_iter().zip(d.j_sets()).map(|(set, j)| TwistGenerator { set, j }).collect())
}

/// Closed-form generators `λ̂_k = B_{J_k}⁻¹ A_{V_k} B_{J_k}`.
pub fn cf_monodromy(d: &Diagram) -> Result<Monodromy, MonodromyError> {
    let n = d.n();
    let gens = cf_generators(d)?;
    let values = gens
        .iter()
        .map(|g| {
            let bj = b_j(&g.set, &g.j, n)?;
            Ok(bj.inverse().mul(&twist(&g.set, n)?).mul(&bj).expand())
        })
        .collect::<Result<Vec<_>, BraidError>>()?;
    Ok(Monodromy { n, values, sets: gens.into_iter().map(|g| g.set).collect() })
}

/// `λ_1 ⋯ λ_s ≖ Δ²`.
pub fn infinity_check(m: &Monodromy) -> bool {
    match delta_sq(m.n) {
        Ok(d) => braids_equal(&m.product(), &d).unwrap_or(false),
        Err(_) => false,
    }
}

/// Monodromy of the conjugate arrangement predicted from `m`:
/// `λ̄_k = ε(λ_1⋯λ_{k-1} λ_k⁻¹ λ_{k-1}⁻¹⋯λ_1⁻¹)`.
pub fn conjugate_monodromy(m: &Monodromy) -> Monodromy {
    let mut values = Vec::with_capacity(m.s());
    let mut pre = BraidWord::identity(m.n);
    for b in &m.values {
        let mut w = pre.clone();
        w.append(&b.inverse());
        w.append(&pre.inverse());
        values.push(w.epsilon());
        pre.append(b);
    }
    Monodromy { n: m.n, values, sets: m.sets.clone() }
}

/// `λ̄_k ≖ ε(λ_1⋯λ_{k-1} λ_k⁻¹ λ_{k-1}⁻¹⋯λ_1⁻¹)` for every `k`.
pub fn conjugate_relation_check(m: &Monodromy, mbar: &Monodromy) -> bool {
    if m.n != mbar.n || m.s() != mbar.s() {
        return false;
    }
    conjugate_monodromy(m).equivalent_elementwise(mbar)
}

/// `M̄(δ_s(x_k)) ≖ ε(λ_k)` for every `k`.
pub fn conjugate_equivalence_check(m: &Monodromy, mbar: &Monodromy) -> bool {
    if m.n != mbar.n || m.s() != mbar.s() {
        return false;
    }
    let delta = FreeEndo::delta(m.s());
    (1..=m.s()).into_par_iter().all(|k| {
        let lhs = mbar.eval(&delta.image(k));
        braids_equal(&lhs, &m.values[k - 1].epsilon()).unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::pure_gen;
    use crate::wiring::Vertex;

    fn pencil(n: usize) -> Diagram {
        Diagram::unbraided(n, vec![Vertex::new(1, n)]).unwrap()
    }

    #[test]
    fn pencil_is_full_twist() {
        for n in 2..=5 {
            let m = monodromy(&pencil(n));
            assert_eq!(m.s(), 1);
            assert!(braids_equal(m.get(1), &delta_sq(n).unwrap()).unwrap());
            assert!(infinity_check(&m));
            assert!(conjugators(&pencil(n))[0].is_empty());
        }
    }

    #[test]
    fn second_conjugator_is_half_twist() {
        let d = Diagram::from_vertex_sets(3, &[vec![1, 2], vec![1, 3]]).unwrap();
        let b = conjugators(&d);
        assert_eq!(b[1].letters(), &[1]);
    }

    #[test]
    fn generic_triangle() {
        let d = Diagram::from_vertex_sets(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let m = monodromy(&d);
        let cf = cf_monodromy(&d).unwrap();
        assert!(m.equivalent_elementwise(&cf));
        assert!(infinity_check(&m));
        for (k, (i, j)) in [(1, 2), (1, 3), (2, 3)].iter().enumerate() {
            let p = &monodromy_pure(&d)[k];
            assert_eq!(p.set, vec![*i, *j]);
            assert!(braids_equal(&p.expand(), m.get(k + 1)).unwrap());
            assert!(braids_equal(&p.expand(), &pure_gen(*i, *j, 3).unwrap()).unwrap());
        }
    }

    #[test]
    fn infinity_fails_without_vertices() {
        let d = Diagram::unbraided(2, vec![]).unwrap();
        assert!(!infinity_check(&monodromy(&d)));
    }

    #[test]
    fn conjugate_checks_on_unbraided() {
        let d = Diagram::unbraided(4, vec![Vertex::new(3, 2), Vertex::new(2, 2), Vertex::new(1, 3), Vertex::new(2, 2)]).unwrap();
        let m = monodromy(&d);
        let mbar = monodromy(&d.conjugate());
        assert!(conjugate_relation_check(&m, &mbar));
        assert!(conjugate_equivalence_check(&m, &mbar));
        let short = Monodromy::new(4, m.values()[..2].to_vec(), m.sets()[..2].to_vec()).unwrap();
        assert!(!conjugate_relation_check(&m, &short));
        assert!(!conjugate_equivalence_check(&m, &short));
    }

    #[test]
    fn braided_input_rejected_by_closed_form() {
        let d = Diagram::parse("n=3\nv 1 2\nb \"s2\"\nv 1 2\n").unwrap();
        assert!(cf_monodromy(&d).is_err());
    }

    #[test]
    fn text_round_trip() {
        let d = Diagram::from_vertex_sets(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let m = monodromy(&d);
        let back = Monodromy::parse(&m.to_string()).unwrap();
        assert_eq!(back, m);
        assert!(Monodromy::parse("# n = 2\ns1 s1\n").is_err());
        assert!(Monodromy::parse("# n = 2\n# V = {1,2}\ns1\n").is_err());
    }

    #[test]
    fn display_forms() {
        let d = Diagram::from_vertex_sets(3, &[vec![2, 3], vec![1, 3]]).unwrap();
        let cf = cf_generators(&d).unwrap();
        assert_eq!(cf[1].to_string(), "A[1,3]^{{2}}");
        assert_eq!(cf[0].to_string(), "A[2,3]");
    }
}
