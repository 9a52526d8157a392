//! Worked examples: diagrams, printed monodromy vectors, witnesses and
//! arrangement coefficients.

use std::fmt;
use std::str::FromStr;

use crate::braid::BraidWord;
use crate::monodromy::Monodromy;
use crate::parse::parse_braid;
use crate::wiring::Diagram;

/// Falk arrangement `A` (two triple points not sharing a line).
pub const FALK_A_SETS: [&[usize]; 11] = [
    &[1, 2, 3], &[4, 5, 6], &[1, 6], &[2, 6], &[3, 6], &[1, 5], &[2, 5], &[3, 5], &[1, 4], &[2, 4], &[3, 4],
];

pub const FALK_A_PRINTED: [&str; 11] = [
    "A[1,2,3]", "A[4,5,6]", "A[1,6]^{{4,5}}", "A[2,6]^{{4,5}}", "A[3,6]^{{4,5}}", "A[1,5]^{{4}}",
    "A[2,5]^{{4}}", "A[3,5]^{{4}}", "A[1,4]", "A[2,4]", "A[3,4]",
];

/// Falk arrangement `A'` (two triple points on a common line).
pub const FALK_A2_SETS: [&[usize]; 11] = [
    &[1, 2, 3], &[1, 4, 5], &[2, 5], &[3, 5], &[2, 4], &[3, 4], &[1, 6], &[2, 6], &[3, 6], &[4, 6], &[5, 6],
];

pub const FALK_A2_PRINTED: [&str; 11] = [
    "A[1,2,3]", "A[1,4,5]", "A[2,5]^{{4}}", "A[3,5]^{{4}}", "A[2,4]", "A[3,4]", "A[1,6]", "A[2,6]", "A[3,6]",
    "A[4,6]", "A[5,6]",
];

pub const FS_PLUS_SETS: [&[usize]; 15] = [
    &[1, 2, 3], &[1, 4], &[1, 5, 6], &[1, 7], &[1, 8, 9], &[2, 4, 6], &[2, 5, 7, 9], &[4, 9], &[3, 6, 9],
    &[3, 4, 7], &[2, 8], &[3, 5], &[3, 8], &[4, 5, 8], &[6, 7, 8],
];

pub const FS_PLUS_PRINTED: [&str; 15] = [
    "A[1,2,3]", "A[1,4]", "A[1,5,6]", "A[1,7]", "A[1,8,9]", "A[2,4,6]^{{5}}", "A[2,5,7,9]^{{8}}",
    "A[4,9]^{{5,7,8}}", "A[3,6,9]^{{4,5,7,8}}", "A[3,4,7]^{{5}}", "A[2,8]", "A[3,5]", "A[3,8]", "A[4,5,8]",
    "A[6,7,8]",
];

pub const FS_MINUS_SETS: [&[usize]; 15] = [
    &[6, 7], &[5, 7], &[2, 3], &[2, 4, 7], &[2, 5, 6], &[2, 8], &[1, 3, 7], &[1, 4, 6], &[1, 5, 8], &[4, 8],
    &[1, 2, 9], &[3, 6, 8], &[3, 4, 5, 9], &[6, 9], &[7, 8, 9],
];

pub const FS_MINUS_PRINTED: [&str; 15] = [
    "A[6,7]", "A[5,7]^{{6}}", "A[2,3]", "A[2,4,7]^{{5,6}}", "A[2,5,6]", "A[2,8]", "A[1,3,7]^{{2,4,5,6}}",
    "A[1,4,6]^{{2,5}}", "A[1,5,8]^{{2}}", "A[4,8]^{{5}}", "A[1,2,9]", "A[3,6,8]^{{4,5}}", "A[3,4,5,9]",
    "A[6,9]", "A[7,8,9]",
];

/// Witness with `λ⁺ ∘ ψ = conj_φ ∘ λ⁻`.
pub const FS_PSI: &str = "(s1 s2 s3 s4 s5 s6 s7 s8 s9 s10 s11 s12 s13 s14)^4 s6 mu[3,6] s6 s10 s11 s12 s13 \
                          mu[7,10] s10 mu[11,15] s4 s5 s6 s9 s10 mu[6,9] s5 s11";
pub const FS_PHI: &str = "(s8 s7 s6 s5 s4 s3 s2 s1)^4 s3 s4 s3 s2 s5 s6";

/// MacLane diagram `W⁺`: local indices and intermediate braids.
pub const MACLANE_PLUS: &str = "n=7
v 4 3
v 3 2
v 1 3
b \"s4 s5^-1\"
v 3 3
b \"s3^-1 s2 s5 s3 s4\"
v 4 2
b \"s2^-1 s3 s4^-1\"
v 6 2
b \"s3^-1\"
v 4 3
v 2 3
";

pub const MACLANE_PLUS_PRINTED: [&str; 8] = [
    "A[4,5,6]", "A[3,6]", "A[1,2,6]", "A[1,3,4]", "A[2,5]^{A[3,5] A[4,5] A[5,7]}", "A[4,7]", "A[1,5,7]",
    "A[2,3,7]^{A[4,7] A[5,7] A[3,4]}",
];

pub const MACLANE_MINUS_PRINTED: [&str; 8] = [
    "A[4,5,6]", "A[3,6]", "A[1,2,6]", "A[1,3,4]", "A[2,5]", "A[4,7]^{A[5,7]}", "A[1,5,7]",
    "A[2,3,7]^{A[5,7]}",
];

/// MacLane lines after deconing, in coordinates `X = 3y + z`, `Z = y`, over
/// `ℚ(√-3)`: `a0 a1 b0 b1` with `Z = a X + b`. Lines in order: `y=0`,
/// `z=0`, `y=1`, `z=1`, `z=-ωy`, `z=-ω²-ωy`, `z=1+ω²y` with
/// `ω = (-1+√-3)/2`.
pub const MACLANE_ARRANGEMENT: &str = "field -3
# y = 0
0 0 0 0
# z = 0
1/3 0 0 0
# y = 1
0 0 1 0
# z = 1
1/3 0 -1/3 0
# z = -w y
7/26 1/26 0 0
# z = -w^2 - w y
7/26 1/26 -1/13 -2/13
# z = 1 + w^2 y
5/14 1/14 -5/14 -1/14
";

/// `z = 0`, `z = x`, `z = x/2`: a sheared central triple.
pub const EXAMPLE73A: &str = "field 1
0 0 0 0
1 0 0 0
1/2 0 0 0
";

/// `z = x`, `z = 0`, `z = x - 1`: two parallel lines and a transversal.
pub const EXAMPLE73B: &str = "field 1
1 0 0 0
0 0 0 0
1 0 -1 0
";

/// Named examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureId {
    FalkA,
    FalkA2,
    FsPlus,
    FsMinus,
    MaclanePlus,
    MaclaneMinus,
    Pencil(usize),
    Example73a,
    Example73b,
    MaclaneArrangement,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown fixture `{0}`")]
pub struct UnknownFixture(pub String);

impl FromStr for FixtureId {
    type Err = UnknownFixture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use FixtureId::*;
        Ok(match s {
            "falkA" => FalkA,
            "falkA2" => FalkA2,
            "fs_plus" => FsPlus,
            "fs_minus" => FsMinus,
            "maclane_plus" => MaclanePlus,
            "maclane_minus" => MaclaneMinus,
            "example73a" => Example73a,
            "example73b" => Example73b,
            "maclane_arrangement" => MaclaneArrangement,
            _ => {
                let n = s
                    .strip_prefix("pencil(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&n| n >= 2)
                    .ok_or_else(|| UnknownFixture(s.to_string()))?;
                Pencil(n)
            }
        })
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FixtureId::*;
        match self {
            FalkA => f.write_str("falkA"),
            FalkA2 => f.write_str("falkA2"),
            FsPlus => f.write_str("fs_plus"),
            FsMinus => f.write_str("fs_minus"),
            MaclanePlus => f.write_str("maclane_plus"),
            MaclaneMinus => f.write_str("maclane_minus"),
            Pencil(n) => write!(f, "pencil({n})"),
            Example73a => f.write_str("example73a"),
            Example73b => f.write_str("example73b"),
            MaclaneArrangement => f.write_str("maclane_arrangement"),
        }
    }
}

/// A fixture is either a wiring diagram or an arrangement file.
pub enum Fixture {
    Diagram(Diagram),
    Arrangement(&'static str),
}

impl FixtureId {
    pub fn load(self) -> Fixture {
        use FixtureId::*;
        match self {
            Example73a => Fixture::Arrangement(EXAMPLE73A),
            Example73b => Fixture::Arrangement(EXAMPLE73B),
            MaclaneArrangement => Fixture::Arrangement(MACLANE_ARRANGEMENT),
            _ => Fixture::Diagram(self.diagram().expect("diagram fixture")),
        }
    }

    /// The diagram, for diagram fixtures.
    pub fn diagram(self) -> Option<Diagram> {
        use FixtureId::*;
        let from = |n: usize, sets: &[&[usize]]| {
            let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
            Diagram::from_vertex_sets(n, &sets).expect("fixture sets are contiguous")
        };
        Some(match self {
            FalkA => from(6, &FALK_A_SETS),
            FalkA2 => from(6, &FALK_A2_SETS),
            FsPlus => from(9, &FS_PLUS_SETS),
            FsMinus => from(9, &FS_MINUS_SETS),
            MaclanePlus => maclane_plus(),
            MaclaneMinus => maclane_plus().conjugate(),
            Pencil(n) => from(n, &[&(1..=n).collect::<Vec<_>>()]),
            _ => return None,
        })
    }

    /// The monodromy vector printed for this example, if any.
    pub fn printed(self) -> Option<Monodromy> {
        use FixtureId::*;
        let (n, words, sets): (usize, &[&str], Vec<Vec<usize>>) = match self {
            FalkA => (6, &FALK_A_PRINTED, to_vecs(&FALK_A_SETS)),
            FalkA2 => (6, &FALK_A2_PRINTED, to_vecs(&FALK_A2_SETS)),
            FsPlus => (9, &FS_PLUS_PRINTED, to_vecs(&FS_PLUS_SETS)),
            FsMinus => (9, &FS_MINUS_PRINTED, to_vecs(&FS_MINUS_SETS)),
            MaclanePlus => (7, &MACLANE_PLUS_PRINTED, maclane_plus().vertex_sets()),
            MaclaneMinus => (7, &MACLANE_MINUS_PRINTED, maclane_plus().vertex_sets()),
            _ => return None,
        };
        let values = words.iter().map(|w| parse_braid(w, n).expect("fixture word")).collect();
        Some(Monodromy::new(n, values, sets).expect("fixture words are pure"))
    }
}

fn to_vecs(sets: &[&[usize]]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.to_vec()).collect()
}

pub fn maclane_plus() -> Diagram {
    Diagram::parse(MACLANE_PLUS).expect("fixture")
}

/// The printed witness `(ψ, φ)`.
pub fn fs_witness() -> (BraidWord, BraidWord) {
    (parse_braid(FS_PSI, 15).expect("fixture"), parse_braid(FS_PHI, 9).expect("fixture"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::cf_generators;

    #[test]
    fn ids_round_trip() {
        for s in ["falkA", "falkA2", "fs_plus", "fs_minus", "maclane_plus", "maclane_minus", "pencil(4)", "example73a"] {
            assert_eq!(s.parse::<FixtureId>().unwrap().to_string(), s);
        }
        assert!("pencil(1)".parse::<FixtureId>().is_err());
        assert!("nope".parse::<FixtureId>().is_err());
    }

    #[test]
    fn closed_form_reproduces_printed_j_sets() {
        for (id, printed) in [
            (FixtureId::FalkA, &FALK_A_PRINTED[..]),
            (FixtureId::FalkA2, &FALK_A2_PRINTED[..]),
            (FixtureId::FsPlus, &FS_PLUS_PRINTED[..]),
            (FixtureId::FsMinus, &FS_MINUS_PRINTED[..]),
        ] {
            let gens = cf_generators(&id.diagram().unwrap()).unwrap();
            let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            assert_eq!(shown, printed, "{id}");
        }
    }

    #[test]
    fn maclane_table() {
        let d = maclane_plus();
        assert_eq!(d.s(), 8);
        assert_eq!(d.local_index(4).unwrap().low, 3);
        assert_eq!(d.braids().iter().filter(|b| !b.is_empty()).count(), 4);
        assert_eq!(FixtureId::MaclaneMinus.diagram().unwrap().braid_after(3).letters(), &[-4, 5]);
    }
}
