//! `braidmon` command line. Reads a file or stdin, writes to stdout.
//!
//! Exit codes: 0 success, 1 a check came out false, 2 bad input or usage.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use braidmon::extract::{extract, extract_diagram, random_real_arrangement, Arrangement, Shear};
use braidmon::fixtures::{fs_witness, Fixture, FixtureId};
use braidmon::lattice::{lattice_invariants, lattice_isomorphic, lattice_of, VertexMap};
use braidmon::markov::{applicable_moves, apply_move, move_effect, witness_check, Conjugation, EquivalenceWitness, MoveSpec};
use braidmon::monodromy::{cf_generators, conjugate_monodromy, infinity_check, monodromy, monodromy_pure, Monodromy};
use braidmon::presentation::{
    abelianization, arvola_presentation, braid_presentation, braid_presentation_full, hom_count, randell_presentation, tietze_simplify,
    Presentation, PresentationError, DEFAULT_HOM_BUDGET,
};
use braidmon::wiring::{random_diagram, Diagram};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const GRAMMAR: &str = "\
Input formats (detected from the first line):
  arrangement   `field <d>` then one line `a0 a1 b0 b1` per line z = a·x + b, a = a0 + a1·√d
  diagram       `n=<wires>`, optional `initial=\"<braid>\"`, then `v <low> <size>` and `b \"<braid>\"` lines
  monodromy     `# n = <wires>`, then `# V = {i,j,..}` before each braid word
  presentation  `gens <n>`, then one relator per line in t1..tn
  lattice       one vertex per line, wires separated by commas

Braid words: s<i>, s<i>^-1, A[i,j], A[i1,..,ir], mu[i,j], D2, postfix ^-1,
  conjugation X^{ <braid> }, J-sets A[..]^{{j1,j2}}; juxtaposition is product.
Free words: t1..tn or x1..xs, inverse suffix ^-1.
Moves: 1:<braid>, 2:<braid>, 3[a|b|c][-]@k, 4@k[:<braid>], 5[a|b|c|d][-]@k.
Witness files: two lines, ψ in B_s then φ in B_n.";

#[derive(Parser)]
#[command(name = "braidmon", version, about = "Braid monodromy of line arrangements", after_help = GRAMMAR)]
struct Cli {
    /// Seed for `random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tuple budget for hom counts.
    #[arg(long, global = true, default_value_t = DEFAULT_HOM_BUDGET)]
    budget: u128,
    /// Emit the opposite crossing sign during extraction.
    #[arg(long, global = true)]
    flip_crossings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arrangement to braided wiring diagram.
    Extract {
        input: Option<String>,
        /// `c0` or `c0 c1` for x' = x + (c0 + c1·√d)·z; searched when absent.
        #[arg(long, allow_hyphen_values = true)]
        shear: Option<String>,
    },
    /// Diagram to monodromy generators.
    Monodromy {
        input: Option<String>,
        /// Pure form A[V]^{conjugator}.
        #[arg(long, conflicts_with = "cf")]
        pure: bool,
        /// Closed form A[V]^{{J}} (unbraided diagrams).
        #[arg(long)]
        cf: bool,
    },
    /// Fundamental-group presentation.
    Present {
        input: Option<String>,
        #[arg(long, value_enum, default_value_t = Algorithm::Arvola)]
        algorithm: Algorithm,
        /// Keep every relator of each vertex (monodromy algorithm).
        #[arg(long)]
        full: bool,
        /// Apply Tietze simplification; `eliminate` also removes generators.
        #[arg(long, value_enum)]
        simplify: Option<Simplify>,
    },
    /// Vertex incidences.
    Lattice {
        input: Option<String>,
        /// Print isomorphism invariants instead.
        #[arg(long)]
        profile: bool,
    },
    /// Decide whether two inputs have isomorphic lattices.
    CompareLattice { first: String, second: String },
    /// Check a (ψ, φ) witness between two monodromies.
    VerifyWitness {
        first: String,
        second: String,
        witness: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        conjugation: Side,
    },
    /// Apply Markov moves in order.
    Markov {
        input: Option<String>,
        #[arg(long = "move", allow_hyphen_values = true)]
        moves: Vec<String>,
        /// List applicable parameter-free moves instead.
        #[arg(long)]
        list: bool,
        /// Print the witness certifying the (single) move instead.
        #[arg(long)]
        witness: bool,
    },
    /// Abelianization and homomorphism count into Sym(3) or Sym(4).
    Invariants {
        input: Option<String>,
        #[arg(long, value_enum, default_value_t = Target::S3)]
        target: Target,
    },
    /// Whether the product of the generators equals the full twist.
    CheckInfinity { input: Option<String> },
    /// Conjugate diagram, monodromy or arrangement.
    Conjugate { input: Option<String> },
    /// Print built-in example data.
    Fixture {
        id: String,
        /// The printed monodromy vector.
        #[arg(long, conflicts_with = "witness")]
        printed: bool,
        /// The printed equivalence witness (fs fixtures).
        #[arg(long)]
        witness: bool,
    },
    /// Random diagram or real arrangement from `--seed`.
    Random {
        #[arg(long, default_value_t = 5)]
        wires: usize,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        /// Maximum letters per intermediate braid.
        #[arg(long, default_value_t = 0)]
        braid: usize,
        /// Emit a real arrangement with `wires` lines instead.
        #[arg(long)]
        arrangement: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Monodromy,
    Arvola,
    Randell,
}

#[derive(Clone, Copy, ValueEnum)]
enum Simplify {
    Relators,
    Eliminate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    S3,
    S4,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}: {1}")]
    Io(String, io::Error),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Extract(#[from] braidmon::extract::ExtractError),
    #[error(transparent)]
    Wiring(#[from] braidmon::wiring::WiringError),
    #[error(transparent)]
    Monodromy(#[from] braidmon::monodromy::MonodromyError),
    #[error(transparent)]
    Markov(#[from] braidmon::markov::MarkovError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Lattice(#[from] braidmon::lattice::LatticeError),
}

/// Parsed input of any supported kind.
enum Input {
    Arrangement(Arrangement),
    Diagram(Diagram),
    Monodromy(Monodromy),
    Presentation(Presentation),
    Lattice(VertexMap),
}

fn read(path: Option<&str>) -> Result<String, CliError> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io("stdin".into(), e))?;
            Ok(s)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Io(p.into(), e)),
    }
}

fn parse_input(text: &str) -> Result<Input, CliError> {
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            let c = c.trim_start();
            if c.starts_with("n=") || c.starts_with("n =") {
                return Ok(Input::Monodromy(Monodromy::parse(text)?));
            }
            continue;
        }
        if line.starts_with("field") {
            return Ok(Input::Arrangement(Arrangement::parse(text)?));
        }
        if line.starts_with("n=") || line.starts_with("n =") {
            return Ok(Input::Diagram(Diagram::parse(text)?));
        }
        if line.starts_with("gens") {
            return Ok(Input::Presentation(Presentation::parse(text)?));
        }
        if line.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) {
            return Ok(Input::Lattice(VertexMap::parse(text, None)?));
        }
        return Err(CliError::Input(format!("unrecognised input starting `{line}`")));
    }
    Err(CliError::Input("empty input".into()))
}

fn load(path: Option<&str>) -> Result<Input, CliError> {
    parse_input(&read(path)?)
}

fn want_diagram(input: Input) -> Result<Diagram, CliError> {
    match input {
        Input::Diagram(d) => Ok(d),
        _ => Err(CliError::Input("expected a diagram".into())),
    }
}

fn want_monodromy(input: Input) -> Result<Monodromy, CliError> {
    match input {
        Input::Diagram(d) => Ok(monodromy(&d)),
        Input::Monodromy(m) => Ok(m),
        _ => Err(CliError::Input("expected a diagram or monodromy".into())),
    }
}

fn monodromy_lines(n: usize, items: impl IntoIterator<Item = (Vec<usize>, String)>) -> String {
    let mut out = format!("# n = {n}\n");
    for (set, word) in items {
        let set: Vec<String> = set.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("# V = {{{}}}\n{word}\n", set.join(",")));
    }
    out
}

/// Output text and exit status.
type Outcome = (String, u8);

fn ok(text: String) -> Result<Outcome, CliError> {
    Ok((text, 0))
}

fn verdict(text: &str, good: bool) -> Result<Outcome, CliError> {
    Ok((format!("{text}\n"), if good { 0 } else { 1 }))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Extract { input, shear } => {
            let a = match load(input.as_deref())? {
                Input::Arrangement(a) => a,
                _ => return Err(CliError::Input("expected an arrangement".into())),
            };
            let e = match shear {
                Some(c) => extract_diagram(&a, &c.parse::<Shear>()?, cli.flip_crossings)?,
                None => extract(&a, cli.flip_crossings)?,
            };
            let labels: Vec<String> = e.labels.iter().map(|l| l.to_string()).collect();
            ok(format!("# shear {}\n# lines by wire {}\n{}", e.shear, labels.join(" "), e.diagram))
        }
        Command::Monodromy { input, pure, cf } => {
            let d = want_diagram(load(input.as_deref())?)?;
            let n = d.n();
            if cf {
                ok(monodromy_lines(n, cf_generators(&d)?.into_iter().map(|g| (g.set.clone(), g.to_string()))))
            } else if pure {
                ok(monodromy_lines(n, monodromy_pure(&d).into_iter().map(|g| (g.set.clone(), g.to_string()))))
            } else {
                ok(monodromy(&d).reduced().to_string())
            }
        }
        Command::Present { input, algorithm, full, simplify } => {
            let input = load(input.as_deref())?;
            let p = match algorithm {
                Algorithm::Monodromy => {
                    let m = want_monodromy(input)?;
                    if full {
                        braid_presentation_full(&m)
                    } else {
                        braid_presentation(&m)
                    }
                }
                Algorithm::Arvola => arvola_presentation(&want_diagram(input)?),
                Algorithm::Randell => randell_presentation(&want_diagram(input)?)?,
            };
            let p = match simplify {
                None => p,
                Some(s) => tietze_simplify(&p, matches!(s, Simplify::Eliminate)),
            };
            ok(p.to_string())
        }
        Command::Lattice { input, profile } => {
            let v = lattice_input(load(input.as_deref())?)?;
            ok(if profile { lattice_invariants(&v).to_string() } else { v.to_string() })
        }
        Command::CompareLattice { first, second } => {
            let v = lattice_input(load(Some(&first))?)?;
            let w = lattice_input(load(Some(&second))?)?;
            match lattice_isomorphic(&v, &w) {
                Some((pi, rho)) => {
                    let show = |p: &braidmon::Perm| p.images().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
                    ok(format!("isomorphic\npi {}\nrho {}\n", show(&pi), show(&rho)))
                }
                None => verdict("not isomorphic", false),
            }
        }
        Command::VerifyWitness { first, second, witness, conjugation } => {
            let m = want_monodromy(load(Some(&first))?)?;
            let m2 = want_monodromy(load(Some(&second))?)?;
            let w = EquivalenceWitness::parse(&read(Some(&witness))?, m.s(), m.n())?;
            let dir = match conjugation {
                Side::Right => Conjugation::Right,
                Side::Left => Conjugation::Left,
            };
            let good = witness_check(&m, &m2, &w, dir)?;
            verdict(if good { "certified" } else { "not certified" }, good)
        }
        Command::Markov { input, moves, list, witness } => {
            let mut d = want_diagram(load(input.as_deref())?)?;
            if list {
                return ok(applicable_moves(&d).iter().map(|m| format!("{m}\n")).collect());
            }
            let specs = moves.iter().map(|m| m.parse::<MoveSpec>()).collect::<Result<Vec<_>, _>>()?;
            if witness {
                let [m] = &specs[..] else {
                    return Err(CliError::Input("--witness takes exactly one --move".into()));
                };
                return ok(move_effect(m, d.n())?.witness(d.s(), d.n()).to_string());
            }
            for m in &specs {
                d = apply_move(&d, m)?;
            }
            ok(d.to_string())
        }
        Command::Invariants { input, target } => {
            let p = match load(input.as_deref())? {
                Input::Presentation(p) => p,
                Input::Diagram(d) => arvola_presentation(&d),
                Input::Monodromy(m) => braid_presentation(&m),
                _ => return Err(CliError::Input("expected a presentation, diagram or monodromy".into())),
            };
            let k = match target {
                Target::S3 => 3,
                Target::S4 => 4,
            };
            let head = format!("generators {}\nrelators {}\nabelianization {}\n", p.generators(), p.relators().len(), abelianization(&p));
            match hom_count(&p, k, cli.budget) {
                Ok(c) => ok(format!("{head}hom-count s{k} {c}\n")),
                Err(e @ PresentationError::Budget { .. }) => Ok((format!("{head}hom-count s{k} inconclusive: {e}\n"), 1)),
                Err(e) => Err(e.into()),
            }
        }
        Command::CheckInfinity { input } => {
            let good = infinity_check(&want_monodromy(load(input.as_deref())?)?);
            verdict(if good { "true" } else { "false" }, good)
        }
        Command::Conjugate { input } => ok(match load(input.as_deref())? {
            Input::Diagram(d) => d.conjugate().to_string(),
            Input::Monodromy(m) => conjugate_monodromy(&m).to_string(),
            Input::Arrangement(a) => a.conjugate().to_string(),
            _ => return Err(CliError::Input("expected a diagram, monodromy or arrangement".into())),
        }),
        Command::Fixture { id, printed, witness } => {
            let id: FixtureId = id.parse().map_err(|e: braidmon::fixtures::UnknownFixture| CliError::Input(e.to_string()))?;
            if printed {
                return match id.printed() {
                    Some(m) => ok(m.to_string()),
                    None => Err(CliError::Input(format!("no printed vector for {id}"))),
                };
            }
            if witness {
                return match id {
                    FixtureId::FsPlus | FixtureId::FsMinus => {
                        let (psi, phi) = fs_witness();
                        ok(EquivalenceWitness { psi, phi }.to_string())
                    }
                    _ => Err(CliError::Input(format!("no printed witness for {id}"))),
                };
            }
            ok(match id.load() {
                Fixture::Diagram(d) => d.to_string(),
                Fixture::Arrangement(text) => text.to_string(),
            })
        }
        Command::Random { wires, vertices, braid, arrangement } => {
            if wires < 2 {
                return Err(CliError::Input("need at least two wires".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            ok(if arrangement {
                random_real_arrangement(wires, &mut rng, false).to_string()
            } else {
                random_diagram(wires, vertices, braid, &mut rng).to_string()
            })
        }
    }
}

fn lattice_input(input: Input) -> Result<VertexMap, CliError> {
    Ok(match input {
        Input::Arrangement(a) => lattice_of(&a),
        Input::Diagram(d) => lattice_of(&d),
        Input::Monodromy(m) => lattice_of(&m),
        Input::Lattice(v) => v,
        Input::Presentation(_) => return Err(CliError::Input("a presentation carries no lattice".into())),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            eprintln!("\n{GRAMMAR}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            let mut out = io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
