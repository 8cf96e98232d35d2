//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards process arguments and the exit code.

mod json;
mod parse;

use std::ffi::OsString;
use std::io::{self, BufRead, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::constructions;
use crate::decide::{self, DecideError};
use crate::endspace::{self, NormalForm};
use crate::homology::{self, HomologyError, IntegerMatrix, SeriesKind};
use crate::ordinal::compare;
use crate::surface;

pub use parse::{parse_endspace, parse_ordinal, parse_presentation, parse_surface, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "infsurf", version, about = "Ordinal end-spaces, surface descriptors and their homology verdicts")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ordinal arithmetic in Cantor normal form
    #[command(subcommand)]
    Ord(OrdCommand),
    /// Unmarked end-space expressions
    #[command(subcommand)]
    Ends(EndsCommand),
    /// Surface descriptors
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Answer questions I, II and III for a surface
    Decide(DecideArgs),
    /// Integer linear algebra and presentations
    #[command(subcommand)]
    Hom(HomCommand),
    /// Combinatorial constructions
    #[command(subcommand)]
    Construct(ConstructCommand),
}

#[derive(Subcommand, Debug)]
enum OrdCommand {
    /// Normalize an ordinal expression
    Eval { ordinal: String },
    /// Compare two ordinals
    Compare { a: String, b: String },
}

#[derive(Subcommand, Debug)]
enum EndsCommand {
    /// Canonical form, or the irreducible remainder
    Normalize { expr: String },
    /// Countability, isolated points, rank, kernel, distinguished-set size
    Invariants { expr: String },
    /// Homeomorphism test
    Homeo { a: String, b: String },
}

#[derive(Subcommand, Debug)]
enum SurfaceCommand {
    /// Check closedness of the nonplanar ends and the genus marks
    Validate { surface: String },
    /// Genus, boundary, punctures, mixed ends, end-space invariants
    Invariants { surface: String },
    /// Homeomorphism test
    Homeo { a: String, b: String },
}

#[derive(Args, Debug)]
struct DecideArgs {
    /// Surface descriptor
    #[arg(required_unless_present = "jsonl", conflicts_with = "jsonl")]
    surface: Option<String>,
    /// Decide one descriptor per line, writing one JSON verdict per line
    #[arg(long, value_name = "FILE")]
    jsonl: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum HomCommand {
    /// Smith normal form of an integer matrix given as JSON rows
    Snf { matrix: String },
    /// Abelianize a presentation `gens=n; rel=...` or a preset
    Abelianize {
        #[arg(required_unless_present = "preset", conflicts_with = "preset")]
        presentation: Option<String>,
        /// braid, symmetric, spherical_braid or sl2z
        #[arg(long)]
        preset: Option<String>,
        /// Strands or points for the preset families
        #[arg(long, default_value_t = 2)]
        n: u64,
    },
    /// Poincaré series coefficients
    Poincare {
        /// torus or wreath
        #[arg(long)]
        kind: SeriesKind,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_degree: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// The first COUNT cells of the snake enumeration of Z × N
    Snake { count: usize },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
    offset: Option<usize>,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure {
            code: EXIT_PARSE,
            offset: Some(e.offset),
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn invalid(e: impl ToString) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
            offset: None,
        }
    }

    fn kind(&self) -> &'static str {
        match self.code {
            EXIT_PARSE => "parse",
            EXIT_INVALID => "validation",
            _ => "internal",
        }
    }

    fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind(), "message": self.message, "offset": self.offset}})
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        Failure::invalid(e)
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        Failure::invalid(e)
    }
}

type Outcome = Result<String, Failure>;

fn emit(json: bool, value: Value, text: String) -> Outcome {
    Ok(if json {
        serde_json::to_string_pretty(&value).expect("json serializes")
    } else {
        text
    })
}

fn run_ord(cmd: OrdCommand, as_json: bool) -> Outcome {
    match cmd {
        OrdCommand::Eval { ordinal } => {
            let o = parse_ordinal(&ordinal)?;
            emit(as_json, json::ordinal(&o), o.to_string())
        }
        OrdCommand::Compare { a, b } => {
            let (a, b) = (parse_ordinal(&a)?, parse_ordinal(&b)?);
            let ord = compare(&a, &b);
            let (sym, word) = match ord {
                std::cmp::Ordering::Less => ("<", "less"),
                std::cmp::Ordering::Equal => ("=", "equal"),
                std::cmp::Ordering::Greater => (">", "greater"),
            };
            emit(
                as_json,
                json!({"a": a.to_string(), "b": b.to_string(), "order": word}),
                format!("{a} {sym} {b}"),
            )
        }
    }
}

fn run_ends(cmd: EndsCommand, as_json: bool) -> Outcome {
    match cmd {
        EndsCommand::Normalize { expr } => {
            let e = parse_endspace(&expr)?.unmarked();
            let nf = endspace::normalize(&e);
            let text = match &nf {
                NormalForm::Canonical(c) => c.to_string(),
                NormalForm::Irreducible(r) => format!("irreducible: {r}"),
            };
            emit(as_json, json::normal_form(&nf), text)
        }
        EndsCommand::Invariants { expr } => {
            let e = parse_endspace(&expr)?.unmarked();
            let inv = endspace::invariants(&e);
            let nf = endspace::normalize(&e);
            let rank = inv
                .scattered_rank
                .as_ref()
                .map_or("undecided".to_string(), ToString::to_string);
            let text = format!(
                "normal form: {nf}\ncountable: {}\nisolated points: {}\nscattered rank: {rank}\nperfect kernel: {}\ndistinguished set: {}",
                inv.countable, inv.isolated_count, inv.has_kernel, inv.td_max
            );
            emit(as_json, json::space_invariants(&inv, &nf), text)
        }
        EndsCommand::Homeo { a, b } => {
            let (a, b) = (parse_endspace(&a)?.unmarked(), parse_endspace(&b)?.unmarked());
            let d = endspace::is_homeomorphic(&a, &b);
            emit(as_json, json!({"homeomorphic": d.to_string()}), d.to_string())
        }
    }
}

fn valid_surface(text: &str) -> Result<surface::SurfaceDescriptor, Failure> {
    let s = parse_surface(text)?;
    s.validate().map_err(Failure::invalid)?;
    Ok(s)
}

fn run_surface(cmd: SurfaceCommand, as_json: bool) -> Outcome {
    match cmd {
        SurfaceCommand::Validate { surface } => {
            let s = valid_surface(&surface)?;
            emit(as_json, json!({"valid": true, "surface": s.to_string()}), "ok".into())
        }
        SurfaceCommand::Invariants { surface } => {
            let s = valid_surface(&surface)?;
            let inv = s.invariants();
            let text = format!(
                "genus: {}\nboundary: {}\npunctures: {}\nmixed end: {}\ninfinite type: {}\nends: {}",
                inv.genus,
                inv.boundary,
                inv.punctures,
                inv.mixed_end,
                s.is_infinite_type(),
                endspace::normalize(&s.unmarked_ends())
            );
            emit(as_json, json::surface_invariants(&s), text)
        }
        SurfaceCommand::Homeo { a, b } => {
            let (a, b) = (valid_surface(&a)?, valid_surface(&b)?);
            let d = surface::surfaces_homeomorphic(&a, &b);
            emit(as_json, json!({"homeomorphic": d.to_string()}), d.to_string())
        }
    }
}

fn decide_one(text: &str) -> Result<(decide::Verdict, Value), Failure> {
    let s = parse_surface(text)?;
    let v = decide::decide(&s)?;
    let value = json::verdict(&v);
    Ok((v, value))
}

fn run_decide(args: DecideArgs, as_json: bool) -> Result<(String, i32), Failure> {
    if let Some(path) = args.jsonl {
        let file = std::fs::File::open(&path).map_err(|e| Failure {
            code: EXIT_PARSE,
            message: format!("cannot read {}: {e}", path.display()),
            offset: None,
        })?;
        let lines: Vec<String> = io::BufReader::new(file)
            .lines()
            .collect::<Result<_, _>>()
            .map_err(|e| Failure {
                code: EXIT_PARSE,
                message: format!("cannot read {}: {e}", path.display()),
                offset: None,
            })?;
        let results: Vec<(Value, i32)> = lines
            .par_iter()
            .map(|line| {
                let caught = panic::catch_unwind(AssertUnwindSafe(|| decide_one(line)));
                match caught {
                    Ok(Ok((_, v))) => (v, EXIT_OK),
                    Ok(Err(f)) => (f.to_json(), f.code),
                    Err(_) => {
                        let f = Failure {
                            code: EXIT_INTERNAL,
                            message: "internal invariant violation".into(),
                            offset: None,
                        };
                        (f.to_json(), f.code)
                    }
                }
            })
            .collect();
        let code = results.iter().map(|r| r.1).max().unwrap_or(EXIT_OK);
        let out: Vec<String> = results.iter().map(|r| r.0.to_string()).collect();
        return Ok((out.join("\n"), code));
    }
    let text = args.surface.expect("clap requires a surface or --jsonl");
    let (v, value) = decide_one(&text)?;
    let out = if as_json {
        serde_json::to_string_pretty(&value).expect("json serializes")
    } else {
        let mut s = v.to_string();
        for q in [decide::Question::I, decide::Question::II, decide::Question::III] {
            if let Ok(w) = decide::witness_for(&v, q) {
                s.push_str(&format!(
                    "  witness {q}: {} => {} [{}]\n",
                    w.witness.description,
                    w.result,
                    if w.verified { "verified" } else { "FAILED" }
                ));
            }
        }
        s.trim_end().to_string()
    };
    Ok((out, EXIT_OK))
}

fn parse_matrix(text: &str) -> Result<IntegerMatrix, Failure> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("matrix must be a JSON array of integer rows: {e}"),
        offset: None,
    })?;
    IntegerMatrix::from_rows(&rows).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: e.to_string(),
        offset: None,
    })
}

fn run_hom(cmd: HomCommand, as_json: bool) -> Outcome {
    match cmd {
        HomCommand::Snf { matrix } => {
            let m = parse_matrix(&matrix)?;
            let snf = homology::smith_normal_form(&m);
            let diag: Vec<String> = snf.diagonal.iter().map(ToString::to_string).collect();
            let text = format!(
                "diagonal: {}\nleft:\n{}right:\n{}",
                diag.join(" "),
                snf.left,
                snf.right
            );
            emit(as_json, json::snf(&snf), text.trim_end().to_string())
        }
        HomCommand::Abelianize {
            presentation,
            preset,
            n,
        } => {
            let p = match preset {
                Some(name) => homology::preset_by_name(&name, n)?,
                None => parse_presentation(&presentation.expect("clap requires one"))?,
            };
            let g = homology::abelianize(&p);
            emit(as_json, json::abelian_group(&g, &p), g.to_string())
        }
        HomCommand::Poincare { kind, p, max_degree } => {
            let c = homology::poincare_series(kind, p, max_degree)?;
            let text: Vec<String> = c.iter().map(ToString::to_string).collect();
            emit(
                as_json,
                json!({"coefficients": c.iter().map(json::big_unsigned).collect::<Vec<_>>()}),
                text.join(" "),
            )
        }
    }
}

fn run_construct(cmd: ConstructCommand, as_json: bool) -> Outcome {
    match cmd {
        ConstructCommand::Snake { count } => {
            let path = constructions::snake_bijection(count).map_err(Failure::invalid)?;
            let text: Vec<String> = path.cells().iter().map(|(x, y)| format!("{x} {y}")).collect();
            emit(as_json, json!(path.cells()), text.join("\n"))
        }
    }
}

fn dispatch(cli: Cli) -> Result<(String, i32), Failure> {
    let j = cli.json;
    let ok = |s: String| (s, EXIT_OK);
    match cli.command {
        Command::Ord(c) => run_ord(c, j).map(ok),
        Command::Ends(c) => run_ends(c, j).map(ok),
        Command::Surface(c) => run_surface(c, j).map(ok),
        Command::Decide(a) => run_decide(a, j),
        Command::Hom(c) => run_hom(c, j).map(ok),
        Command::Construct(c) => run_construct(c, j).map(ok),
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let as_json = cli.json;
    match panic::catch_unwind(AssertUnwindSafe(|| dispatch(cli))) {
        Ok(Ok((text, code))) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Ok(Err(f)) => {
            if as_json {
                let _ = writeln!(out, "{}", f.to_json());
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal invariant violation");
            EXIT_INTERNAL
        }
    }
}
