//! The `lamsep` command line.
//!
//! [`run`] parses a command line and returns a [`CommandResult`]; the binary
//! prints the payload to stdout, the summary to stderr, and exits with the
//! code: 0 success, 1 property false, 2 usage or input error, 3 internal
//! invariant violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lamsep::io::{dot, json as family_json, pace};
use lamsep::oracle::acceptance::{run_all, AcceptanceConfig};
use lamsep::oracle::generate::{gen_graph, gen_laminar_family, FamilyStrategy, GraphModel};
use lamsep::oracle::{check_all, Verdict};
use lamsep::{
    build_deciduous_td, find_outermost, locations, Certificate, Error, Graph, ManySidedSeparation,
    SeparationFamily, TreeDecomposition, VertexSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    /// Human-readable outcome, printed to stderr.
    pub summary: String,
    /// Machine-readable output printed to stdout: JSON, or PACE text for
    /// graphs and decompositions.
    pub payload: Option<String>,
}

impl CommandResult {
    fn ok(summary: impl Into<String>, payload: Option<String>) -> Self {
        CommandResult {
            code: EXIT_OK,
            summary: summary.into(),
            payload,
        }
    }

    fn with_code(code: i32, summary: impl Into<String>, payload: Option<String>) -> Self {
        CommandResult {
            code,
            summary: summary.into(),
            payload,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "lamsep", version, about = "Many-sided separations and deciduous tree decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphAndFamily {
    /// Graph in PACE `.gr` format
    #[arg(long)]
    graph: PathBuf,
    /// Separation family in JSON
    #[arg(long)]
    seps: PathBuf,
}

#[derive(Args, Debug)]
struct GraphAndTd {
    #[arg(long)]
    graph: PathBuf,
    /// Tree decomposition in PACE `.td` format
    #[arg(long)]
    td: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a family is pairwise non-crossing
    CheckLaminar(GraphAndFamily),
    /// Build a deciduous tree decomposition realizing a laminar family
    BuildTd {
        #[command(flatten)]
        input: GraphAndFamily,
        /// Write the decomposition here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the decomposition as Graphviz DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The 2-sided separations of the tree edges
    Tau(GraphAndTd),
    /// The many-sided separations of the center class of a deciduous tree
    TauStar(GraphAndTd),
    /// Split every member into its 2-sided projections
    Project {
        #[arg(long)]
        seps: PathBuf,
    },
    /// Minimal cutsets of a connected graph, by size
    MinimalCutsets {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        max_size: usize,
    },
    /// The separation whose sides are the components left by a cutset
    FromCutset {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated vertices, e.g. `2,4`
        #[arg(long, value_delimiter = ',')]
        cutset: Vec<usize>,
    },
    /// Generate a graph, and optionally a laminar family on it
    Gen(GenArgs),
    /// Width of a decomposition
    Width {
        #[arg(long)]
        td: PathBuf,
        /// Use the minimum bag size instead of the maximum
        #[arg(long)]
        paper_literal_width: bool,
    },
    /// Check the three tree decomposition conditions and deciduousness
    ValidateTd(GraphAndTd),
    /// Run the acceptance criteria, or replay a certificate
    Selfcheck {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long)]
        replay: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    Path,
    Cycle,
    Star,
    Grid,
    Tree,
    Gnp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Strategy {
    Greedy,
    Exhaustive,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    seed: u64,
    /// Vertex count (path, cycle, tree, gnp)
    #[arg(long)]
    n: Option<usize>,
    /// Leaf count (star)
    #[arg(long)]
    leaves: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Edge probability (gnp)
    #[arg(long)]
    p: Option<f64>,
    /// Write the graph here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also generate a laminar family with this strategy
    #[arg(long, value_enum, requires = "seps_out")]
    family: Option<Strategy>,
    #[arg(long, default_value_t = 4)]
    max_members: usize,
    /// Which of the exhaustive families to write
    #[arg(long, default_value_t = 0)]
    family_index: usize,
    #[arg(long)]
    seps_out: Option<PathBuf>,
}

/// Failure of a command, already mapped to an exit code.
struct Failure {
    code: i32,
    summary: String,
    payload: Option<String>,
}

/// Exit code for a library error: a false property is 1, bad input is 2, a
/// broken internal invariant is 3.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InternalInvariant(_) => EXIT_INTERNAL,
        Error::NotLaminar(..)
        | Error::CrossingPair(..)
        | Error::NotDeciduous(..)
        | Error::NotACutset(_)
        | Error::NotATree(_)
        | Error::InvalidDecomposition(_) => EXIT_FALSE,
        _ => EXIT_USAGE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = exit_code(&e);
        let payload = match &e {
            Error::InternalInvariant(c) => Some(c.to_json()),
            _ => None,
        };
        Failure {
            code,
            summary: e.to_string(),
            payload,
        }
    }
}

fn usage(summary: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        summary: summary.into(),
        payload: None,
    }
}

type Outcome = Result<CommandResult, Failure>;

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult::ok("", Some(text)),
                _ => CommandResult::with_code(EXIT_USAGE, text.trim_end(), None),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(result) => result,
        Err(f) => CommandResult::with_code(f.code, f.summary, f.payload),
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::CheckLaminar(input) => check_laminar(&input),
        Command::BuildTd { input, out, dot } => build_td(&input, out.as_deref(), dot.as_deref()),
        Command::Tau(input) => tau(&input, false),
        Command::TauStar(input) => tau(&input, true),
        Command::Project { seps } => {
            let f = family_json::read_family(&read(&seps)?)?;
            let projected = f.project();
            Ok(CommandResult::ok(
                format!("{} separations", projected.len()),
                Some(family_json::write_family(&projected)),
            ))
        }
        Command::MinimalCutsets { graph, max_size } => {
            let g = read_graph(&graph)?;
            let cutsets = g.enum_minimal_cutsets(max_size)?;
            let lines: Vec<String> = cutsets
                .iter()
                .map(|c| format!("    {}", serde_json::to_string(&c.to_vec()).expect("serializes").replace(',', ", ")))
                .collect();
            let payload = if lines.is_empty() {
                "{\n  \"cutsets\": []\n}\n".to_string()
            } else {
                format!("{{\n  \"cutsets\": [\n{}\n  ]\n}}\n", lines.join(",\n"))
            };
            Ok(CommandResult::ok(
                format!("{} minimal cutsets of size at most {max_size}", cutsets.len()),
                Some(payload),
            ))
        }
        Command::FromCutset { graph, cutset } => {
            let g = read_graph(&graph)?;
            let cutset: VertexSet = cutset.into_iter().collect();
            let s = ManySidedSeparation::from_cutset(&g, &cutset)?;
            let f = SeparationFamily::from_members(g.n(), [s.clone()])?;
            Ok(CommandResult::ok(s.to_string(), Some(family_json::write_family(&f))))
        }
        Command::Gen(args) => generate(&args),
        Command::Width { td, paper_literal_width } => {
            let td = read_td(&td)?;
            let width = if paper_literal_width {
                td.paper_literal_width()
            } else {
                td.width()
            };
            Ok(CommandResult::ok(
                format!("width {width}"),
                Some(pretty(&json!({ "width": width }))),
            ))
        }
        Command::ValidateTd(input) => validate_td(&input),
        Command::Selfcheck { nmax, replay, jobs, seed } => match replay {
            Some(path) => replay_certificate(&path),
            None => selfcheck(nmax, jobs, seed),
        },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    pace::read_graph(&read(path)?).map_err(|e| in_file(path, e))
}

fn read_td(path: &Path) -> Result<TreeDecomposition, Failure> {
    pace::read_td(&read(path)?).map_err(|e| in_file(path, e))
}

fn pretty(value: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("json value serializes");
    out.push('\n');
    out
}

/// Reads a graph and a family and checks that the family is valid over it.
fn read_instance(input: &GraphAndFamily) -> Result<(Graph, SeparationFamily), Failure> {
    let g = read_graph(&input.graph)?;
    let f = family_json::read_family(&read(&input.seps)?).map_err(|e| in_file(&input.seps, e))?;
    if f.n() != g.n() {
        return Err(Error::ContextMismatch {
            expected: g.n(),
            found: f.n(),
        }
        .into());
    }
    if let Some((m, violation)) = f.validate(&g)?.into_iter().next() {
        return Err(usage(format!("invalid separation {}: {violation}", f.members()[m])));
    }
    Ok((g, f))
}

fn check_laminar(input: &GraphAndFamily) -> Outcome {
    let (_, f) = read_instance(input)?;
    Ok(match f.first_crossing() {
        None => CommandResult::ok("laminar", Some(pretty(&json!({ "laminar": true })))),
        Some((a, b)) => {
            let (s, t) = (f.members()[a].to_string(), f.members()[b].to_string());
            CommandResult::with_code(
                EXIT_FALSE,
                format!("not laminar: {s} crosses {t}"),
                Some(pretty(&json!({ "laminar": false, "crossing": [s, t] }))),
            )
        }
    })
}

fn certificate_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".certificate.json");
    PathBuf::from(name)
}

fn build_td(input: &GraphAndFamily, out: Option<&Path>, dot_out: Option<&Path>) -> Outcome {
    let (g, f) = read_instance(input)?;
    let td = match build_deciduous_td(&g, &f) {
        Ok(td) => td,
        Err(Error::InternalInvariant(c)) => {
            let text = c.to_json();
            return Ok(match out {
                Some(out) => {
                    let path = certificate_path(out);
                    write(&path, &text)?;
                    CommandResult::with_code(
                        EXIT_INTERNAL,
                        format!("internal invariant violated in {}; certificate written to {}", c.check, path.display()),
                        None,
                    )
                }
                None => CommandResult::with_code(
                    EXIT_INTERNAL,
                    format!("internal invariant violated in {}", c.check),
                    Some(text),
                ),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let text = pace::write_td(&td);
    if let Some(path) = dot_out {
        write(path, &dot::td_to_dot(&td))?;
    }
    let summary = format!("{} bags, width {}", td.node_count(), td.width());
    match out {
        Some(path) => {
            write(path, &text)?;
            Ok(CommandResult::ok(summary, None))
        }
        None => Ok(CommandResult::ok(summary, Some(text))),
    }
}

fn tau(input: &GraphAndTd, star: bool) -> Outcome {
    let g = read_graph(&input.graph)?;
    let td = read_td(&input.td)?;
    let f = if star { td.tau_star(&g)? } else { td.tau(&g)? };
    Ok(CommandResult::ok(
        format!("{} separations", f.len()),
        Some(family_json::write_family(&f)),
    ))
}

fn validate_td(input: &GraphAndTd) -> Outcome {
    let g = read_graph(&input.graph)?;
    let td = read_td(&input.td)?;
    let violations: Vec<String> = td.validate(&g)?.iter().map(ToString::to_string).collect();
    let deciduous = td.is_tree() && td.is_deciduous();
    let payload = pretty(&json!({
        "valid": violations.is_empty(),
        "violations": violations,
        "deciduous": deciduous,
        "width": td.width(),
    }));
    Ok(if violations.is_empty() {
        let kind = if deciduous { "deciduous tree decomposition" } else { "tree decomposition" };
        CommandResult::ok(format!("valid {kind}"), Some(payload))
    } else {
        CommandResult::with_code(EXIT_FALSE, violations.join("\n"), Some(payload))
    })
}

fn generate(args: &GenArgs) -> Outcome {
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| usage(format!("--model {:?} needs --{flag}", args.model).to_lowercase()))
    };
    let model = match args.model {
        Model::Path => GraphModel::Path { n: need(args.n, "n")? },
        Model::Cycle => GraphModel::Cycle { n: need(args.n, "n")? },
        Model::Star => GraphModel::Star { leaves: need(args.leaves, "leaves")? },
        Model::Grid => GraphModel::Grid {
            rows: need(args.rows, "rows")?,
            cols: need(args.cols, "cols")?,
        },
        Model::Tree => GraphModel::Tree { n: need(args.n, "n")? },
        Model::Gnp => GraphModel::Gnp {
            n: need(args.n, "n")?,
            p: args.p.ok_or_else(|| usage("--model gnp needs --p"))?,
        },
    };
    let g = gen_graph(model, args.seed)?;
    let text = pace::write_graph(&g);
    let mut summary = format!("{} vertices, {} edges", g.n(), g.edges().len());

    if let (Some(strategy), Some(seps_out)) = (args.family, &args.seps_out) {
        let strategy = match strategy {
            Strategy::Greedy => FamilyStrategy::MinimalCutsetsGreedy,
            Strategy::Exhaustive => FamilyStrategy::Exhaustive,
        };
        let families = gen_laminar_family(&g, strategy, args.seed, args.max_members)?;
        let f = families.get(args.family_index).ok_or_else(|| {
            usage(format!(
                "--family-index {} but only {} families",
                args.family_index,
                families.len()
            ))
        })?;
        write(seps_out, &family_json::write_family(f))?;
        let _ = write!(summary, "; family of {} separations", f.len());
    }
    match &args.out {
        Some(path) => {
            write(path, &text)?;
            Ok(CommandResult::ok(summary, None))
        }
        None => Ok(CommandResult::ok(summary, Some(text))),
    }
}

fn selfcheck(nmax: usize, jobs: usize, seed: u64) -> Outcome {
    let cfg = AcceptanceConfig { nmax, jobs, seed };
    let results = run_all(&cfg)?;
    let summary = results.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    let records: Vec<_> = results
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "passed": r.passed,
                "instances": r.instances,
                "failures": r.failures,
                "examples": r.examples,
            })
        })
        .collect();
    let passed = results.iter().all(|r| r.passed);
    let payload = Some(pretty(&json!({ "passed": passed, "criteria": records })));
    let internal = results
        .iter()
        .any(|r| !r.certificates.is_empty());
    let code = if passed {
        EXIT_OK
    } else if internal {
        EXIT_INTERNAL
    } else {
        EXIT_FALSE
    };
    Ok(CommandResult::with_code(code, summary, payload))
}

/// Re-runs the checks recorded in a certificate. Exits 0 when they now pass.
fn replay_certificate(path: &Path) -> Outcome {
    let certificate = Certificate::from_json(&read(path)?).map_err(|e| in_file(path, e))?;
    let f = certificate.family.to_family().map_err(|e| in_file(path, e))?;
    let Some(record) = &certificate.graph else {
        // family-only certificates come from the location stage
        if f.is_empty() {
            return Ok(CommandResult::ok("empty family", None));
        }
        find_outermost(&f)?;
        let classes = locations(&f)?;
        return Ok(CommandResult::ok(
            format!("{}: no longer reproduces ({} locations)", certificate.check, classes.len()),
            None,
        ));
    };
    let g = record.to_graph().map_err(|e| in_file(path, e))?;
    let report = check_all(&g, &f);
    let payload = Some(serde_json::to_string_pretty(&report).expect("report serializes") + "\n");
    Ok(match report.first_failure() {
        None => CommandResult::ok(format!("{}: no longer reproduces\n{report}", certificate.check), payload),
        Some((name, _)) => {
            let code = match &report.build_round_trip {
                Verdict::Fail(c) if c.check != "build-round-trip" => EXIT_INTERNAL,
                _ => EXIT_FALSE,
            };
            CommandResult::with_code(code, format!("reproduced: {name} fails\n{report}"), payload)
        }
    })
}
