mod verify;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kotoric::ko_symbolic::{ko_equal, parse_ko, render, to_json};
use kotoric::simplicial_dj::{dj_equal, limit_tuple, sr_reduce_ko};
use kotoric::toric::{bb_numbers, manifold_ko_equal, manifold_ko_rank, manifold_ku};
use kotoric::{CharacteristicMatrix, Error, KoElement, QuasitoricManifold, SimplicialComplex, Truncation};
use serde_json::{json, Value};

/// Exact KO/KU computations on BT^m, Davis–Januszkiewicz spaces and
/// quasitoric manifolds.
#[derive(Parser)]
#[command(name = "kotoric", version)]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Elements of KO*(BT^m).
    #[command(subcommand)]
    Ring(RingCmd),
    /// The Stanley–Reisner quotient KO*(DJ(K)).
    #[command(subcommand)]
    Dj(DjCmd),
    /// Quasitoric manifolds given as {"complex": …, "lambda": …}.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Built-in checks of the worked examples.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args)]
struct TruncArg {
    /// Truncation degrees "d1,d2,…" (a single value applies to every variable).
    #[arg(long)]
    trunc: Option<String>,
}

#[derive(Subcommand)]
enum RingCmd {
    /// Print the normal form.
    Normalize {
        expr: String,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Multiply two elements.
    Mul {
        a: String,
        b: String,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Compare symbolically, or through the truncated oracle with --trunc.
    Equal {
        a: String,
        b: String,
        #[arg(long)]
        vars: Option<usize>,
        #[command(flatten)]
        trunc: TruncArg,
    },
}

#[derive(Subcommand)]
enum DjCmd {
    /// Drop generators supported on non-faces.
    Reduce { complex: PathBuf, expr: String },
    /// Equality in the quotient (truncated oracle, default degree 6).
    Equal {
        complex: PathBuf,
        a: String,
        b: String,
        #[command(flatten)]
        trunc: TruncArg,
    },
    /// Restrictions to the facets.
    Limit { complex: PathBuf, expr: String },
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Whether λ satisfies the direct-summand condition.
    Validate { manifold: PathBuf },
    /// BB-numbers of the mod-2 cohomology.
    Bb { manifold: PathBuf },
    /// Whether the manifold is Sq²-acyclic.
    Acyclic { manifold: PathBuf },
    /// Equality in KO*(M) (Sq²-acyclic M only).
    KoEqual {
        manifold: PathBuf,
        a: String,
        b: String,
        /// Degree window of the finite KU model (default n + 1).
        #[arg(long)]
        window: Option<usize>,
    },
    /// Rank of KO^degree(M) (Sq²-acyclic M only).
    KoRank {
        manifold: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        window: Option<usize>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run the worked-example checks and report pass/fail.
    PaperExamples,
}

/// Exit 2 for malformed input, 1 for a computation that cannot proceed.
#[derive(Debug)]
enum CliError {
    Malformed(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Json(_)
            | Error::Shape(_)
            | Error::InvalidTruncation(_)
            | Error::VariableMismatch(..)
            | Error::InvalidComplex(_)
            | Error::InvalidCharacteristic(_) => CliError::Malformed(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed(m) => write!(f, "malformed input: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

type Out = Result<Output, CliError>;

/// Result of a command: plain text and its JSON counterpart.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }

    fn element(a: &KoElement) -> Self {
        Self::new(render(a), to_json(a))
    }

    fn flag(b: bool) -> Self {
        Self::new(b.to_string(), Value::Bool(b))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn parse_pair(a: &str, b: &str, vars: Option<usize>) -> Result<(KoElement, KoElement), CliError> {
    let m = match vars {
        Some(m) => m,
        None => parse_ko(a, None)?.vars().max(parse_ko(b, None)?.vars()),
    };
    Ok((parse_ko(a, Some(m))?, parse_ko(b, Some(m))?))
}

fn truncation(arg: &TruncArg, m: usize) -> Result<Truncation, CliError> {
    let Some(spec) = &arg.trunc else {
        return Ok(Truncation::uniform(m, 6)?);
    };
    let degrees: Vec<u32> = spec
        .split(',')
        .map(|d| d.trim().parse().map_err(|_| CliError::Malformed(format!("bad truncation degree {d:?}"))))
        .collect::<Result<_, _>>()?;
    match degrees.as_slice() {
        [d] => Ok(Truncation::uniform(m, *d)?),
        _ if degrees.len() == m => Ok(Truncation::new(degrees)?),
        _ => Err(CliError::Malformed(format!("truncation has {} entries for {m} variables", degrees.len()))),
    }
}

fn ring(cmd: &RingCmd) -> Out {
    match cmd {
        RingCmd::Normalize { expr, vars } => Ok(Output::element(&parse_ko(expr, *vars)?)),
        RingCmd::Mul { a, b, vars } => {
            let (a, b) = parse_pair(a, b, *vars)?;
            Ok(Output::element(&a.mul(&b)?))
        }
        RingCmd::Equal { a, b, vars, trunc } => {
            let (a, b) = parse_pair(a, b, *vars)?;
            let t = trunc.trunc.is_some().then(|| truncation(trunc, a.vars())).transpose()?;
            let eq = ko_equal(&a, &b, t.as_ref())?;
            let mode = if t.is_some() { "truncated" } else { "symbolic" };
            Ok(Output::new(eq.to_string(), json!({ "equal": eq, "mode": mode, "trunc": t.map(|t| t.degrees().to_vec()) })))
        }
    }
}

fn dj(cmd: &DjCmd) -> Out {
    let load = |p: &Path| -> Result<SimplicialComplex, CliError> { Ok(SimplicialComplex::from_json(&read(p)?)?) };
    match cmd {
        DjCmd::Reduce { complex, expr } => {
            let k = load(complex)?;
            Ok(Output::element(&sr_reduce_ko(&parse_ko(expr, Some(k.vertices()))?, &k)?))
        }
        DjCmd::Equal { complex, a, b, trunc } => {
            let k = load(complex)?;
            let (a, b) = parse_pair(a, b, Some(k.vertices()))?;
            let t = truncation(trunc, k.vertices())?;
            let eq = dj_equal(&a, &b, &k, &t)?;
            Ok(Output::new(eq.to_string(), json!({ "equal": eq, "trunc": t.degrees() })))
        }
        DjCmd::Limit { complex, expr } => {
            let k = load(complex)?;
            let tuple = limit_tuple(&parse_ko(expr, Some(k.vertices()))?, &k)?;
            let rows: Vec<(String, Value)> = k
                .facets()
                .iter()
                .zip(tuple.parts())
                .map(|(f, p)| (format!("{f}: {}", render(p)), json!({ "facet": f.labels(), "part": to_json(p) })))
                .collect();
            let text = rows.iter().map(|r| r.0.as_str()).collect::<Vec<_>>().join("\n");
            Ok(Output::new(text, Value::Array(rows.into_iter().map(|r| r.1).collect())))
        }
    }
}

fn load_manifold(path: &Path) -> Result<QuasitoricManifold, CliError> {
    Ok(QuasitoricManifold::from_json(&read(path)?)?)
}

fn toric(cmd: &ToricCmd) -> Out {
    match cmd {
        ToricCmd::Validate { manifold } => {
            let raw: Value = serde_json::from_str(&read(manifold)?).map_err(|e| CliError::Malformed(e.to_string()))?;
            let complex = raw.get("complex").ok_or_else(|| CliError::Malformed("missing \"complex\"".into()))?;
            let k = SimplicialComplex::from_json(&complex.to_string())?;
            let rows: Vec<Vec<i64>> = serde_json::from_value(raw.get("lambda").cloned().unwrap_or(Value::Null))
                .map_err(|e| CliError::Malformed(format!("lambda: {e}")))?;
            let n = if rows.is_empty() { Some(k.rank()) } else { None };
            match QuasitoricManifold::new(k, CharacteristicMatrix::new(rows, n)?) {
                Ok(_) => Ok(Output::flag(true)),
                Err(Error::InvalidCharacteristic(_)) => Ok(Output::flag(false)),
                Err(e) => Err(e.into()),
            }
        }
        ToricCmd::Bb { manifold } => {
            let bb = bb_numbers(&load_manifold(manifold)?);
            Ok(Output::new(
                format!("s = {:?}\nm = {:?}", bb.s, bb.m),
                json!({ "s": bb.s, "m": bb.m, "reduced_dims": bb.reduced_dims, "acyclic": bb.is_acyclic() }),
            ))
        }
        ToricCmd::Acyclic { manifold } => Ok(Output::flag(bb_numbers(&load_manifold(manifold)?).is_acyclic())),
        ToricCmd::KoEqual { manifold, a, b, window } => {
            let mfd = load_manifold(manifold)?;
            let (a, b) = parse_pair(a, b, Some(mfd.m()))?;
            let model = manifold_ku(&mfd, window.unwrap_or(mfd.n() + 1))?;
            Ok(Output::flag(manifold_ko_equal(&a, &b, &model)?))
        }
        ToricCmd::KoRank { manifold, degree, window } => {
            let mfd = load_manifold(manifold)?;
            let model = manifold_ku(&mfd, window.unwrap_or(mfd.n() + 1))?;
            let rank = manifold_ko_rank(&model, *degree)?;
            Ok(Output::new(rank.to_string(), json!({ "degree": degree, "rank": rank })))
        }
    }
}

fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Ring(c) => ring(c),
        Command::Dj(c) => dj(c),
        Command::Toric(c) => toric(c),
        Command::Verify(VerifyCmd::PaperExamples) => {
            let report = verify::run_all();
            let ok = report.iter().all(|c| c.passed);
            let text = report.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            let json = json!({
                "passed": ok,
                "checks": report.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
            });
            Ok(Output { text, json, ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Malformed(_) => 2,
                CliError::Failed(_) => 1,
            })
        }
    }
}
