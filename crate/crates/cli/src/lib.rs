//! Command-line front end for `bbw-core`.
//!
//! Exit codes: 0 success or PASS, 1 FAIL verdict, 2 usage or input error,
//! 3 I/O error, 4 internal error.

pub mod render;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use bbw_core::bott::{cohomology_traced, CohomologyResult};
use bbw_core::collection::{bundle_name, parse_collection, render_decomposition, verify_collection, BundleRef, Verdict};
use bbw_core::rep_theory::{ext_power, klimyk_tensor, sym_power};
use bbw_core::{Error, ParabolicData, Weight};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "bbw", version, about = "Bott-Borel-Weil cohomology and exceptional collections on G/P")]
pub struct Cli {
    /// Homogeneous space, e.g. E6/P1, A3/P2, D5/P1.
    #[arg(long, global = true, default_value = "E6/P1")]
    pub space: String,
    /// Also write the result as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology of an irreducible homogeneous bundle.
    Bott {
        /// [SPACE] BUNDLE
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
        /// Scan twists a..b (inclusive) instead of a single bundle.
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        twists: Option<String>,
        /// Print the reflection walk.
        #[arg(long)]
        trace: bool,
    },
    /// Split a tensor construction into irreducible bundles.
    Decompose {
        /// [SPACE] KIND OPERAND [OPERAND]
        #[arg(required = true, num_args = 2..=4)]
        args: Vec<String>,
    },
    /// Highest weight of the dual bundle.
    Dual {
        /// [SPACE] BUNDLE
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
    },
    /// Rank of a bundle.
    Dim {
        /// [SPACE] BUNDLE
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
    },
    /// Verify an ordered collection file.
    Check {
        /// [SPACE] FILE
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
        /// Require strong exceptionality.
        #[arg(long)]
        strong: bool,
    },
    /// Recompute every claim about the Cayley plane and report.
    ReproducePaper {
        /// Use this collection instead of the bundled 27-term one.
        #[arg(long, value_name = "FILE")]
        collection: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Tensor,
    Sym2,
    Sym3,
    Ext2,
    End,
    Hom,
}

impl Kind {
    fn arity(self) -> usize {
        match self {
            Kind::Tensor | Kind::Hom => 2,
            _ => 1,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => CliError::Internal(format!("internal error: {m}")),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Text for standard output, a JSON value for `--json`, and the exit code.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub exit: i32,
}

/// Runs one invocation; never panics on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = write!(out, "{}", outcome.text);
            if let Some(path) = &cli.json {
                if let Err(e) = write_json(path, &outcome.json) {
                    let _ = writeln!(err, "error: {e}");
                    return e.exit_code();
                }
            }
            outcome.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn write_json(path: &Path, value: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Splits off a leading `<TYPE><rank>/P<node>` positional.
fn space_and_rest<'a>(cli: &'a Cli, args: &'a [String]) -> Result<(ParabolicData, &'a [String]), CliError> {
    let (label, rest) = match args.first() {
        Some(first) if first.contains("/P") => (first.as_str(), &args[1..]),
        _ => (cli.space.as_str(), args),
    };
    Ok((label.parse::<ParabolicData>()?, rest))
}

fn one_operand<'a>(rest: &'a [String], what: &str) -> Result<&'a str, CliError> {
    match rest {
        [x] => Ok(x),
        _ => Err(CliError::Usage(format!("{what} takes exactly one bundle, got {}", rest.len()))),
    }
}

fn weight_json(p: &ParabolicData, w: &Weight) -> Value {
    json!({ "bundle": bundle_name(p, w), "weight": w.to_csv() })
}

fn cohomology_json(res: &CohomologyResult) -> Value {
    match res {
        CohomologyResult::Acyclic => json!({ "acyclic": true }),
        CohomologyResult::NonZero { degree, weight, dim } => {
            json!({ "acyclic": false, "degree": degree, "weight": weight.to_csv(), "dim": dim.to_string() })
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Bott { args, twists, trace } => cmd_bott(cli, args, twists.as_deref(), *trace),
        Command::Decompose { args } => cmd_decompose(cli, args),
        Command::Dual { args } => cmd_dual(cli, args),
        Command::Dim { args } => cmd_dim(cli, args),
        Command::Check { args, strong } => cmd_check(cli, args, *strong),
        Command::ReproducePaper { collection } => cmd_reproduce(collection.as_deref()),
    }
}

fn parse_range(text: &str) -> Result<(i64, i64), CliError> {
    let normalized = text.replace('\u{2212}', "-");
    let (a, b) = normalized
        .split_once("..")
        .ok_or_else(|| CliError::Usage(format!("twist range {text:?} must look like a..b")))?;
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad twist {s:?} in {text:?}")));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(CliError::Usage(format!("empty twist range {text:?}")));
    }
    Ok((a, b))
}

pub fn cmd_bott(cli: &Cli, args: &[String], twists: Option<&str>, trace: bool) -> Result<Outcome, CliError> {
    let (p, rest) = space_and_rest(cli, args)?;
    let bundle = BundleRef::parse(&p, one_operand(rest, "bott")?)?;
    let targets: Vec<Weight> = match twists {
        None => vec![bundle.weight.clone()],
        Some(range) => {
            let (a, b) = parse_range(range)?;
            (a..=b).map(|t| p.twist(&bundle.weight, t)).collect::<Result<_, _>>()?
        }
    };
    let mut text = String::new();
    let mut results = Vec::new();
    for w in &targets {
        let (res, walk) = cohomology_traced(&p, w)?;
        bbw_core::bott::validate(&p, &res)?;
        text.push_str(&format!("{}: {}\n", bundle_name(&p, w), render::cohomology(&res)));
        if trace {
            let start = w + p.root_system().rho();
            for line in render::trace(&walk, &start) {
                text.push_str(&line);
                text.push('\n');
            }
        }
        let mut entry = weight_json(&p, w);
        entry["cohomology"] = cohomology_json(&res);
        if trace {
            entry["trace"] = json!(walk.steps.iter().map(|s| json!({"node": s.node + 1, "weight": s.weight.to_csv()})).collect::<Vec<_>>());
        }
        results.push(entry);
    }
    Ok(Outcome { text, json: json!({ "space": p.to_string(), "results": results }), exit: EXIT_PASS })
}

pub fn cmd_decompose(cli: &Cli, args: &[String]) -> Result<Outcome, CliError> {
    let (p, rest) = space_and_rest(cli, args)?;
    let (kind_text, operands) =
        rest.split_first().ok_or_else(|| CliError::Usage("decompose needs a kind and operands".into()))?;
    let kind = Kind::from_str(kind_text, true).map_err(|_| {
        CliError::Usage(format!("unknown kind {kind_text:?}; expected tensor, sym2, sym3, ext2, end or hom"))
    })?;
    if operands.len() != kind.arity() {
        return Err(CliError::Usage(format!(
            "{kind_text} takes {} operand(s), got {}",
            kind.arity(),
            operands.len()
        )));
    }
    let ws: Vec<Weight> =
        operands.iter().map(|o| BundleRef::parse(&p, o).map(|b| b.weight)).collect::<Result<_, _>>()?;
    let dec = match kind {
        Kind::Tensor => klimyk_tensor(&p, &ws[0], &ws[1])?,
        Kind::Sym2 => sym_power(&p, &ws[0], 2)?,
        Kind::Sym3 => sym_power(&p, &ws[0], 3)?,
        Kind::Ext2 => ext_power(&p, &ws[0], 2)?,
        Kind::End => bbw_core::collection::hom_bundle(&p, &ws[0], &ws[0])?,
        Kind::Hom => bbw_core::collection::hom_bundle(&p, &ws[0], &ws[1])?,
    };
    let summands: Vec<Value> = dec
        .iter()
        .map(|(w, m)| {
            let mut v = weight_json(&p, w);
            v["multiplicity"] = json!(m.to_string());
            v
        })
        .collect();
    let rank = dec.dimension(&p)?;
    Ok(Outcome {
        text: format!("{}\n", render_decomposition(&p, &dec)),
        json: json!({
            "space": p.to_string(),
            "kind": kind_text.to_lowercase(),
            "operands": ws.iter().map(|w| weight_json(&p, w)).collect::<Vec<_>>(),
            "summands": summands,
            "rank": rank.to_string(),
        }),
        exit: EXIT_PASS,
    })
}

pub fn cmd_dual(cli: &Cli, args: &[String]) -> Result<Outcome, CliError> {
    let (p, rest) = space_and_rest(cli, args)?;
    let bundle = BundleRef::parse(&p, one_operand(rest, "dual")?)?;
    let dual = p.dual_weight(&bundle.weight)?;
    Ok(Outcome {
        text: format!("{} = E[{}]\n", bundle_name(&p, &dual), dual.to_csv()),
        json: json!({ "space": p.to_string(), "bundle": weight_json(&p, &bundle.weight), "dual": weight_json(&p, &dual) }),
        exit: EXIT_PASS,
    })
}

pub fn cmd_dim(cli: &Cli, args: &[String]) -> Result<Outcome, CliError> {
    let (p, rest) = space_and_rest(cli, args)?;
    let bundle = BundleRef::parse(&p, one_operand(rest, "dim")?)?;
    let rank = p.levi_dimension(&bundle.weight)?;
    Ok(Outcome {
        text: format!("{}: rank {rank}\n", bundle.name),
        json: json!({ "space": p.to_string(), "bundle": weight_json(&p, &bundle.weight), "rank": rank.to_string() }),
        exit: EXIT_PASS,
    })
}

fn read_collection(p: &ParabolicData, path: &Path) -> Result<Vec<BundleRef>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let bundles = parse_collection(p, &text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if bundles.is_empty() {
        return Err(CliError::Usage(format!("{}: collection file lists no bundles", path.display())));
    }
    Ok(bundles)
}

pub fn cmd_check(cli: &Cli, args: &[String], strong: bool) -> Result<Outcome, CliError> {
    let (p, rest) = space_and_rest(cli, args)?;
    let path = one_operand(rest, "check")?;
    let bundles = read_collection(&p, Path::new(path))?;
    let report = verify_collection(&p, &bundles, strong)?;
    let mut text = format!(
        "{} ({}, {} members, {} pairs)\n",
        report.verdict,
        if strong { "strong" } else { "exceptional" },
        report.members,
        report.pair_count
    );
    for w in &report.witnesses {
        text.push_str(&w.render(&p));
        text.push('\n');
    }
    let witnesses: Vec<Value> = report
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "i": w.i,
                "j": w.j,
                "direction": w.direction,
                "degree": w.degree,
                "summand": weight_json(&p, &w.summand),
                "weight": w.weight.to_csv(),
                "dim": w.dim.to_string(),
            })
        })
        .collect();
    Ok(Outcome {
        text,
        json: json!({
            "space": p.to_string(),
            "verdict": report.verdict,
            "mode": report.mode,
            "members": bundles.iter().map(|b| b.name.clone()).collect::<Vec<_>>(),
            "pair_count": report.pair_count,
            "witnesses": witnesses,
            "elapsed_micros": report.elapsed_micros,
        }),
        exit: if report.verdict == Verdict::Pass { EXIT_PASS } else { EXIT_FAIL },
    })
}

pub fn cmd_reproduce(collection: Option<&Path>) -> Result<Outcome, CliError> {
    let p = ParabolicData::cayley_plane();
    let collection = collection.map(|path| read_collection(&p, path)).transpose()?;
    let doc = report::reproduce(collection)?;
    let json = serde_json::to_value(&doc).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Outcome {
        text: doc.to_text(),
        json,
        exit: if doc.verdict == Verdict::Pass { EXIT_PASS } else { EXIT_FAIL },
    })
}
