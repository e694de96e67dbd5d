//! `wia`: quadratic forms and algebras with involution from the command line.
//!
//! Exit codes: 0 decided, 3 undecided, 1 error.

mod verbs;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use verbs::Report;
use wia_core::oracle::SearchBudget;
use wia_core::syntax::parse_base_field;
use wia_core::Error;

#[derive(Parser, Debug, Clone)]
#[command(name = "wia", version, about = "Exact deciders for quadratic forms and algebras with involution")]
struct Cli {
    /// Base field: Q or "Q(sqrt d)".
    #[arg(long, global = true)]
    field: Option<String>,
    /// Emit the JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Height bound of the first isotropic-vector search round.
    #[arg(long, global = true)]
    height: Option<u64>,
    /// Number of escalation rounds.
    #[arg(long, global = true)]
    rounds: Option<u32>,
    /// Config file with keys height, rounds, escalation.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Run one query per line of FILE.
    #[arg(long)]
    batch: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand, Debug, Clone)]
enum Cmd {
    /// Signatures at every ordering.
    Sign { expr: String },
    /// Witt decomposition of a form.
    Witt { form: String },
    /// Hyperbolicity of a form or an involution.
    Hyp { expr: String },
    /// Whether some 2-power multiple is hyperbolic.
    WeakHyp { expr: String },
    TorsionOrder { form: String },
    /// Hyperbolicity relative to a preordering.
    THyp {
        /// Generators t1,...,tk; empty for sums of squares.
        #[arg(long, allow_hyphen_values = true)]
        preord: String,
        expr: String,
    },
    /// Case of the involution over the real closure at an ordering.
    Classify {
        #[arg(long)]
        ordering: Option<String>,
        expr: String,
    },
    Trace { expr: String },
    /// Isomorphism of two quaternion atoms of the same type.
    IsoQuat { left: String, right: String },
    Profile { expr: String },
    /// Hyperbolicity after adjoining sqrt a.
    HypSqrt {
        #[arg(long, allow_hyphen_values = true)]
        adjoin: String,
        expr: String,
    },
    /// Isotropy with an explicit vector when one is found.
    Isotropic { form: String },
}

fn read_config(path: &Path) -> Result<toml::Table, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("config {}: {e}", path.display())))?;
    text.parse::<toml::Table>().map_err(|e| Error::InvalidArgument(format!("config {}: {e}", path.display())))
}

fn budget(cli: &Cli) -> Result<SearchBudget, Error> {
    let mut b = SearchBudget::default();
    if let Some(path) = &cli.config {
        let table = read_config(path)?;
        let get = |key: &str| -> Result<Option<u64>, Error> {
            match table.get(key) {
                None => Ok(None),
                Some(toml::Value::Integer(n)) if *n > 0 => Ok(Some(*n as u64)),
                Some(v) => Err(Error::InvalidArgument(format!("config key {key}: expected a positive integer, got {v}"))),
            }
        };
        if let Some(h) = get("height")? {
            b.height_bound = h;
        }
        if let Some(r) = get("rounds")? {
            b.max_rounds = r as u32;
        }
        if let Some(e) = get("escalation")? {
            b.escalation_factor = e;
        }
    }
    if let Some(h) = cli.height {
        b.height_bound = h;
    }
    if let Some(r) = cli.rounds {
        b.max_rounds = r;
    }
    SearchBudget::new(b.height_bound, b.escalation_factor, b.max_rounds)
}

fn run(cli: &Cli, cmd: &Cmd) -> Result<Report, Error> {
    let base = parse_base_field(cli.field.as_deref().unwrap_or("Q"))?;
    let budget = budget(cli)?;
    match cmd {
        Cmd::Sign { expr } => verbs::sign(base, expr),
        Cmd::Witt { form } => verbs::witt(base, form),
        Cmd::Hyp { expr } => verbs::hyp(base, expr),
        Cmd::WeakHyp { expr } => verbs::weak_hyp(base, expr),
        Cmd::TorsionOrder { form } => verbs::torsion_order(base, form),
        Cmd::THyp { preord, expr } => verbs::t_hyp(base, preord, expr),
        Cmd::Classify { ordering, expr } => verbs::classify(base, ordering.as_deref(), expr),
        Cmd::Trace { expr } => verbs::trace(base, expr),
        Cmd::IsoQuat { left, right } => verbs::iso_quat(base, left, right),
        Cmd::Profile { expr } => verbs::profile_report(base, expr),
        Cmd::HypSqrt { adjoin, expr } => verbs::hyp_sqrt(base, adjoin, expr),
        Cmd::Isotropic { form } => verbs::isotropic(base, &budget, form),
    }
}

/// Rendered output and exit code of one query.
fn render(json_mode: bool, result: Result<Report, Error>) -> (String, bool, u8) {
    match result {
        Ok(r) => {
            let out = if json_mode { r.json.to_string() } else { r.text };
            (out, false, if r.undecided { 3 } else { 0 })
        }
        Err(e) => {
            let out = if json_mode {
                json!({ "error": { "code": e.code(), "message": e.to_string() } }).to_string()
            } else {
                format!("error [{}]: {e}", e.code())
            };
            (out, true, 1)
        }
    }
}

/// Batch lines inherit the outer global flags they do not set themselves.
fn batch_query(outer: &Cli, line: &str) -> (String, bool, u8) {
    let words = match shell_words::split(line) {
        Ok(w) => w,
        Err(e) => return render(outer.json, Err(Error::InvalidArgument(format!("batch line: {e}")))),
    };
    let mut cli = match Cli::try_parse_from(std::iter::once("wia".to_string()).chain(words)) {
        Ok(c) => c,
        Err(e) => return render(outer.json, Err(Error::InvalidArgument(e.to_string().trim().to_string()))),
    };
    cli.json |= outer.json;
    cli.field = cli.field.or_else(|| outer.field.clone());
    cli.height = cli.height.or(outer.height);
    cli.rounds = cli.rounds.or(outer.rounds);
    cli.config = cli.config.or_else(|| outer.config.clone());
    match (&cli.batch, &cli.cmd) {
        (Some(_), _) => render(cli.json, Err(Error::InvalidArgument("nested --batch".into()))),
        (None, None) => render(cli.json, Err(Error::InvalidArgument("batch line has no verb".into()))),
        (None, Some(cmd)) => render(cli.json, run(&cli, cmd)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(path) = &cli.batch {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                let (out, _, code) = render(cli.json, Err(Error::InvalidArgument(format!("batch {}: {e}", path.display()))));
                eprintln!("{out}");
                return ExitCode::from(code);
            }
        };
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        let results: Vec<(String, bool, u8)> = lines.par_iter().map(|l| batch_query(&cli, l)).collect();
        for (out, _, _) in &results {
            println!("{out}");
        }
        let code = if results.iter().any(|r| r.2 == 1) {
            1
        } else if results.iter().any(|r| r.2 == 3) {
            3
        } else {
            0
        };
        return ExitCode::from(code);
    }
    let Some(cmd) = &cli.cmd else {
        eprintln!("error: a verb or --batch FILE is required (see wia --help)");
        return ExitCode::from(1);
    };
    let (out, is_err, code) = render(cli.json, run(&cli, cmd));
    if is_err && !cli.json {
        eprintln!("{out}");
    } else {
        println!("{out}");
    }
    ExitCode::from(code)
}
