//! `uflab`: file-in, report-out front end to the uflab library.

mod cmd;
mod defaults;
mod load;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use cmd::graph::{FlowCmd, GraphCmd, SeqCmd};
use cmd::index::IndexCmd;
use cmd::sobolev::SobolevCmd;
use cmd::spec::SpecCmd;
use cmd::wave::WaveCmd;
use cmd::Ctx;
use report::{flat_csv, to_pretty, CliResult, Output, RunReport, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "uflab", version, about = "Graph homology, spectral calculus, wave and index computations")]
struct Cli {
    /// JSON report on stdout (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV on stdout instead of the report; warnings go to stderr.
    #[arg(long, global = true)]
    csv: bool,
    /// Override the command's principal tolerance (see the table below).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Recorded in the report. No command here draws random numbers.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    #[command(subcommand)]
    Graph(GraphCmd),
    #[command(subcommand)]
    Seq(SeqCmd),
    #[command(subcommand)]
    Flow(FlowCmd),
    #[command(subcommand)]
    Spec(SpecCmd),
    #[command(subcommand)]
    Wave(WaveCmd),
    #[command(subcommand)]
    Sobolev(SobolevCmd),
    #[command(subcommand)]
    Index(IndexCmd),
}

fn dispatch(c: &Command, ctx: &mut Ctx) -> CliResult<Output> {
    match c {
        Command::Graph(g) => cmd::graph::graph(g, ctx),
        Command::Seq(s) => cmd::graph::seq(s, ctx),
        Command::Flow(f) => cmd::graph::flow(f, ctx),
        Command::Spec(s) => cmd::spec::run(s, ctx),
        Command::Wave(w) => cmd::wave::run(w, ctx),
        Command::Sobolev(s) => cmd::sobolev::run(s, ctx),
        Command::Index(i) => cmd::index::run(i, ctx),
    }
}

fn command_path(m: &ArgMatches) -> Vec<String> {
    let mut names = Vec::new();
    let mut cur = m;
    while let Some((name, sub)) = cur.subcommand() {
        names.push(name.to_string());
        cur = sub;
    }
    names
}

/// Subcommand arguments without the enum wrappers, plus the global flags.
fn parameters(cli: &Cli, depth: usize) -> Value {
    let mut v = serde_json::to_value(&cli.command).expect("arguments serialize");
    for _ in 0..depth {
        v = match v {
            Value::Object(m) if m.len() == 1 => m.into_iter().next().expect("one entry").1,
            other => other,
        };
    }
    let mut params = match v {
        Value::Object(m) => m,
        other => {
            let mut m = serde_json::Map::new();
            m.insert("args".into(), other);
            m
        }
    };
    params.insert("tol".into(), serde_json::json!(cli.tol));
    params.insert("seed".into(), serde_json::json!(cli.seed));
    Value::Object(params)
}

fn main() -> ExitCode {
    let matches = Cli::command().after_help(defaults::help_table()).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let path = command_path(&matches);
    let start = Instant::now();
    let mut ctx = Ctx {
        tol: cli.tol,
        ..Default::default()
    };
    let result = dispatch(&cli.command, &mut ctx);

    let mut warnings = Vec::new();
    if cli.tol.is_some() && !ctx.tol_used {
        warnings.push(format!("--tol has no effect on {}", path.join(" ")));
    }
    if cli.seed.is_some() {
        warnings.push("--seed has no effect: this command is deterministic".into());
    }
    let (outputs, error, table, code) = match result {
        Ok(out) => {
            warnings.extend(out.warnings);
            (Some(out.values), None, out.table, EXIT_OK)
        }
        Err(e) => (None, Some(e.failure()), None, e.code),
    };
    let elapsed_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    let report = RunReport {
        command: path.join(" "),
        inputs: ctx.inputs.digests,
        parameters: parameters(&cli, path.len()),
        outputs,
        error,
        warnings,
        elapsed_ms,
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Some(f) = &report.error {
        eprintln!("uflab: {}: {}", report.command, f.message);
    }
    let text = match (&report.outputs, cli.csv) {
        (Some(v), true) => {
            for w in &report.warnings {
                eprintln!("uflab: warning: {w}");
            }
            table.unwrap_or_else(|| flat_csv(v))
        }
        _ => to_pretty(&report),
    };
    // A closed pipe is not worth a panic.
    let _ = out.write_all(text.as_bytes());
    ExitCode::from(code)
}
