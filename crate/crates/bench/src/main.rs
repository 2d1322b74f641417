use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use monocarleson_bench::{init_threads, run, ExperimentConfig, THREADS_ENV};

#[derive(Parser)]
#[command(name = "monocarleson", version, about = "Run monocarleson experiments")]
#[command(after_help = format!("The thread count is read from {THREADS_ENV}."))]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the experiment described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory, default the current directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// List experiments and their parameters.
    List,
    /// `<experiment> [--key value ...] --out <dir>`
    #[command(external_subcommand)]
    Experiment(Vec<String>),
}

fn parse_pairs(args: &[String]) -> Result<(Vec<(String, String)>, PathBuf)> {
    let mut pairs = Vec::new();
    let mut out = None;
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let Some(k) = a.strip_prefix("--") else { bail!("expected --key, got {a:?}") };
        let (k, v) = match k.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => (k.to_string(), it.next().with_context(|| format!("--{k} needs a value"))?.clone()),
        };
        if k == "out" {
            out = Some(PathBuf::from(v));
        } else {
            pairs.push((k, v));
        }
    }
    Ok((pairs, out.context("--out <dir> is required")?))
}

fn main_inner() -> Result<bool> {
    let cli = Cli::parse();
    init_threads()?;
    let (cfg, out) = match cli.cmd {
        Cmd::Run { config, out } => (ExperimentConfig::from_path(&config)?, out),
        Cmd::List => {
            for e in monocarleson_bench::experiments::ALL {
                println!("{}", e.as_str());
                for k in e.keys() {
                    println!("    {:<18} {}", k.name, k.help);
                }
            }
            return Ok(true);
        }
        Cmd::Experiment(args) => {
            let (pairs, out) = parse_pairs(&args[1..])?;
            (ExperimentConfig::from_cli(&args[0], &pairs)?, out)
        }
    };
    let rep = run(&cfg).with_context(|| format!("running {}", cfg.experiment.as_str()))?;
    let (csv, json) = rep.write(&out)?;
    for c in &rep.checks {
        println!("{} {}: {:.6e} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.value, c.condition);
    }
    println!("wrote {} and {}", csv.display(), json.display());
    Ok(rep.pass())
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
