//! `tfs`: solve forcing numbers, sweep the tree bounds exhaustively,
//! generate and recognize the extremal families, and enumerate free
//! trees.

mod commands;
mod config;
mod report;
mod sweeps;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{cmd_enum, cmd_generate, cmd_recognize, cmd_solve, cmd_verify, GenerateParams};
use config::RunConfig;

#[derive(Parser)]
#[command(name = "tfs", about = "Total forcing sets in graphs: exact solvers and exhaustive verification", version)]
struct Cli {
    /// key=value configuration file (threads and solver bounds);
    /// command-line flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve F and/or F_t for every edge-list record in a file
    Solve {
        file: PathBuf,
        /// compute the forcing number only
        #[arg(long)]
        f: bool,
        /// compute the total forcing number only
        #[arg(long)]
        ft: bool,
        /// print DOT instead of solving
        #[arg(long)]
        dot: bool,
    },
    /// Sweep one claim over all free trees up to a maximum order
    Verify {
        /// thm0|thm1|thm2|thm3|lem-subdiv|lem-trim|obs2|gap
        claim: String,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        threads: Option<usize>,
        /// write the JSON report here instead of stdout
        #[arg(long)]
        json: Option<PathBuf>,
        /// directory for counterexample files (default: ./counterexamples)
        #[arg(long)]
        counterexamples: Option<PathBuf>,
        /// harness self-test: perturb solver outputs to force a failure
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Generate a family member and its certificate
    Generate {
        /// Tdelta|F|H|gap
        family: String,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// attachment-plan index for Tdelta
        #[arg(long, default_value_t = 0)]
        plan: usize,
        /// order for H paths
        #[arg(long)]
        n: Option<usize>,
        /// number of random growth steps for F
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// H variant: path (default) or spider
        #[arg(long)]
        variant: Option<String>,
        /// spider leg lengths, e.g. 1,2,4
        #[arg(long)]
        legs: Option<String>,
        /// write <family>.edges and <family>.cert.json into this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check family membership of the first record in a graph file
    Recognize {
        /// Tdelta|F|H
        family: String,
        file: PathBuf,
    },
    /// Enumerate all free trees of an order, one parent array per line
    Enum {
        n: usize,
        /// take one round-robin shard, written i/s
        #[arg(long)]
        shard: Option<String>,
        /// parent|edges|dot
        #[arg(long, default_value = "parent")]
        format: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => match RunConfig::from_file(path) {
            Ok(cfg) => cfg,
            Err(message) => {
                eprintln!("error: {message}");
                return ExitCode::from(commands::EXIT_PARSE);
            }
        },
        None => RunConfig::default(),
    };
    let result = match cli.command {
        Command::Solve { file, f, ft, dot } => cmd_solve(&file, f, ft, dot, &cfg),
        Command::Verify {
            claim,
            max_order,
            threads,
            json,
            counterexamples,
            inject_fault,
        } => cmd_verify(
            &claim,
            max_order,
            threads.unwrap_or(cfg.threads),
            json.as_deref(),
            counterexamples.as_deref(),
            inject_fault,
            &cfg,
        ),
        Command::Generate {
            family,
            delta,
            k,
            plan,
            n,
            steps,
            seed,
            variant,
            legs,
            out,
        } => cmd_generate(
            &family,
            &GenerateParams {
                delta,
                k,
                plan,
                n,
                steps,
                seed,
                variant,
                legs,
                out,
            },
        ),
        Command::Recognize { family, file } => cmd_recognize(&family, &file),
        Command::Enum { n, shard, format } => cmd_enum(n, shard.as_deref(), &format, &cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
