//! Command-line front door: ad-hoc pavings and scans, frame generators,
//! Laurent truncations, and the experiment registry.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use paving_lab::experiments::{registry, run_experiment, verify_report, ExperimentConfig};
use paving_lab::frames::{
    block_frame, conference_projection, find_difference_set, gram_projection, harmonic_frame,
    paley_conference, FrameSpecJson, GramProjection,
};
use paving_lab::laurent::{
    bidensity_report, fat_cantor_stage, truncated_laurent, IntervalSetJson, SymbolKind, SymbolSpec,
};
use paving_lab::matrix::{Matrix, MatrixJson};
use paving_lab::paving::{exhaustive_pave, exhaustive_pave_with_budget, local_search_pave};
use paving_lab::symmetry::{min_symmetry_norm, scan_report, ScanStrategy};

#[derive(Parser)]
#[command(
    name = "paving-lab",
    version,
    about = "Matrix paving searches, diagonal-symmetry scans, frame constructions, and Laurent truncations"
)]
struct Cli {
    /// Default seed for randomized steps; per-command seeds take precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Reserved thread count; all searches currently run on one thread and
    /// results never depend on this value.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Directory report files are written into.
    #[arg(long, global = true, default_value = "reports")]
    out_dir: PathBuf,

    /// Output format for ad-hoc command results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Pave a matrix read from the JSON exchange format.
    Pave(PaveArgs),
    /// Minimize ||PSP|| over diagonal symmetries of a Gram projection.
    SymmetryScan(ScanArgs),
    /// Frame and projection generators.
    Frames {
        #[command(subcommand)]
        cmd: FramesCmd,
    },
    /// Interval-set symbols and their Toeplitz truncations.
    Laurent {
        #[command(subcommand)]
        cmd: LaurentCmd,
    },
    /// Run, verify, or list registered experiments.
    Experiment {
        #[command(subcommand)]
        cmd: ExperimentCmd,
    },
}

#[derive(Args)]
struct PaveArgs {
    /// Matrix JSON file ({rows, cols, re, im}).
    #[arg(long)]
    input: PathBuf,
    /// Number of blocks.
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, value_enum, default_value_t = PaveStrategy::Exhaustive)]
    strategy: PaveStrategy,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 8)]
    restarts: u32,
    /// Subtract the diagonal before paving.
    #[arg(long, default_value_t = false)]
    zero_diagonal: bool,
    /// Optional path for the paving JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PaveStrategy {
    Exhaustive,
    Local,
}

#[derive(Args)]
struct ScanArgs {
    /// Gram projection as matrix JSON.
    #[arg(long)]
    gram: PathBuf,
    #[arg(long, value_enum, default_value_t = ScanKind::Exhaustive)]
    strategy: ScanKind,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 8)]
    restarts: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanKind {
    Exhaustive,
    Random,
    Greedy,
}

#[derive(Subcommand)]
enum FramesCmd {
    /// Harmonic frame on Z_n restricted to the given frequencies.
    Harmonic {
        #[arg(long)]
        n: usize,
        /// Comma-separated frequency list, e.g. 0,1,3.
        #[arg(long, value_delimiter = ',')]
        freqs: Vec<usize>,
        /// Write the Gram projection instead of the synthesis.
        #[arg(long, default_value_t = false)]
        gram: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Paley conference matrix of order q + 1.
    Conference {
        #[arg(long)]
        q: u64,
        /// Write the half-diagonal projection instead of the matrix.
        #[arg(long, default_value_t = false)]
        projection: bool,
        /// Write the scaled reflection C/sqrt(n-1) instead of the matrix.
        #[arg(long, default_value_t = false)]
        reflection: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for the canonical difference set with the given parameters.
    DifferenceSet {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Raise the n-budget of the exhaustive search.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Two-block frame with a forced-dependency leading block.
    Block {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LaurentCmd {
    /// Generate a truncated Laurent matrix from a fat-Cantor stage.
    Gen {
        #[arg(long)]
        stage: u32,
        /// Half bandwidth; the matrix has dimension 2N + 1.
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Reflection)]
        kind: KindArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the exact interval set next to the matrix.
        #[arg(long)]
        support_out: Option<PathBuf>,
    },
    /// Exact per-cell mass split of a fat-Cantor stage at resolution 1/cells.
    Bidensity {
        #[arg(long)]
        stage: u32,
        #[arg(long)]
        cells: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Indicator,
    Reflection,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Run one experiment; exit status reflects its assertions.
    Run {
        name: String,
        /// Parameter overrides as key=json pairs, e.g. samples=1000.
        #[arg(long = "param", value_name = "KEY=JSON")]
        params: Vec<String>,
    },
    /// Re-verify a written report from its stored values.
    Verify { summary: PathBuf },
    /// List the registry.
    List,
}

fn read_matrix(path: &PathBuf) -> Result<Matrix, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let json: MatrixJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    Matrix::try_from(json).map_err(|e| e.to_string())
}

fn emit(out: Option<&PathBuf>, payload: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                }
            }
            std::fs::write(path, payload.as_bytes()).map_err(|e| e.to_string())
        }
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

fn budget_from_env() -> Option<u128> {
    std::env::var("PAVING_LAB_BUDGET")
        .ok()
        .and_then(|v| v.parse::<u128>().ok())
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Pave(args) => {
            let mut m = read_matrix(&args.input)?;
            if args.zero_diagonal {
                let n = m.rows().min(m.cols());
                for i in 0..n {
                    m.set(i, i, num_complex::Complex64::new(0.0, 0.0));
                }
            }
            let seed = args.seed.unwrap_or(cli.seed);
            let start = Instant::now();
            let paved = match args.strategy {
                PaveStrategy::Exhaustive => match budget_from_env() {
                    Some(max) => exhaustive_pave_with_budget(&m, args.r, max),
                    None => exhaustive_pave(&m, args.r),
                },
                PaveStrategy::Local => local_search_pave(&m, args.r, seed, args.restarts),
            }
            .map_err(|e| e.to_string())?;
            let seconds = start.elapsed().as_secs_f64();
            let strategy = paved.provenance.strategy.clone();
            let payload =
                serde_json::to_string_pretty(&paved.to_json()).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => emit(args.out.as_ref(), &payload)?,
                Format::Csv => {
                    if let Some(out) = args.out.as_ref() {
                        emit(Some(out), &payload)?;
                    }
                    println!(
                        "n,r,strategy,epsilon,seconds\n{},{},{},{},{:.3}",
                        m.rows(),
                        args.r,
                        strategy,
                        paved.epsilon,
                        seconds
                    );
                }
            }
            Ok(true)
        }
        Command::SymmetryScan(args) => {
            let gram = GramProjection::new(read_matrix(&args.gram)?).map_err(|e| e.to_string())?;
            let seed = args.seed.unwrap_or(cli.seed);
            let strategy = match args.strategy {
                ScanKind::Exhaustive => ScanStrategy::Exhaustive,
                ScanKind::Random => ScanStrategy::Random {
                    samples: args.samples,
                    seed,
                },
                ScanKind::Greedy => ScanStrategy::GreedyFlip {
                    seed,
                    restarts: args.restarts,
                },
            };
            let scan = min_symmetry_norm(&gram, &strategy).map_err(|e| e.to_string())?;
            let report = scan_report(&gram, &scan);
            println!(
                "{}",
                serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
            );
            Ok(true)
        }
        Command::Frames { cmd } => {
            match cmd {
                FramesCmd::Harmonic { n, freqs, gram, out } => {
                    let frame = harmonic_frame(n, &freqs).map_err(|e| e.to_string())?;
                    let payload = if gram {
                        let g = gram_projection(&frame).map_err(|e| e.to_string())?;
                        serde_json::to_string_pretty(&MatrixJson::from(&g.gram))
                    } else {
                        serde_json::to_string_pretty(&FrameSpecJson::from_frame(
                            &frame,
                            json!({ "n": n, "freqs": freqs }),
                        ))
                    }
                    .map_err(|e| e.to_string())?;
                    emit(out.as_ref(), &payload)?;
                }
                FramesCmd::Conference {
                    q,
                    projection,
                    reflection,
                    out,
                } => {
                    let c = paley_conference(q).map_err(|e| e.to_string())?;
                    let payload = if projection {
                        let p = conference_projection(&c).map_err(|e| e.to_string())?;
                        serde_json::to_string_pretty(&MatrixJson::from(&p.gram))
                    } else if reflection {
                        serde_json::to_string_pretty(&MatrixJson::from(&c.reflection()))
                    } else {
                        serde_json::to_string_pretty(&MatrixJson::from(&c.to_matrix()))
                    }
                    .map_err(|e| e.to_string())?;
                    emit(out.as_ref(), &payload)?;
                }
                FramesCmd::DifferenceSet { n, k, limit } => {
                    match find_difference_set(n, k, limit).map_err(|e| e.to_string())? {
                        Some(ds) => println!(
                            "{}",
                            serde_json::to_string_pretty(&ds).map_err(|e| e.to_string())?
                        ),
                        None => println!("{}", json!({ "n": n, "k": k, "exists": false })),
                    }
                }
                FramesCmd::Block { n, k, r, out } => {
                    let bf = block_frame(n, k, r).map_err(|e| e.to_string())?;
                    let payload = serde_json::to_string_pretty(&json!({
                        "frame": FrameSpecJson::from_frame(
                            &bf.frame,
                            json!({ "n": n, "k": k, "r": r }),
                        ),
                        "certificate": bf.certificate,
                    }))
                    .map_err(|e| e.to_string())?;
                    emit(out.as_ref(), &payload)?;
                }
            }
            Ok(true)
        }
        Command::Laurent { cmd } => {
            match cmd {
                LaurentCmd::Gen {
                    stage,
                    n,
                    kind,
                    out,
                    support_out,
                } => {
                    let support = fat_cantor_stage(stage).map_err(|e| e.to_string())?;
                    if let Some(path) = support_out.as_ref() {
                        let payload =
                            serde_json::to_string_pretty(&IntervalSetJson::from(&support))
                                .map_err(|e| e.to_string())?;
                        emit(Some(path), &payload)?;
                    }
                    let spec = SymbolSpec {
                        kind: match kind {
                            KindArg::Indicator => SymbolKind::Indicator,
                            KindArg::Reflection => SymbolKind::Reflection,
                        },
                        support,
                    };
                    let t = truncated_laurent(&spec, n);
                    let payload = serde_json::to_string_pretty(&MatrixJson::from(&t.matrix))
                        .map_err(|e| e.to_string())?;
                    emit(out.as_ref(), &payload)?;
                }
                LaurentCmd::Bidensity { stage, cells } => {
                    let support = fat_cantor_stage(stage).map_err(|e| e.to_string())?;
                    let rep =
                        bidensity_report(&support, paving_lab::laurent::rat(1, cells as i128))
                            .map_err(|e| e.to_string())?;
                    let cells_json: Vec<_> = rep
                        .cells
                        .iter()
                        .map(|(ins, outs)| {
                            json!([
                                [*ins.numer() as i64, *ins.denom() as i64],
                                [*outs.numer() as i64, *outs.denom() as i64],
                            ])
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "stage": stage,
                            "cells": cells_json,
                            "bidense": rep.bidense(),
                        }))
                        .map_err(|e| e.to_string())?
                    );
                }
            }
            Ok(true)
        }
        Command::Experiment { cmd } => match cmd {
            ExperimentCmd::List => {
                for (name, description) in registry() {
                    println!("{name}: {description}");
                }
                Ok(true)
            }
            ExperimentCmd::Run { name, params } => {
                let mut config = ExperimentConfig::new(&name);
                config.params.insert("seed".to_string(), json!(cli.seed));
                if let Some(budget) = budget_from_env() {
                    config.params.insert(
                        "samples".to_string(),
                        json!(budget.min(u64::MAX as u128) as u64),
                    );
                }
                for kv in params {
                    let Some((key, raw)) = kv.split_once('=') else {
                        return Err(format!("parameter {kv} is not key=json"));
                    };
                    let value = serde_json::from_str(raw)
                        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
                    config.params.insert(key.to_string(), value);
                }
                let report = run_experiment(&config).map_err(|e| e.to_string())?;
                let (summary, csv) = report.write(&cli.out_dir).map_err(|e| e.to_string())?;
                for a in &report.assertions {
                    println!(
                        "{} {}: {} {} {}",
                        if a.pass { "pass" } else { "FAIL" },
                        a.id,
                        a.lhs,
                        a.op,
                        a.rhs
                    );
                }
                println!("wrote {} and {}", summary.display(), csv.display());
                if report.incomplete {
                    println!("report flagged incomplete: {:?}", report.notes);
                }
                Ok(report.all_pass())
            }
            ExperimentCmd::Verify { summary } => {
                let outcome = verify_report(&summary).map_err(|e| e.to_string())?;
                if outcome.pass {
                    println!("verify: pass");
                } else {
                    for f in &outcome.failures {
                        println!("verify: {f}");
                    }
                }
                Ok(outcome.pass)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
