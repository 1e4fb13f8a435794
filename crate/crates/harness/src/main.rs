use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orbgrand_harness::audit::{cycles_audit, partitions_audit, queries_audit, throughput_report};
use orbgrand_harness::displacement::{displacement_study, DEFAULT_TRIALS};
use orbgrand_harness::fer::{csv_text, monotonicity_violations, run_sweep};
use orbgrand_harness::{RawConfig, Result};

#[derive(Parser)]
#[command(
    name = "orbgrand",
    version,
    about = "GRAND decoder simulations and audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frame error rate and complexity sweep, written as CSV
    Fer(FerArgs),
    /// Segmented-sorter displacement table
    Displacement {
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        segments: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distinct partitions of one logistic weight in test order
    Partitions {
        #[arg(long)]
        m: usize,
        /// Defaults to no limit on the part count
        #[arg(long)]
        pmax: Option<usize>,
        #[arg(long, default_value_t = 128)]
        ncap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact query counts per logistic weight
    Queries {
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long)]
        lwmax: usize,
        #[arg(long)]
        pmax: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Schedule steps and worst-case latency curve
    Cycles {
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long)]
        lwmax: usize,
        #[arg(long)]
        pmax: usize,
        #[arg(long, default_value_t = 105)]
        k: usize,
        #[arg(long, default_value_t = 454.0)]
        freq: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Latency and information throughput for a cycle count
    Throughput {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        freq: f64,
        #[arg(long)]
        cycles: f64,
    },
}

#[derive(Args)]
struct FerArgs {
    /// key = value file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    code: Option<String>,
    /// orbgrand or grandab
    #[arg(long)]
    decoder: Option<String>,
    #[arg(long)]
    lwmax: Option<usize>,
    #[arg(long)]
    pmax: Option<usize>,
    #[arg(long)]
    segments: Option<usize>,
    #[arg(long)]
    ab: Option<usize>,
    /// Comma list and/or start:step:stop ranges in dB
    #[arg(long)]
    ebn0: Option<String>,
    #[arg(long)]
    min_errors: Option<u64>,
    #[arg(long)]
    max_frames: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Quantize LLRs to the 5-bit fixed-point grid
    #[arg(long)]
    quantize: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl FerArgs {
    fn raw_config(&self) -> Result<RawConfig> {
        let mut raw = match &self.config {
            Some(p) => RawConfig::load(p)?,
            None => RawConfig::new(),
        };
        let mut cli = RawConfig::new();
        let pairs: [(&str, Option<String>); 13] = [
            ("code", self.code.clone()),
            ("decoder", self.decoder.clone()),
            ("lwmax", self.lwmax.map(|v| v.to_string())),
            ("pmax", self.pmax.map(|v| v.to_string())),
            ("segments", self.segments.map(|v| v.to_string())),
            ("ab", self.ab.map(|v| v.to_string())),
            ("ebn0", self.ebn0.clone()),
            ("min_errors", self.min_errors.map(|v| v.to_string())),
            ("max_frames", self.max_frames.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("workers", self.workers.map(|v| v.to_string())),
            ("quantize", self.quantize.then(|| "true".to_string())),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                cli.set(k, v)?;
            }
        }
        raw.merge(&cli);
        Ok(raw)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fer(args) => {
            let cfg = args.raw_config()?.build()?;
            let rows = run_sweep(&cfg)?;
            if cfg.out.is_none() {
                print!("{}", csv_text(&rows));
            }
            for v in monotonicity_violations(&rows) {
                eprintln!(
                    "warning: {:?} rises from {} dB to {} dB by {:.1} standard errors",
                    v.metric, v.from_db, v.to_db, v.sigmas
                );
            }
            for r in rows.iter().filter(|r| r.censored) {
                eprintln!(
                    "warning: {} dB censored at {} frames with {} errors",
                    r.ebn0_db, r.frames, r.frame_errors
                );
            }
        }
        Command::Displacement {
            n,
            segments,
            trials,
            seed,
            out,
        } => emit(
            &displacement_study(n, segments, trials, seed)?.to_csv(),
            out.as_ref(),
        )?,
        Command::Partitions { m, pmax, ncap, out } => emit(
            &partitions_audit(m, pmax.unwrap_or(usize::MAX), ncap),
            out.as_ref(),
        )?,
        Command::Queries {
            n,
            lwmax,
            pmax,
            out,
        } => {
            let (csv, total) = queries_audit(n, lwmax, pmax.unwrap_or(n))?;
            emit(&csv, out.as_ref())?;
            eprintln!("total queries: {total}");
        }
        Command::Cycles {
            n,
            lwmax,
            pmax,
            k,
            freq,
            out,
        } => {
            let (csv, total) = cycles_audit(n, lwmax, pmax, k, freq)?;
            emit(&csv, out.as_ref())?;
            eprintln!("worst-case cycles: {total}");
        }
        Command::Throughput { k, freq, cycles } => {
            let r = throughput_report(k, freq, cycles)?;
            println!(
                "latency_ns,throughput_gbps\n{},{}",
                r.latency_ns, r.throughput_gbps
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
