use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use manifolds_bench::{run_bench, write_csv, BenchConfig, BenchError, ManifoldId, OpId};

/// Time distance, retraction and inverse retraction on a set of manifolds
/// and write the results as CSV.
#[derive(Debug, Parser)]
#[command(name = "bench-cli", version)]
struct Args {
    /// Comma-separated manifolds (euclidean3, so3, spd3, spd3_power_128x128, sphere2).
    #[arg(long, value_delimiter = ',', default_values_t = ManifoldId::ALL)]
    manifolds: Vec<ManifoldId>,

    /// Comma-separated operations (distance, retract, inverse_retract).
    #[arg(long, value_delimiter = ',', default_values_t = OpId::ALL)]
    ops: Vec<OpId>,

    /// Minimum wall time of each measured loop.
    #[arg(long, default_value_t = 1.0)]
    min_seconds: f64,

    /// Seed for the random inputs.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    out: PathBuf,

    /// Worker threads; only 1 is supported.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn run(args: Args) -> Result<(), BenchError> {
    if args.threads != 1 {
        return Err(BenchError::Config(format!(
            "--threads {} is not supported, timing runs on a single thread",
            args.threads
        )));
    }
    let cfg = BenchConfig {
        manifolds: args.manifolds,
        ops: args.ops,
        min_seconds: args.min_seconds,
        seed: args.seed,
    };
    cfg.validate()?;
    let records = run_bench(&cfg)?;
    if args.out.as_os_str() == "-" {
        let stdout = io::stdout();
        write_csv(stdout.lock(), &records)?;
    } else {
        let mut file = BufWriter::new(File::create(&args.out)?);
        write_csv(&mut file, &records)?;
        file.flush()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bench-cli: {e}");
            ExitCode::FAILURE
        }
    }
}
