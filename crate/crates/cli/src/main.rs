use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sober_cli::{
    analyze, load_descriptor, sober_text, spec_listing, spec_text, AnalyzeOptions, CliError,
    EXIT_FAILURE, EXIT_OK,
};
use sober_core::symbolic::{CertificateOptions, DEFAULT_CERTIFICATE_SEED};
use sober_core::verifier::{run_verification, CorpusConfig};

#[derive(Parser)]
#[command(name = "sober", version, about = "Spectra and soberness of commutative rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full JSON report for a ring descriptor.
    Analyze {
        path: PathBuf,
        /// Omit wall-clock timings so output is reproducible.
        #[arg(long)]
        no_timings: bool,
        /// Certificate sample count for non-sober infinite rings.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_CERTIFICATE_SEED)]
        seed: u64,
        /// Embed the prime poset as Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Verdict line with the deciding rule, plus certificate pairs.
    Sober {
        path: PathBuf,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_CERTIFICATE_SEED)]
        seed: u64,
        /// Print the full verdict as JSON instead.
        #[arg(long)]
        json: bool,
    },
    /// List prime ideals, or a prefix of the maximal spectrum for Z and F_q[x].
    Spec {
        path: PathBuf,
        /// Write the prime poset (finite rings) as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check every proposition over the generated ring corpus.
    Verify {
        #[arg(long, default_value_t = 64)]
        max_order: usize,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Add single-entry table mutations and a non-sober space as a self-test.
        #[arg(long)]
        plant_defects: bool,
        #[arg(long)]
        no_timings: bool,
        #[arg(long, default_value_t = 1)]
        product_depth: usize,
    },
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze {
            path,
            no_timings,
            samples,
            seed,
            dot,
        } => {
            let d = load_descriptor(&path)?;
            let report = analyze(
                &d,
                AnalyzeOptions {
                    certificate: CertificateOptions { samples, seed },
                    timings: !no_timings,
                    dot,
                },
            )?;
            print!("{}", to_json(&report));
        }
        Command::Sober {
            path,
            samples,
            seed,
            json,
        } => {
            let d = load_descriptor(&path)?;
            let v = sober_core::symbolic::decide_sober_with(&d, CertificateOptions { samples, seed })?;
            if json {
                print!("{}", to_json(&v));
            } else {
                print!("{}", sober_text(&v));
            }
        }
        Command::Spec {
            path,
            dot,
            limit,
            json,
        } => {
            let d = load_descriptor(&path)?;
            let out = spec_listing(&d, limit)?;
            if json {
                print!("{}", to_json(&out.listing));
            } else {
                print!("{}", spec_text(&out.listing));
            }
            if let Some(dot_path) = dot {
                match out.dot {
                    Some(text) => write_file(&dot_path, &text)?,
                    None => eprintln!("no poset for an infinite spectrum; {} not written", dot_path.display()),
                }
            }
        }
        Command::Verify {
            max_order,
            report,
            plant_defects,
            no_timings,
            product_depth,
        } => {
            let config = CorpusConfig {
                max_order,
                zmod_max: max_order as u64,
                include_planted_defects: plant_defects,
                product_depth,
                ..CorpusConfig::default()
            };
            let mut result = run_verification(&config)?;
            if no_timings {
                result = result.without_timings();
            }
            eprint!("{}", result.to_text());
            match report {
                Some(path) => write_file(&path, &to_json(&result))?,
                None => print!("{}", to_json(&result)),
            }
            if !result.passed {
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
