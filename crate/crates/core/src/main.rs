use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ifs_symmetry::campaign::{run_campaign, CampaignConfig};
use ifs_symmetry::cover::{cover_with_budget, CoverBudget, CoverError};
use ifs_symmetry::ifs::{hull, HomogeneousIFS};
use ifs_symmetry::rational::{format_rational, parse_rational, Rational};
use ifs_symmetry::report::RunReport;
use ifs_symmetry::svg::render_cover_svg;
use ifs_symmetry::symmetry::{mirror_candidate, run_pipeline, PairVerdict, PipelineConfig};
use ifs_symmetry::text::{format_ifs, parse_ifs};

const EXIT_SYMMETRIC: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "ifs-symmetry", version, about = "Symmetry certificates for homogeneous IFS pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the symmetry pipeline on Φ = rx + A and Ψ = -rx + B.
    VerifyPair {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        #[arg(long, value_parser = positive_rational, default_value = "1/1000000")]
        epsilon: Rational,
        #[arg(long, default_value_t = 24)]
        k_max: u32,
        #[arg(long, default_value_t = 6)]
        symmetry_level: u32,
        #[arg(long)]
        json: bool,
        /// Include per-step timings (makes the report non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Print the unique mirror candidate Ψ for Φ.
    Mirror {
        #[arg(long)]
        phi: PathBuf,
        /// Also run the pipeline on (Φ, Ψ) and report the verdict.
        #[arg(long)]
        check: bool,
        #[arg(long, value_parser = positive_rational, default_value = "1/1000000")]
        epsilon: Rational,
        #[arg(long, default_value_t = 24)]
        k_max: u32,
        #[arg(long)]
        json: bool,
    },
    /// Write the level-k cover as CSV rows or an SVG bar chart.
    Cover {
        #[arg(long)]
        phi: PathBuf,
        #[arg(short = 'k', long = "level")]
        level: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: CoverFormat,
        /// Output file; stdout when omitted.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Print decimal approximations next to the exact endpoints (csv only).
        #[arg(long)]
        decimal: bool,
    },
    /// Seeded randomized campaign over the library invariants.
    Proptest {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(2..=8))]
        n_max: u64,
        #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(i64).range(2..=200))]
        r_den_max: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverFormat {
    Csv,
    Svg,
}

fn positive_rational(text: &str) -> Result<Rational, String> {
    match parse_rational(text) {
        Some(v) if v > Rational::from_integer(0.into()) => Ok(v),
        Some(_) => Err("must be positive".into()),
        None => Err("expected [-]int[/int]".into()),
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn load(path: &Path) -> Result<HomogeneousIFS, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_ifs(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn budget() -> Result<CoverBudget, Failure> {
    CoverBudget::from_env().map_err(|e| Failure::usage(e.to_string()))
}

fn verdict_code(verdict: &PairVerdict) -> u8 {
    match verdict {
        PairVerdict::Symmetric(_) => EXIT_SYMMETRIC,
        PairVerdict::PreconditionFailed { .. } | PairVerdict::AttractorsDiffer { .. } => {
            EXIT_NEGATIVE
        }
        PairVerdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

fn emit(report: &RunReport, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn verify(
    phi: &HomogeneousIFS,
    psi: &HomogeneousIFS,
    config: &PipelineConfig,
    json: bool,
    timings: bool,
) -> u8 {
    let run = run_pipeline(phi, psi, config);
    emit(&RunReport::for_pair(phi, psi, &run, timings), json);
    verdict_code(&run.verdict)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::VerifyPair {
            phi,
            psi,
            epsilon,
            k_max,
            symmetry_level,
            json,
            timings,
        } => {
            let phi = load(&phi)?;
            let psi = load(&psi)?;
            let config = PipelineConfig {
                epsilon,
                k_max,
                symmetry_level,
                budget: budget()?,
            };
            Ok(verify(&phi, &psi, &config, json, timings))
        }
        Command::Mirror {
            phi,
            check,
            epsilon,
            k_max,
            json,
        } => {
            let phi = load(&phi)?;
            let psi = mirror_candidate(&phi).map_err(|e| Failure::usage(e.to_string()))?;
            if !check {
                println!("{}", format_ifs(&psi));
                return Ok(EXIT_SYMMETRIC);
            }
            let config = PipelineConfig {
                epsilon,
                k_max,
                budget: budget()?,
                ..PipelineConfig::default()
            };
            if !json {
                println!("{}", format_ifs(&psi));
            }
            Ok(verify(&phi, &psi, &config, json, false))
        }
        Command::Cover {
            phi,
            level,
            format,
            output,
            decimal,
        } => {
            let phi = load(&phi)?;
            let cover = cover_with_budget(&phi, level, budget()?).map_err(|e| match e {
                CoverError::BudgetExceeded { .. } => Failure {
                    code: EXIT_BUDGET,
                    message: e.to_string(),
                },
                other => Failure::usage(other.to_string()),
            })?;
            let body = match format {
                CoverFormat::Csv => {
                    let mut out = String::new();
                    for iv in cover.iter() {
                        out.push_str(&format_rational(&iv.lo));
                        out.push(',');
                        out.push_str(&format_rational(&iv.hi));
                        if decimal {
                            let lo = ifs_symmetry::rational::to_f64(&iv.lo);
                            let hi = ifs_symmetry::rational::to_f64(&iv.hi);
                            out.push_str(&format!(",{lo:.12},{hi:.12}"));
                        }
                        out.push('\n');
                    }
                    out
                }
                CoverFormat::Svg => render_cover_svg(&cover, &hull(&phi)),
            };
            match output {
                Some(path) => fs::write(&path, body)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
                None => print!("{body}"),
            }
            Ok(EXIT_SYMMETRIC)
        }
        Command::Proptest {
            seed,
            cases,
            n_max,
            r_den_max,
            json,
        } => {
            let config = CampaignConfig {
                seed,
                cases,
                n_max: n_max as usize,
                r_den_max,
            };
            let report = run_campaign(&config);
            emit(&RunReport::for_campaign(&report), json);
            for p in report.properties.iter().filter(|p| p.failed > 0) {
                if let Some(cx) = &p.counterexample {
                    eprintln!("{} failed; smallest counterexample: {cx}", p.name);
                }
            }
            Ok(if report.all_passed() { 0 } else { EXIT_NEGATIVE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
