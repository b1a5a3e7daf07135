//! Command-line verification harness for the nineteen-vertex model.

use nineteen_vertex_cli::{campaigns, config, report};

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use campaigns::{GeoMap, HamiltonianCheck, TransferCheck, VerifyKind};
use config::{Backend, CampaignConfig, Chart, ExplicitFlags, OUT_DIR_ENV};
use nineteen_vertex_core::scalar::parse_rational;
use report::VerificationReport;

#[derive(Parser)]
#[command(
    name = "nineteen-vertex",
    version,
    about = "Constructs an integrable nineteen-vertex model in three charts and verifies its \
             algebraic contracts (Yang-Baxter, unitarity, regularity, divisors, transfer \
             commutativity, Hamiltonian limit), exactly over the rationals where possible."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Free couplings "Λ1+,Λ2+" as rationals, e.g. "1,2" or "3/2,5/3"
    #[arg(long, global = true)]
    couplings: Option<String>,
    /// Coordinate chart
    #[arg(long, value_enum, global = true)]
    chart: Option<Chart>,
    /// Scalar backend
    #[arg(long, value_enum, global = true)]
    backend: Option<Backend>,
    /// Number of samples (points, pairs or triples depending on the check)
    #[arg(long, global = true)]
    samples: Option<u32>,
    /// PRNG seed; identical seeds reproduce identical sample streams
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Bound on sampled numerators and denominators
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Float-backend tolerance (absolute, norm-scaled where documented)
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Cap on exact-backend chain length
    #[arg(long, global = true)]
    exact_max_sites: Option<usize>,
    /// Cap on float-backend chain length
    #[arg(long, global = true)]
    float_max_sites: Option<usize>,
    /// JSON config file supplying defaults (flags win)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report output path; defaults to `$NINETEEN_VERTEX_OUT_DIR/<check>-<seed>.json`
    /// when the variable is set, otherwise stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Output format when printing to stdout
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Emit sampled chart points and their Boltzmann weight sets as JSON
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        /// Include the 9x9 transition operator per sample
        #[arg(long)]
        emit_lax: bool,
    },
    /// Run one verification campaign
    Verify {
        #[arg(value_enum)]
        check: VerifyKind,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Birational-map checks
    Geometry {
        #[command(subcommand)]
        sub: GeometryCmd,
    },
    /// Transfer-matrix checks
    Transfer {
        /// Chain length (sites)
        #[arg(long, default_value_t = 3)]
        sites: usize,
        #[arg(long, value_enum, default_value = "commute")]
        check: TransferCheck,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Hamiltonian-limit checks
    Hamiltonian {
        #[arg(long, value_enum, default_value = "equivalence")]
        check: HamiltonianCheck,
        /// Fixed tangent "db+,dbbar+,dc+,dc-" (rationals); sampled if absent
        #[arg(long)]
        tangent: Option<String>,
        /// Fixed twist Δ (rational); sampled if absent
        #[arg(long)]
        twist: Option<String>,
        /// Chain length for chain-level checks
        #[arg(long, default_value_t = 3)]
        sites: usize,
        /// Reduction parameter τp
        #[arg(long, default_value = "2/3")]
        tau_p: String,
        /// Reduction parameter τ3 (a rational square for exact runs)
        #[arg(long, default_value = "1/4")]
        tau_3: String,
        /// Reduction parameter θ
        #[arg(long, default_value = "5")]
        theta: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Subcommand)]
enum GeometryCmd {
    /// Round trips and image containment for the birational maps
    Roundtrip {
        #[arg(long, value_enum, default_value = "all")]
        map: GeoMap,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Gradient certification of every singular point
    Singular {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn resolve_config(common: &CommonArgs) -> Result<CampaignConfig> {
    let mut cfg = CampaignConfig::default();
    let mut explicit = ExplicitFlags::default();
    if let Some(c) = &common.couplings {
        let parts: Vec<&str> = c.split(',').collect();
        anyhow::ensure!(
            parts.len() == 2,
            "--couplings expects two comma-separated rationals, got {c:?}"
        );
        cfg.couplings = [parts[0].trim().to_string(), parts[1].trim().to_string()];
        explicit.couplings = true;
    }
    macro_rules! flag {
        ($field:ident) => {
            if let Some(v) = common.$field {
                cfg.$field = v;
                explicit.$field = true;
            }
        };
    }
    flag!(chart);
    flag!(backend);
    flag!(samples);
    flag!(seed);
    flag!(bound);
    flag!(tolerance);
    flag!(exact_max_sites);
    flag!(float_max_sites);
    cfg.output = common.output.clone();
    if let Some(path) = &common.config {
        let file = config::load_file_config(path)?;
        cfg = cfg.with_file_defaults(file, &explicit);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit_report(report: &VerificationReport, cfg: &CampaignConfig, format: Format) -> Result<()> {
    let out_path = cfg.output.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|dir| {
            PathBuf::from(dir).join(format!("{}-seed{}.json", report.check, report.seed))
        })
    });
    match out_path {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .with_context(|| format!("creating {}", parent.display()))?;
                }
            }
            std::fs::write(&path, report.to_json())
                .with_context(|| format!("writing {}", path.display()))?;
            print!("{}", report.to_text());
            eprintln!("report written to {}", path.display());
        }
        None => match format {
            Format::Json => println!("{}", report.to_json()),
            Format::Text => print!("{}", report.to_text()),
        },
    }
    Ok(())
}

fn parse_tangent(s: &str) -> Result<[nineteen_vertex_core::Rat; 4]> {
    let parts: Vec<&str> = s.split(',').collect();
    anyhow::ensure!(
        parts.len() == 4,
        "--tangent expects four comma-separated rationals, got {s:?}"
    );
    Ok([
        parse_rational(parts[0])?,
        parse_rational(parts[1])?,
        parse_rational(parts[2])?,
        parse_rational(parts[3])?,
    ])
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Sample { common, emit_lax } => {
            let cfg = resolve_config(&common)?;
            let value = campaigns::run_sample(&cfg, emit_lax)?;
            let text = serde_json::to_string_pretty(&value)?;
            match &cfg.output {
                Some(path) => {
                    std::fs::write(path, text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    eprintln!("samples written to {}", path.display());
                }
                None => println!("{text}"),
            }
            Ok(true)
        }
        Command::Verify { check, common } => {
            let cfg = resolve_config(&common)?;
            let report = campaigns::run_verify(check, &cfg)?;
            emit_report(&report, &cfg, common.format)?;
            Ok(report.passed())
        }
        Command::Geometry { sub } => match sub {
            GeometryCmd::Roundtrip { map, common } => {
                let cfg = resolve_config(&common)?;
                let report = campaigns::run_geometry_roundtrip(map, &cfg)?;
                emit_report(&report, &cfg, common.format)?;
                Ok(report.passed())
            }
            GeometryCmd::Singular { common } => {
                let cfg = resolve_config(&common)?;
                let report = campaigns::run_geometry_singular(&cfg)?;
                emit_report(&report, &cfg, common.format)?;
                Ok(report.passed())
            }
        },
        Command::Transfer {
            sites,
            check,
            common,
        } => {
            let cfg = resolve_config(&common)?;
            let report = match check {
                TransferCheck::Commute => campaigns::run_transfer_commute(&cfg, sites)?,
                TransferCheck::Spectrum => campaigns::run_transfer_spectrum(&cfg, sites)?,
            };
            emit_report(&report, &cfg, common.format)?;
            Ok(report.passed())
        }
        Command::Hamiltonian {
            check,
            tangent,
            twist,
            sites,
            tau_p,
            tau_3,
            theta,
            common,
        } => {
            let cfg = resolve_config(&common)?;
            let args = campaigns::HamiltonianArgs {
                check,
                tangent: tangent.as_deref().map(parse_tangent).transpose()?,
                twist: twist.as_deref().map(parse_rational).transpose()?,
                sites,
                tau_p: parse_rational(&tau_p)?,
                tau_3: parse_rational(&tau_3)?,
                theta: parse_rational(&theta)?,
            };
            let report = campaigns::run_hamiltonian(&args, &cfg)?;
            emit_report(&report, &cfg, common.format)?;
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
