//! Command-line front end.
//!
//! Exit codes: 0 success (for `solve`: a certificate was produced);
//! 1 clean run without a certificate; 2 configuration or domain errors;
//! 3 computation failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use laglink::conformal::{check_table, AnnulusConfig};
use laglink::dims;
use laglink::pipeline::{run_pipeline, CutoffSpec, PipelineError, RunConfig};
use laglink::potential::AnnulusSign;
use laglink::rat::Rat;
use laglink::svg::render_svg;
use laglink::tropical::genericity_check;

#[derive(Parser)]
#[command(
    name = "laglink",
    about = "Non-displaceability certificates for two-component Lagrangian links: tropical disc enumeration, bulk-deformed potentials, critical-point lifting, annulus invariants."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Path to a JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Override the tail seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the truncation cutoff ("auto" or "p/q").
    #[arg(long)]
    cutoff: Option<String>,
    /// Override the annulus contribution sign ("+" or "-").
    #[arg(long)]
    sign: Option<String>,
    /// Write the output document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the Maslov-2 tropical curves of a configuration.
    Tropical {
        #[command(flatten)]
        common: ConfigArgs,
        /// Also render the curves to an SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Assemble the potential and emit its term table.
    Potential {
        #[command(flatten)]
        common: ConfigArgs,
    },
    /// Run the full pipeline: enumerate, assemble, lift, verify, verdict.
    Solve {
        #[command(flatten)]
        common: ConfigArgs,
    },
    /// Index and dimension calculators.
    Dims {
        /// Boundary marked points beyond the output point.
        #[arg(long)]
        k: u32,
        /// Interior marked points.
        #[arg(long)]
        l: u32,
        /// How many interior points carry the order-2 isotropy.
        #[arg(long, default_value_t = 0)]
        orbifold: u32,
        /// Maslov index of the projected class.
        #[arg(long)]
        mu: i64,
        /// Euler characteristic of the covered surface (for the cover count).
        #[arg(long)]
        chi: Option<i64>,
        /// Number of interior branch points of the double cover.
        #[arg(long, default_value_t = 0)]
        crit: u32,
    },
    /// Annulus invariant check table.
    Conformal {
        /// Inner radius of the annulus (outer radius is 1).
        #[arg(long)]
        r1: f64,
        /// Modulus of the marked point.
        #[arg(long = "a-abs")]
        a_abs: f64,
        /// Argument of the marked point in radians.
        #[arg(long = "a-arg", default_value_t = 0.0)]
        a_arg: f64,
        /// Target slit-circle radius.
        #[arg(long)]
        r0: f64,
        /// Numerical tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(common: &ConfigArgs) -> Result<RunConfig, PipelineError> {
    let text = std::fs::read_to_string(&common.config)
        .map_err(|e| PipelineError::Config(format!("{}: {e}", common.config.display())))?;
    let mut cfg = RunConfig::from_json(&text)?;
    if let Some(seed) = common.seed {
        cfg.tail_seed = Some(seed);
    }
    if let Some(raw) = &common.cutoff {
        cfg.cutoff = if raw == "auto" {
            CutoffSpec::Auto
        } else {
            CutoffSpec::Value(
                raw.parse::<Rat>()
                    .map_err(|e| PipelineError::Config(e.to_string()))?,
            )
        };
    }
    if let Some(sign) = &common.sign {
        cfg.params.sign_annulus = match sign.as_str() {
            "+" => AnnulusSign::Plus,
            "-" => AnnulusSign::Minus,
            other => {
                return Err(PipelineError::Config(format!(
                    "sign must be + or -, got {other:?}"
                )))
            }
        };
    }
    Ok(cfg)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), PipelineError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| PipelineError::Computation(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_code_for(err: &PipelineError) -> u8 {
    match err {
        PipelineError::Config(_) | PipelineError::Domain(_) => 2,
        PipelineError::Computation(_) => 3,
    }
}

fn run() -> Result<u8, PipelineError> {
    match Cli::parse().command {
        Command::Tropical { common, svg } => {
            let cfg = load_config(&common)?;
            let tc = cfg.tropical.as_ref().ok_or_else(|| {
                PipelineError::Config("config has no \"tropical\" section".into())
            })?;
            let slope = genericity_check(tc).map_err(|e| PipelineError::Domain(e.to_string()))?;
            let (curves, records) = laglink::pipeline::tropical_tables(tc, &cfg.params)?;
            if let Some(path) = svg {
                render_svg(&curves, tc, &path)
                    .map_err(|e| PipelineError::Computation(e.to_string()))?;
            }
            let doc = serde_json::json!({ "slope": slope, "curves": records });
            emit(
                &common.out,
                &(serde_json::to_string_pretty(&doc).unwrap() + "\n"),
            )?;
            Ok(0)
        }
        Command::Potential { common } => {
            let cfg = load_config(&common)?;
            let cutoff = cfg.resolved_cutoff()?;
            let tail = match cfg.tail_seed {
                Some(seed) => {
                    laglink::potential::sample_admissible_tail(&cfg.params, cutoff, seed)?
                }
                None => laglink::laurent::LaurentPoly::zero(cutoff),
            };
            let bulk = laglink::potential::BulkParams::standard(&cfg.params, cutoff);
            let w = laglink::potential::assemble(&cfg.params, &bulk, &tail, cutoff)?;
            let doc = serde_json::json!({
                "cutoff": cutoff,
                "safe_cutoff": laglink::potential::safe_cutoff(&cfg.params)?,
                "terms": w.to_records(),
            });
            emit(
                &common.out,
                &(serde_json::to_string_pretty(&doc).unwrap() + "\n"),
            )?;
            Ok(0)
        }
        Command::Solve { common } => {
            let cfg = load_config(&common)?;
            let report = run_pipeline(&cfg)?;
            eprintln!("pipeline finished in {:.1} ms", report.timing_ms);
            emit(&common.out, &report.to_json())?;
            Ok(if report.verdict.certified { 0 } else { 1 })
        }
        Command::Dims {
            k,
            l,
            orbifold,
            mu,
            chi,
            crit,
        } => {
            if orbifold > l {
                return Err(PipelineError::Config(format!(
                    "orbifold count {orbifold} exceeds interior point count {l}"
                )));
            }
            let smooth = l - orbifold;
            let mut doc = serde_json::json!({
                "vdim_domain": dims::vdim_domain(k, l),
                "vdim_map": dims::vdim_map(orbifold, mu),
                "vdim_total": dims::vdim_total(k, smooth, mu),
                "coh_degree": dims::coh_degree(mu),
            });
            if let Some(chi) = chi {
                doc["riemann_hurwitz"] = serde_json::json!(dims::riemann_hurwitz(chi, crit));
            }
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(0)
        }
        Command::Conformal {
            r1,
            a_abs,
            a_arg,
            r0,
            tol,
            out,
        } => {
            let a = num_complex::Complex64::from_polar(a_abs, a_arg);
            let cfg =
                AnnulusConfig::new(r1, a, r0).map_err(|e| PipelineError::Domain(e.to_string()))?;
            let table =
                check_table(&cfg, tol).map_err(|e| PipelineError::Computation(e.to_string()))?;
            emit(
                &out,
                &(serde_json::to_string_pretty(&table).unwrap() + "\n"),
            )?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
