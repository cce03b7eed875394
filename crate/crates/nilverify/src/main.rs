//! Batch front end: parse a manifold description, run a verification, and
//! print the report as text or machine-readable JSON.
//!
//! Exit codes: 0 all checks passed, 1 a verification failed, 2 config or
//! usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nilverify::config::{parse_config, ManifoldConfig};
use nilverify::geometry::Orientation;
use nilverify::parse::parse_form;
use nilverify::report::{
    check_report, cohomology_report, complex_report, fixed_locus_report,
    invariants_report, lefschetz_command_report, singular_locus_report, symplectic_report,
    verify_all_report, Report, TextRender,
};

#[derive(Parser)]
#[command(
    name = "nilverify",
    about = "Exact-arithmetic certificates for nilmanifold cohomology, group-invariant \
             cohomology, symplectic/complex structure checks, Lefschetz kernels, and \
             fixed-point strata",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Manifold description file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Reference-volume convention for sign decisions.
    #[arg(long, global = true, value_enum, default_value_t = OrientationArg::Standard)]
    orientation: OrientationArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Standard,
    Flipped,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Orientation {
        match o {
            OrientationArg::Standard => Orientation::Standard,
            OrientationArg::Flipped => Orientation::Flipped,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate the config: flatness and equivariance certificates.
    Check,
    /// Cohomology dimensions and representatives of the nilmanifold.
    Cohomology,
    /// Invariant cohomology of the quotient.
    Invariants,
    /// Realness, closedness, invariance and top-power sign of `omega`.
    SymplecticCheck,
    /// Integrability of the invariant complex structure.
    ComplexCheck,
    /// Lefschetz map, kernel, triple products and kernel certificates.
    Lefschetz {
        /// Form expression overriding the configured `omega`.
        #[arg(long)]
        omega: Option<String>,
        /// Form expression for the universal-kernel certificate
        /// (defaults to the configured `beta`).
        #[arg(long)]
        universal_kernel: Option<String>,
    },
    /// Fixed strata of one power of the action.
    FixedLocus {
        #[arg(long)]
        power: u32,
    },
    /// The full stratification of the quotient's singular set.
    SingularLocus,
    /// Every certificate in sequence; fails if any check fails.
    VerifyAll,
}

fn emit<T: Serialize + TextRender>(report: &Report<T>, json: bool) -> ExitCode {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> ExitCode {
    let Some(path) = &cli.config else {
        return config_error("--config <FILE> is required");
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return config_error(format!("cannot read {}: {e}", path.display())),
    };
    let cfg: ManifoldConfig = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let orientation: Orientation = cli.orientation.into();
    let json = cli.json;

    match &cli.command {
        Command::Check => emit(&check_report(&cfg, orientation), json),
        Command::Cohomology => match cohomology_report(&cfg, orientation) {
            Ok(r) => emit(&r, json),
            Err(e) => config_error(e),
        },
        Command::Invariants => match invariants_report(&cfg, orientation) {
            Ok(r) => emit(&r, json),
            Err(e) => config_error(e),
        },
        Command::SymplecticCheck => match symplectic_report(&cfg, orientation) {
            Ok(r) => emit(&r, json),
            Err(e) => config_error(e),
        },
        Command::ComplexCheck => match complex_report(&cfg, orientation) {
            Ok(r) => emit(&r, json),
            Err(e) => config_error(e),
        },
        Command::Lefschetz {
            omega,
            universal_kernel,
        } => {
            let gens = cfg.spec.generators();
            let omega_form = match omega {
                Some(expr) => match parse_form(expr, gens) {
                    Ok(f) => Some(f),
                    Err(e) => return config_error(format!("--omega: {e}")),
                },
                None => None,
            };
            let beta_form = match universal_kernel {
                Some(expr) => match parse_form(expr, gens) {
                    Ok(f) => Some(f),
                    Err(e) => return config_error(format!("--universal-kernel: {e}")),
                },
                None => None,
            };
            match lefschetz_command_report(
                &cfg,
                orientation,
                omega_form.as_ref(),
                beta_form.as_ref(),
            ) {
                Ok(r) => emit(&r, json),
                Err(e) => config_error(e),
            }
        }
        Command::FixedLocus { power } => {
            if *power == 0 || *power >= cfg.action.order() {
                return config_error(format!(
                    "--power must lie in 1..{} for an order-{} action",
                    cfg.action.order().saturating_sub(1),
                    cfg.action.order()
                ));
            }
            match fixed_locus_report(&cfg, orientation, *power) {
                Ok(r) => emit(&r, json),
                Err(e) => config_error(e),
            }
        }
        Command::SingularLocus => match singular_locus_report(&cfg, orientation) {
            Ok(r) => emit(&r, json),
            Err(e) => config_error(e),
        },
        Command::VerifyAll => match verify_all_report(&cfg, orientation) {
            Ok(r) => emit(&r, json),
            Err(e) => config_error(e),
        },
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
