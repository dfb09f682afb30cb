//! `rbaudit` front end. Exit codes reflect tool health only: 0 for a
//! completed run (whatever the verdicts say), 2 for an invalid
//! configuration, 3 for I/O failure.

pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

use rbaudit_core::audit::{
    self, admissibility_matrix, render_admissibility_table, AdmissibilityMatrix, ClaimId,
};
use rbaudit_core::block::AlgebraParams;
use rbaudit_core::derived::structure_constants;
use rbaudit_core::kernel::window_sweep;
use rbaudit_core::operator::OperatorSpec;
use rbaudit_core::printed::{cross_check, EquationId};
use rbaudit_core::verdict::Verdict;

pub use config::{parse_config, Cli, Command, ConfigError, QValue, RunConfig};
pub use report::{emit_report, to_canonical_json, write_atomic, EmitError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Io(EmitError),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<EmitError> for RunError {
    fn from(e: EmitError) -> Self {
        RunError::Io(e)
    }
}

fn config_field(field: &str, reason: impl std::fmt::Display) -> RunError {
    RunError::Config(ConfigError::Field {
        field: field.into(),
        reason: reason.to_string(),
    })
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    pub config: serde_json::Value,
    pub matrices: Vec<AdmissibilityMatrix>,
    pub generated_by: String,
    pub schema_version: String,
}

fn params(cfg: &RunConfig) -> AlgebraParams {
    let q = cfg.q_scalar();
    let a = cfg
        .alpha
        .as_ref()
        .map_or_else(|| q.clone(), QValue::to_scalar);
    let b = cfg
        .beta
        .as_ref()
        .map_or_else(|| q.clone(), QValue::to_scalar);
    AlgebraParams::general(a, b)
}

fn operator(cfg: &RunConfig) -> Result<OperatorSpec, RunError> {
    Ok(OperatorSpec::new(cfg.k, cfg.kprime, cfg.profile_spec()?))
}

/// The human-readable table goes to stdout when the JSON goes to a file,
/// and to stderr otherwise so stdout stays valid JSON.
fn print_table(cfg: &RunConfig, verdicts: &[Verdict]) {
    let text = render_admissibility_table(verdicts);
    if cfg.out.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
}

/// Executes one subcommand against an already merged configuration.
pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<(), RunError> {
    let out = cfg.out.as_deref();
    match cmd {
        Command::Sweep => {
            let v = window_sweep(
                &params(cfg),
                &operator(cfg)?,
                &cfg.window_box(),
                cfg.witness_cap,
            );
            emit_report(&v, out)?;
        }
        Command::Audit => {
            let ac = cfg.audit_config()?;
            let mut rep = audit::run_all(&ac).map_err(|e| config_field("config", e))?;
            rep.config = cfg.echo();
            emit_report(&rep, out)?;
            if cfg.claims.contains(&ClaimId::Table1) {
                print_table(cfg, &rep.verdicts);
            }
        }
        Command::Table => {
            let variants: Vec<EquationId> = cfg
                .variants
                .iter()
                .copied()
                .filter(|v| {
                    matches!(
                        v,
                        EquationId::FeqNonres | EquationId::FeqPlus | EquationId::Kernel
                    )
                })
                .collect();
            if variants.is_empty() {
                return Err(config_field(
                    "variant",
                    "table needs FEQ_NONRES, FEQ_PLUS or KERNEL",
                ));
            }
            let matrices = variants
                .into_iter()
                .map(|v| {
                    admissibility_matrix(
                        &cfg.window_box(),
                        &cfg.q_scalar(),
                        cfg.k,
                        cfg.kprime,
                        v,
                        cfg.witness_cap,
                    )
                    .map_err(|e| config_field("variant", e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let verdicts: Vec<Verdict> = matrices
                .iter()
                .flat_map(|m| m.cells.iter().map(|c| c.verdict.clone()))
                .collect();
            let rep = TableReport {
                config: cfg.echo(),
                matrices,
                generated_by: audit::GENERATED_BY.into(),
                schema_version: audit::SCHEMA_VERSION.into(),
            };
            emit_report(&rep, out)?;
            print_table(cfg, &verdicts);
        }
        Command::SolveFeq => {
            let variant = cfg
                .variants
                .iter()
                .copied()
                .find(|v| matches!(v, EquationId::FeqNonres | EquationId::FeqPlus))
                .ok_or_else(|| config_field("variant", "solve-feq needs FEQ_NONRES or FEQ_PLUS"))?;
            let q = match &cfg.q {
                QValue::Value(r) => r.clone(),
                QValue::Symbolic => return Err(config_field("q", "solve-feq needs a rational q")),
            };
            let [lo, hi] = cfg.search_window;
            let res = audit::feq_solution_search(
                lo,
                hi,
                &cfg.values,
                &q,
                cfg.kprime,
                variant,
                cfg.boundary,
            )
            .map_err(|e| config_field("values", e))?;
            emit_report(&res, out)?;
        }
        Command::CrossCheck => {
            let rep = cross_check(&params(cfg), &operator(cfg)?, &cfg.window_box())
                .map_err(|e| config_field("alpha", e))?;
            emit_report(&rep, out)?;
        }
        Command::Derived => {
            let ex = structure_constants(&params(cfg), &operator(cfg)?, &cfg.window_box());
            emit_report(&ex, out)?;
        }
    }
    Ok(())
}

/// Full entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return EXIT_OK;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("rbaudit: {}", msg.lines().next().unwrap_or("usage error"));
            return EXIT_CONFIG;
        }
    };
    let result = config::merge(&cli.flags)
        .map_err(RunError::from)
        .and_then(|cfg| execute(cli.command, &cfg));
    match result {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            EXIT_OK
        }
        Err(RunError::Config(e)) => {
            eprintln!("rbaudit: {e}");
            EXIT_CONFIG
        }
        Err(RunError::Io(e)) => {
            eprintln!("rbaudit: {e}");
            EXIT_IO
        }
    }
}
