//! The `gvkit` command line.
//!
//! Reports are JSON on stdout; artifacts go to `--output` (or to stdout,
//! replacing the report, when no path is given). Exit status is 0 on
//! success, 1 when a report flags violations or non-integral values, and 2
//! on input errors, with `{"error": kind, "message": ...}` on stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::elem_series::{
    check_local_bps_with, gw_elem_threads, z_elem_threads, Backend, ElemSeriesJson, LocalBpsJson,
};
use crate::error::{GvError, Result};
use crate::exact_arith::{format_rational, parse_rational, Rational};
use crate::gv_transform::{
    am_invert, bps_forward, bps_from_json, bps_invert, bps_to_json, expected_dimension,
    fano_from_json, fano_invert, BpsTable,
};
use crate::novikov::{series_from_json, series_to_json};
use crate::structure_solver::full_pipeline;

#[derive(Debug, Parser)]
#[command(
    name = "gvkit",
    version,
    about = "Exact Gopakumar-Vafa transforms and elementary-cluster series"
)]
pub struct Cli {
    /// Suppress reports on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Q,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// The partition-sum series `Z^elem_g`.
    Z,
    /// Its logarithm `GW^elem_g`.
    Gw,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit `Z^elem_g` or `GW^elem_g` up to `q^D`.
    Elem {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        qdeg: u32,
        #[arg(long, value_enum, default_value = "q")]
        backend: BackendArg,
        /// t-order of the t backend (coefficients known below t^T).
        #[arg(long, default_value_t = 10)]
        t_order: i64,
        #[arg(long, value_enum, default_value = "z")]
        kind: SeriesKind,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// BPS transform: GW series to BPS table with --invert, otherwise the reverse.
    Bps {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        invert: bool,
        #[arg(long)]
        t_order: Option<i64>,
        /// Energy bound of the forward output (default: the table's).
        #[arg(long)]
        energy: Option<String>,
        /// Genus bound of the forward output (default: the table's).
        #[arg(long)]
        genus_bound: Option<u32>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve for elementary counts, assemble and cross-check the BPS table.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t_order: Option<i64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify integrality, vanishing and closed forms of local BPS numbers.
    Check {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        qdeg: u32,
        #[arg(long)]
        h_max: Option<u32>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Invert the Fano-class transform.
    Fano {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t_order: Option<i64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Invert the genus-zero multiple-cover formula with k insertions.
    Am {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        insertions: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Expected real dimension of the moduli space.
    Dim {
        #[arg(long, allow_hyphen_values = true)]
        c1: i64,
        #[arg(long, default_value_t = 6)]
        dim_x: u32,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Comma-separated real dimensions of the insertion classes.
        #[arg(long, value_delimiter = ',')]
        insertions: Vec<u32>,
    },
}

/// Parses arguments and runs, writing to the given streams.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            report_error(err, "usage", &e.to_string());
            2
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli) {
        Ok(outcome) => {
            let mut emit = || -> std::io::Result<()> {
                if let Some(text) = &outcome.stdout {
                    if !(cli.quiet && outcome.stdout_is_report) {
                        writeln!(out, "{text}")?;
                    }
                }
                Ok(())
            };
            if let Err(e) = emit() {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return 0;
                }
                report_error(err, "io", &e.to_string());
                return 2;
            }
            if outcome.violations {
                1
            } else {
                0
            }
        }
        Err(e) => {
            report_error(err, e.kind(), &e.to_string());
            match e {
                GvError::InternalConsistency(_) => 1,
                _ => 2,
            }
        }
    }
}

fn report_error(err: &mut dyn Write, kind: &str, message: &str) {
    let obj = json!({ "error": kind, "message": message.trim_end() });
    let _ = writeln!(err, "{obj}");
}

struct Outcome {
    stdout: Option<String>,
    stdout_is_report: bool,
    violations: bool,
}

fn threads() -> Result<usize> {
    match std::env::var("GVKIT_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| GvError::Parse(format!("GVKIT_THREADS={v} is not a thread count"))),
        _ => Ok(0),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| GvError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

/// Writes the artifact to `output`, or returns it for stdout.
fn deliver(
    artifact: String,
    output: &Option<PathBuf>,
    report: String,
    violations: bool,
) -> Result<Outcome> {
    match output {
        Some(path) => {
            std::fs::write(path, format!("{artifact}\n"))
                .map_err(|e| GvError::Parse(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome {
                stdout: Some(report),
                stdout_is_report: true,
                violations,
            })
        }
        None => Ok(Outcome {
            stdout: Some(artifact),
            stdout_is_report: false,
            violations,
        }),
    }
}

fn table_summary(direction: &str, t: &BpsTable<Rational>) -> (String, bool) {
    let bad: Vec<_> = t
        .non_integral()
        .into_iter()
        .map(|(k, v)| json!({"class": k.class.coords(), "h": k.genus, "coeff": format_rational(v)}))
        .collect();
    let violations = !bad.is_empty();
    let report = json!({
        "command": direction,
        "terms": t.len(),
        "integral": !violations,
        "non_integral": bad,
    });
    (pretty(&report), violations)
}

fn default_order(genus_max: u32, t_order: Option<i64>) -> i64 {
    t_order.unwrap_or(2 * genus_max as i64 + 2)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Elem {
            genus,
            qdeg,
            backend,
            t_order,
            kind,
            output,
        } => {
            let backend = match backend {
                BackendArg::Q => Backend::Q,
                BackendArg::T => Backend::T(*t_order),
            };
            let n = threads()?;
            let series = match kind {
                SeriesKind::Z => z_elem_threads::<Rational>(*genus, *qdeg, backend, n)?,
                SeriesKind::Gw => gw_elem_threads::<Rational>(*genus, *qdeg, backend, n)?,
            };
            let doc = ElemSeriesJson::from_series(&series);
            let report = pretty(&json!({
                "command": "elem",
                "genus": genus,
                "q_degree": qdeg,
                "backend": doc.backend,
                "terms": doc.terms.len(),
            }));
            deliver(pretty(&doc), output, report, false)
        }
        Command::Bps {
            input,
            invert,
            t_order,
            energy,
            genus_bound,
            output,
        } => {
            let text = read(input)?;
            if *invert {
                let gw = series_from_json(&text)?;
                let table = bps_invert(&gw, default_order(gw.genus_max(), *t_order))?;
                let (report, bad) = table_summary("bps_invert", &table);
                deliver(bps_to_json(&table), output, report, bad)
            } else {
                let table = bps_from_json(&text)?;
                let energy = match energy {
                    Some(e) => parse_rational(e)?,
                    None => table.energy().clone(),
                };
                let g = genus_bound.unwrap_or(table.h_max());
                let gw = bps_forward(&table, energy, g, default_order(g, *t_order))?;
                let report = pretty(&json!({"command": "bps_forward", "terms": gw.len()}));
                deliver(series_to_json(&gw), output, report, false)
            }
        }
        Command::Solve {
            input,
            t_order,
            output,
        } => {
            let gw = series_from_json(&read(input)?)?;
            let rep = full_pipeline(&gw, default_order(gw.genus_max(), *t_order))?;
            let bad = !rep.integral;
            let text = pretty(&rep);
            if let Some(path) = output {
                std::fs::write(path, format!("{text}\n"))
                    .map_err(|e| GvError::Parse(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Outcome {
                stdout: Some(text),
                stdout_is_report: true,
                violations: bad,
            })
        }
        Command::Check {
            genus,
            qdeg,
            h_max,
            output,
        } => {
            let rep = check_local_bps_with(*genus, *qdeg, *h_max)?;
            if let Some(path) = output {
                let local =
                    crate::elem_series::local_bps::<Rational>(*genus, *qdeg, Some(rep.h_max))?;
                std::fs::write(
                    path,
                    format!("{}\n", pretty(&LocalBpsJson::from_local(&local))),
                )
                .map_err(|e| GvError::Parse(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Outcome {
                stdout: Some(pretty(&rep)),
                stdout_is_report: true,
                violations: !rep.passed,
            })
        }
        Command::Fano {
            input,
            t_order,
            output,
        } => {
            let f = fano_from_json(&read(input)?)?;
            let table = fano_invert(&f, default_order(f.series().genus_max(), *t_order))?;
            let (report, bad) = table_summary("fano_invert", &table);
            let dims: Vec<_> = f
                .dimension_violations()
                .into_iter()
                .map(|(a, d)| json!({"class": a.coords(), "expected_dimension": d}))
                .collect();
            let mut report: serde_json::Value = serde_json::from_str(&report).expect("json");
            report["dimension_mismatches"] = json!(dims);
            deliver(bps_to_json(&table), output, pretty(&report), bad)
        }
        Command::Am {
            input,
            insertions,
            output,
        } => {
            let gw = series_from_json(&read(input)?)?;
            let table = am_invert(&gw, *insertions)?;
            let (report, bad) = table_summary("am_invert", &table);
            deliver(bps_to_json(&table), output, report, bad)
        }
        Command::Dim {
            c1,
            dim_x,
            genus,
            insertions,
        } => {
            let d = expected_dimension(*c1, *dim_x, *genus, insertions);
            let report = pretty(&json!({"command": "dim", "expected_dimension": d}));
            Ok(Outcome {
                stdout: Some(report),
                stdout_is_report: true,
                violations: false,
            })
        }
    }
}
