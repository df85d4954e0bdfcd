//! File formats, reports and the `ncop` command line on top of `ncop-core`.

pub mod cli;
pub mod commands;
pub mod complex;
pub mod formats;
pub mod random;
pub mod report;

use std::io::Write;

use serde_json::json;

use cli::{Cli, Format};
use commands::{Failure, Job};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

fn error_report(kind: &str, command: &str, message: &str) -> serde_json::Value {
    json!({ "error": kind, "command": command, "message": message })
}

fn emit_error(v: &serde_json::Value) {
    let _ = writeln!(std::io::stderr(), "{v}");
}

/// Runs one job; writes artifacts and returns the exit status.
pub fn run(cli: &Cli) -> i32 {
    let name = cli.command.name();
    let tol = cli.tol.unwrap_or_else(|| cli.command.default_tol());
    if !(tol.is_finite() && tol >= 0.0) {
        emit_error(&error_report(
            "input",
            name,
            "--tol must be finite and nonnegative",
        ));
        return EXIT_INPUT;
    }
    let job = Job {
        tol,
        seed: cli.seed,
        input: cli.input.as_deref(),
    };
    let rep = match commands::run(&cli.command, &job) {
        Ok(r) => r,
        Err(Failure::Input(m)) => {
            emit_error(&error_report("input", name, &m));
            return EXIT_INPUT;
        }
        Err(Failure::Invariant(m)) => {
            let mut v = error_report("invariant", name, &m);
            v["tolerance"] = report::real(tol);
            emit_error(&v);
            return EXIT_FAILED;
        }
    };
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rep.to_json()).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => match rep.table(cli.table.as_deref()) {
            Some(t) => t.csv(),
            None => {
                let names: Vec<_> = rep.tables.iter().map(|t| t.name.as_str()).collect();
                let msg = format!(
                    "no table {:?}; available: {}",
                    cli.table.as_deref().unwrap_or(""),
                    names.join(", ")
                );
                emit_error(&error_report("input", name, &msg));
                return EXIT_INPUT;
            }
        },
    };
    let written = match &cli.out {
        Some(path) => {
            std::fs::write(path, body.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(m) = written {
        emit_error(&error_report("output", name, &m));
        return EXIT_INPUT;
    }
    if rep.passed() {
        EXIT_OK
    } else {
        emit_error(&json!({
            "error": "tolerance",
            "command": name,
            "tolerance": report::real(rep.tolerance),
            "max_residual": report::real(rep.max_residual),
            "failures": rep.failures,
        }));
        EXIT_FAILED
    }
}
