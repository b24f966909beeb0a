//! Command-line front end.
//!
//! Exit codes: 0 success or accept, 1 reject, 2 usage or input error,
//! 3 candidate cap or timeout hit.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand};

use crate::certify::{verify_certificate, Certificate, Verdict};
use crate::dispatch::{disp, DispError, DispOptions};
use crate::gadget::{build_gadget, predicted_bound};
use crate::graph::{parse_graph, Graph};
use crate::oracle::{brute_disp_with, OracleConfig, OracleError, DEFAULT_CANDIDATE_CAP};
use crate::rational::Rational;
use crate::subdivide::subdivide;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dispersion", version, about = "Exact continuous dispersion on unit-edge graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dispersion number by the fastest exact method for delta.
    Solve {
        graph: PathBuf,
        #[arg(long, value_parser = parse_delta)]
        delta: Rational,
        /// Write the optimal point set here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Allow the exponential oracle for numerators of 3 or more.
        #[arg(long)]
        brute_force: bool,
    },
    /// Exact value by exhaustive search over the candidate grid.
    Oracle {
        graph: PathBuf,
        #[arg(long, value_parser = parse_delta)]
        delta: Rational,
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_CAP)]
        cap: usize,
        /// Seconds.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Check a certificate for "disp >= k".
    Verify {
        graph: PathBuf,
        #[arg(long, value_parser = parse_delta)]
        delta: Rational,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Reduction instance from a cubic graph.
    Gadget {
        graph: PathBuf,
        #[arg(long, value_parser = parse_delta)]
        delta: Rational,
        /// Writes <out>.graph and <out>.map; prints the graph otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace every edge by a path of `factor` edges.
    Subdivide {
        graph: PathBuf,
        #[arg(long)]
        factor: usize,
    },
}

fn parse_delta(s: &str) -> Result<Rational, String> {
    let d: Rational = s.trim().parse().map_err(|e| format!("{e}"))?;
    if d.is_positive() {
        Ok(d)
    } else {
        Err(format!("delta must be positive, got {d}"))
    }
}

/// A failure rendered as one line on stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::SizeGuard { .. } | OracleError::Timeout(_) => EXIT_GUARD,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<DispError> for Failure {
    fn from(e: DispError) -> Self {
        match e {
            DispError::Oracle(o) => o.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message.replace('\n', " "));
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::usage(e.to_string());
    match command {
        Command::Solve { graph, delta, witness, brute_force } => {
            let g = load_graph(&graph)?;
            let opts = DispOptions { allow_bruteforce: brute_force, ..Default::default() };
            let r = disp(&g, delta, &opts)?;
            writeln!(out, "{}", r.value).map_err(io)?;
            if let Some(path) = witness {
                write(&path, &r.witness.to_text(&g))?;
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { graph, delta, cap, timeout } => {
            let g = load_graph(&graph)?;
            let timeout = match timeout {
                Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
                Some(s) => return Err(Failure::usage(format!("invalid timeout {s}"))),
                None => None,
            };
            let cfg = OracleConfig { candidate_cap: cap, timeout, ..Default::default() };
            let r = brute_disp_with(&g, delta, &cfg)?;
            writeln!(out, "{}", r.value).map_err(io)?;
            write!(out, "{}", r.witness.to_text(&g)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { graph, delta, certificate } => {
            let g = load_graph(&graph)?;
            let text = read(&certificate)?;
            let (k, cert) = Certificate::parse(&text)
                .map_err(|e| Failure::usage(format!("{}: {e}", certificate.display())))?;
            match verify_certificate(&g, delta, &cert, k).map_err(|e| Failure::usage(e.to_string()))? {
                Verdict::Accept => {
                    writeln!(out, "accept").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Verdict::Reject(reason) => {
                    writeln!(out, "reject: {reason}").map_err(io)?;
                    Ok(EXIT_REJECT)
                }
            }
        }
        Command::Gadget { graph, delta, out: prefix } => {
            let h = load_graph(&graph)?;
            let inst = build_gadget(&h, delta).map_err(|e| Failure::usage(e.to_string()))?;
            let c = inst.coeffs;
            let per_edge = 2 * c.y1 + c.y2;
            writeln!(out, "x1={} y1={} x2={} y2={}", c.x1, c.y1, c.x2, c.y2).map_err(io)?;
            writeln!(
                out,
                "vertices={} edges={} bound=k+{}*{}=k+{}",
                inst.graph.vertex_count(),
                inst.graph.edge_count(),
                per_edge,
                inst.h_edge_count,
                predicted_bound(&inst, 0)
            )
            .map_err(io)?;
            match prefix {
                Some(p) => {
                    write(&with_suffix(&p, "graph"), &inst.graph.to_text())?;
                    write(&with_suffix(&p, "map"), &inst.map_text())?;
                }
                None => write!(out, "{}", inst.graph.to_text()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Subdivide { graph, factor } => {
            if factor == 0 {
                return Err(Failure::usage("factor must be at least 1"));
            }
            let g = load_graph(&graph)?;
            write!(out, "{}", subdivide(&g, factor).graph.to_text()).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["dispersion"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn delta_parsing_is_strict() {
        assert_eq!(parse_delta("2/3").unwrap(), Rational::frac(2, 3));
        assert_eq!(parse_delta("4").unwrap(), Rational::integer(4));
        assert!(parse_delta("0.5").is_err());
        assert!(parse_delta("0").is_err());
        assert!(parse_delta("-1/2").is_err());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["solve", "x.graph", "--delta", "0.5"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["solve", "/nonexistent/x.graph", "--delta", "2"]);
        assert_eq!(code, EXIT_USAGE);
        assert_eq!(err.lines().count(), 1);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn suffix() {
        assert_eq!(with_suffix(Path::new("/tmp/k4"), "map"), PathBuf::from("/tmp/k4.map"));
    }
}
