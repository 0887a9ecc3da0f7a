//! Command-line front end: argument parsing, dispatch to the library
//! operations, and atomic CSV/JSON output.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::argument;
use crate::bounds;
use crate::contour::{self, ContourSpec};
use crate::error::{Result, ZmlError};
use crate::report::{self, ReportConfig};
use crate::short_intervals::{self, DeltaRule, MomentSpec};
use crate::value::{ComplexValue, DEFAULT_TOL};
use crate::zeros;
use crate::zeta;

#[derive(Parser)]
#[command(
    name = "zml",
    about = "Numerical laboratory for the Riemann zeta function",
    version
)]
pub struct Cli {
    /// Absolute tolerance (falls back to ZML_TOL, then 1e-8)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write output to this file (atomic: temp file + rename)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate zeta(sigma + i t)
    Zeta {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: f64,
    },
    /// Zero tables: scan, ingest, stats
    Zeros {
        #[command(subcommand)]
        action: ZerosAction,
    },
    /// S(T) by continuous argument variation
    #[command(name = "s-t")]
    ST {
        #[arg(long)]
        t: f64,
    },
    /// N(T): counting formula against the sign-change census
    #[command(name = "n-t")]
    NT {
        #[arg(long)]
        t: f64,
    },
    /// Short-interval moment integral over [delta, 2 delta] at a center
    Moment {
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        #[arg(long)]
        center: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        k: f64,
    },
    /// Window maximum of |zeta(1/2 + it)| over [T, T + delta]
    Fmax {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Scan window maxima against a power-law threshold
    #[command(name = "karatsuba-scan")]
    KaratsubaScan {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// delta rule: a number, "inv-log", or "inv-log-log"
        #[arg(long, default_value = "inv-log")]
        rule: String,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        a_prime: f64,
    },
    /// Short-interval lower-bound check at one parameter cell
    Theorem3 {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Jensen and window-maximum inequality checks
    Jensen {
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Hoelder inequality check
    Holder {
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Evaluate a named explicit bound
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// Rectangle-contour verification of the residue identities
    Contour {
        #[command(subcommand)]
        which: ContourCommand,
    },
    /// Run the bundled acceptance suite and write its manifest
    Report {
        #[arg(long)]
        zeros_file: Option<PathBuf>,
        #[arg(long, default_value_t = 20260825)]
        seed: u64,
    },
}

#[derive(Args)]
struct WindowArgs {
    #[arg(long)]
    t: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
}

#[derive(Subcommand)]
enum ZerosAction {
    /// Find zeros on [from, to] by sign changes of Z
    Scan {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
    },
    /// Parse and validate an external zero table
    Ingest {
        #[arg(long)]
        file: PathBuf,
    },
    /// Multiplicity statistics N_j up to height t
    Stats {
        #[arg(long)]
        t: f64,
        /// external table; omitted = scan [10, t]
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    Theorem1 {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long, default_value_t = 1.0)]
        ell: f64,
        #[arg(long, default_value_t = 0.0)]
        o1: f64,
        #[arg(long, default_value_t = 0.0)]
        o2: f64,
    },
    Theorem2 {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 0.0)]
        c: f64,
    },
    Theorem4 {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[arg(long, default_value_t = 0.0)]
        c: f64,
    },
    Corollary1 {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
    },
    Corollary2 {
        #[arg(long)]
        m: f64,
        #[arg(long)]
        gamma: f64,
    },
    Ford {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: f64,
    },
    #[command(name = "one-line-floor")]
    OneLineFloor {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0.01)]
        c: f64,
    },
    Trudgian {
        #[arg(long = "T")]
        t: f64,
    },
    #[command(name = "goldston-gonek")]
    GoldstonGonek {
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0)]
        o_term: f64,
    },
    #[command(name = "s-records")]
    SRecords,
}

#[derive(Subcommand)]
enum ContourCommand {
    #[command(name = "verify-2-1")]
    Verify21 {
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 2000)]
        nodes: usize,
    },
    #[command(name = "verify-5-4")]
    Verify54 {
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[arg(long, default_value_t = 2000)]
        nodes: usize,
    },
}

/// Resolved tolerance: flag, then ZML_TOL, then the default.
fn resolve_tol(flag: Option<f64>) -> Result<f64> {
    if let Some(t) = flag {
        if !(t > 0.0) {
            return Err(ZmlError::DomainViolation(format!("tol must be positive, got {t}")));
        }
        return Ok(t);
    }
    match std::env::var("ZML_TOL") {
        Ok(raw) => raw
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0)
            .ok_or_else(|| ZmlError::DomainViolation(format!("bad ZML_TOL value {raw:?}"))),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

/// Writes through a temp file in the target directory, then renames, so
/// readers never observe a partial file.
fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("zml-out")
        )),
        None => PathBuf::from(format!(".{}.tmp", path.display())),
    };
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn emit(out: &Option<PathBuf>, content: String) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, &content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn parse_rule(raw: &str) -> Result<DeltaRule> {
    match raw {
        "inv-log" => Ok(DeltaRule::InvLog),
        "inv-log-log" => Ok(DeltaRule::InvLogLog),
        other => other
            .parse::<f64>()
            .ok()
            .filter(|d| *d > 0.0)
            .map(DeltaRule::Const)
            .ok_or_else(|| {
                ZmlError::DomainViolation(format!(
                    "delta rule must be a positive number, \"inv-log\" or \"inv-log-log\", got {other:?}"
                ))
            }),
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let tol = resolve_tol(cli.tol)?;
    let out = cli.out;
    match cli.command {
        Command::Zeta { sigma, t } => {
            let v = zeta::eval_zeta(ComplexValue::exact(sigma, t), tol)?;
            emit(&out, to_json(&v))
        }
        Command::Zeros { action } => match action {
            ZerosAction::Scan { from, to } => {
                let table = zeros::find_zeros(from, to, tol.max(1e-12))?;
                emit(&out, table.to_csv())
            }
            ZerosAction::Ingest { file } => {
                let table = zeros::load_zero_table(&file)?;
                emit(&out, table.to_csv())
            }
            ZerosAction::Stats { t, file } => {
                let table = match file {
                    Some(path) => zeros::load_zero_table(&path)?,
                    None => zeros::find_zeros(10.0, t, tol.max(1e-12))?,
                };
                let stats = zeros::nj_statistics(&table, t)?;
                emit(&out, to_json(&stats))
            }
        },
        Command::ST { t } => {
            let trace = argument::s_of_t_perturbed(t, tol)?;
            #[derive(Serialize)]
            struct STOut {
                t: f64,
                s_value: f64,
                step_count: usize,
            }
            emit(
                &out,
                to_json(&STOut {
                    t,
                    s_value: trace.s_value,
                    step_count: trace.step_count,
                }),
            )
        }
        Command::NT { t } => {
            let report = argument::n_of_t(t)?;
            emit(&out, to_json(&report))
        }
        Command::Moment {
            sigma,
            center,
            delta,
            k,
        } => {
            let spec = MomentSpec {
                sigma,
                center,
                delta,
                k,
                tol,
            };
            let m = short_intervals::moment_integral(&spec)?;
            emit(&out, to_json(&m))
        }
        Command::Fmax { t, delta } => {
            let f = short_intervals::f_max(t, delta, tol)?;
            #[derive(Serialize)]
            struct FmaxOut {
                t: f64,
                delta: f64,
                f: f64,
            }
            emit(&out, to_json(&FmaxOut { t, delta, f }))
        }
        Command::KaratsubaScan {
            from,
            to,
            points,
            rule,
            a,
            a_prime,
        } => {
            if !(from > 1.0 && to > from && points >= 2) {
                return Err(ZmlError::DomainViolation(
                    "need 1 < from < to and at least 2 points".into(),
                ));
            }
            let rule = parse_rule(&rule)?;
            let grid: Vec<f64> = (0..points)
                .map(|i| {
                    (from.ln() + (to.ln() - from.ln()) * i as f64 / (points - 1) as f64).exp()
                })
                .collect();
            let rows = short_intervals::karatsuba_scan(&grid, rule, a, a_prime, tol)?;
            emit(&out, short_intervals::scan_to_csv(&rows))
        }
        Command::Theorem3 { window, c } => {
            let r = short_intervals::theorem3_check(window.t, window.delta, window.k, window.sigma, c)?;
            emit(&out, to_json(&r))
        }
        Command::Jensen { window } => {
            let r = short_intervals::jensen_checks(window.t, window.delta, window.k, window.sigma)?;
            emit(&out, to_json(&r))
        }
        Command::Holder { window } => {
            let r = short_intervals::holder_check(window.t, window.delta, window.k, window.sigma)?;
            emit(&out, to_json(&r))
        }
        Command::Bounds { which } => {
            let content = match which {
                BoundsCommand::Theorem1 {
                    gamma,
                    delta,
                    k,
                    ell,
                    o1,
                    o2,
                } => to_json(&bounds::theorem1_bound(gamma, delta, k, ell, o1, o2)?),
                BoundsCommand::Theorem2 { gamma, delta, a, c } => {
                    to_json(&bounds::theorem2_bound(gamma, delta, a, c)?)
                }
                BoundsCommand::Theorem4 {
                    beta,
                    gamma,
                    eps,
                    c,
                } => to_json(&bounds::theorem4_bound(beta, gamma, eps, c)?),
                BoundsCommand::Corollary1 { beta, gamma } => {
                    to_json(&bounds::corollary1_bound(beta, gamma)?)
                }
                BoundsCommand::Corollary2 { m, gamma } => {
                    to_json(&bounds::corollary2_beta_bound(m, gamma)?)
                }
                BoundsCommand::Ford { sigma, t } => to_json(&bounds::ford_bound(sigma, t)?),
                BoundsCommand::OneLineFloor { t, c } => {
                    to_json(&bounds::zeta_one_line_floor(t, c)?)
                }
                BoundsCommand::Trudgian { t } => to_json(&bounds::trudgian_s_bound(t)?),
                BoundsCommand::GoldstonGonek { gamma, o_term } => {
                    to_json(&bounds::goldston_gonek_bound(gamma, o_term)?)
                }
                BoundsCommand::SRecords => to_json(&bounds::s_record_table()),
            };
            emit(&out, content)
        }
        Command::Contour { which } => {
            let content = match which {
                ContourCommand::Verify21 {
                    beta,
                    gamma,
                    r,
                    alpha,
                    nodes,
                } => {
                    let spec = ContourSpec {
                        beta,
                        gamma,
                        r,
                        alpha,
                        x: 1.0,
                        nodes_per_side: nodes,
                    };
                    to_json(&contour::verify_identity_2_1(&spec)?)
                }
                ContourCommand::Verify54 {
                    beta,
                    gamma,
                    r,
                    x,
                    nodes,
                } => {
                    let spec = ContourSpec {
                        beta,
                        gamma,
                        r,
                        alpha: 0.5,
                        x,
                        nodes_per_side: nodes,
                    };
                    to_json(&contour::verify_identity_5_4(&spec)?)
                }
            };
            emit(&out, content)
        }
        Command::Report { zeros_file, seed } => {
            let config = ReportConfig {
                tol,
                zeros_file,
                seed,
            };
            let manifest = report::run_acceptance(&config);
            eprint!("{}", report::format_manifest(&manifest));
            emit(&out, to_json(&manifest))?;
            if !manifest.all_passed() {
                return Err(ZmlError::PreconditionUnmet(format!(
                    "{} acceptance criteria failed",
                    manifest.failed
                )));
            }
            Ok(())
        }
    }
}

/// Entry point: parses argv, runs the command, maps errors to exit codes
/// (0 success, 1 domain error, 2 numerical failure, 64 usage).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
