//! Command-line front end. Four subcommands, all thin wrappers over the
//! library:
//!
//! * `figures`  — tabulate both partner potentials along the contour to CSV;
//! * `verify`   — run the identity suite at one coupling, emit a JSON report;
//! * `spectrum` — race analytic ladder energies against the finite-difference
//!   eigensolver, emit CSV or JSON;
//! * `scan`     — sweep the coupling along a path (polar interpolation) and
//!   track energies and PT diagnostics.
//!
//! Exit codes: 0 success, 1 a check or comparison failed, 2 unusable
//! configuration or I/O trouble, 3 partial results (some branches or levels
//! flagged). Output is deterministic for a fixed command line: reruns are
//! byte-identical.

use crate::model::{v_minus, v_plus, ModelParams, QuasiParity, Sector};
use crate::numeric::{alpha_scan, discretize, inverse_iteration_from, GridSpec, ScanParams};
use crate::states::{energy, eval_state, StateLabel};
use crate::verify::run_suite;
use crate::C64;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fs;
use std::path::PathBuf;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PARTIAL: u8 = 3;

/// Environment variable consulted for the default output directory of
/// `figures` when `--out-dir` is not given.
pub const OUT_DIR_ENV: &str = "PTSUSY_OUT_DIR";

/// Numeric ladder energies must land this close to the analytic ones for a
/// `spectrum` row to count as agreeing (dominated by the h^2 discretization
/// bias on the default grid).
pub const SPECTRUM_TOL: f64 = 5e-3;

#[derive(Debug, Parser)]
#[command(
    name = "ptsusy",
    version,
    about = "Partner potentials, ladders, and cross-checks for the complexified \
             oscillator on the contour z = x - i*eps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate both partner potentials along the contour into CSV files
    Figures(FiguresArgs),
    /// Run the identity suite at one coupling and emit a JSON report
    Verify(VerifyArgs),
    /// Compare analytic ladder energies against the finite-difference solver
    Spectrum(SpectrumArgs),
    /// Sweep the coupling along a path and track energies + PT diagnostics
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Coupling alpha as RE, IMi, or RE+IMi / RE-IMi (e.g. "0.3", "0.3i",
    /// "0.1+0.2i"); omitted: tabulate both 0.3 and 0.3i
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Contour shift epsilon (must be positive)
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Left edge of the sampled x range
    #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
    pub x_min: f64,
    /// Right edge of the sampled x range
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub x_max: f64,
    /// Sampling step along x
    #[arg(long, default_value_t = 0.01)]
    pub x_step: f64,
    /// Directory for the CSV files (default: $PTSUSY_OUT_DIR, then ".")
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Coupling alpha as RE, IMi, or RE+IMi / RE-IMi
    #[arg(long, default_value = "0.3", allow_hyphen_values = true)]
    pub alpha: String,
    /// Contour shift epsilon (must be positive)
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Ladder levels per sector exercised by the state-based checks
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    /// Write the JSON report to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Coupling alpha as RE, IMi, or RE+IMi / RE-IMi
    #[arg(long, default_value = "0.3", allow_hyphen_values = true)]
    pub alpha: String,
    /// Contour shift epsilon (must be positive)
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Ladder levels per sector and quasi-parity branch
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    /// Left edge of the eigensolver grid
    #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
    pub grid_min: f64,
    /// Right edge of the eigensolver grid
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub grid_max: f64,
    /// Grid nodes including both walls
    #[arg(long, default_value_t = 4001)]
    pub grid_points: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write the table to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Coupling path START:END:STEPS with alpha tokens at both ends, walked
    /// by polar interpolation (e.g. "0.3:0.3i:7" traces a quarter circle)
    #[arg(long, allow_hyphen_values = true)]
    pub path: String,
    /// Contour shift epsilon (must be positive)
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Ladder levels tracked per quasi-parity branch
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    /// Left edge of the eigensolver grid
    #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
    pub grid_min: f64,
    /// Right edge of the eigensolver grid
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub grid_max: f64,
    /// Grid nodes including both walls
    #[arg(long, default_value_t = 4001)]
    pub grid_points: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write the table to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One `spectrum` comparison row.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub sector: String,
    pub q: i8,
    pub n: usize,
    #[serde(with = "crate::c64_serde")]
    pub analytic: C64,
    #[serde(with = "crate::c64_serde")]
    pub numeric: C64,
    pub abs_diff: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Parse the coupling grammar `RE | IMi | RE+IMi | RE-IMi`. Plain floats for
/// both parts (scientific notation allowed); the imaginary part always ends
/// in `i`. Non-finite values are rejected.
pub fn parse_alpha(token: &str) -> Result<C64, String> {
    let t = token.trim();
    let bad = || format!("invalid alpha '{token}': expected RE, IMi, RE+IMi, or RE-IMi");
    let finite = |v: f64| if v.is_finite() { Ok(v) } else { Err(bad()) };
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(C64::new(finite(t.parse::<f64>().map_err(|_| bad())?)?, 0.0));
    };
    // Split RE from IM at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for j in (1..bytes.len()).rev() {
        let c = bytes[j] as char;
        if (c == '+' || c == '-') && !matches!(bytes[j - 1] as char, 'e' | 'E') {
            split = Some(j);
            break;
        }
    }
    match split {
        None => Ok(C64::new(
            0.0,
            finite(body.parse::<f64>().map_err(|_| bad())?)?,
        )),
        Some(j) => {
            let re: f64 = finite(body[..j].parse().map_err(|_| bad())?)?;
            let im_body = &body[j + 1..];
            if im_body.is_empty() || im_body.starts_with(['+', '-']) {
                return Err(bad());
            }
            let sign = if bytes[j] as char == '-' { -1.0 } else { 1.0 };
            let im: f64 = finite(im_body.parse().map_err(|_| bad())?)?;
            Ok(C64::new(re, sign * im))
        }
    }
}

/// Parse `START:END:STEPS` into endpoints and a point count (>= 2).
pub fn parse_path(spec: &str) -> Result<(C64, C64, usize), String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!(
            "invalid path '{spec}': expected START:END:STEPS (e.g. 0.3:0.3i:7)"
        ));
    }
    let a = parse_alpha(parts[0])?;
    let b = parse_alpha(parts[1])?;
    let steps: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("invalid step count '{}'", parts[2]))?;
    if steps < 2 {
        return Err("path needs at least 2 steps (both endpoints)".to_string());
    }
    Ok((a, b, steps))
}

/// Interpolate in modulus and phase, not componentwise, so a sweep from a
/// real coupling to an imaginary one keeps |alpha| meaningful along the way
/// (0.3 -> 0.3i traces the arc 0.3 e^{i theta} instead of cutting through
/// small couplings).
pub fn interpolate_path(a: C64, b: C64, steps: usize) -> Vec<C64> {
    let (r0, th0) = a.to_polar();
    let (r1, mut th1) = b.to_polar();
    while th1 - th0 > std::f64::consts::PI {
        th1 -= 2.0 * std::f64::consts::PI;
    }
    while th1 - th0 < -std::f64::consts::PI {
        th1 += 2.0 * std::f64::consts::PI;
    }
    (0..steps)
        .map(|k| {
            let t = k as f64 / (steps - 1) as f64;
            C64::from_polar(r0 + t * (r1 - r0), th0 + t * (th1 - th0))
        })
        .collect()
}

/// Floats in CSV output carry 12 significant digits.
fn fmt_sig(x: f64) -> String {
    format!("{:.11e}", x)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, content).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn resolve_out_dir(cli_choice: Option<PathBuf>) -> PathBuf {
    cli_choice
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn figure_samples(args: &FiguresArgs) -> Result<usize, String> {
    if !(args.x_min.is_finite() && args.x_max.is_finite() && args.x_min < args.x_max) {
        return Err(format!(
            "x range [{}, {}] is not a finite, increasing interval",
            args.x_min, args.x_max
        ));
    }
    if !(args.x_step.is_finite() && args.x_step > 0.0) {
        return Err(format!("x step {} must be positive", args.x_step));
    }
    // Last sample lands on x_max when the step divides the range (allowing
    // for rounding), else just short of it.
    let n = ((args.x_max - args.x_min) / args.x_step * (1.0 + 1e-12)).floor() as usize;
    Ok(n + 1)
}

fn cmd_figures(args: FiguresArgs) -> Result<u8, String> {
    let targets: Vec<(String, C64)> = match &args.alpha {
        Some(tok) => vec![(tok.trim().to_string(), parse_alpha(tok)?)],
        None => vec![
            ("0.3".to_string(), C64::new(0.3, 0.0)),
            ("0.3i".to_string(), C64::new(0.0, 0.3)),
        ],
    };
    let samples = figure_samples(&args)?;
    // Render everything before writing anything: a bad coupling or contour
    // must not leave half the files behind.
    let mut files: Vec<(String, String)> = Vec::new();
    let mut partial = false;
    for (tok, alpha) in &targets {
        let p_plus =
            ModelParams::new(*alpha, args.epsilon, QuasiParity::Plus).map_err(|e| e.to_string())?;
        let p_minus = ModelParams::new(*alpha, args.epsilon, QuasiParity::Minus)
            .map_err(|e| e.to_string())?;
        let mut body = String::from(
            "x,re_vplus,im_vplus,re_vminus_qp,im_vminus_qp,re_vminus_qm,im_vminus_qm,flag\n",
        );
        for i in 0..samples {
            let x = args.x_min + args.x_step * i as f64;
            let vp = v_plus(*alpha, args.epsilon, x);
            let vqp = v_minus(&p_plus, x);
            let vqm = v_minus(&p_minus, x);
            let finite = vp.is_finite() && vqp.is_finite() && vqm.is_finite();
            partial |= !finite;
            let flag = if finite { "ok" } else { "singular" };
            body.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                fmt_sig(x),
                fmt_sig(vp.re),
                fmt_sig(vp.im),
                fmt_sig(vqp.re),
                fmt_sig(vqp.im),
                fmt_sig(vqm.re),
                fmt_sig(vqm.im),
                flag
            ));
        }
        files.push((format!("figures_alpha_{tok}.csv"), body));
    }
    let out_dir = resolve_out_dir(args.out_dir);
    fs::create_dir_all(&out_dir)
        .map_err(|e| format!("creating {}: {e}", out_dir.display()))?;
    for (name, body) in files {
        let path = out_dir.join(name);
        fs::write(&path, body).map_err(|e| format!("writing {}: {e}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(if partial { EXIT_PARTIAL } else { EXIT_OK })
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, String> {
    let alpha = parse_alpha(&args.alpha)?;
    let report = run_suite(alpha, args.epsilon, args.levels).map_err(|e| e.to_string())?;
    let mut json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    json.push('\n');
    emit(&args.out, &json)?;
    let graded = report
        .checks
        .iter()
        .filter(|c| c.status != crate::verify::CheckStatus::Info)
        .count();
    let passed = report
        .checks
        .iter()
        .filter(|c| c.status == crate::verify::CheckStatus::Pass)
        .count();
    eprintln!(
        "verify: {passed}/{graded} graded checks passed ({} informational)",
        report.checks.len() - graded
    );
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn spectrum_rows(args: &SpectrumArgs, alpha: C64) -> Result<(Vec<SpectrumRow>, bool), String> {
    let grid = GridSpec::new(args.grid_min, args.grid_max, args.grid_points)
        .map_err(|e| e.to_string())?;
    if args.levels == 0 {
        return Err("levels must be at least 1".to_string());
    }
    let op_plus =
        discretize(|x| v_plus(alpha, args.epsilon, x), &grid).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut all_ok = true;
    for q in QuasiParity::BOTH {
        let p = ModelParams::new(alpha, args.epsilon, q).map_err(|e| e.to_string())?;
        let op_minus = discretize(|x| v_minus(&p, x), &grid).map_err(|e| e.to_string())?;
        for sector in Sector::BOTH {
            let op = match sector {
                Sector::Plus => &op_plus,
                Sector::Minus => &op_minus,
            };
            for n in 0..args.levels {
                let label = StateLabel { sector, n, q };
                let analytic = energy(label, &p);
                let start: Vec<C64> = (0..op.len())
                    .map(|i| eval_state(label, &p, grid.interior_point(i)))
                    .collect();
                let (numeric, residual, iterations, converged) =
                    match inverse_iteration_from(op, analytic, &start, 1e-8, 60) {
                        Ok(est) => (est.value, est.residual, est.iterations, est.converged),
                        Err(_) => (C64::new(f64::NAN, f64::NAN), f64::INFINITY, 0, false),
                    };
                let abs_diff = (numeric - analytic).norm();
                all_ok &= converged && abs_diff <= SPECTRUM_TOL;
                rows.push(SpectrumRow {
                    sector: sector.to_string(),
                    q: q.sign() as i8,
                    n,
                    analytic,
                    numeric,
                    abs_diff,
                    residual,
                    iterations,
                    converged,
                });
            }
        }
    }
    Ok((rows, all_ok))
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<u8, String> {
    let alpha = parse_alpha(&args.alpha)?;
    let (rows, all_ok) = spectrum_rows(&args, alpha)?;
    let content = match args.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from(
                "sector,q,n,re_analytic,im_analytic,re_numeric,im_numeric,\
                 abs_diff,residual,iterations,converged\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "{},{:+},{},{},{},{},{},{},{},{},{}\n",
                    r.sector,
                    r.q,
                    r.n,
                    fmt_sig(r.analytic.re),
                    fmt_sig(r.analytic.im),
                    fmt_sig(r.numeric.re),
                    fmt_sig(r.numeric.im),
                    fmt_sig(r.abs_diff),
                    fmt_sig(r.residual),
                    r.iterations,
                    r.converged
                ));
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(if all_ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_scan(args: ScanArgs) -> Result<u8, String> {
    let (a, b, steps) = parse_path(&args.path)?;
    let path = interpolate_path(a, b, steps);
    let sp = ScanParams {
        epsilon: args.epsilon,
        levels: args.levels,
        grid: GridSpec::new(args.grid_min, args.grid_max, args.grid_points)
            .map_err(|e| e.to_string())?,
        tol: 1e-8,
        max_iter: 60,
    };
    let rows = alpha_scan(&path, &sp).map_err(|e| e.to_string())?;
    let partial = rows.iter().any(|r| {
        r.branches
            .iter()
            .any(|b| b.degenerate || b.levels.iter().any(|l| !l.converged))
    });
    let content = match args.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from(
                "idx,re_alpha,im_alpha,q,degenerate,n,re_analytic,im_analytic,\
                 re_numeric,im_numeric,residual,iterations,converged,\
                 defect_v_plus,defect_v_minus,pairing\n",
            );
            for (idx, row) in rows.iter().enumerate() {
                let pairing = row.pairing.map(fmt_sig).unwrap_or_default();
                for branch in &row.branches {
                    let defect_v_minus =
                        branch.defect_v_minus.map(fmt_sig).unwrap_or_default();
                    if branch.degenerate {
                        s.push_str(&format!(
                            "{},{},{},{:+},true,,,,,,,,,{},{},{}\n",
                            idx,
                            fmt_sig(row.alpha.re),
                            fmt_sig(row.alpha.im),
                            branch.q,
                            fmt_sig(row.defect_v_plus),
                            defect_v_minus,
                            pairing
                        ));
                        continue;
                    }
                    for l in &branch.levels {
                        s.push_str(&format!(
                            "{},{},{},{:+},false,{},{},{},{},{},{},{},{},{},{},{}\n",
                            idx,
                            fmt_sig(row.alpha.re),
                            fmt_sig(row.alpha.im),
                            branch.q,
                            l.n,
                            fmt_sig(l.analytic.re),
                            fmt_sig(l.analytic.im),
                            fmt_sig(l.numeric.re),
                            fmt_sig(l.numeric.im),
                            fmt_sig(l.residual),
                            l.iterations,
                            l.converged,
                            fmt_sig(row.defect_v_plus),
                            defect_v_minus,
                            pairing
                        ));
                    }
                }
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(if partial { EXIT_PARTIAL } else { EXIT_OK })
}

/// Dispatch a parsed command line; returns the process exit code. All
/// configuration and I/O failures map to exit 2 with the reason on stderr.
pub fn run(cli: Cli) -> u8 {
    let outcome = match cli.command {
        Command::Figures(args) => cmd_figures(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Scan(args) => cmd_scan(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}
