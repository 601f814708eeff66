//! Comparison utilities: everything that takes two independently computed
//! objects and measures how far apart they are. These are the primitives the
//! verification report and the CLI lean on.

use super::solver::inverse_iteration_from;
use super::{discretize, GridSpec};
use crate::model::{pt_defect, v_minus, v_plus, ModelParams, QuasiParity};
use crate::special::second_derivative;
use crate::states::{energy_plus, psi_plus, EigenPair};
use crate::{C64, Error};
use serde::Serialize;

/// Worst-case Schroedinger residual of a closed-form state against a sampled
/// potential. Residuals are scaled by `max(1, |psi|)` pointwise;
/// `max_error_estimate` tracks the stencil's own error so a failing residual
/// can be told apart from a bad derivative.
#[derive(Debug, Clone, Copy)]
pub struct VerificationRecord {
    pub max_residual: f64,
    pub max_error_estimate: f64,
    pub samples: usize,
}

/// Evaluate `|-psi'' + (V - E) psi| / max(1, |psi|)` across `xs`, with the
/// second derivative taken by Richardson stencils of step `h`.
pub fn verify_state<F: Fn(f64) -> C64>(
    pair: &EigenPair,
    v: F,
    xs: &[f64],
    h: f64,
) -> Result<VerificationRecord, Error> {
    if xs.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let mut max_residual: f64 = 0.0;
    let mut max_error_estimate: f64 = 0.0;
    for &x in xs {
        let d2 = second_derivative(&pair.psi, x, h)?;
        let psi = (pair.psi)(x);
        let res = (-d2.value + (v(x) - pair.energy) * psi).norm() / psi.norm().max(1.0);
        max_residual = max_residual.max(res);
        max_error_estimate = max_error_estimate.max(d2.error_estimate);
    }
    Ok(VerificationRecord {
        max_residual,
        max_error_estimate,
        samples: xs.len(),
    })
}

/// `max_i |a_i - conj(b_i)|` — zero exactly when the two lists are complex
/// conjugates of each other in order (the spontaneously broken phase pairs
/// levels this way).
pub fn pairing_defect(a: &[C64], b: &[C64]) -> Result<f64, Error> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y.conj()).norm())
        .fold(0.0, f64::max))
}

/// Statistics of pointwise ratios `num_i / den_i`: their mean and the
/// relative standard deviation around it. A vanishing spread certifies the
/// two samplings are the same function up to one constant.
#[derive(Debug, Clone, Copy)]
pub struct RatioConstancy {
    pub mean: C64,
    pub spread: f64,
    pub used: usize,
}

/// Ratios are taken only where `|den| > floor` to keep node neighbourhoods
/// from polluting the statistic; at least two usable samples are required.
pub fn ratio_constancy(num: &[C64], den: &[C64], floor: f64) -> Result<RatioConstancy, Error> {
    if num.len() != den.len() {
        return Err(Error::LengthMismatch {
            left: num.len(),
            right: den.len(),
        });
    }
    if !(floor.is_finite() && floor >= 0.0) {
        return Err(Error::InvalidParameter {
            what: "ratio floor",
            value: floor,
        });
    }
    let ratios: Vec<C64> = num
        .iter()
        .zip(den)
        .filter(|(_, d)| d.norm() > floor)
        .map(|(n, d)| n / d)
        .collect();
    if ratios.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: ratios.len(),
        });
    }
    let mean = ratios.iter().sum::<C64>() / ratios.len() as f64;
    let var = ratios.iter().map(|r| (r - mean).norm_sqr()).sum::<f64>() / ratios.len() as f64;
    let spread = var.sqrt() / mean.norm().max(f64::MIN_POSITIVE);
    Ok(RatioConstancy {
        mean,
        spread,
        used: ratios.len(),
    })
}

/// Knobs for [`alpha_scan`]: contour shift, how many ladder levels to chase
/// per quasi-parity branch, and the eigensolver budget.
#[derive(Debug, Clone)]
pub struct ScanParams {
    pub epsilon: f64,
    pub levels: usize,
    pub grid: GridSpec,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams {
            epsilon: 0.5,
            levels: 2,
            grid: GridSpec::new(-10.0, 10.0, 4001).expect("static grid is valid"),
            tol: 1e-8,
            max_iter: 60,
        }
    }
}

/// One ladder level at one coupling: analytic energy next to what the
/// eigensolver found from an analytic-profile start.
#[derive(Debug, Clone, Serialize)]
pub struct LevelScan {
    pub n: usize,
    #[serde(with = "crate::c64_serde")]
    pub analytic: C64,
    #[serde(with = "crate::c64_serde")]
    pub numeric: C64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// One quasi-parity branch at one coupling. `degenerate` marks couplings
/// where this branch has no closure (`q*alpha = 1`) or no usable contour;
/// `note` carries the reason verbatim.
#[derive(Debug, Clone, Serialize)]
pub struct BranchScan {
    pub q: i8,
    pub degenerate: bool,
    pub note: Option<String>,
    pub levels: Vec<LevelScan>,
    pub defect_v_minus: Option<f64>,
}

/// Everything tracked at one point of a coupling path.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    #[serde(with = "crate::c64_serde")]
    pub alpha: C64,
    pub defect_v_plus: f64,
    pub branches: Vec<BranchScan>,
    /// `max_n |E_n(q=+1) - conj(E_n(q=-1))|` over the numeric ladders: zero
    /// in the spontaneously broken phase, `4|alpha|` for real coupling.
    pub pairing: Option<f64>,
}

fn max_defect<F: Fn(f64) -> C64>(v: F) -> f64 {
    (0..=160)
        .map(|i| -4.0 + 0.05 * i as f64)
        .map(|x| pt_defect(&v, x))
        .fold(0.0, f64::max)
}

/// Walk a coupling path and record, at every point: PT defects of both
/// partner potentials, the first `levels` rungs of each quasi-parity ladder
/// (analytic and numeric, solved in the *same* discretized first partner),
/// and the conjugate-pairing defect across the two ladders. Branches whose
/// closure degenerates are flagged rather than aborting the scan.
pub fn alpha_scan(path: &[C64], sp: &ScanParams) -> Result<Vec<ScanRow>, Error> {
    if path.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if sp.levels == 0 {
        return Err(Error::InvalidParameter {
            what: "scan levels",
            value: 0.0,
        });
    }
    let mut rows = Vec::with_capacity(path.len());
    for &alpha in path {
        let defect_v_plus = max_defect(|t| v_plus(alpha, sp.epsilon, t));
        let op_plus = discretize(|x| v_plus(alpha, sp.epsilon, x), &sp.grid)?;
        let mut branches = Vec::with_capacity(2);
        for q in QuasiParity::BOTH {
            match ModelParams::new(alpha, sp.epsilon, q) {
                Err(e) => branches.push(BranchScan {
                    q: q.sign() as i8,
                    degenerate: true,
                    note: Some(e.to_string()),
                    levels: Vec::new(),
                    defect_v_minus: None,
                }),
                Ok(p) => {
                    let mut levels = Vec::with_capacity(sp.levels);
                    for n in 0..sp.levels {
                        let analytic = energy_plus(n, q, alpha);
                        let start: Vec<C64> = (0..op_plus.len())
                            .map(|i| psi_plus(n, &p, sp.grid.interior_point(i)))
                            .collect();
                        let level = match inverse_iteration_from(
                            &op_plus,
                            analytic,
                            &start,
                            sp.tol,
                            sp.max_iter,
                        ) {
                            Ok(est) => LevelScan {
                                n,
                                analytic,
                                numeric: est.value,
                                residual: est.residual,
                                iterations: est.iterations,
                                converged: est.converged,
                            },
                            Err(_) => LevelScan {
                                n,
                                analytic,
                                numeric: C64::new(f64::NAN, f64::NAN),
                                residual: f64::INFINITY,
                                iterations: 0,
                                converged: false,
                            },
                        };
                        levels.push(level);
                    }
                    let defect_v_minus = max_defect(|t| v_minus(&p, t));
                    branches.push(BranchScan {
                        q: q.sign() as i8,
                        degenerate: false,
                        note: None,
                        levels,
                        defect_v_minus: Some(defect_v_minus),
                    });
                }
            }
        }
        let pairing = if branches.iter().all(|b| !b.degenerate) {
            let a: Vec<C64> = branches[0].levels.iter().map(|l| l.numeric).collect();
            let b: Vec<C64> = branches[1].levels.iter().map(|l| l.numeric).collect();
            pairing_defect(&a, &b).ok()
        } else {
            None
        };
        rows.push(ScanRow {
            alpha,
            defect_v_plus,
            branches,
            pairing,
        });
    }
    Ok(rows)
}
