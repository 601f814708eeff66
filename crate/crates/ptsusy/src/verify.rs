//! The named cross-check suite: one function that takes a coupling and
//! returns a machine-readable report of every identity the construction is
//! supposed to satisfy, each measured rather than assumed.
//!
//! Checks that only make sense in part of the parameter space (PT symmetry
//! of the second partner, conjugate pairing) are reported as `info` outside
//! their domain instead of being silently skipped, so a report always has the
//! same shape for a given `levels`.

use crate::model::{
    potential_from_w, pt_defect, pt_reflect, v_minus, v_plus, ModelParams, QuasiParity, Sector,
};
use crate::numeric::{ratio_constancy, verify_state};
use crate::states::{
    apply_a, apply_b, eigenpair, psi_minus_excited, psi_minus_ground, psi_minus_ground_deriv,
    psi_plus, psi_plus_deriv, StateLabel,
};
use crate::{C64, Error};
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde::Serialize;

pub const TOL_CLOSURE: f64 = 1e-14;
pub const TOL_FACTORIZATION: f64 = 1e-10;
pub const TOL_RESIDUAL_RATIO: f64 = 1.0;
pub const TOL_ANNIHILATION: f64 = 1e-10;
pub const TOL_LADDER_SPREAD: f64 = 1e-8;
pub const TOL_PT_DEFECT: f64 = 1e-12;
pub const TOL_CONJUGATE_MAP: f64 = 1e-10;
pub const TOL_PAIRING: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Measured and reported, but not part of the pass/fail verdict — used
    /// where the identity only holds in another region of parameter space.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

impl CheckResult {
    fn graded(name: &str, measured: f64, threshold: f64, detail: String) -> Self {
        let status = if measured <= threshold {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckResult {
            name: name.to_string(),
            status,
            measured,
            threshold,
            detail,
        }
    }

    fn info(name: &str, measured: f64, threshold: f64, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            status: CheckStatus::Info,
            measured,
            threshold,
            detail,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    #[serde(with = "crate::c64_serde")]
    pub alpha: C64,
    pub epsilon: f64,
    pub levels: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn sampled_defect<F: Fn(f64) -> C64>(v: F) -> f64 {
    (0..=160)
        .map(|i| -4.0 + 0.05 * i as f64)
        .map(|x| pt_defect(&v, x))
        .fold(0.0, f64::max)
}

/// Run every check at one coupling. Fails (with an error, not a failed
/// report) only when the model itself cannot be built there — a degenerate
/// closure or a pole on the contour.
pub fn run_suite(alpha: C64, epsilon: f64, levels: usize) -> Result<VerificationReport, Error> {
    if levels == 0 {
        return Err(Error::InvalidParameter {
            what: "levels",
            value: 0.0,
        });
    }
    let p_plus = ModelParams::new(alpha, epsilon, QuasiParity::Plus)?;
    let p_minus = ModelParams::new(alpha, epsilon, QuasiParity::Minus)?;
    let both = [&p_plus, &p_minus];
    let mut checks = Vec::new();

    // 1. The closure actually closes: g (1 - q alpha) = 1.
    let worst = both
        .iter()
        .map(|p| {
            let cl = p.closure();
            (cl.g * (1.0 - p.q_alpha()) - 1.0).norm()
        })
        .fold(0.0, f64::max);
    checks.push(CheckResult::graded(
        "closure_invariant",
        worst,
        TOL_CLOSURE,
        "g * (1 - q*alpha) - 1 for both quasi-parity branches".to_string(),
    ));

    // 2. W^2 +- W' - beta reproduces the closed-form partner potentials.
    let mut rng = StdRng::seed_from_u64(0x7e57);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x: f64 = rng.gen_range(-6.0..6.0);
        for p in both {
            let beta = p.closure().beta;
            for sector in Sector::BOTH {
                let route_w = potential_from_w(p.ansatz(), sector, x) - beta;
                let closed = match sector {
                    Sector::Plus => v_plus(alpha, epsilon, x),
                    Sector::Minus => v_minus(p, x),
                };
                let defect = (route_w - closed).norm() / closed.norm().max(1.0);
                worst = worst.max(defect);
            }
        }
    }
    checks.push(CheckResult::graded(
        "factorization_identity",
        worst,
        TOL_FACTORIZATION,
        "relative gap between W^2 +- W' - beta and the closed forms, \
         100 random x in [-6, 6], both branches and sectors"
            .to_string(),
    ));

    // 3. Every closed-form state solves its Schroedinger equation at its
    //    closed-form energy (numeric second derivative, ratio to a stencil-
    //    aware allowance).
    let xs: Vec<f64> = (0..=40).map(|i| -5.0 + 0.25 * i as f64).collect();
    let mut worst_ratio: f64 = 0.0;
    let mut worst_label = String::new();
    for p in both {
        for sector in Sector::BOTH {
            for n in 0..levels {
                let label = StateLabel { sector, n, q: p.q };
                let pair = eigenpair(label, p);
                let rec = match sector {
                    Sector::Plus => verify_state(&pair, |x| v_plus(alpha, epsilon, x), &xs, 1e-3),
                    Sector::Minus => verify_state(&pair, |x| v_minus(p, x), &xs, 1e-3),
                }?;
                let allowance = 1e-7 + 10.0 * rec.max_error_estimate;
                let ratio = rec.max_residual / allowance;
                if ratio > worst_ratio {
                    worst_ratio = ratio;
                    worst_label = label.to_string();
                }
            }
        }
    }
    checks.push(CheckResult::graded(
        "schroedinger_residuals",
        worst_ratio,
        TOL_RESIDUAL_RATIO,
        format!(
            "worst residual-to-allowance ratio across both sectors and \
             branches, n < {levels} (worst at {worst_label})"
        ),
    ));

    // 4. The minus-sector ground state is the zero mode of A.
    let mut worst: f64 = 0.0;
    for p in both {
        for i in 0..=80 {
            let x = -4.0 + 0.1 * i as f64;
            let a_psi = apply_a(
                |t| psi_minus_ground(p, t),
                |t| psi_minus_ground_deriv(p, t),
                p,
                x,
            );
            worst = worst.max(a_psi.norm() / psi_minus_ground(p, x).norm().max(1.0));
        }
    }
    checks.push(CheckResult::graded(
        "zero_mode_annihilation",
        worst,
        TOL_ANNIHILATION,
        "|A psi-_0| / max(1, |psi-_0|) on [-4, 4], both branches".to_string(),
    ));

    // 5. B maps the plus ladder onto the excited minus states, one constant
    //    per level.
    let ladder_xs: Vec<f64> = (0..=24).map(|i| -3.0 + 0.25 * i as f64).collect();
    let mut worst: f64 = 0.0;
    for p in both {
        for n in 0..levels {
            let num: Vec<C64> = ladder_xs
                .iter()
                .map(|&x| {
                    apply_b(|t| psi_plus(n, p, t), |t| psi_plus_deriv(n, p, t), p, x)
                })
                .collect();
            let den: Vec<C64> = ladder_xs
                .iter()
                .map(|&x| psi_minus_excited(n, p, x))
                .collect();
            let rc = ratio_constancy(&num, &den, 1e-6)?;
            worst = worst.max(rc.spread);
        }
    }
    checks.push(CheckResult::graded(
        "susy_ladder_mapping",
        worst,
        TOL_LADDER_SPREAD,
        format!("relative spread of (B psi+_n) / psi-_(n+1), n < {levels}, both branches"),
    ));

    // 6. PT symmetry of the first partner: exact whenever alpha^2 is real.
    let defect = sampled_defect(|t| v_plus(alpha, epsilon, t));
    let alpha_sq_real = alpha.re == 0.0 || alpha.im == 0.0;
    checks.push(if alpha_sq_real {
        CheckResult::graded(
            "pt_symmetry_v_plus",
            defect,
            TOL_PT_DEFECT,
            "max |conj(v_plus(-x)) - v_plus(x)| on [-4, 4]".to_string(),
        )
    } else {
        CheckResult::info(
            "pt_symmetry_v_plus",
            defect,
            TOL_PT_DEFECT,
            "alpha^2 is not real, so v_plus is not expected to be PT-symmetric".to_string(),
        )
    });

    // 7. PT symmetry of the second partner, branch by branch: exact for real
    //    alpha, spontaneously broken for imaginary alpha.
    for p in both {
        let name = match p.q {
            QuasiParity::Plus => "pt_symmetry_v_minus_q_plus",
            QuasiParity::Minus => "pt_symmetry_v_minus_q_minus",
        };
        let defect = sampled_defect(|t| v_minus(p, t));
        checks.push(if alpha.im == 0.0 {
            CheckResult::graded(
                name,
                defect,
                TOL_PT_DEFECT,
                "max |conj(v_minus(-x)) - v_minus(x)| on [-4, 4]".to_string(),
            )
        } else {
            CheckResult::info(
                name,
                defect,
                TOL_PT_DEFECT,
                "complex alpha: the second partner trades PT symmetry for the \
                 conjugate mapping between branches"
                    .to_string(),
            )
        });
    }

    // 8. For imaginary alpha the two branches are PT images of each other:
    //    conj(v_minus^(q)(-x)) = v_minus^(-q)(x).
    let mut cross: f64 = 0.0;
    for i in 0..=160 {
        let x = -4.0 + 0.05 * i as f64;
        let a = (pt_reflect(|t| v_minus(&p_plus, t), x) - v_minus(&p_minus, x)).norm();
        let b = (pt_reflect(|t| v_minus(&p_minus, t), x) - v_minus(&p_plus, x)).norm();
        cross = cross.max(a.max(b));
    }
    let imaginary = alpha.re == 0.0 && alpha.im != 0.0;
    checks.push(if imaginary {
        CheckResult::graded(
            "pt_conjugate_mapping_v_minus",
            cross,
            TOL_CONJUGATE_MAP,
            "max |conj(v_minus^q(-x)) - v_minus^(-q)(x)| on [-4, 4]".to_string(),
        )
    } else {
        CheckResult::info(
            "pt_conjugate_mapping_v_minus",
            cross,
            TOL_CONJUGATE_MAP,
            "cross-branch conjugate mapping is an imaginary-alpha identity; \
             measured for reference"
                .to_string(),
        )
    });

    // 9. Ladder pairing: for imaginary alpha the branches are complex
    //    conjugates level by level; for real alpha they split by exactly
    //    4*alpha.
    let mut pairing: f64 = 0.0;
    for n in 0..levels {
        let ep = crate::states::energy_plus(n, QuasiParity::Plus, alpha);
        let em = crate::states::energy_plus(n, QuasiParity::Minus, alpha);
        pairing = pairing.max((ep - em.conj()).norm());
    }
    checks.push(if imaginary {
        CheckResult::graded(
            "energy_pairing",
            pairing,
            TOL_PAIRING,
            format!("max |E+_n(q=+1) - conj(E+_n(q=-1))|, n < {levels}"),
        )
    } else if alpha.im == 0.0 {
        let split = (pairing - 4.0 * alpha.re.abs()).abs();
        CheckResult::graded(
            "energy_pairing",
            split,
            TOL_PAIRING,
            format!(
                "real alpha: branches split by 4*|alpha| = {}; measured gap \
                 deviates by this much",
                4.0 * alpha.re.abs()
            ),
        )
    } else {
        CheckResult::info(
            "energy_pairing",
            pairing,
            TOL_PAIRING,
            "generic complex alpha: no exact pairing; raw defect reported".to_string(),
        )
    });

    let passed = checks
        .iter()
        .all(|c| c.status != CheckStatus::Fail);
    Ok(VerificationReport {
        alpha,
        epsilon,
        levels,
        checks,
        passed,
    })
}
