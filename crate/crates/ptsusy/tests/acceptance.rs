//! End-to-end acceptance suite. Each test prints one PASS/FAIL line (visible
//! with `cargo test --test acceptance -- --nocapture`) and pins its tolerance
//! next to the measurement. The eight criteria together certify that the
//! closed-form construction and the independent numerics agree everywhere
//! they are supposed to.

use ptsusy::model::{
    potential_from_w, pt_defect, pt_reflect, v_minus, v_plus, ces_closure, ModelParams,
    QuasiParity, Sector,
};
use ptsusy::numeric::{
    discretize, inverse_iteration_from, pairing_defect, ratio_constancy, GridSpec,
};
use ptsusy::special::second_derivative;
use ptsusy::states::{
    apply_a, apply_b, eigenpair, energy_plus, psi_minus_excited, psi_minus_ground,
    psi_minus_ground_deriv, psi_plus, psi_plus_deriv, StateLabel,
};
use ptsusy::{C64, Error};
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::process::Command;
use std::time::Instant;

const EPSILON: f64 = 0.5;

const TOL_FACTORIZATION: f64 = 1e-10;
const TOL_RESIDUAL_FLOOR: f64 = 1e-7;
const TOL_LADDER_SPREAD: f64 = 1e-8;
const TOL_ANNIHILATION: f64 = 1e-10;
const TOL_SPECTRUM: f64 = 5e-3;
const TOL_PAIRING_NUMERIC: f64 = 1e-2;
const CONV_RATIO_LO: f64 = 3.5;
const CONV_RATIO_HI: f64 = 4.5;
const TOL_PT_EXACT: f64 = 1e-12;
const TOL_CONJUGATE_MAP: f64 = 1e-10;
const TOL_FIGURE_SYMMETRY: f64 = 1e-10;
const BROKEN_DEFECT_MIN: f64 = 0.1;
const MAX_SECONDS: f64 = 30.0;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn report(num: usize, name: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {num} ({name}): {verdict} - {detail}");
    assert!(pass, "acceptance {num} ({name}) failed: {detail}");
}

fn guard_runtime_within(started: Instant, budget: f64) {
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < budget, "criterion overran its {budget}s budget: {secs:.1}s");
}

fn guard_runtime(started: Instant) {
    guard_runtime_within(started, MAX_SECONDS);
}

#[test]
fn acceptance_1_factorization_identity() {
    let started = Instant::now();
    let alphas = [c(0.3, 0.0), c(0.7, 0.0), c(0.0, 0.3), c(0.1, 0.2)];
    let mut rng = StdRng::seed_from_u64(0xacce97);
    let mut worst: f64 = 0.0;
    for &alpha in &alphas {
        for q in QuasiParity::BOTH {
            let p = ModelParams::new(alpha, EPSILON, q).unwrap();
            let beta = p.closure().beta;
            for _ in 0..100 {
                let x: f64 = rng.gen_range(-6.0..6.0);
                for sector in Sector::BOTH {
                    let from_w = potential_from_w(p.ansatz(), sector, x) - beta;
                    let closed = match sector {
                        Sector::Plus => v_plus(alpha, EPSILON, x),
                        Sector::Minus => v_minus(&p, x),
                    };
                    worst = worst.max((from_w - closed).norm() / closed.norm().max(1.0));
                }
            }
        }
    }
    guard_runtime_within(started, 1.0);
    report(
        1,
        "factorization identity",
        worst <= TOL_FACTORIZATION,
        format!(
            "W^2 +- W' - beta vs closed forms, 4 couplings x both branches x \
             both sectors x 100 contour points: worst relative defect \
             {worst:.2e} (tolerance {TOL_FACTORIZATION:.0e})"
        ),
    );
}

#[test]
fn acceptance_2_states_solve_their_equations() {
    let started = Instant::now();
    let alphas = [c(0.3, 0.0), c(0.0, 0.3)];
    let mut worst_ratio: f64 = 0.0;
    let mut checked = 0usize;
    for &alpha in &alphas {
        for q in QuasiParity::BOTH {
            let p = ModelParams::new(alpha, EPSILON, q).unwrap();
            for sector in Sector::BOTH {
                for n in 0..=5 {
                    let label = StateLabel { sector, n, q };
                    let pair = eigenpair(label, &p);
                    for i in 0..=50 {
                        let x = -5.0 + 0.2 * i as f64;
                        let d2 = second_derivative(&pair.psi, x, 1e-3).unwrap();
                        let psi = (pair.psi)(x);
                        let v = match sector {
                            Sector::Plus => v_plus(alpha, EPSILON, x),
                            Sector::Minus => v_minus(&p, x),
                        };
                        let res = (-d2.value + (v - pair.energy) * psi).norm();
                        let allowance = TOL_RESIDUAL_FLOOR.max(10.0 * d2.error_estimate)
                            * psi.norm().max(1.0);
                        worst_ratio = worst_ratio.max(res / allowance);
                        checked += 1;
                    }
                }
            }
        }
    }
    guard_runtime_within(started, 5.0);
    report(
        2,
        "states solve their equations",
        worst_ratio <= 1.0,
        format!(
            "{checked} pointwise Schroedinger residuals across sectors, \
             branches, n <= 5: worst residual-to-allowance ratio \
             {worst_ratio:.3} (allowance = max({TOL_RESIDUAL_FLOOR:.0e}, \
             10*stencil_err) * max(1, |psi|))"
        ),
    );
}

#[test]
fn acceptance_3_susy_ladder_and_zero_mode() {
    let started = Instant::now();
    let alphas = [c(0.3, 0.0), c(0.0, 0.3), c(0.1, 0.2)];
    let mut worst_spread: f64 = 0.0;
    let mut worst_annihilation: f64 = 0.0;
    let xs: Vec<f64> = (0..=24).map(|i| -3.0 + 0.25 * i as f64).collect();
    for &alpha in &alphas {
        for q in QuasiParity::BOTH {
            let p = ModelParams::new(alpha, EPSILON, q).unwrap();
            for n in 0..4 {
                let num: Vec<C64> = xs
                    .iter()
                    .map(|&x| {
                        apply_b(|t| psi_plus(n, &p, t), |t| psi_plus_deriv(n, &p, t), &p, x)
                    })
                    .collect();
                let den: Vec<C64> = xs.iter().map(|&x| psi_minus_excited(n, &p, x)).collect();
                let rc = ratio_constancy(&num, &den, 1e-6).unwrap();
                worst_spread = worst_spread.max(rc.spread);
            }
            for &x in &xs {
                let a_psi = apply_a(
                    |t| psi_minus_ground(&p, t),
                    |t| psi_minus_ground_deriv(&p, t),
                    &p,
                    x,
                );
                worst_annihilation = worst_annihilation
                    .max(a_psi.norm() / psi_minus_ground(&p, x).norm().max(1.0));
            }
        }
    }
    guard_runtime(started);
    report(
        3,
        "SUSY ladder and zero mode",
        worst_spread <= TOL_LADDER_SPREAD && worst_annihilation <= TOL_ANNIHILATION,
        format!(
            "B psi+_n proportional to psi-_(n+1) with worst relative spread \
             {worst_spread:.2e} (tolerance {TOL_LADDER_SPREAD:.0e}); \
             |A psi-_0| <= {worst_annihilation:.2e} (tolerance {TOL_ANNIHILATION:.0e})"
        ),
    );
}

fn numeric_level(
    op: &ptsusy::numeric::BandedOperator,
    grid: &GridSpec,
    label: StateLabel,
    p: &ModelParams,
    analytic: C64,
) -> C64 {
    let start: Vec<C64> = (0..op.len())
        .map(|i| ptsusy::states::eval_state(label, p, grid.interior_point(i)))
        .collect();
    let est = inverse_iteration_from(op, analytic, &start, 1e-8, 60).unwrap();
    assert!(est.converged, "{label} did not converge");
    est.value
}

#[test]
fn acceptance_4_independent_spectra() {
    let started = Instant::now();
    let grid = GridSpec::new(-10.0, 10.0, 4001).unwrap();
    let mut worst: f64 = 0.0;

    // Real coupling: both quasi-parity ladders in the first partner, the
    // shifted ladder plus the inserted level in the second.
    let alpha = c(0.3, 0.0);
    let op_plus = discretize(|x| v_plus(alpha, EPSILON, x), &grid).unwrap();
    for q in QuasiParity::BOTH {
        let p = ModelParams::new(alpha, EPSILON, q).unwrap();
        let op_minus = discretize(|x| v_minus(&p, x), &grid).unwrap();
        for n in 0..3 {
            let label = StateLabel::plus(n, q);
            let analytic = ptsusy::states::energy(label, &p);
            let found = numeric_level(&op_plus, &grid, label, &p, analytic);
            worst = worst.max((found - analytic).norm());
            let label = StateLabel::minus(n, q);
            let analytic = ptsusy::states::energy(label, &p);
            let found = numeric_level(&op_minus, &grid, label, &p, analytic);
            worst = worst.max((found - analytic).norm());
        }
    }

    // Imaginary coupling: the first partner's ladders come as conjugate
    // pairs (8 -+ 0.6i, ...), and the inserted minus levels sit at +-0.6i.
    let alpha = c(0.0, 0.3);
    let op_plus_im = discretize(|x| v_plus(alpha, EPSILON, x), &grid).unwrap();
    let mut ladder_qp = Vec::new();
    let mut ladder_qm = Vec::new();
    for q in QuasiParity::BOTH {
        let p = ModelParams::new(alpha, EPSILON, q).unwrap();
        for n in 0..3 {
            let label = StateLabel::plus(n, q);
            let analytic = ptsusy::states::energy(label, &p);
            let found = numeric_level(&op_plus_im, &grid, label, &p, analytic);
            worst = worst.max((found - analytic).norm());
            match q {
                QuasiParity::Plus => ladder_qp.push(found),
                QuasiParity::Minus => ladder_qm.push(found),
            }
        }
        let op_minus = discretize(|x| v_minus(&p, x), &grid).unwrap();
        let label = StateLabel::minus(0, q);
        let analytic = ptsusy::states::energy(label, &p);
        let found = numeric_level(&op_minus, &grid, label, &p, analytic);
        worst = worst.max((found - analytic).norm());
    }
    // The lowest pair is 8 - 0.6i (q = +1) and 8 + 0.6i (q = -1).
    assert!((ladder_qp[0] - c(8.0, -0.6)).norm() <= TOL_SPECTRUM);
    assert!((ladder_qm[0] - c(8.0, 0.6)).norm() <= TOL_SPECTRUM);
    let pairing = pairing_defect(&ladder_qp, &ladder_qm).unwrap();

    guard_runtime_within(started, 30.0);
    report(
        4,
        "independent spectra",
        worst <= TOL_SPECTRUM && pairing <= TOL_PAIRING_NUMERIC,
        format!(
            "finite-difference eigenvalues on [-10, 10] x 4001 vs analytic \
             ladders (both sectors, both branches, real and imaginary \
             coupling): worst |diff| {worst:.2e} (tolerance {TOL_SPECTRUM:.0e}); \
             conjugate-pairing defect of the broken phase {pairing:.2e} \
             (tolerance {TOL_PAIRING_NUMERIC:.0e})"
        ),
    );
}

#[test]
fn acceptance_5_second_order_convergence() {
    let started = Instant::now();
    let alpha = c(0.3, 0.0);
    let p = ModelParams::new(alpha, EPSILON, QuasiParity::Plus).unwrap();
    let exact = energy_plus(0, QuasiParity::Plus, alpha);
    let mut errs = Vec::new();
    for n_points in [2001usize, 4001] {
        let grid = GridSpec::new(-10.0, 10.0, n_points).unwrap();
        let op = discretize(|x| v_plus(alpha, EPSILON, x), &grid).unwrap();
        let label = StateLabel::plus(0, QuasiParity::Plus);
        let found = numeric_level(&op, &grid, label, &p, exact);
        errs.push((found - exact).norm());
    }
    let ratio = errs[0] / errs[1];
    guard_runtime(started);
    report(
        5,
        "second-order convergence",
        (CONV_RATIO_LO..=CONV_RATIO_HI).contains(&ratio),
        format!(
            "halving h on the lowest level: errors {:.2e} -> {:.2e}, ratio \
             {ratio:.2} (expected within [{CONV_RATIO_LO}, {CONV_RATIO_HI}])",
            errs[0], errs[1]
        ),
    );
}

#[test]
fn acceptance_6_pt_symmetry_and_breaking() {
    let started = Instant::now();
    let xs: Vec<f64> = (0..=160).map(|i| -4.0 + 0.05 * i as f64).collect();
    let max_defect = |v: &dyn Fn(f64) -> C64| -> f64 {
        xs.iter().map(|&x| pt_defect(v, x)).fold(0.0, f64::max)
    };

    // Exact PT symmetry: v_plus for real and imaginary coupling, v_minus for
    // real coupling (both branches).
    let mut worst_exact: f64 = 0.0;
    for &alpha in &[c(0.3, 0.0), c(0.0, 0.3)] {
        worst_exact = worst_exact.max(max_defect(&|t| v_plus(alpha, EPSILON, t)));
    }
    let p_rp = ModelParams::new(c(0.3, 0.0), EPSILON, QuasiParity::Plus).unwrap();
    let p_rm = ModelParams::new(c(0.3, 0.0), EPSILON, QuasiParity::Minus).unwrap();
    worst_exact = worst_exact.max(max_defect(&|t| v_minus(&p_rp, t)));
    worst_exact = worst_exact.max(max_defect(&|t| v_minus(&p_rm, t)));

    // Broken phase: per-branch defect visibly positive, cross-branch
    // conjugate mapping exact.
    let p_ip = ModelParams::new(c(0.0, 0.3), EPSILON, QuasiParity::Plus).unwrap();
    let p_im = ModelParams::new(c(0.0, 0.3), EPSILON, QuasiParity::Minus).unwrap();
    let broken_p = max_defect(&|t| v_minus(&p_ip, t));
    let broken_m = max_defect(&|t| v_minus(&p_im, t));
    let mut cross: f64 = 0.0;
    for &x in &xs {
        cross = cross
            .max((pt_reflect(|t| v_minus(&p_ip, t), x) - v_minus(&p_im, x)).norm())
            .max((pt_reflect(|t| v_minus(&p_im, t), x) - v_minus(&p_ip, x)).norm());
    }

    guard_runtime(started);
    report(
        6,
        "PT symmetry and its breaking",
        worst_exact <= TOL_PT_EXACT
            && broken_p > BROKEN_DEFECT_MIN
            && broken_m > BROKEN_DEFECT_MIN
            && cross <= TOL_CONJUGATE_MAP,
        format!(
            "exact-symmetry defects <= {worst_exact:.2e} (tolerance \
             {TOL_PT_EXACT:.0e}); broken-phase per-branch defects {broken_p:.2} / \
             {broken_m:.2} (> {BROKEN_DEFECT_MIN}); cross-branch conjugate \
             mapping defect {cross:.2e} (tolerance {TOL_CONJUGATE_MAP:.0e})"
        ),
    );
}

#[test]
fn acceptance_7_figures_contract() {
    let started = Instant::now();
    let bin = env!("CARGO_BIN_EXE_ptsusy");
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(bin)
            .arg("figures")
            .env("PTSUSY_OUT_DIR", dir.path())
            .output()
            .unwrap()
    };
    let out = run();
    assert_eq!(out.status.code(), Some(0), "figures exited {:?}", out.status);
    let mut contents = Vec::new();
    for name in ["figures_alpha_0.3.csv", "figures_alpha_0.3i.csv"] {
        let path = dir.path().join(name);
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing {name}: {e}"));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 802, "{name}: header + 801 samples");
        assert_eq!(
            lines[0],
            "x,re_vplus,im_vplus,re_vminus_qp,im_vminus_qp,re_vminus_qm,im_vminus_qm,flag"
        );
        assert!(lines[1..].iter().all(|l| l.ends_with(",ok")));
        contents.push(text);
    }
    // Spot value at x = 0 for alpha = 0.3: v_plus = 6.39 exactly, real.
    let mid: Vec<&str> = contents[0].lines().nth(401).unwrap().split(',').collect();
    let x: f64 = mid[0].parse().unwrap();
    let re: f64 = mid[1].parse().unwrap();
    let im: f64 = mid[2].parse().unwrap();
    assert_eq!(x, 0.0);
    assert!((re - 6.39).abs() < 1e-12 && im.abs() < 1e-12);

    // Column symmetries under x -> -x, read back from the emitted files.
    // Real coupling: every potential column is PT-symmetric (re even, im
    // odd). Imaginary coupling: v_plus stays symmetric while the two
    // v_minus branches map onto each other's conjugates.
    let rows = |text: &str| -> Vec<Vec<f64>> {
        text.lines()
            .skip(1)
            .map(|l| {
                l.split(',')
                    .take(7)
                    .map(|c| c.parse().unwrap())
                    .collect()
            })
            .collect()
    };
    let real_rows = rows(&contents[0]);
    let imag_rows = rows(&contents[1]);
    let mut sym_defect: f64 = 0.0;
    for i in 0..=800 {
        let (a, m) = (&real_rows[i], &real_rows[800 - i]);
        for col in [1, 3, 5] {
            sym_defect = sym_defect
                .max((a[col] - m[col]).abs())
                .max((a[col + 1] + m[col + 1]).abs());
        }
        let (a, m) = (&imag_rows[i], &imag_rows[800 - i]);
        sym_defect = sym_defect
            .max((a[1] - m[1]).abs())
            .max((a[2] + m[2]).abs())
            // cross-conjugate: branch q = +1 at -x vs branch q = -1 at x
            .max((m[3] - a[5]).abs())
            .max((m[4] + a[6]).abs());
    }

    // Re-running the identical configuration reproduces every byte.
    let out2 = run();
    assert_eq!(out2.status.code(), Some(0));
    let identical = ["figures_alpha_0.3.csv", "figures_alpha_0.3i.csv"]
        .iter()
        .zip(&contents)
        .all(|(name, before)| {
            std::fs::read_to_string(dir.path().join(name)).unwrap() == **before
        });

    guard_runtime(started);
    report(
        7,
        "figures contract",
        sym_defect <= TOL_FIGURE_SYMMETRY && identical,
        format!(
            "two CSVs (801 samples each), frozen spot value v_plus(0) = 6.39, \
             reflection/cross-conjugate column symmetry defect {sym_defect:.2e} \
             (tolerance {TOL_FIGURE_SYMMETRY:.0e}), rerun byte-identical"
        ),
    );
}

#[test]
fn acceptance_8_degenerate_coupling_fails_cleanly() {
    let started = Instant::now();
    let alpha_one = c(1.0, 0.0);

    // Library entry points refuse with a typed error, never NaN or panic.
    let lib_clean = matches!(
        ces_closure(QuasiParity::Plus, alpha_one),
        Err(Error::DegenerateClosure { .. })
    ) && matches!(
        ModelParams::new(alpha_one, EPSILON, QuasiParity::Plus),
        Err(Error::DegenerateClosure { .. })
    ) && matches!(
        ptsusy::verify::run_suite(alpha_one, EPSILON, 2),
        Err(Error::DegenerateClosure { .. })
    );
    // The non-degenerate branch of the same coupling still works and stays
    // finite.
    let other = ModelParams::new(alpha_one, EPSILON, QuasiParity::Minus).unwrap();
    let finite_other = (0..=80).all(|i| {
        let x = -4.0 + 0.1 * i as f64;
        v_minus(&other, x).is_finite() && v_plus(alpha_one, EPSILON, x).is_finite()
    });

    // Every CLI entry point: exit 2, nothing written.
    let bin = env!("CARGO_BIN_EXE_ptsusy");
    let dir = tempfile::tempdir().unwrap();
    let fig_dir = dir.path().join("figs");
    let fig = Command::new(bin)
        .args(["figures", "--alpha", "1"])
        .arg("--out-dir")
        .arg(&fig_dir)
        .output()
        .unwrap();
    let ver = Command::new(bin)
        .args(["verify", "--alpha", "1"])
        .output()
        .unwrap();
    let spec = Command::new(bin)
        .args(["spectrum", "--alpha", "1", "--grid-points", "801"])
        .output()
        .unwrap();
    let cli_clean = fig.status.code() == Some(2)
        && ver.status.code() == Some(2)
        && spec.status.code() == Some(2)
        && !fig_dir.exists()
        && ver.stdout.is_empty()
        && spec.stdout.is_empty()
        && String::from_utf8_lossy(&ver.stderr).contains("degenerate");

    // The sweep is the one surface that keeps going: it flags the dead
    // branch and reports partial results.
    let scan = Command::new(bin)
        .args([
            "scan",
            "--path",
            "1:1:2",
            "--grid-points",
            "801",
            "--levels",
            "1",
        ])
        .output()
        .unwrap();
    let scan_text = String::from_utf8_lossy(&scan.stdout);
    // The degenerate branch is flagged with every level field left empty —
    // nothing numeric is fabricated for it — and no NaN appears anywhere.
    let scan_clean = scan.status.code() == Some(3)
        && scan_text.lines().any(|l| l.contains(",+1,true,,,,,,,,,"))
        && !scan_text.contains("NaN");

    guard_runtime(started);
    report(
        8,
        "degenerate coupling fails cleanly",
        lib_clean && finite_other && cli_clean && scan_clean,
        format!(
            "library constructors and the verify suite return typed errors; \
             figures/verify/spectrum exit 2 with no partial files; scan exits \
             3 with the dead branch flagged (lib_clean={lib_clean}, \
             finite_other={finite_other}, cli_clean={cli_clean}, \
             scan_clean={scan_clean})"
        ),
    );
}
