//! Evaluate the closed-form eigenstates and check, point by point, that each
//! one actually solves its Schroedinger equation: the residual
//! `|-psi'' + (V - E) psi|` is compared against a Richardson error estimate
//! for the second-derivative stencil.
//!
//! Run with: cargo run --example wavefunctions

use ptsusy::model::{v_minus, v_plus, ModelParams, QuasiParity, Sector};
use ptsusy::special::second_derivative;
use ptsusy::states::{eigenpair, StateLabel};
use ptsusy::C64;

fn main() -> Result<(), ptsusy::Error> {
    let alpha = C64::new(0.3, 0.0);
    let epsilon = 0.5;
    let q = QuasiParity::Plus;
    let p = ModelParams::new(alpha, epsilon, q)?;

    let labels = [
        StateLabel::plus(0, q),
        StateLabel::plus(1, q),
        StateLabel::minus(0, q), // the inserted zero mode
        StateLabel::minus(1, q),
        StateLabel::minus(2, q),
    ];

    println!("alpha = {alpha}, q = +1, contour z = x - {epsilon}i");
    println!("{:>18} {:>22} values at x = -1, 0, 1", "state", "energy");
    for label in labels {
        let pair = eigenpair(label, &p);
        let vals: Vec<String> = [-1.0, 0.0, 1.0]
            .iter()
            .map(|&x| fmt((pair.psi)(x)))
            .collect();
        println!(
            "{:>18} {:>22} {}",
            label.to_string(),
            fmt(pair.energy),
            vals.join("  ")
        );
    }

    println!();
    println!("worst Schroedinger residual over x in [-4, 4] (h = 1e-3 stencil):");
    for label in labels {
        let pair = eigenpair(label, &p);
        let mut worst = (0.0f64, 0.0f64); // (residual, allowance)
        for i in 0..=160 {
            let x = -4.0 + 0.05 * i as f64;
            let d2 = second_derivative(&pair.psi, x, 1e-3)?;
            let psi = (pair.psi)(x);
            let v = match label.sector {
                Sector::Plus => v_plus(alpha, epsilon, x),
                Sector::Minus => v_minus(&p, x),
            };
            let res = (-d2.value + (v - pair.energy) * psi).norm();
            if res > worst.0 {
                worst = (res, d2.error_estimate * psi.norm().max(1.0));
            }
        }
        println!(
            "{:>18}: residual {:.2e} (stencil error estimate {:.2e})",
            label.to_string(),
            worst.0,
            worst.1
        );
    }
    Ok(())
}

fn fmt(z: C64) -> String {
    format!("{:>8.4}{:+8.4}i", z.re, z.im)
}
