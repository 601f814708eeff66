//! Tabulate the partner potentials along the shifted contour.
//!
//! For a real coupling both partners are PT-symmetric complex potentials; for
//! an imaginary coupling the second partner splits into two branches that are
//! PT images of each other instead of being symmetric individually.
//!
//! Run with: cargo run --example potentials

use ptsusy::model::{pt_defect, v_base, v_minus, v_plus, ModelParams, QuasiParity};
use ptsusy::C64;

fn main() -> Result<(), ptsusy::Error> {
    let epsilon = 0.5;

    for alpha in [C64::new(0.3, 0.0), C64::new(0.0, 0.3)] {
        let p_plus = ModelParams::new(alpha, epsilon, QuasiParity::Plus)?;
        let p_minus = ModelParams::new(alpha, epsilon, QuasiParity::Minus)?;

        println!("alpha = {alpha}, contour z = x - {epsilon}i");
        println!(
            "{:>6} {:>22} {:>22} {:>22} {:>22}",
            "x", "v_base", "v_plus", "v_minus (q=+1)", "v_minus (q=-1)"
        );
        for i in 0..=8 {
            let x = -2.0 + 0.5 * i as f64;
            println!(
                "{x:>6.2} {:>22} {:>22} {:>22} {:>22}",
                fmt(v_base(alpha, epsilon, x)),
                fmt(v_plus(alpha, epsilon, x)),
                fmt(v_minus(&p_plus, x)),
                fmt(v_minus(&p_minus, x)),
            );
        }

        // PT symmetry survey: defect of conj(V(-x)) against V(x) over a
        // symmetric window.
        let xs: Vec<f64> = (0..=80).map(|i| -4.0 + 0.1 * i as f64).collect();
        let defect = |v: &dyn Fn(f64) -> C64| -> f64 {
            xs.iter().map(|&x| pt_defect(v, x)).fold(0.0, f64::max)
        };
        println!(
            "PT defect: v_plus {:.2e}, v_minus(q=+1) {:.2e}, v_minus(q=-1) {:.2e}",
            defect(&|x| v_plus(alpha, epsilon, x)),
            defect(&|x| v_minus(&p_plus, x)),
            defect(&|x| v_minus(&p_minus, x)),
        );
        println!();
    }
    Ok(())
}

fn fmt(z: C64) -> String {
    format!("{:>9.4}{:+9.4}i", z.re, z.im)
}
