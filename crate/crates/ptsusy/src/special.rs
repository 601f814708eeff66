//! Associated Laguerre polynomials with complex order, Richardson-paired
//! derivatives, and |f|^2 quadrature — the small calculus kit everything else
//! leans on. Nothing here knows about the model; the routines are generic so
//! the tests can drive them with unrelated oracles.

use crate::{C64, Error};

/// `L_n^{(a)}(z)` by upward three-term recurrence
///
/// ```text
/// (k+1) L_{k+1} = (2k + 1 + a - z) L_k - (k + a) L_{k-1},
/// L_0 = 1,   L_1 = 1 + a - z,
/// ```
///
/// with complex order `a` and complex argument `z`. Upward recurrence is fine
/// for the small degrees used here (the dominant solution is the polynomial).
pub fn laguerre(n: usize, a: C64, z: C64) -> C64 {
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    let mut prev = C64::new(1.0, 0.0);
    let mut cur = 1.0 + a - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - z) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dz L_n^{(a)}(z) = -L_{n-1}^{(a+1)}(z)`; identically zero for `n = 0`.
pub fn laguerre_deriv(n: usize, a: C64, z: C64) -> C64 {
    if n == 0 {
        C64::new(0.0, 0.0)
    } else {
        -laguerre(n - 1, a + 1.0, z)
    }
}

/// A derivative value with an honest error bar: the difference between the
/// `h` and `h/2` central stencils that fed the extrapolation.
#[derive(Debug, Clone, Copy)]
pub struct DerivativeEstimate {
    pub value: C64,
    /// `|d_{h/2} - d_h|`; for smooth `f` this bounds the extrapolated error.
    pub error_estimate: f64,
}

fn finite(v: C64, what: &'static str, x: f64) -> Result<C64, Error> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { what, x })
    }
}

fn check_step(h: f64) -> Result<(), Error> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            what: "step h",
            value: h,
        })
    }
}

/// Central second derivative with one Richardson step: evaluates `f` at the
/// five stencil points `x`, `x +- h`, `x +- h/2` and returns
/// `(4 d_{h/2} - d_h) / 3`, which cancels the leading `O(h^2)` term.
pub fn second_derivative<F: Fn(f64) -> C64>(
    f: F,
    x: f64,
    h: f64,
) -> Result<DerivativeEstimate, Error> {
    check_step(h)?;
    let what = "stencil value";
    let f0 = finite(f(x), what, x)?;
    let fp = finite(f(x + h), what, x + h)?;
    let fm = finite(f(x - h), what, x - h)?;
    let fp2 = finite(f(x + 0.5 * h), what, x + 0.5 * h)?;
    let fm2 = finite(f(x - 0.5 * h), what, x - 0.5 * h)?;
    let d_h = (fp - 2.0 * f0 + fm) / (h * h);
    let d_h2 = (fp2 - 2.0 * f0 + fm2) / (0.25 * h * h);
    Ok(DerivativeEstimate {
        value: (4.0 * d_h2 - d_h) / 3.0,
        error_estimate: (d_h2 - d_h).norm(),
    })
}

/// Same Richardson pairing for the first derivative. The operator
/// cross-checks use this when they must not trust any closed-form derivative.
pub fn first_derivative<F: Fn(f64) -> C64>(
    f: F,
    x: f64,
    h: f64,
) -> Result<DerivativeEstimate, Error> {
    check_step(h)?;
    let what = "stencil value";
    let fp = finite(f(x + h), what, x + h)?;
    let fm = finite(f(x - h), what, x - h)?;
    let fp2 = finite(f(x + 0.5 * h), what, x + 0.5 * h)?;
    let fm2 = finite(f(x - 0.5 * h), what, x - 0.5 * h)?;
    let d_h = (fp - fm) / (2.0 * h);
    let d_h2 = (fp2 - fm2) / h;
    Ok(DerivativeEstimate {
        value: (4.0 * d_h2 - d_h) / 3.0,
        error_estimate: (d_h2 - d_h).norm(),
    })
}

/// `int_a^b |f(x)|^2 dx` by the composite trapezoid rule with `n` panels.
/// Trapezoid is deliberate: for the Gaussian-decaying states integrated here
/// the endpoint derivatives vanish to machine precision, so it converges far
/// faster than its generic O(h^2).
pub fn integrate_modulus_squared<F: Fn(f64) -> C64>(
    f: F,
    a: f64,
    b: f64,
    n: usize,
) -> Result<f64, Error> {
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::InvalidParameter {
            what: "integration interval (b - a)",
            value: b - a,
        });
    }
    if n < 2 {
        return Err(Error::InvalidParameter {
            what: "quadrature panel count",
            value: n as f64,
        });
    }
    let h = (b - a) / n as f64;
    let g = |x: f64| -> Result<f64, Error> {
        let v = f(x);
        if v.is_finite() {
            Ok(v.norm_sqr())
        } else {
            Err(Error::NonFinite {
                what: "integrand",
                x,
            })
        }
    };
    let mut sum = 0.5 * (g(a)? + g(b)?);
    for i in 1..n {
        sum += g(a + i as f64 * h)?;
    }
    Ok(sum * h)
}
