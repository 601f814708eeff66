//! The model family on the shifted contour: the solvable inverse-square
//! oscillator core, its quasi-parity doublet, and the one-term superpotential
//! whose closure turns `W^2 +- W'` into exactly solvable partners.
//!
//! Conventions used everywhere downstream:
//!
//! * contour `z = x - i*eps`, `eps > 0`, so `d/dx = d/dz` and `z` never
//!   vanishes for real `x`;
//! * quasi-parity `q = +-1` enters only through `s = q*alpha`;
//! * closure: `lambda = 1/2 - s`, `g = 1/(1 - s)`, `beta = -2s`, equivalently
//!   `g (1 - s) = 1` — demanded so that `W^2 + W'` collapses back onto the
//!   core `z^2 + (alpha^2 - 1/4)/z^2` up to a constant;
//! * partner potentials absorb the factorization energy:
//!   `v_plus = W^2 + W' - beta`, `v_minus = W^2 - W' - beta`.
//!
//! The closed forms [`v_plus`] and [`v_minus`] are written out independently
//! of [`potential_from_w`]; tests compare the two routes instead of deriving
//! one from the other.

use crate::{C64, Error};

/// Quasi-parity label for the two normalizable solution families of the
/// inverse-square core, distinguished by the sign of `alpha` in the
/// wavefunction exponent `-q*alpha + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuasiParity {
    Plus,
    Minus,
}

impl QuasiParity {
    pub const BOTH: [QuasiParity; 2] = [QuasiParity::Plus, QuasiParity::Minus];

    pub fn sign(self) -> f64 {
        match self {
            QuasiParity::Plus => 1.0,
            QuasiParity::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            QuasiParity::Plus => QuasiParity::Minus,
            QuasiParity::Minus => QuasiParity::Plus,
        }
    }
}

impl std::fmt::Display for QuasiParity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            QuasiParity::Plus => "+1",
            QuasiParity::Minus => "-1",
        })
    }
}

/// Partner-sector tag. `H_+ = AB - beta` carries `W^2 + W'`;
/// `H_- = BA - beta` carries `W^2 - W'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Plus,
    Minus,
}

impl Sector {
    pub const BOTH: [Sector; 2] = [Sector::Plus, Sector::Minus];

    /// Sign in `W^2 + sign * W'`.
    pub fn sign(self) -> f64 {
        match self {
            Sector::Plus => 1.0,
            Sector::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sector::Plus => "plus",
            Sector::Minus => "minus",
        })
    }
}

/// `z(x) = x - i*eps`.
pub fn contour_point(x: f64, epsilon: f64) -> C64 {
    C64::new(x, -epsilon)
}

/// The solvable data of the one-term ansatz: `W = z + lambda/z + 2gz/(1+gz^2)`
/// closes iff `lambda = 1/2 - q*alpha` and `g = 1/(1 - q*alpha)`, with
/// factorization energy `beta = -2*q*alpha`. `g (1 - q*alpha) = 1` by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CesClosure {
    pub lambda: C64,
    pub g: C64,
    pub beta: C64,
}

/// Degeneracy guard for the closure denominator `1 - q*alpha`.
const CLOSURE_DEGENERACY_TOL: f64 = 1e-12;

/// Margin for "pole sits on the contour line `Im z = -eps`".
const CONTOUR_MARGIN: f64 = 1e-9;

/// Solve the closure for one quasi-parity branch. Fails when `q*alpha` is
/// within 1e-12 of 1, where the coupling `1/(1 - q*alpha)` degenerates.
pub fn ces_closure(q: QuasiParity, alpha: C64) -> Result<CesClosure, Error> {
    let s = q.sign() * alpha;
    let denom = 1.0 - s;
    if denom.norm() < CLOSURE_DEGENERACY_TOL {
        return Err(Error::DegenerateClosure {
            q: q.sign() as i8,
            alpha,
        });
    }
    Ok(CesClosure {
        lambda: 0.5 - s,
        g: denom.inv(),
        beta: -2.0 * s,
    })
}

/// Superpotential shape `W = z + lambda/z + sum_k 2 g_k z / (1 + g_k z^2)`.
/// Built through [`AnsatzConfig::new`] so that no coupling pole can sit on
/// the contour; after that, evaluation is infallible for real `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzConfig {
    pub lambda: C64,
    pub epsilon: f64,
    pub couplings: Vec<C64>,
}

impl AnsatzConfig {
    /// Validates `eps > 0` and that each root of `1 + g_k z^2 = 0` (at
    /// `z = +-sqrt(-1/g_k)`) stays off the line `Im z = -eps` by more than
    /// 1e-9. Zero couplings are allowed; their term vanishes identically.
    pub fn new(lambda: C64, epsilon: f64, couplings: Vec<C64>) -> Result<Self, Error> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidParameter {
                what: "contour shift epsilon",
                value: epsilon,
            });
        }
        if !lambda.is_finite() {
            return Err(Error::NonFinite {
                what: "lambda",
                x: f64::NAN,
            });
        }
        for &g in &couplings {
            if !g.is_finite() {
                return Err(Error::NonFinite {
                    what: "coupling g",
                    x: f64::NAN,
                });
            }
            if g.norm() == 0.0 {
                continue;
            }
            let root = (-g.inv()).sqrt();
            for r in [root, -root] {
                if (r.im + epsilon).abs() <= CONTOUR_MARGIN {
                    return Err(Error::ContourSingularity { root: r, epsilon });
                }
            }
        }
        Ok(AnsatzConfig {
            lambda,
            epsilon,
            couplings,
        })
    }
}

/// Parameters of one quasi-parity branch. Construction runs the closure and
/// the contour check once; the derived ansatz is cached so evaluation paths
/// never re-validate.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub alpha: C64,
    pub epsilon: f64,
    pub q: QuasiParity,
    closure: CesClosure,
    ansatz: AnsatzConfig,
}

impl ModelParams {
    pub fn new(alpha: C64, epsilon: f64, q: QuasiParity) -> Result<Self, Error> {
        let closure = ces_closure(q, alpha)?;
        let ansatz = AnsatzConfig::new(closure.lambda, epsilon, vec![closure.g])?;
        Ok(ModelParams {
            alpha,
            epsilon,
            q,
            closure,
            ansatz,
        })
    }

    pub fn closure(&self) -> CesClosure {
        self.closure
    }

    pub fn ansatz(&self) -> &AnsatzConfig {
        &self.ansatz
    }

    /// `s = q*alpha`, the only combination the formulas ever see.
    pub fn q_alpha(&self) -> C64 {
        self.q.sign() * self.alpha
    }

    /// Contour point under this branch's shift.
    pub fn z(&self, x: f64) -> C64 {
        contour_point(x, self.epsilon)
    }

    /// Same `alpha` and `eps`, opposite quasi-parity. Only fails when the
    /// flipped closure is itself degenerate (`q*alpha = -1`).
    pub fn flipped(&self) -> Result<Self, Error> {
        ModelParams::new(self.alpha, self.epsilon, self.q.flip())
    }
}

/// `W(x)` on the contour.
pub fn superpotential(config: &AnsatzConfig, x: f64) -> C64 {
    let z = contour_point(x, config.epsilon);
    let mut w = z + config.lambda / z;
    for &g in &config.couplings {
        w += 2.0 * g * z / (1.0 + g * z * z);
    }
    w
}

/// `W'(x)`; the contour is a straight horizontal line, so `d/dx = d/dz`:
/// `W' = 1 - lambda/z^2 + sum_k 2 g_k (1 - g_k z^2) / (1 + g_k z^2)^2`.
pub fn superpotential_deriv(config: &AnsatzConfig, x: f64) -> C64 {
    let z = contour_point(x, config.epsilon);
    let z2 = z * z;
    let mut dw = 1.0 - config.lambda / z2;
    for &g in &config.couplings {
        let d = 1.0 + g * z2;
        dw += 2.0 * g * (1.0 - g * z2) / (d * d);
    }
    dw
}

/// `W^2 + sign * W'` — the factorization route to the partner potentials,
/// kept separate from the closed forms below on purpose.
pub fn potential_from_w(config: &AnsatzConfig, sector: Sector, x: f64) -> C64 {
    let w = superpotential(config, x);
    w * w + sector.sign() * superpotential_deriv(config, x)
}

/// The solvable core `z^2 + (alpha^2 - 1/4)/z^2`.
pub fn v_base(alpha: C64, epsilon: f64, x: f64) -> C64 {
    let z = contour_point(x, epsilon);
    let z2 = z * z;
    z2 + (alpha * alpha - 0.25) / z2
}

/// First partner in closed form: the core shifted by the constant 6,
/// independent of quasi-parity (both closure branches land on the same
/// potential — that is what makes the pair of ladders live in one operator).
pub fn v_plus(alpha: C64, epsilon: f64, x: f64) -> C64 {
    v_base(alpha, epsilon, x) + 6.0
}

/// Second partner in closed form, per branch:
///
/// ```text
/// v_- = z^2 + (alpha^2 - 2 q alpha + 3/4)/z^2
///       - 4/(1 - q alpha + z^2) + 8 z^2/(1 - q alpha + z^2)^2 + 4.
/// ```
///
/// The sign of the `-4/(...)` grouping is fixed by expanding `W^2 - W'`
/// directly; the dual-route test against [`potential_from_w`] pins it at
/// machine precision.
pub fn v_minus(params: &ModelParams, x: f64) -> C64 {
    let z = params.z(x);
    let z2 = z * z;
    let s = params.q_alpha();
    let d = 1.0 - s + z2;
    z2 + (params.alpha * params.alpha - 2.0 * s + 0.75) / z2 - 4.0 / d + 8.0 * z2 / (d * d) + 4.0
}

/// PT image of a potential sampled on the same contour: `conj(V(-x))`.
pub fn pt_reflect<F: Fn(f64) -> C64>(v: F, x: f64) -> C64 {
    v(-x).conj()
}

/// `|conj(V(-x)) - V(x)|`: identically zero for PT-symmetric potentials.
pub fn pt_defect<F: Fn(f64) -> C64>(v: F, x: f64) -> f64 {
    (pt_reflect(&v, x) - v(x)).norm()
}
