//! Independent numerical route to the spectra: discretize
//! `-d^2/dx^2 + V(x - i*eps)` on a uniform grid with Dirichlet walls and hunt
//! eigenvalues by shifted inverse iteration. Nothing here knows about the
//! closure or the closed-form states, which is the point — agreement between
//! this machinery and [`crate::states`] is evidence, not bookkeeping.
//!
//! The operator is complex symmetric (not Hermitian), so the solver layer
//! ([`solver`]) factors shifted tridiagonal systems with partial pivoting and
//! iterates with Rayleigh-quotient updates. [`checks`] hosts the comparison
//! utilities (residual records, ratio constancy, conjugate-pair defects, and
//! the coupling-path scan used by the CLI).

pub mod checks;
pub mod solver;

pub use checks::{
    alpha_scan, pairing_defect, ratio_constancy, verify_state, BranchScan, LevelScan,
    RatioConstancy, ScanParams, ScanRow, VerificationRecord,
};
pub use solver::{inverse_iteration, inverse_iteration_from, EigenEstimate, TridiagLu};

use crate::{C64, Error};

/// Uniform grid `x_min ..= x_max` with `n_points` nodes. Eigenproblems live
/// on the `n_points - 2` interior nodes (hard walls at both ends).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self, Error> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::InvalidGrid {
                reason: "endpoints must be finite",
            });
        }
        if x_min >= x_max {
            return Err(Error::InvalidGrid {
                reason: "x_min must be below x_max",
            });
        }
        if n_points < 3 {
            return Err(Error::InvalidGrid {
                reason: "need at least 3 points (1 interior)",
            });
        }
        Ok(GridSpec {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + self.h() * i as f64
    }

    pub fn interior_len(&self) -> usize {
        self.n_points - 2
    }

    pub fn interior_point(&self, i: usize) -> f64 {
        self.point(i + 1)
    }

    /// Same interval, halved spacing (every old node is kept) — the knob for
    /// convergence-order measurements.
    pub fn refine(&self) -> GridSpec {
        GridSpec {
            x_min: self.x_min,
            x_max: self.x_max,
            n_points: 2 * self.n_points - 1,
        }
    }
}

/// Complex-symmetric tridiagonal operator on the interior of a grid:
/// `diagonal[i]` couples a node to itself, `off_diagonal[i]` couples
/// neighbours `i` and `i+1` (sub- and super-diagonal coincide).
#[derive(Debug, Clone)]
pub struct BandedOperator {
    pub diagonal: Vec<C64>,
    pub off_diagonal: Vec<C64>,
    pub grid: GridSpec,
}

impl BandedOperator {
    pub fn new(diagonal: Vec<C64>, off_diagonal: Vec<C64>, grid: GridSpec) -> Result<Self, Error> {
        if diagonal.len() != grid.interior_len() {
            return Err(Error::LengthMismatch {
                left: diagonal.len(),
                right: grid.interior_len(),
            });
        }
        if off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::LengthMismatch {
                left: off_diagonal.len() + 1,
                right: diagonal.len(),
            });
        }
        for (i, v) in diagonal.iter().chain(off_diagonal.iter()).enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    what: "operator entry",
                    x: i as f64,
                });
            }
        }
        Ok(BandedOperator {
            diagonal,
            off_diagonal,
            grid,
        })
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>, Error> {
        let n = self.len();
        if v.len() != n {
            return Err(Error::LengthMismatch {
                left: v.len(),
                right: n,
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = self.diagonal[i] * v[i];
            if i > 0 {
                acc += self.off_diagonal[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                acc += self.off_diagonal[i] * v[i + 1];
            }
            out[i] = acc;
        }
        Ok(out)
    }
}

/// Three-point discretization of `-d^2/dx^2 + V` on the interior nodes:
/// diagonal `2/h^2 + V(x_i)`, neighbours `-1/h^2`. The potential must be
/// finite at every interior node.
pub fn discretize<F: Fn(f64) -> C64>(v: F, grid: &GridSpec) -> Result<BandedOperator, Error> {
    let n = grid.interior_len();
    let h2 = grid.h() * grid.h();
    let mut diagonal = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.interior_point(i);
        let val = v(x);
        if !val.is_finite() {
            return Err(Error::NonFinite {
                what: "potential sample",
                x,
            });
        }
        diagonal.push(2.0 / h2 + val);
    }
    let off_diagonal = vec![C64::new(-1.0 / h2, 0.0); n.saturating_sub(1)];
    BandedOperator::new(diagonal, off_diagonal, *grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn grid_geometry() {
        let g = GridSpec::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.h(), 0.5);
        assert_eq!(g.point(0), -1.0);
        assert_eq!(g.point(4), 1.0);
        assert_eq!(g.interior_len(), 3);
        assert_eq!(g.interior_point(0), -0.5);
        assert_eq!(g.interior_point(2), 0.5);
        let r = g.refine();
        assert_eq!(r.n_points, 9);
        assert_eq!(r.h(), 0.25);
        // refinement keeps every old node
        assert_eq!(r.point(2), g.point(1));
    }

    #[test]
    fn grid_rejects_nonsense() {
        assert!(matches!(
            GridSpec::new(1.0, -1.0, 11),
            Err(Error::InvalidGrid { .. })
        ));
        assert!(matches!(
            GridSpec::new(0.0, f64::INFINITY, 11),
            Err(Error::InvalidGrid { .. })
        ));
        assert!(matches!(
            GridSpec::new(0.0, 1.0, 2),
            Err(Error::InvalidGrid { .. })
        ));
    }

    #[test]
    fn discretize_free_particle_entries() {
        let g = GridSpec::new(0.0, 1.0, 5).unwrap();
        let op = discretize(|_| c(0.0, 0.0), &g).unwrap();
        // h = 0.25 -> 2/h^2 = 32, -1/h^2 = -16
        assert_eq!(op.len(), 3);
        for d in &op.diagonal {
            assert!((d - 32.0).norm() < 1e-12);
        }
        for o in &op.off_diagonal {
            assert!((o + 16.0).norm() < 1e-12);
        }
    }

    #[test]
    fn discretize_rejects_singular_potential() {
        let g = GridSpec::new(-1.0, 1.0, 5).unwrap();
        // Pole at x = 0, which is an interior node.
        let err = discretize(|x| c(1.0 / x, 0.0), &g);
        assert!(matches!(err, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn matvec_small_case() {
        let g = GridSpec::new(0.0, 1.0, 5).unwrap();
        let op = BandedOperator::new(
            vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 1.0)],
            vec![c(0.0, 1.0), c(-1.0, 0.0)],
            g,
        )
        .unwrap();
        let v = vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)];
        let out = op.matvec(&v).unwrap();
        // row 0: 1*1 + i*(i) = 1 - 1 = 0
        assert!((out[0] - c(0.0, 0.0)).norm() < 1e-14);
        // row 1: i*1 + 2*i + (-1)*2 = -2 + 3i
        assert!((out[1] - c(-2.0, 3.0)).norm() < 1e-14);
        // row 2: (-1)*i + (3+i)*2 = 6 + i
        assert!((out[2] - c(6.0, 1.0)).norm() < 1e-14);
        assert!(matches!(
            op.matvec(&v[..2]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn operator_validates_shapes_and_values() {
        let g = GridSpec::new(0.0, 1.0, 5).unwrap();
        assert!(matches!(
            BandedOperator::new(vec![c(1.0, 0.0); 2], vec![c(0.0, 0.0); 1], g),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            BandedOperator::new(
                vec![c(1.0, 0.0), c(f64::NAN, 0.0), c(1.0, 0.0)],
                vec![c(0.0, 0.0); 2],
                g
            ),
            Err(Error::NonFinite { .. })
        ));
    }
}
