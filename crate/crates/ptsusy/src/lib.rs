//! SUSY partners of a complexified oscillator, built and checked two ways.
//!
//! The model is the harmonic oscillator with an inverse-square core,
//! `V(z) = z^2 + (alpha^2 - 1/4)/z^2`, evaluated on the shifted contour
//! `z = x - i*eps` so the core never hits a singularity for real `x`. Each
//! value of the coupling `alpha` carries two normalizable solution families
//! labelled by a quasi-parity `q = +-1`, and a one-term superpotential ansatz
//! `W = z + lambda/z + 2gz/(1 + gz^2)` closes into exactly solvable partner
//! potentials when `lambda`, `g`, and the factorization energy `beta` are tied
//! to `q*alpha` ([`model::ces_closure`]).
//!
//! Everything the closure promises is written down twice and compared:
//!
//! * closed-form partner potentials vs `W^2 +- W' - beta` ([`model`]),
//! * closed-form wavefunctions and ladders vs the intertwining operators
//!   `A = d/dx + W`, `B = -d/dx + W` ([`states`]),
//! * analytic spectra vs a from-scratch finite-difference eigensolver for the
//!   resulting complex-symmetric operators ([`numeric`]).
//!
//! [`verify`] bundles the named checks into a machine-readable report and
//! [`cli`] exposes them (plus figure/scan table generation) behind the
//! `ptsusy` binary.

pub mod cli;
mod error;
pub mod model;
pub mod numeric;
pub mod special;
pub mod states;
pub mod verify;

pub use error::Error;

/// Shorthand used throughout: all contour values are double-precision complex.
pub type C64 = num_complex::Complex64;

/// Serialize a complex number as `{"re": ..., "im": ...}` (the shape all
/// JSON output of this crate uses) instead of num-complex's default array.
pub(crate) mod c64_serde {
    use super::C64;
    use serde::ser::SerializeStruct;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Complex", 2)?;
        st.serialize_field("re", &z.re)?;
        st.serialize_field("im", &z.im)?;
        st.end()
    }
}
