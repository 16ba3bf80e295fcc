//! Spectral measures on the two-torus for the SU(3) ADE nimrep graphs and the
//! McKay graphs of finite SU(3) subgroups.
//!
//! Every spectral measure handled here is atomic: a finite weighted sum of
//! Dirac points on `T^2`, pushed onto the discoid (the deltoid plus its
//! interior) by the map `Phi(w1, w2) = w1 + w2^-1 + w1^-1 w2`. The crate
//! computes these measures three independent ways and cross-checks them:
//!
//! * from closed-form combinations of a small family of lattice measures
//!   ([`measures`]),
//! * from graph exponent/eigenvector data or group character tables
//!   ([`nimrep`], [`subgroups`]),
//! * from brute-force oracles: adjacency-matrix powers, lattice walk counts
//!   and exact Laurent-polynomial constant terms ([`counting`]).
//!
//! Geometry of the torus-to-discoid map, the S3 Weyl action and the cubic
//! inversion of `Phi` live in [`torus`]. Verification drivers and the report
//! format live in [`report`].
//!
//! See the crate examples for runnable tours of each capability, and the
//! `discoid` binary for the command-line surface.

pub mod counting;
pub mod measures;
pub mod nimrep;
pub mod report;
pub mod subgroups;
pub mod torus;

pub use measures::{Atom, AtomicMeasure};
pub use report::VerificationReport;
pub use torus::{DiscoidPoint, TorusPoint, WeylElement};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A complex number fails the discoid membership test by more than the
    /// clamping tolerance.
    #[error("point {z} lies outside the discoid (radicand {radicand:.3e})")]
    OutsideDiscoid { z: num_complex::Complex64, radicand: f64 },

    /// A constructor was called with parameters outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A graph or group identifier is not registered.
    #[error("unknown subject: {0}")]
    UnknownSubject(String),

    /// Conjugacy class sizes do not sum to the group order.
    #[error("class equation violated for {name}: sizes sum to {sum}, order is {order}")]
    ClassEquation { name: String, sum: u64, order: u64 },

    /// Adjacency matrix is not normal, so its spectral measure is undefined.
    #[error("matrix is not normal")]
    NotNormal,

    /// The piecewise torus representative does not reproduce the class
    /// character it encodes.
    #[error("theta^(k) branch mismatch at k={k}: |Phi - e^(-2 pi i k)| = {delta:.3e}")]
    BranchMismatch { k: num_rational::Rational64, delta: f64 },

    /// An exact integer division that must be exact was not.
    #[error("non-integral division: {0}")]
    NonIntegralDivision(String),

    /// Embedded or external data failed validation on load.
    #[error("data validation failed: {0}")]
    DataValidation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
