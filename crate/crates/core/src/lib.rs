//! Operator algebra and verification suite for quantum and classical systems
//! on constant-curvature spaces.
//!
//! The crate builds the factorization, shift, ladder and symmetry operators
//! of four superintegrable families — curved Kepler-Coulomb (KC), curved
//! harmonic oscillator (HO), Smorodinsky-Winternitz (SW) and Evans — and
//! verifies their algebra numerically: factorization identities, intertwining
//! relations, annihilation of extremal states, analytic spectra against an
//! independent eigensolver, and the classical Poisson-bracket counterparts
//! along Hamiltonian flows.

pub mod classical;
pub mod error;
pub mod factor;
pub mod field;
pub mod grid;
pub mod jet;
pub mod kappa;
pub mod linalg;
pub mod ops;
pub mod oracle;
pub mod report;
pub mod rng;
pub mod spectra;
pub mod system;
pub mod verify;

pub use error::{Error, Result};
pub use kappa::{eval_trig, trig_derivatives, volume_weight, Curvature, KappaTrigValue};
pub use system::{SystemKind, SystemSpec};
