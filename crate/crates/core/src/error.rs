//! Error types shared across the crate.

use std::fmt;

/// Everything that can go wrong while building operators or running checks.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Coordinate outside the valid domain.
    Domain(String),
    /// Division by a vanishing kappa-trig function.
    Pole(String),
    /// Invalid operator or system parameter.
    Param(String),
    /// Missing or inconsistent run configuration.
    Config(String),
    /// Quantum numbers outside the admissible range.
    Admissibility(String),
    /// State fails the normalizability (tail-mass) test.
    Normalization(String),
    /// Eigensolver failed its grid-doubling convergence test.
    Convergence(String),
    /// Unknown observable name.
    Catalog(String),
    /// Trajectory approached a coordinate pole.
    Singularity(String),
    /// Finite-difference step-halving estimates disagree.
    Step(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Pole(m) => write!(f, "pole error: {m}"),
            Error::Param(m) => write!(f, "parameter error: {m}"),
            Error::Config(m) => write!(f, "config error: {m}"),
            Error::Admissibility(m) => write!(f, "admissibility error: {m}"),
            Error::Normalization(m) => write!(f, "normalization error: {m}"),
            Error::Convergence(m) => write!(f, "convergence error: {m}"),
            Error::Catalog(m) => write!(f, "catalog error: {m}"),
            Error::Singularity(m) => write!(f, "singularity error: {m}"),
            Error::Step(m) => write!(f, "step error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
