use std::fmt;

/// Errors raised by the two-center, radial and scattering kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Mass ratio M/m must be a positive finite number.
    InvalidMassRatio(f64),
    /// M/m at or below 1/(2 G(0)^2): the inverse-square attraction is too
    /// weak for a real channel exponent.
    SubThreshold { mass_ratio: f64, bound: f64 },
    /// Symmetric-branch quantities are defined for rho > 0 only.
    NonPositiveRho(f64),
    /// The antisymmetric level does not exist below rho = 1.
    NoBoundState(f64),
    /// Wavefunction evaluated exactly at a well center.
    Singularity { rho: f64 },
    /// Radial grid or tolerance outside its allowed range.
    InvalidNumerics(String),
    /// Adaptive step size underflowed; tolerances are inconsistent with the
    /// requested span.
    Stiffness { rho: f64, step: f64 },
    /// Wronskian conservation broke beyond the 1e-8 relative contract.
    WronskianDrift { rho: f64, rel_dev: f64 },
    /// |V(rho_max)| is not yet below the 1e-12 tail cutoff, so the linear
    /// asymptote cannot be read off.
    TailNotConverged { rho: f64, v: f64 },
    /// True Efimov resonance: eta* = 0 and sin x = 0, the scattering length
    /// diverges.
    EfimovPole { x: f64 },
    /// The three-body parameter must be nonzero with arg(Lambda0) in [0, pi).
    InvalidThreeBodyParam { re: f64, im: f64 },
    /// a* must be positive and eta* non-negative.
    InvalidEfimovParams { a_star: f64, eta_star: f64 },
    /// Collision momentum k*a0 outside the operation's domain.
    InvalidMomentum(f64),
    /// Quadrature or maximizer failed to converge.
    Numerical(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidMassRatio(v) => {
                write!(f, "mass ratio M/m must be positive and finite, got {v}")
            }
            Error::SubThreshold { mass_ratio, bound } => write!(
                f,
                "mass ratio {mass_ratio} is at or below the Efimov threshold \
                 1/(2 G(0)^2) = {bound}; no real channel exponent s0"
            ),
            Error::NonPositiveRho(rho) => {
                write!(f, "symmetric branch requires rho > 0, got {rho}")
            }
            Error::NoBoundState(rho) => write!(
                f,
                "antisymmetric bound state exists only for rho >= 1, got {rho}"
            ),
            Error::Singularity { rho } => {
                write!(f, "wavefunction is singular at a well center (rho = {rho})")
            }
            Error::InvalidNumerics(msg) => write!(f, "invalid numerics: {msg}"),
            Error::Stiffness { rho, step } => write!(
                f,
                "step size underflow at rho = {rho} (h = {step}); tolerances too tight"
            ),
            Error::WronskianDrift { rho, rel_dev } => write!(
                f,
                "Wronskian drifted by {rel_dev:.3e} relative at rho = {rho} (contract 1e-8)"
            ),
            Error::TailNotConverged { rho, v } => write!(
                f,
                "|V({rho})| = {v:.3e} >= 1e-12; increase rho_max before extracting asymptotes"
            ),
            Error::EfimovPole { x } => write!(
                f,
                "Efimov resonance pole at s0 ln(a0/a*) = {x}: scattering length diverges"
            ),
            Error::InvalidThreeBodyParam { re, im } => write!(
                f,
                "three-body parameter Lambda0 = {re} + {im}i must be nonzero with \
                 arg in [0, pi)"
            ),
            Error::InvalidEfimovParams { a_star, eta_star } => write!(
                f,
                "need a* > 0 and eta* >= 0, got a* = {a_star}, eta* = {eta_star}"
            ),
            Error::InvalidMomentum(k) => write!(f, "collision momentum k*a0 = {k} out of domain"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
