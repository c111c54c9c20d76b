//! Born-Oppenheimer treatment of a heavy atom colliding with a weakly bound
//! heavy-light dimer, end to end: two-center zero-range molecular terms, the
//! zero-energy radial law for the atom-dimer scattering length, and the
//! log-periodic Efimov resonances it imprints on the elastic and inelastic
//! cross sections.
//!
//! Everything is dimensionless: lengths in units of the two-body scattering
//! length a0, energies in units of the dimer binding energy, cross sections
//! in units of 4 pi a0^2. The single physical input is the heavy-to-light
//! mass ratio M/m; the short-range three-body physics enters through the
//! fitted pair (a*, eta*) or, equivalently, one complex parameter Lambda0.
//!
//! ```
//! use efimov::{MassRatio, RadialNumerics, universal_params};
//!
//! let mr = MassRatio::new(87.0 / 7.0).unwrap();
//! let up = universal_params(mr, &RadialNumerics::default()).unwrap();
//! assert!((up.s0 - 1.322).abs() < 1e-3);
//! let se = efimov::sigma_elastic(&up, 2.0, 0.1).unwrap();
//! assert!(se > 0.0);
//! ```

pub mod error;
mod ode;
pub mod radial;
pub mod scattering;
pub mod terms;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use radial::{
    asymptotic_coeffs, integrate, integrate_pair, seed_pair, universal_params, AsymptoticCoeffs,
    Diagnostics, IntegrationStats, RadialNumerics, SolutionState, UniversalParams,
};
pub use scattering::{
    a_plus_over_a0, amplitude, combine_amplitudes, consistency_check, cross_section_point,
    efimov_to_lambda0, elastic_integral, lambda0_to_efimov, log_phase, peak_ratio,
    resonance_positions, sigma_elastic, sigma_elastic_peak, sigma_inelastic,
    sigma_inelastic_peak, ConsistencyReport, CrossSectionPoint, EfimovParams, ThreeBodyParam,
};
pub use terms::{
    chi_eval, g_minus, g_plus, omega_constant, orbital, potential, s0, s0_threshold, term_point,
    Branch, MassRatio, TermPoint,
};
