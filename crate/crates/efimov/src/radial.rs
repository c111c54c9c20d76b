//! Zero-energy radial problem u'' = V(rho) u for the attractive molecular
//! term, and the universal asymptotic coefficients it defines.
//!
//! Two canonical solutions are propagated together, fixed near the origin by
//!
//! ```text
//!     u1 = sqrt(rho) cos(s0 ln rho),   u2 = sqrt(rho) sin(s0 ln rho),
//! ```
//!
//! the exact solutions of the limiting inverse-square attraction. Their
//! Wronskian u1 u2' - u2 u1' equals s0 at the seed and is conserved exactly
//! by the real potential, which makes it the running accuracy monitor. At
//! large rho both solutions turn linear, u_i = alpha_i + beta_i rho, and the
//! four intercept/slope coefficients condense into
//!
//! ```text
//!     alpha = -(a1 b1 + a2 b2)/(b1^2 + b2^2),
//!     beta  =  (a1 b2 - a2 b1)/(b1^2 + b2^2) = s0/(b1^2 + b2^2) > 0,
//!     theta0 = arctan(beta/alpha),
//! ```
//!
//! the only combinations scattering observables ever see. They depend on
//! nothing but the mass ratio.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode;
use crate::terms::{self, MassRatio};

/// Grid and tolerance knobs for the radial integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialNumerics {
    pub rho_min: f64,
    pub rho_max: f64,
    pub rel_tol: f64,
}

impl Default for RadialNumerics {
    fn default() -> Self {
        RadialNumerics {
            rho_min: 1e-4,
            rho_max: 40.0,
            rel_tol: 1e-10,
        }
    }
}

impl RadialNumerics {
    pub fn new(rho_min: f64, rho_max: f64, rel_tol: f64) -> Result<Self> {
        let num = RadialNumerics {
            rho_min,
            rho_max,
            rel_tol,
        };
        num.validate()?;
        Ok(num)
    }

    pub fn validate(&self) -> Result<()> {
        let grid_ok = self.rho_min > 0.0 && self.rho_min < 1.0 && self.rho_max > 1.0;
        if !grid_ok {
            return Err(Error::InvalidNumerics(format!(
                "need 0 < rho_min < 1 < rho_max, got rho_min = {}, rho_max = {}",
                self.rho_min, self.rho_max
            )));
        }
        let tol_ok = self.rel_tol > 0.0 && self.rel_tol <= 1e-6;
        if !tol_ok {
            return Err(Error::InvalidNumerics(format!(
                "rel_tol must lie in (0, 1e-6], got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Values and rho-derivatives of the canonical pair at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionState {
    pub rho: f64,
    pub u1: f64,
    pub du1: f64,
    pub u2: f64,
    pub du2: f64,
}

impl SolutionState {
    /// u1 u2' - u2 u1', conserved and equal to s0.
    pub fn wronskian(&self) -> f64 {
        self.u1 * self.du2 - self.u2 * self.du1
    }
}

/// Counters and the conservation record of one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrationStats {
    pub steps: usize,
    pub max_wronskian_dev: f64,
}

/// Seed both canonical solutions at rho_min with the closed small-rho forms.
pub fn seed_pair(rho_min: f64, s0: f64) -> SolutionState {
    let l = rho_min.ln();
    let (sin, cos) = (s0 * l).sin_cos();
    let sq = rho_min.sqrt();
    SolutionState {
        rho: rho_min,
        u1: sq * cos,
        du1: (0.5 * cos - s0 * sin) / sq,
        u2: sq * sin,
        du2: (0.5 * sin + s0 * cos) / sq,
    }
}

/// Propagate the canonical pair through an arbitrary potential. The seed
/// phase uses `s0_seed`, which must match the potential's rho -> 0
/// inverse-square strength -(s0^2 + 1/4)/rho^2 for the pair to be canonical.
///
/// The Wronskian is checked against s0_seed at every accepted step; drift
/// beyond 1e-8 relative aborts the run. `rel_tol` is honored as an upper
/// bound on the local error: the driver never steps looser than 1e-9, so
/// the Wronskian contract holds for every permitted tolerance.
pub fn integrate_pair<F>(
    potential: F,
    s0_seed: f64,
    num: &RadialNumerics,
) -> Result<(SolutionState, IntegrationStats)>
where
    F: Fn(f64) -> f64,
{
    num.validate()?;
    let seed = seed_pair(num.rho_min, s0_seed);
    let y0 = [seed.u1, seed.du1, seed.u2, seed.du2];
    let opts = ode::Options {
        rel_tol: num.rel_tol.min(1e-9),
        abs_tol: 1e-13,
        max_steps: 2_000_000,
    };
    let mut max_dev = 0.0f64;
    let mut steps = 0usize;
    let rhs = |rho: f64, y: &[f64; 4]| [y[1], potential(rho) * y[0], y[3], potential(rho) * y[2]];
    let (y, _stats) = ode::integrate(rhs, num.rho_min, num.rho_max, y0, &opts, |rho, y| {
        steps += 1;
        let w = y[0] * y[3] - y[2] * y[1];
        let dev = (w / s0_seed - 1.0).abs();
        max_dev = max_dev.max(dev);
        if dev > 1e-8 {
            return Err(Error::WronskianDrift { rho, rel_dev: dev });
        }
        Ok(())
    })?;
    Ok((
        SolutionState {
            rho: num.rho_max,
            u1: y[0],
            du1: y[1],
            u2: y[2],
            du2: y[3],
        },
        IntegrationStats {
            steps,
            max_wronskian_dev: max_dev,
        },
    ))
}

/// Propagate the canonical pair through the physical molecular-term
/// potential for mass ratio `mr`.
pub fn integrate(mr: MassRatio, num: &RadialNumerics) -> Result<SolutionState> {
    let s0 = terms::s0(mr)?;
    let (end, _) = integrate_pair(|rho| physical_potential(mr, rho), s0, num)?;
    Ok(end)
}

fn physical_potential(mr: MassRatio, rho: f64) -> f64 {
    debug_assert!(rho > 0.0);
    terms::potential(mr, rho).expect("potential defined for rho > 0")
}

/// Large-rho intercepts and slopes of the canonical pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticCoeffs {
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
}

/// Read off u_i = alpha_i + beta_i rho from an endpoint state. Requires the
/// potential tail to be numerically dead there, |V(rho)| < 1e-12.
pub fn asymptotic_coeffs(end: &SolutionState, mr: MassRatio) -> Result<AsymptoticCoeffs> {
    let v = terms::potential(mr, end.rho)?;
    if v.abs() >= 1e-12 {
        return Err(Error::TailNotConverged { rho: end.rho, v });
    }
    Ok(AsymptoticCoeffs {
        alpha1: end.u1 - end.rho * end.du1,
        beta1: end.du1,
        alpha2: end.u2 - end.rho * end.du2,
        beta2: end.du2,
    })
}

/// Convergence record attached to a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    pub numerics: RadialNumerics,
    pub steps: usize,
    pub max_wronskian_dev: f64,
    /// Relative shifts of (alpha, beta, theta0) under rho_min -> rho_min/2
    /// and rho_max -> rho_max + 10, whichever is larger.
    pub alpha_drift: f64,
    pub beta_drift: f64,
    pub theta0_drift: f64,
}

/// The mass-ratio-dependent universal constants of the radial law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniversalParams {
    pub mass_ratio: f64,
    pub s0: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub alpha: f64,
    pub beta: f64,
    pub theta0: f64,
    pub diagnostics: Diagnostics,
}

fn combine(c: &AsymptoticCoeffs) -> (f64, f64, f64) {
    let denom = c.beta1 * c.beta1 + c.beta2 * c.beta2;
    let alpha = -(c.alpha1 * c.beta1 + c.alpha2 * c.beta2) / denom;
    let beta = (c.alpha1 * c.beta2 - c.alpha2 * c.beta1) / denom;
    let theta0 = beta.atan2(alpha);
    (alpha, beta, theta0)
}

fn single_run(mr: MassRatio, num: &RadialNumerics) -> Result<(AsymptoticCoeffs, IntegrationStats)> {
    let s0 = terms::s0(mr)?;
    let (end, stats) = integrate_pair(|rho| physical_potential(mr, rho), s0, num)?;
    Ok((asymptotic_coeffs(&end, mr)?, stats))
}

/// Compute s0, the asymptotic coefficients and the derived (alpha, beta,
/// theta0) for one mass ratio, together with refinement diagnostics from a
/// rho_min-halved and a rho_max-extended rerun.
pub fn universal_params(mr: MassRatio, num: &RadialNumerics) -> Result<UniversalParams> {
    num.validate()?;
    let s0 = terms::s0(mr)?;
    let (coeffs, stats) = single_run(mr, num)?;
    let (alpha, beta, theta0) = combine(&coeffs);

    let mut alpha_drift = 0.0f64;
    let mut beta_drift = 0.0f64;
    let mut theta0_drift = 0.0f64;
    for refined in [
        RadialNumerics {
            rho_min: num.rho_min / 2.0,
            ..*num
        },
        RadialNumerics {
            rho_max: num.rho_max + 10.0,
            ..*num
        },
    ] {
        let (c, _) = single_run(mr, &refined)?;
        let (a, b, t) = combine(&c);
        alpha_drift = alpha_drift.max((a / alpha - 1.0).abs());
        beta_drift = beta_drift.max((b / beta - 1.0).abs());
        theta0_drift = theta0_drift.max((t / theta0 - 1.0).abs());
    }

    Ok(UniversalParams {
        mass_ratio: mr.value(),
        s0,
        alpha1: coeffs.alpha1,
        beta1: coeffs.beta1,
        alpha2: coeffs.alpha2,
        beta2: coeffs.beta2,
        alpha,
        beta,
        theta0,
        diagnostics: Diagnostics {
            numerics: *num,
            steps: stats.steps,
            max_wronskian_dev: stats.max_wronskian_dev,
            alpha_drift,
            beta_drift,
            theta0_drift,
        },
    })
}
