//! Two-center zero-range bound states: the molecular terms felt by a pair of
//! heavy atoms sharing one light atom.
//!
//! All lengths are measured in units of the two-body scattering length a0,
//! so the heavy-heavy separation enters as rho = R/a0. Writing
//! G(rho) = rho * kappa(rho) * a0, the symmetric/antisymmetric level pair
//! satisfies
//!
//! ```text
//!     +- exp(-G) = G - rho
//! ```
//!
//! The symmetric (+) root exists for every rho > 0 and lies in (rho, rho+1];
//! the antisymmetric (-) root exists only for rho >= 1 and lies in [0, rho).
//! Both sides of each equation are monotone in G inside those brackets, so a
//! bracketed Newton iteration cannot escape or stall.
//!
//! The symmetric term generates the attractive heavy-pair potential
//!
//! ```text
//!     V(rho) = -(M/2m) [G^2(rho)/rho^2 - 1],
//! ```
//!
//! which crosses over to -(s0^2 + 1/4)/rho^2 as rho -> 0 with
//! s0 = sqrt(G(0)^2 M/2m - 1/4) and G(0) = 0.5671... (the omega constant).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Heavy-to-light mass ratio M/m, the single physical input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassRatio(f64);

impl MassRatio {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(MassRatio(value))
        } else {
            Err(Error::InvalidMassRatio(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Symmetric (attractive) or antisymmetric (repulsive) two-center level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

/// One sample of a molecular term at separation rho.
///
/// `energy` is the level energy in units of the isolated dimer binding
/// energy |e0|, i.e. energy = -(kappa a0)^2. `v` is the dimensionless
/// heavy-pair potential; it is attractive (< 0) on the Plus branch and the
/// repulsive analog on the Minus branch, which the scattering pipeline
/// never reads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermPoint {
    pub branch: Branch,
    pub rho: f64,
    pub g: f64,
    pub kappa_a0: f64,
    pub energy: f64,
    pub v: f64,
}

/// Bracketed Newton iteration for a strictly increasing f on [lo, hi].
///
/// Newton steps that leave the current bracket fall back to bisection, so
/// the iteration converges for any monotone f with f(lo) <= 0 <= f(hi).
fn solve_increasing<F, D>(mut lo: f64, mut hi: f64, guess: f64, f: F, df: D) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut x = if guess > lo && guess < hi {
        guess
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let d = df(x);
        let mut next = if d > 0.0 { x - fx / d } else { f64::NAN };
        let inside = next > lo && next < hi;
        if !inside {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= f64::EPSILON * x.abs().max(1.0) {
            return next;
        }
        x = next;
        if hi - lo <= 2.0 * f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
    }
    x
}

/// G(0), the root of exp(-G) = G (the omega constant), 0.56714...
pub fn omega_constant() -> f64 {
    solve_increasing(0.4, 0.7, 0.567, |g| g - (-g).exp(), |g| 1.0 + (-g).exp())
}

/// Symmetric-branch root of exp(-G) = G - rho, the unique G in (rho, rho+1].
pub fn g_plus(rho: f64) -> Result<f64> {
    let in_domain = rho > 0.0; // NaN fails as well
    if !in_domain {
        return Err(Error::NonPositiveRho(rho));
    }
    // Warm starts: G ~ Omega + rho/(1+Omega) near the origin, G ~ rho + e^-rho
    // far out. Either lands within a couple of Newton steps of the root.
    let guess = if rho < 1.0 {
        let w = omega_constant();
        w + rho / (1.0 + w)
    } else {
        rho + (-rho).exp()
    };
    Ok(solve_increasing(
        rho,
        rho + 1.0,
        guess,
        |g| g - rho - (-g).exp(),
        |g| 1.0 + (-g).exp(),
    ))
}

/// Antisymmetric-branch root of -exp(-G) = G - rho, the unique G in [0, rho).
///
/// The level detaches at rho = 1, where G = 0 exactly.
pub fn g_minus(rho: f64) -> Result<f64> {
    let in_domain = rho >= 1.0; // NaN fails as well
    if !in_domain {
        return Err(Error::NoBoundState(rho));
    }
    if rho == 1.0 {
        return Ok(0.0);
    }
    let guess = rho - (-rho).exp();
    Ok(solve_increasing(
        (rho - 1.0).max(0.0),
        rho,
        guess,
        |g| g - rho + (-g).exp(),
        |g| 1.0 - (-g).exp(),
    ))
}

/// Threshold mass ratio 1/(2 G(0)^2) below which s0 turns imaginary.
pub fn s0_threshold() -> f64 {
    let w = omega_constant();
    1.0 / (2.0 * w * w)
}

/// Channel exponent s0 = sqrt(G(0)^2 M/2m - 1/4) of the inverse-square
/// attraction. Errors for mass ratios at or below the threshold.
pub fn s0(mr: MassRatio) -> Result<f64> {
    let bound = s0_threshold();
    if mr.value() <= bound {
        return Err(Error::SubThreshold {
            mass_ratio: mr.value(),
            bound,
        });
    }
    let w = omega_constant();
    Ok((w * w * mr.value() / 2.0 - 0.25).sqrt())
}

/// Shared form of the dimensionless heavy-pair potential for a branch root g.
pub(crate) fn potential_of(g: f64, rho: f64, mr: MassRatio) -> f64 {
    -(mr.value() / 2.0) * (g * g / (rho * rho) - 1.0)
}

/// Attractive heavy-pair potential V(rho) of the symmetric term.
pub fn potential(mr: MassRatio, rho: f64) -> Result<f64> {
    Ok(potential_of(g_plus(rho)?, rho, mr))
}

/// Evaluate one molecular-term sample: root, kappa a0, level energy and the
/// heavy-pair potential, all at separation rho.
pub fn term_point(branch: Branch, rho: f64, mr: MassRatio) -> Result<TermPoint> {
    let g = match branch {
        Branch::Plus => g_plus(rho)?,
        Branch::Minus => g_minus(rho)?,
    };
    let kappa_a0 = g / rho;
    Ok(TermPoint {
        branch,
        rho,
        g,
        kappa_a0,
        energy: -kappa_a0 * kappa_a0,
        v: potential_of(g, rho, mr),
    })
}

/// Single-well zero-range orbital psi_kappa(r) = sqrt(kappa/2pi) e^{-kappa r}/r.
pub fn orbital(kappa: f64, r: f64) -> f64 {
    (kappa / (2.0 * std::f64::consts::PI)).sqrt() * (-kappa * r).exp() / r
}

/// Two-center wavefunction
/// chi = N [psi(|r - R/2|) +- psi(|r + R/2|)] with the wells at +-rho/2 on
/// the z axis and N = sqrt(1/(2(1 +- e^{-kappa R}))), which normalizes chi
/// exactly because the two-orbital overlap is e^{-kappa R}.
///
/// `point` is a Cartesian position in units of a0.
pub fn chi_eval(branch: Branch, point: [f64; 3], rho: f64) -> Result<f64> {
    let g = match branch {
        Branch::Plus => g_plus(rho)?,
        Branch::Minus => g_minus(rho)?,
    };
    let kappa = g / rho;
    if kappa == 0.0 {
        // minus level at exactly rho = 1: zero binding, not normalizable
        return Err(Error::NoBoundState(rho));
    }
    let half = rho / 2.0;
    let [x, y, z] = point;
    let r_upper = (x * x + y * y + (z - half) * (z - half)).sqrt();
    let r_lower = (x * x + y * y + (z + half) * (z + half)).sqrt();
    if r_upper == 0.0 || r_lower == 0.0 {
        return Err(Error::Singularity { rho });
    }
    let sign = match branch {
        Branch::Plus => 1.0,
        Branch::Minus => -1.0,
    };
    let norm = (0.5 / (1.0 + sign * (-kappa * rho).exp())).sqrt();
    Ok(norm * (orbital(kappa, r_upper) + sign * orbital(kappa, r_lower)))
}
