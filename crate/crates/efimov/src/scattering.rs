//! Atom-dimer observables from the radial law.
//!
//! With x = s0 ln(a0/a*), the complex atom-dimer scattering length follows
//!
//! ```text
//!     a0(+)/a0 = alpha + beta cot(x + i eta*),
//! ```
//!
//! log-periodic in a0 with period exp(pi/s0). In the low-energy limit the
//! cross sections reduce to the closed forms (units of 4 pi a0^2)
//!
//! ```text
//!     sigma_e = (alpha^2 + beta^2) [sin^2(x + theta0) + sinh^2 eta*]
//!                                / [sin^2 x + sinh^2 eta*],
//!     sigma_r = beta sinh(2 eta*) / (2 k a0 [sin^2 x + sinh^2 eta*]),
//! ```
//!
//! identical algebraically to |a0(+)/a0|^2 and |Im a0(+)/a0|/(k a0); the two
//! routes are kept side by side as a consistency check. Loss peaks sit at
//! x = pi n; the elastic peaks are shifted by theta0 = arctan(beta/alpha).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::radial::UniversalParams;

/// Short-range boundary data as the real pair (a*, eta*): resonance
/// position and inelasticity width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfimovParams {
    pub a_star: f64,
    pub eta_star: f64,
}

impl EfimovParams {
    pub fn new(a_star: f64, eta_star: f64) -> Result<Self> {
        if a_star > 0.0 && a_star.is_finite() && eta_star >= 0.0 && eta_star.is_finite() {
            Ok(EfimovParams { a_star, eta_star })
        } else {
            Err(Error::InvalidEfimovParams { a_star, eta_star })
        }
    }
}

/// The same boundary data as one complex three-body parameter Lambda0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeBodyParam {
    pub lambda0: Complex64,
}

/// x = s0 ln(a0/a*), the running log-phase of the radial law.
pub fn log_phase(up: &UniversalParams, a0_over_astar: f64) -> f64 {
    up.s0 * a0_over_astar.ln()
}

/// Complex cotangent, stable for any imaginary part. Beyond |Im z| = 30 the
/// direct cos/sin ratio is replaced by its scaled-exponential form, which
/// saturates to -+i without overflow.
fn cot(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if z.im > 30.0 {
        let w = (2.0 * i * z).exp(); // |w| = e^{-2 Im z} << 1
        i * (w + 1.0) / (w - 1.0)
    } else if z.im < -30.0 {
        let w = (-2.0 * i * z).exp();
        i * (1.0 + w) / (1.0 - w)
    } else {
        z.cos() / z.sin()
    }
}

/// Atom-dimer scattering length ratio a0(+)/a0 = alpha + beta cot(x + i eta*).
///
/// For eta* > 0 the imaginary part is strictly negative (absorption); for
/// eta* = 0 the ratio is real and diverges at x = pi n, reported as a pole.
pub fn a_plus_over_a0(
    up: &UniversalParams,
    a0_over_astar: f64,
    eta_star: f64,
) -> Result<Complex64> {
    let in_domain = a0_over_astar > 0.0; // NaN fails as well
    if !in_domain {
        return Err(Error::InvalidEfimovParams {
            a_star: a0_over_astar,
            eta_star,
        });
    }
    let x = log_phase(up, a0_over_astar);
    a_plus_at_phase(up, x, eta_star)
}

fn a_plus_at_phase(up: &UniversalParams, x: f64, eta_star: f64) -> Result<Complex64> {
    if eta_star < 0.0 {
        return Err(Error::InvalidEfimovParams {
            a_star: f64::NAN,
            eta_star,
        });
    }
    if eta_star == 0.0 && x.sin() == 0.0 {
        return Err(Error::EfimovPole { x });
    }
    Ok(up.alpha + up.beta * cot(Complex64::new(x, eta_star)))
}

/// Convert (a*, eta*) to the complex three-body parameter on the principal
/// branch: s0 ln(Lambda0 a*) = -arctan(beta2/beta1) + i eta*.
pub fn efimov_to_lambda0(ep: &EfimovParams, up: &UniversalParams) -> Result<ThreeBodyParam> {
    let valid = ep.a_star > 0.0 && ep.eta_star >= 0.0;
    if !valid {
        return Err(Error::InvalidEfimovParams {
            a_star: ep.a_star,
            eta_star: ep.eta_star,
        });
    }
    let delta = (up.beta2 / up.beta1).atan();
    let lambda0 = (Complex64::new(-delta, ep.eta_star) / up.s0).exp() / ep.a_star;
    Ok(ThreeBodyParam { lambda0 })
}

/// Invert `efimov_to_lambda0`. eta* = s0 arg(Lambda0) fixes the convention
/// that Lambda0 in the closed upper half-plane carries the losses; the
/// modulus fixes a* on the principal branch of the logarithm.
pub fn lambda0_to_efimov(tb: &ThreeBodyParam, up: &UniversalParams) -> Result<EfimovParams> {
    let lam = tb.lambda0;
    if lam.norm() == 0.0 || !lam.norm().is_finite() || lam.arg() < 0.0 {
        return Err(Error::InvalidThreeBodyParam {
            re: lam.re,
            im: lam.im,
        });
    }
    let delta = (up.beta2 / up.beta1).atan();
    let eta_star = up.s0 * lam.arg();
    let a_star = (-delta / up.s0).exp() / lam.norm();
    Ok(EfimovParams { a_star, eta_star })
}

/// s-wave atom-dimer amplitude f = -2/(1/a+ + i k), everything in units of
/// a0. A vanishing scattering length short-circuits to f = 0.
pub fn amplitude(a_plus: Complex64, ka0: f64) -> Result<Complex64> {
    let in_domain = ka0 >= 0.0; // NaN fails as well
    if !in_domain {
        return Err(Error::InvalidMomentum(ka0));
    }
    if a_plus.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(-2.0 / (1.0 / a_plus + Complex64::new(0.0, ka0)))
}

/// Bose-symmetrized amplitude pair for identical heavy atoms:
/// fA keeps the odd part of f(-), fB flips it, and both share the
/// symmetrized even combination of f(+).
pub fn combine_amplitudes<FP, FM>(f_plus: FP, f_minus: FM, theta: f64) -> (Complex64, Complex64)
where
    FP: Fn(f64) -> Complex64,
    FM: Fn(f64) -> Complex64,
{
    let even = f_plus(theta) + f_plus(PI - theta);
    let odd = f_minus(theta) - f_minus(PI - theta);
    (even + odd, even - odd)
}

/// Adaptive Simpson on [a, b] to absolute tolerance tol.
#[allow(clippy::too_many_arguments)]
fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Numerical(format!(
            "quadrature did not converge on [{a}, {b}]"
        )));
    }
    Ok(
        adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?,
    )
}

fn integrate_0_pi<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    let (a, b) = (0.0, PI);
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_simpson(&f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Elastic cross section from the two symmetrized amplitudes,
/// sigma = (pi/4) Int_0^pi (|fA|^2 + |fB|^2) sin(theta) d(theta).
pub fn elastic_integral<FA, FB>(f_a: FA, f_b: FB) -> Result<f64>
where
    FA: Fn(f64) -> Complex64,
    FB: Fn(f64) -> Complex64,
{
    let integrand = |theta: f64| {
        (f_a(theta).norm_sqr() + f_b(theta).norm_sqr()) * theta.sin()
    };
    // relative 1e-10 on a typical scale probed at three angles
    let scale = [0.3, 1.5, 2.8]
        .iter()
        .map(|&t| integrand(t).abs())
        .fold(1e-30, f64::max);
    let sigma = integrate_0_pi(integrand, 1e-10 * scale.max(1.0))?;
    Ok(PI / 4.0 * sigma)
}

fn sigma_e_at_phase(up: &UniversalParams, x: f64, eta_star: f64) -> Result<f64> {
    if eta_star == 0.0 && x.sin() == 0.0 {
        return Err(Error::EfimovPole { x });
    }
    let sh = eta_star.sinh();
    let num = (x + up.theta0).sin().powi(2) + sh * sh;
    let den = x.sin().powi(2) + sh * sh;
    Ok((up.alpha * up.alpha + up.beta * up.beta) * num / den)
}

fn sigma_r_at_phase(up: &UniversalParams, x: f64, eta_star: f64, ka0: f64) -> Result<f64> {
    let momentum_ok = ka0 > 0.0; // NaN fails as well
    if !momentum_ok {
        return Err(Error::InvalidMomentum(ka0));
    }
    if eta_star == 0.0 && x.sin() == 0.0 {
        return Err(Error::EfimovPole { x });
    }
    let sh = eta_star.sinh();
    Ok(up.beta * (2.0 * eta_star).sinh() / (2.0 * ka0 * (x.sin().powi(2) + sh * sh)))
}

/// Elastic cross section in units of 4 pi a0^2.
pub fn sigma_elastic(up: &UniversalParams, a0_over_astar: f64, eta_star: f64) -> Result<f64> {
    sigma_e_at_phase(up, log_phase(up, a0_over_astar), eta_star)
}

/// Inelastic (loss) cross section in units of 4 pi a0^2, valid in the
/// k |Im a0(+)| << 1 limit.
pub fn sigma_inelastic(
    up: &UniversalParams,
    a0_over_astar: f64,
    eta_star: f64,
    ka0: f64,
) -> Result<f64> {
    sigma_r_at_phase(up, log_phase(up, a0_over_astar), eta_star, ka0)
}

/// Relative deviations between the closed cross-section forms and the same
/// observables rebuilt from the complex scattering length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyReport {
    pub dev_elastic: f64,
    pub dev_inelastic: f64,
}

impl ConsistencyReport {
    pub fn max_dev(&self) -> f64 {
        self.dev_elastic.max(self.dev_inelastic)
    }
}

/// Recompute sigma_e = |a+/a0|^2 and sigma_r = |Im a+/a0|/(k a0) from the
/// complex radial law and compare with the closed forms. The two routes are
/// algebraically identical; the report should stay below 1e-10.
pub fn consistency_check(
    up: &UniversalParams,
    a0_over_astar: f64,
    eta_star: f64,
    ka0: f64,
) -> Result<ConsistencyReport> {
    let x = log_phase(up, a0_over_astar);
    let ap = a_plus_at_phase(up, x, eta_star)?;
    let se_closed = sigma_e_at_phase(up, x, eta_star)?;
    let sr_closed = sigma_r_at_phase(up, x, eta_star, ka0)?;
    let se_complex = ap.norm_sqr();
    let sr_complex = ap.im.abs() / ka0;
    let rel = |a: f64, b: f64| {
        if b == 0.0 {
            a.abs()
        } else {
            (a / b - 1.0).abs()
        }
    };
    Ok(ConsistencyReport {
        dev_elastic: rel(se_complex, se_closed),
        dev_inelastic: rel(sr_complex, sr_closed),
    })
}

/// Loss-resonance positions a0/a* = exp(pi n / s0) for n in [n_lo, n_hi],
/// ascending.
pub fn resonance_positions(up: &UniversalParams, n_lo: i32, n_hi: i32) -> Vec<f64> {
    (n_lo..=n_hi)
        .map(|n| (PI * n as f64 / up.s0).exp())
        .collect()
}

/// Golden-section maximizer on [a, b]; (argmax, max) once the bracket
/// shrinks below tol.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..400 {
        if b - a < tol {
            let x = 0.5 * (a + b);
            return Ok((x, f(x)));
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    Err(Error::Numerical("golden-section maximizer stalled".into()))
}

/// Locate the maximum of sigma_r(x) within a phase window.
pub fn sigma_inelastic_peak(
    up: &UniversalParams,
    eta_star: f64,
    ka0: f64,
    x_window: (f64, f64),
) -> Result<(f64, f64)> {
    let momentum_ok = ka0 > 0.0; // NaN fails as well
    if !momentum_ok {
        return Err(Error::InvalidMomentum(ka0));
    }
    golden_max(
        |x| sigma_r_at_phase(up, x, eta_star, ka0).unwrap_or(f64::NEG_INFINITY),
        x_window.0,
        x_window.1,
        1e-12,
    )
}

/// Locate the maximum of sigma_e(x) within a phase window.
pub fn sigma_elastic_peak(
    up: &UniversalParams,
    eta_star: f64,
    x_window: (f64, f64),
) -> Result<(f64, f64)> {
    golden_max(
        |x| sigma_e_at_phase(up, x, eta_star).unwrap_or(f64::NEG_INFINITY),
        x_window.0,
        x_window.1,
        1e-12,
    )
}

/// Ratio of the elastic to the inelastic peak height over one log-period,
/// sigma_e_max / sigma_r_max. In the small (eta*, k a0) regime this
/// approaches beta * ka0/eta*, numerically 2.6 ka0/eta* for the Li-Rb mass
/// ratio.
pub fn peak_ratio(up: &UniversalParams, ka0: f64, eta_star: f64) -> Result<f64> {
    let losses_on = eta_star > 0.0; // NaN fails as well
    if !losses_on {
        return Err(Error::InvalidEfimovParams {
            a_star: f64::NAN,
            eta_star,
        });
    }
    let window = (-PI / 2.0, PI / 2.0);
    let (_, se_max) = sigma_elastic_peak(up, eta_star, window)?;
    let (_, sr_max) = sigma_inelastic_peak(up, eta_star, ka0, window)?;
    Ok(se_max / sr_max)
}

/// One scan sample of the cross sections and the complex scattering length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSectionPoint {
    pub a0_over_astar: f64,
    pub x: f64,
    pub sigma_e: f64,
    pub sigma_r: f64,
    pub a_plus: Complex64,
}

/// Evaluate one scan point; errors at a true (eta* = 0) resonance pole.
pub fn cross_section_point(
    up: &UniversalParams,
    a0_over_astar: f64,
    eta_star: f64,
    ka0: f64,
) -> Result<CrossSectionPoint> {
    let x = log_phase(up, a0_over_astar);
    let a_plus = a_plus_at_phase(up, x, eta_star)?;
    let sigma_e = sigma_e_at_phase(up, x, eta_star)?;
    let sigma_r = if eta_star == 0.0 {
        0.0
    } else {
        sigma_r_at_phase(up, x, eta_star, ka0)?
    };
    Ok(CrossSectionPoint {
        a0_over_astar,
        x,
        sigma_e,
        sigma_r,
        a_plus,
    })
}
