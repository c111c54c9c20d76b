//! Pure scan evaluators behind the bindgen surface; host-testable.

use efimov::{
    cross_section_point, resonance_positions, term_point, Branch, Error, MassRatio, Result,
    UniversalParams,
};

/// Flat [a0/a*, x, sigma_e, sigma_r] rows on a log grid. A true pole
/// (eta* = 0 on resonance) shows up as NaN in the sigma columns.
pub fn scan_flat(
    up: &UniversalParams,
    eta_star: f64,
    ka0: f64,
    a0_min: f64,
    a0_max: f64,
    points: usize,
) -> Result<Vec<f64>> {
    let grid_ok = a0_min > 0.0 && a0_max > a0_min && points >= 2;
    if !grid_ok {
        return Err(Error::InvalidNumerics(format!(
            "bad scan grid [{a0_min}, {a0_max}] x {points}"
        )));
    }
    let mut out = Vec::with_capacity(points * 4);
    for i in 0..points {
        let t = i as f64 / (points - 1) as f64;
        let a0 = a0_min * (a0_max / a0_min).powf(t);
        match cross_section_point(up, a0, eta_star, ka0) {
            Ok(p) => out.extend_from_slice(&[p.a0_over_astar, p.x, p.sigma_e, p.sigma_r]),
            Err(Error::EfimovPole { x }) => {
                out.extend_from_slice(&[a0, x, f64::NAN, f64::NAN])
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub fn resonances_in(up: &UniversalParams, a0_min: f64, a0_max: f64) -> Vec<f64> {
    let grid_ok = a0_min > 0.0 && a0_max > a0_min;
    if !grid_ok {
        return Vec::new();
    }
    let s0 = up.s0;
    let n_lo = (s0 * a0_min.ln() / std::f64::consts::PI).ceil() as i32;
    let n_hi = (s0 * a0_max.ln() / std::f64::consts::PI).floor() as i32;
    if n_lo > n_hi {
        return Vec::new();
    }
    resonance_positions(up, n_lo, n_hi)
}

/// Flat [rho, v_plus, energy_plus, energy_minus] rows on a log grid;
/// energy_minus is NaN where the antisymmetric level does not exist.
pub fn terms_flat(mass_ratio: f64, rho_min: f64, rho_max: f64, points: usize) -> Result<Vec<f64>> {
    let grid_ok = rho_min > 0.0 && rho_max > rho_min && points >= 2;
    if !grid_ok {
        return Err(Error::InvalidNumerics(format!(
            "bad term grid [{rho_min}, {rho_max}] x {points}"
        )));
    }
    let mr = MassRatio::new(mass_ratio)?;
    let mut out = Vec::with_capacity(points * 4);
    for i in 0..points {
        let t = i as f64 / (points - 1) as f64;
        let rho = rho_min * (rho_max / rho_min).powf(t);
        let plus = term_point(Branch::Plus, rho, mr)?;
        let e_minus = if rho >= 1.0 {
            term_point(Branch::Minus, rho, mr)?.energy
        } else {
            f64::NAN
        };
        out.extend_from_slice(&[rho, plus.v, plus.energy, e_minus]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use efimov::{universal_params, RadialNumerics};

    fn li_rb() -> UniversalParams {
        universal_params(
            MassRatio::new(87.0 / 7.0).unwrap(),
            &RadialNumerics::default(),
        )
        .unwrap()
    }

    #[test]
    fn scan_rows_flat_layout() {
        let up = li_rb();
        let flat = scan_flat(&up, 0.1, 0.1, 0.05, 20.0, 201).unwrap();
        assert_eq!(flat.len(), 201 * 4);
        for row in flat.chunks(4) {
            assert!(row[0] > 0.0);
            assert!(row[2] > 0.0 && row[3] > 0.0);
        }
        // ascending grid
        assert!(flat[0] < flat[4]);
    }

    #[test]
    fn pole_rows_become_nan() {
        let up = li_rb();
        let flat = scan_flat(&up, 0.0, 0.1, 0.5, 2.0, 3).unwrap();
        // middle point is a0/a* = 1 on the log grid: a true resonance
        let mid = &flat[4..8];
        assert!((mid[0] - 1.0).abs() < 1e-12);
        assert!(mid[2].is_nan() && mid[3].is_nan());
    }

    #[test]
    fn resonances_within_window() {
        let up = li_rb();
        let r = resonances_in(&up, 0.05, 20.0);
        assert_eq!(r.len(), 3);
        assert!((r[1] - 1.0).abs() < 1e-12);
        assert!(r[0] > 0.05 && r[2] < 20.0);
        assert!(resonances_in(&up, 1.5, 2.0).is_empty());
    }

    #[test]
    fn term_rows_respect_minus_domain() {
        let flat = terms_flat(87.0 / 7.0, 0.2, 5.0, 64).unwrap();
        for row in flat.chunks(4) {
            assert!(row[1] < 0.0, "plus term attractive");
            assert!(row[2] < -1.0, "plus level below the lone dimer");
            if row[0] < 1.0 {
                assert!(row[3].is_nan());
            } else {
                assert!(row[3] <= 0.0 && row[3] > -1.0);
            }
        }
    }

    #[test]
    fn grid_validation() {
        let up = li_rb();
        assert!(scan_flat(&up, 0.1, 0.1, 2.0, 1.0, 10).is_err());
        assert!(terms_flat(12.43, 0.0, 5.0, 10).is_err());
    }
}
