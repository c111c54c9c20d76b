//! Adaptive Dormand-Prince 5(4) stepper for small fixed-size systems.
//!
//! Local error is controlled against atol + rtol * |y| per component; the
//! controller shrinks steps near the origin (where the radial solutions
//! oscillate on a log scale) and lets them grow through the exponential
//! tail without further tuning.

use crate::error::{Error, Result};

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// 5th-order weights equal the last A row (FSAL); embedded 4th-order weights:
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub struct Options {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_steps: 2_000_000,
        }
    }
}

pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrate y' = rhs(t, y) from t0 to t1 (t1 > t0). `on_accept` sees every
/// accepted state and may abort the run with an error.
pub fn integrate<const N: usize, F, G>(
    rhs: F,
    t0: f64,
    t1: f64,
    y0: [f64; N],
    opts: &Options,
    mut on_accept: G,
) -> Result<([f64; N], Stats)>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    G: FnMut(f64, &[f64; N]) -> Result<()>,
{
    let mut t = t0;
    let mut y = y0;
    let mut k = [[0.0; N]; 7];
    k[0] = rhs(t, &y);
    let mut h = initial_step(t0, t1);
    let mut stats = Stats {
        accepted: 0,
        rejected: 0,
    };

    while t < t1 {
        if h < 16.0 * f64::EPSILON * t.abs().max(1e-6) {
            return Err(Error::Stiffness { rho: t, step: h });
        }
        if stats.accepted + stats.rejected > opts.max_steps {
            return Err(Error::Numerical(format!(
                "step budget exhausted at t = {t}"
            )));
        }
        // land exactly on t1 so no sub-ulp sliver is left behind
        let final_step = t1 - t <= h;
        let hs = if final_step { t1 - t } else { h };

        for stage in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = A[stage][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += hs * a * kj[i];
                    }
                }
            }
            k[stage] = rhs(t + C[stage] * hs, &ys);
        }

        // 5th-order solution is the stage-6 argument (FSAL); error against B4
        let mut y5 = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            let a = A[6][j];
            if a != 0.0 {
                for i in 0..N {
                    y5[i] += hs * a * kj[i];
                }
            }
        }
        let mut err2 = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                // A[6] has 6 entries; the 7th 5th-order weight is 0
                e += (A[6].get(j).copied().unwrap_or(0.0) - B4[j]) * kj[i];
            }
            let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y5[i].abs());
            let r = hs * e / scale;
            err2 += r * r;
        }
        let err = (err2 / N as f64).sqrt();

        if err <= 1.0 {
            t = if final_step { t1 } else { t + hs };
            y = y5;
            k[0] = k[6]; // FSAL
            stats.accepted += 1;
            on_accept(t, &y)?;
        } else {
            stats.rejected += 1;
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h = hs * factor;
    }
    Ok((y, stats))
}

fn initial_step(t0: f64, t1: f64) -> f64 {
    (t0.abs() * 1e-2).max((t1 - t0) * 1e-8).max(1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn harmonic_oscillator_full_period() {
        // y'' = -y from (1, 0): y(2 pi) = 1
        let opts = Options::default();
        let (y, _) = integrate(
            |_t, y: &[f64; 2]| [y[1], -y[0]],
            0.0,
            2.0 * std::f64::consts::PI,
            [1.0, 0.0],
            &opts,
            |_, _| Ok(()),
        )
        .unwrap();
        assert_relative_eq!(y[0], 1.0, max_relative = 1e-8);
        assert!(y[1].abs() < 1e-8);
    }

    #[test]
    fn exponential_growth() {
        let opts = Options::default();
        let (y, stats) = integrate(
            |_t, y: &[f64; 1]| [y[0]],
            0.0,
            3.0,
            [1.0],
            &opts,
            |_, _| Ok(()),
        )
        .unwrap();
        assert_relative_eq!(y[0], 3.0f64.exp(), max_relative = 1e-9);
        assert!(stats.accepted > 10);
    }

    #[test]
    fn callback_error_aborts() {
        let opts = Options::default();
        let res = integrate(
            |_t, y: &[f64; 1]| [y[0]],
            0.0,
            3.0,
            [1.0],
            &opts,
            |t, _| {
                if t > 1.0 {
                    Err(Error::Numerical("stop".into()))
                } else {
                    Ok(())
                }
            },
        );
        assert!(matches!(res, Err(Error::Numerical(_))));
    }
}
