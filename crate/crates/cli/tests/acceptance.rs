//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criteria cover the published constants for the Li-Rb mixture, the
//! conservation and refinement contracts of the radial integration, the
//! closed-form/complex-route identity, the root-solver residual contract,
//! and regeneration of the reference cross-section scan.

use std::f64::consts::PI;

use efimov::{
    consistency_check, g_minus, g_plus, integrate_pair, omega_constant, peak_ratio, s0,
    s0_threshold, universal_params, Error, MassRatio, RadialNumerics, UniversalParams,
};
use efimov_cli::{locate_loss_peaks, run_scan, scan_csv, ScanConfig};

fn li_rb() -> UniversalParams {
    universal_params(
        MassRatio::new(87.0 / 7.0).unwrap(),
        &RadialNumerics::default(),
    )
    .unwrap()
}

fn pass(n: u32, name: &str, detail: &str) {
    println!("ACCEPTANCE {n} [{name}]: PASS ({detail})");
}

struct Failure(u32, &'static str, String);

impl Failure {
    fn check(n: u32, name: &'static str, ok: bool, detail: String) -> Result<(), Failure> {
        if ok {
            Ok(())
        } else {
            Err(Failure(n, name, detail))
        }
    }
}

impl std::fmt::Debug for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ACCEPTANCE {} [{}]: FAIL ({})", self.0, self.1, self.2)
    }
}

#[test]
fn criterion_1_channel_exponent() -> Result<(), Failure> {
    const N: u32 = 1;
    const NAME: &str = "channel exponent";
    let s = s0(MassRatio::new(12.43).unwrap()).unwrap();
    Failure::check(N, NAME, (s - 1.322).abs() <= 1e-3, format!("s0 = {s}"))?;
    let w = omega_constant();
    Failure::check(N, NAME, (w - 0.5671).abs() <= 1e-4, format!("G(0) = {w}"))?;
    pass(N, NAME, &format!("s0(12.43) = {s:.6}, G(0) = {w:.6}"));
    Ok(())
}

#[test]
fn criterion_2_universal_parameters() -> Result<(), Failure> {
    const N: u32 = 2;
    const NAME: &str = "universal parameters";
    let up = li_rb();
    for (label, got, want, tol) in [
        ("alpha", up.alpha, 2.17, 0.03),
        ("beta", up.beta, 2.55, 0.03),
        ("theta0", up.theta0, 0.87, 0.01),
    ] {
        Failure::check(
            N,
            NAME,
            (got - want).abs() <= tol,
            format!("{label} = {got} outside {want} +- {tol}"),
        )?;
    }
    // refinement stability is recorded by the rho_min/2 and rho_max+10 reruns
    let d = &up.diagnostics;
    for (label, drift) in [
        ("alpha", d.alpha_drift),
        ("beta", d.beta_drift),
        ("theta0", d.theta0_drift),
    ] {
        Failure::check(
            N,
            NAME,
            drift < 1e-3,
            format!("{label} drift {drift:.2e} exceeds 1e-3"),
        )?;
    }
    pass(
        N,
        NAME,
        &format!(
            "alpha = {:.4}, beta = {:.4}, theta0 = {:.4}, max drift = {:.1e}",
            up.alpha,
            up.beta,
            up.theta0,
            d.alpha_drift.max(d.beta_drift).max(d.theta0_drift)
        ),
    );
    Ok(())
}

#[test]
fn criterion_3_resonance_spacing() -> Result<(), Failure> {
    const N: u32 = 3;
    const NAME: &str = "resonance spacing";
    let up = li_rb();
    let cfg = ScanConfig::reference(up.mass_ratio, None);
    let rows = run_scan(&up, &cfg).unwrap();
    let peaks = locate_loss_peaks(&up, &cfg, &rows).unwrap();
    Failure::check(
        N,
        NAME,
        peaks.len() == 3,
        format!("expected 3 loss maxima, found {}", peaks.len()),
    )?;
    for (x, _) in &peaks {
        let nearest = (x / PI).round() * PI;
        Failure::check(
            N,
            NAME,
            (x - nearest).abs() <= 1e-6,
            format!("loss maximum at x = {x}, off pi n by {:.2e}", (x - nearest).abs()),
        )?;
    }
    let period = (PI / up.s0).exp();
    for w in peaks.windows(2) {
        // abscissa ratio in a0/a* space
        let ratio = ((w[1].0 - w[0].0) / up.s0).exp();
        Failure::check(
            N,
            NAME,
            (ratio - period).abs() <= 1e-6 * period && (ratio - 10.8).abs() <= 0.1,
            format!("adjacent maxima ratio {ratio} vs exp(pi/s0) = {period}"),
        )?;
    }
    pass(
        N,
        NAME,
        &format!(
            "3 maxima at x = -pi, 0, pi (to 1e-6); spacing exp(pi/s0) = {period:.4}"
        ),
    );
    Ok(())
}

#[test]
fn criterion_4_peak_ratio() -> Result<(), Failure> {
    const N: u32 = 4;
    const NAME: &str = "peak ratio";
    let up = li_rb();
    let r = peak_ratio(&up, 0.1, 0.1).unwrap();
    Failure::check(N, NAME, (r - 2.6).abs() <= 0.1, format!("ratio = {r}"))?;
    // linearity in ka0/eta* over one decade: the reduced coefficient
    // ratio/(ka0/eta*) must stay within 5%
    let base = r / (0.1 / 0.1);
    for (ka0, eta) in [(0.02, 0.1), (0.05, 0.1), (0.2, 0.1), (0.1, 0.05), (0.1, 0.01)] {
        let coeff = peak_ratio(&up, ka0, eta).unwrap() / (ka0 / eta);
        Failure::check(
            N,
            NAME,
            (coeff / base - 1.0).abs() <= 0.05,
            format!("coefficient {coeff} at ka0={ka0}, eta*={eta} vs {base}"),
        )?;
    }
    pass(N, NAME, &format!("ratio(0.1, 0.1) = {r:.4}; linear over a decade to 5%"));
    Ok(())
}

#[test]
fn criterion_5_route_equivalence() -> Result<(), Failure> {
    const N: u32 = 5;
    const NAME: &str = "algebraic route equivalence";
    let up = li_rb();
    let mut worst = 0.0f64;
    let points = 10_000;
    for i in 0..points {
        let x = -PI + 2.0 * PI * (i as f64 + 0.5) / points as f64;
        let a0 = (x / up.s0).exp();
        let rep = consistency_check(&up, a0, 0.1, 0.1).unwrap();
        worst = worst.max(rep.max_dev());
    }
    Failure::check(
        N,
        NAME,
        worst < 1e-10,
        format!("max deviation {worst:.2e} on the 1e4-point grid"),
    )?;
    pass(
        N,
        NAME,
        &format!("closed forms vs complex radial law: max deviation {worst:.2e}"),
    );
    Ok(())
}

#[test]
fn criterion_6_wronskian_conservation() -> Result<(), Failure> {
    const N: u32 = 6;
    const NAME: &str = "Wronskian conservation";
    let up = li_rb();
    // the integrator aborts if any accepted step deviates beyond 1e-8;
    // the recorded maximum must stay below as well
    let dev = up.diagnostics.max_wronskian_dev;
    Failure::check(
        N,
        NAME,
        dev < 1e-8,
        format!("per-step relative deviation {dev:.2e}"),
    )?;
    let w_inf = up.alpha1 * up.beta2 - up.alpha2 * up.beta1;
    Failure::check(
        N,
        NAME,
        (w_inf / up.s0 - 1.0).abs() < 1e-6,
        format!("alpha1 beta2 - alpha2 beta1 = {w_inf} vs s0 = {}", up.s0),
    )?;
    Failure::check(N, NAME, up.beta > 0.0, format!("beta = {}", up.beta))?;
    pass(
        N,
        NAME,
        &format!(
            "per-step dev {dev:.1e}; at infinity |W/s0 - 1| = {:.1e}; beta > 0",
            (w_inf / up.s0 - 1.0).abs()
        ),
    );
    Ok(())
}

#[test]
fn criterion_7_inverse_square_oracle() -> Result<(), Failure> {
    const N: u32 = 7;
    const NAME: &str = "inverse-square oracle";
    let s0 = li_rb().s0;
    let num = RadialNumerics {
        rho_min: 1e-4,
        rho_max: 1.0 + 1e-12,
        rel_tol: 1e-10,
    };
    let strength = s0 * s0 + 0.25;
    let (end, _) = integrate_pair(|rho| -strength / (rho * rho), s0, &num).unwrap();
    // closed forms at rho = 1: u1 = 1, u1' = 1/2, u2 = 0, u2' = s0
    let errs = [
        (end.u1 - 1.0).abs(),
        (end.du1 - 0.5).abs(),
        end.u2.abs(),
        (end.du2 - s0).abs(),
    ];
    let worst = errs.iter().fold(0.0f64, |a, &b| a.max(b));
    Failure::check(
        N,
        NAME,
        worst < 1e-8,
        format!("worst closed-form mismatch {worst:.2e} at rho = 1"),
    )?;
    pass(
        N,
        NAME,
        &format!("propagated pair matches sqrt(rho) cos/sin(s0 ln rho) to {worst:.1e}"),
    );
    Ok(())
}

#[test]
fn criterion_8_root_solver_contract() -> Result<(), Failure> {
    const N: u32 = 8;
    const NAME: &str = "root-solver contract";
    let mut worst = 0.0f64;
    let grid = 400;
    for i in 0..=grid {
        let rho = 10f64.powf(-6.0 + 8.0 * i as f64 / grid as f64);
        let g = g_plus(rho).unwrap();
        worst = worst.max(((-g).exp() - (g - rho)).abs());
        if rho >= 1.0 {
            let gm = g_minus(rho).unwrap();
            worst = worst.max((-(-gm).exp() - (gm - rho)).abs());
        }
    }
    Failure::check(
        N,
        NAME,
        worst < 1e-12,
        format!("worst branch-equation residual {worst:.2e}"),
    )?;
    Failure::check(
        N,
        NAME,
        matches!(g_minus(0.99), Err(Error::NoBoundState(_))),
        "g_minus(0.99) did not reject".into(),
    )?;
    Failure::check(N, NAME, g_minus(1.0).unwrap() == 0.0, "g_minus(1) != 0".into())?;
    // threshold derived from the vanishing radicand; 1.5546 quoted to 4 digits
    let bound = s0_threshold();
    Failure::check(
        N,
        NAME,
        (bound - 1.5546).abs() < 2e-4,
        format!("threshold {bound} vs quoted 1.5546"),
    )?;
    for mr in [1.0, bound * (1.0 - 1e-12), bound] {
        Failure::check(
            N,
            NAME,
            matches!(
                s0(MassRatio::new(mr).unwrap()),
                Err(Error::SubThreshold { .. })
            ),
            format!("M/m = {mr} not rejected"),
        )?;
    }
    pass(
        N,
        NAME,
        &format!("residuals <= {worst:.1e}; sub-threshold typed rejection at {bound:.6}"),
    );
    Ok(())
}

#[test]
fn criterion_9_reference_scan_regeneration() -> Result<(), Failure> {
    const N: u32 = 9;
    const NAME: &str = "reference scan regeneration";
    let up = li_rb();
    let cfg = ScanConfig::reference(up.mass_ratio, Some("Li7-Rb87".into()));
    let rows = run_scan(&up, &cfg).unwrap();
    let csv = scan_csv(&up, &cfg, &rows);

    // parse the emitted table back
    let mut parsed: Vec<(f64, f64, f64, f64)> = Vec::new();
    for line in csv.lines() {
        if line.starts_with('#') || line.starts_with("a0_over_astar") {
            continue;
        }
        let f: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        parsed.push((f[0], f[1], f[2], f[3]));
    }
    Failure::check(N, NAME, parsed.len() == cfg.points, "row count mismatch".into())?;

    // two full periods of the log-phase
    let span = parsed.last().unwrap().1 - parsed.first().unwrap().1;
    Failure::check(
        N,
        NAME,
        span >= 2.0 * PI,
        format!("phase span {span} covers less than two periods"),
    )?;

    // losses die between resonances: the x = pi/2 row sits on the closed
    // floor value beta sinh(2 eta)/(2 ka0 (1 + sinh^2 eta))
    let eta: f64 = 0.1;
    let floor = up.beta * (2.0 * eta).sinh() / (2.0 * 0.1 * (1.0 + eta.sinh().powi(2)));
    let near = parsed
        .iter()
        .min_by(|a, b| {
            (a.1 - PI / 2.0).abs().partial_cmp(&(b.1 - PI / 2.0).abs()).unwrap()
        })
        .unwrap();
    Failure::check(
        N,
        NAME,
        (near.3 / floor - 1.0).abs() < 1e-3,
        format!("sigma_r near x = pi/2 is {} vs floor {floor}", near.3),
    )?;

    // elastic floor stays positive: bounded below by the sinh^2 sandwich
    let se_min = parsed.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    let se_bound =
        (up.alpha * up.alpha + up.beta * up.beta) * eta.sinh().powi(2) / (1.0 + eta.sinh().powi(2));
    Failure::check(
        N,
        NAME,
        se_min > 0.0 && se_min >= se_bound,
        format!("sigma_e floor {se_min} below bound {se_bound}"),
    )?;

    // both columns periodic under x -> x + pi (a0 -> a0 exp(pi/s0))
    let period = (PI / up.s0).exp();
    let mut worst = 0.0f64;
    for &(a0, _, se, sr) in &parsed {
        let se2 = efimov::sigma_elastic(&up, a0 * period, eta).unwrap();
        let sr2 = efimov::sigma_inelastic(&up, a0 * period, eta, 0.1).unwrap();
        worst = worst.max((se2 / se - 1.0).abs()).max((sr2 / sr - 1.0).abs());
    }
    Failure::check(
        N,
        NAME,
        worst < 1e-6,
        format!("periodicity deviation {worst:.2e} exceeds 1e-6"),
    )?;
    pass(
        N,
        NAME,
        &format!(
            "span {span:.2} rad, sigma_r floor {:.4} vs {floor:.4}, sigma_e floor {se_min:.4}, periodicity {worst:.1e}",
            near.3
        ),
    );
    Ok(())
}
