//! Scan engine and emitters behind the `efimov` binary: species presets,
//! cross-section scans with validity reporting, molecular-term dumps, and
//! deterministic CSV/JSON output.
//!
//! All emitted floats carry 12 significant digits, so identical inputs
//! produce byte-identical files.

use serde::Serialize;

use efimov::{
    cross_section_point, sigma_inelastic_peak, term_point, universal_params, Branch,
    CrossSectionPoint, MassRatio, RadialNumerics, TermPoint, UniversalParams,
};

pub use efimov::{Error, Result};

/// A named mixture: two identical heavy bosons sharing one light atom.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpeciesPreset {
    pub name: &'static str,
    pub mass_ratio: f64,
    pub notes: &'static str,
}

pub const PRESETS: &[SpeciesPreset] = &[
    SpeciesPreset {
        name: "Li7-Rb87",
        mass_ratio: 87.0 / 7.0,
        notes: "two 87Rb + one 7Li; wide interspecies Feshbach resonance near 649 G \
                (width 175 G) tunes a0",
    },
    SpeciesPreset {
        name: "Li7-Cs133",
        mass_ratio: 133.0 / 7.0,
        notes: "two 133Cs + one 7Li; largest alkali mass ratio, shortest resonance spacing",
    },
    SpeciesPreset {
        name: "Na23-Rb87",
        mass_ratio: 87.0 / 23.0,
        notes: "two 87Rb + one 23Na; close to the s0 threshold, widely spaced resonances",
    },
];

pub fn find_preset(name: &str) -> Option<&'static SpeciesPreset> {
    PRESETS.iter().find(|p| p.name.eq_ignore_ascii_case(name))
}

/// Everything a cross-section scan needs besides the universal constants.
#[derive(Debug, Clone, Serialize)]
pub struct ScanConfig {
    pub mass_ratio: f64,
    pub preset: Option<String>,
    pub a0_min: f64,
    pub a0_max: f64,
    pub points: usize,
    pub log: bool,
    pub eta_star: f64,
    pub ka0: f64,
    pub numerics: RadialNumerics,
    /// Optional range of the light-heavy interaction, units of a0.
    pub r0: Option<f64>,
    /// Optional short-range black-box radius, units of a0.
    pub r_box: Option<f64>,
}

impl ScanConfig {
    /// Reference scan: ka0 = eta* = 0.1 on a log grid spanning a bit more
    /// than two resonance periods either side of a0 = a*.
    pub fn reference(mass_ratio: f64, preset: Option<String>) -> Self {
        ScanConfig {
            mass_ratio,
            preset,
            a0_min: 0.05,
            a0_max: 20.0,
            points: 1201,
            log: true,
            eta_star: 0.1,
            ka0: 0.1,
            numerics: RadialNumerics::default(),
            r0: None,
            r_box: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let grid_ok = self.a0_min > 0.0 && self.a0_max > self.a0_min;
        if !grid_ok {
            return Err(Error::InvalidNumerics(format!(
                "need 0 < a0-min < a0-max, got [{}, {}]",
                self.a0_min, self.a0_max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidNumerics(format!(
                "need at least 2 grid points, got {}",
                self.points
            )));
        }
        if self.eta_star < 0.0 {
            return Err(Error::InvalidEfimovParams {
                a_star: f64::NAN,
                eta_star: self.eta_star,
            });
        }
        let momentum_ok = self.ka0 > 0.0;
        if !momentum_ok {
            return Err(Error::InvalidMomentum(self.ka0));
        }
        self.numerics.validate()
    }
}

/// One emitted scan row; true (eta* = 0) resonances become pole markers
/// rather than numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanRow {
    Point(CrossSectionPoint),
    Pole { a0_over_astar: f64, x: f64 },
}

impl ScanRow {
    pub fn a0_over_astar(&self) -> f64 {
        match self {
            ScanRow::Point(p) => p.a0_over_astar,
            ScanRow::Pole { a0_over_astar, .. } => *a0_over_astar,
        }
    }
}

fn grid(cfg: &ScanConfig) -> Vec<f64> {
    let n = cfg.points;
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            if cfg.log {
                cfg.a0_min * (cfg.a0_max / cfg.a0_min).powf(t)
            } else {
                cfg.a0_min + (cfg.a0_max - cfg.a0_min) * t
            }
        })
        .collect()
}

/// Evaluate the scan grid in ascending a0/a* order.
pub fn run_scan(up: &UniversalParams, cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    cfg.validate()?;
    grid(cfg)
        .into_iter()
        .map(|a0| match cross_section_point(up, a0, cfg.eta_star, cfg.ka0) {
            Ok(p) => Ok(ScanRow::Point(p)),
            Err(Error::EfimovPole { x }) => Ok(ScanRow::Pole {
                a0_over_astar: a0,
                x,
            }),
            Err(e) => Err(e),
        })
        .collect()
}

/// One validity criterion with its evaluated value.
#[derive(Debug, Clone, Serialize)]
pub struct ValidityCheck {
    pub name: String,
    pub value: f64,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidityReport {
    pub checks: Vec<ValidityCheck>,
}

impl ValidityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Evaluate the regime checks for a finished scan. Warnings only; a scan is
/// never rejected for leaving the validity window.
pub fn validity_report(cfg: &ScanConfig, rows: &[ScanRow]) -> ValidityReport {
    let mut checks = Vec::new();
    checks.push(ValidityCheck {
        name: "ka0".into(),
        value: cfg.ka0,
        pass: cfg.ka0 < 1.0,
        note: "s-wave atom-dimer scattering requires ka0 << 1".into(),
    });
    let bo = cfg.ka0 / cfg.mass_ratio;
    checks.push(ValidityCheck {
        name: "(m/M) ka0".into(),
        value: bo,
        pass: bo < 0.1,
        note: "Born-Oppenheimer separation of heavy and light motion".into(),
    });
    let k_im = rows
        .iter()
        .filter_map(|r| match r {
            ScanRow::Point(p) => Some(cfg.ka0 * p.a_plus.im.abs()),
            ScanRow::Pole { .. } => None,
        })
        .fold(0.0, f64::max);
    checks.push(ValidityCheck {
        name: "max k |Im a0+|".into(),
        value: k_im,
        pass: k_im < 0.1,
        note: "low-energy limit behind the closed cross-section forms".into(),
    });
    if let (Some(r0), Some(r_box)) = (cfg.r0, cfg.r_box) {
        checks.push(ValidityCheck {
            name: "r0 <= R0 << a0".into(),
            value: r_box,
            pass: r0 <= r_box && r_box < 0.1,
            note: format!("r0 = {r0} a0, R0 = {r_box} a0; short-range hierarchy"),
        });
    }
    ValidityReport { checks }
}

/// Fixed 12-significant-digit float rendering used by every CSV emitter.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

fn header_common(up: &UniversalParams, cfg_lines: &[String]) -> String {
    let mut s = String::new();
    for line in cfg_lines {
        s.push_str("# ");
        s.push_str(line);
        s.push('\n');
    }
    s.push_str(&format!(
        "# s0 = {}, alpha = {}, beta = {}, theta0 = {}\n",
        fmt12(up.s0),
        fmt12(up.alpha),
        fmt12(up.beta),
        fmt12(up.theta0)
    ));
    s
}

fn scan_header(up: &UniversalParams, cfg: &ScanConfig, report: &ValidityReport) -> String {
    let mut lines = vec!["efimov scan".to_string()];
    if let Some(p) = &cfg.preset {
        lines.push(format!("preset = {p}"));
    }
    lines.push(format!("mass_ratio = {}", fmt12(cfg.mass_ratio)));
    let mut s = header_common(up, &lines);
    s.push_str(&format!(
        "# eta_star = {}, ka0 = {}\n",
        fmt12(cfg.eta_star),
        fmt12(cfg.ka0)
    ));
    s.push_str(&format!(
        "# a0_over_astar: min = {}, max = {}, points = {}, spacing = {}\n",
        fmt12(cfg.a0_min),
        fmt12(cfg.a0_max),
        cfg.points,
        if cfg.log { "log" } else { "linear" }
    ));
    s.push_str(&format!(
        "# numerics: rho_min = {}, rho_max = {}, rel_tol = {}\n",
        fmt12(cfg.numerics.rho_min),
        fmt12(cfg.numerics.rho_max),
        fmt12(cfg.numerics.rel_tol)
    ));
    for c in &report.checks {
        s.push_str(&format!(
            "# validity: {} = {} [{}] {}\n",
            c.name,
            fmt12(c.value),
            if c.pass { "pass" } else { "warn" },
            c.note
        ));
    }
    s
}

/// Render a scan as CSV with a `#` header block. Pole rows carry `inf` in
/// the diverging columns and are flagged by a trailing comment line.
pub fn scan_csv(up: &UniversalParams, cfg: &ScanConfig, rows: &[ScanRow]) -> String {
    let report = validity_report(cfg, rows);
    let mut s = scan_header(up, cfg, &report);
    s.push_str("a0_over_astar,x,sigma_e,sigma_r,re_a_plus,im_a_plus\n");
    for row in rows {
        match row {
            ScanRow::Point(p) => {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt12(p.a0_over_astar),
                    fmt12(p.x),
                    fmt12(p.sigma_e),
                    fmt12(p.sigma_r),
                    fmt12(p.a_plus.re),
                    fmt12(p.a_plus.im)
                ));
            }
            ScanRow::Pole { a0_over_astar, x } => {
                s.push_str(&format!(
                    "{},{},inf,inf,inf,{}\n",
                    fmt12(*a0_over_astar),
                    fmt12(*x),
                    fmt12(0.0)
                ));
                s.push_str(&format!(
                    "# pole: true Efimov resonance at a0_over_astar = {}\n",
                    fmt12(*a0_over_astar)
                ));
            }
        }
    }
    s
}

#[derive(Serialize)]
struct JsonScanRow {
    a0_over_astar: f64,
    x: f64,
    sigma_e: Option<f64>,
    sigma_r: Option<f64>,
    re_a_plus: Option<f64>,
    im_a_plus: Option<f64>,
    pole: bool,
}

#[derive(Serialize)]
struct JsonScan<'a> {
    config: &'a ScanConfig,
    universal: &'a UniversalParams,
    validity: ValidityReport,
    rows: Vec<JsonScanRow>,
}

/// Render a scan as one JSON object with `config`, `validity` and `rows`.
pub fn scan_json(up: &UniversalParams, cfg: &ScanConfig, rows: &[ScanRow]) -> String {
    let report = validity_report(cfg, rows);
    let rows = rows
        .iter()
        .map(|row| match row {
            ScanRow::Point(p) => JsonScanRow {
                a0_over_astar: p.a0_over_astar,
                x: p.x,
                sigma_e: Some(p.sigma_e),
                sigma_r: Some(p.sigma_r),
                re_a_plus: Some(p.a_plus.re),
                im_a_plus: Some(p.a_plus.im),
                pole: false,
            },
            ScanRow::Pole { a0_over_astar, x } => JsonScanRow {
                a0_over_astar: *a0_over_astar,
                x: *x,
                sigma_e: None,
                sigma_r: None,
                re_a_plus: None,
                im_a_plus: None,
                pole: true,
            },
        })
        .collect();
    let doc = JsonScan {
        config: cfg,
        universal: up,
        validity: report,
        rows,
    };
    serde_json::to_string_pretty(&doc).expect("scan document serializes") + "\n"
}

/// Molecular-term grid over rho for both branches.
#[derive(Debug, Clone, Serialize)]
pub struct TermsConfig {
    pub mass_ratio: f64,
    pub preset: Option<String>,
    pub rho_min: f64,
    pub rho_max: f64,
    pub points: usize,
    pub log: bool,
}

impl TermsConfig {
    pub fn validate(&self) -> Result<()> {
        let grid_ok = self.rho_min > 0.0 && self.rho_max > self.rho_min;
        if !grid_ok {
            return Err(Error::InvalidNumerics(format!(
                "need 0 < rho-min < rho-max, got [{}, {}]",
                self.rho_min, self.rho_max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidNumerics(format!(
                "need at least 2 grid points, got {}",
                self.points
            )));
        }
        Ok(())
    }
}

/// Sample both branches over the rho grid; Minus rows appear only where the
/// antisymmetric level exists (rho >= 1).
pub fn run_terms(cfg: &TermsConfig) -> Result<Vec<TermPoint>> {
    cfg.validate()?;
    let mr = MassRatio::new(cfg.mass_ratio)?;
    let n = cfg.points;
    let mut rows = Vec::new();
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        let rho = if cfg.log {
            cfg.rho_min * (cfg.rho_max / cfg.rho_min).powf(t)
        } else {
            cfg.rho_min + (cfg.rho_max - cfg.rho_min) * t
        };
        rows.push(term_point(Branch::Plus, rho, mr)?);
        if rho >= 1.0 {
            rows.push(term_point(Branch::Minus, rho, mr)?);
        }
    }
    Ok(rows)
}

pub fn terms_csv(cfg: &TermsConfig, rows: &[TermPoint]) -> String {
    let mut s = String::new();
    s.push_str("# efimov terms\n");
    if let Some(p) = &cfg.preset {
        s.push_str(&format!("# preset = {p}\n"));
    }
    s.push_str(&format!("# mass_ratio = {}\n", fmt12(cfg.mass_ratio)));
    s.push_str(&format!(
        "# rho: min = {}, max = {}, points = {}, spacing = {}\n",
        fmt12(cfg.rho_min),
        fmt12(cfg.rho_max),
        cfg.points,
        if cfg.log { "log" } else { "linear" }
    ));
    s.push_str("rho,branch,g,kappa_a0,energy,v\n");
    for p in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt12(p.rho),
            p.branch.label(),
            fmt12(p.g),
            fmt12(p.kappa_a0),
            fmt12(p.energy),
            fmt12(p.v)
        ));
    }
    s
}

#[derive(Serialize)]
struct JsonTerms<'a> {
    config: &'a TermsConfig,
    rows: &'a [TermPoint],
}

pub fn terms_json(cfg: &TermsConfig, rows: &[TermPoint]) -> String {
    serde_json::to_string_pretty(&JsonTerms { config: cfg, rows }).expect("terms serialize") + "\n"
}

/// Universal parameters as the pretty JSON document `params` prints.
pub fn params_json(up: &UniversalParams) -> String {
    serde_json::to_string_pretty(up).expect("params serialize") + "\n"
}

/// key,value rendering of the same document for --format csv.
pub fn params_csv(up: &UniversalParams) -> String {
    let d = &up.diagnostics;
    let mut s = String::from("key,value\n");
    for (k, v) in [
        ("mass_ratio", up.mass_ratio),
        ("s0", up.s0),
        ("alpha1", up.alpha1),
        ("beta1", up.beta1),
        ("alpha2", up.alpha2),
        ("beta2", up.beta2),
        ("alpha", up.alpha),
        ("beta", up.beta),
        ("theta0", up.theta0),
        ("rho_min", d.numerics.rho_min),
        ("rho_max", d.numerics.rho_max),
        ("rel_tol", d.numerics.rel_tol),
        ("steps", d.steps as f64),
        ("max_wronskian_dev", d.max_wronskian_dev),
        ("alpha_drift", d.alpha_drift),
        ("beta_drift", d.beta_drift),
        ("theta0_drift", d.theta0_drift),
    ] {
        s.push_str(&format!("{k},{}\n", fmt12(v)));
    }
    s
}

/// Measured and predicted elastic/inelastic peak ratio.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RatioReport {
    pub mass_ratio: f64,
    pub ka0: f64,
    pub eta_star: f64,
    pub measured: f64,
    /// The quoted closed-form estimate 2.6 ka0/eta* for the Li-Rb mass ratio.
    pub predicted: f64,
    /// Leading small-parameter order, beta * ka0/eta*.
    pub leading_order: f64,
}

pub fn run_ratio(up: &UniversalParams, ka0: f64, eta_star: f64) -> Result<RatioReport> {
    let measured = efimov::peak_ratio(up, ka0, eta_star)?;
    Ok(RatioReport {
        mass_ratio: up.mass_ratio,
        ka0,
        eta_star,
        measured,
        predicted: 2.6 * ka0 / eta_star,
        leading_order: up.beta * ka0 / eta_star,
    })
}

pub fn ratio_text(r: &RatioReport) -> String {
    format!(
        "mass_ratio = {}\nka0 = {}, eta_star = {}\n\
         measured  sigma_e_max/sigma_r_max = {}\n\
         predicted 2.6 ka0/eta*            = {}\n\
         leading order beta ka0/eta*       = {}\n",
        fmt12(r.mass_ratio),
        fmt12(r.ka0),
        fmt12(r.eta_star),
        fmt12(r.measured),
        fmt12(r.predicted),
        fmt12(r.leading_order)
    )
}

/// Resolve a scan's sigma_r maxima: start from the grid rows, then refine
/// each interior local maximum on the continuous curve.
pub fn locate_loss_peaks(
    up: &UniversalParams,
    cfg: &ScanConfig,
    rows: &[ScanRow],
) -> Result<Vec<(f64, f64)>> {
    let pts: Vec<&CrossSectionPoint> = rows
        .iter()
        .filter_map(|r| match r {
            ScanRow::Point(p) => Some(p),
            ScanRow::Pole { .. } => None,
        })
        .collect();
    let mut peaks = Vec::new();
    for w in pts.windows(3) {
        let (l, c, r) = (w[0], w[1], w[2]);
        if c.sigma_r > l.sigma_r && c.sigma_r > r.sigma_r {
            let (x, sr) = sigma_inelastic_peak(up, cfg.eta_star, cfg.ka0, (l.x, r.x))?;
            peaks.push((x, sr));
        }
    }
    Ok(peaks)
}

/// Compute universal parameters for a scan configuration.
pub fn params_for(mass_ratio: f64, numerics: &RadialNumerics) -> Result<UniversalParams> {
    universal_params(MassRatio::new(mass_ratio)?, numerics)
}
