//! wasm-bindgen surface for the browser demo (www/index.html).
//!
//! A `Model` owns the universal constants for one mass ratio, so slider
//! moves on eta*/ka0 re-evaluate only the closed-form scan. Scan results
//! cross the JS boundary as flat Float64Array rows.

use wasm_bindgen::prelude::*;

use efimov::{universal_params, MassRatio, RadialNumerics, UniversalParams};

mod calc;

/// Universal constants for one mass ratio plus the scan evaluators.
#[wasm_bindgen]
pub struct Model {
    up: UniversalParams,
}

#[wasm_bindgen]
impl Model {
    /// Solve the radial problem for one heavy-to-light mass ratio.
    #[wasm_bindgen(constructor)]
    pub fn new(mass_ratio: f64) -> Result<Model, JsValue> {
        let mr = MassRatio::new(mass_ratio).map_err(err_js)?;
        let up = universal_params(mr, &RadialNumerics::default()).map_err(err_js)?;
        Ok(Model { up })
    }

    #[wasm_bindgen(getter)]
    pub fn mass_ratio(&self) -> f64 {
        self.up.mass_ratio
    }

    #[wasm_bindgen(getter)]
    pub fn s0(&self) -> f64 {
        self.up.s0
    }

    #[wasm_bindgen(getter)]
    pub fn alpha(&self) -> f64 {
        self.up.alpha
    }

    #[wasm_bindgen(getter)]
    pub fn beta(&self) -> f64 {
        self.up.beta
    }

    #[wasm_bindgen(getter)]
    pub fn theta0(&self) -> f64 {
        self.up.theta0
    }

    /// Resonance spacing exp(pi/s0) in a0/a*.
    #[wasm_bindgen(getter)]
    pub fn period(&self) -> f64 {
        (std::f64::consts::PI / self.up.s0).exp()
    }

    /// Log-spaced cross-section scan; flat rows
    /// [a0/a*, x, sigma_e, sigma_r] with NaN marking a true resonance pole.
    pub fn cross_sections(
        &self,
        eta_star: f64,
        ka0: f64,
        a0_min: f64,
        a0_max: f64,
        points: u32,
    ) -> Result<Vec<f64>, JsValue> {
        calc::scan_flat(&self.up, eta_star, ka0, a0_min, a0_max, points as usize).map_err(err_js)
    }

    /// Loss-peak positions a0/a* = exp(pi n/s0) inside [a0_min, a0_max].
    pub fn resonances(&self, a0_min: f64, a0_max: f64) -> Vec<f64> {
        calc::resonances_in(&self.up, a0_min, a0_max)
    }

    /// Elastic over inelastic peak height across one resonance period.
    pub fn peak_ratio(&self, ka0: f64, eta_star: f64) -> Result<f64, JsValue> {
        efimov::peak_ratio(&self.up, ka0, eta_star).map_err(err_js)
    }
}

/// Molecular terms over a rho grid; flat rows
/// [rho, v_plus, energy_plus, energy_minus], energy_minus NaN below rho = 1.
#[wasm_bindgen]
pub fn molecular_terms(
    mass_ratio: f64,
    rho_min: f64,
    rho_max: f64,
    points: u32,
) -> Result<Vec<f64>, JsValue> {
    calc::terms_flat(mass_ratio, rho_min, rho_max, points as usize).map_err(err_js)
}

/// Smallest mass ratio with a real channel exponent.
#[wasm_bindgen]
pub fn s0_threshold() -> f64 {
    efimov::s0_threshold()
}

fn err_js(e: efimov::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}
