//! Physical parameter handling: lab-unit inputs, conversion to the internal
//! unit system (lengths in units of the nematic length, stresses in kPa,
//! time in seconds), and guards against resonant parameter combinations that
//! would put a zero in one of the closed-form denominators.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Parameters as reported by experiments.
///
/// Units: `mu` MPa·s, `zeta` kPa (non-positive by sign convention), `zeta_i`
/// kPa/μm, `xi` Pa·s/μm², `gamma` mN/m, `lc` μm. The serde names double as
/// the config-file schema; every key is required and unknown keys are
/// rejected, so a config either describes exactly one physical system or
/// fails loudly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabParams {
    #[serde(rename = "mu_MPa_s")]
    pub mu: f64,
    #[serde(rename = "zeta_kPa")]
    pub zeta: f64,
    #[serde(rename = "zeta_i_kPa_per_um")]
    pub zeta_i: f64,
    #[serde(rename = "xi_Pa_s_per_um2")]
    pub xi: f64,
    #[serde(rename = "gamma_mN_per_m")]
    pub gamma: f64,
    #[serde(rename = "Lc_um")]
    pub lc: f64,
}

/// Parameters in the internal system where the nematic length is 1.
///
/// `mu` and `zeta` keep their physical meaning (kPa·s, kPa); `zeta_i` absorbs
/// one factor of the nematic length (kPa), `xi` two (kPa·s), and `gamma`
/// loses one (kPa). `lc` (μm) is retained only to report lengths and
/// velocities back in lab units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mu: f64,
    pub zeta: f64,
    pub zeta_i: f64,
    pub xi: f64,
    pub gamma: f64,
    pub lc: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("sign constraint violated: {0}")]
    Sign(String),
    #[error("resonant parameter combination; vanishing denominator(s): {}", .0.join(", "))]
    Resonance(Vec<String>),
}

/// Convert lab-unit parameters into the internal system.
///
/// The viscosity moves from MPa·s to kPa·s, the friction from Pa·s/μm² to
/// kPa·s/μm² before absorbing the squared length, and the surface tension
/// uses 1 mN/m = 1 kPa·μm.
pub fn from_lab_units(lab: &LabParams) -> Result<ModelParams, ParamsError> {
    let bad = |name: &str, cond: bool| -> Result<(), ParamsError> {
        if cond {
            Err(ParamsError::Sign(name.to_string()))
        } else {
            Ok(())
        }
    };
    bad("mu must be > 0", !(lab.mu > 0.0))?;
    bad("xi must be > 0", !(lab.xi > 0.0))?;
    bad("gamma must be > 0", !(lab.gamma > 0.0))?;
    bad("Lc must be > 0", !(lab.lc > 0.0))?;
    bad("zeta must be <= 0", !(lab.zeta <= 0.0))?;
    bad("zeta_i must be >= 0", !(lab.zeta_i >= 0.0))?;
    Ok(ModelParams {
        mu: lab.mu * 1e3,
        zeta: lab.zeta,
        zeta_i: lab.zeta_i * lab.lc,
        xi: lab.xi / 1e3 * lab.lc * lab.lc,
        gamma: lab.gamma / lab.lc,
        lc: lab.lc,
    })
}

/// Relative threshold below which a denominator counts as resonant.
pub const EPS_RES_DEFAULT: f64 = 1e-10;

/// Parameters that passed the resonance screen (see [`validate`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedParams(ModelParams);

impl ValidatedParams {
    pub fn params(&self) -> &ModelParams {
        &self.0
    }
}

impl std::ops::Deref for ValidatedParams {
    type Target = ModelParams;
    fn deref(&self) -> &ModelParams {
        &self.0
    }
}

/// Screen every closed-form denominator that depends on (μ, ξ) alone.
///
/// Only exact zeros are mathematically singular, but a near-zero denominator
/// amplifies rounding through the coefficient tables, so anything within
/// `eps_res` (relative to the natural power of max(μ, ξ)) is rejected with
/// the full list of offenders.
pub fn validate(p: &ModelParams, eps_res: f64) -> Result<ValidatedParams, ParamsError> {
    let (mu, xi) = (p.mu, p.xi);
    let m = mu.max(xi);
    let s2mx = (2.0 * mu * xi).sqrt();
    // (label, value, scale by which "near zero" is judged)
    let dens: [(&str, f64, f64); 8] = [
        ("2mu - xi", 2.0 * mu - xi, m),
        ("mu - xi", mu - xi, m),
        ("8mu - xi", 8.0 * mu - xi, m),
        ("2mu^2 - 3mu xi + xi^2", 2.0 * mu * mu - 3.0 * mu * xi + xi * xi, m * m),
        ("32mu^2 - 12mu xi + xi^2", 32.0 * mu * mu - 12.0 * mu * xi + xi * xi, m * m),
        ("4mu + sqrt(2mu xi)", 4.0 * mu + s2mx, m),
        ("sqrt(2mu xi) + xi", s2mx + xi, m),
        ("sqrt(xi) + sqrt(2mu)", xi.sqrt() + (2.0 * mu).sqrt(), m.sqrt()),
    ];
    let offenders: Vec<String> = dens
        .iter()
        .filter(|(_, v, scale)| v.abs() <= eps_res * scale)
        .map(|(name, _, _)| name.to_string())
        .collect();
    if offenders.is_empty() {
        Ok(ValidatedParams(*p))
    } else {
        Err(ParamsError::Resonance(offenders))
    }
}
