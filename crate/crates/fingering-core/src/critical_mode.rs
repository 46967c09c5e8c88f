//! Locates the critical wavenumber q0 — the smallest positive root of the
//! growth rate — and checks the hypotheses the weakly-nonlinear expansion
//! rests on: no harmonic of q0 is itself near-neutral, and the growth rate
//! crosses zero transversally.

use serde::Serialize;
use thiserror::Error;

use crate::dispersion::{
    growth_rate_deriv, growth_rate_scalar, smallq_coefficient_corrected, DispersionError,
};
use crate::params::ModelParams;

/// Default upper scan bound for the root search (internal wavenumber units).
/// Large enough that even the surface-tension-dominated roots at weak
/// contractility (q0 ≈ 18 at ζ = 0 with the reference companions) are inside.
pub const Q_MAX_DEFAULT: f64 = 100.0;

/// Default scan-grid size.
pub const N_SCAN_DEFAULT: usize = 2000;

/// Default highest harmonic checked for accidental resonance.
pub const J_MAX_DEFAULT: u32 = 16;

/// Harmonic-resonance tolerance, relative to the growth-rate scale |ζ/2μ|.
pub const TOL_HARMONIC: f64 = 1e-6;

/// Transversality tolerance for |dΛ/dq| at the root, relative to |ζ/2μ|.
pub const TOL_SLOPE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CriticalModeError {
    #[error(
        "growth rate has no +/- crossing in ({q_min:.6e}, {q_max:.6e}] over {n_scan} scan points"
    )]
    NoRoot {
        q_min: f64,
        q_max: f64,
        n_scan: usize,
    },
    #[error(transparent)]
    Slope(#[from] DispersionError),
}

/// A hypothesis of the bifurcation analysis fails at this parameter point.
#[derive(Debug, Error)]
pub enum HypothesisViolation {
    #[error(
        "harmonic {j}*q0 is near-neutral: |growth rate| = {lambda_abs:.3e} < {threshold:.3e}"
    )]
    HarmonicResonance {
        j: u32,
        lambda_abs: f64,
        threshold: f64,
    },
    #[error("growth rate does not cross zero transversally at q0 = {q0:.12e}: slope = {slope:.3e}")]
    ZeroSlope { q0: f64, slope: f64 },
}

/// The neutral wavelength selected by the dispersion relation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalMode {
    /// Root of the growth rate, internal units (1/Lc).
    pub q0: f64,
    /// 2π/q0 in internal length units.
    pub period_internal: f64,
    /// Fingering period in micrometers.
    pub period_um: f64,
    /// dΛ/dq at q0 (internal units).
    pub slope: f64,
    /// Number of +→− brackets on the scan grid. More than one means further
    /// roots exist above q0 and the smallest was kept.
    pub n_brackets: usize,
}

impl CriticalMode {
    /// True when the scan saw additional sign changes beyond the reported root.
    pub fn multi_root(&self) -> bool {
        self.n_brackets > 1
    }
}

/// Descriptive record of the hypothesis checks (see [`check_hypotheses`]).
#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    /// (j, Λ(j·q0)) for j = 2..=j_max.
    pub harmonics: Vec<(u32, f64)>,
    /// Smallest |Λ(j·q0)| over the checked harmonics: the margin from the
    /// nearest resonance.
    pub min_harmonic_abs: f64,
    /// |dΛ/dq(q0)| above tolerance.
    pub transversal: bool,
    /// The small-q expansion coefficient is positive, i.e. long waves are
    /// unstable and a neutral crossing must exist. Uses the corrected
    /// small-q coefficient (the actual curvature of the growth-rate curve).
    pub smallq_positive: bool,
}

/// Find the smallest positive root of the growth rate.
///
/// Scans Λ on a log-uniform grid over (q_max/10⁶, q_max], brackets the first
/// + → − sign change, and refines by bisection to a relative width of 1e−14
/// in q (comfortably below the 1e−12 contract, so the result is independent
/// of the scan density). When several brackets exist the smallest root is
/// returned and the count is recorded in `n_brackets` — downstream consumers
/// surface that as a warning rather than silently treating the root as
/// canonical.
pub fn find_critical(
    p: &ModelParams,
    q_max: f64,
    n_scan: usize,
) -> Result<CriticalMode, CriticalModeError> {
    assert!(q_max > 0.0, "q_max must be positive, got {q_max}");
    assert!(n_scan >= 100, "n_scan must be at least 100, got {n_scan}");
    let q_min = q_max / 1e6;
    let log_span = (q_max / q_min).ln();
    let grid = |i: usize| q_min * (log_span * i as f64 / (n_scan - 1) as f64).exp();

    let lam: Vec<f64> = (0..n_scan).map(|i| growth_rate_scalar(grid(i), p)).collect();
    let brackets: Vec<usize> = (0..n_scan - 1)
        .filter(|&i| lam[i] > 0.0 && lam[i + 1] <= 0.0)
        .collect();
    let Some(&first) = brackets.first() else {
        return Err(CriticalModeError::NoRoot {
            q_min,
            q_max,
            n_scan,
        });
    };

    let (mut a, mut b) = (grid(first), grid(first + 1));
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if growth_rate_scalar(m, p) > 0.0 {
            a = m;
        } else {
            b = m;
        }
        if (b - a) <= 1e-14 * m {
            break;
        }
    }
    let q0 = 0.5 * (a + b);
    let slope = growth_rate_deriv(q0, p)?;
    let period_internal = std::f64::consts::TAU / q0;
    Ok(CriticalMode {
        q0,
        period_internal,
        period_um: period_internal * p.lc,
        slope,
        n_brackets: brackets.len(),
    })
}

/// [`find_critical`] with the default scan bounds.
pub fn find_critical_default(p: &ModelParams) -> Result<CriticalMode, CriticalModeError> {
    find_critical(p, Q_MAX_DEFAULT, N_SCAN_DEFAULT)
}

/// Check the expansion hypotheses at a located root.
///
/// Evaluates Λ(j·q0) for j = 2..=j_max and flags any harmonic whose growth
/// rate sits within `TOL_HARMONIC·|ζ/2μ|` of neutral, then checks that the
/// slope at q0 clears the transversality tolerance on the same scale. The
/// large-q decay law makes Λ(j·q0) increasingly negative for large j, so the
/// default j_max = 16 suffices once every checked harmonic is strictly
/// negative. The caller is responsible for `cm` being a genuine root.
pub fn check_hypotheses(
    cm: &CriticalMode,
    p: &ModelParams,
    j_max: u32,
) -> Result<HypothesisReport, HypothesisViolation> {
    let scale = (p.zeta / (2.0 * p.mu)).abs();
    let threshold = TOL_HARMONIC * scale;

    let mut harmonics = Vec::with_capacity(j_max.saturating_sub(1) as usize);
    let mut min_harmonic_abs = f64::INFINITY;
    for j in 2..=j_max {
        let lam = growth_rate_scalar(f64::from(j) * cm.q0, p);
        if lam.abs() < threshold {
            return Err(HypothesisViolation::HarmonicResonance {
                j,
                lambda_abs: lam.abs(),
                threshold,
            });
        }
        min_harmonic_abs = min_harmonic_abs.min(lam.abs());
        harmonics.push((j, lam));
    }

    if !(cm.slope.abs() > TOL_SLOPE * scale) {
        return Err(HypothesisViolation::ZeroSlope {
            q0: cm.q0,
            slope: cm.slope,
        });
    }

    Ok(HypothesisReport {
        harmonics,
        min_harmonic_abs,
        transversal: true,
        smallq_positive: smallq_coefficient_corrected(p) > 0.0,
    })
}
