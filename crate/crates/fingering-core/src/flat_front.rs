//! The flat-front traveling wave: polarity profile, velocity profile, front
//! speed, and the boundary y-derivatives of the velocity that seed the
//! weakly nonlinear expansion cascade.

use crate::dd::Scalar;
use crate::params::ModelParams;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FlatFrontError {
    #[error("profile evaluated at y = {y}, but the fluid occupies y <= 0")]
    Domain { y: f64 },
}

/// The four exponential terms `(coefficient, rate)` of the flat-front
/// velocity profile: V_y(y) = Σ cᵢ e^{rᵢ y}.
///
/// Written exactly as the closed form groups them — a contractile pair over
/// the denominator 8μ−ξ (rates 2 and √(ξ/2μ)) and a traction pair over
/// 2μ−ξ (rates √(ξ/2μ) and 1) — so each printed coefficient stays visible.
pub fn flat_velocity_terms<T: Scalar>(p: &ModelParams) -> [(T, T); 4] {
    let mu = T::from_f64(p.mu);
    let xi = T::from_f64(p.xi);
    let zeta = T::from_f64(p.zeta);
    let zeta_i = T::from_f64(p.zeta_i);
    let one = T::from_f64(1.0);
    let two = T::from_f64(2.0);
    let sq_xi = xi.sqrt();
    let sq_2mu = (mu.scale(2.0)).sqrt();
    let sh = sq_xi / sq_2mu; // √(ξ/2μ), the friction-screened decay rate
    let c_den = mu.scale(8.0) - xi;
    let t_den = mu.scale(2.0) - xi;
    [
        (zeta / c_den * two, two),
        (-(zeta / c_den) * sq_xi / sq_2mu, sh),
        (zeta_i / t_den * sq_2mu / sq_xi, sh),
        (-(zeta_i / t_den), one),
    ]
}

/// Front speed V⁽⁰⁾ = ζ/(4μ+√(2μξ)) + ζᵢ/(√(2μξ)+ξ).
pub fn flat_speed<T: Scalar>(p: &ModelParams) -> T {
    let mu = T::from_f64(p.mu);
    let xi = T::from_f64(p.xi);
    let s2mx = (mu.scale(2.0) * xi).sqrt();
    T::from_f64(p.zeta) / (mu.scale(4.0) + s2mx) + T::from_f64(p.zeta_i) / (s2mx + xi)
}

/// Flat-front polarity: P_y = e^y for y ≤ 0 (P_x ≡ 0 by symmetry).
pub fn polarity_profile(y: f64) -> Result<f64, FlatFrontError> {
    if y > 0.0 {
        return Err(FlatFrontError::Domain { y });
    }
    Ok(y.exp())
}

/// Flat-front velocity V_y(y) for y ≤ 0.
pub fn flat_velocity(y: f64, p: &ModelParams) -> Result<f64, FlatFrontError> {
    if y > 0.0 {
        return Err(FlatFrontError::Domain { y });
    }
    Ok(flat_velocity_terms::<f64>(p)
        .iter()
        .map(|(c, r)| c * (r * y).exp())
        .sum())
}

/// n-th y-derivative of the flat-front velocity at the boundary, by
/// term-wise analytic differentiation of the exponential sum.
///
/// The expansion cascade consumes n = 1..4; n = 0 returns the speed itself.
///
/// # Panics
/// If `n > 4` (the profile is smooth, but higher orders are outside the
/// contract and almost certainly a bug in the caller).
pub fn flat_velocity_deriv<T: Scalar>(n: u8, p: &ModelParams) -> T {
    assert!(n <= 4, "flat-front derivative order {n} out of contract (0..=4)");
    let mut acc = T::from_f64(0.0);
    for (c, r) in flat_velocity_terms::<T>(p) {
        let mut pw = T::from_f64(1.0);
        for _ in 0..n {
            pw = pw * r;
        }
        acc = acc + c * pw;
    }
    acc
}

/// Depth below which every mode in the problem has decayed by e^{-40}:
/// y_min = −40 / min(1, √(ξ/2μ)) — the slowest decay rate in the system.
pub fn decay_depth(p: &ModelParams) -> f64 {
    -40.0 / (p.xi / (2.0 * p.mu)).sqrt().min(1.0)
}

/// The flat front as a value: speed and the boundary derivatives n = 1..4.
#[derive(Debug, Clone, Copy)]
pub struct FlatFront {
    pub params: ModelParams,
    pub v0: f64,
    /// ∂ⁿ_y V_y(0) for n = 1, 2, 3, 4.
    pub deriv_cache: [f64; 4],
}

impl FlatFront {
    pub fn new(p: &ModelParams) -> Self {
        FlatFront {
            params: *p,
            v0: flat_speed::<f64>(p),
            deriv_cache: [
                flat_velocity_deriv::<f64>(1, p),
                flat_velocity_deriv::<f64>(2, p),
                flat_velocity_deriv::<f64>(3, p),
                flat_velocity_deriv::<f64>(4, p),
            ],
        }
    }

    pub fn polarity(&self, y: f64) -> Result<f64, FlatFrontError> {
        polarity_profile(y)
    }

    pub fn velocity(&self, y: f64) -> Result<f64, FlatFrontError> {
        flat_velocity(y, &self.params)
    }
}
