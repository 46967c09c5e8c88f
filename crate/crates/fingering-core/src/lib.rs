//! Linear-stability and weakly-nonlinear bifurcation analysis of a spreading
//! active-polar tissue front.
//!
//! The model couples a fixed exponential polarity profile to a Stokes-like
//! force balance with friction; the moving front is unstable to fingering
//! above a contractility threshold. This crate computes, in closed form with
//! independent numerical cross-checks:
//!
//! - the flat-front profile and speed ([`flat_front`]),
//! - the dispersion relation Λ(q) of transverse perturbations ([`dispersion`]),
//! - the critical fingering wavenumber/period ([`critical_mode`]),
//! - the order-α perturbation fields ([`mode_fields`]),
//! - the order-α² coefficient cascade ([`second_order`]),
//! - the bifurcation coefficient b deciding subcritical vs supercritical
//!   onset, via two independent routes ([`third_order`]),
//! - the asymptotic finger shape, speed, and leading eigenvalue ([`shape`]),
//! - finite-difference and analytic-residual oracles ([`oracle`]).
//!
//! Internal unit system: lengths in units of the nematic decay length,
//! stresses in kPa, time in seconds (see [`params`]).

pub mod critical_mode;
pub mod field;
pub mod dd;
pub mod dispersion;
pub mod flat_front;
pub mod mode_fields;
pub mod params;

pub use critical_mode::{
    check_hypotheses, find_critical, find_critical_default, CriticalMode, CriticalModeError,
    HypothesisReport, HypothesisViolation,
};
pub use dd::{Dd, Scalar};
pub use dispersion::{growth_rate, growth_rate_deriv, DispersionError, DispersionPoint};
pub use flat_front::{flat_speed, flat_velocity, FlatFront, FlatFrontError};
pub use mode_fields::{assemble_first_order, FirstOrder, ModeFieldsError, NotARootError, ResonanceError};
pub use params::{from_lab_units, validate, LabParams, ModelParams, ParamsError, ValidatedParams};
