//! Equilibrium and non-equilibrium phase transitions of dressed-state (DS)
//! polaritons in a driven two-level atomic gas with optical collisions inside
//! a cavity.
//!
//! The crate is organised around four layers:
//!
//! - [`frame`]: raw physical inputs ([`SystemParams`]) and the derived
//!   DS-frame quantities ([`DressedFrame`]) — mixing angles, effective
//!   couplings, collisional/radiative redistribution rates and the
//!   equilibrium/stationary population imbalances.
//! - [`equilibrium`]: the thermodynamic superradiant transition — gap
//!   equation, chemical potential, critical temperature, closed-form order
//!   parameter and Hopfield coefficients.
//! - [`dynamics`]: Maxwell-Bloch-like temporal dynamics for both DS
//!   transitions, with an adaptive embedded Runge-Kutta integrator and the
//!   cavity-free analytic relaxation of the population imbalance.
//! - [`steady`]: closed-form threshold, lasing frequency, self-consistent
//!   imbalance and steady-state order parameter for both DS transitions.
//!
//! All rates and frequencies are angular, in rad/ps; time is in ps and
//! temperature in kelvin. The single unit-system constant is
//! [`HBAR_OVER_KB`] (K·ps).

#![no_std]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod dynamics;
pub mod equilibrium;
mod error;
pub mod frame;
pub(crate) mod math;
mod ode;
pub mod steady;

pub use dynamics::{
    analytic_sz_relaxation, detect_lasing_onset, integrate, rho_rate, rhs_12, rhs_21, BlochDeriv,
    BlochState, IntegrateOptions, IntegratorStats, Trajectory, Transition,
};
pub use equilibrium::{
    critical_temperature, critical_temperature_exact, hopfield_coefficients, lambda_infinity,
    normal_branches, order_parameter_closed_form, solve_gap, EquilibriumSolution,
    PolaritonBranches,
};
pub use error::Error;
pub use frame::{
    build_dressed_frame, check_conditions, thermalization_time, ConditionFlags, DressedFrame,
    SystemParams,
};
pub use steady::{
    complex_branches, self_consistent_imbalance, steady_report, threshold,
    SelfConsistentImbalance, ThresholdReport,
};

/// ħ/k_B in K·ps; converts angular frequencies in rad/ps to kelvin.
pub const HBAR_OVER_KB: f64 = 7.6382;

/// 2π, for converting cyclic frequencies (THz) to angular ones (rad/ps).
pub const TWO_PI: f64 = core::f64::consts::TAU;
