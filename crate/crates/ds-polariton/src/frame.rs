//! Dressed-state frame construction.
//!
//! A strong pump at detuning `δ = ω_L − ω_at` dresses the bare two-level
//! atoms; the mixing angle `θ` fixes how each dressed level decomposes onto
//! the bare states, and every collisional/radiative rate of the reduced
//! dynamics is a fixed trigonometric combination of `θ` times one of the raw
//! rates. This module computes all of them once, up front.

use crate::math;
use crate::{Error, HBAR_OVER_KB, TWO_PI};

/// Raw physical inputs, all angular frequencies in rad/ps unless noted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Resonant Rabi frequency Ω.
    pub omega: f64,
    /// Atom-pump detuning δ = ω_L − ω_at (signed).
    pub delta: f64,
    /// Cooperative atom-cavity coupling κ.
    pub kappa: f64,
    /// Collisional broadening γ.
    pub gamma_coll: f64,
    /// Collisional phase shift η.
    pub eta_coll: f64,
    /// Spontaneous emission rate Γ.
    pub gamma_spont: f64,
    /// Cavity decay rate Γ_c.
    pub gamma_cav: f64,
    /// Cavity-pump detuning δ_c = ω_c − ω_L.
    pub delta_cav: f64,
    /// Gas temperature T, kelvin.
    pub temperature: f64,
}

impl SystemParams {
    pub fn validate(&self) -> Result<(), Error> {
        let fields = [
            ("omega", self.omega),
            ("delta", self.delta),
            ("kappa", self.kappa),
            ("gamma_coll", self.gamma_coll),
            ("eta_coll", self.eta_coll),
            ("gamma_spont", self.gamma_spont),
            ("gamma_cav", self.gamma_cav),
            ("delta_cav", self.delta_cav),
            ("temperature", self.temperature),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::NonFiniteInput { field: name });
            }
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParameter { field: "omega", reason: "must be > 0" });
        }
        if self.kappa < 0.0 {
            return Err(Error::InvalidParameter { field: "kappa", reason: "must be >= 0" });
        }
        if self.gamma_coll < 0.0 {
            return Err(Error::InvalidParameter { field: "gamma_coll", reason: "must be >= 0" });
        }
        if self.gamma_spont < 0.0 {
            return Err(Error::InvalidParameter { field: "gamma_spont", reason: "must be >= 0" });
        }
        if self.gamma_cav < 0.0 {
            return Err(Error::InvalidParameter { field: "gamma_cav", reason: "must be >= 0" });
        }
        if self.temperature <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "temperature",
                reason: "must be > 0",
            });
        }
        Ok(())
    }
}

/// All derived DS-frame quantities. Rates in rad/ps, imbalances dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedFrame {
    pub sin_theta: f64,
    pub cos_theta: f64,
    /// Generalized Rabi frequency Ω_R = sqrt(δ² + Ω²), with the collisional
    /// shift η₁ folded in when η ≠ 0.
    pub omega_rabi: f64,
    /// Effective coupling κ₁₂ = κ cos²θ for the |1⟩ → |2⟩ transition.
    pub kappa_12: f64,
    /// Effective coupling κ₂₁ = κ sin²θ for the |2⟩ → |1⟩ transition.
    pub kappa_21: f64,
    /// Collisional DS transfer rate w = γ sin²(2θ)/2.
    pub w: f64,
    /// Radiative redistribution Γ₊ = Γ(sin⁴θ + cos⁴θ).
    pub gamma_plus: f64,
    /// Radiative redistribution Γ₋ = Γ(sin⁴θ − cos⁴θ).
    pub gamma_minus: f64,
    /// Collisional dephasing γ₁ = γ(cos⁴θ + sin⁴θ).
    pub gamma_1: f64,
    /// Collisional shift η₁ = η cos 2θ.
    pub eta_1: f64,
    /// Radiative dephasing Γ₁ = Γ(2 + sin²2θ)/4.
    pub cap_gamma_1: f64,
    /// Equilibrium imbalance S_z^(eq) = −tanh(ħΩ_R / 2k_B T).
    pub s_z_eq: f64,
    /// Cavity-free stationary imbalance S_z^(st).
    pub s_z_st: f64,
    /// Effective detuning Δ = δ_c − Ω_R.
    pub delta_eff: f64,
    /// Cavity decay Γ_c, carried along for the dynamical equations.
    pub gamma_cav: f64,
    /// Cavity-pump detuning δ_c, carried along for the dynamical equations.
    pub delta_cav: f64,
    /// Temperature the frame was built at, kelvin.
    pub temperature: f64,
}

/// Build the dressed-state frame from raw physical parameters.
pub fn build_dressed_frame(params: &SystemParams) -> Result<DressedFrame, Error> {
    params.validate()?;

    let omega_rabi_bare = math::sqrt(params.delta * params.delta + params.omega * params.omega);
    let ratio = params.delta / omega_rabi_bare;
    let sin_theta = math::sqrt(0.5 * (1.0 + ratio));
    let cos_theta = math::sqrt(0.5 * (1.0 - ratio));

    let sin2 = sin_theta * sin_theta;
    let cos2 = cos_theta * cos_theta;
    let sin4 = sin2 * sin2;
    let cos4 = cos2 * cos2;
    // sin²(2θ) = 4 sin²θ cos²θ
    let sin_2theta_sq = 4.0 * sin2 * cos2;
    let cos_2theta = cos2 - sin2; // = −δ/Ω_R

    let eta_1 = params.eta_coll * cos_2theta;
    let omega_rabi = omega_rabi_bare + eta_1;

    let w = 0.5 * params.gamma_coll * sin_2theta_sq;
    let gamma_plus = params.gamma_spont * (sin4 + cos4);
    let gamma_minus = params.gamma_spont * (sin4 - cos4);
    let gamma_1 = params.gamma_coll * (cos4 + sin4);
    let cap_gamma_1 = 0.25 * params.gamma_spont * (2.0 + sin_2theta_sq);

    let s_z_eq = -math::tanh(HBAR_OVER_KB * omega_rabi / (2.0 * params.temperature));
    // With no relaxation channel at all there is no stationary value to relax
    // to; fall back to the equilibrium imbalance.
    let s_z_st = if 2.0 * w + gamma_plus > 0.0 {
        (2.0 * w * s_z_eq + gamma_minus) / (2.0 * w + gamma_plus)
    } else {
        s_z_eq
    };

    Ok(DressedFrame {
        sin_theta,
        cos_theta,
        omega_rabi,
        kappa_12: params.kappa * cos2,
        kappa_21: params.kappa * sin2,
        w,
        gamma_plus,
        gamma_minus,
        gamma_1,
        eta_1,
        cap_gamma_1,
        s_z_eq,
        s_z_st,
        delta_eff: params.delta_cav - omega_rabi,
        gamma_cav: params.gamma_cav,
        delta_cav: params.delta_cav,
        temperature: params.temperature,
    })
}

/// Time for optical collisions to thermalize the DS populations,
/// T_therm = 2πδ²/(γΩ²), in ps.
pub fn thermalization_time(params: &SystemParams) -> Result<f64, Error> {
    params.validate()?;
    if params.gamma_coll == 0.0 {
        return Err(Error::InvalidParameter {
            field: "gamma_coll",
            reason: "thermalization time undefined for gamma_coll = 0",
        });
    }
    Ok(TWO_PI * params.delta * params.delta
        / (params.gamma_coll * params.omega * params.omega))
}

/// Validity flags for the regime conditions, with "≫" read as
/// `b ≤ margin · a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionFlags {
    /// DS thermalization: Γ/γ ≤ margin·Ω²/δ² and Ω²/δ² ≤ margin.
    pub thermalized: bool,
    /// max{γ, Γ, Γ_c} ≤ margin·κ₁₂.
    pub strong_coupling_12: bool,
    /// max{γ, Γ, Γ_c} ≤ margin·κ₂₁.
    pub strong_coupling_21: bool,
    /// Threshold-less lasing on |1⟩ → |2⟩: sqrt(γΓ_c) ≤ margin·κ₁₂.
    pub thresholdless_12: bool,
}

/// Evaluate the thermalization, strong-coupling and threshold-less-lasing
/// conditions at the given margin factor.
pub fn check_conditions(
    frame: &DressedFrame,
    params: &SystemParams,
    margin: f64,
) -> Result<ConditionFlags, Error> {
    if !(margin > 0.0 && margin <= 1.0) {
        return Err(Error::InvalidParameter { field: "margin", reason: "must be in (0, 1]" });
    }
    let perturbative = params.omega * params.omega / (params.delta * params.delta);
    let thermalized = if params.gamma_coll > 0.0 {
        params.gamma_spont / params.gamma_coll <= margin * perturbative
            && perturbative <= margin
    } else {
        false
    };
    let worst_rate = math::max(
        params.gamma_coll,
        math::max(params.gamma_spont, params.gamma_cav),
    );
    Ok(ConditionFlags {
        thermalized,
        strong_coupling_12: worst_rate <= margin * frame.kappa_12,
        strong_coupling_21: worst_rate <= margin * frame.kappa_21,
        thresholdless_12: math::sqrt(params.gamma_coll * params.gamma_cav)
            <= margin * frame.kappa_12,
    })
}
