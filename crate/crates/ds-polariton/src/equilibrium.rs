//! Thermodynamic superradiant-transition problem for the |1⟩ → |2⟩ DS
//! transition: gap equation, chemical potential, critical temperature,
//! closed-form order parameter, Hopfield coefficients and polariton branches.
//!
//! The gap and density equations are solved together: substituting the
//! density equation into the lower-branch chemical potential gives
//! `Ω_R,eff(λ) = sqrt(Δ² − 8κ₁₂²(ρ − λ² − 1/2))` with
//! `Ω̃_R = (−Δ + Ω_R,eff)/2` and `Ω̃_c = (Δ + Ω_R,eff)/2`, after which the
//! gap residual is a scalar function of λ alone and the density equation
//! holds identically. The nontrivial root is located by bracketed bisection
//! on λ ∈ [ε, 1]; when no sign change exists the normal state λ = 0 is
//! returned.

use crate::frame::DressedFrame;
use crate::math;
use crate::{Error, HBAR_OVER_KB};

const LAMBDA_EPS: f64 = 1e-8;
const MAX_BISECTION_STEPS: u32 = 200;

/// Gap-equation output at a fixed polariton density and temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumSolution {
    /// Order parameter λ ≥ 0 (normalized cavity amplitude).
    pub lambda: f64,
    /// Chemical potential μ, rad/ps.
    pub mu: f64,
    /// Ω̃_R = Ω_R − μ, rad/ps.
    pub omega_r_tilde: f64,
    /// Ω̃_c = δ_c − μ, rad/ps.
    pub omega_c_tilde: f64,
    /// Θ = sqrt(Ω̃_R² + 4κ₁₂²λ²), rad/ps.
    pub theta_big: f64,
    /// Polariton number density the system was solved at.
    pub rho: f64,
    pub converged: bool,
    pub iterations: u32,
    /// Final gap residual |Ω̃_c λ − λκ₁₂² tanh(ħΘ/2k_BT)/Θ|.
    pub residual: f64,
}

/// Upper/lower polariton branch frequencies and Hopfield amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonBranches {
    /// Upper branch frequency μ₁, rad/ps.
    pub mu_upper: f64,
    /// Lower branch frequency μ₂, rad/ps.
    pub mu_lower: f64,
    /// Excitonic Hopfield amplitude X.
    pub hopfield_x: f64,
    /// Photonic Hopfield amplitude C.
    pub hopfield_c: f64,
}

/// Hopfield amplitudes (X, C) of the upper polariton branch at effective
/// detuning Δ and coupling κ₁₂.
pub fn hopfield_coefficients(delta_eff: f64, kappa_12: f64) -> (f64, f64) {
    let x = math::sqrt(
        0.5 * (1.0
            + delta_eff / math::sqrt(4.0 * kappa_12 * kappa_12 + delta_eff * delta_eff)),
    );
    let c = math::sqrt(1.0 - x * x);
    (x, c)
}

/// Normal-state (λ = 0) polariton branch frequencies at density ρ.
pub fn normal_branches(rho: f64, frame: &DressedFrame) -> Result<PolaritonBranches, Error> {
    let d = frame.delta_eff;
    let k2 = frame.kappa_12 * frame.kappa_12;
    let radicand = d * d - 8.0 * k2 * (rho - 0.5);
    if radicand < 0.0 {
        return Err(Error::ComplexRadicand { context: "normal_branches", radicand });
    }
    let omega_r_eff = math::sqrt(radicand);
    let (x, c) = hopfield_coefficients(d, frame.kappa_12);
    Ok(PolaritonBranches {
        mu_upper: 0.5 * (frame.delta_cav + frame.omega_rabi + omega_r_eff),
        mu_lower: 0.5 * (frame.delta_cav + frame.omega_rabi - omega_r_eff),
        hopfield_x: x,
        hopfield_c: c,
    })
}

/// Critical temperature T_C = ħΔ / (2 k_B atanh(2ρ − 1)), kelvin.
///
/// Valid in the photon-like limit |Δ| ≫ κ₁₂; the sign of Δ must match the
/// sign of atanh(2ρ − 1) for a transition to exist.
pub fn critical_temperature(rho: f64, delta_eff: f64) -> Result<f64, Error> {
    check_rho(rho)?;
    if rho == 0.5 {
        return Err(Error::InvalidParameter {
            field: "rho",
            reason: "atanh(2*rho - 1) vanishes at rho = 1/2",
        });
    }
    let t_c = HBAR_OVER_KB * delta_eff / (2.0 * math::atanh(2.0 * rho - 1.0));
    if !(t_c > 0.0) {
        return Err(Error::InvalidParameter {
            field: "delta_eff",
            reason: "no transition on this side (T_C <= 0)",
        });
    }
    Ok(t_c)
}

/// The temperature at which the nontrivial root of the gap system
/// disappears, from the λ = 0 closure of the same equations the solver uses:
/// tanh(ħΩ̃_R/2k_B T_C) = 1 − 2ρ with Ω̃_R evaluated at λ = 0.
///
/// Reduces to [`critical_temperature`] when |Δ| ≫ κ₁₂.
pub fn critical_temperature_exact(rho: f64, frame: &DressedFrame) -> Result<f64, Error> {
    check_rho(rho)?;
    if rho == 0.5 {
        return Err(Error::InvalidParameter {
            field: "rho",
            reason: "atanh(1 - 2*rho) vanishes at rho = 1/2",
        });
    }
    let internals = gap_internals(0.0, rho, frame)?;
    let t_c = HBAR_OVER_KB * internals.omega_r_tilde / (2.0 * math::atanh(1.0 - 2.0 * rho));
    if !(t_c > 0.0) {
        return Err(Error::InvalidParameter {
            field: "delta_eff",
            reason: "no transition on this side (T_C <= 0)",
        });
    }
    Ok(t_c)
}

struct GapInternals {
    omega_r_tilde: f64,
    omega_c_tilde: f64,
    theta_big: f64,
}

fn gap_internals(lambda: f64, rho: f64, frame: &DressedFrame) -> Result<GapInternals, Error> {
    let d = frame.delta_eff;
    let k2 = frame.kappa_12 * frame.kappa_12;
    let radicand = d * d - 8.0 * k2 * (rho - lambda * lambda - 0.5);
    if radicand < 0.0 {
        return Err(Error::ComplexRadicand { context: "gap equation", radicand });
    }
    let omega_r_eff = math::sqrt(radicand);
    let omega_r_tilde = 0.5 * (-d + omega_r_eff);
    let omega_c_tilde = 0.5 * (d + omega_r_eff);
    let theta_big =
        math::sqrt(omega_r_tilde * omega_r_tilde + 4.0 * k2 * lambda * lambda);
    Ok(GapInternals { omega_r_tilde, omega_c_tilde, theta_big })
}

/// tanh(ħΘ/2k_BT)/Θ, finite at Θ → 0.
fn tanh_factor(theta: f64, temperature: f64) -> f64 {
    let a = HBAR_OVER_KB / (2.0 * temperature);
    if theta.abs() < 1e-14 {
        a
    } else {
        math::tanh(a * theta) / theta
    }
}

fn check_rho(rho: f64) -> Result<(), Error> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParameter { field: "rho", reason: "must be in (0, 1)" });
    }
    Ok(())
}

/// Solve the coupled gap/density system for the lower branch at density ρ
/// and temperature `temperature`; returns λ = 0 (normal state) when no
/// positive root exists.
pub fn solve_gap(
    rho: f64,
    frame: &DressedFrame,
    temperature: f64,
    tol: f64,
) -> Result<EquilibriumSolution, Error> {
    check_rho(rho)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter { field: "tol", reason: "must be > 0" });
    }
    if !(temperature > 0.0) {
        return Err(Error::InvalidParameter { field: "temperature", reason: "must be > 0" });
    }
    let k2 = frame.kappa_12 * frame.kappa_12;
    let residual_at = |lambda: f64| -> Result<f64, Error> {
        let g = gap_internals(lambda, rho, frame)?;
        Ok(g.omega_c_tilde - k2 * tanh_factor(g.theta_big, temperature))
    };
    solve_bracketed(rho, frame, tol, residual_at)
}

/// Zero-temperature order parameter: the gap system with tanh replaced by 1.
/// Approaches sqrt(ρ) in the photon-like limit |Δ| ≫ κ₁₂.
pub fn lambda_infinity(rho: f64, frame: &DressedFrame) -> Result<f64, Error> {
    check_rho(rho)?;
    let k2 = frame.kappa_12 * frame.kappa_12;
    let residual_at = |lambda: f64| -> Result<f64, Error> {
        let g = gap_internals(lambda, rho, frame)?;
        let factor = if g.theta_big.abs() < 1e-300 {
            // λ = 0 together with Ω̃_R = 0: the tanh→1 residual diverges;
            // any nonzero λ leaves this branch.
            f64::INFINITY
        } else {
            1.0 / g.theta_big
        };
        Ok(g.omega_c_tilde - k2 * factor)
    };
    let sol = solve_bracketed(rho, frame, 1e-12, residual_at)?;
    if !sol.converged {
        return Err(Error::NoConvergence {
            context: "lambda_infinity",
            residual: sol.residual,
        });
    }
    Ok(sol.lambda)
}

fn solve_bracketed<F>(
    rho: f64,
    frame: &DressedFrame,
    tol: f64,
    residual_at: F,
) -> Result<EquilibriumSolution, Error>
where
    F: Fn(f64) -> Result<f64, Error>,
{
    // The raw residual g = Ω̃_c − κ₁₂²tanh/Θ enters the gap equation as λ·g
    // and the density equation as Ω̃_R·g/2κ₁₂²; converge both below tol.
    let k2 = frame.kappa_12 * frame.kappa_12;
    let err_at = |lambda: f64, g: f64| -> f64 {
        let scale = if k2 > 0.0 {
            let internals = gap_internals(lambda, rho, frame)
                .expect("internals valid inside bracket");
            math::max(lambda, math::abs(internals.omega_r_tilde) / (2.0 * k2))
        } else {
            lambda
        };
        scale * math::abs(g)
    };
    let build = |lambda: f64, converged: bool, iterations: u32, residual: f64| {
        let g = gap_internals(lambda, rho, frame).expect("internals valid at solution");
        EquilibriumSolution {
            lambda,
            mu: frame.delta_cav - g.omega_c_tilde,
            omega_r_tilde: g.omega_r_tilde,
            omega_c_tilde: g.omega_c_tilde,
            theta_big: g.theta_big,
            rho,
            converged,
            iterations,
            residual,
        }
    };

    let mut lo = LAMBDA_EPS;
    let mut hi = 1.0;
    let g_lo = residual_at(lo)?;
    let g_hi = residual_at(hi)?;
    if g_lo >= 0.0 {
        // λ = 0 satisfies the gap equation identically: normal state.
        return Ok(build(0.0, true, 0, 0.0));
    }
    if g_hi < 0.0 {
        // Root above the physical bracket; report failure honestly.
        return Ok(build(1.0, false, 0, math::abs(g_hi)));
    }
    let mut iterations = 0;
    let mut mid = 0.5 * (lo + hi);
    let mut g_mid = residual_at(mid)?;
    while iterations < MAX_BISECTION_STEPS {
        iterations += 1;
        if g_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        g_mid = residual_at(mid)?;
        if err_at(mid, g_mid) <= tol || hi - lo < 1e-15 {
            return Ok(build(mid, true, iterations, err_at(mid, g_mid)));
        }
    }
    Ok(build(mid, false, iterations, err_at(mid, g_mid)))
}

/// Closed-form order parameter in the photon-like limit |Δ| ≫ κ₁₂:
/// λ = λ_∞ {1 − 1/[ρ(1 + (ρ⁻¹ − 1)^{ζ/ζ_c})]}^{1/2} with ζ = ħΔ/k_BT and
/// ζ_c = −ln(ρ⁻¹ − 1). Returns 0 in the normal state.
pub fn order_parameter_closed_form(
    rho: f64,
    delta_eff: f64,
    temperature: f64,
    lambda_inf: f64,
) -> Result<f64, Error> {
    check_rho(rho)?;
    if rho == 0.5 {
        return Err(Error::InvalidParameter {
            field: "rho",
            reason: "zeta_c vanishes at rho = 1/2",
        });
    }
    if !(temperature > 0.0) {
        return Err(Error::InvalidParameter { field: "temperature", reason: "must be > 0" });
    }
    let zeta = HBAR_OVER_KB * delta_eff / temperature;
    let zeta_c = -math::ln(1.0 / rho - 1.0);
    let braced = 1.0 - 1.0 / (rho * (1.0 + math::powf(1.0 / rho - 1.0, zeta / zeta_c)));
    if braced <= 0.0 {
        return Ok(0.0);
    }
    Ok(lambda_inf * math::sqrt(braced))
}
