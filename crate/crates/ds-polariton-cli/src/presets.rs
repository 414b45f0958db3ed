//! Named parameter sets regenerating the reference figure data. Each preset
//! is a complete [`RunConfig`]; they are the single source of the caption
//! values, and tests reference them instead of scattering literals.

use crate::config::{Axis, DeltaEffMode, RunConfig};
use ds_polariton::{Transition, TWO_PI};

fn thz(v: f64) -> f64 {
    TWO_PI * v
}

fn base() -> RunConfig {
    // shared caption values: Ω/2π = 1 THz, κ/2π = 0.62 THz,
    // Γ_c/2π = 100 MHz, Γ ≃ 37 MHz (angular), T = 530 K
    let mut c = RunConfig::default();
    c.params.omega = thz(1.0);
    c.params.kappa = thz(0.62);
    c.params.gamma_cav = thz(100.0e-6);
    c.params.gamma_spont = 0.037e-3;
    c.params.temperature = 530.0;
    c
}

/// Equilibrium superradiant transition vs cavity detuning Δ at ρ = 0.27,
/// δ/2π = −11 THz.
fn fig3() -> RunConfig {
    let mut c = base();
    c.preset = Some("fig3".to_string());
    c.params.delta = thz(-11.0);
    // large collisional broadening keeps the DSs thermalized; the gap
    // equation itself does not depend on γ
    c.params.gamma_coll = thz(30.0e-3);
    c.rho = 0.27;
    c.delta_eff_mode = DeltaEffMode::MinusOmegaR;
    let omega_r = thz((122.0f64).sqrt());
    c.sweep = crate::config::SweepSettings {
        axis: Axis::DeltaEff,
        min: -omega_r,
        max: thz(-10.5),
        count: 241,
        log: false,
    };
    c
}

/// Stationary imbalance S_z^(st) vs atom-light detuning δ.
fn fig4() -> RunConfig {
    let mut c = base();
    c.preset = Some("fig4".to_string());
    c.params.gamma_coll = thz(0.36e-3);
    c.sweep = crate::config::SweepSettings {
        axis: Axis::Delta,
        min: thz(-15.0),
        max: thz(15.0),
        count: 601,
        log: false,
    };
    c
}

/// Laser onset dynamics for the |1⟩ → |2⟩ transition at δ_c = Ω_R,
/// δ/2π = 11 THz, γ/2π = 0.36 GHz.
fn fig6() -> RunConfig {
    let mut c = base();
    c.preset = Some("fig6".to_string());
    c.params.delta = thz(11.0);
    c.params.gamma_coll = thz(0.36e-3);
    c.transition = Transition::OneTwo;
    c.delta_eff_mode = DeltaEffMode::Zero;
    c.dynamics.t_end = 600.0e3;
    c.dynamics.n_out = 2000;
    c.dynamics.initial = [0.05, 0.0, 0.0, 0.0, -1.0];
    c
}

/// Steady |λ| vs positive detuning for the |1⟩ → |2⟩ transition at Δ = 0.
fn fig7() -> RunConfig {
    let mut c = base();
    c.preset = Some("fig7".to_string());
    c.params.gamma_coll = thz(0.36e-3);
    c.transition = Transition::OneTwo;
    c.delta_eff_mode = DeltaEffMode::Zero;
    c.sweep = crate::config::SweepSettings {
        axis: Axis::Delta,
        min: thz(1.0),
        max: thz(15.0),
        count: 281,
        log: false,
    };
    c
}

/// Phase diagram over δ/Ω and κ/γ at fixed κ and Ω; margin 1 reproduces the
/// plotted condition boundaries (κ₁₂ = max{γ, Γ, Γ_c} etc.).
fn fig8() -> RunConfig {
    let mut c = base();
    c.preset = Some("fig8".to_string());
    c.margin = 1.0;
    c.grid = crate::config::GridSettings {
        x_min: -15.0,
        x_max: 15.0,
        nx: 200,
        y_min: 0.1,
        y_max: 1.0e4,
        ny: 200,
        log_y: true,
    };
    c
}

/// Steady |λ| vs detuning for the |2⟩ → |1⟩ transition at Δ = −2Ω_R.
fn fig9() -> RunConfig {
    let mut c = base();
    c.preset = Some("fig9".to_string());
    c.params.gamma_coll = thz(0.36e-3);
    c.transition = Transition::TwoOne;
    c.delta_eff_mode = DeltaEffMode::MinusTwoOmegaR;
    c.sweep = crate::config::SweepSettings {
        axis: Axis::Delta,
        min: thz(-15.0),
        max: thz(15.0),
        count: 601,
        log: false,
    };
    c
}

pub fn preset(name: &str) -> Option<RunConfig> {
    match name {
        "fig3" => Some(fig3()),
        "fig4" => Some(fig4()),
        "fig6" => Some(fig6()),
        "fig7" => Some(fig7()),
        "fig8" => Some(fig8()),
        "fig9" => Some(fig9()),
        _ => None,
    }
}

pub const PRESET_NAMES: [&str; 6] = ["fig3", "fig4", "fig6", "fig7", "fig8", "fig9"];

#[cfg(test)]
mod tests {
    use super::*;
    use ds_polariton::build_dressed_frame;

    #[test]
    fn fig6_caption_values() {
        let c = preset("fig6").unwrap();
        assert_eq!(c.params.omega, TWO_PI);
        assert_eq!(c.params.delta, TWO_PI * 11.0);
        assert_eq!(c.params.kappa, TWO_PI * 0.62);
        assert!((c.params.gamma_coll - TWO_PI * 0.36e-3).abs() < 1e-18);
        assert!((c.params.gamma_cav - TWO_PI * 100.0e-6).abs() < 1e-18);
        assert_eq!(c.dynamics.initial, [0.05, 0.0, 0.0, 0.0, -1.0]);
        // δ_c = Ω_R
        let p = c.resolved_params();
        let omega_r = (p.delta * p.delta + p.omega * p.omega).sqrt();
        assert_eq!(p.delta_cav, omega_r);
        let f = build_dressed_frame(&p).unwrap();
        assert!(f.delta_eff.abs() < 1e-12);
    }

    #[test]
    fn fig9_is_red_sideband() {
        let c = preset("fig9").unwrap();
        assert_eq!(c.transition, Transition::TwoOne);
        let p = c.resolved_params();
        let omega_r = (p.delta * p.delta + p.omega * p.omega).sqrt();
        let f = build_dressed_frame(&p).unwrap();
        assert!((f.delta_eff + 2.0 * omega_r).abs() < 1e-9);
    }

    #[test]
    fn fig8_grid_spans_both_reference_rows() {
        // the width comparison needs γ/2π = 0.36 GHz (κ/γ ≈ 1722) and 10×
        let c = preset("fig8").unwrap();
        assert!(c.grid.y_min < 172.2 && c.grid.y_max > 1722.2);
        assert!(c.grid.nx >= 200 && c.grid.ny >= 200);
        assert_eq!(c.margin, 1.0);
    }

    #[test]
    fn all_presets_build_valid_frames() {
        for name in PRESET_NAMES {
            let c = preset(name).unwrap();
            assert_eq!(c.preset.as_deref(), Some(name));
            build_dressed_frame(&c.resolved_params()).unwrap();
        }
    }
}
