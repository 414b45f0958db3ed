//! Parameter sweeps and phase-diagram classification over the DS-polariton
//! model. All scans are embarrassingly parallel maps over precomputed axis
//! grids; output ordering follows the grid, so results are deterministic.

use crate::config::{Axis, DeltaEffMode, RunConfig};
use ds_polariton::{
    build_dressed_frame, check_conditions, critical_temperature, critical_temperature_exact,
    solve_gap, steady_report, Error, SystemParams, Transition, HBAR_OVER_KB,
};
use rayon::prelude::*;

/// Evenly spaced axis values, linear or logarithmic.
pub fn axis_values(min: f64, max: f64, count: usize, log: bool) -> Vec<f64> {
    assert!(count >= 2, "sweep needs at least two points");
    let (a, b) = if log { (min.ln(), max.ln()) } else { (min, max) };
    (0..count)
        .map(|i| {
            let v = a + (b - a) * i as f64 / (count - 1) as f64;
            if log {
                v.exp()
            } else {
                v
            }
        })
        .collect()
}

fn params_at(cfg: &RunConfig, axis: Axis, value: f64) -> (SystemParams, f64) {
    let mut c = cfg.clone();
    let mut temperature = c.params.temperature;
    match axis {
        Axis::Delta => c.params.delta = value,
        Axis::GammaColl => c.params.gamma_coll = value,
        Axis::Temperature => {
            c.params.temperature = value;
            temperature = value;
        }
        Axis::KappaOverGamma => c.params.gamma_coll = c.params.kappa / value,
        Axis::DeltaEff => {
            // Δ is measured from Ω_R, so pin δ_c = Δ + Ω_R explicitly
            let omega_r =
                (c.params.delta * c.params.delta + c.params.omega * c.params.omega).sqrt();
            c.params.delta_cav = value + omega_r;
            c.delta_eff_mode = DeltaEffMode::Explicit;
        }
    }
    (c.resolved_params(), temperature)
}

/// fig4 sweep: stationary imbalance vs δ, with the full-equilibrium companion
/// curve −tanh(ħΩ_R/2k_BT).
pub fn sweep_stationary_imbalance(cfg: &RunConfig) -> Result<Vec<[f64; 3]>, Error> {
    let values = axis_values(cfg.sweep.min, cfg.sweep.max, cfg.sweep.count, cfg.sweep.log);
    values
        .par_iter()
        .map(|&delta| {
            let (p, _) = params_at(cfg, Axis::Delta, delta);
            let f = build_dressed_frame(&p)?;
            let equilibrium =
                -(HBAR_OVER_KB * f.omega_rabi / (2.0 * p.temperature)).tanh();
            Ok([delta, f.s_z_st, equilibrium])
        })
        .collect()
}

/// fig7/fig9 sweeps: steady order parameter vs the configured axis for the
/// configured transition. Columns: axis value, |λ|, S_z^(st), S_z^(thr).
pub fn sweep_order_parameter(cfg: &RunConfig) -> Result<Vec<[f64; 4]>, Error> {
    let values = axis_values(cfg.sweep.min, cfg.sweep.max, cfg.sweep.count, cfg.sweep.log);
    values
        .par_iter()
        .map(|&v| {
            let (p, _) = params_at(cfg, cfg.sweep.axis, v);
            let f = build_dressed_frame(&p)?;
            let r = steady_report(cfg.transition, &f)?;
            Ok([v, r.lambda_sq.sqrt(), r.s_z_st, r.s_z_thr])
        })
        .collect()
}

/// fig3 sweep: equilibrium order parameter and critical temperature vs Δ.
/// Columns: Δ, λ, T_C (photon-like closed form), T_C (exact λ = 0 closure).
pub fn sweep_equilibrium(cfg: &RunConfig) -> Result<Vec<[f64; 4]>, Error> {
    let values = axis_values(cfg.sweep.min, cfg.sweep.max, cfg.sweep.count, cfg.sweep.log);
    values
        .par_iter()
        .map(|&delta_eff| {
            let (p, temperature) = params_at(cfg, Axis::DeltaEff, delta_eff);
            let f = build_dressed_frame(&p)?;
            let sol = solve_gap(cfg.rho, &f, temperature, cfg.tol)?;
            if !sol.converged {
                return Err(Error::NoConvergence {
                    context: "equilibrium sweep",
                    residual: sol.residual,
                });
            }
            // 0 marks "no transition on this side"
            let t_c = critical_temperature(cfg.rho, delta_eff).unwrap_or(0.0);
            let t_c_exact = critical_temperature_exact(cfg.rho, &f).unwrap_or(0.0);
            Ok([delta_eff, sol.lambda, t_c, t_c_exact])
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    SuperradiantEquilibrium,
    Lasing12,
    Lasing21,
    Normal,
}

impl Phase {
    pub fn glyph(self) -> char {
        match self {
            Phase::SuperradiantEquilibrium => 'S',
            Phase::Lasing12 => '1',
            Phase::Lasing21 => '2',
            Phase::Normal => 'N',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCell {
    pub delta_over_omega: f64,
    pub kappa_over_gamma: f64,
    pub classification: Phase,
    pub thermalized: bool,
    pub strong_12: bool,
    pub strong_21: bool,
    pub lambda_12: f64,
    pub lambda_21: f64,
}

/// Classify one (δ/Ω, κ/γ) cell. Each transition is evaluated at its most
/// favorable cavity tuning (Δ = 0 for 1→2, Δ = −2Ω_R for 2→1); when regions
/// overlap, equilibrium wins, then the larger order parameter.
pub fn classify_cell(cfg: &RunConfig, delta_over_omega: f64, kappa_over_gamma: f64) -> Result<PhaseCell, Error> {
    let mut p = cfg.params;
    p.delta = delta_over_omega * p.omega;
    p.gamma_coll = p.kappa / kappa_over_gamma;
    let omega_r = (p.delta * p.delta + p.omega * p.omega).sqrt();

    let mut p12 = p;
    p12.delta_cav = omega_r; // Δ = 0
    let f12 = build_dressed_frame(&p12)?;
    let r12 = steady_report(Transition::OneTwo, &f12)?;
    let flags = check_conditions(&f12, &p12, cfg.margin)?;

    let mut p21 = p;
    p21.delta_cav = -omega_r; // Δ = −2Ω_R
    let f21 = build_dressed_frame(&p21)?;
    let r21 = steady_report(Transition::TwoOne, &f21)?;

    let lambda_12 = r12.lambda_sq.sqrt();
    let lambda_21 = r21.lambda_sq.sqrt();
    let classification = if flags.thermalized && flags.strong_coupling_12 && p.delta < 0.0 {
        Phase::SuperradiantEquilibrium
    } else if lambda_12 > 0.0 || lambda_21 > 0.0 {
        if lambda_12 >= lambda_21 {
            Phase::Lasing12
        } else {
            Phase::Lasing21
        }
    } else {
        Phase::Normal
    };

    Ok(PhaseCell {
        delta_over_omega,
        kappa_over_gamma,
        classification,
        thermalized: flags.thermalized,
        strong_12: flags.strong_coupling_12,
        strong_21: flags.strong_coupling_21,
        lambda_12,
        lambda_21,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    /// Row-major, rows ordered by ascending κ/γ, columns by ascending δ/Ω.
    pub cells: Vec<PhaseCell>,
    pub nx: usize,
    pub ny: usize,
}

impl PhaseDiagram {
    /// One character per cell; highest κ/γ row first so the text reads like
    /// the plotted diagram.
    pub fn matrix(&self) -> String {
        let mut s = String::with_capacity((self.nx + 1) * self.ny);
        for row in (0..self.ny).rev() {
            for col in 0..self.nx {
                s.push(self.cells[row * self.nx + col].classification.glyph());
            }
            s.push('\n');
        }
        s
    }
}

pub fn phase_diagram(cfg: &RunConfig) -> Result<PhaseDiagram, Error> {
    let g = &cfg.grid;
    let xs = axis_values(g.x_min, g.x_max, g.nx, false);
    let ys = axis_values(g.y_min, g.y_max, g.ny, g.log_y);
    let cells: Result<Vec<PhaseCell>, Error> = (0..g.nx * g.ny)
        .into_par_iter()
        .map(|idx| classify_cell(cfg, xs[idx % g.nx], ys[idx / g.nx]))
        .collect();
    Ok(PhaseDiagram { cells: cells?, nx: g.nx, ny: g.ny })
}

/// Width (in δ/Ω) of the Lasing12 classification along one κ/γ row.
pub fn lasing12_width(cfg: &RunConfig, kappa_over_gamma: f64) -> Result<f64, Error> {
    let g = &cfg.grid;
    let xs = axis_values(g.x_min, g.x_max, g.nx, false);
    let dx = (g.x_max - g.x_min) / (g.nx - 1) as f64;
    let row: Result<Vec<PhaseCell>, Error> = xs
        .par_iter()
        .map(|&x| classify_cell(cfg, x, kappa_over_gamma))
        .collect();
    let n = row?
        .iter()
        .filter(|c| c.classification == Phase::Lasing12)
        .count();
    Ok(n as f64 * dx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;
    use ds_polariton::TWO_PI;

    #[test]
    fn axis_values_endpoints() {
        let lin = axis_values(-1.0, 1.0, 5, false);
        assert_eq!(lin, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        let log = axis_values(1.0, 100.0, 3, true);
        assert!((log[1] - 10.0).abs() < 1e-12);
        assert_eq!(log[0], 1.0);
        assert!((log[2] - 100.0).abs() < 1e-10);
    }

    #[test]
    fn fig4_limits() {
        // γ large: S_z^(st) → equilibrium value ≈ −0.462 at δ/2π = −11 THz
        let mut c = preset("fig4").unwrap();
        c.params.gamma_coll = TWO_PI * 10.0;
        c.sweep.min = -TWO_PI * 11.0;
        c.sweep.max = TWO_PI * 11.0;
        c.sweep.count = 2;
        let rows = sweep_stationary_imbalance(&c).unwrap();
        assert!((rows[0][1] - (-0.4622)).abs() < 1e-3);
        assert!((rows[0][1] - rows[0][2]).abs() < 1e-3);
        // γ → 0 at δ > 0: radiative redistribution drives S_z^(st) → +1
        c.params.gamma_coll = TWO_PI * 1e-12;
        let rows = sweep_stationary_imbalance(&c).unwrap();
        assert!(rows[1][1] > 0.99);
    }

    #[test]
    fn fig4_resonant_point() {
        // δ = 0: Γ₋ = 0, so S_z^(st) = 2w S_z^(eq)/(2w + Γ₊)
        let mut c = preset("fig4").unwrap();
        c.sweep.min = 0.0;
        c.sweep.max = TWO_PI;
        c.sweep.count = 2;
        let rows = sweep_stationary_imbalance(&c).unwrap();
        let p = c.params;
        let f = ds_polariton::build_dressed_frame(&SystemParams { delta: 0.0, ..p }).unwrap();
        let expect = 2.0 * f.w * f.s_z_eq / (2.0 * f.w + f.gamma_plus);
        assert!((rows[0][1] - expect).abs() < 1e-12);
    }

    #[test]
    fn fig7_order_parameter_at_11thz() {
        let mut c = preset("fig7").unwrap();
        c.sweep.min = TWO_PI * 11.0;
        c.sweep.max = TWO_PI * 12.0;
        c.sweep.count = 2;
        let rows = sweep_order_parameter(&c).unwrap();
        assert!((rows[0][1] - 0.104).abs() < 2e-3);
    }

    #[test]
    fn fig7_tail_vanishes() {
        let mut c = preset("fig7").unwrap();
        c.sweep.min = TWO_PI * 2.0;
        c.sweep.max = TWO_PI * 200.0;
        c.sweep.count = 50;
        let rows = sweep_order_parameter(&c).unwrap();
        let last = rows.last().unwrap();
        assert!(last[1] < 0.02);
        // monotone decay over the far tail
        let tail: Vec<f64> = rows.iter().skip(30).map(|r| r[1]).collect();
        for w in tail.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn fig9_gamma_enhances_order_parameter() {
        let mut c = preset("fig9").unwrap();
        c.sweep.min = -TWO_PI * 11.0;
        c.sweep.max = -TWO_PI * 2.0;
        c.sweep.count = 4;
        let low = sweep_order_parameter(&c).unwrap();
        c.params.gamma_coll *= 4.0;
        let high = sweep_order_parameter(&c).unwrap();
        for (a, b) in low.iter().zip(high.iter()) {
            assert!(b[1] >= a[1], "gamma increase lowered |lambda| at {}", a[0]);
        }
    }

    #[test]
    fn fig3_boundary_consistency() {
        let c = preset("fig3").unwrap();
        let rows = sweep_equilibrium(&c).unwrap();
        let t = c.params.temperature;
        for r in &rows {
            assert_eq!(r[1] > 0.0, r[3] > t, "mismatch at delta_eff = {}", r[0]);
        }
        // the boundary sits near Δ ≈ −2π·10.98 THz
        let boundary = rows
            .windows(2)
            .find(|w| (w[0][1] > 0.0) != (w[1][1] > 0.0))
            .expect("transition inside scan range");
        let delta_thz = boundary[0][0] / TWO_PI;
        assert!((delta_thz - (-10.98)).abs() < 0.05, "boundary at {delta_thz} THz");
    }

    #[test]
    fn phase_cells_satisfy_invariants() {
        let mut c = preset("fig8").unwrap();
        c.grid.nx = 40;
        c.grid.ny = 40;
        let d = phase_diagram(&c).unwrap();
        assert_eq!(d.cells.len(), 1600);
        for cell in &d.cells {
            match cell.classification {
                Phase::SuperradiantEquilibrium => {
                    assert!(cell.thermalized && cell.strong_12);
                    assert!(cell.delta_over_omega < 0.0);
                }
                Phase::Lasing12 => assert!(cell.lambda_12 > 0.0),
                Phase::Lasing21 => assert!(cell.lambda_21 > 0.0),
                Phase::Normal => {
                    assert_eq!(cell.lambda_12, 0.0);
                    assert_eq!(cell.lambda_21, 0.0);
                }
            }
        }
        let m = d.matrix();
        assert_eq!(m.lines().count(), 40);
        assert!(m.lines().all(|l| l.len() == 40));
    }

    #[test]
    fn phase_diagram_is_deterministic() {
        let mut c = preset("fig8").unwrap();
        c.grid.nx = 30;
        c.grid.ny = 30;
        let a = phase_diagram(&c).unwrap();
        let b = phase_diagram(&c).unwrap();
        assert_eq!(a, b);
    }
}
