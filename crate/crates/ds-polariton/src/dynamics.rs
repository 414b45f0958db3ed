//! Maxwell-Bloch-like temporal dynamics for both DS transitions.
//!
//! The raw equations rotate at the pump-frame frequencies δ_c (cavity) and
//! Ω_R (polarization), ~10 THz for the parameter sets of interest, while the
//! amplitudes evolve on GHz scales. By default the integrator therefore works
//! in a frame co-rotating at δ_c, which removes the fast phase entirely when
//! the cavity is tuned to the active Mollow sideband and leaves only the
//! residual detuning rotation otherwise; the transformation is undone on
//! output so recorded samples are lab-frame values.

use crate::frame::DressedFrame;
use crate::math;
use crate::ode;
use crate::Error;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Which DS transition the cavity is tuned to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transition {
    /// |1(N)⟩ → |2(N−1)⟩, coupling κ₁₂.
    OneTwo,
    /// |2(N)⟩ → |1(N−1)⟩, coupling κ₂₁.
    TwoOne,
}

/// Dynamical state: cavity amplitude, collective DS polarization, imbalance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    /// Complex normalized cavity amplitude λ.
    pub lambda: Complex64,
    /// Complex collective DS polarization S.
    pub s: Complex64,
    /// Real DS population imbalance S_z.
    pub s_z: f64,
    /// Time, ps.
    pub t: f64,
}

impl BlochState {
    /// The fig6 initial condition: Re λ = 0.05, S = 0, S_z = −1 at t = 0.
    pub fn seeded() -> Self {
        BlochState {
            lambda: Complex64::new(0.05, 0.0),
            s: Complex64::new(0.0, 0.0),
            s_z: -1.0,
            t: 0.0,
        }
    }
}

/// Time derivative of a [`BlochState`]; the imbalance derivative is a real
/// scalar by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDeriv {
    pub d_lambda: Complex64,
    pub d_s: Complex64,
    pub d_s_z: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegratorStats {
    pub steps: u64,
    pub rejected: u64,
}

/// Ordered samples of one integration run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub transition: Transition,
    pub frame: DressedFrame,
    pub samples: Vec<BlochState>,
    pub stats: IntegratorStats,
}

/// Integration controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    /// Final time, ps.
    pub t_end: f64,
    /// Number of output samples after the initial state.
    pub n_out: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Integrate in the δ_c co-rotating frame (default true).
    pub rotating_frame: bool,
}

impl IntegrateOptions {
    pub fn to(t_end: f64) -> Self {
        IntegrateOptions {
            t_end,
            n_out: 2000,
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            rotating_frame: true,
        }
    }
}

/// Right-hand side for the |1⟩ → |2⟩ transition (lab frame).
pub fn rhs_12(state: &BlochState, frame: &DressedFrame) -> BlochDeriv {
    let i = Complex64::i();
    let d_lambda = -(i * frame.delta_cav + frame.gamma_cav) * state.lambda
        - i * frame.kappa_12 * state.s;
    let d_s = -(i * frame.omega_rabi + frame.cap_gamma_1 + frame.gamma_1) * state.s
        + i * frame.kappa_12 * state.lambda * state.s_z;
    // 2iκ₁₂(Sλ* − S*λ) = 4κ₁₂ Im(S*λ), real by construction
    let d_s_z = -2.0 * frame.w * (state.s_z - frame.s_z_eq)
        - frame.gamma_plus * state.s_z
        + frame.gamma_minus
        + 4.0 * frame.kappa_12 * (state.s.conj() * state.lambda).im;
    BlochDeriv { d_lambda, d_s, d_s_z }
}

/// Right-hand side for the |2⟩ → |1⟩ transition (lab frame).
pub fn rhs_21(state: &BlochState, frame: &DressedFrame) -> BlochDeriv {
    let i = Complex64::i();
    let d_lambda = -(i * frame.delta_cav + frame.gamma_cav) * state.lambda
        + i * frame.kappa_21 * state.s.conj();
    let d_s = -(i * frame.omega_rabi + frame.cap_gamma_1 + frame.gamma_1) * state.s
        - i * frame.kappa_21 * state.lambda.conj() * state.s_z;
    // 2iκ₂₁(S*λ* − Sλ) = 4κ₂₁ Im(Sλ)
    let d_s_z = -(2.0 * frame.w + frame.gamma_plus) * (state.s_z - frame.s_z_st)
        + 4.0 * frame.kappa_21 * (state.s * state.lambda).im;
    BlochDeriv { d_lambda, d_s, d_s_z }
}

/// Imbalance relaxation without the cavity:
/// S_z(t) = S_z^(st) + (S_z(0) − S_z^(st)) e^{−(2w + Γ₊)t}.
pub fn analytic_sz_relaxation(t: f64, s_z0: f64, frame: &DressedFrame) -> f64 {
    let rate = 2.0 * frame.w + frame.gamma_plus;
    frame.s_z_st + (s_z0 - frame.s_z_st) * math::exp(-rate * t)
}

/// Polariton-density rate ρ̇ = −½(2w + Γ₊)(S_z − S_z^(st)) − 2Γ_c|λ|².
pub fn rho_rate(state: &BlochState, frame: &DressedFrame) -> f64 {
    -0.5 * (2.0 * frame.w + frame.gamma_plus) * (state.s_z - frame.s_z_st)
        - 2.0 * frame.gamma_cav * state.lambda.norm_sqr()
}

/// First time at which S_z reaches `threshold`, by linear interpolation
/// between bracketing samples; `None` if it is never reached.
pub fn detect_lasing_onset(traj: &Trajectory, threshold: f64) -> Option<f64> {
    let first = traj.samples.first()?;
    if first.s_z >= threshold {
        return Some(first.t);
    }
    for pair in traj.samples.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if (a.s_z - threshold) * (b.s_z - threshold) <= 0.0 && a.s_z != b.s_z {
            let frac = (threshold - a.s_z) / (b.s_z - a.s_z);
            return Some(a.t + frac * (b.t - a.t));
        }
    }
    None
}

fn pack(lambda: Complex64, s: Complex64, s_z: f64) -> ode::State {
    [lambda.re, lambda.im, s.re, s.im, s_z]
}

fn unpack(y: &ode::State) -> (Complex64, Complex64, f64) {
    (Complex64::new(y[0], y[1]), Complex64::new(y[2], y[3]), y[4])
}

/// Integrate the selected transition's equations from `initial` to `t_end`.
pub fn integrate(
    transition: Transition,
    initial: &BlochState,
    frame: &DressedFrame,
    options: &IntegrateOptions,
) -> Result<Trajectory, Error> {
    if !(options.t_end > initial.t) {
        return Err(Error::InvalidParameter {
            field: "t_end",
            reason: "must exceed the initial time",
        });
    }
    if !(options.rel_tol > 0.0 && options.abs_tol > 0.0) {
        return Err(Error::InvalidParameter {
            field: "tolerance",
            reason: "tolerances must be > 0",
        });
    }
    if options.n_out < 1 {
        return Err(Error::InvalidParameter { field: "n_out", reason: "must be >= 1" });
    }

    let output_times: Vec<f64> = (1..=options.n_out)
        .map(|k| {
            initial.t + (options.t_end - initial.t) * k as f64 / options.n_out as f64
        })
        .collect();

    let f = *frame;
    let i = Complex64::i();
    let dc = frame.delta_cav;

    // Rotated variables: u = λ e^{iδ_c t}; v = S e^{iδ_c t} (1→2) or
    // v = S e^{−iδ_c t} (2→1, which couples λ to S*).
    let (y0, rhs): (ode::State, alloc::boxed::Box<dyn FnMut(f64, &ode::State) -> ode::State>) =
        match (transition, options.rotating_frame) {
            (Transition::OneTwo, true) => {
                let rot0 = (i * dc * initial.t).exp();
                let y0 = pack(initial.lambda * rot0, initial.s * rot0, initial.s_z);
                let rhs = move |_t: f64, y: &ode::State| {
                    let (u, v, s_z) = unpack(y);
                    let du = -Complex64::new(f.gamma_cav, 0.0) * u - i * f.kappa_12 * v;
                    let dv = (i * f.delta_eff - (f.cap_gamma_1 + f.gamma_1)) * v
                        + i * f.kappa_12 * u * s_z;
                    let ds_z = -2.0 * f.w * (s_z - f.s_z_eq) - f.gamma_plus * s_z
                        + f.gamma_minus
                        + 4.0 * f.kappa_12 * (v.conj() * u).im;
                    pack(du, dv, ds_z)
                };
                (y0, alloc::boxed::Box::new(rhs))
            }
            (Transition::TwoOne, true) => {
                let y0 = pack(
                    initial.lambda * (i * dc * initial.t).exp(),
                    initial.s * (-i * dc * initial.t).exp(),
                    initial.s_z,
                );
                let rhs = move |_t: f64, y: &ode::State| {
                    let (u, v, s_z) = unpack(y);
                    let du = -Complex64::new(f.gamma_cav, 0.0) * u + i * f.kappa_21 * v.conj();
                    let dv = (-i * (f.omega_rabi + f.delta_cav)
                        - (f.cap_gamma_1 + f.gamma_1))
                        * v
                        - i * f.kappa_21 * u.conj() * s_z;
                    let ds_z = -(2.0 * f.w + f.gamma_plus) * (s_z - f.s_z_st)
                        + 4.0 * f.kappa_21 * (v * u).im;
                    pack(du, dv, ds_z)
                };
                (y0, alloc::boxed::Box::new(rhs))
            }
            (tr, false) => {
                let y0 = pack(initial.lambda, initial.s, initial.s_z);
                let rhs = move |t: f64, y: &ode::State| {
                    let (lambda, s, s_z) = unpack(y);
                    let state = BlochState { lambda, s, s_z, t };
                    let d = match tr {
                        Transition::OneTwo => rhs_12(&state, &f),
                        Transition::TwoOne => rhs_21(&state, &f),
                    };
                    pack(d.d_lambda, d.d_s, d.d_s_z)
                };
                (y0, alloc::boxed::Box::new(rhs))
            }
        };

    let (raw, stats) = ode::integrate(
        rhs,
        initial.t,
        y0,
        &output_times,
        options.rel_tol,
        options.abs_tol,
    )?;

    let mut samples = Vec::with_capacity(raw.len() + 1);
    samples.push(*initial);
    for (t, y) in raw {
        let (a, b, s_z) = unpack(&y);
        let (lambda, s) = if options.rotating_frame {
            match transition {
                Transition::OneTwo => {
                    let back = (-i * dc * t).exp();
                    (a * back, b * back)
                }
                Transition::TwoOne => (a * (-i * dc * t).exp(), b * (i * dc * t).exp()),
            }
        } else {
            (a, b)
        };
        samples.push(BlochState { lambda, s, s_z, t });
    }

    Ok(Trajectory {
        transition,
        frame: f,
        samples,
        stats: IntegratorStats { steps: stats.steps, rejected: stats.rejected },
    })
}
