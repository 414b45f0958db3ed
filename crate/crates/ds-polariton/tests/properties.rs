use ds_polariton::{
    build_dressed_frame, integrate, steady_report, threshold, BlochState, DressedFrame,
    IntegrateOptions, SystemParams, Transition, TWO_PI,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn thz(v: f64) -> f64 {
    TWO_PI * v
}

fn arb_params() -> impl Strategy<Value = SystemParams> {
    (
        0.1f64..4.0,     // Ω/2π THz
        -15.0f64..15.0,  // δ/2π THz
        0.05f64..2.0,    // κ/2π THz
        1e-5f64..0.05,   // γ/2π THz
        1e-6f64..1e-3,   // Γ_c/2π THz
        1e-6f64..1e-3,   // Γ (angular, rad/ps)
        -20.0f64..20.0,  // δ_c/2π THz
        100.0f64..900.0, // T K
    )
        .prop_map(
            |(omega, delta, kappa, gamma_coll, gamma_cav, gamma_spont, delta_cav, temperature)| {
                SystemParams {
                    omega: thz(omega),
                    delta: thz(delta),
                    kappa: thz(kappa),
                    gamma_coll: thz(gamma_coll),
                    eta_coll: 0.0,
                    gamma_spont,
                    gamma_cav: thz(gamma_cav),
                    delta_cav: thz(delta_cav),
                    temperature,
                }
            },
        )
}

fn mirrored(p: &SystemParams) -> SystemParams {
    SystemParams { delta: -p.delta, ..*p }
}

proptest! {
    #[test]
    fn coupling_split_is_exact(p in arb_params()) {
        let f = build_dressed_frame(&p).unwrap();
        prop_assert!((f.kappa_12 + f.kappa_21 - p.kappa).abs() <= 1e-12 * p.kappa.max(1.0));
    }

    #[test]
    fn mixing_angle_normalized(p in arb_params()) {
        let f = build_dressed_frame(&p).unwrap();
        let s2 = f.sin_theta * f.sin_theta;
        let c2 = f.cos_theta * f.cos_theta;
        prop_assert!((s2 + c2 - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn delta_mirror_symmetry(p in arb_params()) {
        let f = build_dressed_frame(&p).unwrap();
        let g = build_dressed_frame(&mirrored(&p)).unwrap();
        // δ → −δ swaps the DS labels: sinθ ↔ cosθ, κ₁₂ ↔ κ₂₁, Γ₋ → −Γ₋,
        // while Ω_R and the symmetric rates are untouched
        prop_assert!((f.sin_theta - g.cos_theta).abs() <= 1e-12);
        prop_assert!((f.kappa_12 - g.kappa_21).abs() <= 1e-12 * p.kappa.max(1.0));
        prop_assert!((f.kappa_21 - g.kappa_12).abs() <= 1e-12 * p.kappa.max(1.0));
        prop_assert!((f.gamma_minus + g.gamma_minus).abs() <= 1e-12 * p.gamma_spont.max(1e-12));
        prop_assert!((f.omega_rabi - g.omega_rabi).abs() <= 1e-12 * f.omega_rabi);
        prop_assert!((f.w - g.w).abs() <= 1e-12 * p.gamma_coll.max(1e-12));
        prop_assert!((f.s_z_eq - g.s_z_eq).abs() <= 1e-12);
    }

    #[test]
    fn imbalances_stay_in_bloch_range(p in arb_params()) {
        let f = build_dressed_frame(&p).unwrap();
        prop_assert!(f.s_z_eq >= -1.0 && f.s_z_eq <= 0.0);
        prop_assert!(f.s_z_st >= -1.0 - 1e-12 && f.s_z_st <= 1.0 + 1e-12);
    }

    #[test]
    fn threshold_sign_laws(p in arb_params()) {
        let f = build_dressed_frame(&p).unwrap();
        let (thr12, _) = threshold(Transition::OneTwo, &f).unwrap();
        let (thr21, _) = threshold(Transition::TwoOne, &f).unwrap();
        prop_assert!(thr12 >= 0.0);
        prop_assert!(thr21 <= 0.0);
    }

    #[test]
    fn report_lambda_sq_nonnegative(p in arb_params()) {
        let f = build_dressed_frame(&p).unwrap();
        for tr in [Transition::OneTwo, Transition::TwoOne] {
            let r = steady_report(tr, &f).unwrap();
            prop_assert!(r.lambda_sq >= 0.0);
            prop_assert_eq!(r.lasing, r.lambda_sq > 0.0);
        }
    }
}

#[test]
fn stationary_imbalance_limits() {
    // γ → ∞: collisional transfer wins, S_z^(st) → S_z^(eq);
    // γ → 0 at δ > 0: radiative redistribution wins, S_z^(st) → Γ₋/Γ₊ → +1.
    let mut p = SystemParams {
        omega: thz(1.0),
        delta: thz(11.0),
        kappa: thz(0.62),
        gamma_coll: thz(0.36e-3),
        eta_coll: 0.0,
        gamma_spont: 0.037e-3,
        gamma_cav: thz(100.0e-6),
        delta_cav: thz(11.045),
        temperature: 530.0,
    };
    p.gamma_coll = thz(1e3);
    let f = build_dressed_frame(&p).unwrap();
    assert!((f.s_z_st - f.s_z_eq).abs() < 1e-5);
    p.gamma_coll = thz(1e-12);
    let f = build_dressed_frame(&p).unwrap();
    let ratio = f.gamma_minus / f.gamma_plus;
    assert!((f.s_z_st - ratio).abs() < 1e-6);
    assert!(ratio > 0.99);
}

fn bloch_ball_check(frame: &DressedFrame, transition: Transition) {
    let initial = BlochState {
        lambda: Complex64::new(0.05, 0.0),
        s: Complex64::new(0.0, 0.0),
        s_z: -1.0,
        t: 0.0,
    };
    let mut opts = IntegrateOptions::to(100.0e3);
    opts.n_out = 500;
    let traj = integrate(transition, &initial, frame, &opts).unwrap();
    for s in &traj.samples {
        let b = 4.0 * s.s.norm_sqr() + s.s_z * s.s_z;
        assert!(b <= 1.0 + 1e-6, "4|S|^2 + S_z^2 = {b} at t = {}", s.t);
    }
}

#[test]
fn bloch_ball_bounded_fig6() {
    let p = SystemParams {
        omega: thz(1.0),
        delta: thz(11.0),
        kappa: thz(0.62),
        gamma_coll: thz(0.36e-3),
        eta_coll: 0.0,
        gamma_spont: 0.037e-3,
        gamma_cav: thz(100.0e-6),
        delta_cav: thz(122f64.sqrt()),
        temperature: 530.0,
    };
    let f = build_dressed_frame(&p).unwrap();
    bloch_ball_check(&f, Transition::OneTwo);
}

#[test]
fn bloch_ball_bounded_fig9() {
    let p = SystemParams {
        omega: thz(1.0),
        delta: thz(-11.0),
        kappa: thz(0.62),
        gamma_coll: thz(0.36e-3),
        eta_coll: 0.0,
        gamma_spont: 0.037e-3,
        gamma_cav: thz(100.0e-6),
        delta_cav: -thz(122f64.sqrt()),
        temperature: 530.0,
    };
    let f = build_dressed_frame(&p).unwrap();
    bloch_ball_check(&f, Transition::TwoOne);
}
