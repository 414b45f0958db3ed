//! Closed-form threshold, lasing-frequency, self-consistent-imbalance and
//! steady-order-parameter analysis for both DS transitions.

use crate::dynamics::Transition;
use crate::frame::DressedFrame;
use crate::Error;
use num_complex::Complex64;

/// Per-transition steady-state analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub transition: Transition,
    /// Threshold imbalance S_z^(thr); ≥ 0 for 1→2, ≤ 0 for 2→1.
    pub s_z_thr: f64,
    /// Stationary imbalance S_z^(st) from the frame.
    pub s_z_st: f64,
    /// Lasing frequency μ relative to ω_L, rad/ps.
    pub mu: f64,
    /// Steady |λ|², clipped at 0.
    pub lambda_sq: f64,
    pub lasing: bool,
}

/// Saturated stationary imbalance s̄_z under a finite cavity field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfConsistentImbalance {
    pub s_z_bar: f64,
    /// Effective complex Rabi splitting Ω̃_{R,eff}, rad/ps.
    pub omega_r_eff_tilde: Complex64,
    /// Γ_eff = Γ₁ + γ₁ − Γ_c, rad/ps.
    pub gamma_eff: f64,
    pub converged: bool,
}

fn gain_width(frame: &DressedFrame) -> f64 {
    frame.cap_gamma_1 + frame.gamma_1
}

/// Both complex "chemical potential" branches for the linearized coupled
/// cavity-polarization system. μ₂ is the least-damped branch (larger
/// imaginary part); lasing sets in where Im(μ₂) crosses zero.
pub fn complex_branches(
    transition: Transition,
    frame: &DressedFrame,
    s_z_bar: f64,
) -> (Complex64, Complex64) {
    let a = Complex64::new(frame.delta_cav, -frame.gamma_cav);
    let b = Complex64::new(frame.omega_rabi, -gain_width(frame));
    let (half_sum, radicand) = match transition {
        Transition::OneTwo => {
            let k2 = frame.kappa_12 * frame.kappa_12;
            (0.5 * (a + b), (a - b) * (a - b) - 4.0 * k2 * s_z_bar)
        }
        Transition::TwoOne => {
            // pairing with S*: the matter branch enters with conjugate sign
            let k2 = frame.kappa_21 * frame.kappa_21;
            (0.5 * (a - b.conj()), (a + b.conj()) * (a + b.conj()) + 4.0 * k2 * s_z_bar)
        }
    };
    let root = 0.5 * radicand.sqrt();
    let (p, m) = (half_sum + root, half_sum - root);
    if p.im >= m.im {
        (m, p)
    } else {
        (p, m)
    }
}

/// Threshold imbalance and lasing frequency for the chosen transition.
pub fn threshold(transition: Transition, frame: &DressedFrame) -> Result<(f64, f64), Error> {
    let g = gain_width(frame);
    let total = frame.gamma_cav + g;
    match transition {
        Transition::OneTwo => {
            if frame.kappa_12 == 0.0 {
                return Err(Error::InvalidParameter {
                    field: "kappa_12",
                    reason: "threshold undefined for zero coupling",
                });
            }
            let d = frame.delta_eff;
            let s_z_thr = frame.gamma_cav * g / (frame.kappa_12 * frame.kappa_12)
                * (1.0 + d * d / (total * total));
            let mu = frame.delta_cav - d * frame.gamma_cav / total;
            Ok((s_z_thr, mu))
        }
        Transition::TwoOne => {
            if frame.kappa_21 == 0.0 {
                return Err(Error::InvalidParameter {
                    field: "kappa_21",
                    reason: "threshold undefined for zero coupling",
                });
            }
            let d = frame.delta_eff + 2.0 * frame.omega_rabi;
            let s_z_thr = -frame.gamma_cav * g / (frame.kappa_21 * frame.kappa_21)
                * (1.0 + d * d / (total * total));
            let mu = frame.delta_cav - d * frame.gamma_cav / total;
            Ok((s_z_thr, mu))
        }
    }
}

/// Saturated imbalance: fixed point of
/// s̄_z = S_z^(st)|Ω̃_{R,eff}|² / (|Ω̃_{R,eff}|² + 4(Γ₁+γ₁)κ²|λ|²/(2w+Γ₊)),
/// with Ω̃_{R,eff} = ½{−Δ − iΓ_eff + sqrt((Δ + iΓ_eff)² − 4κ²s̄_z)}.
pub fn self_consistent_imbalance(
    transition: Transition,
    frame: &DressedFrame,
    lambda_abs: f64,
    tol: f64,
) -> Result<SelfConsistentImbalance, Error> {
    if !(lambda_abs >= 0.0) {
        return Err(Error::InvalidParameter {
            field: "lambda_abs",
            reason: "must be >= 0",
        });
    }
    let g = gain_width(frame);
    let gamma_eff = g - frame.gamma_cav;
    let kappa = match transition {
        Transition::OneTwo => frame.kappa_12,
        Transition::TwoOne => frame.kappa_21,
    };
    let pump = 2.0 * frame.w + frame.gamma_plus;
    let sat = if pump > 0.0 {
        4.0 * g * kappa * kappa * lambda_abs * lambda_abs / pump
    } else {
        0.0
    };
    let d = frame.delta_eff;

    let omega_eff = |s_z: f64| -> Complex64 {
        let z = Complex64::new(d, gamma_eff);
        let mut radicand = z * z - 4.0 * kappa * kappa * s_z;
        // at Δ = 0 the radicand is real; a signed-zero imaginary part must
        // not flip the principal square root across the branch cut
        if radicand.im == 0.0 {
            radicand.im = 0.0;
        }
        0.5 * (-z + radicand.sqrt())
    };

    const MAX_ITER: usize = 500;
    const DAMPING: f64 = 0.5;
    let mut s_z = frame.s_z_st;
    let mut converged = false;
    let mut iter = 0;
    while iter < MAX_ITER {
        let w_eff = omega_eff(s_z);
        let n2 = w_eff.norm_sqr();
        let next = if n2 + sat > 0.0 {
            frame.s_z_st * n2 / (n2 + sat)
        } else {
            0.0
        };
        let step = DAMPING * (next - s_z);
        s_z += step;
        iter += 1;
        if step.abs() <= tol {
            converged = true;
            break;
        }
    }

    Ok(SelfConsistentImbalance {
        s_z_bar: s_z,
        omega_r_eff_tilde: omega_eff(s_z),
        gamma_eff,
        converged,
    })
}

/// Assemble the steady-state report: threshold, lasing frequency and the
/// steady order parameter, clipped at zero below threshold.
pub fn steady_report(
    transition: Transition,
    frame: &DressedFrame,
) -> Result<ThresholdReport, Error> {
    let (s_z_thr, mu) = threshold(transition, frame)?;
    let pump = 2.0 * frame.w + frame.gamma_plus;
    let excess = match transition {
        Transition::OneTwo => frame.s_z_st - s_z_thr,
        Transition::TwoOne => s_z_thr - frame.s_z_st,
    };
    let lambda_sq = if frame.gamma_cav > 0.0 {
        (pump * excess / (4.0 * frame.gamma_cav)).max(0.0)
    } else {
        0.0
    };
    Ok(ThresholdReport {
        transition,
        s_z_thr,
        s_z_st: frame.s_z_st,
        mu,
        lambda_sq,
        lasing: lambda_sq > 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{build_dressed_frame, SystemParams};
    use crate::TWO_PI;

    fn thz(v: f64) -> f64 {
        TWO_PI * v
    }

    fn base_params(delta_thz: f64, delta_cav: f64) -> SystemParams {
        SystemParams {
            omega: thz(1.0),
            delta: thz(delta_thz),
            kappa: thz(0.62),
            gamma_coll: thz(0.36e-3),
            eta_coll: 0.0,
            gamma_spont: 0.037e-3,
            gamma_cav: thz(100.0e-6),
            delta_cav,
            temperature: 530.0,
        }
    }

    fn fig6_frame() -> DressedFrame {
        // δ_c = Ω_R, i.e. Δ = 0 for the 1→2 transition
        let p = base_params(11.0, thz(libm::sqrt(122.0)));
        build_dressed_frame(&p).unwrap()
    }

    fn fig9_frame() -> DressedFrame {
        // δ_c = −Ω_R, i.e. Δ = −2Ω_R for the 2→1 transition
        let p = base_params(11.0, -thz(libm::sqrt(122.0)));
        build_dressed_frame(&p).unwrap()
    }

    #[test]
    fn branches_decouple_at_zero_coupling() {
        let mut f = fig6_frame();
        f.kappa_12 = 0.0;
        let (mu1, mu2) = complex_branches(Transition::OneTwo, &f, -0.3);
        let photon = Complex64::new(f.delta_cav, -f.gamma_cav);
        let matter = Complex64::new(f.omega_rabi, -(f.cap_gamma_1 + f.gamma_1));
        let hit = |m: Complex64| (m - photon).norm() < 1e-12 || (m - matter).norm() < 1e-12;
        assert!(hit(mu1) && hit(mu2) && (mu1 - mu2).norm() > 1e-6);
    }

    #[test]
    fn lossless_vacuum_rabi_splitting() {
        let mut f = fig6_frame();
        f.gamma_cav = 0.0;
        f.cap_gamma_1 = 0.0;
        f.gamma_1 = 0.0;
        f.delta_cav = f.omega_rabi; // Δ = 0
        f.delta_eff = 0.0;
        let (mu1, mu2) = complex_branches(Transition::OneTwo, &f, -1.0);
        assert!(((mu1 - mu2).norm() - 2.0 * f.kappa_12).abs() < 1e-10 * f.kappa_12);
    }

    #[test]
    fn branch_closure_at_threshold() {
        let f = fig6_frame();
        let (s_z_thr, mu) = threshold(Transition::OneTwo, &f).unwrap();
        let (_, mu2) = complex_branches(Transition::OneTwo, &f, s_z_thr);
        assert!(mu2.im.abs() < 1e-10 * mu2.norm());
        assert!((mu2.re - mu).abs() < 1e-10 * mu.abs());
    }

    #[test]
    fn branch_closure_two_one() {
        let f = fig9_frame();
        let (s_z_thr, mu) = threshold(Transition::TwoOne, &f).unwrap();
        assert!(s_z_thr <= 0.0);
        let (_, mu2) = complex_branches(Transition::TwoOne, &f, s_z_thr);
        assert!(mu2.im.abs() < 1e-10 * mu2.norm());
        assert!((mu2.re - mu).abs() < 1e-10 * mu.abs());
    }

    #[test]
    fn fig6_threshold_value() {
        let f = fig6_frame();
        let (s_z_thr, mu) = threshold(Transition::OneTwo, &f).unwrap();
        assert!((s_z_thr - 0.0222).abs() < 5e-4, "s_z_thr = {s_z_thr}");
        // Δ = 0 forces μ = δ_c
        assert!((mu - f.delta_cav).abs() < 1e-12);
    }

    #[test]
    fn detuned_threshold_asymptote() {
        // Δ = −Ω_R: S_z^(thr) ≈ Γ_c δ²/(κ₁₂²(Γ_c + Γ₁ + γ₁)); the asymptote
        // needs Γ_c ≪ Γ₁ + γ₁, so take the large collisional broadening side
        let mut p = base_params(-11.0, 0.0); // δ_c = 0 ⇒ Δ = −Ω_R
        p.gamma_coll = thz(30.0e-3);
        let f = build_dressed_frame(&p).unwrap();
        let (s_z_thr, _) = threshold(Transition::OneTwo, &f).unwrap();
        let g = f.cap_gamma_1 + f.gamma_1;
        let approx =
            f.gamma_cav * p.delta * p.delta / (f.kappa_12 * f.kappa_12 * (f.gamma_cav + g));
        assert!((s_z_thr - approx).abs() < 0.01 * approx);
    }

    #[test]
    fn fig9_thresholdless_value() {
        let f = fig9_frame();
        let (s_z_thr, _) = threshold(Transition::TwoOne, &f).unwrap();
        assert!(s_z_thr < 0.0);
        assert!((s_z_thr - (-9.4e-8)).abs() < 2e-9, "s_z_thr = {s_z_thr}");
    }

    #[test]
    fn threshold_minima_in_cavity_detuning() {
        // 1→2 minimized at Δ = 0; 2→1 at Δ = −2Ω_R
        let omega_r = thz(libm::sqrt(122.0));
        let grid: alloc::vec::Vec<f64> =
            (-40..=40).map(|i| i as f64 * 0.1 * omega_r).collect();
        let eval = |tr: Transition, delta_cav: f64| {
            let f = build_dressed_frame(&base_params(11.0, delta_cav)).unwrap();
            threshold(tr, &f).unwrap().0
        };
        let best_12 = grid
            .iter()
            .map(|&dc| (dc, eval(Transition::OneTwo, dc)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((best_12.0 - omega_r).abs() < 1e-9); // Δ = δ_c − Ω_R = 0
        let best_21 = grid
            .iter()
            .map(|&dc| (dc, eval(Transition::TwoOne, dc)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((best_21.0 + omega_r).abs() < 1e-9); // Δ = −2Ω_R
    }

    #[test]
    fn zero_coupling_threshold_is_error() {
        let mut f = fig6_frame();
        f.kappa_12 = 0.0;
        assert!(threshold(Transition::OneTwo, &f).is_err());
    }

    #[test]
    fn fig6_steady_report() {
        let f = fig6_frame();
        let r = steady_report(Transition::OneTwo, &f).unwrap();
        assert!(r.lasing);
        assert!((r.lambda_sq - 0.0108).abs() < 3e-4, "lambda_sq = {}", r.lambda_sq);
        assert!((libm::sqrt(r.lambda_sq) - 0.104).abs() < 2e-3);
        assert!((r.s_z_st - 0.510).abs() < 1e-3);
    }

    #[test]
    fn report_clips_below_threshold() {
        // red detuning keeps S_z^(st) far below the 1→2 threshold
        let p = base_params(-11.0, -thz(libm::sqrt(122.0)));
        let f = build_dressed_frame(&p).unwrap();
        assert!(f.s_z_st < 0.0);
        let r = steady_report(Transition::OneTwo, &f).unwrap();
        assert_eq!(r.lambda_sq, 0.0);
        assert!(!r.lasing);
    }

    #[test]
    fn thresholdless_two_one_amplitude() {
        // κ₂₁ ≫ sqrt(γΓ_c): |λ|² ≈ (2w + Γ₊)|S_z^(st)|/4Γ_c when S_z^(st) < 0.
        // Moderate blue detuning keeps sin²θ (hence κ₂₁) large while the
        // collisional transfer still pulls S_z^(st) below zero.
        let p = base_params(0.5, -thz(libm::sqrt(1.25)));
        let f = build_dressed_frame(&p).unwrap();
        assert!(f.s_z_st < 0.0);
        let r = steady_report(Transition::TwoOne, &f).unwrap();
        assert!(r.lasing);
        let approx =
            (2.0 * f.w + f.gamma_plus) * f.s_z_st.abs() / (4.0 * f.gamma_cav);
        assert!((r.lambda_sq - approx).abs() < 1e-2 * approx);
    }

    #[test]
    fn imbalance_no_field_is_exact() {
        let f = fig6_frame();
        let r = self_consistent_imbalance(Transition::OneTwo, &f, 0.0, 1e-12).unwrap();
        assert!(r.converged);
        assert!((r.s_z_bar - f.s_z_st).abs() < 1e-12);
    }

    #[test]
    fn imbalance_saturates_to_zero() {
        let f = fig6_frame();
        let r = self_consistent_imbalance(Transition::OneTwo, &f, 1e6, 1e-12).unwrap();
        assert!(r.converged);
        assert!(r.s_z_bar.abs() < 1e-6);
    }

    #[test]
    fn imbalance_monotone_in_field() {
        let f = fig6_frame();
        let lam = libm::sqrt(steady_report(Transition::OneTwo, &f).unwrap().lambda_sq);
        let mut prev = f.s_z_st;
        for step in 1..=8 {
            let amp = lam * step as f64 / 4.0;
            let r = self_consistent_imbalance(Transition::OneTwo, &f, amp, 1e-12).unwrap();
            assert!(r.converged);
            assert!(r.s_z_bar >= 0.0 && r.s_z_bar <= prev + 1e-12);
            assert!(r.s_z_bar.abs() <= f.s_z_st.abs() + 1e-12);
            prev = r.s_z_bar;
        }
    }

    #[test]
    fn gamma_eff_sign_continuity() {
        // sweep Γ_c through Γ₁ + γ₁ so Γ_eff changes sign; Ω̃_{R,eff} must
        // vary continuously (principal branch, no jump). Pin Δ to exactly 0:
        // the rounding residue of δ_c − Ω_R would otherwise hop across the
        // branch cut on the negative real axis.
        let mut f = fig6_frame();
        f.delta_eff = 0.0;
        let g = f.cap_gamma_1 + f.gamma_1;
        let mut last: Option<Complex64> = None;
        for i in 0..=40 {
            f.gamma_cav = g * (0.5 + 0.025 * i as f64);
            // weak field: keeps the nontrivial fixed point alive on both
            // sides of Gamma_eff = 0 so continuity is meaningful
            let r = self_consistent_imbalance(Transition::OneTwo, &f, 0.005, 1e-12).unwrap();
            assert!(r.converged);
            if let Some(prev) = last {
                assert!((r.omega_r_eff_tilde - prev).norm() < 0.05 * f.kappa_12);
            }
            last = Some(r.omega_r_eff_tilde);
        }
    }
}
