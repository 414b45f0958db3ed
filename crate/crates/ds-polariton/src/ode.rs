//! Embedded Dormand-Prince 5(4) stepper for small fixed-size real systems.
//!
//! The step size is clipped so that every requested output time is hit by an
//! accepted step exactly; no interpolation error enters the recorded samples.

use crate::math;
use crate::Error;
use alloc::vec::Vec;

pub const DIM: usize = 5;
pub type State = [f64; DIM];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub steps: u64,
    pub rejected: u64,
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Difference between the 5th- and 4th-order weights.
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

fn err_norm(err: &State, y: &State, y_new: &State, rel_tol: f64, abs_tol: f64) -> f64 {
    let mut sum = 0.0;
    for i in 0..DIM {
        let scale = abs_tol + rel_tol * math::max(math::abs(y[i]), math::abs(y_new[i]));
        let r = err[i] / scale;
        sum += r * r;
    }
    math::sqrt(sum / DIM as f64)
}

/// Integrate `dy/dt = f(t, y)` from `t0`, recording the state at each time in
/// `output_times` (strictly increasing, all > `t0`).
pub fn integrate<F>(
    mut f: F,
    t0: f64,
    y0: State,
    output_times: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<(Vec<(f64, State)>, Stats), Error>
where
    F: FnMut(f64, &State) -> State,
{
    let mut stats = Stats::default();
    let mut samples = Vec::with_capacity(output_times.len());
    let Some(&t_end) = output_times.last() else {
        return Ok((samples, stats));
    };

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = math::min((t_end - t0) * 1e-6, output_times[0] - t0);
    let mut next_out = 0usize;

    while next_out < output_times.len() {
        let target = output_times[next_out];
        let clipped = t + h >= target;
        let h_step = if clipped { target - t } else { h };
        if h < 1e-13 * math::max(1.0, math::abs(t)) {
            return Err(Error::StepSizeUnderflow { t });
        }

        // stage evaluations
        let mut k = [[0.0; DIM]; 7];
        k[0] = k1;
        for s in 1..7 {
            let mut ys = y;
            for i in 0..DIM {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                ys[i] += h_step * acc;
            }
            k[s] = f(t + C[s] * h_step, &ys);
        }
        // 5th-order solution is stage 7's argument (FSAL)
        let mut y_new = y;
        for i in 0..DIM {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(6) {
                acc += A[6][j] * kj[i];
            }
            y_new[i] += h_step * acc;
        }
        let mut err = [0.0; DIM];
        for i in 0..DIM {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate() {
                acc += E[j] * kj[i];
            }
            err[i] = h_step * acc;
        }
        if !y_new.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteState { t });
        }

        let en = err_norm(&err, &y, &y_new, rel_tol, abs_tol);
        if en <= 1.0 {
            y = y_new;
            k1 = k[6];
            stats.steps += 1;
            if clipped {
                t = target;
                samples.push((t, y));
                next_out += 1;
            } else {
                t += h_step;
            }
            let factor = if en > 0.0 {
                math::min(5.0, math::max(0.2, 0.9 * math::powf(en, -0.2)))
            } else {
                5.0
            };
            // A clipped step may be much shorter than the controller's
            // estimate; do not let it collapse the working step size.
            h = if clipped {
                math::max(h, h_step * factor)
            } else {
                h_step * factor
            };
        } else {
            stats.rejected += 1;
            h = h_step * math::max(0.2, 0.9 * math::powf(en, -0.2));
        }
    }

    Ok((samples, stats))
}
