//! Deterministic table emission: CSV with 17 significant digits, scientific
//! notation, LF line endings; JSON for single-record outputs.

use ds_polariton::{DressedFrame, ThresholdReport, Trajectory, Transition};
use serde_json::json;
use std::fs;
use std::io;
use std::path::Path;

pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Render a CSV table; `rows` yields one Vec per record.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut s = String::new();
    s.push_str(&header.join(","));
    s.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let mut first = true;
        for v in row {
            if !first {
                s.push(',');
            }
            first = false;
            s.push_str(&fmt_num(v));
        }
        s.push('\n');
    }
    s
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let header = ["t_ps", "re_lambda", "im_lambda", "abs_lambda", "re_S", "im_S", "abs_S", "s_z"];
    csv_table(
        &header,
        traj.samples.iter().map(|s| {
            vec![
                s.t,
                s.lambda.re,
                s.lambda.im,
                s.lambda.norm(),
                s.s.re,
                s.s.im,
                s.s.norm(),
                s.s_z,
            ]
        }),
    )
}

pub fn transition_name(t: Transition) -> &'static str {
    match t {
        Transition::OneTwo => "OneTwo",
        Transition::TwoOne => "TwoOne",
    }
}

pub fn threshold_report_json(r: &ThresholdReport) -> serde_json::Value {
    json!({
        "transition": transition_name(r.transition),
        "s_z_thr": r.s_z_thr,
        "s_z_st": r.s_z_st,
        "mu": r.mu,
        "lambda_sq": r.lambda_sq,
        "lasing": r.lasing,
    })
}

pub fn frame_json(f: &DressedFrame) -> serde_json::Value {
    json!({
        "sin_theta": f.sin_theta,
        "cos_theta": f.cos_theta,
        "omega_rabi": f.omega_rabi,
        "kappa_12": f.kappa_12,
        "kappa_21": f.kappa_21,
        "w": f.w,
        "gamma_plus": f.gamma_plus,
        "gamma_minus": f.gamma_minus,
        "gamma_1": f.gamma_1,
        "eta_1": f.eta_1,
        "cap_gamma_1": f.cap_gamma_1,
        "s_z_eq": f.s_z_eq,
        "s_z_st": f.s_z_st,
        "delta_eff": f.delta_eff,
        "gamma_cav": f.gamma_cav,
        "delta_cav": f.delta_cav,
        "temperature": f.temperature,
    })
}

pub fn write_text(dir: &Path, name: &str, content: &str) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), content)
}
