//! Dataset serialization. All floats carry 17 significant digits so that
//! written values round-trip bit-exactly; output is deterministic (no
//! timestamps, fixed column order).

use std::fmt::Write as _;

use crate::amplitude::AmplitudeTrajectory;
use crate::bound_state::SpectrumSlice;
use crate::metrology::{PrecisionCurve, ScalingRow};

/// 17-significant-digit scientific form, the shortest exact f64 round-trip.
pub fn format_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Trajectory CSV: `t,re_c,im_c,abs_c`.
pub fn trajectory_csv(traj: &AmplitudeTrajectory) -> String {
    let mut out = String::with_capacity(traj.len() * 80 + 32);
    out.push_str("t,re_c,im_c,abs_c\n");
    for (k, v) in traj.values().iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_g17(traj.t(k)),
            format_g17(v.re),
            format_g17(v.im),
            format_g17(v.norm())
        );
    }
    out
}

/// Spectrum CSV: `omega0,delta,E0,Z`; invalid sweep points leave E0/Z empty.
pub fn spectrum_csv(slices: &[SpectrumSlice]) -> String {
    let mut out = String::with_capacity(slices.len() * 80 + 16);
    out.push_str("omega0,delta,E0,Z\n");
    for s in slices {
        let e0 = s.bound_energy.map(format_g17).unwrap_or_default();
        let z = s.z.map(format_g17).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_g17(s.omega0),
            format_g17(s.omega0 - s.band_edge),
            e0,
            z
        );
    }
    out
}

/// Precision CSV: `t,delta_omega,is_envelope_min` (t = 0 marker row skipped).
pub fn precision_csv(curve: &PrecisionCurve) -> String {
    let mut out = String::with_capacity(curve.values().len() * 48 + 32);
    out.push_str("t,delta_omega,is_envelope_min\n");
    let mut next_env = curve.envelope_indices().iter().peekable();
    for (k, &v) in curve.values().iter().enumerate().skip(1) {
        let is_min = match next_env.peek() {
            Some(&&idx) if idx == k => {
                next_env.next();
                1
            }
            _ => 0,
        };
        let _ = writeln!(out, "{},{},{}", format_g17(curve.t(k)), format_g17(v), is_min);
    }
    out
}

/// Scaling CSV: `n,min_delta_omega,bound_eq13,hl_reference`.
pub fn scaling_csv(rows: &[ScalingRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 64 + 48);
    out.push_str("n,min_delta_omega,bound_eq13,hl_reference\n");
    for r in rows {
        let bound = r.bound_eq_scaling.map(format_g17).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.n,
            format_g17(r.min_delta_omega),
            bound,
            format_g17(r.hl_reference)
        );
    }
    out
}
