//! Time-dependent rates of the exact master equation,
//! gamma(t) + i omega(t) = -2 c'(t) / c(t).

use num_complex::Complex64;

use crate::error::{CoreError, CoreResult};

use super::AmplitudeTrajectory;

/// Amplitude modulus below which the rates are considered undefined.
pub const AMPLITUDE_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct DecoherenceRates {
    /// Decay rate gamma(t) per grid node.
    pub gamma: Vec<f64>,
    /// Renormalized frequency omega(t) per grid node.
    pub omega: Vec<f64>,
}

/// Extract gamma(t) and omega(t) from a trajectory by finite differences
/// (central in the interior, second-order one-sided at the ends).
pub fn decoherence_rates(traj: &AmplitudeTrajectory) -> CoreResult<DecoherenceRates> {
    let c = traj.values();
    if c.len() < 3 {
        return Err(CoreError::GridMismatch {
            t_max: traj.t_max(),
            h: traj.step(),
        });
    }
    if let Some(cutoff_index) = c.iter().position(|v| v.norm() <= AMPLITUDE_FLOOR) {
        return Err(CoreError::AmplitudeVanishes { cutoff_index });
    }

    let h = traj.step();
    let n = c.len();
    let mut gamma = Vec::with_capacity(n);
    let mut omega = Vec::with_capacity(n);
    let rate_at = |dc: Complex64, ck: Complex64| -2.0 * dc / ck;

    for k in 0..n {
        let dc = if k == 0 {
            (-3.0 * c[0] + 4.0 * c[1] - c[2]) / (2.0 * h)
        } else if k == n - 1 {
            (3.0 * c[n - 1] - 4.0 * c[n - 2] + c[n - 3]) / (2.0 * h)
        } else {
            (c[k + 1] - c[k - 1]) / (2.0 * h)
        };
        let r = rate_at(dc, c[k]);
        gamma.push(r.re);
        omega.push(r.im);
    }
    Ok(DecoherenceRates { gamma, omega })
}
