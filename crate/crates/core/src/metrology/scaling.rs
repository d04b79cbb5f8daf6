//! Bound-state scaling of the long-time entangled precision and the
//! minimal-precision-versus-n table.

use crate::bound_state::BoundStateResult;
use crate::error::{CoreError, CoreResult};

use super::{AmplitudeFamily, InputState, PrecisionEvaluator, ProbeConfig};

/// Long-time bound-state precision scaling, Z^{-(n+1)} (n^2 T t)^{-1/2}.
pub fn scaling_bound(bs: &BoundStateResult, config: &ProbeConfig, t: f64) -> CoreResult<f64> {
    let z = match bs {
        BoundStateResult::Bound { z, .. } => *z,
        BoundStateResult::Unbound => return Err(CoreError::NotBound),
    };
    if !(t > 0.0) {
        return Err(CoreError::NonPositive { name: "t", value: t });
    }
    let n = config.n() as f64;
    Ok(z.powi(-(config.n() as i32 + 1)) / (n * n * config.t_total() * t).sqrt())
}

/// One row of the minimal-precision table.
#[derive(Debug, Clone, Copy)]
pub struct ScalingRow {
    pub n: u32,
    /// Encoding time where the windowed minimum was found.
    pub t_at_min: f64,
    pub min_delta_omega: f64,
    /// Bound-state scaling evaluated at `t_at_min`, when a bound state exists.
    pub bound_eq_scaling: Option<f64>,
    /// Ideal entangled limit (n^2 T t)^{-1/2} at `t_at_min`.
    pub hl_reference: f64,
    /// Ideal uncorrelated limit (n T t)^{-1/2} at `t_at_min`.
    pub sql_reference: f64,
}

/// Minimal entangled precision near a fixed encoding time, per atom count.
///
/// For each n the precision curve is evaluated with the GHZ input and the
/// smallest envelope value in the trailing window
/// [(1 - window_frac) t_fixed, t_fixed] is reported. Failures propagate per
/// point without aborting the table.
pub fn min_precision_vs_n<F: AmplitudeFamily>(
    evaluator: &PrecisionEvaluator<F>,
    t_total: f64,
    t_fixed: f64,
    n_grid: &[u32],
    bs: Option<&BoundStateResult>,
    window_frac: f64,
) -> Vec<(u32, CoreResult<ScalingRow>)> {
    n_grid
        .iter()
        .map(|&n| {
            let row = (|| {
                let config = ProbeConfig::new(n, t_total, InputState::Ghz)?;
                let curve = evaluator.curve(&config)?;
                let (t_at_min, min_delta_omega) = curve
                    .min_in_window(t_fixed * (1.0 - window_frac), t_fixed)
                    .ok_or(CoreError::TimeOffGrid {
                        t: t_fixed,
                        h: curve.step(),
                    })?;
                let bound_eq_scaling = match bs {
                    Some(b) if b.exists() => Some(scaling_bound(b, &config, t_at_min)?),
                    _ => None,
                };
                let nf = n as f64;
                Ok(ScalingRow {
                    n,
                    t_at_min,
                    min_delta_omega,
                    bound_eq_scaling,
                    hl_reference: 1.0 / (nf * nf * t_total * t_at_min).sqrt(),
                    sql_reference: 1.0 / (nf * t_total * t_at_min).sqrt(),
                })
            })();
            (n, row)
        })
        .collect()
}
