//! Fisher information of a measured probability family and the ideal
//! (coupling-free) precision limits.

use crate::error::{CoreError, CoreResult};

use super::{InputState, ProbeConfig};

/// F = sum_i (dp_i)^2 / p_i over outcomes given as (p_i, dp_i) pairs.
///
/// Outcomes with p_i = 0 contribute nothing when their derivative also
/// vanishes; a zero-probability outcome with nonzero derivative makes the
/// information singular and is rejected.
pub fn fisher_information(outcomes: &[(f64, f64)]) -> CoreResult<f64> {
    let sum: f64 = outcomes.iter().map(|(p, _)| p).sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(CoreError::NotNormalized { sum });
    }
    let mut info = 0.0;
    for (index, &(p, dp)) in outcomes.iter().enumerate() {
        if p <= 0.0 {
            if dp != 0.0 {
                return Err(CoreError::SingularOutcome { index });
            }
            continue;
        }
        info += dp * dp / p;
    }
    Ok(info)
}

/// Ideal precision: (n T t)^{-1/2} for uncorrelated probes (the SQL) and
/// (n^2 T t)^{-1/2} for the GHZ input (the HL).
pub fn ideal_precision(config: &ProbeConfig, t: f64) -> CoreResult<f64> {
    if !(t > 0.0) {
        return Err(CoreError::NonPositive { name: "t", value: t });
    }
    let n = config.n() as f64;
    let resource = match config.input_state() {
        InputState::Uncorrelated => n,
        InputState::Ghz => n * n,
    };
    Ok(1.0 / (resource * config.t_total() * t).sqrt())
}
