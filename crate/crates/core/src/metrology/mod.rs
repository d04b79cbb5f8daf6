//! From amplitude trajectories to estimation precision: Fisher information,
//! the ideal shot-noise and entangled limits, the dissipative precision
//! formulas, fringe-minima envelopes, and the bound-state scaling bound.

mod fisher;
mod precision;
mod scaling;

pub use fisher::{fisher_information, ideal_precision};
pub use precision::{
    precision_curve, precision_entangled, precision_uncorrelated, AmplitudeFamily,
    AnalyticFamily, MarkovianFamily, PrecisionEvaluator, VolterraFamily, DEFAULT_H_OMEGA,
};
pub use scaling::{min_precision_vs_n, scaling_bound, ScalingRow};

use crate::error::{CoreError, CoreResult};

/// Input-state preparation of the n-atom probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputState {
    Uncorrelated,
    Ghz,
}

impl InputState {
    pub fn as_str(&self) -> &'static str {
        match self {
            InputState::Uncorrelated => "uncorrelated",
            InputState::Ghz => "ghz",
        }
    }
}

/// Probe resources: atom count, total experiment duration, input state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    n: u32,
    t_total: f64,
    input_state: InputState,
}

impl ProbeConfig {
    /// Range-safety cap: c^n underflows and Z^-(n+1) overflows well past this.
    pub const DEFAULT_N_CAP: u32 = 40;

    pub fn new(n: u32, t_total: f64, input_state: InputState) -> CoreResult<Self> {
        if n > Self::DEFAULT_N_CAP {
            return Err(CoreError::AtomCountCap {
                n,
                cap: Self::DEFAULT_N_CAP,
            });
        }
        Self::new_uncapped(n, t_total, input_state)
    }

    /// Bypass the atom-count cap; callers own the numerical-range risk.
    pub fn new_uncapped(n: u32, t_total: f64, input_state: InputState) -> CoreResult<Self> {
        if n == 0 {
            return Err(CoreError::EmptyProbe);
        }
        if !(t_total > 0.0) {
            return Err(CoreError::NonPositive {
                name: "t_total",
                value: t_total,
            });
        }
        Ok(ProbeConfig {
            n,
            t_total,
            input_state,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t_total(&self) -> f64 {
        self.t_total
    }

    pub fn input_state(&self) -> InputState {
        self.input_state
    }

    pub fn with_state(&self, input_state: InputState) -> Self {
        ProbeConfig {
            input_state,
            ..*self
        }
    }
}

/// Precision versus encoding time on a uniform grid, with the detected
/// local-minima envelope. Index 0 (t = 0) carries the no-information marker.
#[derive(Debug, Clone)]
pub struct PrecisionCurve {
    h: f64,
    delta_omega: Vec<f64>,
    envelope: Vec<usize>,
    config: ProbeConfig,
}

impl PrecisionCurve {
    pub(crate) fn new(h: f64, delta_omega: Vec<f64>, config: ProbeConfig) -> Self {
        let envelope = strict_local_minima(&delta_omega);
        PrecisionCurve {
            h,
            delta_omega,
            envelope,
            config,
        }
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn t(&self, k: usize) -> f64 {
        k as f64 * self.h
    }

    pub fn values(&self) -> &[f64] {
        &self.delta_omega
    }

    pub fn envelope_indices(&self) -> &[usize] {
        &self.envelope
    }

    pub fn config(&self) -> ProbeConfig {
        self.config
    }

    pub fn envelope_points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.envelope
            .iter()
            .map(move |&k| (self.t(k), self.delta_omega[k]))
    }

    /// Best (smallest) envelope value with t in [t_lo, t_hi], falling back to
    /// the smallest finite sample there when no interior minimum lands inside.
    pub fn min_in_window(&self, t_lo: f64, t_hi: f64) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for (t, v) in self.envelope_points() {
            if t >= t_lo && t <= t_hi && best.is_none_or(|(_, bv)| v < bv) {
                best = Some((t, v));
            }
        }
        if best.is_some() {
            return best;
        }
        for (k, &v) in self.delta_omega.iter().enumerate() {
            let t = self.t(k);
            if t >= t_lo && t <= t_hi && v.is_finite() && best.is_none_or(|(_, bv)| v < bv) {
                best = Some((t, v));
            }
        }
        best
    }

    /// Running best precision: min envelope value over the trailing window
    /// [(1 - window_frac) t, t] for each requested t.
    pub fn running_min(&self, window_frac: f64, ts: &[f64]) -> Vec<(f64, Option<f64>)> {
        ts.iter()
            .map(|&t| {
                let lo = t * (1.0 - window_frac);
                (t, self.min_in_window(lo, t).map(|(_, v)| v))
            })
            .collect()
    }
}

/// Strict three-point local minima over the finite entries.
fn strict_local_minima(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    for k in 1..values.len().saturating_sub(1) {
        let (a, b, c) = (values[k - 1], values[k], values[k + 1]);
        if b.is_finite() && a.is_finite() && c.is_finite() && b < a && b < c {
            out.push(k);
        }
    }
    out
}
