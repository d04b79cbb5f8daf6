//! Decoherence amplitude c(t) by four routes: exact Volterra integration of
//! the memory equation, the band-edge closed form, the Markovian exponential,
//! and the long-time bound-state form; plus the single-atom Kraus channel and
//! the time-dependent rates of the exact master equation.

mod analytic;
mod asymptote;
mod kraus;
mod markovian;
mod rates;
mod volterra;

pub use analytic::{analytic_pbg, analytic_pbg_with_signs, calibrate_branch_signs, cubic_roots};
pub use asymptote::{bound_state_asymptote, large_detuning_asymptote, large_detuning_regime_ok};
pub use kraus::{kraus_channel, KrausPair};
pub use markovian::{markovian_c, markovian_rate_shift};
pub use rates::{decoherence_rates, DecoherenceRates};
pub use volterra::{convergence_report, solve_volterra, solve_volterra_checked, ConvergenceReport};

use num_complex::Complex64;

use crate::error::{CoreError, CoreResult};
use crate::spectral::{AtomParams, SpectralModel};

/// Largest |c| overshoot tolerated before a trajectory is rejected.
pub const AMPLITUDE_BOUND_TOL: f64 = 1e-9;

/// Which route produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Volterra,
    AnalyticPbg,
    Markovian,
    BoundStateAsymptotic,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Volterra => "volterra",
            Method::AnalyticPbg => "analytic-pbg",
            Method::Markovian => "markovian",
            Method::BoundStateAsymptotic => "bound-state-asymptotic",
        }
    }
}

/// Uniform-grid samples of the decoherence amplitude, tagged with the
/// route that produced them.
///
/// The grid starts at t = 0 with step `h`. Initial-value methods pin
/// c(0) = 1 exactly; the bound-state asymptote starts at its plateau value
/// instead. Every sample obeys |c| <= 1 + 1e-9.
#[derive(Debug, Clone)]
pub struct AmplitudeTrajectory {
    h: f64,
    c: Vec<Complex64>,
    method: Method,
    atom: AtomParams,
    model: SpectralModel,
    /// Per-root erfc argument signs used by the band-edge closed form.
    branch_signs: Option<[i8; 3]>,
}

impl AmplitudeTrajectory {
    pub(crate) fn new(
        h: f64,
        c: Vec<Complex64>,
        method: Method,
        atom: AtomParams,
        model: SpectralModel,
        branch_signs: Option<[i8; 3]>,
    ) -> CoreResult<Self> {
        if !(h > 0.0) {
            return Err(CoreError::NonPositive { name: "h", value: h });
        }
        if c.is_empty() {
            return Err(CoreError::GridMismatch { t_max: 0.0, h });
        }
        if method != Method::BoundStateAsymptotic && c[0] != Complex64::new(1.0, 0.0) {
            return Err(CoreError::AmplitudeBound {
                index: 0,
                modulus: c[0].norm(),
            });
        }
        for (k, v) in c.iter().enumerate() {
            let m = v.norm();
            if !(m <= 1.0 + AMPLITUDE_BOUND_TOL) {
                return Err(CoreError::AmplitudeBound {
                    index: k,
                    modulus: m,
                });
            }
        }
        Ok(AmplitudeTrajectory {
            h,
            c,
            method,
            atom,
            model,
            branch_signs,
        })
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn t(&self, k: usize) -> f64 {
        k as f64 * self.h
    }

    pub fn t_max(&self) -> f64 {
        self.t(self.c.len() - 1)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.c
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn atom(&self) -> AtomParams {
        self.atom
    }

    pub fn model(&self) -> SpectralModel {
        self.model
    }

    pub fn branch_signs(&self) -> Option<[i8; 3]> {
        self.branch_signs
    }

    /// Grid index of a time that must lie on the grid.
    pub fn index_of_time(&self, t: f64) -> CoreResult<usize> {
        let k = (t / self.h).round();
        let tol = 1e-9 * t.abs().max(1.0);
        if k < 0.0 || (k * self.h - t).abs() > tol || k as usize >= self.c.len() {
            return Err(CoreError::TimeOffGrid { t, h: self.h });
        }
        Ok(k as usize)
    }

    /// Mean of |c| over the grid points with t in [t_lo, t_hi].
    pub fn window_mean_abs(&self, t_lo: f64, t_hi: f64) -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for (k, v) in self.c.iter().enumerate() {
            let t = self.t(k);
            if t >= t_lo && t <= t_hi {
                sum += v.norm();
                count += 1;
            }
        }
        if count == 0 {
            f64::NAN
        } else {
            sum / count as f64
        }
    }
}

/// Validate a (t_max, h) pair and return the step count N (grid has N+1 nodes).
pub(crate) fn grid_steps(t_max: f64, h: f64) -> CoreResult<usize> {
    if !(t_max > 0.0) {
        return Err(CoreError::NonPositive {
            name: "t_max",
            value: t_max,
        });
    }
    if !(h > 0.0) {
        return Err(CoreError::NonPositive { name: "h", value: h });
    }
    let n = (t_max / h).round();
    if n < 1.0 || (n * h - t_max).abs() > 1e-9 * t_max.max(1.0) {
        return Err(CoreError::GridMismatch { t_max, h });
    }
    Ok(n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::SpectralModel;

    fn dummy_parts() -> (AtomParams, SpectralModel) {
        (
            AtomParams::new(80.0),
            SpectralModel::photonic_band_gap(100.0, 7.277).unwrap(),
        )
    }

    #[test]
    fn rejects_initial_value_not_one() {
        let (atom, model) = dummy_parts();
        let c = vec![Complex64::new(0.9, 0.0), Complex64::new(0.8, 0.0)];
        assert!(AmplitudeTrajectory::new(0.1, c, Method::Volterra, atom, model, None).is_err());
    }

    #[test]
    fn rejects_amplitude_above_unity() {
        let (atom, model) = dummy_parts();
        let c = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0 + 1e-6, 0.0)];
        let err = AmplitudeTrajectory::new(0.1, c, Method::Volterra, atom, model, None);
        assert!(matches!(err, Err(CoreError::AmplitudeBound { index: 1, .. })));
    }

    #[test]
    fn asymptotic_method_may_start_below_one() {
        let (atom, model) = dummy_parts();
        let c = vec![Complex64::new(0.92, 0.0), Complex64::new(0.92, 0.0)];
        assert!(AmplitudeTrajectory::new(
            0.1,
            c,
            Method::BoundStateAsymptotic,
            atom,
            model,
            None
        )
        .is_ok());
    }

    #[test]
    fn time_index_roundtrip_and_off_grid() {
        let (atom, model) = dummy_parts();
        let c = vec![Complex64::new(1.0, 0.0); 11];
        let traj = AmplitudeTrajectory::new(0.1, c, Method::Markovian, atom, model, None).unwrap();
        assert_eq!(traj.index_of_time(0.5).unwrap(), 5);
        assert_eq!(traj.index_of_time(1.0).unwrap(), 10);
        assert!(traj.index_of_time(0.55).is_err());
        assert!(traj.index_of_time(1.1).is_err());
    }

    #[test]
    fn grid_steps_checks_divisibility() {
        assert_eq!(grid_steps(1.0, 0.1).unwrap(), 10);
        assert_eq!(grid_steps(10.0, 1e-3).unwrap(), 10_000);
        assert!(grid_steps(1.0, 0.3).is_err());
        assert!(grid_steps(-1.0, 0.1).is_err());
        assert!(grid_steps(1.0, 0.0).is_err());
    }
}
