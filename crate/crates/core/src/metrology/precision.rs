//! Dissipative precision formulas.
//!
//! For the uncorrelated input,
//!
//! ```text
//! d_omega0 = { n T [d Re c(t) / d omega0]^2 / (t [1 - Re^2 c(t)]) }^{-1/2}
//! ```
//!
//! and for the GHZ input the same with c^n(t) and prefactor T. The omega0
//! derivative is a central finite difference over two full re-solves at
//! omega0 +- h_omega, with a step-halving consistency check; beta and the
//! band edge stay fixed while omega0 varies, matching the convention that
//! ties d E0 / d omega0 to the residue Z.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::amplitude::{analytic_pbg, markovian_c, solve_volterra, AmplitudeTrajectory};
use crate::error::{CoreError, CoreResult};
use crate::spectral::{AtomParams, SpectralModel};

use super::{InputState, PrecisionCurve, ProbeConfig};

/// Default omega0 finite-difference step, units gamma0.
pub const DEFAULT_H_OMEGA: f64 = 1e-4;
/// Derivative magnitude below which a point carries no information.
const DERIVATIVE_FLOOR: f64 = 1e-12;
/// Relative disagreement tolerated between the h and h/2 derivative estimates.
const DERIVATIVE_CHECK_TOL: f64 = 1e-3;
/// Minimum fringe sampling demanded from precision grids.
const MIN_SAMPLES_PER_FRINGE: f64 = 6.0;

/// A solver for the amplitude as a function of the bare frequency, with every
/// other model parameter frozen.
pub trait AmplitudeFamily {
    /// Center frequency the precision is evaluated at.
    fn omega0(&self) -> f64;
    /// Full re-solve at a shifted frequency.
    fn trajectory(&self, omega0: f64) -> CoreResult<AmplitudeTrajectory>;
}

macro_rules! solver_family {
    ($(#[$doc:meta])* $name:ident, $solver:path) => {
        $(#[$doc])*
        #[derive(Debug, Clone)]
        pub struct $name {
            pub model: SpectralModel,
            pub omega0: f64,
            pub t_max: f64,
            pub h: f64,
        }

        impl AmplitudeFamily for $name {
            fn omega0(&self) -> f64 {
                self.omega0
            }

            fn trajectory(&self, omega0: f64) -> CoreResult<AmplitudeTrajectory> {
                $solver(&self.model, AtomParams::new(omega0), self.t_max, self.h)
            }
        }
    };
}

solver_family!(
    /// Family backed by the exact Volterra solver.
    VolterraFamily,
    solve_volterra
);
solver_family!(
    /// Family backed by the band-edge closed form.
    AnalyticFamily,
    analytic_pbg
);
solver_family!(
    /// Family backed by the Markovian exponential.
    MarkovianFamily,
    markovian_c
);

impl<F: AmplitudeFamily + ?Sized> AmplitudeFamily for &F {
    fn omega0(&self) -> f64 {
        (**self).omega0()
    }

    fn trajectory(&self, omega0: f64) -> CoreResult<AmplitudeTrajectory> {
        (**self).trajectory(omega0)
    }
}

/// Re c^n at the center frequency and its omega0 derivative, on the full grid.
struct DerivedSignal {
    re_cn: Vec<f64>,
    dre_cn: Vec<f64>,
}

/// Precision engine over one amplitude family. Trajectories and derived
/// signals are cached; reads are lock-shared, insertion single-writer.
pub struct PrecisionEvaluator<F: AmplitudeFamily> {
    family: F,
    h_omega: f64,
    verify_derivative: bool,
    trajectories: RwLock<HashMap<u64, Arc<AmplitudeTrajectory>>>,
    signals: RwLock<HashMap<u32, Arc<DerivedSignal>>>,
}

impl<F: AmplitudeFamily> PrecisionEvaluator<F> {
    pub fn new(family: F) -> Self {
        PrecisionEvaluator {
            family,
            h_omega: DEFAULT_H_OMEGA,
            verify_derivative: true,
            trajectories: RwLock::new(HashMap::new()),
            signals: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_h_omega(mut self, h_omega: f64) -> Self {
        self.h_omega = h_omega;
        self
    }

    /// Disable the h/2 derivative consistency re-solves (two fewer solves).
    pub fn without_derivative_check(mut self) -> Self {
        self.verify_derivative = false;
        self
    }

    pub fn family(&self) -> &F {
        &self.family
    }

    fn trajectory_at(&self, omega0: f64) -> CoreResult<Arc<AmplitudeTrajectory>> {
        let key = omega0.to_bits();
        if let Some(hit) = self.trajectories.read().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let solved = Arc::new(self.family.trajectory(omega0)?);
        let mut guard = self.trajectories.write().unwrap();
        Ok(Arc::clone(guard.entry(key).or_insert(solved)))
    }

    /// Center trajectory (useful for grid inspection).
    pub fn center_trajectory(&self) -> CoreResult<Arc<AmplitudeTrajectory>> {
        self.trajectory_at(self.family.omega0())
    }

    fn finite_difference(
        plus: &AmplitudeTrajectory,
        minus: &AmplitudeTrajectory,
        n: u32,
        h_omega: f64,
    ) -> Vec<f64> {
        plus.values()
            .iter()
            .zip(minus.values())
            .map(|(p, m)| (p.powu(n).re - m.powu(n).re) / (2.0 * h_omega))
            .collect()
    }

    fn signal_for(&self, n: u32) -> CoreResult<Arc<DerivedSignal>> {
        if let Some(hit) = self.signals.read().unwrap().get(&n) {
            return Ok(Arc::clone(hit));
        }
        let w0 = self.family.omega0();
        let center = self.trajectory_at(w0)?;
        let plus = self.trajectory_at(w0 + self.h_omega)?;
        let minus = self.trajectory_at(w0 - self.h_omega)?;
        if plus.len() != center.len() || minus.len() != center.len() {
            return Err(CoreError::GridMismatch {
                t_max: center.t_max(),
                h: center.step(),
            });
        }
        let mut dre_cn = Self::finite_difference(&plus, &minus, n, self.h_omega);

        if self.verify_derivative {
            let plus_half = self.trajectory_at(w0 + 0.5 * self.h_omega)?;
            let minus_half = self.trajectory_at(w0 - 0.5 * self.h_omega)?;
            let dre_half = Self::finite_difference(&plus_half, &minus_half, n, 0.5 * self.h_omega);
            let scale = dre_half
                .iter()
                .fold(0.0f64, |acc, v| acc.max(v.abs()))
                .max(DERIVATIVE_FLOOR);
            let defect = dre_cn
                .iter()
                .zip(&dre_half)
                .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
                / scale;
            if defect > DERIVATIVE_CHECK_TOL {
                return Err(CoreError::DerivativeUnstable { defect });
            }
            // Both estimates are in hand; their Richardson combination drops
            // the O(h^2) truncation to O(h^4), which the ideal-limit
            // exactness demands at large n t.
            for (d, d_half) in dre_cn.iter_mut().zip(&dre_half) {
                *d = (4.0 * d_half - *d) / 3.0;
            }
        }

        let re_cn = center.values().iter().map(|c| c.powu(n).re).collect();
        let signal = Arc::new(DerivedSignal { re_cn, dre_cn });
        let mut guard = self.signals.write().unwrap();
        Ok(Arc::clone(guard.entry(n).or_insert(signal)))
    }

    fn value_from_signal(
        signal: &DerivedSignal,
        config: &ProbeConfig,
        t: f64,
        k: usize,
    ) -> f64 {
        let prefactor = match config.input_state() {
            InputState::Uncorrelated => config.n() as f64 * config.t_total(),
            InputState::Ghz => config.t_total(),
        };
        let r = signal.re_cn[k];
        let g = signal.dre_cn[k];
        let visibility = 1.0 - r * r;
        if g.abs() < DERIVATIVE_FLOOR || visibility <= 0.0 {
            return f64::INFINITY;
        }
        (t * visibility / (prefactor * g * g)).sqrt()
    }

    fn power_for(&self, config: &ProbeConfig) -> u32 {
        match config.input_state() {
            InputState::Uncorrelated => 1,
            InputState::Ghz => config.n(),
        }
    }

    /// Precision at one encoding time, which must lie on the solver grid.
    pub fn precision_at(&self, config: &ProbeConfig, t: f64) -> CoreResult<f64> {
        if !(t > 0.0) {
            return Err(CoreError::NonPositive { name: "t", value: t });
        }
        let center = self.center_trajectory()?;
        let k = center.index_of_time(t)?;
        let signal = self.signal_for(self.power_for(config))?;
        Ok(Self::value_from_signal(&signal, config, t, k))
    }

    /// Precision on the full grid with the local-minima envelope.
    pub fn curve(&self, config: &ProbeConfig) -> CoreResult<PrecisionCurve> {
        let center = self.center_trajectory()?;
        self.check_fringe_resolution(&center, config)?;
        let signal = self.signal_for(self.power_for(config))?;
        let mut delta_omega = Vec::with_capacity(center.len());
        delta_omega.push(f64::INFINITY);
        for k in 1..center.len() {
            let t = center.t(k);
            delta_omega.push(Self::value_from_signal(&signal, config, t, k));
        }
        Ok(PrecisionCurve::new(center.step(), delta_omega, *config))
    }

    /// Demand at least six samples per fringe of Re c^n.
    fn check_fringe_resolution(
        &self,
        center: &AmplitudeTrajectory,
        config: &ProbeConfig,
    ) -> CoreResult<()> {
        let c = center.values();
        let mut acc = 0.0;
        let mut count = 0usize;
        for pair in c.windows(2) {
            if pair[0].norm() > 1e-12 && pair[1].norm() > 1e-12 {
                acc += (pair[1] * pair[0].conj()).arg().abs();
                count += 1;
            }
        }
        if count == 0 {
            return Ok(());
        }
        let phase_per_step = acc / count as f64 * self.power_for(config).max(1) as f64;
        if phase_per_step < 1e-12 {
            return Ok(());
        }
        let samples_per_period = std::f64::consts::TAU / phase_per_step;
        if samples_per_period < MIN_SAMPLES_PER_FRINGE {
            return Err(CoreError::UnderResolvedFringes {
                samples_per_period,
                required: MIN_SAMPLES_PER_FRINGE,
            });
        }
        Ok(())
    }
}

/// Ramsey precision with the uncorrelated input at encoding time `t`.
pub fn precision_uncorrelated<F: AmplitudeFamily>(
    evaluator: &PrecisionEvaluator<F>,
    config: &ProbeConfig,
    t: f64,
) -> CoreResult<f64> {
    evaluator.precision_at(&config.with_state(InputState::Uncorrelated), t)
}

/// Ramsey precision with the GHZ input at encoding time `t`.
pub fn precision_entangled<F: AmplitudeFamily>(
    evaluator: &PrecisionEvaluator<F>,
    config: &ProbeConfig,
    t: f64,
) -> CoreResult<f64> {
    evaluator.precision_at(&config.with_state(InputState::Ghz), t)
}

/// Precision over the whole grid with envelope detection.
pub fn precision_curve<F: AmplitudeFamily>(
    evaluator: &PrecisionEvaluator<F>,
    config: &ProbeConfig,
) -> CoreResult<PrecisionCurve> {
    evaluator.curve(config)
}
