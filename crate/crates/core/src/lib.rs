//! Ramsey-interferometer frequency estimation under local dissipative
//! environments with memory.
//!
//! The library computes the single-atom decoherence amplitude c(t) for a
//! band-gapped environment (exact Volterra integration, Laplace closed form,
//! Markovian limit, long-time bound-state form), the discrete
//! atom-environment bound state and its residue, and the resulting
//! frequency-estimation precision for uncorrelated and GHZ probe states,
//! including the local-minima envelopes and the bound-state scaling law.
//!
//! Units: the vacuum emission rate gamma0 = 1 fixes the scale; frequencies
//! are in gamma0 and times in 1/gamma0. All solvers are deterministic pure
//! functions over immutable inputs and safe to run concurrently.

// `!(x > 0.0)` guards double as NaN rejection; `x <= 0.0` would admit NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod bound_state;
pub mod error;
pub mod io;
pub mod metrology;
pub mod spectral;

pub use amplitude::{
    analytic_pbg, analytic_pbg_with_signs, bound_state_asymptote, calibrate_branch_signs,
    convergence_report, cubic_roots, decoherence_rates, kraus_channel, large_detuning_asymptote,
    large_detuning_regime_ok, markovian_c, markovian_rate_shift, solve_volterra,
    solve_volterra_checked, AmplitudeTrajectory, ConvergenceReport, DecoherenceRates, KrausPair,
    Method,
};
pub use bound_state::{find_bound_state, spectrum_sweep, BoundStateResult, SpectrumSlice};
pub use error::{CoreError, CoreResult};
pub use metrology::{
    fisher_information, ideal_precision, min_precision_vs_n, precision_curve,
    precision_entangled, precision_uncorrelated, scaling_bound, AmplitudeFamily, AnalyticFamily,
    InputState, MarkovianFamily, PrecisionCurve, PrecisionEvaluator, ProbeConfig, ScalingRow,
    VolterraFamily,
};
pub use spectral::{
    correlation_kernel, pbg_beta, residue_integral, self_energy_y, AtomParams, SpectralModel,
    GAMMA0,
};
