use thiserror::Error;

/// Errors raised by the numerics layer.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("parameter `{name}` must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },

    #[error("band-gap correlation kernel is singular at tau = 0; use product-integration weights")]
    SingularKernelPoint,

    #[error("flat-Markovian kernel is distributional (a delta function); use the Markovian amplitude path")]
    DistributionalKernel,

    #[error("energy {e} is not strictly below the band edge {band_edge}")]
    AboveBandEdge { e: f64, band_edge: f64 },

    #[error("operation `{op}` requires a photonic band-gap model")]
    RequiresBandGap { op: &'static str },

    #[error("t_max = {t_max} is not an integral multiple of h = {h}")]
    GridMismatch { t_max: f64, h: f64 },

    #[error("time {t} does not lie on the trajectory grid (step {h})")]
    TimeOffGrid { t: f64, h: f64 },

    #[error("resolution insufficient: step-halving error ratio {ratio:.3} < {required:.1}; retry with h <= {suggested_h:.3e}")]
    ResolutionInsufficient {
        ratio: f64,
        required: f64,
        suggested_h: f64,
    },

    #[error("degenerate cubic roots (separation {separation:.3e}); fall back to the Volterra solver")]
    DegenerateRoots { separation: f64 },

    #[error("no bracket found for the pole condition within {reached:.3e} below the band edge; malformed model")]
    NoBracket { reached: f64 },

    #[error("amplitude vanishes; rates undefined beyond t* at grid index {cutoff_index}")]
    AmplitudeVanishes { cutoff_index: usize },

    #[error("|c| = {modulus} exceeds 1 + 1e-9 at grid index {index}")]
    AmplitudeBound { index: usize, modulus: f64 },

    #[error("no Markovian decay rate inside the gap (delta = {delta} <= 0)")]
    NoMarkovianRate { delta: f64 },

    #[error("delta = 0 sits on the band edge; the large-detuning form is undefined there")]
    ZeroDetuning,

    #[error("outcome {index} has zero probability but nonzero derivative: singular outcome")]
    SingularOutcome { index: usize },

    #[error("probabilities sum to {sum}, not 1 within 1e-9")]
    NotNormalized { sum: f64 },

    #[error("no bound state; the long-time forms require one")]
    NotBound,

    #[error("omega0-derivative failed the step-halving consistency check (defect {defect:.3e})")]
    DerivativeUnstable { defect: f64 },

    #[error("grid under-resolves fringes: {samples_per_period:.1} samples per oscillation period, need >= {required:.1}")]
    UnderResolvedFringes {
        samples_per_period: f64,
        required: f64,
    },

    #[error("atom count {n} exceeds the range-safety cap {cap}; c^n underflows and Z^-(n+1) overflows beyond it")]
    AtomCountCap { n: u32, cap: u32 },

    #[error("probe requires at least one atom")]
    EmptyProbe,

    #[error("omega0 grid must be nonempty and strictly ascending")]
    BadSweepGrid,
}

pub type CoreResult<T> = Result<T, CoreError>;
