//! Discrete eigenenergy of the atom-environment single-excitation spectrum
//! and its residue.
//!
//! The pole condition y(E) = E is solved below the band edge, where y is
//! strictly decreasing; the root is unique when it exists. For the band-gap
//! closed form y diverges to -inf at the edge, so a root always exists there;
//! `Unbound` is structurally supported for spectral models whose y(omega_c)
//! stays at or above omega_c.

use crate::error::{CoreError, CoreResult};
use crate::spectral::{pbg_beta, residue_integral, self_energy_y, AtomParams, SpectralModel};

/// Absolute bisection tolerance on E, in gamma0 units.
pub const ENERGY_TOL: f64 = 1e-12;
/// Offset from the band edge where y is evaluated last; y diverges at the edge.
pub const EDGE_OFFSET: f64 = 1e-9;
/// Bracket expansion limit below the band edge.
const BRACKET_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundStateResult {
    Bound {
        /// Discrete eigenenergy below the band edge, units gamma0.
        e0: f64,
        /// Residue Z in (0, 1].
        z: f64,
        /// |y(E0) - E0| at the returned root.
        residual: f64,
    },
    Unbound,
}

impl BoundStateResult {
    pub fn exists(&self) -> bool {
        matches!(self, BoundStateResult::Bound { .. })
    }

    pub fn e0(&self) -> Option<f64> {
        match self {
            BoundStateResult::Bound { e0, .. } => Some(*e0),
            BoundStateResult::Unbound => None,
        }
    }

    pub fn z(&self) -> Option<f64> {
        match self {
            BoundStateResult::Bound { z, .. } => Some(*z),
            BoundStateResult::Unbound => None,
        }
    }

    pub fn residual(&self) -> Option<f64> {
        match self {
            BoundStateResult::Bound { residual, .. } => Some(*residual),
            BoundStateResult::Unbound => None,
        }
    }
}

/// One point of the energy-spectrum sweep.
#[derive(Debug, Clone)]
pub struct SpectrumSlice {
    pub omega0: f64,
    /// Band edge omega_c; the continuum [omega_c, inf) sits above it.
    pub band_edge: f64,
    /// Bound energy strictly below the edge, when the point solved.
    pub bound_energy: Option<f64>,
    /// Residue at the bound energy, when the point solved.
    pub z: Option<f64>,
    /// Failure description for invalid points.
    pub error: Option<String>,
}

impl SpectrumSlice {
    pub fn is_valid(&self) -> bool {
        self.error.is_none()
    }
}

/// Find the discrete root of y(E) = E below the band edge by bisection with
/// downward bracket expansion, then polish it with Newton steps on the
/// closed-form derivative.
pub fn find_bound_state(model: &SpectralModel, atom: AtomParams) -> CoreResult<BoundStateResult> {
    let omega_c = match model {
        SpectralModel::PhotonicBandGap { omega_c, .. } => *omega_c,
        SpectralModel::FlatMarkovian { .. } => {
            return Err(CoreError::RequiresBandGap {
                op: "find_bound_state",
            })
        }
    };
    let g = |e: f64| -> CoreResult<f64> { Ok(self_energy_y(model, e, atom.omega0)? - e) };

    let hi = omega_c - EDGE_OFFSET;
    if g(hi)? >= 0.0 {
        // y stays above E all the way to the edge: no discrete root below it.
        return Ok(BoundStateResult::Unbound);
    }

    // Expand the lower bracket downward from the smaller of omega0 and the
    // edge (the root cannot sit above either) until g > 0 there.
    let anchor = atom.omega0.min(hi);
    let mut span = 1.0;
    let mut lo = anchor - span;
    while g(lo)? <= 0.0 {
        span *= 2.0;
        if span > BRACKET_LIMIT {
            return Err(CoreError::NoBracket { reached: span });
        }
        lo = anchor - span;
    }

    let mut a = lo;
    let mut b = hi;
    for _ in 0..200 {
        if b - a <= ENERGY_TOL {
            break;
        }
        let mid = 0.5 * (a + b);
        if g(mid)? > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mut e0 = 0.5 * (a + b);

    // Newton polish: g'(E) = -(1 + residue integral), available in closed form.
    for _ in 0..8 {
        let val = g(e0)?;
        let slope = -(1.0 + residue_integral(model, e0)?);
        let next = e0 - val / slope;
        if next < omega_c && next.is_finite() {
            e0 = next;
        } else {
            break;
        }
        if val.abs() < 1e-13 {
            break;
        }
    }

    let residual = g(e0)?.abs();
    let z = 1.0 / (1.0 + residue_integral(model, e0)?);
    Ok(BoundStateResult::Bound { e0, z, residual })
}

/// Sweep the bound state over an ascending omega0 grid at fixed band edge,
/// recomputing beta per point. Per-point failures mark the slice invalid
/// instead of aborting the sweep.
pub fn spectrum_sweep(omega0_grid: &[f64], omega_c: f64) -> CoreResult<Vec<SpectrumSlice>> {
    if omega0_grid.is_empty() || omega0_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CoreError::BadSweepGrid);
    }
    let mut slices = Vec::with_capacity(omega0_grid.len());
    for &omega0 in omega0_grid {
        let point = pbg_beta(omega0, omega_c)
            .and_then(|beta| SpectralModel::photonic_band_gap(omega_c, beta))
            .and_then(|model| find_bound_state(&model, AtomParams::new(omega0)));
        let slice = match point {
            Ok(BoundStateResult::Bound { e0, z, .. }) => SpectrumSlice {
                omega0,
                band_edge: omega_c,
                bound_energy: Some(e0),
                z: Some(z),
                error: None,
            },
            Ok(BoundStateResult::Unbound) => SpectrumSlice {
                omega0,
                band_edge: omega_c,
                bound_energy: None,
                z: None,
                error: None,
            },
            Err(e) => SpectrumSlice {
                omega0,
                band_edge: omega_c,
                bound_energy: None,
                z: None,
                error: Some(e.to_string()),
            },
        };
        slices.push(slice);
    }
    Ok(slices)
}
