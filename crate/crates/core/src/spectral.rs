//! Environment spectral densities and their closed-form integrals.
//!
//! Everything is expressed in units of the vacuum emission rate `gamma0 = 1`
//! (frequencies in gamma0, times in 1/gamma0). The band-gapped density has a
//! hard edge at `omega_c`:
//!
//! ```text
//! J(omega) = beta^(3/2) / (pi * sqrt(omega - omega_c))   for omega > omega_c
//! J(omega) = 0                                            otherwise
//! ```
//!
//! which is the unique density reproducing the cubic pole structure of the
//! band-edge amplitude; the flat variant models a structureless (Markovian)
//! environment through a constant rate and frequency shift instead of a
//! pointwise kernel.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{CoreError, CoreResult};

/// Reference rate fixing the unit system.
pub const GAMMA0: f64 = 1.0;

/// Environment spectral density variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralModel {
    /// Band-gapped density with edge `omega_c` and coupling scale `beta`,
    /// both in units of gamma0.
    PhotonicBandGap { omega_c: f64, beta: f64 },
    /// Structureless environment: decay rate `gamma_tilde` and Lamb shift
    /// `delta_omega`, in units of gamma0.
    FlatMarkovian { gamma_tilde: f64, delta_omega: f64 },
}

impl SpectralModel {
    pub fn photonic_band_gap(omega_c: f64, beta: f64) -> CoreResult<Self> {
        if !(omega_c > 0.0) {
            return Err(CoreError::NonPositive {
                name: "omega_c",
                value: omega_c,
            });
        }
        if !(beta > 0.0) {
            return Err(CoreError::NonPositive {
                name: "beta",
                value: beta,
            });
        }
        Ok(SpectralModel::PhotonicBandGap { omega_c, beta })
    }

    pub fn flat_markovian(gamma_tilde: f64, delta_omega: f64) -> CoreResult<Self> {
        if !(gamma_tilde >= 0.0) {
            return Err(CoreError::Negative {
                name: "gamma_tilde",
                value: gamma_tilde,
            });
        }
        Ok(SpectralModel::FlatMarkovian {
            gamma_tilde,
            delta_omega,
        })
    }

    /// Band edge, if the model has one.
    pub fn band_edge(&self) -> Option<f64> {
        match self {
            SpectralModel::PhotonicBandGap { omega_c, .. } => Some(*omega_c),
            SpectralModel::FlatMarkovian { .. } => None,
        }
    }

    /// Pointwise J(omega). Zero inside the gap; the flat model has no
    /// pointwise density and returns `None`.
    pub fn density(&self, omega: f64) -> Option<f64> {
        match self {
            SpectralModel::PhotonicBandGap { omega_c, beta } => Some(if omega > *omega_c {
                beta.powf(1.5) / (PI * (omega - omega_c).sqrt())
            } else {
                0.0
            }),
            SpectralModel::FlatMarkovian { .. } => None,
        }
    }
}

/// Atom parameters. `gamma0` is the unit and is not stored; the detuning is
/// always recomputed from `omega0` and the band edge, never cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomParams {
    pub omega0: f64,
}

impl AtomParams {
    pub fn new(omega0: f64) -> Self {
        AtomParams { omega0 }
    }

    /// delta = omega0 - omega_c.
    pub fn detuning(&self, model: &SpectralModel) -> Option<f64> {
        model.band_edge().map(|edge| self.omega0 - edge)
    }
}

/// Coupling scale of the band-gap model, beta = omega_c (pi gamma0 / 2 omega0)^(2/3).
pub fn pbg_beta(omega0: f64, omega_c: f64) -> CoreResult<f64> {
    if !(omega0 > 0.0) {
        return Err(CoreError::NonPositive {
            name: "omega0",
            value: omega0,
        });
    }
    if !(omega_c > 0.0) {
        return Err(CoreError::NonPositive {
            name: "omega_c",
            value: omega_c,
        });
    }
    Ok(omega_c * (PI * GAMMA0 / (2.0 * omega0)).powf(2.0 / 3.0))
}

/// Environmental correlation function f(tau) = integral J(omega) e^{-i omega tau} d omega.
///
/// Band-gap closed form: f(tau) = beta^(3/2) e^{-i(omega_c tau + pi/4)} / sqrt(pi tau),
/// weakly singular (integrable) at tau = 0. Point evaluation at tau = 0 is
/// rejected; convolution against this kernel must go through the
/// product-integration weights in the Volterra solver.
pub fn correlation_kernel(model: &SpectralModel, tau: f64) -> CoreResult<Complex64> {
    if tau < 0.0 {
        return Err(CoreError::Negative {
            name: "tau",
            value: tau,
        });
    }
    match model {
        SpectralModel::PhotonicBandGap { omega_c, beta } => {
            if tau == 0.0 {
                return Err(CoreError::SingularKernelPoint);
            }
            let modulus = beta.powf(1.5) / (PI * tau).sqrt();
            let phase = -(omega_c * tau + FRAC_PI_4);
            Ok(Complex64::from_polar(modulus, phase))
        }
        SpectralModel::FlatMarkovian { .. } => Err(CoreError::DistributionalKernel),
    }
}

/// Self-energy y(E) = omega0 + integral J(omega)/(E - omega) d omega, for E
/// strictly below the band edge.
///
/// Band-gap closed form: y(E) = omega0 - beta^(3/2) / sqrt(omega_c - E).
/// Monotonically decreasing in E, diverging to -inf at the edge.
pub fn self_energy_y(model: &SpectralModel, e: f64, omega0: f64) -> CoreResult<f64> {
    match model {
        SpectralModel::PhotonicBandGap { omega_c, beta } => {
            if e >= *omega_c {
                return Err(CoreError::AboveBandEdge {
                    e,
                    band_edge: *omega_c,
                });
            }
            Ok(omega0 - beta.powf(1.5) / (omega_c - e).sqrt())
        }
        SpectralModel::FlatMarkovian { .. } => Err(CoreError::RequiresBandGap {
            op: "self_energy_y",
        }),
    }
}

/// The residue integral, integral J(omega)/(E0 - omega)^2 d omega, entering
/// Z = [1 + integral]^{-1}.
///
/// Band-gap closed form: beta^(3/2) / (2 (omega_c - E0)^(3/2)).
pub fn residue_integral(model: &SpectralModel, e0: f64) -> CoreResult<f64> {
    match model {
        SpectralModel::PhotonicBandGap { omega_c, beta } => {
            if e0 >= *omega_c {
                return Err(CoreError::AboveBandEdge {
                    e: e0,
                    band_edge: *omega_c,
                });
            }
            Ok(beta.powf(1.5) / (2.0 * (omega_c - e0).powf(1.5)))
        }
        SpectralModel::FlatMarkovian { .. } => Err(CoreError::RequiresBandGap {
            op: "residue_integral",
        }),
    }
}
