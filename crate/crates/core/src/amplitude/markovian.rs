//! Markovian (memoryless) amplitude: c(t) = exp[-(gamma~/2 + i(omega0 + d_omega)) t].

use num_complex::Complex64;

use crate::error::{CoreError, CoreResult};
use crate::spectral::{AtomParams, SpectralModel};

use super::{grid_steps, AmplitudeTrajectory, Method};

/// Markovian decay rate and frequency shift for a model.
///
/// Flat model: both given directly. Band-gap model with the atom above the
/// edge: gamma~ = 2 pi J(omega0) = 2 sqrt(beta^3 / delta); the principal-value
/// Lamb shift vanishes for the inverse-sqrt edge density, so d_omega = 0.
/// Inside the gap J(omega0) = 0 and no Markovian rate exists.
pub fn markovian_rate_shift(model: &SpectralModel, atom: AtomParams) -> CoreResult<(f64, f64)> {
    match model {
        SpectralModel::FlatMarkovian {
            gamma_tilde,
            delta_omega,
        } => Ok((*gamma_tilde, *delta_omega)),
        SpectralModel::PhotonicBandGap { omega_c, beta } => {
            let delta = atom.omega0 - omega_c;
            if delta <= 0.0 {
                return Err(CoreError::NoMarkovianRate { delta });
            }
            Ok((2.0 * (beta.powi(3) / delta).sqrt(), 0.0))
        }
    }
}

/// Markovian amplitude on a uniform grid.
pub fn markovian_c(
    model: &SpectralModel,
    atom: AtomParams,
    t_max: f64,
    h: f64,
) -> CoreResult<AmplitudeTrajectory> {
    let (gamma_tilde, delta_omega) = markovian_rate_shift(model, atom)?;
    let n_steps = grid_steps(t_max, h)?;
    let mut c = Vec::with_capacity(n_steps + 1);
    c.push(Complex64::new(1.0, 0.0));
    for n in 1..=n_steps {
        let t = n as f64 * h;
        let modulus = (-0.5 * gamma_tilde * t).exp();
        let phase = -(atom.omega0 + delta_omega) * t;
        c.push(Complex64::from_polar(modulus, phase));
    }
    AmplitudeTrajectory::new(h, c, Method::Markovian, atom, *model, None)
}
