//! Long-time and large-detuning limits of the amplitude.

use num_complex::Complex64;

use crate::bound_state::BoundStateResult;
use crate::error::{CoreError, CoreResult};
use crate::spectral::{AtomParams, SpectralModel};

use super::{grid_steps, AmplitudeTrajectory, Method};

/// Long-time bound-state form c(t) = Z e^{-i E0 t}.
pub fn bound_state_asymptote(
    model: &SpectralModel,
    atom: AtomParams,
    bs: &BoundStateResult,
    t_max: f64,
    h: f64,
) -> CoreResult<AmplitudeTrajectory> {
    let (e0, z) = match bs {
        BoundStateResult::Bound { e0, z, .. } => (*e0, *z),
        BoundStateResult::Unbound => return Err(CoreError::NotBound),
    };
    let n_steps = grid_steps(t_max, h)?;
    let mut c = Vec::with_capacity(n_steps + 1);
    for n in 0..=n_steps {
        let t = n as f64 * h;
        c.push(Complex64::from_polar(z, -e0 * t));
    }
    AmplitudeTrajectory::new(h, c, Method::BoundStateAsymptotic, atom, *model, None)
}

/// Whether the atom sits far enough from the edge (|delta| >= 10 beta) for
/// the large-detuning form to apply.
pub fn large_detuning_regime_ok(model: &SpectralModel, atom: AtomParams) -> CoreResult<bool> {
    match model {
        SpectralModel::PhotonicBandGap { omega_c, beta } => {
            Ok((atom.omega0 - omega_c).abs() >= 10.0 * beta)
        }
        SpectralModel::FlatMarkovian { .. } => Err(CoreError::RequiresBandGap {
            op: "large_detuning_regime_ok",
        }),
    }
}

/// Large-|delta| modulus
///
/// ```text
/// |c(t)| = | [1 + (1/2)(-beta/delta)^(3/2)]^{-1} e^{-(beta^3/delta)^(1/2) t} |
/// ```
///
/// with principal complex powers. For delta < 0 the exponent is purely
/// imaginary and only the plateau prefactor survives; for delta > 0 the
/// modulus decays at the constant rate sqrt(beta^3/delta).
pub fn large_detuning_asymptote(
    model: &SpectralModel,
    atom: AtomParams,
    t: f64,
) -> CoreResult<f64> {
    let (omega_c, beta) = match model {
        SpectralModel::PhotonicBandGap { omega_c, beta } => (*omega_c, *beta),
        SpectralModel::FlatMarkovian { .. } => {
            return Err(CoreError::RequiresBandGap {
                op: "large_detuning_asymptote",
            })
        }
    };
    let delta = atom.omega0 - omega_c;
    if delta == 0.0 {
        return Err(CoreError::ZeroDetuning);
    }
    let ratio = Complex64::new(-beta / delta, 0.0);
    let prefactor = (Complex64::new(1.0, 0.0) + 0.5 * ratio.powf(1.5)).inv();
    let rate = Complex64::new(beta.powi(3) / delta, 0.0).sqrt();
    Ok((prefactor * (-rate * t).exp()).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pbg(beta: f64) -> SpectralModel {
        SpectralModel::photonic_band_gap(100.0, beta).unwrap()
    }

    #[test]
    fn asymptote_modulus_is_constant_z() {
        let model = pbg(7.277);
        let atom = AtomParams::new(80.0);
        let bs = BoundStateResult::Bound {
            e0: 75.992,
            z: 0.923,
            residual: 0.0,
        };
        let traj = bound_state_asymptote(&model, atom, &bs, 2.0, 0.01).unwrap();
        for v in traj.values() {
            assert!((v.norm() - 0.923).abs() < 1e-12);
        }
        assert!(matches!(
            bound_state_asymptote(&model, atom, &BoundStateResult::Unbound, 1.0, 0.01),
            Err(CoreError::NotBound)
        ));
    }

    #[test]
    fn negative_detuning_plateau_is_time_independent() {
        let model = pbg(7.277);
        let atom = AtomParams::new(100.0 - 500.0);
        let a0 = large_detuning_asymptote(&model, atom, 0.0).unwrap();
        let a5 = large_detuning_asymptote(&model, atom, 5.0).unwrap();
        assert!((a0 - a5).abs() < 1e-12);
        let expected = 1.0 / (1.0 + 0.5 * (7.277f64 / 500.0).powf(1.5));
        assert!((a0 - expected).abs() < 1e-12);
    }

    #[test]
    fn plateau_tends_to_unity_deep_in_gap() {
        let model = pbg(7.277);
        let mut prev = 0.0;
        for delta in [-100.0, -1000.0, -10_000.0] {
            let atom = AtomParams::new(100.0 + delta);
            let a = large_detuning_asymptote(&model, atom, 1.0).unwrap();
            assert!(a > prev);
            prev = a;
        }
        assert!(prev > 0.9999);
    }

    #[test]
    fn positive_detuning_decays_at_constant_rate() {
        let model = pbg(7.277);
        let atom = AtomParams::new(600.0); // delta = +500
        let rate = (7.277f64.powi(3) / 500.0).sqrt();
        let a1 = large_detuning_asymptote(&model, atom, 1.0).unwrap();
        let a2 = large_detuning_asymptote(&model, atom, 2.0).unwrap();
        assert!(((a1 / a2).ln() - rate).abs() < 1e-12);
    }

    #[test]
    fn regime_gate_and_zero_detuning() {
        let model = pbg(7.277);
        assert!(large_detuning_regime_ok(&model, AtomParams::new(600.0)).unwrap());
        assert!(!large_detuning_regime_ok(&model, AtomParams::new(95.0)).unwrap());
        assert!(matches!(
            large_detuning_asymptote(&model, AtomParams::new(100.0), 1.0),
            Err(CoreError::ZeroDetuning)
        ));
    }
}
