//! SI-to-internal unit conversion: frequencies in GHz and the reference rate
//! in MHz map onto the gamma0 = 1 scale.

use metrol_core::pbg_beta;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvertedUnits {
    /// Band edge in gamma0 units.
    pub omega_c: f64,
    /// Atom frequency in gamma0 units.
    pub omega0: f64,
    /// Detuning omega0 - omega_c in gamma0 units.
    pub delta: f64,
    /// Band-gap coupling scale at these parameters.
    pub beta: f64,
}

/// Convert (omega_c in GHz, gamma0 in MHz, omega0 in GHz) into gamma0 units.
pub fn convert_units(
    omega_c_ghz: f64,
    gamma0_mhz: f64,
    omega0_ghz: f64,
) -> Result<ConvertedUnits, CliError> {
    for (name, value) in [
        ("omega-c-ghz", omega_c_ghz),
        ("gamma0-mhz", gamma0_mhz),
        ("omega0-ghz", omega0_ghz),
    ] {
        if !(value > 0.0) {
            return Err(CliError::Config(format!("{name}: must be positive, got {value}")));
        }
    }
    let omega_c = omega_c_ghz * 1e3 / gamma0_mhz;
    let omega0 = omega0_ghz * 1e3 / gamma0_mhz;
    let beta = pbg_beta(omega0, omega_c).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(ConvertedUnits {
        omega_c,
        omega0,
        delta: omega0 - omega_c,
        beta,
    })
}
