//! Physical constants (CODATA 2018, exact where SI defines them).
//!
//! Every SI conversion in the crate reads from here.

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// ħc in J·m.
pub const HBAR_C: f64 = HBAR * SPEED_OF_LIGHT;

pub const NM_PER_M: f64 = 1e9;

/// Dimensionless Matsubara frequency Ω_n = 2πn k_B T / (ħ ω_p).
///
/// Only the zero-temperature force is computed in this crate; the helper is
/// kept so finite-temperature callers share the same convention.
pub fn matsubara_frequency(n: u32, temperature_k: f64, omega_p: f64) -> f64 {
    2.0 * std::f64::consts::PI * f64::from(n) * BOLTZMANN * temperature_k / (HBAR * omega_p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_c_matches_mev_fm() {
        // 197.326 980 4 MeV fm
        let mev_fm = 197.326_980_4 * 1.602_176_634e-13 * 1e-15;
        assert!((HBAR_C - mev_fm).abs() / mev_fm < 1e-9);
    }

    #[test]
    fn matsubara_zero_is_static() {
        assert_eq!(matsubara_frequency(0, 300.0, 1.37e16), 0.0);
        let first = matsubara_frequency(1, 300.0, 1.37e16);
        assert!((matsubara_frequency(2, 300.0, 1.37e16) / first - 2.0).abs() < 1e-15);
        // 2π k_B T/ħ at 300 K is 2.47e14 rad/s
        assert!((first * 1.37e16 / 2.467e14 - 1.0).abs() < 1e-3);
    }
}
