//! Nonlocal response kernels f_t and f_l of the free-electron gas in the
//! Boltzmann approximation, on both frequency axes.
//!
//! The closed forms lose about log10(1/u²) digits to cancellation near u = 0,
//! so below `SERIES_CUTOFF` the kernels switch to their Taylor series. At the
//! crossover the truncated series (u^36 remainder) and the closed form agree
//! to about 1e-14.

use num_complex::Complex64;

pub(crate) const SERIES_CUTOFF: f64 = 0.3;
const SERIES_TERMS: usize = 18;

/// S(u) = L(u)/(2u) - 1 with L(u) = ln((1+u)/(1-u)) on the principal branch.
///
/// S = u²/3 + u⁴/5 + u⁶/7 + ...
pub fn log_ratio_excess(u: Complex64) -> Complex64 {
    if u.norm() < SERIES_CUTOFF {
        let u2 = u * u;
        let mut term = u2;
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 1..=SERIES_TERMS {
            sum += term / (2 * n + 1) as f64;
            term *= u2;
        }
        sum
    } else {
        let one = Complex64::new(1.0, 0.0);
        ((one + u) / (one - u)).ln() / (2.0 * u) - one
    }
}

/// Transverse kernel f_t(u) = (3/2u³)[u - ½(1-u²) ln((1+u)/(1-u))].
///
/// Equivalent to (3/2)[1 + S(u)(1 - 1/u²)]; series 1 + u²/5 + 3u⁴/35 + ...
pub fn transverse_real(u: Complex64) -> Complex64 {
    if u.norm() < SERIES_CUTOFF {
        let u2 = u * u;
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 1..=SERIES_TERMS {
            sum += term / (4 * n * n - 1) as f64;
            term *= u2;
        }
        sum * 3.0
    } else {
        let s = log_ratio_excess(u);
        (Complex64::new(1.0, 0.0) + s - s / (u * u)) * 1.5
    }
}

/// Longitudinal kernel including the relaxation-to-local-equilibrium
/// denominator:
///
/// f_l(u) = (3/u³)[-u + ½L] / [1 + iγ/Ω - (i/2u)(γ/Ω)L] = (3S/u²) / (1 - i(γ/Ω)S)
///
/// `gamma_over_omega` is ω_τ/ω. Series numerator 1 + 3u²/5 + 3u⁴/7 + ...
pub fn longitudinal_real(u: Complex64, gamma_over_omega: f64) -> Complex64 {
    let s = log_ratio_excess(u);
    let numerator = if u.norm() < SERIES_CUTOFF {
        let u2 = u * u;
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 1..=SERIES_TERMS {
            sum += term / (2 * n + 1) as f64;
            term *= u2;
        }
        sum * 3.0
    } else {
        s * 3.0 / (u * u)
    };
    numerator / relaxation_denominator(s, gamma_over_omega)
}

/// 1 + iγ/Ω - (i/2u)(γ/Ω)L written as 1 - i(γ/Ω)S(u).
pub fn relaxation_denominator(s: Complex64, gamma_over_omega: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) - Complex64::new(0.0, gamma_over_omega) * s
}

/// s(v) = (v - arctan v)/v³ = 1/3 - v²/5 + v⁴/7 - ...
fn arctan_excess(v: f64) -> f64 {
    if v < SERIES_CUTOFF {
        let v2 = v * v;
        let mut term = 1.0;
        let mut sum = 0.0;
        for n in 1..=SERIES_TERMS {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * term / (2 * n + 1) as f64;
            term *= v2;
        }
        sum
    } else {
        (v - v.atan()) / (v * v * v)
    }
}

/// Transverse kernel on the imaginary axis,
/// f_t(v) = (3/2v³)[-v + (1 + v²) arctan v]. Real, in (0, 1], decreasing.
pub fn transverse_imag(v: f64) -> f64 {
    if v < SERIES_CUTOFF {
        let v2 = v * v;
        let mut term = 1.0;
        let mut sum = 0.0;
        for n in 1..=SERIES_TERMS {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * term / (4 * n * n - 1) as f64;
            term *= v2;
        }
        3.0 * sum
    } else {
        1.5 * ((1.0 + v * v) * v.atan() - v) / (v * v * v)
    }
}

/// Longitudinal kernel on the imaginary axis,
/// f_l(v) = (3/v²)(v - arctan v) / (v + (γ/Ω)(v - arctan v)) = 3s/(1 + (γ/Ω)s v²).
pub fn longitudinal_imag(v: f64, gamma_over_omega: f64) -> f64 {
    let s = arctan_excess(v);
    3.0 * s / (1.0 + gamma_over_omega * s * v * v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_transverse(u: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let l = ((one + u) / (one - u)).ln();
        (u - (one - u * u) * l * 0.5) * 1.5 / (u * u * u)
    }

    fn closed_longitudinal(u: Complex64, g: f64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let l = ((one + u) / (one - u)).ln();
        let num = (-u + l * 0.5) * 3.0 / (u * u * u);
        let den = one + i * g - i / (2.0 * u) * g * l;
        num / den
    }

    #[test]
    fn series_matches_closed_form_at_crossover() {
        for &phase in &[-0.3, -1.0, -1.5, 0.0] {
            let u = Complex64::from_polar(SERIES_CUTOFF * 0.999, phase);
            let s = transverse_real(u);
            let c = closed_transverse(u);
            assert!((s - c).norm() < 1e-13, "{u}: {s} vs {c}");
            let s = longitudinal_real(u, 2.0);
            let c = closed_longitudinal(u, 2.0);
            assert!((s - c).norm() / c.norm() < 1e-13, "{u}: {s} vs {c}");
        }
        let v = SERIES_CUTOFF * 0.999;
        let closed = 1.5 * ((1.0 + v * v) * v.atan() - v) / (v * v * v);
        assert!((transverse_imag(v) - closed).abs() < 1e-13);
    }

    #[test]
    fn continuity_across_cutoff() {
        let below = Complex64::new(SERIES_CUTOFF * (1.0 - 1e-13), -1e-3);
        let above = Complex64::new(SERIES_CUTOFF * (1.0 + 1e-13), -1e-3);
        assert!((transverse_real(below) - transverse_real(above)).norm() < 1e-12);
        assert!((longitudinal_real(below, 0.5) - longitudinal_real(above, 0.5)).norm() < 1e-12);
        let (a, b) = (SERIES_CUTOFF * (1.0 - 1e-13), SERIES_CUTOFF * (1.0 + 1e-13));
        assert!((transverse_imag(a) - transverse_imag(b)).abs() < 1e-12);
        assert!((longitudinal_imag(a, 3.0) - longitudinal_imag(b, 3.0)).abs() < 1e-12);
    }

    #[test]
    fn imaginary_axis_is_real_axis_at_u_equal_iv() {
        // f_t(iv) on the real-axis formula equals the imaginary-axis kernel.
        for &v in &[0.05, 0.3, 2.0, 40.0] {
            let u = Complex64::new(0.0, v);
            let ft = transverse_real(u);
            assert!((ft.re - transverse_imag(v)).abs() < 1e-12, "v = {v}");
            assert!(ft.im.abs() < 1e-12);
        }
    }

    #[test]
    fn large_v_asymptotics() {
        let v = 1e6;
        assert!((transverse_imag(v) * v / (3.0 * std::f64::consts::PI / 4.0) - 1.0).abs() < 1e-5);
        let g = 3.0;
        // f_l -> (3/v²) Ω/(Ω+γ) = (3/v²)/(1 + γ/Ω)
        let expect = 3.0 / (v * v) / (1.0 + g);
        assert!((longitudinal_imag(v, g) / expect - 1.0).abs() < 1e-5);
    }
}
