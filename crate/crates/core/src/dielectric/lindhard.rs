//! Lindhard (self-consistent-field) kernels with finite relaxation.
//!
//! With w = 1/u and z = k/2k_F the kernels contain the antisymmetric
//! combinations p(w+z) - p(w-z) divided by z. Evaluating them literally
//! cancels almost all digits as z → 0, so they are rearranged into a sum
//! part (L₊ + L₋) and a difference part Δ = L₊ - L₋ = ln(1 - 4z/(w² - (1-z)²)),
//! the latter computed with a log1p that keeps full relative precision.

use std::f64::consts::PI;

use num_complex::Complex64;

/// ln(1 + x) accurate for small |x|.
fn ln_1p(x: Complex64) -> Complex64 {
    if x.norm() < 0.5 {
        // ln(1+x) = 2 artanh(y), y = x/(2+x), |y| < 1/3
        let y = x / (Complex64::new(2.0, 0.0) + x);
        let y2 = y * y;
        let mut term = y;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut n = 1.0;
        loop {
            let next = term / n;
            sum += next;
            if next.norm() <= 1e-18 * sum.norm() || n > 80.0 {
                break;
            }
            term *= y2;
            n += 2.0;
        }
        sum * 2.0
    } else {
        (Complex64::new(1.0, 0.0) + x).ln()
    }
}

fn log_ratio(x: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    ((x + one) / (x - one)).ln()
}

pub(crate) struct LogPair {
    /// L₊ + L₋
    sum: Complex64,
    /// L₊ - L₋
    diff: Complex64,
}

/// L± = ln((w ± z + 1)/(w ± z - 1)) on the principal branch.
fn log_pair(w: Complex64, z: f64) -> LogPair {
    let plus = log_ratio(w + z);
    let minus = log_ratio(w - z);
    let direct = plus - minus;
    let one_minus_z = 1.0 - z;
    let x = Complex64::new(-4.0 * z, 0.0) / (w * w - one_minus_z * one_minus_z);
    let stable = ln_1p(x);
    // The stable form can differ from the principal-branch difference by a
    // multiple of 2πi; restore it.
    let k = ((direct.im - stable.im) / (2.0 * PI)).round();
    LogPair {
        sum: plus + minus,
        diff: stable + Complex64::new(0.0, 2.0 * PI * k),
    }
}

/// f_t(u, z) = (3/8)(z² + 3u⁻² + 1)
///   - (3/32z){[1-(z-u⁻¹)²]² ln((z-u⁻¹+1)/(z-u⁻¹-1)) + [1-(z+u⁻¹)²]² ln((z+u⁻¹+1)/(z+u⁻¹-1))}
pub fn transverse(u: Complex64, z: f64) -> Complex64 {
    let w = u.inv();
    let logs = log_pair(w, z);
    let c = Complex64::new(1.0 - z * z, 0.0) - w * w;
    let e = w * (2.0 * z);
    let head = (w * w * 3.0 + (z * z + 1.0)) * 0.375;
    let brace_over_z = -(c * w * 4.0) * logs.sum + (c * c + e * e) * logs.diff / z;
    head - brace_over_z * (3.0 / 32.0)
}

/// f_l(u, z) = 1/2 + (1/8z){[1-(z-u⁻¹)²] ln(...) + [1-(z+u⁻¹)²] ln(...)}
pub fn longitudinal(u: Complex64, z: f64) -> Complex64 {
    let w = u.inv();
    let logs = log_pair(w, z);
    let c = Complex64::new(1.0 - z * z, 0.0) - w * w;
    Complex64::new(0.5, 0.0) - w * logs.sum * 0.25 + c * logs.diff / (8.0 * z)
}

#[cfg(test)]
mod tests {
    use super::super::kernels;
    use super::*;

    fn literal_transverse(u: Complex64, z: f64) -> Complex64 {
        let w = u.inv();
        let one = Complex64::new(1.0, 0.0);
        let a = one - (z - w) * (z - w);
        let b = one - (z + w) * (z + w);
        let la = ((z - w + 1.0) / (z - w - 1.0)).ln();
        let lb = ((z + w + 1.0) / (z + w - 1.0)).ln();
        (w * w * 3.0 + z * z + 1.0) * 0.375 - (a * a * la + b * b * lb) * (3.0 / (32.0 * z))
    }

    fn literal_longitudinal(u: Complex64, z: f64) -> Complex64 {
        let w = u.inv();
        let one = Complex64::new(1.0, 0.0);
        let a = one - (z - w) * (z - w);
        let b = one - (z + w) * (z + w);
        let la = ((z - w + 1.0) / (z - w - 1.0)).ln();
        let lb = ((z + w + 1.0) / (z + w - 1.0)).ln();
        (a * la + b * lb) / (8.0 * z) + 0.5
    }

    #[test]
    fn rearrangement_matches_literal_form_at_moderate_z() {
        for &u in &[
            Complex64::new(0.5, -0.05),
            Complex64::new(2.0, -0.3),
            Complex64::new(0.9, -0.01),
        ] {
            for &z in &[0.05, 0.3, 1.7] {
                let t = transverse(u, z);
                let tl = literal_transverse(u, z);
                assert!((t - tl).norm() < 1e-10 * tl.norm().max(1.0), "u={u} z={z}: {t} vs {tl}");
                let l = longitudinal(u, z);
                let ll = literal_longitudinal(u, z);
                assert!((l - ll).norm() < 1e-10 * ll.norm().max(1.0), "u={u} z={z}: {l} vs {ll}");
            }
        }
    }

    #[test]
    fn small_z_reduces_to_boltzmann_kernels() {
        let u = Complex64::new(0.6, -0.1);
        let ft = kernels::transverse_real(u);
        assert!((transverse(u, 1e-6) - ft).norm() < 1e-9);
        // Static-limit numerator of the longitudinal kernel: 1 - L/(2u) = -S.
        let fl0 = -kernels::log_ratio_excess(u);
        assert!((longitudinal(u, 1e-6) - fl0).norm() < 1e-9);
    }

    #[test]
    fn log1p_series_is_accurate() {
        let x = Complex64::new(1e-9, -2e-9);
        let r = ln_1p(x);
        let expect = x - x * x / 2.0;
        assert!((r - expect).norm() < 1e-15 * x.norm());
        let big = Complex64::new(0.3, 0.2);
        assert!((ln_1p(big) - (big + 1.0).ln()).norm() < 1e-15);
    }
}
