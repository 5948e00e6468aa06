//! Reflection amplitudes from surface impedances, reflectance and
//! absorptance, and incidence-angle absorptance sweeps.

use num_complex::Complex64;

use crate::dielectric::{DielectricModel, ModelKind};
use crate::error::{Error, Result};
use crate::impedance::{self, ImpedanceOptions, ImpedancePair};
use crate::materials::{Axis, MaterialParams, ResponsePoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub r_s: Complex64,
    pub r_p: Complex64,
    pub point: ResponsePoint,
    pub model: ModelKind,
}

fn ratio(num: Complex64, den: Complex64, what: &str, point: &ResponsePoint) -> Result<Complex64> {
    if den.norm() == 0.0 {
        return Err(Error::Pole(format!(
            "{what} denominator vanishes at Omega = {}, Q = {}",
            point.omega, point.q
        )));
    }
    Ok(num / den)
}

/// Real-frequency reflection amplitudes,
///
/// r_s = (Ω - Z_s√(Ω² - Q²))/(Ω + Z_s√(Ω² - Q²)),
/// r_p = (√(Ω² - Q²) - ΩZ_p)/(√(Ω² - Q²) + ΩZ_p).
///
/// For Q > Ω the root is continued to i√(Q² - Ω²).
pub fn reflection_real(z: &ImpedancePair) -> Result<ReflectionPair> {
    let point = z.point;
    if point.axis != Axis::Real {
        return Err(Error::domain("reflection_real needs a real-axis impedance"));
    }
    let omega = Complex64::new(point.omega, 0.0);
    let d = point.omega * point.omega - point.q * point.q;
    let root = if d >= 0.0 {
        Complex64::new(d.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-d).sqrt())
    };
    let zs = z.z_s * root;
    Ok(ReflectionPair {
        r_s: ratio(omega - zs, omega + zs, "r_s", &point)?,
        r_p: ratio(root - z.omega_zp, root + z.omega_zp, "r_p", &point)?,
        point,
        model: z.model,
    })
}

/// Imaginary-axis reflection amplitudes from Z_s and the product Ω·Z_p,
///
/// r_s = (Ω - ρZ_s)/(Ω + ρZ_s), r_p = (ρ - ΩZ_p)/(ρ + ΩZ_p), ρ = √(Ω² + Q²).
pub fn reflection_coefficients_imag(omega: f64, q: f64, z_s: f64, omega_zp: f64) -> (f64, f64) {
    let rho = omega.hypot(q);
    let zs = rho * z_s;
    ((omega - zs) / (omega + zs), (rho - omega_zp) / (rho + omega_zp))
}

pub fn reflection_imag(z: &ImpedancePair) -> Result<ReflectionPair> {
    let point = z.point;
    if point.axis != Axis::Imaginary {
        return Err(Error::domain("reflection_imag needs an imaginary-axis impedance"));
    }
    if !(point.omega > 0.0) {
        return Err(Error::domain("reflection_imag needs Omega > 0"));
    }
    let (r_s, r_p) = reflection_coefficients_imag(point.omega, point.q, z.z_s.re, z.omega_zp.re);
    Ok(ReflectionPair {
        r_s: Complex64::new(r_s, 0.0),
        r_p: Complex64::new(r_p, 0.0),
        point,
        model: z.model,
    })
}

/// (A_s, A_p) with A = 1 - |r|².
pub fn absorptance(r: &ReflectionPair) -> Result<(f64, f64)> {
    if r.point.axis != Axis::Real {
        return Err(Error::domain("absorptance is defined for real frequencies"));
    }
    Ok((1.0 - r.r_s.norm_sqr(), 1.0 - r.r_p.norm_sqr()))
}

/// One row of an absorptance sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptanceRow {
    pub omega: f64,
    pub q: f64,
    pub a_s_local: f64,
    pub a_s_nonlocal: f64,
    pub a_p_local: f64,
    pub a_p_nonlocal: f64,
}

/// Local and nonlocal absorptance at Ω for incidence angle `theta_deg`,
/// with Q = Ω sin θ.
pub fn absorptance_point(
    m: &MaterialParams,
    theta_deg: f64,
    omega: f64,
    model: DielectricModel,
    opts: &ImpedanceOptions,
) -> Result<AbsorptanceRow> {
    if !(0.0..90.0).contains(&theta_deg) {
        return Err(Error::domain(format!("incidence angle {theta_deg} must lie in [0, 90) degrees")));
    }
    let q = omega * theta_deg.to_radians().sin();
    let point = ResponsePoint::real(omega, q)?;
    let (a_s_local, a_p_local) = absorptance(&reflection_real(&impedance::local_drude_pair(&point, m)?)?)?;
    let nonlocal = impedance::impedance(&point, m, model, opts)?;
    let (a_s_nonlocal, a_p_nonlocal) = absorptance(&reflection_real(&nonlocal)?)?;
    Ok(AbsorptanceRow {
        omega,
        q,
        a_s_local,
        a_s_nonlocal,
        a_p_local,
        a_p_nonlocal,
    })
}

/// Absorptance over a sorted frequency grid.
pub fn absorptance_sweep(
    m: &MaterialParams,
    theta_deg: f64,
    omegas: &[f64],
    model: DielectricModel,
    opts: &ImpedanceOptions,
) -> Result<Vec<AbsorptanceRow>> {
    if omegas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("frequency grid must be strictly increasing"));
    }
    omegas
        .iter()
        .map(|&omega| {
            absorptance_point(m, theta_deg, omega, model, opts).map_err(|e| Error::Cell {
                omega,
                q: omega * theta_deg.to_radians().sin(),
                source: Box::new(e),
            })
        })
        .collect()
}
