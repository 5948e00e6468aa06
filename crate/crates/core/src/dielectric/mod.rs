//! Local (Drude) and nonlocal (Boltzmann, Lindhard) longitudinal and
//! transverse dielectric functions.
//!
//! Wave numbers are dimensionless, K = ck/ω_p. On the real axis the nonlocal
//! argument is u = (v_F/c) K/(Ω + iγ); for K > 0 and γ > 0 it always has
//! Im u < 0, so (1+u)/(1-u) stays in the lower half plane and the principal
//! logarithm never meets its cut. On the imaginary axis the argument is the
//! real v = (v_F/c) K/(Ω + γ).

pub mod kernels;
pub mod lindhard;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::materials::{Axis, MaterialParams, ResponsePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Local,
    Boltzmann,
    Lindhard,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Local => "local",
            ModelKind::Boltzmann => "boltzmann",
            ModelKind::Lindhard => "lindhard",
        })
    }
}

/// A dielectric model with its parameters. `k_fermi` is the dimensionless
/// Fermi wave number ck_F/ω_p supplied by the caller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DielectricModel {
    Local,
    Boltzmann,
    Lindhard { k_fermi: f64 },
}

impl DielectricModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            DielectricModel::Local => ModelKind::Local,
            DielectricModel::Boltzmann => ModelKind::Boltzmann,
            DielectricModel::Lindhard { .. } => ModelKind::Lindhard,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DielectricPair {
    pub eps_l: Complex64,
    pub eps_t: Complex64,
    pub model: ModelKind,
    pub point: ResponsePoint,
    /// Dimensionless wave number ck/ω_p.
    pub k: f64,
    /// k/k_F when a Fermi wave number was supplied. Reported, never enforced.
    pub k_over_kf: Option<f64>,
}

/// Nonlocal argument u = (v_F/c) K/(Ω + iγ).
pub fn nonlocal_u(omega: f64, k: f64, m: &MaterialParams) -> Complex64 {
    let u = Complex64::new(m.v_f_over_c * k, 0.0) / Complex64::new(omega, m.gamma);
    debug_assert!(!(m.gamma > 0.0 && k > 0.0 && u.im >= 0.0), "Im u must be negative, got {u}");
    u
}

/// Imaginary-axis nonlocal argument v = (v_F/c) K/(Ω + γ).
pub fn nonlocal_v(omega: f64, k: f64, m: &MaterialParams) -> f64 {
    m.v_f_over_c * k / (omega + m.gamma)
}

fn check_branch(u: Complex64) -> Result<()> {
    if u.im.abs() < 1e-300 && u.re.abs() >= 1.0 {
        return Err(Error::BranchCut { u });
    }
    Ok(())
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!("Omega = {omega} must be positive")));
    }
    Ok(())
}

/// 1/(Ω(Ω + iγ)) on the real axis.
fn drude_weight(omega: f64, gamma: f64) -> Complex64 {
    Complex64::new(omega * omega, omega * gamma).inv()
}

/// Local permittivity: Drude plus interband susceptibility.
///
/// Real axis: 1 + χ_IB - 1/(Ω(Ω + iγ)). Imaginary axis: 1 + χ_IB + 1/(Ω(Ω + γ)).
pub fn drude_local(point: &ResponsePoint, m: &MaterialParams) -> Result<Complex64> {
    let omega = point.omega;
    let chi = m.chi(point.axis, omega)?;
    match point.axis {
        Axis::Imaginary => {
            if omega <= 0.0 {
                return Err(Error::domain("local permittivity has a pole at Omega = 0"));
            }
            Ok(chi + 1.0 + 1.0 / (omega * (omega + m.gamma)))
        }
        Axis::Real => {
            if omega <= 0.0 && m.gamma == 0.0 {
                return Err(Error::domain("local permittivity has a pole at Omega = 0 when gamma = 0"));
            }
            if omega == 0.0 {
                return Err(Error::domain("local permittivity diverges at Omega = 0"));
            }
            Ok(chi + 1.0 - drude_weight(omega, m.gamma))
        }
    }
}

/// Boltzmann-approximation dielectric functions at real frequency Ω and
/// dimensionless wave number `k`.
pub fn boltzmann_real(omega: f64, k: f64, m: &MaterialParams) -> Result<DielectricPair> {
    check_omega(omega)?;
    let u = nonlocal_u(omega, k, m);
    check_branch(u)?;
    let chi = m.chi(Axis::Real, omega)?;
    let weight = drude_weight(omega, m.gamma);
    let ft = kernels::transverse_real(u);
    let fl = kernels::longitudinal_real(u, m.gamma / omega);
    Ok(DielectricPair {
        eps_l: chi + 1.0 - weight * fl,
        eps_t: chi + 1.0 - weight * ft,
        model: ModelKind::Boltzmann,
        point: ResponsePoint::real(omega, 0.0)?,
        k,
        k_over_kf: None,
    })
}

/// Boltzmann dielectric functions at imaginary frequency iΩ, parametrised by
/// the nonlocal argument v. Both values are real.
pub fn boltzmann_imag(omega: f64, v: f64, m: &MaterialParams) -> Result<DielectricPair> {
    check_omega(omega)?;
    if !(v >= 0.0) {
        return Err(Error::domain(format!("v = {v} must be non-negative")));
    }
    let (eps_l, eps_t) = boltzmann_imag_values(omega, v, m)?;
    Ok(DielectricPair {
        eps_l: Complex64::new(eps_l, 0.0),
        eps_t: Complex64::new(eps_t, 0.0),
        model: ModelKind::Boltzmann,
        point: ResponsePoint::imaginary(omega, 0.0)?,
        k: v * (omega + m.gamma) / m.v_f_over_c,
        k_over_kf: None,
    })
}

/// (ε_l, ε_t) on the imaginary axis without building a [`DielectricPair`];
/// the impedance integrands call this in their inner loop.
pub(crate) fn boltzmann_imag_values(omega: f64, v: f64, m: &MaterialParams) -> Result<(f64, f64)> {
    let base = 1.0 + m.chi(Axis::Imaginary, omega)?.re;
    let weight = 1.0 / (omega * (omega + m.gamma));
    let ft = kernels::transverse_imag(v);
    let fl = kernels::longitudinal_imag(v, m.gamma / omega);
    Ok((base + weight * fl, base + weight * ft))
}

/// Lindhard dielectric functions with relaxation at real frequency Ω.
///
/// ε_t = 1 + χ_IB - f_t(u, z)/(Ω(Ω + iγ)) and
/// ε_l = 1 + χ_IB + (1 + iγ/Ω)(ε_w - 1)/[1 + iγ/Ω - (i/2u)(γ/Ω) ln((1+u)/(1-u))]
/// with ε_w = 1 + 3 f_l(u, z)/((v_F/c) K)² and z = K/(2K_F). The factor
/// (1 + iγ/Ω) makes the z → 0 limit coincide with the Boltzmann result.
pub fn lindhard_real(omega: f64, k: f64, k_fermi: f64, m: &MaterialParams) -> Result<DielectricPair> {
    check_omega(omega)?;
    if !(k > 0.0 && k_fermi > 0.0) {
        return Err(Error::domain(format!(
            "Lindhard functions need k > 0 and k_F > 0, got k = {k}, k_F = {k_fermi}"
        )));
    }
    let z = k / (2.0 * k_fermi);
    let u = nonlocal_u(omega, k, m);
    check_branch(u)?;
    let chi = m.chi(Axis::Real, omega)?;
    let g = m.gamma / omega;

    let ft = lindhard::transverse(u, z);
    let fl = lindhard::longitudinal(u, z);
    let vk = m.v_f_over_c * k;
    let eps_w_minus_one = fl * (3.0 / (vk * vk));
    let denom = kernels::relaxation_denominator(kernels::log_ratio_excess(u), g);
    let eps_l = chi + 1.0 + Complex64::new(1.0, g) * eps_w_minus_one / denom;
    let eps_t = chi + 1.0 - drude_weight(omega, m.gamma) * ft;
    Ok(DielectricPair {
        eps_l,
        eps_t,
        model: ModelKind::Lindhard,
        point: ResponsePoint::real(omega, 0.0)?,
        k,
        k_over_kf: Some(k / k_fermi),
    })
}

/// The Lindhard forms are only available for real frequencies.
pub fn lindhard_imag(_omega: f64, _k: f64, _k_fermi: f64, _m: &MaterialParams) -> Result<DielectricPair> {
    Err(Error::Unsupported(
        "Lindhard dielectric functions are not continued to imaginary frequencies".into(),
    ))
}

/// Evaluates `model` at `point.omega` on `point.axis` for total wave number `k`.
pub fn evaluate(model: DielectricModel, point: &ResponsePoint, k: f64, m: &MaterialParams) -> Result<DielectricPair> {
    match (model, point.axis) {
        (DielectricModel::Local, _) => {
            let eps = drude_local(point, m)?;
            Ok(DielectricPair {
                eps_l: eps,
                eps_t: eps,
                model: ModelKind::Local,
                point: *point,
                k,
                k_over_kf: None,
            })
        }
        (DielectricModel::Boltzmann, Axis::Real) => boltzmann_real(point.omega, k, m).map(|p| DielectricPair { point: *point, ..p }),
        (DielectricModel::Boltzmann, Axis::Imaginary) => {
            boltzmann_imag(point.omega, nonlocal_v(point.omega, k, m), m).map(|p| DielectricPair { point: *point, k, ..p })
        }
        (DielectricModel::Lindhard { k_fermi }, Axis::Real) => {
            lindhard_real(point.omega, k, k_fermi, m).map(|p| DielectricPair { point: *point, ..p })
        }
        (DielectricModel::Lindhard { k_fermi }, Axis::Imaginary) => lindhard_imag(point.omega, k, k_fermi, m),
    }
}
