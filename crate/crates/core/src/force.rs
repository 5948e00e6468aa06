//! Zero-temperature Casimir force between plates and, in the proximity force
//! approximation, between a sphere and a plate.
//!
//! F_pp = -(ħc/2π²δ⁴) ∫dΩ ∫dQ Qρ Σ r²e^(-2dρ)/(1 - r²e^(-2dρ))
//! F_sp = (ħcR/2πδ³) ∫dΩ ∫dQ Q Σ ln(1 - r²e^(-2dρ))
//!
//! with ρ = √(Ω² + Q²), d = a/δ and imaginary-axis reflection amplitudes.
//! Both integrals are evaluated in logarithmic variables Ω = e^x, Q = e^y on
//! the square [Ω_min, L]², L = 40/d, which keeps the Ω = 0 edge out of reach
//! of the rule and resolves the narrow low-frequency strip where the
//! s-polarisation correction lives.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::constants::{HBAR_C, NM_PER_M};
use crate::dielectric::{DielectricModel, ModelKind};
use crate::error::{Error, Result};
use crate::impedance::{self, ImpedanceOptions};
use crate::materials::{penetration_depth, MaterialParams, ResponsePoint};
use crate::optics::reflection_coefficients_imag;
use crate::quadrature::{integrate_2d, IntegralSpec, QuadValue};

/// Relative tolerance of full force integrals.
pub const DEFAULT_FORCE_TOL: f64 = 1e-4;
/// Relative tolerance of nonlocal correction integrals.
pub const DEFAULT_CORRECTION_TOL: f64 = 1e-2;
/// Largest a/R for which a sphere–plate result is flagged as inside the
/// proximity approximation. Reported only, never enforced.
pub const PFA_MAX_A_OVER_R: f64 = 0.01;
/// Truncation of the exponential kernel at ρ = RHO_CUT/d.
const RHO_CUT: f64 = 40.0;
/// Lower edge of the logarithmic grid relative to L.
const LOG_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    PlatePlate,
    SpherePlate { radius_nm: f64 },
}

impl Geometry {
    fn validate(&self) -> Result<()> {
        if let Geometry::SpherePlate { radius_nm } = *self {
            if !(radius_nm > 0.0 && radius_nm.is_finite()) {
                return Err(Error::domain(format!("sphere radius {radius_nm} nm must be positive")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Geometry::PlatePlate => f.write_str("pp"),
            Geometry::SpherePlate { .. } => f.write_str("sp"),
        }
    }
}

/// Replaces the computed reflection amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReflectionOverride {
    #[default]
    None,
    /// r_s = r_p = 1
    PerfectConductor,
    /// r_s = r_p = 0
    Transparent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceOptions {
    pub rel_tol: f64,
    pub impedance: ImpedanceOptions,
    pub reflection: ReflectionOverride,
    /// Keep the interband susceptibility of the material in correction runs.
    pub include_chi: bool,
}

impl Default for ForceOptions {
    fn default() -> Self {
        ForceOptions {
            rel_tol: DEFAULT_FORCE_TOL,
            impedance: ImpedanceOptions::default(),
            reflection: ReflectionOverride::None,
            include_chi: false,
        }
    }
}

impl ForceOptions {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_override(mut self, reflection: ReflectionOverride) -> Self {
        self.reflection = reflection;
        self
    }
}

/// Pressure (plate–plate, Pa) or force (sphere–plate, N).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    pub geometry: Geometry,
    pub a_nm: f64,
    pub value: f64,
    pub s_part: f64,
    pub p_part: f64,
    pub error: f64,
    pub model: ModelKind,
    pub converged: bool,
}

impl ForceResult {
    /// False for a sphere–plate result with a/R > [`PFA_MAX_A_OVER_R`].
    pub fn pfa_valid(&self) -> bool {
        match self.geometry {
            Geometry::PlatePlate => true,
            Geometry::SpherePlate { radius_nm } => self.a_nm / radius_nm <= PFA_MAX_A_OVER_R,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionResult {
    pub geometry: Geometry,
    pub a_nm: f64,
    /// F_nonlocal - F_local in SI units.
    pub delta: f64,
    pub delta_s: f64,
    pub delta_p: f64,
    pub error: f64,
    /// Local force the correction is measured against.
    pub local: ForceResult,
    pub converged: bool,
}

impl CorrectionResult {
    pub fn relative(&self) -> f64 {
        self.delta / self.local.value
    }

    pub fn relative_s(&self) -> f64 {
        self.delta_s / self.local.value
    }

    pub fn relative_p(&self) -> f64 {
        self.delta_p / self.local.value
    }
}

/// −π²ħc/(240a⁴) in Pa.
pub fn ideal_force(a_nm: f64) -> Result<f64> {
    let a = separation_m(a_nm)?;
    Ok(-PI * PI * HBAR_C / (240.0 * a.powi(4)))
}

/// −π³ħcR/(360a³) in N, the proximity-force result for ideal metals.
pub fn ideal_sphere_force(a_nm: f64, radius_nm: f64) -> Result<f64> {
    let a = separation_m(a_nm)?;
    Geometry::SpherePlate { radius_nm }.validate()?;
    Ok(-PI.powi(3) * HBAR_C * radius_nm / NM_PER_M / (360.0 * a.powi(3)))
}

fn separation_m(a_nm: f64) -> Result<f64> {
    if !(a_nm > 0.0 && a_nm.is_finite()) {
        return Err(Error::domain(format!("separation {a_nm} nm must be positive")));
    }
    Ok(a_nm / NM_PER_M)
}

/// s and p contributions carried through one integral.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Split {
    s: f64,
    p: f64,
}

impl Add for Split {
    type Output = Split;
    fn add(self, o: Split) -> Split {
        Split { s: self.s + o.s, p: self.p + o.p }
    }
}

impl Sub for Split {
    type Output = Split;
    fn sub(self, o: Split) -> Split {
        Split { s: self.s - o.s, p: self.p - o.p }
    }
}

impl Mul<f64> for Split {
    type Output = Split;
    fn mul(self, k: f64) -> Split {
        Split { s: self.s * k, p: self.p * k }
    }
}

impl QuadValue for Split {
    fn magnitude(&self) -> f64 {
        self.s.abs() + self.p.abs()
    }
}

/// 1 - r²e^(-t), accurate when r → 1 and t → 0.
fn one_minus_x(r: f64, t: f64) -> f64 {
    (1.0 - r) * (1.0 + r) - r * r * (-t).exp_m1()
}

/// r²e^(-t)/(1 - r²e^(-t))
fn pp_kernel(r: f64, t: f64) -> f64 {
    r * r * (-t).exp() / one_minus_x(r, t)
}

/// ln(1 - r²e^(-t))
fn sp_kernel(r: f64, t: f64) -> f64 {
    let x = r * r * (-t).exp();
    if x < 0.5 {
        (-x).ln_1p()
    } else {
        one_minus_x(r, t).ln()
    }
}

/// pp_kernel(r1) - pp_kernel(r0) without subtracting the two.
fn pp_kernel_difference(r1: f64, r0: f64, t: f64) -> f64 {
    let e = (-t).exp();
    (r1 - r0) * (r1 + r0) * e / (one_minus_x(r1, t) * one_minus_x(r0, t))
}

/// sp_kernel(r1) - sp_kernel(r0) = ln1p((x0 - x1)/(1 - x0)).
fn sp_kernel_difference(r1: f64, r0: f64, t: f64) -> f64 {
    let e = (-t).exp();
    ((r0 - r1) * (r0 + r1) * e / one_minus_x(r0, t)).ln_1p()
}

struct Setup {
    d: f64,
    delta_m: f64,
    material: MaterialParams,
}

fn setup(a_nm: f64, m: &MaterialParams, geometry: Geometry, drop_chi: bool) -> Result<Setup> {
    separation_m(a_nm)?;
    geometry.validate()?;
    let delta_nm = penetration_depth(m);
    Ok(Setup {
        d: a_nm / delta_nm,
        delta_m: delta_nm / NM_PER_M,
        material: if drop_chi { m.without_chi() } else { m.clone() },
    })
}

/// Imaginary-axis (r_s, r_p) for `model`.
fn reflection(
    omega: f64,
    q: f64,
    m: &MaterialParams,
    model: DielectricModel,
    opts: &ForceOptions,
) -> Result<(f64, f64)> {
    match opts.reflection {
        ReflectionOverride::PerfectConductor => return Ok((1.0, 1.0)),
        ReflectionOverride::Transparent => return Ok((0.0, 0.0)),
        ReflectionOverride::None => {}
    }
    let point = ResponsePoint::imaginary(omega, q)?;
    let z = match model {
        DielectricModel::Local => impedance::local_drude_pair(&point, m),
        DielectricModel::Boltzmann => impedance::nonlocal_pair_imag(&point, m, &opts.impedance),
        DielectricModel::Lindhard { .. } => Err(Error::Unsupported(
            "the force needs imaginary-frequency impedances, which the Lindhard model does not provide".into(),
        )),
    }
    .map_err(|e| match e {
        Error::Unsupported(_) => e,
        other => Error::Cell {
            omega,
            q,
            source: Box::new(other),
        },
    })?;
    Ok(reflection_coefficients_imag(omega, q, z.z_s.re, z.omega_zp.re))
}

/// Dimensionless ∫∫ dΩ dQ g(Ω, Q) over [0, L]² in logarithmic variables.
///
/// `scale` is a rough magnitude of the full (not difference) integral; it
/// sets the absolute floor so that difference integrands which vanish over
/// most of the plane still converge.
fn double_integral<G>(d: f64, rel_tol: f64, scale: f64, abs_share: f64, mut g: G) -> Result<(Split, f64, bool)>
where
    G: FnMut(f64, f64) -> Result<Split>,
{
    let upper = RHO_CUT / d;
    let (lo, hi) = ((upper * LOG_FLOOR).ln(), upper.ln());
    let abs_tol = rel_tol * abs_share * scale;
    let outer = IntegralSpec::finite(lo, hi).with_rel_tol(rel_tol).with_abs_tol(abs_tol);
    let inner_rel = rel_tol / 10.0;
    let inner_abs = abs_tol / (10.0 * upper);
    let r = integrate_2d(
        &outer,
        |_| IntegralSpec::finite(lo, hi).with_rel_tol(inner_rel).with_abs_tol(inner_abs),
        |x, y| {
            let (omega, q) = (x.exp(), y.exp());
            Ok(g(omega, q)? * (omega * q))
        },
    )?;
    Ok((r.value, r.error, r.converged))
}

/// Ideal-metal values of the dimensionless integrals, used as scales.
fn ideal_scale(d: f64, geometry: Geometry) -> f64 {
    match geometry {
        Geometry::PlatePlate => PI.powi(4) / (120.0 * d.powi(4)),
        Geometry::SpherePlate { .. } => PI.powi(4) / (180.0 * d.powi(3)),
    }
}

/// SI prefactor turning the dimensionless integral into pressure or force.
fn prefactor(s: &Setup, geometry: Geometry) -> f64 {
    match geometry {
        Geometry::PlatePlate => -HBAR_C / (2.0 * PI * PI * s.delta_m.powi(4)),
        Geometry::SpherePlate { radius_nm } => HBAR_C * (radius_nm / NM_PER_M) / (2.0 * PI * s.delta_m.powi(3)),
    }
}

fn force(a_nm: f64, m: &MaterialParams, model: DielectricModel, geometry: Geometry, opts: &ForceOptions) -> Result<ForceResult> {
    let s = setup(a_nm, m, geometry, false)?;
    let d = s.d;
    let kernel = match geometry {
        Geometry::PlatePlate => pp_kernel,
        Geometry::SpherePlate { .. } => sp_kernel,
    };
    let plate = geometry == Geometry::PlatePlate;
    let (value, error, converged) = double_integral(d, opts.rel_tol, ideal_scale(d, geometry), 1e-3, |omega, q| {
        let rho = omega.hypot(q);
        let (r_s, r_p) = reflection(omega, q, &s.material, model, opts)?;
        let t = 2.0 * d * rho;
        let weight = if plate { q * rho } else { q };
        Ok(Split {
            s: weight * kernel(r_s, t),
            p: weight * kernel(r_p, t),
        })
    })?;
    let pre = prefactor(&s, geometry);
    Ok(ForceResult {
        geometry,
        a_nm,
        value: pre * (value.s + value.p),
        s_part: pre * value.s,
        p_part: pre * value.p,
        error: pre.abs() * error,
        model: model.kind(),
        converged,
    })
}

/// Plate–plate pressure in Pa (negative: attraction).
pub fn force_plate_plate(a_nm: f64, m: &MaterialParams, model: DielectricModel, opts: &ForceOptions) -> Result<ForceResult> {
    force(a_nm, m, model, Geometry::PlatePlate, opts)
}

/// Sphere–plate force in N in the proximity force approximation.
pub fn force_sphere_plate(
    a_nm: f64,
    radius_nm: f64,
    m: &MaterialParams,
    model: DielectricModel,
    opts: &ForceOptions,
) -> Result<ForceResult> {
    force(a_nm, m, model, Geometry::SpherePlate { radius_nm }, opts)
}

/// Force for either geometry.
pub fn force_for(a_nm: f64, m: &MaterialParams, model: DielectricModel, geometry: Geometry, opts: &ForceOptions) -> Result<ForceResult> {
    force(a_nm, m, model, geometry, opts)
}

/// η(a) = F_pp(a)/F_c(a).
pub fn reduction_factor(a_nm: f64, m: &MaterialParams, model: DielectricModel, opts: &ForceOptions) -> Result<f64> {
    Ok(force_plate_plate(a_nm, m, model, opts)?.value / ideal_force(a_nm)?)
}

/// Nonlocal (Boltzmann) minus local (Drude) force, integrated directly from
/// the difference of the integrands at `opts.rel_tol` (1% by default).
///
/// The interband susceptibility is dropped unless `opts.include_chi` is set.
/// The local reference force is computed at 1e-4.
pub fn nonlocal_correction(a_nm: f64, m: &MaterialParams, geometry: Geometry, opts: &ForceOptions) -> Result<CorrectionResult> {
    let s = setup(a_nm, m, geometry, !opts.include_chi)?;
    let d = s.d;
    let local_opts = ForceOptions {
        rel_tol: opts.rel_tol.min(DEFAULT_FORCE_TOL),
        reflection: ReflectionOverride::None,
        ..*opts
    };
    let local = force(a_nm, &s.material, DielectricModel::Local, geometry, &local_opts)?;

    let plate = geometry == Geometry::PlatePlate;
    let difference = if plate { pp_kernel_difference } else { sp_kernel_difference };
    let nonlocal_opts = ForceOptions {
        reflection: ReflectionOverride::None,
        ..*opts
    };
    let pre = prefactor(&s, geometry);
    // Scale of the dimensionless local integral.
    let scale = (local.value / pre).abs();
    let (value, error, converged) = double_integral(d, opts.rel_tol, scale, 1e-4, |omega, q| {
        let rho = omega.hypot(q);
        let (nl_s, nl_p) = reflection(omega, q, &s.material, DielectricModel::Boltzmann, &nonlocal_opts)?;
        let (lo_s, lo_p) = reflection(omega, q, &s.material, DielectricModel::Local, &nonlocal_opts)?;
        let t = 2.0 * d * rho;
        let weight = if plate { q * rho } else { q };
        Ok(Split {
            s: weight * difference(nl_s, lo_s, t),
            p: weight * difference(nl_p, lo_p, t),
        })
    })?;
    Ok(CorrectionResult {
        geometry,
        a_nm,
        delta: pre * (value.s + value.p),
        delta_s: pre * value.s,
        delta_p: pre * value.p,
        error: pre.abs() * error,
        local,
        converged: converged && local.converged,
    })
}

/// Difference integrand δf_s, δf_p (plate–plate, dimensionless) at one
/// (Ω, Q) point.
pub fn correction_integrand(a_nm: f64, m: &MaterialParams, omega: f64, q: f64, opts: &ForceOptions) -> Result<(f64, f64)> {
    let s = setup(a_nm, m, Geometry::PlatePlate, !opts.include_chi)?;
    let rho = omega.hypot(q);
    let t = 2.0 * s.d * rho;
    let (nl_s, nl_p) = reflection(omega, q, &s.material, DielectricModel::Boltzmann, opts)?;
    let (lo_s, lo_p) = reflection(omega, q, &s.material, DielectricModel::Local, opts)?;
    let w = q * rho;
    Ok((w * pp_kernel_difference(nl_s, lo_s, t), w * pp_kernel_difference(nl_p, lo_p, t)))
}
