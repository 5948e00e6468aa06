//! Surface impedances Z_s and Z_p for specular electron reflection.
//!
//! Local impedances are closed forms in ε(Ω). Nonlocal impedances are
//! integrals over the normal wave number: on the real axis over K_z with
//! K² = Q² + K_z², on the imaginary axis over χ with K = Q cosh χ.
//!
//! The imaginary-axis integrands are written in terms of Ω²ε rather than ε
//! so that nothing overflows as Ω → 0, where ε ~ 1/Ω².

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::dielectric::{self, kernels, DielectricModel, ModelKind};
use crate::error::{Error, Result};
use crate::materials::{Axis, MaterialParams, ResponsePoint};
use crate::quadrature::{try_integrate_adaptive, DecayHint, IntegralSpec};

/// Relative tolerance of the impedance integrals.
pub const DEFAULT_IMPEDANCE_TOL: f64 = 1e-6;

/// 4/(3√3), the large-b coefficient of F and G.
const FG_LARGE_B: f64 = 0.769_800_358_919_501_2;

/// Threshold on the smallest v for the low-frequency forms to be trusted.
const LOW_FREQ_MIN_V: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedancePair {
    pub z_s: Complex64,
    pub z_p: Complex64,
    /// Ω·Z_p, finite where Z_p itself grows like 1/Ω.
    pub omega_zp: Complex64,
    pub point: ResponsePoint,
    pub model: ModelKind,
    /// Quadrature error estimates; zero for closed forms.
    pub err_s: f64,
    pub err_p: f64,
}

impl ImpedancePair {
    pub fn is_local(&self) -> bool {
        self.model == ModelKind::Local
    }
}

/// Options for the nonlocal integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedanceOptions {
    pub rel_tol: f64,
    /// Forces f_t = f_l = 1 inside the integrals. The integrals then reduce
    /// to the local impedances, which makes this a test seam for the
    /// quadrature plumbing.
    pub local_kernels: bool,
}

impl Default for ImpedanceOptions {
    fn default() -> Self {
        ImpedanceOptions {
            rel_tol: DEFAULT_IMPEDANCE_TOL,
            local_kernels: false,
        }
    }
}

impl ImpedanceOptions {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_local_kernels(mut self) -> Self {
        self.local_kernels = true;
        self
    }
}

fn upper_half_sqrt(x: Complex64) -> Complex64 {
    let r = x.sqrt();
    if r.im < 0.0 {
        -r
    } else {
        r
    }
}

/// Local impedances for permittivity `eps` at `point`.
///
/// Real axis: Z_s = 1/√(ε - Q²/Ω²), Z_p = √(ε - Q²/Ω²)/ε with the root of
/// non-negative imaginary part. Imaginary axis: Z_s = 1/√(ε + Q²/Ω²),
/// Z_p = √(ε + Q²/Ω²)/ε with positive roots.
pub fn local_pair(point: &ResponsePoint, eps: Complex64) -> Result<ImpedancePair> {
    if eps.norm() == 0.0 {
        return Err(Error::Pole(format!(
            "Z_p is singular for eps = 0 at Omega = {}",
            point.omega
        )));
    }
    if point.omega <= 0.0 {
        return Err(Error::domain("local impedances need Omega > 0"));
    }
    let ratio2 = (point.q / point.omega).powi(2);
    let root = match point.axis {
        Axis::Real => upper_half_sqrt(eps - ratio2),
        Axis::Imaginary => (eps + ratio2).sqrt(),
    };
    let z_s = root.inv();
    let z_p = if point.q == 0.0 { z_s } else { root / eps };
    Ok(ImpedancePair {
        z_s,
        z_p,
        omega_zp: z_p * point.omega,
        point: *point,
        model: ModelKind::Local,
        err_s: 0.0,
        err_p: 0.0,
    })
}

/// Local Drude impedances of `m` at `point`.
pub fn local_drude_pair(point: &ResponsePoint, m: &MaterialParams) -> Result<ImpedancePair> {
    local_pair(point, dielectric::drude_local(point, m)?)
}

fn check_positive(point: &ResponsePoint) -> Result<()> {
    if !(point.omega > 0.0 && point.q > 0.0) {
        return Err(Error::domain(format!(
            "nonlocal impedances need Omega > 0 and Q > 0, got ({}, {})",
            point.omega, point.q
        )));
    }
    Ok(())
}

/// Ω²ε_l and Ω²ε_t on the imaginary axis at nonlocal argument v.
struct ScaledImagEps {
    base: f64,
    weight: f64,
    gamma_over_omega: f64,
    local_kernels: bool,
}

impl ScaledImagEps {
    fn new(omega: f64, m: &MaterialParams, local_kernels: bool) -> Result<Self> {
        let chi = m.chi(Axis::Imaginary, omega)?.re;
        Ok(ScaledImagEps {
            base: omega * omega * (1.0 + chi),
            weight: omega / (omega + m.gamma),
            gamma_over_omega: m.gamma / omega,
            local_kernels,
        })
    }

    fn transverse(&self, v: f64) -> f64 {
        let f = if self.local_kernels { 1.0 } else { kernels::transverse_imag(v) };
        self.base + self.weight * f
    }

    fn longitudinal(&self, v: f64) -> f64 {
        let f = if self.local_kernels {
            1.0
        } else {
            kernels::longitudinal_imag(v, self.gamma_over_omega)
        };
        self.base + self.weight * f
    }
}

fn sech_spec(rel_tol: f64) -> IntegralSpec {
    IntegralSpec::semi_infinite(0.0, DecayHint::Sech).with_rel_tol(rel_tol)
}

/// Integrands of the imaginary-axis impedances at one (Ω, Q):
///
/// s(χ) = cosh χ/(cosh²χ + Ω²ε_t/Q²)
/// p(χ) = sech χ [Q²/(Ω²ε_l) + sinh²χ/(cosh²χ + Ω²ε_t/Q²)]
///
/// with v = (v_F/c) Q cosh χ/(Ω + γ). Z_s and Z_p are (2/π)(Ω/Q) times
/// their integrals over χ ∈ [0, ∞).
pub struct ImagIntegrands {
    eps: ScaledImagEps,
    v_scale: f64,
    q2: f64,
}

impl ImagIntegrands {
    pub fn new(point: &ResponsePoint, m: &MaterialParams, local_kernels: bool) -> Result<Self> {
        if point.axis != Axis::Imaginary {
            return Err(Error::domain("imaginary-axis integrands need an imaginary-axis point"));
        }
        check_positive(point)?;
        Ok(ImagIntegrands {
            eps: ScaledImagEps::new(point.omega, m, local_kernels)?,
            v_scale: m.v_f_over_c * point.q / (point.omega + m.gamma),
            q2: point.q * point.q,
        })
    }

    pub fn s(&self, x: f64) -> f64 {
        let c = x.cosh();
        c / (c * c + self.eps.transverse(self.v_scale * c) / self.q2)
    }

    pub fn p(&self, x: f64) -> f64 {
        let c = x.cosh();
        let sh = x.sinh();
        let v = self.v_scale * c;
        (self.q2 / self.eps.longitudinal(v) + sh * sh / (c * c + self.eps.transverse(v) / self.q2)) / c
    }
}

/// Boltzmann impedances at imaginary frequency iΩ, integrating
/// [`ImagIntegrands`] at `opts.rel_tol`.
pub fn nonlocal_pair_imag(point: &ResponsePoint, m: &MaterialParams, opts: &ImpedanceOptions) -> Result<ImpedancePair> {
    let integrands = ImagIntegrands::new(point, m, opts.local_kernels)?;
    let (omega, q) = (point.omega, point.q);
    let spec = sech_spec(opts.rel_tol);

    let s = try_integrate_adaptive(|x: f64| Ok(integrands.s(x)), &spec)?
        .require_converged(|| format!("Z_s integral at Omega = {omega:e}, Q = {q:e}"))?;
    let p = try_integrate_adaptive(|x: f64| Ok(integrands.p(x)), &spec)?
        .require_converged(|| format!("Z_p integral at Omega = {omega:e}, Q = {q:e}"))?;

    let pre = FRAC_2_PI * omega / q;
    Ok(ImpedancePair {
        z_s: Complex64::new(pre * s.value, 0.0),
        z_p: Complex64::new(pre * p.value, 0.0),
        omega_zp: Complex64::new(FRAC_2_PI * omega * omega / q * p.value, 0.0),
        point: *point,
        model: if opts.local_kernels { ModelKind::Local } else { ModelKind::Boltzmann },
        err_s: pre * s.error,
        err_p: pre * p.error,
    })
}

/// Nonlocal impedances at real frequency Ω:
///
/// Z_s = (2i/π) Ω ∫₀^∞ dK_z / (Ω²ε_t(K) - K²)
/// Z_p = (2i/π) Ω ∫₀^∞ dK_z / K² [Q²/(Ω²ε_l(K)) + K_z²/(Ω²ε_t(K) - K²)]
///
/// Both integrands fall off like 1/K_z².
pub fn nonlocal_pair_real(
    point: &ResponsePoint,
    m: &MaterialParams,
    model: DielectricModel,
    opts: &ImpedanceOptions,
) -> Result<ImpedancePair> {
    if point.axis != Axis::Real {
        return Err(Error::domain("nonlocal_pair_real needs a real-axis point"));
    }
    if !(point.omega > 0.0) {
        return Err(Error::domain("nonlocal impedances need Omega > 0"));
    }
    let (omega, q) = (point.omega, point.q);
    let omega2 = omega * omega;
    let local_eps = if opts.local_kernels || model == DielectricModel::Local {
        Some(dielectric::drude_local(point, m)?)
    } else {
        None
    };
    let eps_at = |k: f64| -> Result<(Complex64, Complex64)> {
        if let Some(e) = local_eps {
            return Ok((e, e));
        }
        let pair = match model {
            DielectricModel::Boltzmann => dielectric::boltzmann_real(omega, k, m)?,
            DielectricModel::Lindhard { k_fermi } => dielectric::lindhard_real(omega, k, k_fermi, m)?,
            DielectricModel::Local => unreachable!("local model handled above"),
        };
        Ok((pair.eps_l, pair.eps_t))
    };
    let spec = IntegralSpec::semi_infinite(0.0, DecayHint::Algebraic { power: 2.0 }).with_rel_tol(opts.rel_tol);

    let s = try_integrate_adaptive(
        |kz: f64| {
            let k2 = q * q + kz * kz;
            let (_, eps_t) = eps_at(k2.sqrt())?;
            Ok((eps_t * omega2 - k2).inv())
        },
        &spec,
    )?
    .require_converged(|| format!("Z_s integral at Omega = {omega:e}, Q = {q:e}"))?;

    let p = try_integrate_adaptive(
        |kz: f64| {
            let k2 = q * q + kz * kz;
            let (eps_l, eps_t) = eps_at(k2.sqrt())?;
            let longitudinal = (eps_l * omega2).inv() * (q * q);
            let transverse = (eps_t * omega2 - k2).inv() * (kz * kz);
            Ok((longitudinal + transverse) / k2)
        },
        &spec,
    )?
    .require_converged(|| format!("Z_p integral at Omega = {omega:e}, Q = {q:e}"))?;

    let pre = Complex64::new(0.0, 2.0 * omega / PI);
    let z_p = pre * p.value;
    Ok(ImpedancePair {
        z_s: pre * s.value,
        z_p,
        omega_zp: z_p * omega,
        point: *point,
        model: if local_eps.is_some() { ModelKind::Local } else { model.kind() },
        err_s: pre.norm() * s.error,
        err_p: pre.norm() * p.error,
    })
}

/// Dispatches to the local or nonlocal evaluator for `model` on the point's axis.
pub fn impedance(
    point: &ResponsePoint,
    m: &MaterialParams,
    model: DielectricModel,
    opts: &ImpedanceOptions,
) -> Result<ImpedancePair> {
    match (model, point.axis) {
        (DielectricModel::Local, _) => local_drude_pair(point, m),
        (_, Axis::Real) => nonlocal_pair_real(point, m, model, opts),
        (DielectricModel::Boltzmann, Axis::Imaginary) => nonlocal_pair_imag(point, m, opts),
        (DielectricModel::Lindhard { .. }, Axis::Imaginary) => Err(Error::Unsupported(
            "Lindhard impedances are only available for real frequencies".into(),
        )),
    }
}

/// F(b) and G(b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FgValues {
    pub b: f64,
    pub f: f64,
    pub g: f64,
}

/// F(b) = (2/π)∫₀^∞ cosh²χ/(cosh³χ + b³) dχ and
/// G(b) = (2/π)∫₀^∞ sinh²χ/(cosh³χ + b³) dχ, at 1e-10 relative.
pub fn asymptotic_fg(b: f64) -> Result<FgValues> {
    if !(b >= 0.0 && b.is_finite()) {
        return Err(Error::domain(format!("b = {b} must be finite and non-negative")));
    }
    let b3 = b * b * b;
    let spec = sech_spec(1e-10);
    // Divided through by cosh³χ so nothing overflows in the tail.
    let f = try_integrate_adaptive(
        |x: f64| {
            let s = 1.0 / x.cosh();
            Ok(s / (1.0 + b3 * s * s * s))
        },
        &spec,
    )?
    .require_converged(|| format!("F({b})"))?;
    let g = try_integrate_adaptive(
        |x: f64| {
            let s = 1.0 / x.cosh();
            let t = x.tanh();
            Ok(t * t * s / (1.0 + b3 * s * s * s))
        },
        &spec,
    )?
    .require_converged(|| format!("G({b})"))?;
    Ok(FgValues {
        b,
        f: FRAC_2_PI * f.value,
        g: FRAC_2_PI * g.value,
    })
}

/// Large-b expansions of F and G.
pub fn fg_large_b(b: f64) -> (f64, f64) {
    let lead = FG_LARGE_B / b;
    let log = (2.0 * b).ln();
    let b3 = b * b * b;
    (lead + (log - 0.5) / (PI * b3), lead - (log + 0.5) / (PI * b3))
}

/// b = (1/Q)(3π/4 · (c/v_F) Ω)^(1/3)
pub fn anomalous_b(omega: f64, q: f64, m: &MaterialParams) -> f64 {
    (0.75 * PI * omega / m.v_f_over_c).cbrt() / q
}

/// Low-frequency impedances together with their validity flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowFrequencyImpedance {
    pub pair: ImpedancePair,
    pub b: f64,
    /// Smallest v over the χ range, reached at χ = 0.
    pub v_min: f64,
    /// True when v_min ≥ 10.
    pub regime_valid: bool,
}

/// Z_s = (Ω/Q)F(b), Z_p = (Q/Ω)/√(1 + 3(c/v_F Q)²) + (Ω/Q)G(b).
///
/// The caller is responsible for being in the regime Ω ≲ γ, v ≫ 1;
/// `regime_valid` reports whether v ≥ 10 everywhere on the χ range.
pub fn low_freq_impedances(point: &ResponsePoint, m: &MaterialParams) -> Result<LowFrequencyImpedance> {
    check_positive(point)?;
    let (omega, q) = (point.omega, point.q);
    let b = anomalous_b(omega, q, m);
    let fg = asymptotic_fg(b)?;
    let screening = 1.0 / (1.0 + 3.0 / (m.v_f_over_c * q).powi(2)).sqrt();
    let z_s = omega / q * fg.f;
    let omega_zp = q * screening + omega * omega / q * fg.g;
    let v_min = dielectric::nonlocal_v(omega, q, m);
    Ok(LowFrequencyImpedance {
        pair: ImpedancePair {
            z_s: Complex64::new(z_s, 0.0),
            z_p: Complex64::new(omega_zp / omega, 0.0),
            omega_zp: Complex64::new(omega_zp, 0.0),
            point: *point,
            model: ModelKind::Boltzmann,
            err_s: 0.0,
            err_p: 0.0,
        },
        b,
        v_min,
        regime_valid: v_min >= LOW_FREQ_MIN_V,
    })
}

/// Q → 0 limit of the anomalous impedances,
/// Z(Ω) = (4/3√3)((4/3π)(v_F/c)Ω²)^(1/3).
pub fn leontovich(omega: f64, m: &MaterialParams) -> f64 {
    FG_LARGE_B * (4.0 / (3.0 * PI) * m.v_f_over_c * omega * omega).cbrt()
}
