//! Adaptive Gauss–Kronrod integration on finite and semi-infinite domains.
//!
//! The impedance and force integrands are smooth, non-oscillatory, and decay
//! either exponentially (χ-integrals decay like sech χ, force kernels like
//! e^(-2dρ)) or algebraically (real-frequency k_z integrals decay like 1/k_z²).
//! Semi-infinite domains with exponential or sech decay are truncated at the
//! point where the decay envelope bounds the remaining tail below 1% of the
//! requested accuracy; the bound is added to the reported error. Algebraic
//! tails are handled exactly by the map x = a + (1 - t)/t onto (0, 1].
//!
//! Every call is sequential and deterministic: the same specification and
//! integrand always produce a bit-identical result.

mod gauss_kronrod;
mod oracle;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use gauss_kronrod::qk21;

pub use oracle::brute_force_oracle;

/// Values that can be integrated: real or complex scalars, or small
/// aggregates with a magnitude.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(&self) -> f64;

    fn is_finite_value(&self) -> bool {
        self.magnitude().is_finite()
    }
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite { a: f64, b: f64 },
    SemiInfinite { a: f64 },
}

/// Asymptotic envelope of the integrand on a semi-infinite domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayHint {
    None,
    /// |f(x)| ≲ C e^(-rate·x)
    Exponential { rate: f64 },
    /// |f(x)| ≲ C x^(-power), power > 1
    Algebraic { power: f64 },
    /// |f(x)| ≲ C sech(x)
    Sech,
}

impl DecayHint {
    fn scan_step(&self) -> f64 {
        match *self {
            DecayHint::Exponential { rate } => 1.0 / rate,
            _ => 1.0,
        }
    }

    /// Upper bound on ∫_x^∞ |f| given |f(x)|, assuming the envelope holds
    /// from x onwards.
    fn tail_bound(&self, fx: f64, x: f64) -> f64 {
        match *self {
            DecayHint::Exponential { rate } => fx / rate,
            DecayHint::Sech => {
                // ∫_x^∞ sech = 2 atan(e^-x); divide by sech x.
                let ratio = if x < 20.0 {
                    x.cosh() * 2.0 * (-x).exp().atan()
                } else {
                    1.0
                };
                fx * ratio
            }
            DecayHint::Algebraic { power } => fx * x.abs() / (power - 1.0),
            DecayHint::None => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralSpec {
    pub domain: Domain,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub decay: DecayHint,
    pub max_subdivisions: usize,
}

pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;
const MAX_SCAN_STEPS: usize = 4096;
/// Fraction of the accuracy target the truncated tail may use.
const TAIL_SHARE: f64 = 0.01;

impl IntegralSpec {
    pub fn finite(a: f64, b: f64) -> Self {
        IntegralSpec {
            domain: Domain::Finite { a, b },
            rel_tol: 1e-10,
            abs_tol: 0.0,
            decay: DecayHint::None,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }

    pub fn semi_infinite(a: f64, decay: DecayHint) -> Self {
        IntegralSpec {
            domain: Domain::SemiInfinite { a },
            decay,
            ..IntegralSpec::finite(0.0, 1.0)
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 1e-14 && self.rel_tol < 1e-1) {
            return Err(Error::InvalidSpec(format!(
                "relative tolerance {} outside (1e-14, 1e-1)",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "absolute floor {} must be finite and non-negative",
                self.abs_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidSpec("subdivision budget is zero".into()));
        }
        match self.domain {
            Domain::Finite { a, b } => {
                if !(a.is_finite() && b.is_finite() && a < b) {
                    return Err(Error::InvalidSpec(format!(
                        "finite domain needs a < b, got [{a}, {b}]"
                    )));
                }
            }
            Domain::SemiInfinite { a } => {
                if !a.is_finite() {
                    return Err(Error::InvalidSpec("lower limit must be finite".into()));
                }
                match self.decay {
                    DecayHint::None => {
                        return Err(Error::InvalidSpec(
                            "semi-infinite domain requires a decay hint".into(),
                        ))
                    }
                    DecayHint::Exponential { rate } if !(rate > 0.0 && rate.is_finite()) => {
                        return Err(Error::InvalidSpec(format!("decay rate {rate} must be > 0")))
                    }
                    DecayHint::Algebraic { power } if !(power > 1.0) => {
                        return Err(Error::InvalidSpec(format!(
                            "algebraic decay power {power} must exceed 1"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        (self.rel_tol * value).max(self.abs_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult<V> {
    pub value: V,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Upper limit actually used when a semi-infinite domain was truncated.
    pub truncated_at: Option<f64>,
}

impl<V: QuadValue> IntegralResult<V> {
    /// Converts a non-converged result into an error carrying `context`.
    pub fn require_converged(self, context: impl FnOnce() -> String) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::Unconverged {
                context: context(),
                estimate: self.value.magnitude(),
                error: self.error,
            })
        }
    }
}

/// Integrates an infallible integrand.
pub fn integrate_adaptive<V, F>(mut f: F, spec: &IntegralSpec) -> Result<IntegralResult<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> V,
{
    try_integrate_adaptive(|x| Ok(f(x)), spec)
}

/// Integrates an integrand that may itself fail; the first failure aborts
/// the integration and is returned unchanged.
pub fn try_integrate_adaptive<V, F>(mut f: F, spec: &IntegralSpec) -> Result<IntegralResult<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    spec.validate()?;
    let mut evaluations = 0usize;
    let mut counted = |x: f64| -> Result<V> {
        evaluations += 1;
        let v = f(x)?;
        if v.is_finite_value() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x })
        }
    };

    let result = match spec.domain {
        Domain::Finite { a, b } => {
            let r = adaptive_finite(&mut counted, a, b, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)?;
            (r.value, r.error, r.converged, None)
        }
        Domain::SemiInfinite { a } => match spec.decay {
            DecayHint::Algebraic { .. } => {
                let mut mapped = |t: f64| -> Result<V> {
                    let x = a + (1.0 - t) / t;
                    Ok(counted(x)? * (1.0 / (t * t)))
                };
                let r = adaptive_finite(&mut mapped, 0.0, 1.0, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)?;
                (r.value, r.error, r.converged, None)
            }
            _ => {
                let cut = find_truncation(&mut counted, a, spec)?;
                let r = adaptive_finite(
                    &mut counted,
                    a,
                    cut.upper,
                    spec.rel_tol * (1.0 - 2.0 * TAIL_SHARE),
                    spec.abs_tol * (1.0 - 2.0 * TAIL_SHARE),
                    spec.max_subdivisions,
                )?;
                let error = r.error + cut.tail;
                let converged =
                    r.converged && cut.found && error <= spec.target(r.value.magnitude());
                (r.value, error, converged, Some(cut.upper))
            }
        },
    };

    let (value, error, converged, truncated_at) = result;
    Ok(IntegralResult {
        value,
        error,
        evaluations,
        converged,
        truncated_at,
    })
}

struct Truncation {
    upper: f64,
    tail: f64,
    found: bool,
}

/// Marches along the domain until the decay envelope, anchored at two
/// consecutive decreasing samples, bounds the tail below the accuracy share.
fn find_truncation<V, F>(f: &mut F, a: f64, spec: &IntegralSpec) -> Result<Truncation>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    let step = spec.decay.scan_step();
    let mut crude = V::default();
    let mut prev_mag = f64::INFINITY;
    let mut prev_ok = false;
    let mut last = (a, f64::INFINITY);
    for k in 1..=MAX_SCAN_STEPS {
        let x = a + k as f64 * step;
        let fx = f(x)?;
        crude = crude + fx * step;
        let mag = fx.magnitude();
        let tail = spec.decay.tail_bound(mag, x);
        let goal = TAIL_SHARE * spec.target(crude.magnitude());
        let ok = mag <= prev_mag && tail <= goal;
        if ok && prev_ok {
            return Ok(Truncation {
                upper: x,
                tail,
                found: true,
            });
        }
        prev_ok = ok;
        prev_mag = mag;
        last = (x, tail);
    }
    Ok(Truncation {
        upper: last.0,
        tail: last.1,
        found: false,
    })
}

#[derive(Debug, Clone, Copy)]
struct Segment<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
    splittable: bool,
}

struct Adaptive<V> {
    value: V,
    error: f64,
    converged: bool,
}

/// Global adaptive bisection driven by the largest local error.
fn adaptive_finite<V, F>(
    f: &mut F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Adaptive<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    let first = qk21(f, a, b)?;
    let mut segments = vec![Segment {
        a,
        b,
        value: first.value,
        error: first.error,
        splittable: true,
    }];

    loop {
        let (value, error) = segments.iter().fold((V::default(), 0.0), |(v, e), s| {
            (v + s.value, e + s.error)
        });
        let target = (rel_tol * value.magnitude()).max(abs_tol);
        if error <= target {
            return Ok(Adaptive {
                value,
                error,
                converged: true,
            });
        }
        if segments.len() >= max_subdivisions {
            return Ok(Adaptive {
                value,
                error,
                converged: false,
            });
        }

        let worst = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.splittable)
            .fold(None::<(usize, f64)>, |best, (i, s)| match best {
                Some((_, e)) if e >= s.error => best,
                _ => Some((i, s.error)),
            });
        let Some((idx, _)) = worst else {
            return Ok(Adaptive {
                value,
                error,
                converged: false,
            });
        };

        let seg = segments[idx];
        let mid = 0.5 * (seg.a + seg.b);
        let width = seg.b - seg.a;
        if !(mid > seg.a && mid < seg.b) || width <= 1e3 * f64::EPSILON * seg.a.abs().max(seg.b.abs()) {
            segments[idx].splittable = false;
            continue;
        }
        let left = qk21(f, seg.a, mid)?;
        let right = qk21(f, mid, seg.b)?;
        segments[idx] = Segment {
            a: seg.a,
            b: mid,
            value: left.value,
            error: left.error,
            splittable: true,
        };
        segments.insert(
            idx + 1,
            Segment {
                a: mid,
                b: seg.b,
                value: right.value,
                error: right.error,
                splittable: true,
            },
        );
    }
}

/// Value carried through the outer integral of a nested integration: the
/// inner integral together with its error estimate.
#[derive(Debug, Clone, Copy, Default)]
struct WithError<V> {
    value: V,
    error: f64,
}

impl<V: QuadValue> Add for WithError<V> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        WithError {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

impl<V: QuadValue> Sub for WithError<V> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        WithError {
            value: self.value - rhs.value,
            error: self.error - rhs.error,
        }
    }
}

impl<V: QuadValue> Mul<f64> for WithError<V> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        WithError {
            value: self.value * rhs,
            error: self.error * rhs,
        }
    }
}

impl<V: QuadValue> QuadValue for WithError<V> {
    fn magnitude(&self) -> f64 {
        self.value.magnitude()
    }

    fn is_finite_value(&self) -> bool {
        self.value.is_finite_value() && self.error.is_finite()
    }
}

/// Nested integration ∫ dx ∫ dy f(x, y).
///
/// `inner` builds the inner specification for each outer abscissa; its
/// relative tolerance must not exceed a tenth of the outer one. The reported
/// error is the outer estimate plus the outer integral of the inner errors.
/// A non-converged inner integral aborts with [`Error::Unconverged`].
pub fn integrate_2d<V, I, F>(outer: &IntegralSpec, mut inner: I, mut f: F) -> Result<IntegralResult<V>>
where
    V: QuadValue,
    I: FnMut(f64) -> IntegralSpec,
    F: FnMut(f64, f64) -> Result<V>,
{
    outer.validate()?;
    let mut inner_evaluations = 0usize;
    let lifted = |x: f64| -> Result<WithError<V>> {
        let spec = inner(x);
        if spec.rel_tol > outer.rel_tol / 10.0 * (1.0 + 1e-12) {
            return Err(Error::InvalidSpec(format!(
                "inner tolerance {} exceeds a tenth of the outer tolerance {}",
                spec.rel_tol, outer.rel_tol
            )));
        }
        let r = try_integrate_adaptive(|y| f(x, y), &spec)?;
        inner_evaluations += r.evaluations;
        let r = r.require_converged(|| format!("inner integral at x = {x:e}"))?;
        Ok(WithError {
            value: r.value,
            error: r.error,
        })
    };
    // The outer pass runs slightly tighter so that outer and inner errors
    // together stay within the requested accuracy.
    let tightened = IntegralSpec {
        rel_tol: outer.rel_tol * 0.85,
        abs_tol: outer.abs_tol * 0.85,
        ..*outer
    };
    let r = try_integrate_adaptive(lifted, &tightened)?;
    let error = r.error + r.value.error.abs();
    let converged = r.converged && error <= outer.target(r.value.value.magnitude());
    Ok(IntegralResult {
        value: r.value.value,
        error,
        evaluations: inner_evaluations,
        converged,
        truncated_at: r.truncated_at,
    })
}
