//! Fixed-grid reference integrator used to cross-check the adaptive engine.
//!
//! Composite 3-point Gauss–Legendre over `n` equal panels in a mapped
//! variable. Finite (and truncated) domains use the smoothstep map
//! x = a + (b - a)(3t² - 2t³), which flattens integrable endpoint
//! singularities without changing the convergence order on smooth
//! integrands. Algebraic tails use x = a + tan(πs/2). Nothing is adaptive.

use std::f64::consts::FRAC_PI_2;

use super::{DecayHint, Domain, IntegralResult, IntegralSpec, QuadValue};
use crate::error::{Error, Result};

const GL3_NODES: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const GL3_WEIGHTS: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];

/// Truncation point of a semi-infinite domain for the oracle, chosen so the
/// decay envelope has fallen by more than e^-44.
fn oracle_cutoff(a: f64, hint: DecayHint) -> Option<f64> {
    match hint {
        DecayHint::Exponential { rate } => Some(a + 44.0 / rate),
        DecayHint::Sech => Some(a.max(0.0) + 45.0),
        _ => None,
    }
}

fn composite<V, F>(f: &mut F, n: usize, map: &dyn Fn(f64) -> (f64, f64)) -> Result<V>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    let h = 1.0 / n as f64;
    let mut total = V::default();
    for i in 0..n {
        let mid = (i as f64 + 0.5) * h;
        let mut panel = V::default();
        for (node, weight) in GL3_NODES.iter().zip(GL3_WEIGHTS) {
            let t = mid + 0.5 * h * node;
            let (x, jac) = map(t);
            let v = f(x)?;
            if !v.is_finite_value() {
                return Err(Error::NonFinite { x });
            }
            panel = panel + v * (weight * jac);
        }
        total = total + panel * (0.5 * h);
    }
    Ok(total)
}

/// Brute-force composite integration with `n` panels.
///
/// The error estimate is the difference between the `n`- and `n/2`-panel
/// sums. Deterministic; meant for tests and cross-checks only.
pub fn brute_force_oracle<V, F>(mut f: F, spec: &IntegralSpec, n: usize) -> Result<IntegralResult<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    if n < 2 {
        return Err(Error::InvalidSpec(format!("oracle needs n >= 2 panels, got {n}")));
    }
    let smoothstep = |a: f64, b: f64| {
        move |t: f64| {
            let len = b - a;
            (a + len * t * t * (3.0 - 2.0 * t), len * 6.0 * t * (1.0 - t))
        }
    };

    let (map, truncated_at): (Box<dyn Fn(f64) -> (f64, f64)>, Option<f64>) = match spec.domain {
        Domain::Finite { a, b } => (Box::new(smoothstep(a, b)), None),
        Domain::SemiInfinite { a } => match oracle_cutoff(a, spec.decay) {
            Some(b) => (Box::new(smoothstep(a, b)), Some(b)),
            None => match spec.decay {
                DecayHint::Algebraic { .. } => (
                    Box::new(move |s: f64| {
                        let arg = FRAC_PI_2 * s;
                        let c = arg.cos();
                        (a + arg.tan(), FRAC_PI_2 / (c * c))
                    }),
                    None,
                ),
                _ => {
                    return Err(Error::InvalidSpec(
                        "semi-infinite domain requires a decay hint".into(),
                    ))
                }
            },
        },
    };

    let fine: V = composite(&mut f, n, &*map)?;
    let coarse: V = composite(&mut f, (n / 2).max(1), &*map)?;
    Ok(IntegralResult {
        value: fine,
        error: (fine - coarse).magnitude(),
        evaluations: 3 * (n + (n / 2).max(1)),
        converged: true,
        truncated_at,
    })
}
