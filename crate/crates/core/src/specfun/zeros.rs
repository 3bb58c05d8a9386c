//! Positive zeros of J0 and J1 by McMahon's expansion plus safeguarded Newton.

use super::{j0, j1};
use crate::error::{Result, WaveError};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselZeroFamily {
    J0,
    J1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BesselZeroIndex {
    pub family: BesselZeroFamily,
    /// 1-based index of the zero.
    pub m: u32,
}

impl BesselZeroIndex {
    pub fn new(family: BesselZeroFamily, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(WaveError::Domain("zero index m must be >= 1".into()));
        }
        Ok(Self { family, m })
    }
}

/// McMahon initial guess for the m-th positive zero of J_nu, nu = 0 or 1.
fn mcmahon(nu: u32, m: u32) -> f64 {
    let mu = (4 * nu * nu) as f64;
    let beta = (m as f64 + nu as f64 / 2.0 - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
}

/// m-th positive zero of J0 or J1, accurate to |J(x)| <= 1e-13.
pub fn bessel_zero(idx: BesselZeroIndex) -> Result<f64> {
    let (f, df): (fn(f64) -> f64, fn(f64) -> f64) = match idx.family {
        BesselZeroFamily::J0 => (j0 as fn(f64) -> f64, (|x| -j1(x)) as fn(f64) -> f64),
        BesselZeroFamily::J1 => (j1 as fn(f64) -> f64, (|x| j0(x) - j1(x) / x) as fn(f64) -> f64),
    };
    let nu = match idx.family {
        BesselZeroFamily::J0 => 0,
        BesselZeroFamily::J1 => 1,
    };
    let guess = mcmahon(nu, idx.m);

    // bracket by a sign change around the guess; the zeros are ~pi apart
    let mut lo = guess - 0.6;
    let mut hi = guess + 0.6;
    if idx.family == BesselZeroFamily::J1 && idx.m == 1 {
        lo = lo.max(0.5); // avoid the zero of J1 at the origin
    }
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo * fhi > 0.0 {
        return Err(WaveError::Convergence(format!(
            "no sign change bracketing zero {} of {:?}",
            idx.m, idx.family
        )));
    }

    let mut x = guess.clamp(lo, hi);
    for _ in 0..80 {
        let fx = f(x);
        if fx * flo <= 0.0 {
            hi = x;
        } else {
            lo = x;
            flo = fx;
        }
        let newton = x - fx / df(x);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi) // bisection fallback
        };
        let done = (next - x).abs() <= 1e-15 * x;
        x = next;
        if done {
            break;
        }
    }
    // final Newton polish; quadratic convergence makes two steps plenty
    for _ in 0..2 {
        x -= f(x) / df(x);
    }
    if f(x).abs() <= 1e-13 {
        Ok(x)
    } else {
        Err(WaveError::Convergence(format!(
            "Newton failed for zero {} of {:?}",
            idx.m, idx.family
        )))
    }
}

/// Convenience accessors used throughout the construction.
pub fn j0_zero(m: u32) -> f64 {
    bessel_zero(BesselZeroIndex { family: BesselZeroFamily::J0, m }).expect("j0 zero")
}

pub fn j1_zero(m: u32) -> f64 {
    bessel_zero(BesselZeroIndex { family: BesselZeroFamily::J1, m }).expect("j1 zero")
}
