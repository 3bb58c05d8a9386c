//! The trapped-mode velocity potential, the Stokes stream function, their
//! gradients, and the semi-infinite Bessel-kernel integrals they are built
//! from.
//!
//! All field math runs in dimensionless meridional coordinates
//! (rho, eta) = (nu |x|, nu y), nu = omega^2/g; the physical scales enter
//! only through `ModeParams` at I/O boundaries. The ring singularity of the
//! potential sits at (rho_r, 0) and every evaluator refuses points within
//! `RING_GUARD` of it.

pub mod quad;

use crate::error::{Result, WaveError};
use crate::specfun::{self, i_n, j0, j1, j1_zero, k_n, y0, y1};
use std::f64::consts::PI;

/// Exclusion radius around the ring singularity at (rho_r, 0).
pub const RING_GUARD: f64 = 1e-6;

const EULER: f64 = 0.5772156649015329;

/// Trapping-mode parameters; the nondimensionalization anchor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams {
    /// 1-based index of the J1 zero selecting the ring radius.
    pub m: u32,
    /// Angular frequency (rad/s).
    pub omega: f64,
    /// Gravitational acceleration (m/s^2).
    pub g: f64,
    /// Wavenumber parameter nu = omega^2/g (1/m).
    pub nu: f64,
    /// Dimensionless ring radius, the m-th positive zero of J1.
    pub rho_r: f64,
}

impl ModeParams {
    pub fn new(m: u32, omega: f64, g: f64) -> Result<Self> {
        if m == 0 {
            return Err(WaveError::Domain("mode index m must be >= 1".into()));
        }
        if !(omega > 0.0) || !(g > 0.0) {
            return Err(WaveError::Domain(format!(
                "omega and g must be positive (got {omega}, {g})"
            )));
        }
        Ok(Self {
            m,
            omega,
            g,
            nu: omega * omega / g,
            rho_r: j1_zero(m),
        })
    }

    /// Unit-frequency, unit-gravity mode: nu = 1, so dimensionless and
    /// physical coordinates coincide.
    pub fn dimensionless(m: u32) -> Result<Self> {
        Self::new(m, 1.0, 1.0)
    }
}

/// Dimensionless meridional coordinates in the closed lower half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub rho: f64,
    pub eta: f64,
}

impl FieldPoint {
    pub fn new(rho: f64, eta: f64) -> Result<Self> {
        if !rho.is_finite() || !eta.is_finite() || rho < 0.0 || eta > 0.0 {
            return Err(WaveError::Domain(format!(
                "field point needs rho >= 0, eta <= 0 (got {rho}, {eta})"
            )));
        }
        Ok(Self { rho, eta })
    }
}

/// Potential, stream function and gradients at one point.
///
/// `psi` and `grad_psi` are heave-modified: for heave amplitude H they refer
/// to psi - (H/2) rho^2, which reduces to the plain stream function at H = 0.
/// `phi` and `grad_phi` are always the plain potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub phi: f64,
    pub psi: f64,
    pub grad_phi: (f64, f64),
    pub grad_psi: (f64, f64),
}

/// Oscillatory factor of the kernel integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKernel {
    /// k cos(k eta) + sin(k eta)
    CosPlusSin,
    /// k sin(k eta) - cos(k eta)
    SinMinusCos,
}

/// Derivative selector for the free-surface trace of the scaled remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaDerivative {
    Value,
    DRho,
    DEta,
}

fn guard_check(rho: f64, eta: f64, ring: f64) -> Result<()> {
    let d = rho - ring;
    if (d * d + eta * eta).sqrt() < RING_GUARD {
        Err(WaveError::SingularPoint { guard: RING_GUARD })
    } else {
        Ok(())
    }
}

/// Smallest k beyond which k^q e^{-k d} is negligible.
fn envelope_cut(d: f64, q: i32) -> f64 {
    let mut k = (45.0 / d).max(10.0);
    while k * d - q as f64 * k.ln() < 45.0 {
        k *= 1.25;
    }
    k
}

/// Sum of geometrically growing chunks [0,2], [2,4], [4,8], ... used when the
/// integrand decays without oscillating inside the truncation window.
fn chunked<F: Fn(f64) -> f64>(f: &F, k_end: f64, tol: f64) -> Result<f64> {
    let mut acc = 0.0f64;
    let mut lo = 0.0;
    let mut hi = 2.0;
    let mut negligible = 0;
    loop {
        let v = quad::integrate(f, lo, hi, 0.1 * tol * (1.0 + acc.abs()))?;
        acc += v;
        if v.abs() <= 0.1 * tol * (1.0 + acc.abs()) {
            negligible += 1;
        } else {
            negligible = 0;
        }
        if negligible >= 2 || lo >= k_end {
            return Ok(acc);
        }
        lo = hi;
        hi *= 2.0;
    }
}

/// Semi-infinite Bessel-kernel integral
///
/// int_0^inf trig(k eta) I_{inner}(k sigma) K_{outer}(k tau) k^power/(k^2+1) dk.
///
/// `power` 2, 3, 4 covers the potential, its gradient and the stream-function
/// derivatives; 0 is admitted so that power-0 plus power-2 calls compose the
/// unweighted moment int k I K dk used as a closed-form cross-check.
///
/// Requires 0 <= sigma <= tau and eta <= 0. The integrand decays like
/// e^{-k(tau-sigma)}; when tau = sigma it is only conditionally convergent
/// (Abel sense) and the tail is summed over half periods of the trig factor
/// with convergence acceleration.
pub fn kernel_integral(
    trig: TrigKernel,
    inner_order: u8,
    outer_order: u8,
    sigma: f64,
    tau: f64,
    eta: f64,
    power: i32,
) -> Result<f64> {
    kernel_integral_tol(trig, inner_order, outer_order, sigma, tau, eta, power, 1e-12)
}

/// Same integral with an explicit accuracy target; the coarse level-line and
/// stagnation scans run at relaxed tolerance and polish at full accuracy.
#[allow(clippy::too_many_arguments)]
pub(crate) fn kernel_integral_tol(
    trig: TrigKernel,
    inner_order: u8,
    outer_order: u8,
    sigma: f64,
    tau: f64,
    eta: f64,
    power: i32,
    tol: f64,
) -> Result<f64> {
    if !(sigma >= 0.0) || !(tau >= sigma) || !(eta <= 0.0) {
        return Err(WaveError::Domain(format!(
            "kernel integral needs 0 <= sigma <= tau, eta <= 0 (got {sigma}, {tau}, {eta})"
        )));
    }
    if inner_order > 2 || outer_order > 2 {
        return Err(WaveError::Domain(format!(
            "kernel orders limited to 0..=2 (got {inner_order}, {outer_order})"
        )));
    }
    if !matches!(power, 0 | 2 | 3 | 4) {
        return Err(WaveError::Domain(format!("unsupported power {power}")));
    }
    guard_check(sigma, eta, tau)?;
    if sigma == 0.0 && inner_order >= 1 {
        return Ok(0.0);
    }

    let io = inner_order as u32;
    let ko = outer_order as u32;
    let f = move |k: f64| -> f64 {
        let t = match trig {
            TrigKernel::CosPlusSin => k * (k * eta).cos() + (k * eta).sin(),
            TrigKernel::SinMinusCos => k * (k * eta).sin() - (k * eta).cos(),
        };
        let rat = k.powi(power) / (k * k + 1.0);
        let x = k * sigma;
        let y = k * tau;
        if y < 1e-7 {
            // leading small-argument behavior; the k^power factor keeps the
            // product finite for every admissible order
            let i_fac = match io {
                0 => 1.0,
                1 => 0.5 * x,
                _ => 0.125 * x * x,
            };
            let k_fac = match ko {
                0 => -((0.5 * y).ln() + EULER),
                1 => 1.0 / y,
                _ => 2.0 / (y * y),
            };
            return t * rat * i_fac * k_fac;
        }
        let ik = if x >= specfun::IK_CUT {
            specfun::i_scaled(io, x) * specfun::k_scaled(ko, y) * (x - y).exp()
        } else {
            i_n(io, x) * k_n(ko, y)
        };
        t * rat * ik
    };

    let d = tau - sigma;
    if eta == 0.0 {
        // guard guarantees d >= RING_GUARD here
        return chunked(&f, envelope_cut(d, power + 1), tol);
    }
    let half_period = PI / (-eta);
    let k_end = if d > 0.0 {
        envelope_cut(d, power + 1)
    } else {
        f64::INFINITY
    };
    if k_end < half_period {
        return chunked(&f, k_end, tol);
    }
    let k0 = half_period * (8.0 / half_period).ceil().max(1.0);
    let head = quad::integrate(&f, 0.0, k0, 0.1 * tol)?;
    let tail = quad::euler_tail(
        |j| {
            quad::integrate(
                &f,
                k0 + j as f64 * half_period,
                k0 + (j + 1) as f64 * half_period,
                0.01 * tol,
            )
        },
        tol,
    )?;
    Ok(head + tail)
}

/// Potential of the free-surface ring source of dimensionless radius `ring`,
/// including the outgoing-wave term, which carries a factor J1(ring) and so
/// vanishes when the radius sits on a J1 zero.
pub fn phi_ring(p: FieldPoint, ring: f64) -> Result<f64> {
    guard_check(p.rho, p.eta, ring)?;
    phi_raw(p.rho, p.eta, ring, 1e-12)
}

// The outer branch carries the opposite overall sign from the inner one.
// This is forced by continuity across rho = ring together with the Wronskian
// identity I0(x)K1(x) + I1(x)K0(x) = 1/x and J0 Y1 = -2/(pi x) at a J1 zero,
// and it is the sign the stream function requires through the Stokes
// relations; with both branches taken at the same sign the two
// representations would be exact negatives of each other on the interface.
fn phi_raw(rho: f64, eta: f64, ring: f64, tol: f64) -> Result<f64> {
    let pi2 = PI * PI;
    if rho <= ring {
        let v = kernel_integral_tol(TrigKernel::CosPlusSin, 0, 1, rho, ring, eta, 2, tol)?;
        Ok(2.0 * v - pi2 * eta.exp() * j0(rho) * y1(ring))
    } else {
        let v = kernel_integral_tol(TrigKernel::CosPlusSin, 1, 0, ring, rho, eta, 2, tol)?;
        Ok(-2.0 * v + pi2 * eta.exp() * y0(rho) * j1(ring))
    }
}

fn grad_phi_raw(rho: f64, eta: f64, ring: f64, tol: f64) -> Result<(f64, f64)> {
    let pi2 = PI * PI;
    if rho <= ring {
        let dr = kernel_integral_tol(TrigKernel::CosPlusSin, 1, 1, rho, ring, eta, 3, tol)?;
        let de = kernel_integral_tol(TrigKernel::SinMinusCos, 0, 1, rho, ring, eta, 3, tol)?;
        Ok((
            2.0 * dr + pi2 * eta.exp() * j1(rho) * y1(ring),
            -2.0 * de - pi2 * eta.exp() * j0(rho) * y1(ring),
        ))
    } else {
        let dr = kernel_integral_tol(TrigKernel::CosPlusSin, 1, 1, ring, rho, eta, 3, tol)?;
        let de = kernel_integral_tol(TrigKernel::SinMinusCos, 1, 0, ring, rho, eta, 3, tol)?;
        Ok((
            2.0 * dr - pi2 * eta.exp() * y1(rho) * j1(ring),
            2.0 * de + pi2 * eta.exp() * y0(rho) * j1(ring),
        ))
    }
}

fn psi_raw(rho: f64, eta: f64, ring: f64, tol: f64) -> Result<f64> {
    let pi2 = PI * PI;
    if rho <= ring {
        let v = kernel_integral_tol(TrigKernel::SinMinusCos, 1, 1, rho, ring, eta, 2, tol)?;
        Ok(-pi2 * rho * eta.exp() * j1(rho) * y1(ring) - 2.0 * rho * v)
    } else {
        let v = kernel_integral_tol(TrigKernel::SinMinusCos, 1, 1, ring, rho, eta, 2, tol)?;
        Ok(-2.0 * rho * v)
    }
}

/// Potential at a caller-chosen quadrature tolerance.
pub(crate) fn phi_tol(p: FieldPoint, mp: &ModeParams, tol: f64) -> Result<f64> {
    guard_check(p.rho, p.eta, mp.rho_r)?;
    phi_raw(p.rho, p.eta, mp.rho_r, tol)
}

/// Gradient of the potential at a caller-chosen quadrature tolerance.
pub(crate) fn grad_phi_tol(p: FieldPoint, mp: &ModeParams, tol: f64) -> Result<(f64, f64)> {
    guard_check(p.rho, p.eta, mp.rho_r)?;
    grad_phi_raw(p.rho, p.eta, mp.rho_r, tol)
}

/// Heave-modified stream function at a caller-chosen quadrature tolerance.
pub(crate) fn psi_heave_tol(p: FieldPoint, mp: &ModeParams, heave: f64, tol: f64) -> Result<f64> {
    guard_check(p.rho, p.eta, mp.rho_r)?;
    Ok(psi_raw(p.rho, p.eta, mp.rho_r, tol)? - 0.5 * heave * p.rho * p.rho)
}

/// Gradient of the heave-modified stream function via the Stokes relations,
/// at a caller-chosen quadrature tolerance.
pub(crate) fn grad_psi_heave_tol(
    p: FieldPoint,
    mp: &ModeParams,
    heave: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    guard_check(p.rho, p.eta, mp.rho_r)?;
    let (dr, de) = grad_phi_raw(p.rho, p.eta, mp.rho_r, tol)?;
    Ok((p.rho * de - heave * p.rho, -p.rho * dr))
}

/// Trapped-mode potential (wave term absent: the ring radius is a J1 zero).
pub fn phi(p: FieldPoint, mp: &ModeParams) -> Result<f64> {
    guard_check(p.rho, p.eta, mp.rho_r)?;
    phi_raw(p.rho, p.eta, mp.rho_r, 1e-12)
}

/// Stokes stream function of the trapped mode, normalized to vanish far from
/// the ring.
pub fn psi(p: FieldPoint, mp: &ModeParams) -> Result<f64> {
    guard_check(p.rho, p.eta, mp.rho_r)?;
    psi_raw(p.rho, p.eta, mp.rho_r, 1e-12)
}

/// Heave-modified stream function psi - (H/2) rho^2; its level curves are the
/// candidate wetted surfaces of a body heaving with amplitude H.
pub fn psi_heave(p: FieldPoint, mp: &ModeParams, heave: f64) -> Result<f64> {
    Ok(psi(p, mp)? - 0.5 * heave * p.rho * p.rho)
}

/// Potential, heave-modified stream function, and both gradients.
///
/// grad_psi is obtained from grad_phi through the exact Stokes relations
/// d_rho psi = rho d_eta phi, d_eta psi = -rho d_rho phi, with the heave term
/// folded into the radial component.
pub fn field_sample(p: FieldPoint, mp: &ModeParams, heave: f64) -> Result<FieldSample> {
    guard_check(p.rho, p.eta, mp.rho_r)?;
    let phi = phi_raw(p.rho, p.eta, mp.rho_r, 1e-12)?;
    let psi = psi_raw(p.rho, p.eta, mp.rho_r, 1e-12)? - 0.5 * heave * p.rho * p.rho;
    let (dphi_rho, dphi_eta) = grad_phi_raw(p.rho, p.eta, mp.rho_r, 1e-12)?;
    Ok(FieldSample {
        phi,
        psi,
        grad_phi: (dphi_rho, dphi_eta),
        grad_psi: (p.rho * dphi_eta - heave * p.rho, -p.rho * dphi_rho),
    })
}

/// Free-surface trace (eta = 0) of the scaled non-oscillatory remainder of
/// the stream function, or its first derivatives there. Decays like
/// m^{-5/2} as the mode index grows, uniformly on [0, rho].
pub fn lambda_trace(rho: f64, mp: &ModeParams, derivative: LambdaDerivative) -> Result<f64> {
    if !(rho >= 0.0) || rho >= mp.rho_r - RING_GUARD {
        return Err(WaveError::Domain(format!(
            "trace argument must satisfy 0 <= rho < ring radius (got {rho})"
        )));
    }
    let scale = 2.0 / y1(mp.rho_r);
    match derivative {
        LambdaDerivative::Value => {
            if rho == 0.0 {
                return Ok(0.0);
            }
            let v = kernel_integral(TrigKernel::SinMinusCos, 1, 1, rho, mp.rho_r, 0.0, 2)?;
            Ok(scale * rho * v)
        }
        LambdaDerivative::DRho => {
            let v = kernel_integral(TrigKernel::SinMinusCos, 0, 1, rho, mp.rho_r, 0.0, 3)?;
            Ok(scale * rho * v)
        }
        LambdaDerivative::DEta => {
            if rho == 0.0 {
                return Ok(0.0);
            }
            let v = kernel_integral(TrigKernel::CosPlusSin, 1, 1, rho, mp.rho_r, 0.0, 3)?;
            Ok(scale * rho * v)
        }
    }
}
