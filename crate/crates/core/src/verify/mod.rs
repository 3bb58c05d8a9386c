//! Numerical certification that a synthesized (structure, mode) pair solves
//! the coupled spectral problem: kinematic condition on every wetted surface,
//! the six rigid-body motion equations per body, equipartition of energy over
//! a growing family of truncated cylinders, and far-field decay without an
//! outgoing-wave component.

use crate::error::{Result, WaveError};
use crate::geom::{panels, vertex_tangents, Panel};
use crate::potential::{self, phi_ring, quad, FieldPoint, ModeParams};
use crate::structure::{assemble_matrices, body_moments, BodySection, Structure};
use nalgebra::Vector6;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};


/// Quadrature tolerance for field evaluations on wetted surfaces.
const FIELD_TOL: f64 = 1e-9;
/// Quadrature tolerance for field evaluations in volume integrals.
const VOLUME_TOL: f64 = 1e-7;
/// Radius of the disk excluded around the ring singularity.
const GUARD_RADIUS: f64 = 0.02;
/// Margin by which the polar patch extends past the ring body.
const PATCH_MARGIN: f64 = 0.2;
/// Relative accuracy target of the meridional volume quadrature.
const VOLUME_REL: f64 = 1e-3;

/// Truncated cylinder {|x| < b, -d < y < 0} in dimensionless coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationDomain {
    pub b: f64,
    pub d: f64,
}

impl TruncationDomain {
    pub fn new(b: f64, d: f64) -> Result<Self> {
        if !(b > 0.0) || !(d > 0.0) || !b.is_finite() || !d.is_finite() {
            return Err(WaveError::Domain(format!(
                "truncation cylinder needs positive finite b, d (got {b}, {d})"
            )));
        }
        Ok(Self { b, d })
    }
}

/// Pass thresholds for [`verify_structure`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative kinematic residual on each wetted surface.
    pub kinematic: f64,
    /// Absolute bound on the five symmetry-protected motion equations.
    pub motion_trivial: f64,
    /// Relative bound on the heave motion equation.
    pub motion_heave: f64,
    /// Relative energy gap at the largest truncation domain.
    pub equipartition_gap: f64,
    /// Upper bound on the fitted far-field exponent.
    pub far_field_max: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            kinematic: 1e-6,
            motion_trivial: 1e-10,
            motion_heave: 1e-5,
            equipartition_gap: 0.02,
            far_field_max: -1.4,
        }
    }
}

/// Outcome of the full certification run.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// Per-body maximum relative kinematic residual.
    pub bc_residuals: Vec<f64>,
    /// Per-body residuals of the six motion equations.
    pub motion_eq_residuals: Vec<Vector6<f64>>,
    /// Scale against which each body's heave residual is judged.
    pub motion_scales: Vec<f64>,
    /// (lhs, rhs, relative gap) of the energy identity per domain.
    pub equipartition: Vec<(f64, f64, f64)>,
    /// Fitted decay exponent of the free-surface trace.
    pub far_field_exponent: f64,
    pub passed: bool,
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "verification {}", if self.passed { "PASSED" } else { "FAILED" })?;
        for (k, r) in self.bc_residuals.iter().enumerate() {
            writeln!(f, "  body {k}: kinematic residual {r:.3e}")?;
        }
        for (k, (r, s)) in self
            .motion_eq_residuals
            .iter()
            .zip(&self.motion_scales)
            .enumerate()
        {
            writeln!(
                f,
                "  body {k}: heave eq residual {:.3e} (scale {s:.3e}), others max {:.3e}",
                r[3],
                r.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != 3)
                    .map(|(_, v)| v.abs())
                    .fold(0.0, f64::max)
            )?;
        }
        for (lhs, rhs, gap) in &self.equipartition {
            writeln!(f, "  energy lhs {lhs:.6e} rhs {rhs:.6e} gap {gap:.3e}")?;
        }
        writeln!(f, "  far-field exponent {:.3}", self.far_field_exponent)
    }
}

impl VerificationReport {
    /// Residuals as a CSV document (one row per body plus summary rows).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,index,value\n");
        for (k, r) in self.bc_residuals.iter().enumerate() {
            out.push_str(&format!("kinematic,{k},{r:.17e}\n"));
        }
        for (k, r) in self.motion_eq_residuals.iter().enumerate() {
            for (i, v) in r.iter().enumerate() {
                out.push_str(&format!("motion_{i},{k},{v:.17e}\n"));
            }
        }
        for (i, (lhs, rhs, gap)) in self.equipartition.iter().enumerate() {
            out.push_str(&format!("equipartition_lhs,{i},{lhs:.17e}\n"));
            out.push_str(&format!("equipartition_rhs,{i},{rhs:.17e}\n"));
            out.push_str(&format!("equipartition_gap,{i},{gap:.17e}\n"));
        }
        out.push_str(&format!("far_field_exponent,0,{:.17e}\n", self.far_field_exponent));
        out.push_str(&format!("passed,0,{}\n", u8::from(self.passed)));
        out
    }
}

// ---------------------------------------------------------------------------
// wetted-curve geometry

/// Maximum relative residual of the kinematic condition on body `k`: the
/// normal velocity must match the heave motion, n . (grad phi - (0, H)) = 0.
pub fn check_kinematic(s: &Structure, k: usize) -> Result<f64> {
    let b = s
        .bodies
        .get(k)
        .ok_or_else(|| WaveError::Domain(format!("no body with index {k}")))?;
    let tans = vertex_tangents(&b.wetted.points)?;
    let res: Result<Vec<f64>> = b
        .wetted
        .points
        .par_iter()
        .zip(&tans)
        .map(|(p, t)| {
            let resid = |g: (f64, f64)| {
                // normal pointing from the water into the body
                let (nr, ne) = (-t.1, t.0);
                let num = (nr * g.0 + ne * (g.1 - b.heave)).abs();
                num / (g.0 * g.0 + g.1 * g.1).sqrt().max(1e-12)
            };
            let r = resid(potential::grad_phi_tol(*p, &s.mode, FIELD_TOL)?);
            if r <= 1e-7 {
                return Ok(r);
            }
            // the fast-tolerance quadrature can under-deliver close to the
            // ring near the surface; recheck offenders at full accuracy
            Ok(resid(potential::grad_phi_tol(*p, &s.mode, 1e-12)?))
        })
        .collect();
    Ok(res?.into_iter().fold(0.0, f64::max))
}

// ---------------------------------------------------------------------------
// surface quadrature over the revolved wetted curve

const G4_U: [f64; 4] = [
    0.06943184420297371,
    0.33000947820757187,
    0.6699905217924281,
    0.9305681557970262,
];
const G4_W: [f64; 4] = [
    0.17392742256872692,
    0.3260725774312731,
    0.3260725774312731,
    0.17392742256872692,
];

fn gauss_on<F>(panel: &Panel, a: f64, b: f64, g: &F) -> Result<f64>
where
    F: Fn(FieldPoint, (f64, f64)) -> Result<f64>,
{
    let mut acc = 0.0;
    for (u, w) in G4_U.iter().zip(&G4_W) {
        let (pos, der) = panel.at(a + u * (b - a));
        // the Hermite arc may overshoot the waterline by O(h^3); clamp
        let p = FieldPoint::new(pos.0.max(0.0), pos.1.min(0.0))?;
        acc += w * g(p, der)?;
    }
    Ok(acc * (b - a))
}

fn adapt_panel<F>(panel: &Panel, a: f64, b: f64, whole: f64, tol: f64, depth: u32, g: &F) -> Result<f64>
where
    F: Fn(FieldPoint, (f64, f64)) -> Result<f64>,
{
    let mid = 0.5 * (a + b);
    let left = gauss_on(panel, a, mid, g)?;
    let right = gauss_on(panel, mid, b, g)?;
    let err = (left + right - whole).abs();
    if err <= tol || depth >= 10 {
        return Ok(left + right);
    }
    Ok(adapt_panel(panel, a, mid, left, 0.5 * tol, depth + 1, g)?
        + adapt_panel(panel, mid, b, right, 0.5 * tol, depth + 1, g)?)
}

/// Integral over the revolved wetted surface of a meridional density:
/// returns 2 pi * sum over panels of int g(p, dp/du) du. The caller folds the
/// arc-length, radius and normal factors into `g` through the derivative.
fn wetted_integral<F>(pts: &[FieldPoint], g: F) -> Result<f64>
where
    F: Fn(FieldPoint, (f64, f64)) -> Result<f64> + Sync,
{
    let panels = panels(pts)?;
    let coarse: Result<Vec<f64>> = panels
        .par_iter()
        .map(|pa| gauss_on(pa, 0.0, 1.0, &g))
        .collect();
    let coarse = coarse?;
    let total: f64 = coarse.iter().sum();
    let tol = 1e-8f64.max(1e-9 * total.abs()) / panels.len() as f64;
    let refined: Result<Vec<f64>> = panels
        .par_iter()
        .zip(&coarse)
        .map(|(pa, &w)| adapt_panel(pa, 0.0, 1.0, w, tol, 0, &g))
        .collect();
    Ok(TAU * refined?.iter().sum::<f64>())
}

/// int over the wetted surface of phi d_n y, with the normal pointing from
/// the water into the body. Reduces to 2 pi int phi rho drho along the curve.
pub fn wetted_heave_integral(b: &BodySection, mp: &ModeParams) -> Result<f64> {
    wetted_integral(&b.wetted.points, |p, der| {
        Ok(potential::phi_tol(p, mp, FIELD_TOL)? * p.rho * der.0)
    })
}

/// Revolved area of the wetted surface times the largest |phi| on it: the
/// natural scale for judging the heave-equation residual of a motionless body.
pub fn wetted_scale(b: &BodySection, mp: &ModeParams) -> Result<f64> {
    let area = wetted_integral(&b.wetted.points, |p, der| {
        Ok(p.rho * (der.0 * der.0 + der.1 * der.1).sqrt())
    })?;
    let phis: Result<Vec<f64>> = b
        .wetted
        .points
        .par_iter()
        .map(|p| Ok(potential::phi_tol(*p, mp, FIELD_TOL)?.abs()))
        .collect();
    Ok(area * phis?.into_iter().fold(0.0, f64::max))
}

/// Residuals of the six rigid-body motion equations for body `k`, ordered as
/// the displacement vector: two horizontal forces, yaw, heave, roll, pitch.
/// The five non-heave components carry an azimuthal factor that vanishes by
/// axisymmetry; it is evaluated by quadrature rather than assumed zero. The
/// heave component is the raw surface integral for a motionless body and the
/// residual of the heave force balance (which encodes Archimedes' law) for a
/// heaving one.
pub fn check_motion_equations(s: &Structure, k: usize) -> Result<Vector6<f64>> {
    let b = s
        .bodies
        .get(k)
        .ok_or_else(|| WaveError::Domain(format!("no body with index {k}")))?;
    let mp = &s.mode;
    let y0 = b.ballast.center_of_mass_eta;

    // trapezoid sums of the azimuthal factors; zero to machine precision
    let n_az = 64;
    let (mut az_cos, mut az_sin, mut az_yaw) = (0.0, 0.0, 0.0);
    for j in 0..n_az {
        let th = TAU * j as f64 / n_az as f64;
        az_cos += th.cos();
        az_sin += th.sin();
        az_yaw += th.sin() * th.cos() - th.cos() * th.sin();
    }
    let dth = TAU / n_az as f64;
    az_cos *= dth;
    az_sin *= dth;
    az_yaw *= dth;

    // meridional factors; n_rho dl = -deta, n_eta dl = drho along the curve
    let radial = wetted_integral(&b.wetted.points, |p, der| {
        Ok(potential::phi_tol(p, mp, FIELD_TOL)? * p.rho * (-der.1))
    })?;
    let tilt = wetted_integral(&b.wetted.points, |p, der| {
        Ok(potential::phi_tol(p, mp, FIELD_TOL)?
            * p.rho
            * ((p.eta - y0) * (-der.1) - p.rho * der.0))
    })?;
    let heave_int = wetted_heave_integral(b, mp)?;

    let mut r = Vector6::zeros();
    r[0] = radial * az_cos / TAU;
    r[1] = radial * az_sin / TAU;
    r[2] = radial * az_yaw / TAU;
    r[4] = tilt * az_cos / TAU;
    r[5] = tilt * az_sin / TAU;
    r[3] = if b.heave == 0.0 {
        heave_int
    } else {
        let m = body_moments(b)?;
        // nu H I^B + int phi d_n y - H I^D, with nu = 1 dimensionless
        b.heave * b.ballast.total_mass + heave_int - b.heave * m.i_d
    };
    Ok(r)
}

/// Scale for the heave residual of body `k` (see `check_motion_equations`).
pub fn heave_scale(s: &Structure, k: usize) -> Result<f64> {
    let b = s
        .bodies
        .get(k)
        .ok_or_else(|| WaveError::Domain(format!("no body with index {k}")))?;
    if b.heave == 0.0 {
        wetted_scale(b, &s.mode)
    } else {
        let m = body_moments(b)?;
        Ok((b.heave * b.ballast.total_mass).max(b.heave * m.i_d))
    }
}

// ---------------------------------------------------------------------------
// energy equipartition

fn point_in_polygon(poly: &[(f64, f64)], p: (f64, f64)) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (x0, y0) = poly[i];
        let (x1, y1) = poly[(i + 1) % n];
        if (y0 > p.1) != (y1 > p.1) {
            let x = x0 + (p.1 - y0) / (y1 - y0) * (x1 - x0);
            if x > p.0 {
                inside = !inside;
            }
        }
    }
    inside
}

/// |grad phi|^2 rho, the meridional kinetic-energy density.
fn energy_density(mp: &ModeParams, rho: f64, eta: f64) -> Result<f64> {
    let p = FieldPoint::new(rho.max(0.0), eta.min(0.0))?;
    let g = potential::grad_phi_tol(p, mp, VOLUME_TOL)?;
    Ok((g.0 * g.0 + g.1 * g.1) * p.rho)
}

/// Resolves an error-carrying integrand through the plain quadrature driver.
fn integrate_res<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let failure = std::cell::RefCell::new(None);
    let v = quad::integrate(
        &|x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        a,
        b,
        tol,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    v
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    rho: (f64, f64),
    eta: (f64, f64),
    value: f64,
    err: f64,
}

const G3_U: [f64; 3] = [0.1127016653792583, 0.5, 0.8872983346207417];
const G3_W: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];
const G2_U: [f64; 2] = [0.21132486540518713, 0.7886751345948129];

fn eval_cell(mp: &ModeParams, rho: (f64, f64), eta: (f64, f64)) -> Result<Cell> {
    let (dr, de) = (rho.1 - rho.0, eta.1 - eta.0);
    let mut v33 = 0.0;
    for (ur, wr) in G3_U.iter().zip(&G3_W) {
        for (ue, we) in G3_U.iter().zip(&G3_W) {
            v33 += wr * we * energy_density(mp, rho.0 + ur * dr, eta.0 + ue * de)?;
        }
    }
    let mut v22 = 0.0;
    for ur in &G2_U {
        for ue in &G2_U {
            v22 += 0.25 * energy_density(mp, rho.0 + ur * dr, eta.0 + ue * de)?;
        }
    }
    let scale = dr * de;
    Ok(Cell {
        rho,
        eta,
        value: v33 * scale,
        err: (v33 - v22).abs() * scale,
    })
}

/// Breakpoints from `from` toward `to`, starting at `h0` and growing
/// geometrically; always includes both ends.
fn graded(from: f64, to: f64, h0: f64, growth: f64) -> Vec<f64> {
    let mut out = vec![from];
    let dir = (to - from).signum();
    let mut h = h0;
    let mut x = from;
    while (to - x) * dir > 1.5 * h {
        x += dir * h;
        out.push(x);
        h *= growth;
    }
    out.push(to);
    out
}

fn tensor_block(mp: &ModeParams, rhos: &[f64], etas: &[f64]) -> Result<(f64, f64)> {
    let mut cells: Vec<Cell> = {
        let mut pairs = Vec::new();
        for r in rhos.windows(2) {
            for e in etas.windows(2) {
                pairs.push(((r[0], r[1]), (e[0], e[1])));
            }
        }
        pairs
            .par_iter()
            .map(|&(r, e)| eval_cell(mp, r, e))
            .collect::<Result<Vec<_>>>()?
    };
    for _ in 0..40 {
        let total: f64 = cells.iter().map(|c| c.value).sum();
        let err: f64 = cells.iter().map(|c| c.err).sum();
        if err <= 0.25 * VOLUME_REL * total.abs().max(1e-9) || cells.len() > 20_000 {
            return Ok((total, err));
        }
        // split the cells holding the top half of the error estimate
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by(|&a, &b| cells[b].err.partial_cmp(&cells[a].err).unwrap());
        let mut acc = 0.0;
        let mut split = Vec::new();
        for &i in &order {
            split.push(i);
            acc += cells[i].err;
            if acc >= 0.5 * err || split.len() >= 256 {
                break;
            }
        }
        split.sort_unstable();
        let mut fresh = Vec::new();
        for &i in split.iter().rev() {
            let c = cells.swap_remove(i);
            let rm = 0.5 * (c.rho.0 + c.rho.1);
            let em = 0.5 * (c.eta.0 + c.eta.1);
            fresh.push(((c.rho.0, rm), (c.eta.0, em)));
            fresh.push(((rm, c.rho.1), (c.eta.0, em)));
            fresh.push(((c.rho.0, rm), (em, c.eta.1)));
            fresh.push(((rm, c.rho.1), (em, c.eta.1)));
        }
        let new_cells: Result<Vec<Cell>> = fresh
            .par_iter()
            .map(|&(r, e)| eval_cell(mp, r, e))
            .collect();
        cells.extend(new_cells?);
    }
    let total: f64 = cells.iter().map(|c| c.value).sum();
    let err: f64 = cells.iter().map(|c| c.err).sum();
    Ok((total, err))
}

/// Intersections of the horizontal line at `eta` with the polygon boundary,
/// sorted ascending; consecutive pairs bound the interior cross-sections.
fn scanline_crossings(polygon: &[(f64, f64)], eta: f64) -> Vec<f64> {
    let n = polygon.len();
    let mut xs = Vec::new();
    for i in 0..n {
        let (x0, y0) = polygon[i];
        let (x1, y1) = polygon[(i + 1) % n];
        if (y0 > eta) != (y1 > eta) {
            xs.push(x0 + (eta - y0) / (y1 - y0) * (x1 - x0));
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs
}

/// Energy integral over a body's meridional section by horizontal scanlines:
/// every cross-section is an exact union of intervals, so the geometry
/// contributes no classification error.
fn polygon_integral(mp: &ModeParams, polygon: &[(f64, f64)]) -> Result<f64> {
    let lowest = polygon
        .iter()
        .map(|p| p.1)
        .fold(0.0_f64, f64::min);
    integrate_res(
        |eta| {
            let mut acc = 0.0;
            let xs = scanline_crossings(polygon, eta);
            for pair in xs.chunks(2) {
                if pair.len() == 2 && pair[1] - pair[0] > 1e-13 {
                    acc += integrate_res(
                        |rho| energy_density(mp, rho, eta),
                        pair[0],
                        pair[1],
                        1e-8,
                    )?;
                }
            }
            Ok(acc)
        },
        lowest,
        0.0,
        1e-7,
    )
}

/// Crossing distances of the ray ring + t*(cos beta, -sin beta) with a
/// polygon boundary, sorted ascending.
fn ray_crossings(ring: (f64, f64), dir: (f64, f64), polygon: &[(f64, f64)]) -> Vec<f64> {
    let mut out = Vec::new();
    let n = polygon.len();
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        let (ex, ey) = (b.0 - a.0, b.1 - a.1);
        let det = dir.0 * (-ey) - dir.1 * (-ex);
        if det.abs() < 1e-14 {
            continue;
        }
        let (rx, ry) = (a.0 - ring.0, a.1 - ring.1);
        let t = (rx * (-ey) + ry * ex) / det;
        let u = (dir.0 * ry - dir.1 * rx) / det;
        if t > 0.0 && (0.0..1.0).contains(&u) {
            out.push(t);
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

struct PolarPatch {
    /// rho extent of the patch rectangle.
    q: (f64, f64),
    /// depth of the patch rectangle (positive).
    h: f64,
}

impl PolarPatch {
    fn exit(&self, ring_rho: f64, beta: f64) -> f64 {
        let (c, s) = (beta.cos(), beta.sin());
        let mut d = f64::MAX;
        if c > 1e-14 {
            d = d.min((self.q.1 - ring_rho) / c);
        }
        if c < -1e-14 {
            d = d.min((ring_rho - self.q.0) / -c);
        }
        if s > 1e-14 {
            d = d.min(self.h / s);
        }
        d
    }
}

/// Energy integral over the polar patch around the ring: rectangle
/// q x [-h, 0] minus the guard disk and all body interiors. Rays from the
/// ring are intersected with the body outlines exactly, so no cell straddles
/// a body boundary.
fn polar_patch_integral(
    mp: &ModeParams,
    patch: &PolarPatch,
    polygons: &[Vec<(f64, f64)>],
) -> Result<f64> {
    let ring = (mp.rho_r, 0.0);
    let f_beta = |beta: f64| -> Result<f64> {
        let dir = (beta.cos(), -beta.sin());
        let dmax = patch.exit(ring.0, beta);
        let mut cuts = vec![GUARD_RADIUS.min(dmax)];
        for poly in polygons {
            cuts.extend(
                ray_crossings(ring, dir, poly)
                    .into_iter()
                    .filter(|&t| t > GUARD_RADIUS && t < dmax),
            );
        }
        cuts.push(dmax);
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut acc = 0.0;
        for w in cuts.windows(2) {
            if w[1] - w[0] < 1e-12 {
                continue;
            }
            let mid = 0.5 * (w[0] + w[1]);
            let pm = (ring.0 + mid * dir.0, ring.1 + mid * dir.1);
            if polygons.iter().any(|p| point_in_polygon(p, pm)) {
                continue;
            }
            acc += integrate_res(
                |d| energy_density(mp, ring.0 + d * dir.0, ring.1 + d * dir.1).map(|v| v * d),
                w[0],
                w[1],
                1e-7,
            )?;
        }
        Ok(acc)
    };
    // kinks of the exit distance sit at the two lower corners of the patch
    let b1 = (patch.h).atan2(patch.q.1 - ring.0);
    let b2 = PI - (patch.h).atan2(ring.0 - patch.q.0);
    let mut total = 0.0;
    for (lo, hi) in [(0.0, b1), (b1, b2), (b2, PI)] {
        if hi - lo < 1e-12 {
            continue;
        }
        // fixed panels with G4 nodes, then one refinement for an error check
        let coarse = polar_beta_sweep(&f_beta, lo, hi, 16)?;
        let fine = polar_beta_sweep(&f_beta, lo, hi, 32)?;
        let finest = if (fine - coarse).abs() > VOLUME_REL * 0.25 * fine.abs().max(1e-9) {
            polar_beta_sweep(&f_beta, lo, hi, 64)?
        } else {
            fine
        };
        total += finest;
    }
    Ok(total)
}

fn polar_beta_sweep<F: Fn(f64) -> Result<f64> + Sync>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<f64> {
    let h = (hi - lo) / n as f64;
    let nodes: Vec<(f64, f64)> = (0..n)
        .flat_map(|i| {
            let a = lo + i as f64 * h;
            G4_U.iter()
                .zip(&G4_W)
                .map(move |(u, w)| (a + u * h, w * h))
        })
        .collect();
    let vals: Result<Vec<f64>> = nodes.par_iter().map(|&(b, w)| Ok(w * f(b)?)).collect();
    Ok(vals?.iter().sum())
}

/// Energy equipartition over a growing family of truncated cylinders:
/// kinetic energy of the water plus the structural kinetic term against the
/// free-surface potential energy plus the hydrostatic term. Returns
/// (lhs, rhs, relative gap) per domain.
pub fn check_equipartition(
    s: &Structure,
    domains: &[TruncationDomain],
) -> Result<Vec<(f64, f64, f64)>> {
    if domains.is_empty() {
        return Err(WaveError::Domain("no truncation domains given".into()));
    }
    for w in domains.windows(2) {
        if w[1].b <= w[0].b || w[1].d <= w[0].d {
            return Err(WaveError::Domain(
                "truncation domains must be strictly increasing".into(),
            ));
        }
    }
    let mp = &s.mode;
    let polygons: Vec<Vec<(f64, f64)>> =
        s.bodies.iter().map(|b| b.displaced_polygon()).collect();
    let ring_idx = s.bodies.iter().position(|b| b.wetted.encloses_ring);

    // polar patch around the ring, grid-aligned, containing the ring body
    let patch = {
        let (mut lo, mut hi, mut dep) = (mp.rho_r - 0.1, mp.rho_r + 0.1, 0.1_f64);
        if let Some(i) = ring_idx {
            for &(x, y) in &polygons[i] {
                lo = lo.min(x);
                hi = hi.max(x);
                dep = dep.max(-y);
            }
        }
        PolarPatch {
            q: (lo - PATCH_MARGIN, hi + PATCH_MARGIN),
            h: dep + PATCH_MARGIN,
        }
    };

    // the guard disk must carry no energy: either a body encloses it, or its
    // contribution is bounded from samples on its boundary and reported
    let guard_bound = if ring_idx
        .map(|i| point_in_polygon(&polygons[i], (mp.rho_r, -1e-3)))
        .unwrap_or(false)
    {
        0.0
    } else {
        let mut fmax = 0.0f64;
        for j in 1..8 {
            let a = PI * j as f64 / 8.0;
            fmax = fmax.max(energy_density(
                mp,
                mp.rho_r + GUARD_RADIUS * a.cos(),
                -GUARD_RADIUS * a.sin(),
            )?);
        }
        TAU * fmax * 0.5 * PI * GUARD_RADIUS * GUARD_RADIUS
    };

    for (i, b) in s.bodies.iter().enumerate() {
        if ring_idx != Some(i) {
            let (rlo, rhi) = b.waterline_radii;
            if rhi >= patch.q.0 && rlo <= patch.q.1 {
                return Err(WaveError::Geometry(
                    "a non-enclosing body overlaps the ring patch".into(),
                ));
            }
        }
    }

    // structural quadratic forms, omega = g = 1 dimensionless
    let mut structural_lhs = 0.0;
    let mut structural_rhs = 0.0;
    for (b, chi) in s.bodies.iter().zip(&s.chi) {
        let em = assemble_matrices(b)?;
        structural_lhs += (chi.transpose() * em.e0 * chi)[0];
        structural_rhs += (chi.transpose() * em.k0 * chi)[0];
    }

    // side integrals independent of the domain: bodies and the polar patch
    let body_parts: Result<Vec<f64>> = polygons
        .iter()
        .enumerate()
        .filter(|(i, _)| ring_idx != Some(*i))
        .map(|(_, p)| polygon_integral(mp, p).map(|v| TAU * v))
        .collect();
    let body_total: f64 = body_parts?.iter().sum();
    let patch_total = TAU * polar_patch_integral(mp, &patch, &polygons)?;

    let outer = s
        .bodies
        .iter()
        .map(|b| b.waterline_radii.1)
        .fold(patch.q.1, f64::max);
    let deepest = s.bodies.iter().map(|b| b.draught()).fold(patch.h, f64::max);

    let mut out = Vec::with_capacity(domains.len());
    for dom in domains {
        if dom.b <= outer || dom.d <= deepest {
            return Err(WaveError::Domain(format!(
                "cylinder ({}, {}) does not contain the structure",
                dom.b, dom.d
            )));
        }
        // tensor blocks covering the cylinder minus the patch rectangle
        let mut volume = 0.0;
        let mut vol_err = 0.0;
        let eta_full = {
            let mut e = graded(0.0, -dom.d, 0.12, 1.4);
            e.reverse();
            e
        };
        let rho_left = graded(patch.q.0, 0.0, 0.12, 1.4)
            .into_iter()
            .rev()
            .collect::<Vec<_>>();
        let rho_right = graded(patch.q.1, dom.b, 0.12, 1.4);
        let rho_mid = vec![patch.q.0, 0.5 * (patch.q.0 + patch.q.1), patch.q.1];
        let eta_below = {
            let mut e = graded(-patch.h, -dom.d, 0.12, 1.4);
            e.reverse();
            e
        };
        for (rs, es) in [
            (&rho_left, &eta_full),
            (&rho_right, &eta_full),
            (&rho_mid, &eta_below),
        ] {
            let (v, e) = tensor_block(mp, rs, es)?;
            volume += v;
            vol_err += e;
        }
        let lhs_int = TAU * volume + patch_total - body_total;
        if guard_bound > 0.1 * lhs_int.abs() {
            return Err(WaveError::Quadrature(format!(
                "guard-disk energy bound {guard_bound:.3e} exceeds 10% of the volume term"
            )));
        }
        if TAU * vol_err > 0.05 * lhs_int.abs() {
            return Err(WaveError::Quadrature(format!(
                "volume quadrature error {:.3e} too large",
                TAU * vol_err
            )));
        }

        // free surface: rho in (0, b) minus the waterplane annuli
        let mut marks = vec![0.0];
        let mut ordered: Vec<(f64, f64)> =
            s.bodies.iter().map(|b| b.waterline_radii).collect();
        ordered.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (rlo, rhi) in ordered {
            marks.push(rlo);
            marks.push(rhi);
        }
        marks.push(dom.b);
        let mut surface = 0.0;
        for seg in marks.chunks(2) {
            if seg[1] - seg[0] < 1e-12 {
                continue;
            }
            surface += integrate_res(
                |rho| {
                    let p = FieldPoint::new(rho, 0.0)?;
                    let v = potential::phi_tol(p, mp, VOLUME_TOL)?;
                    Ok(v * v * rho)
                },
                seg[0],
                seg[1],
                1e-8,
            )?;
        }
        let rhs_int = TAU * surface;

        let lhs = lhs_int + structural_lhs;
        let rhs = rhs_int + structural_rhs;
        let gap = (lhs - rhs).abs() / lhs.abs().max(rhs.abs());
        out.push((lhs, rhs, gap));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// far field

/// Least-squares slope of log |phi| against log rho for a free-surface ring
/// source of the given radius, over the window. Oscillatory traces (a ring
/// radius off the Bessel zeros restores the outgoing wave) are fitted through
/// the local maxima of |phi| so the zero crossings do not poison the fit.
pub fn far_field_exponent(ring: f64, window: (f64, f64)) -> Result<f64> {
    if !(window.0 > 0.0) || !(window.1 > window.0) {
        return Err(WaveError::Domain(format!(
            "bad far-field window ({}, {})",
            window.0, window.1
        )));
    }
    let n = 240;
    let lr0 = window.0.ln();
    let lr1 = window.1.ln();
    let samples: Result<Vec<(f64, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let lr = lr0 + (lr1 - lr0) * i as f64 / (n - 1) as f64;
            let p = FieldPoint::new(lr.exp(), 0.0)?;
            Ok((lr, phi_ring(p, ring)?.abs()))
        })
        .collect();
    let samples = samples?;
    let mut maxima: Vec<(f64, f64)> = Vec::new();
    for i in 1..n - 1 {
        if samples[i].1 > samples[i - 1].1 && samples[i].1 > samples[i + 1].1 {
            maxima.push(samples[i]);
        }
    }
    let pts: Vec<(f64, f64)> = if maxima.len() >= 5 {
        maxima
    } else {
        samples
    }
    .into_iter()
    .filter(|&(_, v)| v > 1e-300)
    .map(|(lr, v)| (lr, v.ln()))
    .collect();
    if pts.len() < 3 {
        return Err(WaveError::Domain("far-field trace vanished".into()));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// Decay exponent of the trapped mode's free-surface trace over
/// [3 rho_r, 12 rho_r]; must be strictly steeper than the -1/2 of an
/// outgoing wave.
pub fn check_far_field(mp: &ModeParams) -> Result<f64> {
    far_field_exponent(mp.rho_r, (3.0 * mp.rho_r, 12.0 * mp.rho_r))
}

// ---------------------------------------------------------------------------
// Green identity probe

/// Lateral-surface integral of (phi d_n Y - Y d_n phi), Y = eta + 1, over
/// {rho = b, -d < eta < 0} for each depth in `d_seq`. Since Y does not vary
/// with rho the first term drops, leaving -2 pi b int (eta + 1) d_rho phi.
/// The sequence tends to minus the sum of the bodies' heave surface
/// integrals (for a motionless structure), cross-validating
/// `check_motion_equations`.
pub fn check_green_identity(
    s: &Structure,
    dom: &TruncationDomain,
    d_seq: &[f64],
) -> Result<Vec<f64>> {
    let outer = s
        .bodies
        .iter()
        .map(|b| b.waterline_radii.1)
        .fold(0.0_f64, f64::max);
    if dom.b <= outer {
        return Err(WaveError::Domain(format!(
            "lateral surface at rho = {} intersects the structure",
            dom.b
        )));
    }
    d_seq
        .par_iter()
        .map(|&d| {
            if !(d > 0.0) {
                return Err(WaveError::Domain(format!("bad depth {d}")));
            }
            // absolute tolerance grows with the strip length; the flux values
            // themselves shrink like d^-3 so this stays far below them
            let tol = (1e-9 * d).clamp(1e-10, 1e-7);
            let v = integrate_res(
                |eta| {
                    let p = FieldPoint::new(dom.b, eta)?;
                    let g = potential::grad_phi_tol(p, &s.mode, FIELD_TOL)?;
                    Ok(-(eta + 1.0) * g.0)
                },
                -d,
                0.0,
                tol,
            )?;
            Ok(TAU * dom.b * v)
        })
        .collect()
}

/// Bottom-disc contribution to the Green identity at eta = -d: the integral
/// of (phi d_n Y - Y d_n phi) over the disc rho < b with downward normal.
pub fn green_bottom_term(mp: &ModeParams, b: f64, d: f64) -> Result<f64> {
    let v = integrate_res(
        |rho| {
            let p = FieldPoint::new(rho, -d)?;
            let phi = potential::phi_tol(p, mp, FIELD_TOL)?;
            let g = potential::grad_phi_tol(p, mp, FIELD_TOL)?;
            Ok((-phi + (1.0 - d) * g.1) * rho)
        },
        0.0,
        b,
        1e-12,
    )?;
    Ok(TAU * v)
}

// ---------------------------------------------------------------------------
// driver

/// Runs every check against the given tolerances.
pub fn verify_structure(
    s: &Structure,
    domains: &[TruncationDomain],
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let n = s.bodies.len();
    let bc_residuals: Result<Vec<f64>> = (0..n).map(|k| check_kinematic(s, k)).collect();
    let bc_residuals = bc_residuals?;
    let motion_eq_residuals: Result<Vec<Vector6<f64>>> =
        (0..n).map(|k| check_motion_equations(s, k)).collect();
    let motion_eq_residuals = motion_eq_residuals?;
    let motion_scales: Result<Vec<f64>> = (0..n).map(|k| heave_scale(s, k)).collect();
    let motion_scales = motion_scales?;
    let equipartition = check_equipartition(s, domains)?;
    let far_field_exponent = check_far_field(&s.mode)?;

    let mut passed = bc_residuals.iter().all(|&r| r <= tol.kinematic);
    for (r, scale) in motion_eq_residuals.iter().zip(&motion_scales) {
        for i in [0usize, 1, 2, 4, 5] {
            passed &= r[i].abs() <= tol.motion_trivial;
        }
        passed &= r[3].abs() <= tol.motion_heave * scale;
    }
    if let Some(&(_, _, gap)) = equipartition.last() {
        passed &= gap <= tol.equipartition_gap;
    }
    passed &= far_field_exponent <= tol.far_field_max;

    Ok(VerificationReport {
        bc_residuals,
        motion_eq_residuals,
        motion_scales,
        equipartition,
        far_field_exponent,
        passed,
    })
}
