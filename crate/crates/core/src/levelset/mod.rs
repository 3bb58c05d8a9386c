//! Free-surface trace analysis and level-line tracing for the stream
//! function in the meridional quadrant: extrema and zeros of the trace,
//! predictor-corrector marching along {psi^(H) = v}, and stagnation-point
//! detection for heaving modifications.

use crate::error::{Result, WaveError};
use crate::potential::{
    grad_psi_heave_tol, psi_heave, psi_heave_tol, FieldPoint, ModeParams, RING_GUARD,
};
use rayon::prelude::*;

/// Quadrature tolerance for marching correctors and refinements; residual
/// targets sit two orders above it.
const TRACE_TOL: f64 = 1e-10;
/// Quadrature tolerance for coarse grid scans that only bracket features.
const SCAN_TOL: f64 = 1e-7;
/// Stand-off from the ring singularity kept by every traced curve; slightly
/// wider than the evaluator guard so marching never triggers it.
const RING_STANDOFF: f64 = 10.0 * RING_GUARD;
/// Arc length at which a non-returning march is classified as escaping.
const ARC_CAP: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureKind {
    Zero,
    Min,
    Max,
    /// Marker for the divergent approach toward the ring; produced by trace
    /// scans that run into the guard neighborhood.
    SingularApproach,
}

/// A distinguished point of the free-surface trace rho -> psi^(H)(rho, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceFeature {
    pub kind: FeatureKind,
    pub rho: f64,
    /// Trace value at the feature; 0 for `Zero`.
    pub value: f64,
}

/// Endpoint classification of a traced level line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveEnd {
    /// Landed on eta = 0 at the given rho.
    FreeSurface(f64),
    /// Escaped past the arc-length cap with monotone coordinates.
    Infinity,
    /// Reached rho = 0.
    Axis,
}

/// Polyline approximation of one connected component of {psi^(H) = v}.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelCurve {
    pub level: f64,
    /// Ordered from `left_end` to `right_end`.
    pub points: Vec<FieldPoint>,
    pub left_end: CurveEnd,
    pub right_end: CurveEnd,
    /// Both ends on the free surface, one on each side of the ring radius.
    pub encloses_ring: bool,
}

/// Interior zero of grad psi^(H).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StagnationPoint {
    pub location: FieldPoint,
    /// psi^(H) at the location; critical level separating curve families.
    pub level: f64,
}

/// Rectangular search window in (rho, eta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub rho: (f64, f64),
    pub eta: (f64, f64),
}

impl SearchBox {
    pub fn new(rho: (f64, f64), eta: (f64, f64)) -> Result<Self> {
        if !(rho.0 < rho.1) || !(eta.0 < eta.1) || !(rho.0 >= 0.0) || !(eta.1 <= 0.0) {
            return Err(WaveError::Domain(format!(
                "search box needs 0 <= rho0 < rho1 and eta0 < eta1 <= 0 (got {rho:?}, {eta:?})"
            )));
        }
        Ok(Self { rho, eta })
    }

    fn contains(&self, rho: f64, eta: f64) -> bool {
        rho >= self.rho.0 && rho <= self.rho.1 && eta >= self.eta.0 && eta <= self.eta.1
    }
}

/// Uniform sampling of the trace psi^(H)(rho, 0) on (0, rho_max]; samples
/// falling inside the ring guard are nudged just outside it so the scan
/// never errors. Divergent guard-adjacent values are returned as-is.
pub fn free_surface_trace(
    mp: &ModeParams,
    heave: f64,
    rho_max: f64,
    n: usize,
) -> Result<Vec<(f64, f64)>> {
    if n < 100 {
        return Err(WaveError::Domain(format!("need at least 100 samples, got {n}")));
    }
    if !(rho_max > mp.rho_r) {
        return Err(WaveError::Domain(format!(
            "rho_max {rho_max} must exceed the ring radius {}",
            mp.rho_r
        )));
    }
    let h = rho_max / n as f64;
    let samples: Vec<Result<(f64, f64)>> = (1..=n)
        .into_par_iter()
        .map(|i| {
            let mut rho = i as f64 * h;
            if (rho - mp.rho_r).abs() < RING_STANDOFF {
                rho = if rho <= mp.rho_r {
                    mp.rho_r - RING_STANDOFF
                } else {
                    mp.rho_r + RING_STANDOFF
                };
            }
            let p = FieldPoint::new(rho, 0.0)?;
            Ok((rho, psi_heave_tol(p, mp, heave, TRACE_TOL)?))
        })
        .collect();
    samples.into_iter().collect()
}

/// Trace derivative d/drho psi^(H)(rho, 0), evaluated analytically.
fn trace_derivative(mp: &ModeParams, heave: f64, rho: f64, tol: f64) -> Result<f64> {
    let p = FieldPoint::new(rho, 0.0)?;
    Ok(grad_psi_heave_tol(p, mp, heave, tol)?.0)
}

/// Local extrema of the free-surface trace on an interval that excludes the
/// ring guard. Each extremum is bracketed by a derivative sign change and
/// bisected to |d/drho| <= 1e-8; results are ordered by rho.
pub fn find_trace_extrema(
    mp: &ModeParams,
    heave: f64,
    interval: (f64, f64),
) -> Result<Vec<TraceFeature>> {
    let (lo, hi) = interval;
    if !(lo < hi) || lo < 0.0 {
        return Err(WaveError::Domain(format!("bad interval ({lo}, {hi})")));
    }
    if lo < mp.rho_r + RING_STANDOFF && hi > mp.rho_r - RING_STANDOFF {
        return Err(WaveError::Domain(
            "extremum interval must exclude the ring guard".into(),
        ));
    }
    // the trace derivative vanishes identically at rho = 0
    let lo = lo.max(1e-3);
    let n_scan = 400usize;
    let h = (hi - lo) / n_scan as f64;
    let derivs: Vec<Result<f64>> = (0..=n_scan)
        .into_par_iter()
        .map(|i| trace_derivative(mp, heave, lo + i as f64 * h, SCAN_TOL))
        .collect();
    let derivs = derivs.into_iter().collect::<Result<Vec<f64>>>()?;

    let mut out = Vec::new();
    for i in 0..n_scan {
        let (da, db) = (derivs[i], derivs[i + 1]);
        if da == 0.0 || da.signum() == db.signum() {
            continue;
        }
        let mut a = lo + i as f64 * h;
        let mut b = a + h;
        let mut fa = da;
        for _ in 0..80 {
            let mid = 0.5 * (a + b);
            let fm = trace_derivative(mp, heave, mid, TRACE_TOL)?;
            if fm == 0.0 {
                a = mid;
                b = mid;
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
            if b - a < 1e-13 * (1.0 + a.abs()) {
                break;
            }
        }
        let rho = 0.5 * (a + b);
        let d = trace_derivative(mp, heave, rho, TRACE_TOL)?;
        if d.abs() > 1e-8 {
            return Err(WaveError::Convergence(format!(
                "extremum refinement stalled at rho = {rho}: |d| = {:.3e}",
                d.abs()
            )));
        }
        let kind = if da > 0.0 { FeatureKind::Max } else { FeatureKind::Min };
        let value = psi_heave(FieldPoint::new(rho, 0.0)?, mp, heave)?;
        out.push(TraceFeature { kind, rho, value });
    }
    Ok(out)
}

/// Zeros of the free-surface trace on an interval excluding the ring guard.
pub fn find_trace_zeros(
    mp: &ModeParams,
    heave: f64,
    interval: (f64, f64),
) -> Result<Vec<TraceFeature>> {
    let (lo, hi) = interval;
    if !(lo < hi) || lo < 0.0 {
        return Err(WaveError::Domain(format!("bad interval ({lo}, {hi})")));
    }
    if lo < mp.rho_r + RING_STANDOFF && hi > mp.rho_r - RING_STANDOFF {
        return Err(WaveError::Domain(
            "zero-search interval must exclude the ring guard".into(),
        ));
    }
    let lo = lo.max(1e-3);
    let trace = |rho: f64, tol: f64| -> Result<f64> {
        psi_heave_tol(FieldPoint::new(rho, 0.0)?, mp, heave, tol)
    };
    let n_scan = 400usize;
    let h = (hi - lo) / n_scan as f64;
    let vals: Vec<Result<f64>> = (0..=n_scan)
        .into_par_iter()
        .map(|i| trace(lo + i as f64 * h, SCAN_TOL))
        .collect();
    let vals = vals.into_iter().collect::<Result<Vec<f64>>>()?;

    let mut out = Vec::new();
    for i in 0..n_scan {
        let (va, vb) = (vals[i], vals[i + 1]);
        if va == 0.0 || va.signum() == vb.signum() {
            continue;
        }
        let mut a = lo + i as f64 * h;
        let mut b = a + h;
        let mut fa = va;
        for _ in 0..80 {
            let mid = 0.5 * (a + b);
            let fm = trace(mid, TRACE_TOL)?;
            if fm == 0.0 || b - a < 1e-13 * (1.0 + a.abs()) {
                a = mid;
                b = mid;
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        out.push(TraceFeature {
            kind: FeatureKind::Zero,
            rho: 0.5 * (a + b),
            value: 0.0,
        });
    }
    Ok(out)
}

struct Marcher<'a> {
    mp: &'a ModeParams,
    heave: f64,
    level: f64,
}

impl Marcher<'_> {
    fn residual(&self, p: FieldPoint) -> Result<f64> {
        Ok(psi_heave_tol(p, self.mp, self.heave, TRACE_TOL)? - self.level)
    }

    fn grad(&self, p: FieldPoint) -> Result<(f64, f64)> {
        grad_psi_heave_tol(p, self.mp, self.heave, TRACE_TOL)
    }

    /// Newton correction along the gradient direction; `Ok(None)` means the
    /// corrector failed to settle within the iteration budget.
    fn correct(&self, mut p: FieldPoint) -> Result<Option<(FieldPoint, usize)>> {
        for it in 0..6 {
            let r = self.residual(p)?;
            if r.abs() <= 1e-9 {
                return Ok(Some((p, it)));
            }
            let g = self.grad(p)?;
            let g2 = g.0 * g.0 + g.1 * g.1;
            if g2.sqrt() < 1e-9 {
                return Err(WaveError::StagnationEncountered { grad: g2.sqrt() });
            }
            let rho = (p.rho - g.0 * r / g2).max(0.0);
            let eta = (p.eta - g.1 * r / g2).min(0.0);
            p = FieldPoint { rho, eta };
        }
        Ok(None)
    }

    /// Refine a free-surface landing: 1-D Newton in rho at eta = 0.
    fn surface_landing(&self, mut rho: f64) -> Result<f64> {
        for _ in 0..12 {
            let p = FieldPoint::new(rho.max(0.0), 0.0)?;
            let r = self.residual(p)?;
            if r.abs() <= 1e-9 {
                return Ok(p.rho);
            }
            let d = self.grad(p)?.0;
            if d.abs() < 1e-12 {
                break;
            }
            rho = (rho - r / d).max(0.0);
        }
        Err(WaveError::Convergence(format!(
            "free-surface landing did not settle near rho = {rho}"
        )))
    }

    /// March from `seed` with initial tangent orientation `dir`; returns the
    /// vertices generated after the seed plus the endpoint classification.
    fn march(&self, seed: FieldPoint, step: f64, dir: f64) -> Result<(Vec<FieldPoint>, CurveEnd)> {
        let mut points = Vec::new();
        let mut p = seed;
        let mut h = step;
        let mut arc = 0.0;
        // tangent continuity: keep marching the same way the curve bends
        let mut prev_t: Option<(f64, f64)> = None;
        for _ in 0..40_000 {
            let g = self.grad(p)?;
            let gn = (g.0 * g.0 + g.1 * g.1).sqrt();
            if gn < 1e-9 {
                return Err(WaveError::StagnationEncountered { grad: gn });
            }
            let mut t = (g.1 / gn, -g.0 / gn);
            match prev_t {
                None => {
                    t = (t.0 * dir, t.1 * dir);
                }
                Some(pt) => {
                    if t.0 * pt.0 + t.1 * pt.1 < 0.0 {
                        t = (-t.0, -t.1);
                    }
                }
            }
            prev_t = Some(t);

            // free-surface landing: the predictor would cross eta = 0
            if p.eta + h * t.1 > 0.0 && t.1 > 0.0 {
                let cross = if t.1 > 1e-12 { -p.eta / t.1 } else { 0.0 };
                let rho = self.surface_landing(p.rho + cross * t.0)?;
                points.push(FieldPoint { rho, eta: 0.0 });
                return Ok((points, CurveEnd::FreeSurface(rho)));
            }
            // axis landing
            if p.rho + h * t.0 < 0.0 && t.0 < 0.0 {
                let cross = if t.0 < -1e-12 { -p.rho / t.0 } else { 0.0 };
                let eta = (p.eta + cross * t.1).min(0.0);
                points.push(FieldPoint { rho: 0.0, eta });
                return Ok((points, CurveEnd::Axis));
            }

            let q = FieldPoint {
                rho: (p.rho + h * t.0).max(0.0),
                eta: (p.eta + h * t.1).min(0.0),
            };
            let dr = q.rho - self.mp.rho_r;
            if (dr * dr + q.eta * q.eta).sqrt() < RING_STANDOFF {
                return Err(WaveError::Geometry(format!(
                    "level {} approaches the ring singularity closer than the stand-off",
                    self.level
                )));
            }
            match self.correct(q)? {
                Some((c, iters)) => {
                    let dist = (c.rho - p.rho).hypot(c.eta - p.eta);
                    if dist > step {
                        // corrector dragged the vertex too far; tighten
                        h *= 0.5;
                        if h < step / 256.0 {
                            return Err(WaveError::Convergence(format!(
                                "cannot keep vertex spacing under the step near ({}, {})",
                                p.rho, p.eta
                            )));
                        }
                        continue;
                    }
                    // landing on the surface during correction counts as an end
                    if c.eta >= -1e-12 {
                        let rho = self.surface_landing(c.rho)?;
                        points.push(FieldPoint { rho, eta: 0.0 });
                        return Ok((points, CurveEnd::FreeSurface(rho)));
                    }
                    if c.rho <= 1e-12 {
                        points.push(FieldPoint { rho: 0.0, eta: c.eta });
                        return Ok((points, CurveEnd::Axis));
                    }
                    arc += dist;
                    p = c;
                    points.push(p);
                    if iters > 3 {
                        h = (h * 0.5).max(step / 256.0);
                    } else {
                        h = (h * 1.4).min(step);
                    }
                    if arc > ARC_CAP {
                        return self.classify_escape(points);
                    }
                }
                None => {
                    h *= 0.5;
                    if h < step / 256.0 {
                        return Err(WaveError::Convergence(format!(
                            "corrector diverged near ({}, {})",
                            p.rho, p.eta
                        )));
                    }
                }
            }
        }
        Err(WaveError::Convergence("level-curve march did not terminate".into()))
    }

    /// Past the arc cap: accept Infinity only if rho or |eta| is monotone
    /// over the last quarter of the vertices.
    fn classify_escape(&self, points: Vec<FieldPoint>) -> Result<(Vec<FieldPoint>, CurveEnd)> {
        let tail = &points[points.len() - points.len() / 4..];
        let mono = |get: fn(&FieldPoint) -> f64| -> bool {
            tail.windows(2).all(|w| get(&w[1]) >= get(&w[0]) - 1e-9)
                || tail.windows(2).all(|w| get(&w[1]) <= get(&w[0]) + 1e-9)
        };
        if mono(|p| p.rho) || mono(|p| p.eta) {
            Ok((points, CurveEnd::Infinity))
        } else {
            Err(WaveError::Geometry(
                "arc cap exceeded without monotone escape".into(),
            ))
        }
    }
}

/// Trace the connected component of {psi^(H) = v} through `seed` by marching
/// both directions with an arc-length predictor and gradient-line corrector.
///
/// Endpoints are classified as free-surface landings, axis contact, or escape
/// to infinity past the arc cap; points are ordered so that the end with the
/// smaller terminal rho comes first.
pub fn trace_level_curve(
    mp: &ModeParams,
    heave: f64,
    v: f64,
    seed: FieldPoint,
    step: f64,
) -> Result<LevelCurve> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(WaveError::Domain(format!("step must be positive, got {step}")));
    }
    let m = Marcher { mp, heave, level: v };
    let r0 = m.residual(seed)?;
    if r0.abs() > 1e-6 {
        return Err(WaveError::SeedOffLevel { residual: r0.abs() });
    }
    let g0 = m.grad(seed)?;
    let gn0 = (g0.0 * g0.0 + g0.1 * g0.1).sqrt();
    if gn0 <= 1e-9 {
        return Err(WaveError::StagnationEncountered { grad: gn0 });
    }
    // polish the seed onto the level before marching
    let seed = match m.correct(seed)? {
        Some((p, _)) => p,
        None => return Err(WaveError::SeedOffLevel { residual: r0.abs() }),
    };

    let (back_pts, back_end) = m.march(seed, step, -1.0)?;
    let (fwd_pts, fwd_end) = m.march(seed, step, 1.0)?;

    let mut points: Vec<FieldPoint> = back_pts.into_iter().rev().collect();
    points.push(seed);
    points.extend(fwd_pts);
    // endpoint landings can coincide with the last marched vertex; duplicate
    // vertices would break downstream tangent stencils
    points.dedup_by(|a, b| {
        ((a.rho - b.rho).powi(2) + (a.eta - b.eta).powi(2)).sqrt() < 1e-9
    });

    let end_rho = |e: &CurveEnd, p: &FieldPoint| match e {
        CurveEnd::FreeSurface(r) => *r,
        CurveEnd::Axis => 0.0,
        CurveEnd::Infinity => p.rho,
    };
    let (mut left_end, mut right_end) = (back_end, fwd_end);
    let first = points.first().copied().unwrap_or(seed);
    let last = points.last().copied().unwrap_or(seed);
    if end_rho(&left_end, &first) > end_rho(&right_end, &last) {
        points.reverse();
        std::mem::swap(&mut left_end, &mut right_end);
    }
    let encloses_ring = matches!(
        (&left_end, &right_end),
        (CurveEnd::FreeSurface(a), CurveEnd::FreeSurface(b))
            if *a < mp.rho_r && *b > mp.rho_r
    );
    Ok(LevelCurve {
        level: v,
        points,
        left_end,
        right_end,
        encloses_ring,
    })
}

/// Newton-projects each vertex onto the given level of the heave-adjusted
/// stream function. Free-surface vertices (eta = 0) are left alone so that
/// endpoint landings stay on the surface; vertices the corrector cannot
/// settle keep their input position.
pub(crate) fn snap_to_level(
    mp: &ModeParams,
    heave: f64,
    v: f64,
    pts: &mut [FieldPoint],
) -> Result<()> {
    let m = Marcher { mp, heave, level: v };
    for p in pts.iter_mut() {
        if p.eta == 0.0 {
            continue;
        }
        if let Some((q, _)) = m.correct(*p)? {
            *p = q;
        }
    }
    Ok(())
}

/// Locate a zero of grad psi^(H) inside the box: 200x200 scan of |grad| at
/// relaxed tolerance, then full-accuracy Newton (finite-difference Jacobian
/// of the analytic gradient) from the most promising grid minima.
pub fn find_stagnation(
    mp: &ModeParams,
    heave: f64,
    search_box: SearchBox,
) -> Result<StagnationPoint> {
    // H = 0 is admitted and yields NotFound: the unmodified stream function
    // has no interior stagnation points, and certifying that is useful
    if !(heave >= 0.0) {
        return Err(WaveError::Domain(format!(
            "stagnation search needs a non-negative heave amplitude (H = {heave})"
        )));
    }
    const N: usize = 200;
    let (rlo, rhi) = search_box.rho;
    let (elo, ehi) = search_box.eta;
    let dr = (rhi - rlo) / (N - 1) as f64;
    let de = (ehi - elo) / (N - 1) as f64;

    let rows: Vec<Result<Vec<f64>>> = (0..N)
        .into_par_iter()
        .map(|i| {
            let rho = rlo + i as f64 * dr;
            (0..N)
                .map(|j| {
                    let eta = elo + j as f64 * de;
                    let p = FieldPoint::new(rho, eta)?;
                    let g = grad_psi_heave_tol(p, mp, heave, SCAN_TOL)?;
                    Ok(g.0.hypot(g.1))
                })
                .collect()
        })
        .collect();
    let grid = rows.into_iter().collect::<Result<Vec<Vec<f64>>>>()?;

    // strict local minima of |grad| on the grid, best dozen first
    let mut minima: Vec<(usize, usize, f64)> = Vec::new();
    for i in 1..N - 1 {
        for j in 1..N - 1 {
            let v = grid[i][j];
            if v < grid[i - 1][j] && v < grid[i + 1][j] && v < grid[i][j - 1] && v < grid[i][j + 1] {
                minima.push((i, j, v));
            }
        }
    }
    minima.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());
    minima.truncate(12);

    let mut best: Option<(FieldPoint, f64)> = None;
    for &(i, j, _) in &minima {
        let mut rho = rlo + i as f64 * dr;
        let mut eta = elo + j as f64 * de;
        let fd = 1e-4;
        let mut converged = false;
        for _ in 0..40 {
            if !search_box.contains(rho, eta) {
                break;
            }
            let at = |r: f64, e: f64| -> Result<(f64, f64)> {
                grad_psi_heave_tol(FieldPoint::new(r, e.min(0.0))?, mp, heave, TRACE_TOL)
            };
            let g = at(rho, eta)?;
            let gn = g.0.hypot(g.1);
            if gn <= 1e-9 {
                converged = true;
                break;
            }
            let gr = at(rho + fd, eta)?;
            let gl = at(rho - fd, eta)?;
            let gu = at(rho, (eta + fd).min(0.0))?;
            let gd = at(rho, eta - fd)?;
            // Jacobian of the gradient map
            let a = (gr.0 - gl.0) / (2.0 * fd);
            let b = (gu.0 - gd.0) / (2.0 * fd);
            let c = (gr.1 - gl.1) / (2.0 * fd);
            let d = (gu.1 - gd.1) / (2.0 * fd);
            let det = a * d - b * c;
            if det.abs() < 1e-14 {
                break;
            }
            let mut sr = -(d * g.0 - b * g.1) / det;
            let mut se = -(-c * g.0 + a * g.1) / det;
            let sn = sr.hypot(se);
            if sn > 0.5 {
                sr *= 0.5 / sn;
                se *= 0.5 / sn;
            }
            rho += sr;
            eta = (eta + se).min(0.0);
        }
        if converged && search_box.contains(rho, eta) {
            let p = FieldPoint::new(rho, eta)?;
            let g = grad_psi_heave_tol(p, mp, heave, TRACE_TOL)?;
            let gn = g.0.hypot(g.1);
            if gn <= 1e-7 && best.as_ref().map_or(true, |&(_, bg)| gn < bg) {
                best = Some((p, gn));
            }
        }
    }
    match best {
        Some((p, _)) => Ok(StagnationPoint {
            location: p,
            level: psi_heave(p, mp, heave)?,
        }),
        None => Err(WaveError::NotFound),
    }
}

/// Dense |grad| scan used to certify the absence of interior stagnation
/// points (the unmodified stream function has none away from the boundary).
pub fn min_gradient_on_grid(
    mp: &ModeParams,
    heave: f64,
    search_box: SearchBox,
    n: usize,
) -> Result<f64> {
    let (rlo, rhi) = search_box.rho;
    let (elo, ehi) = search_box.eta;
    let dr = (rhi - rlo) / (n - 1) as f64;
    let de = (ehi - elo) / (n - 1) as f64;
    let mins: Vec<Result<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let rho = rlo + i as f64 * dr;
            let mut m = f64::INFINITY;
            for j in 0..n {
                let p = FieldPoint::new(rho, elo + j as f64 * de)?;
                let g = grad_psi_heave_tol(p, mp, heave, SCAN_TOL)?;
                m = m.min(g.0.hypot(g.1));
            }
            Ok(m)
        })
        .collect();
    let mins = mins.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(mins.into_iter().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests;
