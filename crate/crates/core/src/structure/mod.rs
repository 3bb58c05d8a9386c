//! Synthesis of axisymmetric floating multi-body structures from level lines
//! of the (possibly heave-modified) stream function: body geometry, ballast
//! planning for the equilibrium subsidiary conditions, and assembly of the
//! mass/inertia and buoyancy matrices.

pub mod poly;

use crate::error::{Result, WaveError};
use crate::levelset::{trace_level_curve, CurveEnd, LevelCurve};
use crate::potential::{psi_heave, FieldPoint, ModeParams};
use nalgebra::{Matrix3, Matrix6, Vector6};
use std::f64::consts::PI;

/// Fraction of the extremum value by which body levels are offset toward 0.
const LEVEL_OFFSET: f64 = 0.05;
/// Default superstructure height above the waterline.
const SUPERSTRUCTURE_HEIGHT: f64 = 0.5;
/// Stand-off of the ring-enclosing wetted curve from the singularity.
const RING_BODY_STANDOFF: f64 = 0.05;
/// Required clearance between wetted curves of distinct bodies.
const MIN_SEPARATION: f64 = 0.02;
/// Ballast bottom layer thickness as a fraction of the body draught.
const SLAB_FRACTION: f64 = 0.25;
/// Default center-of-mass height: this fraction of the draught above the
/// lowest point, low enough for the stability condition.
const COM_FRACTION: f64 = 0.2;

/// One homogeneous ballast layer: an annular box whose intersection with the
/// body is filled at the given density (relative to water).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallastLayer {
    pub rho: (f64, f64),
    pub eta: (f64, f64),
    pub density_ratio: f64,
}

/// Mass distribution satisfying the equilibrium subsidiary conditions:
/// total mass equals displaced mass and the center of mass sits on the axis
/// at the recorded height.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityPlan {
    pub layers: Vec<BallastLayer>,
    pub center_of_mass_eta: f64,
    /// In volume units (water density 1).
    pub total_mass: f64,
}

/// One body of a trapping structure: the meridional wetted curve below the
/// waterline plus a vertical-walled annular superstructure above it.
#[derive(Debug, Clone, PartialEq)]
pub struct BodySection {
    pub wetted: LevelCurve,
    /// (inner, outer) radii where the wetted curve meets the waterline.
    pub waterline_radii: (f64, f64),
    pub superstructure_height: f64,
    /// Heave amplitude; 0 means motionless.
    pub heave: f64,
    pub ballast: DensityPlan,
}

/// Moments entering the buoyancy matrix, all about the center of mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyMoments {
    /// Waterplane annulus area.
    pub i_d: f64,
    pub i_d1: f64,
    pub i_d2: f64,
    pub i_d12: f64,
    pub i_d11: f64,
    pub i_d22: f64,
    /// First vertical moment of the displaced region about the mass center.
    pub i_b_y: f64,
    pub displaced_volume: f64,
}

/// Mass/inertia matrix and buoyancy matrix of one body (water-density
/// normalized, dimensionless lengths).
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumMatrices {
    pub e0: Matrix6<f64>,
    pub k0: Matrix6<f64>,
}

/// An N-body axisymmetric trapping structure.
#[derive(Debug, Clone, PartialEq)]
pub struct Structure {
    pub mode: ModeParams,
    /// Ordered by waterline radius; the last body encloses the ring.
    pub bodies: Vec<BodySection>,
    /// Per-body rigid displacement amplitudes (heave only).
    pub chi: Vec<Vector6<f64>>,
}

impl BodySection {
    fn new(wetted: LevelCurve, heave: f64) -> Result<Self> {
        let (CurveEnd::FreeSurface(a), CurveEnd::FreeSurface(b)) =
            (wetted.left_end, wetted.right_end)
        else {
            return Err(WaveError::Geometry(
                "a wetted curve must land on the free surface at both ends".into(),
            ));
        };
        if !(a < b) {
            return Err(WaveError::Geometry(format!(
                "degenerate waterline radii ({a}, {b})"
            )));
        }
        let ballast = DensityPlan {
            layers: vec![],
            center_of_mass_eta: 0.0,
            total_mass: 0.0,
        };
        Ok(Self {
            wetted,
            waterline_radii: (a, b),
            superstructure_height: SUPERSTRUCTURE_HEIGHT,
            heave,
            ballast,
        })
    }

    /// Meridional outline of the displaced region: the wetted curve closed
    /// with the waterline segment, counterclockwise.
    pub fn displaced_polygon(&self) -> Vec<(f64, f64)> {
        let mut p: Vec<(f64, f64)> = self.wetted.points.iter().map(|q| (q.rho, q.eta)).collect();
        if poly::signed_area(&p) < 0.0 {
            p.reverse();
        }
        p
    }

    /// Deepest point of the wetted curve.
    pub fn draught(&self) -> f64 {
        -self.wetted.points.iter().map(|p| p.eta).fold(0.0, f64::min)
    }
}

/// Volume and vertical centroid of one ballast layer region.
fn layer_region(b: &BodySection, layer: &BallastLayer) -> Vec<(f64, f64)> {
    if layer.eta.0 >= 0.0 {
        // superstructure box
        vec![
            (layer.rho.0, layer.eta.0),
            (layer.rho.1, layer.eta.0),
            (layer.rho.1, layer.eta.1),
            (layer.rho.0, layer.eta.1),
        ]
    } else {
        // immersed slab: the part of the displaced region inside the box
        poly::clip_below(&b.displaced_polygon(), layer.eta.1)
    }
}

/// Two-layer ballast: a dense slab at the bottom of the displaced region and
/// a complementary layer filling the superstructure, solved so that the total
/// mass equals the displaced mass and the center of mass sits at
/// `target_com_eta`.
pub fn plan_ballast(b: &BodySection, target_com_eta: f64) -> Result<DensityPlan> {
    let poly_b = b.displaced_polygon();
    let vol = poly::revolved_volume(&poly_b);
    if !(vol > 0.0) {
        return Err(WaveError::Geometry("empty displaced region".into()));
    }
    let lowest = -b.draught();
    if target_com_eta < lowest {
        return Err(WaveError::Infeasible(format!(
            "target center of mass {target_com_eta} below the lowest point {lowest}"
        )));
    }
    let cut = lowest * (1.0 - SLAB_FRACTION);
    let slab = poly::clip_below(&poly_b, cut);
    let v1 = poly::revolved_volume(&slab);
    let c1 = poly::revolved_y_moment(&slab) / v1;
    let (r_in, r_out) = b.waterline_radii;
    let h = b.superstructure_height;
    let v2 = PI * (r_out * r_out - r_in * r_in) * h;
    let c2 = 0.5 * h;
    // m1 + m2 = vol, m1 c1 + m2 c2 = vol * target
    let m2 = vol * (target_com_eta - c1) / (c2 - c1);
    let m1 = vol - m2;
    if m1 < -1e-12 * vol || m2 < -1e-12 * vol {
        return Err(WaveError::Infeasible(format!(
            "center of mass {target_com_eta} outside the reachable range [{c1}, {c2}]"
        )));
    }
    Ok(DensityPlan {
        layers: vec![
            BallastLayer {
                rho: (r_in.min(slab_min_rho(&slab)), r_out.max(slab_max_rho(&slab))),
                eta: (lowest, cut),
                density_ratio: (m1 / v1).max(0.0),
            },
            BallastLayer {
                rho: (r_in, r_out),
                eta: (0.0, h),
                density_ratio: (m2 / v2).max(0.0),
            },
        ],
        center_of_mass_eta: target_com_eta,
        total_mass: vol,
    })
}

fn slab_min_rho(p: &[(f64, f64)]) -> f64 {
    p.iter().map(|q| q.0).fold(f64::MAX, f64::min)
}
fn slab_max_rho(p: &[(f64, f64)]) -> f64 {
    p.iter().map(|q| q.0).fold(f64::MIN, f64::max)
}

/// Buoyancy-relevant moments of one body. Requires a planned ballast (the
/// vertical moment is taken about the mass center).
pub fn body_moments(b: &BodySection) -> Result<BodyMoments> {
    let poly_b = b.displaced_polygon();
    check_simple(&poly_b)?;
    let vol = poly::revolved_volume(&poly_b);
    if !(vol > 0.0) {
        return Err(WaveError::Geometry("wetted curve encloses no volume".into()));
    }
    let (r_in, r_out) = b.waterline_radii;
    let i_d = PI * (r_out * r_out - r_in * r_in);
    let i_d11 = 0.25 * PI * (r_out.powi(4) - r_in.powi(4));
    let y0 = b.ballast.center_of_mass_eta;
    let i_b_y = poly::revolved_y_moment(&poly_b) - vol * y0;
    Ok(BodyMoments {
        i_d,
        i_d1: 0.0,
        i_d2: 0.0,
        i_d12: 0.0,
        i_d11,
        i_d22: i_d11,
        i_b_y,
        displaced_volume: vol,
    })
}

/// Reject self-intersecting meridional outlines. The quadratic sweep is
/// skipped for very fine polygons, whose provenance (level-curve marching)
/// already precludes crossings.
fn check_simple(poly: &[(f64, f64)]) -> Result<()> {
    let n = poly.len();
    if n < 3 {
        return Err(WaveError::Geometry("degenerate outline".into()));
    }
    if n > 1500 {
        return Ok(());
    }
    let seg = |i: usize| (poly[i], poly[(i + 1) % n]);
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue; // adjacent through the wrap-around
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            if segments_cross(a, b, c, d) {
                return Err(WaveError::Geometry(format!(
                    "outline self-intersects between edges {i} and {j}"
                )));
            }
        }
    }
    Ok(())
}

fn segments_cross(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| {
        (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
    };
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Mass/inertia matrix from the ballast plan and buoyancy matrix from the
/// waterplane and displaced-region moments; the stability condition on the
/// lower-right buoyancy block is checked by eigenvalue computation.
pub fn assemble_matrices(b: &BodySection) -> Result<EquilibriumMatrices> {
    if b.ballast.layers.is_empty() {
        return Err(WaveError::Domain("ballast not planned".into()));
    }
    let y0 = b.ballast.center_of_mass_eta;
    let mut mass = 0.0;
    let mut i_rr = 0.0;
    let mut i_yy = 0.0;
    for layer in &b.ballast.layers {
        let region = layer_region(b, layer);
        let d = layer.density_ratio;
        mass += d * poly::revolved_volume(&region);
        i_rr += d * poly::revolved_rr_moment(&region);
        i_yy += d * poly::revolved_yy_moment(&region, y0);
    }
    let mut e0 = Matrix6::zeros();
    e0[(0, 0)] = mass;
    e0[(1, 1)] = mass;
    e0[(2, 2)] = i_rr;
    e0[(3, 3)] = mass;
    e0[(4, 4)] = 0.5 * i_rr + i_yy;
    e0[(5, 5)] = 0.5 * i_rr + i_yy;

    let m = body_moments(b)?;
    let k_hat = Matrix3::from_diagonal(&nalgebra::Vector3::new(
        m.i_d,
        m.i_d22 + m.i_b_y,
        m.i_d11 + m.i_b_y,
    ));
    let min_eig = k_hat
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::MAX, f64::min);
    if min_eig <= 0.0 {
        return Err(WaveError::StabilityViolation(min_eig));
    }
    let mut k0 = Matrix6::zeros();
    k0.fixed_view_mut::<3, 3>(3, 3).copy_from(&k_hat);
    Ok(EquilibriumMatrices { e0, k0 })
}

/// Bisect the free-surface trace of psi^(H) for a crossing of `v`, scanning
/// left from `start` in steps of `scan`.
fn trace_crossing(mp: &ModeParams, heave: f64, v: f64, start: f64, scan: f64) -> Result<FieldPoint> {
    let f = |r: f64| -> Result<f64> {
        Ok(psi_heave(FieldPoint::new(r, 0.0)?, mp, heave)? - v)
    };
    let mut b = start;
    let mut fb = f(b)?;
    for _ in 0..200 {
        let a = (b - scan).max(1e-3);
        let fa = f(a)?;
        if fa.signum() != fb.signum() {
            let (mut x, mut y, mut fx) = (a, b, fa);
            for _ in 0..60 {
                let mid = 0.5 * (x + y);
                let fm = f(mid)?;
                if fm.signum() == fx.signum() {
                    x = mid;
                    fx = fm;
                } else {
                    y = mid;
                }
            }
            return FieldPoint::new(0.5 * (x + y), 0.0);
        }
        if a <= 1e-3 {
            break;
        }
        b = a;
        fb = fa;
    }
    Err(WaveError::NotFound)
}

/// Vertex-based clearance between two wetted curves.
fn curve_distance(a: &LevelCurve, b: &LevelCurve) -> f64 {
    let mut d = f64::MAX;
    for p in &a.points {
        for q in &b.points {
            d = d.min((p.rho - q.rho).hypot(p.eta - q.eta));
        }
    }
    d
}

/// Build an N-body trapping structure: bodies 1..N-1 sit over the first N-1
/// free-surface extrema of their own modified stream function (level offset
/// toward zero by a fraction that shrinks on overlap), body N encloses the
/// ring at the level attaining the configured stand-off.
pub fn synthesize(mp: &ModeParams, heave_amplitudes: &[f64]) -> Result<Structure> {
    let n = heave_amplitudes.len();
    if n < 2 {
        return Err(WaveError::Domain(format!("need at least 2 bodies, got {n}")));
    }
    if heave_amplitudes.iter().any(|&h| !(h >= 0.0) || !h.is_finite()) {
        return Err(WaveError::Domain("heave amplitudes must be >= 0".into()));
    }

    // ring-enclosing body N: level fixed by the stand-off distance
    let h_n = heave_amplitudes[n - 1];
    let inner = psi_heave(
        FieldPoint::new(mp.rho_r - RING_BODY_STANDOFF, 0.0)?,
        mp,
        h_n,
    )?;
    let outer = psi_heave(
        FieldPoint::new(mp.rho_r + RING_BODY_STANDOFF, 0.0)?,
        mp,
        h_n,
    )?;
    let (v_ring, seed_rho) = if inner <= outer {
        (inner, mp.rho_r - RING_BODY_STANDOFF)
    } else {
        (outer, mp.rho_r + RING_BODY_STANDOFF)
    };
    let mut ring_curve =
        trace_level_curve(mp, h_n, v_ring, FieldPoint::new(seed_rho, 0.0)?, 0.005)?;
    ring_curve.points = crate::geom::densify(&ring_curve.points, 3)?;
    crate::levelset::snap_to_level(mp, h_n, v_ring, &mut ring_curve.points)?;
    if !ring_curve.encloses_ring {
        return Err(WaveError::Geometry(
            "ring-enclosing level line did not close through the free surface".into(),
        ));
    }
    let ring_body = BodySection::new(ring_curve, h_n)?;

    // bodies over the extrema, retraced with shrinking offsets on overlap
    let mut offset = LEVEL_OFFSET;
    let mut bodies: Vec<BodySection> = Vec::new();
    'attempt: for _ in 0..6 {
        bodies.clear();
        for (k, &h_k) in heave_amplitudes[..n - 1].iter().enumerate() {
            let extrema =
                crate::levelset::find_trace_extrema(mp, h_k, (0.0, mp.rho_r - 0.2))?;
            if extrema.len() < n - 1 {
                return Err(WaveError::InsufficientExtrema {
                    m: mp.m,
                    found: extrema.len(),
                    needed: n - 1,
                });
            }
            let ex = extrema[k];
            let v = ex.value * (1.0 - offset);
            let seed = trace_crossing(mp, h_k, v, ex.rho, 0.05)?;
            let mut curve = trace_level_curve(mp, h_k, v, seed, 0.01)?;
            curve.points = crate::geom::densify(&curve.points, 3)?;
            crate::levelset::snap_to_level(mp, h_k, v, &mut curve.points)?;
            if curve.encloses_ring {
                return Err(WaveError::Geometry(format!(
                    "extremum level {v} unexpectedly encloses the ring"
                )));
            }
            bodies.push(BodySection::new(curve, h_k)?);
        }
        // clearance: extremum bodies against each other and the ring body
        for i in 0..bodies.len() {
            for other in bodies.iter().skip(i + 1).chain(std::iter::once(&ring_body)) {
                if curve_distance(&bodies[i].wetted, &other.wetted) < MIN_SEPARATION {
                    offset *= 0.5;
                    continue 'attempt;
                }
            }
        }
        bodies.push(ring_body.clone());

        // ballast each body low enough for stability
        for b in bodies.iter_mut() {
            let lowest = -b.draught();
            let target = lowest * (1.0 - COM_FRACTION);
            b.ballast = plan_ballast(b, target)?;
            assemble_matrices(b)?; // stability gate
        }
        bodies.sort_by(|a, b| {
            a.waterline_radii
                .0
                .partial_cmp(&b.waterline_radii.0)
                .unwrap()
        });
        let enclosing = bodies.iter().filter(|b| b.wetted.encloses_ring).count();
        if enclosing != 1 {
            return Err(WaveError::Geometry(format!(
                "{enclosing} bodies enclose the ring, expected exactly 1"
            )));
        }
        let chi = bodies
            .iter()
            .map(|b| Vector6::new(0.0, 0.0, 0.0, b.heave, 0.0, 0.0))
            .collect();
        return Ok(Structure {
            mode: *mp,
            bodies,
            chi,
        });
    }
    Err(WaveError::OverlapUnresolvable)
}

#[cfg(test)]
mod tests;
