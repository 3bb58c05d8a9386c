//! Shared polyline geometry for wetted curves: chord-length parameters,
//! high-order tangent estimates and cubic Hermite panels. The marched
//! vertices sit on the level curve to tracing tolerance, so a Hermite
//! reconstruction follows the true curve to fourth order in the step while
//! the chords are only second order.

use crate::error::{Result, WaveError};
use crate::potential::FieldPoint;

pub(crate) fn chord_params(pts: &[FieldPoint]) -> Vec<f64> {
    let mut t = Vec::with_capacity(pts.len());
    let mut acc = 0.0;
    t.push(0.0);
    for w in pts.windows(2) {
        acc += ((w[1].rho - w[0].rho).powi(2) + (w[1].eta - w[0].eta).powi(2)).sqrt();
        t.push(acc);
    }
    t
}

/// Derivative at `x` of the polynomial interpolating (ts, ys).
pub(crate) fn lagrange_deriv(ts: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = ts.len();
    let mut acc = 0.0;
    for j in 0..n {
        let mut denom = 1.0;
        for k in 0..n {
            if k != j {
                denom *= ts[j] - ts[k];
            }
        }
        let mut dbasis = 0.0;
        for i in 0..n {
            if i == j {
                continue;
            }
            let mut prod = 1.0;
            for k in 0..n {
                if k != i && k != j {
                    prod *= x - ts[k];
                }
            }
            dbasis += prod;
        }
        acc += ys[j] * dbasis / denom;
    }
    acc
}

/// Unit tangents at every vertex from 5-point one-sided/centered stencils in
/// the chord-length parameter; fourth order on curves sampled at step h.
pub(crate) fn vertex_tangents(pts: &[FieldPoint]) -> Result<Vec<(f64, f64)>> {
    let n = pts.len();
    if n < 5 {
        return Err(WaveError::Geometry(format!(
            "wetted curve needs at least 5 vertices, got {n}"
        )));
    }
    let t = chord_params(pts);
    if t.windows(2).any(|w| w[1] - w[0] < 1e-12) {
        return Err(WaveError::Geometry(
            "wetted curve has coincident consecutive vertices".into(),
        ));
    }
    let rho: Vec<f64> = pts.iter().map(|p| p.rho).collect();
    let eta: Vec<f64> = pts.iter().map(|p| p.eta).collect();
    Ok((0..n)
        .map(|i| {
            let w = i.saturating_sub(2).min(n - 5);
            let dx = lagrange_deriv(&t[w..w + 5], &rho[w..w + 5], t[i]);
            let dy = lagrange_deriv(&t[w..w + 5], &eta[w..w + 5], t[i]);
            let norm = (dx * dx + dy * dy).sqrt();
            (dx / norm, dy / norm)
        })
        .collect())
}

/// One cubic Hermite panel between consecutive vertices.
pub(crate) struct Panel {
    pub p0: (f64, f64),
    pub p1: (f64, f64),
    pub m0: (f64, f64),
    pub m1: (f64, f64),
}

impl Panel {
    /// Position and derivative with respect to the panel parameter u in [0, 1].
    pub fn at(&self, u: f64) -> ((f64, f64), (f64, f64)) {
        let (u2, u3) = (u * u, u * u * u);
        let (h00, h10, h01, h11) = (
            2.0 * u3 - 3.0 * u2 + 1.0,
            u3 - 2.0 * u2 + u,
            -2.0 * u3 + 3.0 * u2,
            u3 - u2,
        );
        let (d00, d10, d01, d11) = (
            6.0 * u2 - 6.0 * u,
            3.0 * u2 - 4.0 * u + 1.0,
            -6.0 * u2 + 6.0 * u,
            3.0 * u2 - 2.0 * u,
        );
        let pos = (
            h00 * self.p0.0 + h10 * self.m0.0 + h01 * self.p1.0 + h11 * self.m1.0,
            h00 * self.p0.1 + h10 * self.m0.1 + h01 * self.p1.1 + h11 * self.m1.1,
        );
        let der = (
            d00 * self.p0.0 + d10 * self.m0.0 + d01 * self.p1.0 + d11 * self.m1.0,
            d00 * self.p0.1 + d10 * self.m0.1 + d01 * self.p1.1 + d11 * self.m1.1,
        );
        (pos, der)
    }
}

/// Hermite panels spanning consecutive vertex pairs.
pub(crate) fn panels(pts: &[FieldPoint]) -> Result<Vec<Panel>> {
    let tans = vertex_tangents(pts)?;
    let out = pts
        .windows(2)
        .zip(tans.windows(2))
        .map(|(p, t)| {
            let dt = ((p[1].rho - p[0].rho).powi(2) + (p[1].eta - p[0].eta).powi(2)).sqrt();
            Panel {
                p0: (p[0].rho, p[0].eta),
                p1: (p[1].rho, p[1].eta),
                m0: (t[0].0 * dt, t[0].1 * dt),
                m1: (t[1].0 * dt, t[1].1 * dt),
            }
        })
        .collect();
    Ok(out)
}

/// Inserts `extra` Hermite-interpolated vertices into every segment. The
/// endpoints and original vertices are kept exactly.
pub(crate) fn densify(pts: &[FieldPoint], extra: usize) -> Result<Vec<FieldPoint>> {
    let panels = panels(pts)?;
    let mut out = Vec::with_capacity(pts.len() + extra * panels.len());
    for (i, pa) in panels.iter().enumerate() {
        out.push(pts[i]);
        for j in 1..=extra {
            let (pos, _) = pa.at(j as f64 / (extra + 1) as f64);
            out.push(FieldPoint::new(pos.0.max(0.0), pos.1.min(0.0))?);
        }
    }
    out.push(*pts.last().unwrap());
    Ok(out)
}
