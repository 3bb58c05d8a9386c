//! Meridional polygon integrals for solids of revolution: moments
//! int x^p y^q dA over a closed polygon via Green's theorem, plus
//! half-plane clipping.

/// Gauss-Legendre 4-point nodes/weights on [0, 1]; exact for degree 7,
/// enough for every moment used here (p <= 3, q <= 2).
const G4_T: [f64; 4] = [
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

/// int int x^p y^q dA over the polygon, positively oriented
/// (counterclockwise). Uses the boundary form oint x^{p+1} y^q / (p+1) dy.
pub fn moment(poly: &[(f64, f64)], p: i32, q: i32) -> f64 {
    let mut acc = 0.0;
    let n = poly.len();
    for i in 0..n {
        let (x0, y0) = poly[i];
        let (x1, y1) = poly[(i + 1) % n];
        let (dx, dy) = (x1 - x0, y1 - y0);
        if dy == 0.0 {
            continue;
        }
        let mut edge = 0.0;
        for k in 0..4 {
            let t = G4_T[k];
            let x = x0 + t * dx;
            let y = y0 + t * dy;
            edge += G4_W[k] * x.powi(p + 1) * y.powi(q);
        }
        acc += edge * dy;
    }
    acc / (p + 1) as f64
}

/// Signed area; positive for counterclockwise orientation.
pub fn signed_area(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    let mut a = 0.0;
    for i in 0..n {
        let (x0, y0) = poly[i];
        let (x1, y1) = poly[(i + 1) % n];
        a += x0 * y1 - x1 * y0;
    }
    0.5 * a
}

/// Keep the part of the polygon with y <= cut (Sutherland-Hodgman).
pub fn clip_below(poly: &[(f64, f64)], cut: f64) -> Vec<(f64, f64)> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 4);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let (ina, inb) = (a.1 <= cut, b.1 <= cut);
        if ina {
            out.push(a);
        }
        if ina != inb {
            let t = (cut - a.1) / (b.1 - a.1);
            out.push((a.0 + t * (b.0 - a.0), cut));
        }
    }
    out
}

/// Volume of the solid of revolution about the y-axis.
pub fn revolved_volume(poly: &[(f64, f64)]) -> f64 {
    2.0 * std::f64::consts::PI * moment(poly, 1, 0)
}

/// First y-moment of the revolved solid (about y = 0).
pub fn revolved_y_moment(poly: &[(f64, f64)]) -> f64 {
    2.0 * std::f64::consts::PI * moment(poly, 1, 1)
}

/// int (x1^2 + x2^2) dV of the revolved solid.
pub fn revolved_rr_moment(poly: &[(f64, f64)]) -> f64 {
    2.0 * std::f64::consts::PI * moment(poly, 3, 0)
}

/// int (y - y0)^2 dV of the revolved solid.
pub fn revolved_yy_moment(poly: &[(f64, f64)], y0: f64) -> f64 {
    2.0 * std::f64::consts::PI
        * (moment(poly, 1, 2) - 2.0 * y0 * moment(poly, 1, 1) + y0 * y0 * moment(poly, 1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Vec<(f64, f64)> {
        vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    }

    #[test]
    fn rectangle_moments_are_exact() {
        let r = rect(1.0, 2.0, -1.0, 0.5);
        assert!((signed_area(&r) - 1.5).abs() < 1e-14);
        // int x dA = (x1^2-x0^2)/2 * height
        assert!((moment(&r, 1, 0) - 1.5 * 1.5).abs() < 1e-13);
        // annular cylinder volume
        let v = revolved_volume(&r);
        assert!((v - PI * (4.0 - 1.0) * 1.5).abs() < 1e-12 * v);
    }

    #[test]
    fn clipping_splits_a_rectangle() {
        let r = rect(0.0, 1.0, -1.0, 0.0);
        let lower = clip_below(&r, -0.25);
        assert!((signed_area(&lower) - 0.75).abs() < 1e-14);
    }

    #[test]
    fn revolved_hemisphere_matches_closed_form() {
        // boundary of the lower half-disk of radius R, revolved: hemisphere
        let rr = 1.7;
        let n = 20_000;
        let mut poly = Vec::with_capacity(n + 1);
        for i in 0..=n {
            // from (0,-R) to (R,0)
            let th = -0.5 * PI + 0.5 * PI * i as f64 / n as f64;
            poly.push((rr * th.cos(), rr * th.sin()));
        }
        // close along the waterline and down the axis
        poly.push((0.0, 0.0));
        let v = revolved_volume(&poly);
        let exact = 2.0 / 3.0 * PI * rr * rr * rr;
        assert!((v - exact).abs() < 1e-8 * exact, "{v} vs {exact}");
        // centroid of a hemisphere sits 3R/8 below the flat face
        let c = revolved_y_moment(&poly) / v;
        assert!((c - (-3.0 * rr / 8.0)).abs() < 1e-7, "{c}");
    }
}
