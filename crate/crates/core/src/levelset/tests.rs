use super::*;
use crate::error::WaveError;
use crate::potential::{field_sample, psi_heave, FieldPoint, ModeParams};
use crate::specfun::j0_zero;

fn mode(m: u32) -> ModeParams {
    ModeParams::dimensionless(m).unwrap()
}

/// First crossing of the trace through `v` inside the interval, by bisection.
fn seed_on_trace(mp: &ModeParams, heave: f64, v: f64, iv: (f64, f64)) -> FieldPoint {
    let f = |r: f64| psi_heave(FieldPoint::new(r, 0.0).unwrap(), mp, heave).unwrap() - v;
    let n = 400;
    let h = (iv.1 - iv.0) / n as f64;
    let mut a = iv.0;
    let mut fa = f(a);
    for i in 1..=n {
        let b = iv.0 + i as f64 * h;
        let fb = f(b);
        if fa.signum() != fb.signum() {
            let (mut x, mut y) = (a, b);
            let mut fx = fa;
            for _ in 0..60 {
                let m = 0.5 * (x + y);
                let fm = f(m);
                if fm.signum() == fx.signum() {
                    x = m;
                    fx = fm;
                } else {
                    y = m;
                }
            }
            return FieldPoint::new(0.5 * (x + y), 0.0).unwrap();
        }
        a = b;
        fa = fb;
    }
    panic!("no crossing of {v} in {iv:?}");
}

#[test]
fn search_box_validation() {
    assert!(SearchBox::new((1.0, 2.0), (-1.0, -0.1)).is_ok());
    assert!(SearchBox::new((2.0, 1.0), (-1.0, -0.1)).is_err());
    assert!(SearchBox::new((1.0, 2.0), (-1.0, 0.5)).is_err());
}

#[test]
fn trace_input_validation() {
    let mp = mode(1);
    assert!(free_surface_trace(&mp, 0.0, 8.0, 50).is_err());
    assert!(free_surface_trace(&mp, 0.0, 2.0, 400).is_err());
    assert!(find_trace_extrema(&mp, 0.0, (1.0, 5.0)).is_err()); // spans the ring
}

#[test]
fn trace_vanishes_at_axis_and_diverges_at_ring() {
    let mp = mode(1);
    let tr = free_surface_trace(&mp, 0.0, 8.0, 400).unwrap();
    assert_eq!(tr.len(), 400);
    assert!(tr[0].1.abs() < 0.05, "trace near the axis: {}", tr[0].1);
    // samples climb toward the ring from both sides; the divergence is
    // logarithmic in the distance, so guard-adjacent values sit around ten,
    // well above the regular trace scale but far from overflow
    let near_left: Vec<f64> = (1..=3)
        .map(|k| {
            let rho = mp.rho_r - 10f64.powi(-k - 2);
            psi_heave(FieldPoint::new(rho, 0.0).unwrap(), &mp, 0.0).unwrap()
        })
        .collect();
    assert!(near_left.windows(2).all(|w| w[1] > w[0]), "{near_left:?}");
    assert!(near_left[2] > 8.0, "{near_left:?}");
    let bulk_max = tr
        .iter()
        .filter(|(r, _)| (r - mp.rho_r).abs() > 0.5)
        .map(|&(_, v)| v)
        .fold(f64::MIN, f64::max);
    assert!(near_left[2] > bulk_max, "divergent approach should dominate");
}

#[test]
fn heaved_trace_eventually_negative_and_decreasing() {
    let mp = mode(1);
    let tr = free_surface_trace(&mp, 0.1, 12.0, 400).unwrap();
    let tail: Vec<f64> = tr.iter().filter(|(r, _)| *r > 8.0).map(|&(_, v)| v).collect();
    assert!(tail.iter().all(|&v| v < 0.0));
    assert!(tail.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn first_mode_has_one_negative_minimum_before_the_zero() {
    let mp = mode(1);
    for heave in [0.0, 0.1] {
        let ex = find_trace_extrema(&mp, heave, (0.0, mp.rho_r - 0.05)).unwrap();
        assert_eq!(ex.len(), 1, "H={heave}: {ex:?}");
        assert_eq!(ex[0].kind, FeatureKind::Min);
        assert!(ex[0].value < 0.0);
        if heave == 0.0 {
            let zs = find_trace_zeros(&mp, 0.0, (0.0, mp.rho_r - 0.05)).unwrap();
            assert_eq!(zs.len(), 1);
            assert!(ex[0].rho < zs[0].rho, "minimum left of the zero");
        }
    }
}

#[test]
fn sixth_mode_extrema_sit_on_the_axial_bessel_zeros() {
    let mp = mode(6);
    let ex = find_trace_extrema(&mp, 0.0, (0.0, 7.0)).unwrap();
    assert_eq!(ex.len(), 2, "{ex:?}");
    assert!((ex[0].rho - j0_zero(1)).abs() < 0.1, "{}", ex[0].rho);
    assert!((ex[1].rho - j0_zero(2)).abs() < 0.1, "{}", ex[1].rho);
    // alternation with the stated signs
    assert_eq!(ex[0].kind, FeatureKind::Max);
    assert!(ex[0].value > 0.0);
    assert_eq!(ex[1].kind, FeatureKind::Min);
    assert!(ex[1].value < 0.0);
}

#[test]
fn extrema_approach_the_bessel_zeros_as_the_mode_grows() {
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for m in [6u32, 10, 14] {
        let ex = find_trace_extrema(&mode(m), 0.0, (0.0, 7.0)).unwrap();
        assert_eq!(ex.len(), 2, "m={m}: {ex:?}");
        d1.push((ex[0].rho - j0_zero(1)).abs());
        d2.push((ex[1].rho - j0_zero(2)).abs());
    }
    assert!(d1.windows(2).all(|w| w[1] < w[0]), "{d1:?}");
    assert!(d2.windows(2).all(|w| w[1] < w[0]), "{d2:?}");
}

#[test]
fn nodal_line_escapes_without_touching_the_axis() {
    let mp = mode(1);
    let zs = find_trace_zeros(&mp, 0.0, (0.0, mp.rho_r - 0.05)).unwrap();
    let seed = FieldPoint::new(zs[0].rho, 0.0).unwrap();
    let c = trace_level_curve(&mp, 0.0, 0.0, seed, 0.05).unwrap();
    assert!(matches!(c.left_end, CurveEnd::FreeSurface(_)));
    assert_eq!(c.right_end, CurveEnd::Infinity);
    assert!(!c.encloses_ring);
    let min_rho = c.points.iter().map(|p| p.rho).fold(f64::MAX, f64::min);
    assert!(min_rho > 1.0, "nodal line stays away from the axis: {min_rho}");
}

#[test]
fn positive_level_loops_around_the_ring() {
    let mp = mode(1);
    let v = 0.5;
    let seed = seed_on_trace(&mp, 0.0, v, (0.3, mp.rho_r - 1e-4));
    let step = 0.05;
    let c = trace_level_curve(&mp, 0.0, v, seed, step).unwrap();
    assert!(c.encloses_ring);
    let (CurveEnd::FreeSurface(a), CurveEnd::FreeSurface(b)) = (c.left_end, c.right_end) else {
        panic!("expected two free-surface landings: {:?} {:?}", c.left_end, c.right_end);
    };
    assert!(a < mp.rho_r && b > mp.rho_r);
    // level fidelity and the vertex invariants
    for p in &c.points {
        assert!(p.rho >= 0.0 && p.eta <= 0.0);
        let r = (psi_heave(*p, &mp, 0.0).unwrap() - v).abs();
        assert!(r <= 1e-8, "residual {r:.3e} at ({}, {})", p.rho, p.eta);
    }
    for w in c.points.windows(2) {
        let d = (w[1].rho - w[0].rho).hypot(w[1].eta - w[0].eta);
        assert!(d <= 1.5 * step, "vertex spacing {d}");
    }
}

#[test]
fn streamline_tangent_is_orthogonal_to_the_stream_gradient() {
    let mp = mode(1);
    let v = 0.5;
    let seed = seed_on_trace(&mp, 0.0, v, (0.3, mp.rho_r - 1e-4));
    let c = trace_level_curve(&mp, 0.0, v, seed, 0.02).unwrap();
    let pts = &c.points;
    // skip the endpoint neighborhoods where the landing vertices break the
    // uniform spacing the secant comparison relies on
    for i in (5..pts.len().saturating_sub(5)).step_by(5) {
        let s = field_sample(pts[i], &mp, 0.0).unwrap();
        let g = s.grad_psi;
        let gn = g.0.hypot(g.1);
        // the marching tangent is the rotated stream gradient; the potential
        // gradient must be parallel to it
        let t = (g.1 / gn, -g.0 / gn);
        let gp = s.grad_phi;
        let gpn = gp.0.hypot(gp.1).max(1e-12);
        let cross = (gp.0 * t.1 - gp.1 * t.0).abs() / gpn;
        assert!(cross <= 1e-6, "analytic cross {cross:.3e} at vertex {i}");
        // the secant tangent agrees up to curvature of order step^2
        let sec = (pts[i + 1].rho - pts[i - 1].rho, pts[i + 1].eta - pts[i - 1].eta);
        let sn = sec.0.hypot(sec.1);
        let cross_sec = (gp.0 * sec.1 - gp.1 * sec.0).abs() / (gpn * sn);
        assert!(cross_sec <= 1e-2, "secant cross {cross_sec:.3e} at vertex {i}");
    }
}

#[test]
fn escaping_curve_asymptotes_the_predicted_vertical_line() {
    let mp = mode(1);
    let heave = 0.1;
    let v = -2.0;
    let seed = seed_on_trace(&mp, heave, v, (mp.rho_r + 0.05, 12.0));
    let c = trace_level_curve(&mp, heave, v, seed, 0.05).unwrap();
    let escape = match (c.left_end, c.right_end) {
        (CurveEnd::Infinity, _) => c.points.first().unwrap(),
        (_, CurveEnd::Infinity) => c.points.last().unwrap(),
        ends => panic!("no escaping end: {ends:?}"),
    };
    let expect = (2.0 * v.abs() / heave).sqrt();
    assert!(
        (escape.rho - expect).abs() <= 0.01 * expect,
        "rho {} vs asymptote {expect}",
        escape.rho
    );
}

#[test]
fn seed_validation_errors() {
    let mp = mode(1);
    let off = trace_level_curve(&mp, 0.0, 5.0, FieldPoint::new(1.0, -1.0).unwrap(), 0.05);
    assert!(matches!(off, Err(WaveError::SeedOffLevel { .. })), "{off:?}");
    // the stream function and its gradient both vanish on the axis
    let axis = trace_level_curve(&mp, 0.0, 0.0, FieldPoint::new(0.0, -1.0).unwrap(), 0.05);
    assert!(
        matches!(axis, Err(WaveError::StagnationEncountered { .. })),
        "{axis:?}"
    );
}

#[test]
fn stagnation_level_first_mode_matches_the_figure_and_splits_families() {
    let mp = mode(1);
    let sbox = SearchBox::new((2.0, 6.0), (-3.5, -0.5)).unwrap();
    let s = find_stagnation(&mp, 0.1, sbox).unwrap();
    assert!(
        (s.level - (-0.9464)).abs() <= 0.001,
        "critical level {} vs -0.9464",
        s.level
    );
    let g = field_sample(s.location, &mp, 0.1).unwrap().grad_psi;
    assert!(g.0.hypot(g.1) <= 1e-7);

    // levels above the critical one loop around the ring; below it they escape
    for dv in [0.1, -0.1] {
        let v = s.level + dv;
        let seed = seed_on_trace(&mp, 0.1, v, (mp.rho_r + 0.05, 12.0));
        let c = trace_level_curve(&mp, 0.1, v, seed, 0.05).unwrap();
        if dv > 0.0 {
            assert!(c.encloses_ring, "v={v}: {:?} {:?}", c.left_end, c.right_end);
        } else {
            assert!(
                c.left_end == CurveEnd::Infinity || c.right_end == CurveEnd::Infinity,
                "v={v}: {:?} {:?}",
                c.left_end,
                c.right_end
            );
        }
    }
}

#[test]
fn stagnation_level_second_mode_matches_the_figure() {
    let mp = mode(2);
    let sbox = SearchBox::new((4.0, 10.0), (-4.0, -0.5)).unwrap();
    let s = find_stagnation(&mp, 0.1, sbox).unwrap();
    assert!(
        (s.level - (-2.590)).abs() <= 0.005,
        "critical level {} vs -2.590",
        s.level
    );
}

#[test]
fn no_stagnation_without_heave() {
    let mp = mode(1);
    let sbox = SearchBox::new((2.0, 6.0), (-3.5, -0.5)).unwrap();
    assert!(matches!(find_stagnation(&mp, 0.0, sbox), Err(WaveError::NotFound)));
    let g_min = min_gradient_on_grid(&mp, 0.0, sbox, 60).unwrap();
    assert!(g_min > 1e-3, "dense scan floor {g_min:.3e}");
    assert!(find_stagnation(&mp, -0.1, sbox).is_err());
}
