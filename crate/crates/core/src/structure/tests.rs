use super::*;
use crate::levelset::CurveEnd;
use crate::potential::FieldPoint;

fn mode(m: u32) -> ModeParams {
    ModeParams::dimensionless(m).unwrap()
}

/// Hand-built body from an explicit wetted polyline (tests only).
fn synthetic_body(points: Vec<(f64, f64)>, heave: f64) -> BodySection {
    let (a, b) = (points.first().unwrap().0, points.last().unwrap().0);
    let pts = points
        .iter()
        .map(|&(rho, eta)| FieldPoint::new(rho, eta).unwrap())
        .collect();
    let wetted = LevelCurve {
        level: 0.0,
        points: pts,
        left_end: CurveEnd::FreeSurface(a),
        right_end: CurveEnd::FreeSurface(b),
        encloses_ring: false,
    };
    let mut body = BodySection::new(wetted, heave).unwrap();
    body.ballast = DensityPlan {
        layers: vec![],
        center_of_mass_eta: 0.0,
        total_mass: 0.0,
    };
    body
}

/// Hemispherical hull: quarter circle from the keel (0, -rr) out to the
/// waterline (rr, 0), entered at the axis so the meridional section closes.
fn hemisphere_body(rr: f64, n: usize) -> BodySection {
    let mut v = vec![(0.0, 0.0), (0.0, -rr)];
    for i in 1..=n {
        let th = -0.5 * std::f64::consts::PI + 0.5 * std::f64::consts::PI * i as f64 / n as f64;
        v.push((rr * th.cos(), rr * th.sin()));
    }
    synthetic_body(v, 0.0)
}

#[test]
fn synthesize_rejects_short_input() {
    let mp = mode(1);
    assert!(synthesize(&mp, &[0.0]).is_err());
    assert!(synthesize(&mp, &[0.1, -0.1]).is_err());
}

#[test]
fn too_many_bodies_for_the_first_mode() {
    let err = synthesize(&mode(1), &[0.0, 0.0, 0.0]).unwrap_err();
    assert!(
        matches!(err, WaveError::InsufficientExtrema { m: 1, found: 1, needed: 2 }),
        "{err:?}"
    );
}

#[test]
fn motionless_two_body_structure() {
    let mp = mode(1);
    let s = synthesize(&mp, &[0.0, 0.0]).unwrap();
    assert_eq!(s.bodies.len(), 2);
    // ordering, single ring enclosure, zero displacement vectors
    assert!(!s.bodies[0].wetted.encloses_ring);
    assert!(s.bodies[1].wetted.encloses_ring);
    assert!(s.bodies[0].waterline_radii.1 < s.bodies[1].waterline_radii.0);
    for chi in &s.chi {
        assert_eq!(chi.norm(), 0.0);
    }
    for b in &s.bodies {
        // Archimedes to 1e-10 relative
        let m = body_moments(b).unwrap();
        let rel = (b.ballast.total_mass - m.displaced_volume).abs() / m.displaced_volume;
        assert!(rel <= 1e-10, "mass defect {rel:.3e}");
        // horizontal buoyancy moments vanish by symmetry
        assert_eq!(m.i_d1, 0.0);
        assert_eq!(m.i_d2, 0.0);
        assert_eq!(m.i_d12, 0.0);
        // waterplane formulas
        let (r0, r1) = b.waterline_radii;
        let pi = std::f64::consts::PI;
        assert!((m.i_d - pi * (r1 * r1 - r0 * r0)).abs() < 1e-12 * m.i_d);
        assert!((m.i_d11 - 0.25 * pi * (r1.powi(4) - r0.powi(4))).abs() < 1e-12 * m.i_d11);
        assert_eq!(m.i_d11, m.i_d22);
    }
}

#[test]
fn equilibrium_matrices_are_diagonal_and_stable() {
    let mp = mode(1);
    let s = synthesize(&mp, &[0.1, 0.1]).unwrap();
    for (b, chi) in s.bodies.iter().zip(&s.chi) {
        assert_eq!(chi[3], 0.1);
        let em = assemble_matrices(b).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    assert_eq!(em.e0[(i, j)], 0.0);
                    assert_eq!(em.k0[(i, j)], 0.0);
                }
            }
            assert!(em.e0[(i, i)] > 0.0, "E0 must be positive definite");
        }
        // mass entries agree and equal the displaced mass
        assert_eq!(em.e0[(0, 0)], em.e0[(1, 1)]);
        assert_eq!(em.e0[(0, 0)], em.e0[(3, 3)]);
        let vol = body_moments(b).unwrap().displaced_volume;
        assert!((em.e0[(0, 0)] - vol).abs() <= 1e-8 * vol, "{}", em.e0[(0, 0)]);
        // upper-left buoyancy block zero, lower-right positive definite
        for i in 0..3 {
            assert_eq!(em.k0[(i, i)], 0.0);
            assert!(em.k0[(i + 3, i + 3)] > 0.0);
        }
    }
}

#[test]
fn mixed_structure_uses_the_modified_stream_function() {
    let mp = mode(1);
    let motionless = synthesize(&mp, &[0.0, 0.0]).unwrap();
    let mixed = synthesize(&mp, &[0.1, 0.0]).unwrap();
    // the heaving inner body comes from a different level family
    let r0 = motionless.bodies[0].waterline_radii;
    let r1 = mixed.bodies[0].waterline_radii;
    assert!((r0.0 - r1.0).abs() > 1e-3, "{r0:?} vs {r1:?}");
    // the shared motionless ring body is identical
    assert_eq!(
        motionless.bodies[1].waterline_radii,
        mixed.bodies[1].waterline_radii
    );
    assert_eq!(mixed.chi[0][3], 0.1);
    assert_eq!(mixed.chi[1][3], 0.0);
}

#[test]
fn three_body_structure_on_a_higher_mode() {
    let mp = mode(6);
    let s = synthesize(&mp, &[0.0, 0.05, 0.0]).unwrap();
    assert_eq!(s.bodies.len(), 3);
    assert_eq!(
        s.bodies.iter().filter(|b| b.wetted.encloses_ring).count(),
        1
    );
    // pairwise disjoint waterline annuli in order
    for w in s.bodies.windows(2) {
        assert!(w[0].waterline_radii.1 < w[1].waterline_radii.0);
    }
    assert_eq!(s.chi[1][3], 0.05);
}

#[test]
fn displaced_volume_matches_the_spherical_cap_oracle() {
    let rr = 1.3;
    let b = hemisphere_body(rr, 20_000);
    let m = body_moments(&b).unwrap();
    let exact = 2.0 / 3.0 * std::f64::consts::PI * rr * rr * rr;
    assert!(
        (m.displaced_volume - exact).abs() <= 1e-8 * exact,
        "{} vs {exact}",
        m.displaced_volume
    );
}

#[test]
fn self_intersecting_outline_is_rejected() {
    let b = synthetic_body(
        vec![(1.0, 0.0), (2.0, -1.0), (1.2, -1.0), (2.0, 0.0)],
        0.0,
    );
    assert!(matches!(body_moments(&b), Err(WaveError::Geometry(_))));
}

#[test]
fn ballast_plan_hits_mass_and_center_targets() {
    let b = hemisphere_body(1.0, 800);
    let poly_b = b.displaced_polygon();
    let vol = poly::revolved_volume(&poly_b);
    let centroid = poly::revolved_y_moment(&poly_b) / vol;
    // a target at the displaced centroid is always reachable
    let plan = plan_ballast(&b, centroid).unwrap();
    assert!((plan.total_mass - vol).abs() <= 1e-10 * vol);
    // recompute mass and center from the layers themselves
    let mut mass = 0.0;
    let mut moment = 0.0;
    for layer in &plan.layers {
        let region = if layer.eta.0 >= 0.0 {
            vec![
                (layer.rho.0, layer.eta.0),
                (layer.rho.1, layer.eta.0),
                (layer.rho.1, layer.eta.1),
                (layer.rho.0, layer.eta.1),
            ]
        } else {
            poly::clip_below(&poly_b, layer.eta.1)
        };
        mass += layer.density_ratio * poly::revolved_volume(&region);
        moment += layer.density_ratio * poly::revolved_y_moment(&region);
    }
    assert!((mass - vol).abs() <= 1e-10 * vol, "layer mass {mass} vs {vol}");
    assert!((moment / mass - centroid).abs() <= 1e-8, "{}", moment / mass);
}

#[test]
fn unreachable_ballast_targets_are_infeasible() {
    let b = hemisphere_body(1.0, 800);
    // far above the superstructure midpoint
    assert!(matches!(
        plan_ballast(&b, 2.0),
        Err(WaveError::Infeasible(_))
    ));
    // below the lowest point of the hull
    assert!(matches!(
        plan_ballast(&b, -1.5),
        Err(WaveError::Infeasible(_))
    ));
}

#[test]
fn top_heavy_body_fails_the_stability_check() {
    // slender deep annular hull: tiny waterplane stiffness
    let mut b = synthetic_body(
        vec![(1.0, 0.0), (1.0, -3.0), (1.01, -3.0), (1.01, 0.0)],
        0.0,
    );
    b.ballast = plan_ballast(&b, -0.2).unwrap();
    let err = assemble_matrices(&b).unwrap_err();
    assert!(matches!(err, WaveError::StabilityViolation(e) if e < 0.0), "{err:?}");
    // the same hull is stable with the mass kept low
    b.ballast = plan_ballast(&b, -2.2).unwrap();
    assert!(assemble_matrices(&b).is_ok());
}
