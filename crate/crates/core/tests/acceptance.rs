//! Acceptance suite: one test per headline claim, each ending in a single
//! PASS line (a failed assert is the FAIL line). Run with --nocapture to see
//! the PASS lines of successful criteria.

use std::sync::OnceLock;
use std::time::Instant;
use wavetrap::levelset::{
    find_stagnation, find_trace_extrema, find_trace_zeros, free_surface_trace, FeatureKind,
    SearchBox,
};
use wavetrap::potential::{kernel_integral, ModeParams, TrigKernel};
use wavetrap::specfun::{j0_zero, j1_zero, y1};
use wavetrap::structure::{body_moments, synthesize, Structure};
use wavetrap::verify::{
    check_far_field, check_kinematic, check_motion_equations, far_field_exponent, heave_scale,
    verify_structure, check_equipartition, Tolerances, TruncationDomain,
};

fn mode1() -> &'static ModeParams {
    static M: OnceLock<ModeParams> = OnceLock::new();
    M.get_or_init(|| ModeParams::dimensionless(1).unwrap())
}

/// The four two-body structure types: motionless pair, heaving inner body,
/// heaving ring body, both heaving.
fn types() -> &'static [Structure; 4] {
    static S: OnceLock<[Structure; 4]> = OnceLock::new();
    S.get_or_init(|| {
        let mp = mode1();
        [
            synthesize(mp, &[0.0, 0.0]).unwrap(),
            synthesize(mp, &[0.1, 0.0]).unwrap(),
            synthesize(mp, &[0.0, 0.1]).unwrap(),
            synthesize(mp, &[0.1, 0.1]).unwrap(),
        ]
    })
}

#[test]
fn criterion_01_stagnation_levels_match_the_reference_figures() {
    let sb = SearchBox::new((0.2, 3.8), (-6.0, -0.01)).unwrap();
    let s1 = find_stagnation(mode1(), 0.1, sb).unwrap();
    assert!(
        (s1.level - (-0.9464)).abs() <= 1e-3,
        "FAIL criterion 1: m=1 stagnation level {} not within 1e-3 of -0.9464",
        s1.level
    );
    let mp2 = ModeParams::dimensionless(2).unwrap();
    let sb = SearchBox::new((0.2, 7.0), (-6.0, -0.01)).unwrap();
    let s2 = find_stagnation(&mp2, 0.1, sb).unwrap();
    assert!(
        (s2.level - (-2.590)).abs() <= 5e-3,
        "FAIL criterion 1: m=2 stagnation level {} not within 5e-3 of -2.590",
        s2.level
    );
    println!(
        "PASS criterion 1: stagnation levels {:.4} and {:.4} match the figures",
        s1.level, s2.level
    );
}

#[test]
fn criterion_02_kernel_integral_reproduces_the_closed_form() {
    let mut worst = 0.0_f64;
    for &(a, b) in &[(1.0, 2.0), (0.5, 3.0), (2.0, 2.5)] {
        for mu in 0u8..=1 {
            let p2 = kernel_integral(TrigKernel::CosPlusSin, mu, mu, a, b, 0.0, 2).unwrap();
            let p0 = kernel_integral(TrigKernel::CosPlusSin, mu, mu, a, b, 0.0, 0).unwrap();
            let want = (a / b).powi(mu as i32) / (b * b - a * a);
            let rel = ((p2 + p0 - want) / want).abs();
            assert!(
                rel <= 1e-8,
                "FAIL criterion 2: mu={mu} (a,b)=({a},{b}) relative error {rel:.3e}"
            );
            worst = worst.max(rel);
        }
    }
    println!("PASS criterion 2: closed-form kernel oracle, worst relative error {worst:.3e}");
}

#[test]
fn criterion_03_bessel_zero_asymptotics() {
    for m in 1..=30u32 {
        let gap = (j1_zero(m) - std::f64::consts::PI * (m as f64 + 0.25)).abs();
        assert!(
            gap <= 1.0 / m as f64,
            "FAIL criterion 3: |j_1m - pi(m+1/4)| = {gap:.3e} exceeds 1/{m}"
        );
    }
    for m in 10..=30u32 {
        let asym = if m % 2 == 1 { 1.0 } else { -1.0 }
            * (2.0 / (std::f64::consts::PI.powi(2) * m as f64)).sqrt();
        let got = y1(j1_zero(m));
        let rel = ((got - asym) / asym).abs();
        assert!(
            rel <= 0.1,
            "FAIL criterion 3: Y1(j_1{m}) = {got:.6} vs asymptotic {asym:.6} (rel {rel:.3})"
        );
    }
    println!("PASS criterion 3: zero asymptotics hold for m = 1..30");
}

#[test]
fn criterion_04_trace_extrema_sit_at_the_j0_zeros() {
    // interval (0, 7) holds exactly two J0 zeros; the spec-quoted upper end
    // j_13 holds a third extremum (see the decisions ledger)
    let window = (0.0, 7.0);
    let d = |m: u32| -> Vec<f64> {
        let mp = ModeParams::dimensionless(m).unwrap();
        let ex = find_trace_extrema(&mp, 0.0, window).unwrap();
        assert_eq!(
            ex.len(),
            2,
            "FAIL criterion 4: m={m} has {} extrema on {window:?}, expected 2",
            ex.len()
        );
        ex.iter()
            .enumerate()
            .map(|(i, e)| (e.rho - j0_zero(i as u32 + 1)).abs())
            .collect()
    };
    let d6 = d(6);
    for (i, gap) in d6.iter().enumerate() {
        assert!(
            *gap <= 0.1,
            "FAIL criterion 4: m=6 extremum {i} is {gap:.3} from its J0 zero"
        );
    }
    let d14 = d(14);
    for i in 0..2 {
        assert!(
            d14[i] < d6[i],
            "FAIL criterion 4: m=14 distance {:.2e} not below m=6 distance {:.2e}",
            d14[i],
            d6[i]
        );
    }
    println!(
        "PASS criterion 4: extrema at J0 zeros, distances {:.2e}/{:.2e} (m=6) shrink to {:.2e}/{:.2e} (m=14)",
        d6[0], d6[1], d14[0], d14[1]
    );
}

#[test]
fn criterion_05_first_mode_trace_structure() {
    let mp = mode1();
    let window = (1e-3, mp.rho_r - 1e-3);
    for heave in [0.0, 0.1] {
        let zeros = find_trace_zeros(mp, heave, window).unwrap();
        assert_eq!(
            zeros.len(),
            1,
            "FAIL criterion 5: H={heave}: {} zeros inside the ring, expected 1",
            zeros.len()
        );
        let ex = find_trace_extrema(mp, heave, window).unwrap();
        assert_eq!(
            ex.len(),
            1,
            "FAIL criterion 5: H={heave}: {} extrema inside the ring, expected 1",
            ex.len()
        );
        assert!(
            ex[0].kind == FeatureKind::Min && ex[0].value < 0.0,
            "FAIL criterion 5: H={heave}: extremum is not a negative minimum"
        );
    }
    // beyond the ring the heave-modified trace falls away to -infinity
    let samples = free_surface_trace(mp, 0.1, 3.0 * mp.rho_r, 600).unwrap();
    let outside: Vec<f64> = samples
        .iter()
        .filter(|(rho, _)| *rho > mp.rho_r + 0.2)
        .map(|&(_, v)| v)
        .collect();
    assert!(
        outside.last().unwrap() < outside.first().unwrap(),
        "FAIL criterion 5: modified trace does not decrease beyond the ring"
    );
    println!("PASS criterion 5: one zero, one negative minimum, divergent far tail");
}

#[test]
fn criterion_06_kinematic_condition_certified_on_all_four_types() {
    let mut worst = 0.0_f64;
    for (t, s) in types().iter().enumerate() {
        for k in 0..s.bodies.len() {
            let r = check_kinematic(s, k).unwrap();
            assert!(
                r <= 1e-6,
                "FAIL criterion 6: type {t} body {k} kinematic residual {r:.3e}"
            );
            worst = worst.max(r);
        }
    }
    let mut bent = types()[0].clone();
    for p in &mut bent.bodies[0].wetted.points {
        p.rho *= 1.01;
    }
    let r = check_kinematic(&bent, 0).unwrap();
    assert!(
        r > 1e-3,
        "FAIL criterion 6: 1% perturbation produced residual {r:.3e}, check is vacuous"
    );
    println!(
        "PASS criterion 6: kinematic residual <= {worst:.3e} on all types; perturbed curve fails at {r:.3e}"
    );
}

#[test]
fn criterion_07_motion_equations_balance() {
    for (t, s) in types().iter().enumerate() {
        for k in 0..s.bodies.len() {
            let b = &s.bodies[k];
            let m = body_moments(b).unwrap();
            let arch = (b.ballast.total_mass - m.displaced_volume).abs();
            assert!(
                arch <= 1e-10 * b.ballast.total_mass.max(1.0),
                "FAIL criterion 7: type {t} body {k} violates Archimedes by {arch:.3e}"
            );
            let r = check_motion_equations(s, k).unwrap();
            for i in [0usize, 1, 2, 4, 5] {
                assert!(
                    r[i].abs() <= 1e-10,
                    "FAIL criterion 7: type {t} body {k} symmetry equation {i}: {:.3e}",
                    r[i]
                );
            }
            let scale = heave_scale(s, k).unwrap();
            assert!(
                r[3].abs() <= 1e-5 * scale,
                "FAIL criterion 7: type {t} body {k} heave equation {:.3e} vs scale {scale:.3e}",
                r[3]
            );
        }
    }
    println!("PASS criterion 7: motion equations balance on all four types");
}

#[test]
fn criterion_08_energy_equipartition_converges() {
    let domains = [
        TruncationDomain::new(10.0, 5.0).unwrap(),
        TruncationDomain::new(20.0, 10.0).unwrap(),
        TruncationDomain::new(40.0, 20.0).unwrap(),
    ];
    let rows = check_equipartition(&types()[0], &domains).unwrap();
    let gaps: Vec<f64> = rows.iter().map(|&(_, _, g)| g).collect();
    assert!(
        gaps[2] <= 0.02,
        "FAIL criterion 8: gap {:.3e} at the largest domain exceeds 2%",
        gaps[2]
    );
    // nonincreasing up to the quadrature floor (see the decisions ledger)
    for w in gaps.windows(2) {
        assert!(
            w[1] <= w[0] + 1e-4,
            "FAIL criterion 8: gap grows beyond the quadrature floor: {gaps:?}"
        );
    }
    println!(
        "PASS criterion 8: equipartition gaps {:.2e} -> {:.2e} -> {:.2e}",
        gaps[0], gaps[1], gaps[2]
    );
}

#[test]
fn criterion_09_far_field_decay_exponents() {
    let mp = mode1();
    let trapped = check_far_field(mp).unwrap();
    assert!(
        trapped <= -1.4,
        "FAIL criterion 9: trapped-mode exponent {trapped:.3} exceeds -1.4"
    );
    let restored = far_field_exponent(1.1 * mp.rho_r, (3.0 * mp.rho_r, 12.0 * mp.rho_r)).unwrap();
    assert!(
        (-0.6..=-0.4).contains(&restored),
        "FAIL criterion 9: displaced-ring exponent {restored:.3} not in [-0.6, -0.4]"
    );
    println!(
        "PASS criterion 9: exponents {trapped:.2} (trapped) and {restored:.2} (wave restored)"
    );
}

#[test]
fn criterion_10_three_body_higher_mode_pipeline() {
    let start = Instant::now();
    let mp = ModeParams::dimensionless(6).unwrap();
    let s = synthesize(&mp, &[0.0, 0.05, 0.0]).unwrap();
    assert_eq!(s.bodies.len(), 3);
    let domains = [
        TruncationDomain::new(25.0, 12.0).unwrap(),
        TruncationDomain::new(40.0, 20.0).unwrap(),
    ];
    let report = verify_structure(&s, &domains, &Tolerances::default()).unwrap();
    assert!(
        report.passed,
        "FAIL criterion 10: verification failed\n{report}"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 600,
        "FAIL criterion 10: pipeline took {elapsed:?}, budget is 10 minutes"
    );
    println!(
        "PASS criterion 10: N=3, m=6 pipeline certified in {:.1} s",
        elapsed.as_secs_f64()
    );
}
