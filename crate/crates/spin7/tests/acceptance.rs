//! Acceptance gate: one test per shipping criterion, each printing a single
//! summary line (visible with `--nocapture`). Every tolerance here is a
//! contract; loosening one is a regression, not a fix.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin7::algebra::{
    constants_report, fundamental_form, nabla_phi_formula, spin7_tables, torsion_closed_form,
    torsion_linear_solve, AlgebraConstants,
};
use spin7::analysis::{
    conformal_check, killing_check, scalar_identity_check, sl_identity_check,
    torsion_bound_check,
};
use spin7::exterior::{hodge_star, masks, KForm};
use spin7::fields::{
    connection_ricci, default_conformal, default_conformal_field, default_perturbed,
    dirac_identities, fixture_flat, sample_points, structure_jet, Fixture, ScalarTrigField,
};
use spin7::Vector8;

const SEED: u64 = 7;
const POINTS: usize = 32;

fn fixtures() -> [(&'static str, Fixture); 3] {
    [
        ("flat", fixture_flat()),
        ("conformal", default_conformal(0.01)),
        ("perturbed", default_perturbed(0.01, SEED)),
    ]
}

fn random_three_form(rng: &mut ChaCha8Rng) -> KForm {
    let coeffs = (0..masks(3).len())
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    KForm::from_coeffs(3, coeffs)
}

fn basis() -> [Vector8; 8] {
    let mut b = [[0.0; 8]; 8];
    for (i, e) in b.iter_mut().enumerate() {
        e[i] = 1.0;
    }
    b
}

fn report(n: usize, name: &str, detail: String, started: Instant) {
    println!(
        "criterion {n} ({name}): pass — {detail} ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_1_algebraic_constants() {
    let started = Instant::now();
    let c = constants_report(&fundamental_form()).unwrap();
    assert_eq!(c.norm2, 14.0, "norm is exact");
    assert_eq!(c.self_dual_residual, 0.0, "self-duality is exact");
    assert_eq!(c.wedge_normalization, 14.0);
    assert_eq!((c.eigen_plus3, c.eigen_minus1), (7, 21));
    assert!(c.eigen_residual <= 1e-10, "spectrum: {}", c.eigen_residual);
    for (t, e) in c.projector_traces.iter().zip(AlgebraConstants::EXPECTED_TRACES) {
        assert!((t - e).abs() <= 1e-10, "trace {t} vs {e}");
    }
    assert!(c.projector_residual <= 1e-10);
    assert!(c.gram_residual <= 1e-10);
    assert_eq!(c.four_seven_rank, 7);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    report(1, "algebraic constants", format!("worst residual {:.2e}", c.worst()), started);
}

#[test]
fn criterion_2_torsion_uniqueness() {
    let started = Instant::now();
    assert_eq!(spin7_tables().torsion_rank(), 56, "contraction operator rank");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let phi = fundamental_form();
    let e = basis();
    let mut worst_solve: f64 = 0.0;
    let mut worst_derivative: f64 = 0.0;
    for _ in 0..100 {
        let delta_phi = random_three_form(&mut rng);
        let closed = torsion_closed_form(&delta_phi).unwrap();
        let solved = torsion_linear_solve(&delta_phi).unwrap();
        worst_solve = worst_solve.max(closed.sub(&solved).max_abs());

        // The recovered torsion must reproduce the covariant derivative of
        // phi: twice the derivative is the derivation of phi by the
        // endomorphisms L(a)[r] = sum_m t(e_a, e_m, e_r) e^m.
        for _ in 0..2 {
            let a = rng.gen_range(0..8);
            let images: [KForm; 8] = std::array::from_fn(|r| {
                let coeffs = (0..8).map(|m| closed.apply(&[e[a], e[m], e[r]])).collect();
                KForm::from_coeffs(1, coeffs)
            });
            let derived = phi.derivation(&images).scale(0.5);
            for _ in 0..2 {
                let args: [Vector8; 4] =
                    std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
                let direct =
                    nabla_phi_formula(&delta_phi, &e[a], &args[0], &args[1], &args[2], &args[3])
                        .unwrap();
                worst_derivative = worst_derivative.max((direct - derived.apply(&args)).abs());
            }
        }
    }
    assert!(worst_solve <= 1e-9, "solver vs closed form: {worst_solve}");
    assert!(worst_derivative <= 1e-9, "derivative routes: {worst_derivative}");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    report(
        2,
        "torsion uniqueness",
        format!("solve {worst_solve:.2e}, derivative {worst_derivative:.2e}"),
        started,
    );
}

#[test]
fn criterion_3_connection_parallelism() {
    let started = Instant::now();
    let pts = sample_points(SEED, POINTS);
    let mut worst: f64 = 0.0;
    for (name, fixture) in fixtures() {
        for p in &pts {
            let jet = structure_jet(&fixture, p).unwrap();
            let r = jet.parallel_residual();
            assert!(r <= 1e-8, "{name} at {p:?}: parallelism {r}");
            assert!(jet.metricity_residual <= 1e-8, "{name}: metricity");
            worst = worst.max(r);
        }
    }
    report(3, "connection parallelism", format!("worst residual {worst:.2e}"), started);
}

#[test]
fn criterion_4_conformal_laws() {
    let started = Instant::now();
    let pts = sample_points(SEED, POINTS);
    let f = default_conformal_field(0.01);
    let mut worst: f64 = 0.0;
    for (name, base) in [
        ("flat", fixture_flat()),
        ("perturbed", default_perturbed(0.01, SEED)),
    ] {
        let r = conformal_check(&base, &f, &pts).unwrap();
        assert!(r.lee_residual <= 1e-7, "{name}: lee law {}", r.lee_residual);
        assert!(r.torsion_residual <= 1e-7, "{name}: torsion law {}", r.torsion_residual);
        worst = worst.max(r.lee_residual).max(r.torsion_residual);
    }

    let conformal = default_conformal(0.01);
    let perturbed = default_perturbed(0.01, SEED);
    let mut max_conformal_gap: f64 = 0.0;
    let mut min_generic_gap = f64::INFINITY;
    for p in &pts {
        let r = torsion_bound_check(&structure_jet(&conformal, p).unwrap());
        assert!(r.identity_residual <= 1e-10);
        assert!(r.gap <= 1e-10 * (1.0 + r.lhs), "conformal gap {}", r.gap);
        max_conformal_gap = max_conformal_gap.max(r.gap);

        let r = torsion_bound_check(&structure_jet(&perturbed, p).unwrap());
        assert!(r.identity_residual <= 1e-10);
        assert!(r.gap > 1e-4, "generic gap must stay visible: {}", r.gap);
        min_generic_gap = min_generic_gap.min(r.gap);
    }
    report(
        4,
        "conformal laws",
        format!(
            "laws {worst:.2e}, gap {max_conformal_gap:.2e} conformal vs {min_generic_gap:.2e} generic"
        ),
        started,
    );
}

#[test]
fn criterion_5_curvature_formulas() {
    let started = Instant::now();
    let pts = sample_points(SEED, POINTS);
    let mut worst_scalar: f64 = 0.0;
    let mut worst_ricci: f64 = 0.0;
    let mut worst_probe: f64 = 0.0;
    for fixture in [default_conformal(0.01), default_perturbed(0.01, SEED)] {
        for p in &pts {
            let jet = structure_jet(&fixture, p).unwrap();
            let s = scalar_identity_check(&jet);
            assert!(s.metric_residual <= 1e-5, "metric scalar {}", s.metric_residual);
            assert!(s.torsion_residual <= 1e-5, "torsion scalar {}", s.torsion_residual);
            assert!(s.balanced_probe_residual <= 1e-6, "probe {}", s.balanced_probe_residual);
            worst_scalar = worst_scalar.max(s.metric_residual).max(s.torsion_residual);
            worst_probe = worst_probe.max(s.balanced_probe_residual);

            let r = connection_ricci(&fixture, p).unwrap();
            for (label, v) in [
                ("formula", r.formula_residual),
                ("direct", r.direct_residual),
                ("antisymmetry", r.antisymmetry_residual),
                ("metric", r.metric_residual),
                ("scalar trace", r.scal_residual),
            ] {
                assert!(v <= 1e-5, "ricci {label}: {v}");
                worst_ricci = worst_ricci.max(v);
            }
        }
    }
    report(
        5,
        "curvature formulas",
        format!("scalar {worst_scalar:.2e}, ricci {worst_ricci:.2e}, probe {worst_probe:.2e}"),
        started,
    );
}

#[test]
fn criterion_6_spinor_identities() {
    let started = Instant::now();
    let pts = sample_points(SEED, POINTS);
    let mut worst: f64 = 0.0;
    for (name, fixture) in fixtures() {
        for p in &pts {
            let d = dirac_identities(&fixture, p).unwrap();
            for (label, v) in [
                ("covariant derivative", d.parallel_residual),
                ("dirac vs lee", d.dirac_lee_residual),
                ("dirac vs torsion", d.dirac_torsion_residual),
                ("torsion vs lee", d.torsion_lee_residual),
            ] {
                assert!(v <= 1e-6, "{name} {label}: {v}");
                worst = worst.max(v);
            }

            let jet = structure_jet(&fixture, p).unwrap();
            let s = sl_identity_check(&jet).unwrap();
            for (label, v) in [
                ("curvature action", s.first_residual),
                ("direction action", s.second_residual),
                ("laplacian", s.laplace_residual),
                ("pairing", s.pairing_residual),
            ] {
                assert!(v <= 1e-6, "{name} {label}: {v}");
                worst = worst.max(v);
            }
        }
    }
    report(6, "spinor identities", format!("worst residual {worst:.2e}"), started);
}

#[test]
fn criterion_7_killing_equivalence() {
    let started = Instant::now();
    let pts = sample_points(SEED, POINTS);
    let f = default_conformal_field(0.01);
    let field = default_conformal(0.01);

    let adapted = ScalarTrigField {
        terms: f.terms.clone(),
        scale: -(7.0 / 3.0) * f.scale,
    };
    let good = killing_check(&field, &adapted, &pts, 1e-6).unwrap();
    assert!(good.accepted, "adapted dilation is accepted: {good:?}");
    for (label, v) in [
        ("spinor", good.spinor_residual),
        ("lee", good.lee_residual),
        ("torsion", good.torsion_residual),
        ("scalar", good.scalar_residual),
    ] {
        assert!(v <= 1e-6, "accepted {label}: {v}");
    }

    let zero = ScalarTrigField { terms: Vec::new(), scale: 0.0 };
    let bad = killing_check(&field, &zero, &pts, 1e-6).unwrap();
    assert!(!bad.accepted, "the zero dilation must be rejected: {bad:?}");

    report(
        7,
        "killing equivalence",
        format!(
            "accepted worst {:.2e}, rejected at {:.2e}",
            good.spinor_residual
                .max(good.lee_residual)
                .max(good.torsion_residual)
                .max(good.scalar_residual),
            bad.lee_residual.max(bad.spinor_residual)
        ),
        started,
    );
}

#[test]
fn criterion_8_fault_injection() {
    let started = Instant::now();

    // A single sign flip in the fundamental form must wreck criterion 1.
    let mut flipped = fundamental_form();
    *flipped.coeff_mut(0b1111_0000) = -1.0;
    let c = constants_report(&flipped).unwrap();
    assert!(c.worst() > 0.5, "sign flip stays loud: {}", c.worst());

    // Corrupting the 7/6 coefficient of the torsion formula to 7/5 must
    // wreck criterion 3: the connection built from the bad torsion no
    // longer transports phi.
    let fixture = default_conformal(0.01);
    let model = fundamental_form();
    let mut worst_good: f64 = 0.0;
    let mut best_bad = f64::INFINITY;
    for p in &sample_points(SEED, 8) {
        let jet = structure_jet(&fixture, p).unwrap();
        let bad = jet
            .delta_phi_frame
            .neg()
            .sub(&hodge_star(&jet.theta_frame.wedge(&model)).scale(7.0 / 5.0));
        worst_good = worst_good.max(jet.parallel_residual());
        best_bad = best_bad.min(jet.parallel_residual_with(&bad));
    }
    assert!(worst_good <= 1e-8, "true coefficient passes: {worst_good}");
    assert!(best_bad > 1e-8, "wrong coefficient must fail: {best_bad}");

    report(
        8,
        "fault injection",
        format!("constants {:.2e}, parallelism {best_bad:.2e} vs {worst_good:.2e}", c.worst()),
        started,
    );
}
