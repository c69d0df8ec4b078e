use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin7::algebra::{
    constants_report, cross_product, decompose, fundamental_form, lee_form, lee_from_torsion,
    nabla_phi_formula, spin7_tables, torsion_closed_form, torsion_linear_solve,
};
use spin7::exterior::{masks, KForm};
use spin7::Vector8;

fn random_form(rng: &mut ChaCha8Rng, degree: usize) -> KForm {
    let coeffs = (0..masks(degree).len())
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    KForm::from_coeffs(degree, coeffs)
}

fn random_vector(rng: &mut ChaCha8Rng) -> Vector8 {
    std::array::from_fn(|_| rng.gen_range(-1.0..1.0))
}

fn orthonormal_triple(rng: &mut ChaCha8Rng) -> [Vector8; 3] {
    loop {
        let mut basis: Vec<Vector8> = Vec::new();
        'cand: while basis.len() < 3 {
            let mut v = random_vector(rng);
            for b in &basis {
                let p: f64 = (0..8).map(|i| v[i] * b[i]).sum();
                for i in 0..8 {
                    v[i] -= p * b[i];
                }
            }
            let n: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if n < 1e-3 {
                break 'cand;
            }
            for c in &mut v {
                *c /= n;
            }
            basis.push(v);
        }
        if basis.len() == 3 {
            return [basis[0], basis[1], basis[2]];
        }
    }
}

#[test]
fn projectors_are_idempotent_orthogonal_and_have_the_stated_traces() {
    let tables = spin7_tables();
    let split: [(usize, &[usize]); 3] = [(2, &[7, 21]), (3, &[8, 48]), (4, &[1, 7, 27, 35])];
    for (degree, dims) in split {
        let total: usize = dims.iter().sum();
        assert_eq!(total, masks(degree).len());
        for (i, &di) in dims.iter().enumerate() {
            let p = tables.projector(degree, di);
            assert!((p.trace() - di as f64).abs() < 1e-9, "trace of {degree}/{di}");
            assert!(((p * p) - p).abs().max() < 1e-9, "idempotent {degree}/{di}");
            assert!((p.transpose() - p).abs().max() < 1e-9, "symmetric {degree}/{di}");
            for &dj in &dims[i + 1..] {
                let q = tables.projector(degree, dj);
                assert!((p * q).abs().max() < 1e-9, "orthogonal {degree}: {di}x{dj}");
            }
        }
    }
}

#[test]
fn decompose_returns_fixed_points_of_the_projectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let tables = spin7_tables();
    let split: [(usize, &[usize]); 3] = [(2, &[7, 21]), (3, &[8, 48]), (4, &[1, 7, 27, 35])];
    for (degree, dims) in split {
        for _ in 0..8 {
            let a = random_form(&mut rng, degree);
            let parts = decompose(&a).expect("supported degree");
            assert!(parts.reconstruction_residual(&a) < 1e-12);
            assert!(parts.pythagoras_residual(&a) < 1e-12);
            for &di in dims {
                let fi = parts.part(di).expect("dimension present");
                assert!(tables.project(fi, di).sub(fi).max_abs() < 1e-10);
                for &dj in dims {
                    if dj != di {
                        assert!(tables.project(fi, dj).max_abs() < 1e-10);
                    }
                }
            }
        }
    }
    for degree in [0usize, 1, 5, 6, 7, 8] {
        let a = KForm::zero(degree);
        assert!(decompose(&a).is_err(), "degree {degree} must be rejected");
    }
}

#[test]
fn cross_product_agrees_with_the_fundamental_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let phi = fundamental_form();
    for _ in 0..50 {
        let [x, y, z] = orthonormal_triple(&mut rng);
        let p = cross_product(&x, &y, &z);
        let norm: f64 = p.iter().map(|c| c * c).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-10, "unit length on orthonormal triples");
        for v in [&x, &y, &z] {
            let dot: f64 = (0..8).map(|i| p[i] * v[i]).sum();
            assert!(dot.abs() < 1e-10, "orthogonal to its arguments");
        }
        let t = random_vector(&mut rng);
        let dot: f64 = (0..8).map(|i| p[i] * t[i]).sum();
        assert!((dot - phi.apply(&[x, y, z, t])).abs() < 1e-10);
        let swapped = cross_product(&y, &x, &z);
        for i in 0..8 {
            assert!((p[i] + swapped[i]).abs() < 1e-12, "antisymmetric in x, y");
        }
    }
}

#[test]
fn torsion_routes_agree_on_a_hundred_random_codifferentials() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let tables = spin7_tables();
    assert_eq!(tables.torsion_rank(), 56);
    let op = tables.torsion_operator();
    for _ in 0..100 {
        let delta_phi = random_form(&mut rng, 3);
        let closed = torsion_closed_form(&delta_phi).unwrap();
        let solved = torsion_linear_solve(&delta_phi).unwrap();
        assert!(closed.sub(&solved).max_abs() < 1e-11);

        let t_vec = DVector::from_column_slice(closed.coeffs());
        let image = op * t_vec;
        for (i, c) in delta_phi.coeffs().iter().enumerate() {
            assert!((image[i] - 2.0 * c).abs() < 1e-11, "contraction gives 2 delta_phi");
        }

        let from_delta = lee_form(&delta_phi).unwrap();
        let from_torsion = lee_from_torsion(&closed).unwrap();
        assert!(from_delta.sub(&from_torsion).max_abs() < 1e-11);
    }
}

/// Second route to the covariant derivative: the torsion acts on each index
/// of phi through the endomorphism `L(a)[r] = sum_m t(e_a, e_m, e_r) e^m`,
/// and twice the derivative is the induced derivation of phi.
fn derivative_by_derivation(t: &KForm, a: usize) -> KForm {
    let phi = fundamental_form();
    let mut basis = [[0.0f64; 8]; 8];
    for (i, e) in basis.iter_mut().enumerate() {
        e[i] = 1.0;
    }
    let images: [KForm; 8] = std::array::from_fn(|r| {
        let coeffs = (0..8)
            .map(|m| t.apply(&[basis[a], basis[m], basis[r]]))
            .collect();
        KForm::from_coeffs(1, coeffs)
    });
    phi.derivation(&images).scale(0.5)
}

#[test]
fn derivative_formula_matches_the_torsion_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut basis = [[0.0f64; 8]; 8];
    for (i, e) in basis.iter_mut().enumerate() {
        e[i] = 1.0;
    }
    for _ in 0..20 {
        let delta_phi = random_form(&mut rng, 3);
        let t = torsion_closed_form(&delta_phi).unwrap();
        for a in 0..8 {
            let derived = derivative_by_derivation(&t, a);
            for _ in 0..4 {
                let args: [Vector8; 4] = std::array::from_fn(|_| random_vector(&mut rng));
                let direct = nabla_phi_formula(
                    &delta_phi, &basis[a], &args[0], &args[1], &args[2], &args[3],
                )
                .unwrap();
                assert!((direct - derived.apply(&args)).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn derivative_formula_is_linear_in_the_codifferential() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..20 {
        let d1 = random_form(&mut rng, 3);
        let d2 = random_form(&mut rng, 3);
        let (alpha, beta) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let mix = d1.scale(alpha).add(&d2.scale(beta));
        let x = random_vector(&mut rng);
        let args: [Vector8; 4] = std::array::from_fn(|_| random_vector(&mut rng));
        let whole =
            nabla_phi_formula(&mix, &x, &args[0], &args[1], &args[2], &args[3]).unwrap();
        let first =
            nabla_phi_formula(&d1, &x, &args[0], &args[1], &args[2], &args[3]).unwrap();
        let second =
            nabla_phi_formula(&d2, &x, &args[0], &args[1], &args[2], &args[3]).unwrap();
        assert!((whole - alpha * first - beta * second).abs() < 1e-10);
    }
}

#[test]
fn corrupted_fundamental_forms_fail_the_constants_report() {
    let good = constants_report(&fundamental_form()).unwrap();
    assert!(good.pass(1e-9), "the reference form passes: {}", good.worst());

    let mut flipped = fundamental_form();
    *flipped.coeff_mut(0b1111_0000) = -1.0;
    let report = constants_report(&flipped).unwrap();
    assert!(report.worst() > 0.5, "sign flip must be loud: {}", report.worst());
    assert!(!report.pass(1e-6));

    let scaled = fundamental_form().scale(1.1);
    let report = constants_report(&scaled).unwrap();
    assert!(report.worst() > 0.5, "rescaling must be loud: {}", report.worst());

    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let noisy = fundamental_form().add(&random_form(&mut rng, 4).scale(0.3));
    let report = constants_report(&noisy).unwrap();
    assert!(!report.pass(1e-6), "generic noise must fail");
}
