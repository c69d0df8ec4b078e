use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin7::algebra::{fundamental_form, spin7_tables};
use spin7::clifford::{
    clifford_form, clifford_vector, even_action_on_positive, fundamental_spinor, gamma_table,
    Spinor,
};
use spin7::exterior::{hodge_star, masks, KForm};

fn random_spinor(rng: &mut ChaCha8Rng) -> Spinor {
    let mut s = Spinor::zero();
    for v in s.0.iter_mut() {
        *v = rng.gen_range(-1.0..1.0);
    }
    s
}

fn random_form(rng: &mut ChaCha8Rng, degree: usize) -> KForm {
    let mut a = KForm::zero(degree);
    for c in a.coeffs_mut() {
        *c = rng.gen_range(-1.0..1.0);
    }
    a
}

fn bits(mask: u8) -> Vec<usize> {
    (0..8).filter(|i| mask & (1 << i) != 0).collect()
}

fn permutations(idx: &[usize]) -> Vec<(Vec<usize>, f64)> {
    if idx.len() <= 1 {
        return vec![(idx.to_vec(), 1.0)];
    }
    let mut out = Vec::new();
    for (pos, &head) in idx.iter().enumerate() {
        let mut rest = idx.to_vec();
        rest.remove(pos);
        let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
        for (tail, s) in permutations(&rest) {
            let mut p = vec![head];
            p.extend(tail);
            out.push((p, sign * s));
        }
    }
    out
}

/// Antisymmetrized product of gamma matrices, averaged over all index
/// orders: the textbook definition of the Clifford action of a monomial.
fn oracle_monomial(indices: &[usize], s: &Spinor) -> Spinor {
    let tables = gamma_table();
    let perms = permutations(indices);
    let norm = 1.0 / perms.len() as f64;
    let mut acc = Spinor::zero();
    for (order, sign) in perms {
        let mut v = *s;
        for &i in order.iter().rev() {
            v = tables.apply_gamma(i, &v);
        }
        acc = acc.add(&v.scale(sign * norm));
    }
    acc
}

#[test]
fn clifford_form_matches_the_antisymmetrization_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for degree in 1..=4 {
        for &mask in masks(degree) {
            let idx = bits(mask);
            let mono = KForm::monomial(&idx, 1.0);
            let s = random_spinor(&mut rng);
            let fast = clifford_form(&mono, &s);
            let slow = oracle_monomial(&idx, &s);
            let d = fast.sub(&slow).norm();
            assert!(d < 1e-13, "degree {degree} mask {mask:#010b}: {d}");
        }
    }
}

#[test]
fn vectors_square_to_minus_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let v: [f64; 8] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let s = random_spinor(&mut rng);
        let vv = clifford_vector(&v, &clifford_vector(&v, &s));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        let d = vv.add(&s.scale(n2)).norm();
        assert!(d < 1e-12, "{d}");
    }
}

#[test]
fn fundamental_form_acts_as_minus_fourteen() {
    let phi = fundamental_form();
    let s = fundamental_spinor().unwrap();
    let d = clifford_form(&phi, &s).add(&s.scale(14.0)).norm();
    assert!(d < 1e-12, "{d}");
}

#[test]
fn even_spectrum_on_positive_spinors() {
    let phi = fundamental_form();
    let m = even_action_on_positive(&phi);
    let mut asym: f64 = 0.0;
    for a in 0..8 {
        for b in 0..8 {
            asym = asym.max((m[a][b] - m[b][a]).abs());
        }
    }
    assert!(asym < 1e-12, "action of a 4-form must be symmetric: {asym}");
    let sym = nalgebra::SMatrix::<f64, 8, 8>::from_fn(|a, b| 0.5 * (m[a][b] + m[b][a]));
    let eig = sym.symmetric_eigen();
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!((ev[0] + 14.0).abs() < 1e-10, "{ev:?}");
    for v in &ev[1..] {
        assert!((v - 2.0).abs() < 1e-10, "{ev:?}");
    }
}

#[test]
fn interior_and_star_bridges_scale_by_seven() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let phi = fundamental_form();
    let s = fundamental_spinor().unwrap();
    for _ in 0..20 {
        let v: [f64; 8] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let vs = clifford_vector(&v, &s).scale(7.0);
        let iv = clifford_form(&phi.interior(&v), &s);
        assert!(iv.sub(&vs).norm() < 1e-12);

        let mut vform = KForm::zero(1);
        vform.coeffs_mut().copy_from_slice(&v);
        let sw = clifford_form(&hodge_star(&vform.wedge(&phi)), &s);
        assert!(sw.sub(&vs).norm() < 1e-12);
    }
}

#[test]
fn twenty_one_part_annihilates_the_fundamental_spinor() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tables = spin7_tables();
    let s = fundamental_spinor().unwrap();
    for _ in 0..20 {
        let a = random_form(&mut rng, 2);
        let lower = tables.project(&a, 21);
        let d = clifford_form(&lower, &s).norm();
        assert!(d < 1e-12, "{d}");
        // while the 7-part keeps full strength
        let upper = tables.project(&a, 7);
        if upper.norm() > 1e-6 {
            assert!(clifford_form(&upper, &s).norm() > 1e-8);
        }
    }
}

#[test]
fn torsion_acts_like_the_lee_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s = fundamental_spinor().unwrap();
    for _ in 0..20 {
        let delta_phi = random_form(&mut rng, 3);
        let theta = spin7::algebra::lee_form(&delta_phi).unwrap();
        let t = spin7::algebra::torsion_closed_form(&delta_phi).unwrap();
        let lhs = clifford_form(&t, &s);
        let rhs = clifford_form(&theta, &s).scale(-7.0 / 6.0);
        assert!(lhs.sub(&rhs).norm() < 1e-12);
    }
}
