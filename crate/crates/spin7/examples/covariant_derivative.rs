//! Two routes to the covariant derivative of phi.
//!
//! Route one evaluates the pointwise formula that expresses
//! (nabla_x phi)(y, z, v, w) through the codifferential and the cross
//! product. Route two first recovers the torsion t and then lets it act on
//! phi as a derivation through L(a)[r] = sum_m t(e_a, e_m, e_r) e^m, which
//! doubles the derivative. Their agreement is what makes the torsion of
//! the characteristic connection unique.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin7::algebra::{fundamental_form, nabla_phi_formula, torsion_closed_form};
use spin7::exterior::{masks, KForm};
use spin7::Vector8;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let coeffs = (0..masks(3).len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let delta_phi = KForm::from_coeffs(3, coeffs);
    let t = torsion_closed_form(&delta_phi).unwrap();
    let phi = fundamental_form();

    let mut basis = [[0.0f64; 8]; 8];
    for (i, e) in basis.iter_mut().enumerate() {
        e[i] = 1.0;
    }

    let mut worst: f64 = 0.0;
    for a in 0..8 {
        let images: [KForm; 8] = std::array::from_fn(|r| {
            let c = (0..8).map(|m| t.apply(&[basis[a], basis[m], basis[r]])).collect();
            KForm::from_coeffs(1, c)
        });
        let derived = phi.derivation(&images).scale(0.5);

        let args: [Vector8; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
        let direct =
            nabla_phi_formula(&delta_phi, &basis[a], &args[0], &args[1], &args[2], &args[3])
                .unwrap();
        let diff = (direct - derived.apply(&args)).abs();
        println!("direction {a}:  formula {direct:+.6}  derivation diff {diff:.3e}");
        worst = worst.max(diff);
    }
    println!("worst disagreement {worst:.3e}");
}
