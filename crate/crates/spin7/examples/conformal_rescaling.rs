//! Conformal change of a structure: the Lee form picks up four gradients
//! and the torsion transforms with a sharp correction term. Checked over a
//! flat base and over an already curved one.

use spin7::analysis::conformal_check;
use spin7::fields::{
    default_conformal_field, default_perturbed, fixture_flat, sample_points, structure_jet,
    ScaledCoframe,
};

fn main() {
    let f = default_conformal_field(0.01);
    let pts = sample_points(7, 16);

    for (name, base) in [("flat", fixture_flat()), ("perturbed", default_perturbed(0.01, 7))] {
        let r = conformal_check(&base, &f, &pts).unwrap();
        println!("base {name:<10} lee law {:.3e}   torsion law {:.3e}", r.lee_residual, r.torsion_residual);
    }

    // The rescaled structure over a flat base is conformally parallel, so
    // its torsion is pure Lee part.
    let flat = fixture_flat();
    let scaled = ScaledCoframe { base: &flat, factor: &f };
    let jet = structure_jet(&scaled, &pts[1]).unwrap();
    println!();
    println!("|theta|  {:.6}", jet.theta_frame.norm());
    println!("|t|      {:.6}", jet.torsion_frame.norm());
    println!("ratio^2  {:.6}  (want 7/6 in the full norm)", jet.torsion_frame.norm2_full() / jet.theta_frame.norm2_full());
}
