//! Classify the built-in fixtures by their torsion type.

use spin7::analysis::classify;
use spin7::fields::{default_conformal, default_perturbed, fixture_flat, sample_points};

fn main() {
    let pts = sample_points(7, 16);
    for (name, fixture) in [
        ("flat", fixture_flat()),
        ("conformal", default_conformal(0.01)),
        ("perturbed", default_perturbed(0.01, 7)),
    ] {
        let r = classify(&fixture, &pts, 1e-7).unwrap();
        println!("{name:<10} {}", r.class);
        println!("    d phi       {:.3e}", r.d_phi_residual);
        println!("    lee         {:.3e}", r.lee_residual);
        println!("    conformal   {:.3e}", r.conformal_residual);
        println!("    d lee       {:.3e}", r.d_lee_residual);
    }
}
