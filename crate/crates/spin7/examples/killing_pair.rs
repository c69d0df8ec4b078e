//! Dilation pairing: a conformally parallel structure solves the common
//! sector Killing spinor equations exactly when the dilation is the right
//! multiple of the conformal potential. The adapted pair passes all four
//! residuals; any other dilation fails loudly.

use spin7::analysis::killing_check;
use spin7::fields::{default_conformal, default_conformal_field, sample_points, ScalarTrigField};

fn main() {
    let f = default_conformal_field(0.01);
    let field = default_conformal(0.01);
    let pts = sample_points(7, 16);

    let adapted = ScalarTrigField {
        terms: f.terms.clone(),
        scale: -(7.0 / 3.0) * f.scale,
    };
    let zero = ScalarTrigField { terms: Vec::new(), scale: 0.0 };

    for (name, psi) in [("adapted", &adapted), ("zero", &zero)] {
        let r = killing_check(&field, psi, &pts, 1e-6).unwrap();
        println!(
            "{name:<8} {}",
            if r.accepted { "accepted" } else { "rejected" }
        );
        println!("    spinor   {:.3e}", r.spinor_residual);
        println!("    lee      {:.3e}", r.lee_residual);
        println!("    torsion  {:.3e}", r.torsion_residual);
        println!("    scalar   {:.3e}", r.scalar_residual);
    }
}
