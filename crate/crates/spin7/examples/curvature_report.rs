//! Curvature of a perturbed structure at a sample point: scalar curvature
//! along both connections, the closed scalar formulas, and the Ricci
//! tensor of the characteristic connection along its three routes.

use spin7::analysis::scalar_identity_check;
use spin7::fields::{connection_ricci, default_perturbed, sample_points, structure_jet};

fn main() {
    let fixture = default_perturbed(0.01, 7);
    let x = sample_points(7, 1)[1];

    let jet = structure_jet(&fixture, &x).unwrap();
    println!("point             {x:?}");
    println!("coframe condition {:.6}", jet.condition);
    println!("scal (metric)     {:+.8}", jet.scal);
    println!("scal (torsion)    {:+.8}", jet.scal_torsion);
    println!("|theta|           {:.6}", jet.theta_frame.norm());
    println!("|t|               {:.6}", jet.torsion_frame.norm());

    let s = scalar_identity_check(&jet);
    println!("scalar formulas   metric {:.3e}  torsion {:.3e}", s.metric_residual, s.torsion_residual);
    println!("balanced probe    {:.3e}", s.balanced_probe_residual);

    let r = connection_ricci(&fixture, &x).unwrap();
    println!("ricci formula     {:.3e}", r.formula_residual);
    println!("ricci vs metric   {:.3e}", r.direct_residual);
    println!("ricci antisym     {:.3e}", r.antisymmetry_residual);
    println!("ricci reassembly  {:.3e}", r.metric_residual);
    println!("scal trace        {:.3e}", r.scal_residual);
}
