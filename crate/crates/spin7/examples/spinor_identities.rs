//! The distinguished spinor under the characteristic connection.
//!
//! phi is parallel, its metric covariant derivative is Clifford action by
//! the torsion, and both Dirac operators reduce to the Lee form. The
//! curvature identities tie the torsion action back to the Ricci tensor.

use spin7::analysis::sl_identity_check;
use spin7::fields::{default_conformal, dirac_identities, sample_points, structure_jet};

fn main() {
    let fixture = default_conformal(0.01);
    for x in sample_points(5, 3).iter().skip(1) {
        let d = dirac_identities(&fixture, x).unwrap();
        let jet = structure_jet(&fixture, x).unwrap();
        let s = sl_identity_check(&jet).unwrap();
        println!("point {:.3?}", x);
        println!("  covariant derivative  {:.3e}", d.parallel_residual);
        println!("  dirac vs lee          {:.3e}", d.dirac_lee_residual);
        println!("  dirac vs torsion      {:.3e}", d.dirac_torsion_residual);
        println!("  torsion acts as lee   {:.3e}", d.torsion_lee_residual);
        println!("  curvature action      {:.3e}", s.first_residual);
        println!("  direction action      {:.3e}", s.second_residual);
        println!("  laplacian             {:.3e}", s.laplace_residual);
        println!("  norm pairing          {:.3e}", s.pairing_residual);
    }
}
