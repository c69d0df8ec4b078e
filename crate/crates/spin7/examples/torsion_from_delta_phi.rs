//! Recover the torsion of the characteristic connection from the
//! codifferential of phi, twice: once by the closed formula
//!
//!     t = -delta_phi - (7/6) star(theta ^ phi),   theta = (1/7) star(delta_phi ^ phi)
//!
//! and once by inverting the rank-56 contraction operator. The two answers
//! agree to machine precision for every 3-form input.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin7::algebra::{lee_form, lee_from_torsion, spin7_tables, torsion_closed_form, torsion_linear_solve};
use spin7::exterior::{masks, KForm};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let coeffs = (0..masks(3).len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let delta_phi = KForm::from_coeffs(3, coeffs);

    println!("contraction rank  {}", spin7_tables().torsion_rank());

    let theta = lee_form(&delta_phi).unwrap();
    let closed = torsion_closed_form(&delta_phi).unwrap();
    let solved = torsion_linear_solve(&delta_phi).unwrap();
    println!("|delta_phi|       {:.6}", delta_phi.norm());
    println!("|theta|           {:.6}", theta.norm());
    println!("|t|               {:.6}", closed.norm());
    println!("closed vs solved  {:.3e}", closed.sub(&solved).max_abs());

    // The Lee form can also be read off the torsion itself.
    let back = lee_from_torsion(&closed).unwrap();
    println!("lee roundtrip     {:.3e}", back.sub(&theta).max_abs());
}
