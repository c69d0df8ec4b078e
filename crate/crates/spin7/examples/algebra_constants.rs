//! Print the defining constants of the fundamental 4-form.

use spin7::algebra::{constants_report, fundamental_form, AlgebraConstants};

fn main() {
    let c = constants_report(&fundamental_form()).unwrap();
    println!("|phi|^2            {}  (want 14)", c.norm2);
    println!("star phi - phi     {:.3e}", c.self_dual_residual);
    println!("phi ^ phi / vol    {}  (want 14)", c.wedge_normalization);
    println!(
        "2-form spectrum    3 x{}, -1 x{}  (residual {:.3e})",
        c.eigen_plus3, c.eigen_minus1, c.eigen_residual
    );
    println!("3-form gram        {:.3e}  vs 7 I", c.gram_residual);
    print!("projector traces  ");
    for (t, e) in c.projector_traces.iter().zip(AlgebraConstants::EXPECTED_TRACES) {
        print!(" {t:.0}/{e:.0}");
    }
    println!();
    println!("projector algebra  {:.3e}", c.projector_residual);
    println!("4-form seven rank  {}  (want 7)", c.four_seven_rank);
    println!();
    println!("worst deviation    {:.3e}", c.worst());
}
