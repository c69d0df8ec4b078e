//! Split forms into their irreducible pieces under the structure group.
//!
//! Degree 2 splits as 7 + 21, degree 3 as 8 + 48, degree 4 as
//! 1 + 7 + 27 + 35. The pieces are orthogonal, so the squared norms add
//! up to the squared norm of the input.

use spin7::algebra::{decompose, fundamental_form};
use spin7::exterior::KForm;

fn show(label: &str, a: &KForm) {
    let parts = decompose(a).unwrap();
    println!("{label} (degree {}, |a|^2 = {:.6}):", a.degree(), a.norm2());
    for c in &parts.parts {
        println!("  part {:<2}  |.|^2 = {:.6}", c.dim, c.form.norm2());
    }
    println!("  reconstruction {:.3e}", parts.reconstruction_residual(a));
}

fn main() {
    show("e0 ^ e1", &KForm::monomial(&[0, 1], 1.0));
    show("e0 ^ e1 ^ e2", &KForm::monomial(&[0, 1, 2], 1.0));
    // The fundamental form spans the 1-dimensional piece of degree 4.
    show("phi", &fundamental_form());
}
