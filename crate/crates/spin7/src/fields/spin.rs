//! Spinor transport for the Levi-Civita connection of a coframe field.
//!
//! The distinguished spinor has constant components in the orthonormal
//! frame, so its covariant derivative is pure connection action:
//!
//! ```text
//! nabla_{X_c} phi = (1/4) sum_{a,b} omega_ab(X_c) gamma_a gamma_b phi
//! ```
//!
//! with connection 1-forms `omega_ab(d_i) = g(nabla_{d_i} X_a, X_b)` for the
//! orthonormal frame X_a dual to the coframe. The Dirac operator and the
//! spinor Laplacian
//!
//! ```text
//! lap phi = - sum_c [ X_c(S_c) phi + S_c S_c phi - S(nabla_{X_c} X_c) phi ]
//! ```
//!
//! (S_c the local connection endomorphism along X_c) follow from the same
//! data; the Jet1 connection coefficients supply the derivative X_c(S_c).

use crate::clifford::{clifford_vector, fundamental_spinor, gamma_table, Spinor};
use crate::jet::Jet1;
use crate::scalar::{Differentiable, Ring};

use super::StructureJet;

/// omega[i][a][b] as first-order jets, plus everything derived from it at
/// the base point.
pub struct SpinData {
    /// Covariant derivatives of the distinguished spinor along the frame.
    pub nabla_spinor: [Spinor; 8],
    /// Dirac operator applied to the distinguished spinor.
    pub dirac: Spinor,
    /// Spinor Laplacian of the distinguished spinor.
    pub laplacian: Spinor,
    /// Largest violation of omega_ab = -omega_ba; roundoff-level always.
    pub omega_antisym_residual: f64,
}

pub fn spin_data(jet: &StructureJet) -> SpinData {
    let phi_s = fundamental_spinor().expect("distinguished spinor");
    let gammas = gamma_table();
    let gamma = &jet.christoffel;
    let e1 = crate::jet::mat_truncate(&jet.e);
    let e_inv1 = crate::jet::mat_truncate(&jet.e_inv);

    // omega[i][a][b] = sum_k E_bk ( d_i X_a^k + Gamma^k_im X_a^m )
    let mut omega = Box::new([[[Jet1::ZERO; 8]; 8]; 8]);
    for i in 0..8 {
        for a in 0..8 {
            for b in 0..8 {
                let mut acc = Jet1::ZERO;
                for k in 0..8 {
                    let mut cov = jet.e_inv[k][a].partial(i);
                    for m in 0..8 {
                        cov = cov + gamma[k][i][m] * e_inv1[m][a];
                    }
                    acc = acc + e1[b][k] * cov;
                }
                omega[i][a][b] = acc;
            }
        }
    }
    let mut omega_antisym_residual: f64 = 0.0;
    for i in 0..8 {
        for a in 0..8 {
            for b in 0..8 {
                omega_antisym_residual =
                    omega_antisym_residual.max((omega[i][a][b].v + omega[i][b][a].v).abs());
            }
        }
    }

    // pull back along the frame: omx[c][a][b] = omega_ab(X_c)
    let mut omx = Box::new([[[Jet1::ZERO; 8]; 8]; 8]);
    for c in 0..8 {
        for a in 0..8 {
            for b in 0..8 {
                let mut acc = Jet1::ZERO;
                for i in 0..8 {
                    acc = acc + e_inv1[i][c] * omega[i][a][b];
                }
                omx[c][a][b] = acc;
            }
        }
    }

    let connection_action = |coeff: &dyn Fn(usize, usize) -> f64, s: &Spinor| -> Spinor {
        let mut out = Spinor::zero();
        for a in 0..8 {
            for b in 0..8 {
                let w = coeff(a, b);
                if w != 0.0 {
                    out = out.add(&gammas.apply_pair(a, b, s).scale(w));
                }
            }
        }
        out.scale(0.25)
    };

    let mut nabla_spinor = [Spinor::zero(); 8];
    for c in 0..8 {
        nabla_spinor[c] = connection_action(&|a, b| omx[c][a][b].v, &phi_s);
    }

    let mut dirac = Spinor::zero();
    for c in 0..8 {
        let mut ec = [0.0; 8];
        ec[c] = 1.0;
        dirac = dirac.add(&clifford_vector(&ec, &nabla_spinor[c]));
    }

    // X_c(S_c) phi: differentiate the connection coefficients along X_c
    let mut laplacian = Spinor::zero();
    for c in 0..8 {
        let xc_of_sc = connection_action(
            &|a, b| {
                (0..8)
                    .map(|j| jet.e_inv0[j][c] * omx[c][a][b].partial(j))
                    .sum()
            },
            &phi_s,
        );
        let sc_sc = connection_action(&|a, b| omx[c][a][b].v, &nabla_spinor[c]);
        // nabla_{X_c} X_c in coordinates
        let mut v = [0.0; 8];
        for k in 0..8 {
            let mut acc = 0.0;
            for i in 0..8 {
                let mut cov = jet.e_inv[k][c].partial(i).v;
                for m in 0..8 {
                    cov += gamma[k][i][m].v * jet.e_inv0[m][c];
                }
                acc += jet.e_inv0[i][c] * cov;
            }
            v[k] = acc;
        }
        // contract the coordinate components with the connection form
        let s_v = connection_action(
            &|a, b| {
                (0..8)
                    .map(|i| v[i] * omega[i][a][b].v)
                    .sum()
            },
            &phi_s,
        );
        laplacian = laplacian.sub(&xc_of_sc.add(&sc_sc).sub(&s_v));
    }

    SpinData {
        nabla_spinor,
        dirac,
        laplacian,
        omega_antisym_residual,
    }
}
