//! Christoffel symbols and curvature tensors from metric jets.
//!
//! Index conventions, fixed once for the whole crate:
//!
//! ```text
//! Gamma^l_ij  = (1/2) g^lk (d_i g_jk + d_j g_ik - d_k g_ij)
//! R^l_ijk     = d_i Gamma^l_jk - d_j Gamma^l_ik
//!               + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
//! R_ijkm      = R^l_ijk g_lm
//! Ric_jk      = g^il R_ijkl
//! ```
//!
//! The same recursion applied to `Gamma + (1/2) g^lk T_ijk` yields the
//! curvature of the metric connection with totally skew torsion T.

use crate::jet::{Jet1, Jet2, Mat8};
use crate::scalar::{Differentiable, Ring};

/// gamma[l][i][j], one jet order below the metric.
pub type Christoffel = [[[Jet1; 8]; 8]; 8];

/// Lowered curvature values r[i][j][k][m].
pub type Riemann = [[[[f64; 8]; 8]; 8]; 8];

pub fn christoffel(g: &Mat8<Jet2>, g_inv: &Mat8<Jet2>) -> Box<Christoffel> {
    let g_inv1: Mat8<Jet1> = crate::jet::mat_truncate(g_inv);
    let mut dg = [[[Jet1::ZERO; 8]; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                dg[i][j][k] = g[j][k].partial(i);
            }
        }
    }
    let mut gamma = Box::new([[[Jet1::ZERO; 8]; 8]; 8]);
    for l in 0..8 {
        for i in 0..8 {
            for j in 0..8 {
                let mut acc = Jet1::ZERO;
                for k in 0..8 {
                    acc = acc + g_inv1[l][k] * (dg[i][j][k] + dg[j][i][k] - dg[k][i][j]);
                }
                gamma[l][i][j] = acc.scale(0.5);
            }
        }
    }
    gamma
}

/// Curvature data of a connection given by (possibly torsion-carrying)
/// Christoffel symbols, lowered and contracted with the supplied metric.
pub struct CurvatureData {
    pub riemann: Box<Riemann>,
    /// ricci[j][k] in coordinate indices.
    pub ricci: [[f64; 8]; 8],
    pub scal: f64,
    /// max |R_ijkl + R_jikl|; the skew pair symmetry holds for any metric
    /// connection.
    pub antisym_residual: f64,
    /// max of the first Bianchi sum; zero only for the torsion-free
    /// connection.
    pub bianchi_residual: f64,
}

pub fn curvature(gamma: &Christoffel, g0: &[[f64; 8]; 8], g_inv0: &[[f64; 8]; 8]) -> CurvatureData {
    let mut upper = [[[[0.0f64; 8]; 8]; 8]; 8];
    for l in 0..8 {
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let mut v = gamma[l][j][k].partial(i) - gamma[l][i][k].partial(j);
                    for m in 0..8 {
                        v += gamma[l][i][m].v * gamma[m][j][k].v
                            - gamma[l][j][m].v * gamma[m][i][k].v;
                    }
                    upper[l][i][j][k] = v;
                }
            }
        }
    }
    let mut riemann = Box::new([[[[0.0f64; 8]; 8]; 8]; 8]);
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                for m in 0..8 {
                    let mut v = 0.0;
                    for l in 0..8 {
                        v += upper[l][i][j][k] * g0[l][m];
                    }
                    riemann[i][j][k][m] = v;
                }
            }
        }
    }
    let mut ricci = [[0.0; 8]; 8];
    for j in 0..8 {
        for k in 0..8 {
            let mut v = 0.0;
            for i in 0..8 {
                for l in 0..8 {
                    v += g_inv0[i][l] * riemann[i][j][k][l];
                }
            }
            ricci[j][k] = v;
        }
    }
    let mut scal = 0.0;
    for j in 0..8 {
        for k in 0..8 {
            scal += g_inv0[j][k] * ricci[j][k];
        }
    }
    let mut antisym_residual: f64 = 0.0;
    let mut bianchi_residual: f64 = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                for m in 0..8 {
                    antisym_residual = antisym_residual
                        .max((riemann[i][j][k][m] + riemann[j][i][k][m]).abs());
                    bianchi_residual = bianchi_residual.max(
                        (riemann[i][j][k][m] + riemann[j][k][i][m] + riemann[k][i][j][m]).abs(),
                    );
                }
            }
        }
    }
    CurvatureData {
        riemann,
        ricci,
        scal,
        antisym_residual,
        bianchi_residual,
    }
}

/// Christoffel symbols of the metric connection with skew torsion t:
/// `Gamma^l_ij + (1/2) g^lk t_ijk`, with t given by its full coordinate
/// components as jets.
pub fn torsion_christoffel(
    gamma: &Christoffel,
    g_inv: &Mat8<Jet2>,
    t: &crate::exterior::Form<Jet1>,
) -> Box<Christoffel> {
    let g_inv1: Mat8<Jet1> = crate::jet::mat_truncate(g_inv);
    let mut out = Box::new(*gamma);
    for i in 0..8 {
        for j in 0..8 {
            let mut tij = [Jet1::ZERO; 8];
            for k in 0..8 {
                tij[k] = t.component(&[i, j, k]);
            }
            for l in 0..8 {
                let mut corr = Jet1::ZERO;
                for k in 0..8 {
                    corr = corr + g_inv1[l][k] * tij[k];
                }
                out[l][i][j] = out[l][i][j] + corr.scale(0.5);
            }
        }
    }
    out
}
