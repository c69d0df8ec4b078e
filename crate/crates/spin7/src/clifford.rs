//! Real Clifford algebra Cl(8) on 16-component spinors.
//!
//! The gamma matrices are built from the octonion multiplication table:
//! with S = S+ (+) S- and both halves identified with the octonions, a
//! vector v acts by
//!
//! ```text
//! gamma(v) (s+, s-) = ( L(v) s-, -L(conj v) s+ )
//! ```
//!
//! where L is left octonion multiplication. This gives real matrices that
//! are block-off-diagonal for the chirality split (first 8 components S+,
//! last 8 components S-) and satisfy the Riemannian sign convention
//! v.v.s = -|v|^2 s.
//!
//! Forms act through ordered monomials: e_{i1...ik} acts as the operator
//! product gamma_{i1} ... gamma_{ik}. The distinguished unit spinor
//! [`fundamental_spinor`] spans the common kernel in S+ of the Clifford
//! action of the 21-dimensional component of the 2-forms; with this gamma
//! realization it is exactly the first basis spinor, and the fundamental
//! 4-form acts on it with eigenvalue -14.

use crate::algebra;
use crate::exterior::{masks, KForm};
use crate::{Error, Result, Vector8};
use std::sync::OnceLock;

/// Fano-plane triples defining the octonion product: for each (a, b, c),
/// e_a e_b = e_c cyclically, anticommuting within the triple.
const TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 3),
    (1, 4, 5),
    (1, 6, 7),
    (2, 4, 6),
    (2, 7, 5),
    (3, 7, 4),
    (3, 6, 5),
];

/// A 16-component real spinor; components 0..8 span S+, components 8..16
/// span S-. Serialized as a plain 16-element array.
#[derive(Copy, Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Spinor(pub [f64; 16]);

impl Spinor {
    pub fn zero() -> Self {
        Spinor([0.0; 16])
    }

    pub fn basis(i: usize) -> Self {
        let mut s = [0.0; 16];
        s[i] = 1.0;
        Spinor(s)
    }

    pub fn dot(&self, o: &Spinor) -> f64 {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm2(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn add(&self, o: &Spinor) -> Spinor {
        let mut out = *self;
        for i in 0..16 {
            out.0[i] += o.0[i];
        }
        out
    }

    pub fn sub(&self, o: &Spinor) -> Spinor {
        let mut out = *self;
        for i in 0..16 {
            out.0[i] -= o.0[i];
        }
        out
    }

    pub fn scale(&self, c: f64) -> Spinor {
        let mut out = *self;
        for i in 0..16 {
            out.0[i] *= c;
        }
        out
    }

    /// Norm of the S- half; zero for a positive-chirality spinor.
    pub fn negative_part_norm(&self) -> f64 {
        self.0[8..].iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn positive_part_norm(&self) -> f64 {
        self.0[..8].iter().map(|a| a * a).sum::<f64>().sqrt()
    }
}

type Mat16 = [[f64; 16]; 16];

fn mat16_apply(m: &Mat16, s: &Spinor) -> Spinor {
    let mut out = [0.0; 16];
    for (r, row) in m.iter().enumerate() {
        let mut acc = 0.0;
        for c in 0..16 {
            acc += row[c] * s.0[c];
        }
        out[r] = acc;
    }
    Spinor(out)
}

fn mat16_mul(a: &Mat16, b: &Mat16) -> Mat16 {
    let mut out = [[0.0; 16]; 16];
    for i in 0..16 {
        for k in 0..16 {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..16 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// The eight vector gamma matrices and cached pair products.
pub struct GammaTable {
    gamma: [Mat16; 8],
    /// pair[a][b] = gamma_a gamma_b, precomputed for spin connection sums.
    pair: Box<[[Mat16; 8]; 8]>,
}

impl GammaTable {
    fn build() -> GammaTable {
        // octonion structure constants: e_i e_j = sign[i][j] e_{idx[i][j]}
        let mut sign = [[0.0f64; 8]; 8];
        let mut idx = [[0usize; 8]; 8];
        for j in 0..8 {
            sign[0][j] = 1.0;
            idx[0][j] = j;
            sign[j][0] = 1.0;
            idx[j][0] = j;
        }
        for i in 1..8 {
            sign[i][i] = -1.0;
            idx[i][i] = 0;
        }
        for &(a, b, c) in &TRIPLES {
            for &(p, q, r) in &[(a, b, c), (b, c, a), (c, a, b)] {
                sign[p][q] = 1.0;
                idx[p][q] = r;
                sign[q][p] = -1.0;
                idx[q][p] = r;
            }
        }

        // left multiplication matrices L_i with (L_i)[idx[i][j]][j] = sign[i][j]
        let mut lmat = [[[0.0f64; 8]; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                lmat[i][idx[i][j]][j] = sign[i][j];
            }
        }

        let mut gamma = [[[0.0; 16]; 16]; 8];
        for i in 0..8 {
            // top-right block: L(e_i); bottom-left: -L(conj e_i)
            let conj = if i == 0 { 1.0 } else { -1.0 };
            for r in 0..8 {
                for c in 0..8 {
                    gamma[i][r][8 + c] = lmat[i][r][c];
                    gamma[i][8 + r][c] = -conj * lmat[i][r][c];
                }
            }
        }

        let mut pair = Box::new([[[[0.0; 16]; 16]; 8]; 8]);
        for a in 0..8 {
            for b in 0..8 {
                pair[a][b] = mat16_mul(&gamma[a], &gamma[b]);
            }
        }

        GammaTable { gamma, pair }
    }

    pub fn gamma(&self, i: usize) -> &Mat16 {
        &self.gamma[i]
    }

    /// gamma_a gamma_b as one matrix.
    pub fn gamma_pair(&self, a: usize, b: usize) -> &Mat16 {
        &self.pair[a][b]
    }

    pub fn apply_gamma(&self, i: usize, s: &Spinor) -> Spinor {
        mat16_apply(&self.gamma[i], s)
    }

    pub fn apply_pair(&self, a: usize, b: usize, s: &Spinor) -> Spinor {
        mat16_apply(&self.pair[a][b], s)
    }
}

/// The global gamma table, built once.
pub fn gamma_table() -> &'static GammaTable {
    static TABLE: OnceLock<GammaTable> = OnceLock::new();
    TABLE.get_or_init(GammaTable::build)
}

/// Clifford action of a vector: linear, chirality-swapping, v.v.s = -|v|^2 s.
pub fn clifford_vector(v: &Vector8, s: &Spinor) -> Spinor {
    let t = gamma_table();
    let mut out = Spinor::zero();
    for i in 0..8 {
        if v[i] != 0.0 {
            out = out.add(&t.apply_gamma(i, s).scale(v[i]));
        }
    }
    out
}

/// Clifford action of a form: each ordered monomial e_{i1...ik} acts as the
/// operator product gamma_{i1}...gamma_{ik}; degree 0 acts by scalar
/// multiplication.
pub fn clifford_form(a: &KForm, s: &Spinor) -> Spinor {
    let t = gamma_table();
    let mut out = Spinor::zero();
    for (ia, &ma) in masks(a.degree()).iter().enumerate() {
        let c = a.coeffs()[ia];
        if c == 0.0 {
            continue;
        }
        // apply rightmost gamma first
        let mut cur = *s;
        for i in (0..8).rev() {
            if ma & (1 << i) != 0 {
                cur = t.apply_gamma(i, &cur);
            }
        }
        out = out.add(&cur.scale(c));
    }
    out
}

/// Clifford action restricted to S+, as an 8x8 block. Only meaningful for
/// even-degree forms, whose action preserves chirality.
pub fn even_action_on_positive(a: &KForm) -> [[f64; 8]; 8] {
    debug_assert!(a.degree() % 2 == 0);
    let mut block = [[0.0; 8]; 8];
    for c in 0..8 {
        let img = clifford_form(a, &Spinor::basis(c));
        for r in 0..8 {
            block[r][c] = img.0[r];
        }
    }
    block
}

fn compute_fundamental() -> Result<Spinor> {
    // Common kernel in S+ of the Clifford action of the 21-dimensional
    // 2-form component: stack the S+ blocks of a spanning set and take the
    // null space.
    let tables = algebra::spin7_tables();
    let mut rows: Vec<[f64; 8]> = Vec::new();
    for &mask in masks(2) {
        let mut mono = KForm::zero(2);
        *mono.coeff_mut(mask) = 1.0;
        let a21 = tables.project(&mono, 21);
        if a21.norm2() < 1e-24 {
            continue;
        }
        let block = even_action_on_positive(&a21);
        rows.extend_from_slice(&block);
    }
    let nrows = rows.len();
    let mat = nalgebra::DMatrix::from_fn(nrows, 8, |r, c| rows[r][c]);
    let svd = mat.svd(false, true);
    let vt = svd.v_t.as_ref().expect("svd requested v_t");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let dim = svd
        .singular_values
        .iter()
        .filter(|&&s| s < 1e-10 * smax)
        .count();
    if dim != 1 {
        return Err(Error::SpinorKernelDimension(dim));
    }
    // kernel vector: the row of v_t for the smallest singular value
    let mut small_idx = 0;
    let mut small = f64::MAX;
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s < small {
            small = s;
            small_idx = i;
        }
    }
    let mut phi = [0.0; 16];
    for c in 0..8 {
        phi[c] = vt[(small_idx, c)];
    }
    let mut s = Spinor(phi);
    s = s.scale(1.0 / s.norm());
    // sign convention: first nonzero component positive
    let lead = s.0.iter().find(|&&x| x.abs() > 1e-8).copied().unwrap_or(1.0);
    if lead < 0.0 {
        s = s.scale(-1.0);
    }
    Ok(s)
}

/// The unit positive-chirality spinor annihilated by every 2-form in the
/// 21-dimensional component; determined up to sign, fixed so its leading
/// component is positive. With this crate's gamma table it equals the first
/// basis spinor.
pub fn fundamental_spinor() -> Result<Spinor> {
    static PHI: OnceLock<std::result::Result<Spinor, String>> = OnceLock::new();
    PHI.get_or_init(|| compute_fundamental().map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::BadFormData)
}
