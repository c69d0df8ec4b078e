//! The fundamental 4-form on flat 8-space and the linear algebra it induces:
//! the triple cross product, the irreducible splittings of 2-, 3- and
//! 4-forms, the Lee form, and the algebraic torsion formulas.
//!
//! All operators here act on coefficient vectors over the ordered monomial
//! basis. The splittings are realized as explicit projector matrices, built
//! once and cached:
//!
//! * degree 2 = 7 + 21, the eigenspaces (eigenvalues 3 and -1) of
//!   `a -> star(a ^ phi)`;
//! * degree 3 = 8 + 48, where the 8-part is spanned by `star(v ^ phi)` over
//!   1-forms v and the 48-part is the kernel of `b -> star(b ^ phi)`;
//! * degree 4 = 1 + 7 + 27 + 35, refining the self-dual/anti-self-dual
//!   split: the line through phi, a 7-dimensional piece generated by
//!   antisymmetrized products of the degree-3 generators, the self-dual
//!   remainder, and the anti-self-dual half.
//!
//! Torsion enters twice, deliberately: [`torsion_closed_form`] evaluates the
//! closed formula through the Lee form, while [`torsion_linear_solve`]
//! inverts a 56x56 contraction operator. The two must agree to solver
//! precision on every input, which is what the test suite checks.

use crate::exterior::{hodge_star, masks, Form, KForm, BINOM};
use crate::{Error, Result, Vector8};
use nalgebra::{DMatrix, DVector};
use std::sync::OnceLock;

const PHI_TERMS: [([usize; 4], f64); 14] = [
    ([0, 1, 2, 3], 1.0),
    ([0, 1, 4, 5], 1.0),
    ([0, 1, 6, 7], 1.0),
    ([0, 2, 4, 6], 1.0),
    ([0, 2, 5, 7], -1.0),
    ([0, 3, 4, 7], -1.0),
    ([0, 3, 5, 6], -1.0),
    ([4, 5, 6, 7], 1.0),
    ([2, 3, 6, 7], 1.0),
    ([2, 3, 4, 5], 1.0),
    ([1, 3, 5, 7], 1.0),
    ([1, 3, 4, 6], -1.0),
    ([1, 2, 4, 7], -1.0),
    ([1, 2, 5, 6], -1.0),
];

/// The standard fundamental 4-form: self-dual, norm squared 14 over ordered
/// monomials, stabilized by a 21-dimensional subalgebra of so(8).
pub fn fundamental_form() -> KForm {
    let mut phi = Form::zero(4);
    for (idx, c) in &PHI_TERMS {
        phi.add_assign(&Form::monomial(idx, *c));
    }
    phi
}

/// The orientation 8-form e_01234567.
pub fn volume_form() -> KForm {
    Form::monomial(&[0, 1, 2, 3, 4, 5, 6, 7], 1.0)
}

/// An owned fundamental form, for call sites that carry one around.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct FundamentalForm {
    pub phi: KForm,
}

impl FundamentalForm {
    pub fn standard() -> Self {
        FundamentalForm {
            phi: fundamental_form(),
        }
    }
}

pub(crate) fn form_to_vec(a: &KForm) -> DVector<f64> {
    DVector::from_iterator(a.coeffs().len(), a.coeffs().iter().cloned())
}

pub(crate) fn vec_to_form(degree: usize, v: &DVector<f64>) -> KForm {
    assert_eq!(v.len(), BINOM[degree]);
    Form::from_coeffs(degree, v.iter().cloned().collect())
}

fn basis_form(degree: usize, idx: usize) -> KForm {
    let mut f = KForm::zero(degree);
    *f.coeff_mut(masks(degree)[idx]) = 1.0;
    f
}

fn basis_vector(i: usize) -> Vector8 {
    let mut v = [0.0; 8];
    v[i] = 1.0;
    v
}

/// Matrix of `a -> star(a ^ phi)` on 2-forms.
fn two_form_operator(phi: &KForm) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(28, 28);
    for j in 0..28 {
        let col = hodge_star(&basis_form(2, j).wedge(phi));
        for i in 0..28 {
            m[(i, j)] = col.coeffs()[i];
        }
    }
    m
}

/// 56x8 matrix whose columns are star(e_a ^ phi); its Gram matrix is 7 I.
fn three_form_generators(phi: &KForm) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(56, 8);
    for a in 0..8 {
        let col = hodge_star(&basis_form(1, a).wedge(phi));
        for i in 0..56 {
            b[(i, a)] = col.coeffs()[i];
        }
    }
    b
}

/// Matrix of the Hodge star on 4-forms.
fn four_form_star() -> DMatrix<f64> {
    let mut m = DMatrix::zeros(70, 70);
    for j in 0..70 {
        let col = hodge_star(&basis_form(4, j));
        for i in 0..70 {
            m[(i, j)] = col.coeffs()[i];
        }
    }
    m
}

/// 70x28 matrix of antisymmetrized generators of the 7-dimensional piece of
/// the self-dual 4-forms, already projected self-dual and orthogonal to phi.
fn four_seven_generators(phi: &KForm, p_plus: &DMatrix<f64>, p1: &DMatrix<f64>) -> DMatrix<f64> {
    let mut g = DMatrix::zeros(70, 28);
    let mut col = 0;
    for i in 0..8 {
        for j in (i + 1)..8 {
            let gi = basis_form(1, i).wedge(&hodge_star(&basis_form(1, j).wedge(phi)));
            let gj = basis_form(1, j).wedge(&hodge_star(&basis_form(1, i).wedge(phi)));
            let v = form_to_vec(&gi.sub(&gj));
            let v = p_plus * v;
            let v = &v - p1 * &v;
            for r in 0..70 {
                g[(r, col)] = v[r];
            }
            col += 1;
        }
    }
    g
}

/// Matrix of the contraction operator on 3-forms whose eigenvalues are 12 on
/// the 8-part and -2 on the 48-part:
///
/// ```text
/// M(t) = sum_{i != j} (i_j i_i t) ^ (i_j i_i phi)
/// ```
///
/// Half of M(t) evaluated on the torsion reproduces the codifferential of
/// phi, which is why `M t = 2 delta_phi` recovers the torsion.
fn torsion_contraction(phi: &KForm) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(56, 56);
    for jcol in 0..56 {
        let t = basis_form(3, jcol);
        let mut acc = KForm::zero(3);
        for i in 0..8 {
            let ei = basis_vector(i);
            let ti = t.interior(&ei);
            let pi = phi.interior(&ei);
            for j in 0..8 {
                if i == j {
                    continue;
                }
                let ej = basis_vector(j);
                acc.add_assign(&ti.interior(&ej).wedge(&pi.interior(&ej)));
            }
        }
        for r in 0..56 {
            m[(r, jcol)] = acc.coeffs()[r];
        }
    }
    m
}

/// Cached projector matrices onto the irreducible components, plus the
/// torsion contraction operator with its factorization.
pub struct Spin7Tables {
    phi: KForm,
    p2_7: DMatrix<f64>,
    p2_21: DMatrix<f64>,
    p3_8: DMatrix<f64>,
    p3_48: DMatrix<f64>,
    p4_1: DMatrix<f64>,
    p4_7: DMatrix<f64>,
    p4_27: DMatrix<f64>,
    p4_35: DMatrix<f64>,
    torsion_matrix: DMatrix<f64>,
    torsion_lu: nalgebra::linalg::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    torsion_rank: usize,
}

impl Spin7Tables {
    fn build() -> Spin7Tables {
        let phi = fundamental_form();
        let l2 = two_form_operator(&phi);
        let id28 = DMatrix::identity(28, 28);
        let p2_7 = (&l2 + &id28) / 4.0;
        let p2_21 = (&id28 * 3.0 - &l2) / 4.0;

        let b = three_form_generators(&phi);
        let p3_8 = &b * b.transpose() / 7.0;
        let p3_48 = DMatrix::identity(56, 56) - &p3_8;

        let star4 = four_form_star();
        let id70 = DMatrix::identity(70, 70);
        let p4_plus = (&id70 + &star4) / 2.0;
        let p4_35 = (&id70 - &star4) / 2.0;
        let phi_vec = form_to_vec(&phi);
        let p4_1 = &phi_vec * phi_vec.transpose() / 14.0;

        let gens = four_seven_generators(&phi, &p4_plus, &p4_1);
        let svd = gens.svd(true, false);
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > 1e-9 * smax)
            .count();
        assert_eq!(rank, 7, "the antisymmetrized generators must span 7 dims");
        let u = svd.u.as_ref().expect("svd requested u");
        let q = u.columns(0, 7).into_owned();
        let p4_7 = &q * q.transpose();
        let p4_27 = &p4_plus - &p4_1 - &p4_7;

        let torsion_matrix = torsion_contraction(&phi);
        let tsvd = torsion_matrix.clone().svd(false, false);
        let tmax = tsvd.singular_values.iter().cloned().fold(0.0, f64::max);
        let torsion_rank = tsvd
            .singular_values
            .iter()
            .filter(|&&s| s > 1e-9 * tmax)
            .count();
        let torsion_lu = torsion_matrix.clone().lu();

        let tables = Spin7Tables {
            phi,
            p2_7,
            p2_21,
            p3_8,
            p3_48,
            p4_1,
            p4_7,
            p4_27,
            p4_35,
            torsion_matrix,
            torsion_lu,
            torsion_rank,
        };
        tables.check_invariants();
        tables
    }

    /// Construction-time sanity: projectors idempotent, mutually orthogonal,
    /// with the right traces. These hold exactly up to roundoff for the
    /// standard form; failure means the build itself is broken.
    fn check_invariants(&self) {
        let pairs: [(&DMatrix<f64>, f64); 8] = [
            (&self.p2_7, 7.0),
            (&self.p2_21, 21.0),
            (&self.p3_8, 8.0),
            (&self.p3_48, 48.0),
            (&self.p4_1, 1.0),
            (&self.p4_7, 7.0),
            (&self.p4_27, 27.0),
            (&self.p4_35, 35.0),
        ];
        for (p, tr) in pairs {
            assert!((p.trace() - tr).abs() < 1e-8, "projector trace {}", tr);
            let defect = (p * p - p).abs().max();
            assert!(defect < 1e-9, "projector idempotency, trace {}", tr);
        }
        assert!((&self.p2_7 * &self.p2_21).abs().max() < 1e-9);
        assert!((&self.p3_8 * &self.p3_48).abs().max() < 1e-9);
        assert!((&self.p4_7 * &self.p4_27).abs().max() < 1e-9);
        assert!((&self.p4_1 * &self.p4_7).abs().max() < 1e-9);
        assert!((&self.p4_1 * &self.p4_27).abs().max() < 1e-9);
        assert_eq!(self.torsion_rank, 56, "torsion contraction must be regular");
    }

    pub fn phi(&self) -> &KForm {
        &self.phi
    }

    /// Projector matrix for the component of dimension `dim` in the given
    /// degree.
    pub fn projector(&self, degree: usize, dim: usize) -> &DMatrix<f64> {
        match (degree, dim) {
            (2, 7) => &self.p2_7,
            (2, 21) => &self.p2_21,
            (3, 8) => &self.p3_8,
            (3, 48) => &self.p3_48,
            (4, 1) => &self.p4_1,
            (4, 7) => &self.p4_7,
            (4, 27) => &self.p4_27,
            (4, 35) => &self.p4_35,
            (d, n) => panic!("no component of dimension {} in degree {}", n, d),
        }
    }

    /// Project a form onto its component of dimension `dim`. Degree-4 forms
    /// use dims 1, 7, 27, 35; degree 2 uses 7, 21; degree 3 uses 8, 48. The
    /// degree-2 and degree-4 seven-dimensional pieces are told apart by the
    /// form's degree.
    pub fn project(&self, a: &KForm, dim: usize) -> KForm {
        let p = self.projector(a.degree(), dim);
        vec_to_form(a.degree(), &(p * form_to_vec(a)))
    }

    pub fn torsion_operator(&self) -> &DMatrix<f64> {
        &self.torsion_matrix
    }

    pub fn torsion_rank(&self) -> usize {
        self.torsion_rank
    }

    pub(crate) fn torsion_solve(&self, rhs: &DVector<f64>) -> Option<DVector<f64>> {
        self.torsion_lu.solve(rhs)
    }
}

/// The cached tables, built on first use.
pub fn spin7_tables() -> &'static Spin7Tables {
    static TABLES: OnceLock<Spin7Tables> = OnceLock::new();
    TABLES.get_or_init(Spin7Tables::build)
}

/// The triple cross product: the unique vector with
/// `<cross(x,y,z), t> = phi(x, y, z, t)` for all t.
pub fn cross_product(x: &Vector8, y: &Vector8, z: &Vector8) -> Vector8 {
    let w = fundamental_form().interior(x).interior(y).interior(z);
    let mut out = [0.0; 8];
    for i in 0..8 {
        out[i] = w.coeffs()[i];
    }
    out
}

/// One irreducible component of a form.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct Component {
    pub dim: usize,
    pub form: KForm,
}

/// The full splitting of a form of degree 2, 3 or 4.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct IrreducibleComponents {
    pub degree: usize,
    pub parts: Vec<Component>,
}

impl IrreducibleComponents {
    pub fn part(&self, dim: usize) -> Option<&KForm> {
        self.parts.iter().find(|c| c.dim == dim).map(|c| &c.form)
    }

    pub fn sum(&self) -> KForm {
        let mut acc = KForm::zero(self.degree);
        for c in &self.parts {
            acc.add_assign(&c.form);
        }
        acc
    }

    /// Largest coefficient of `a - sum of parts`.
    pub fn reconstruction_residual(&self, a: &KForm) -> f64 {
        a.sub(&self.sum()).max_abs()
    }

    /// `|a|^2 - sum |part|^2|` over ordered monomials; the parts are
    /// mutually orthogonal so this vanishes to roundoff.
    pub fn pythagoras_residual(&self, a: &KForm) -> f64 {
        let parts: f64 = self.parts.iter().map(|c| c.form.norm2()).sum();
        (a.norm2() - parts).abs()
    }
}

/// Split a form of degree 2, 3 or 4 into its irreducible components.
pub fn decompose(a: &KForm) -> Result<IrreducibleComponents> {
    let dims: &[usize] = match a.degree() {
        2 => &[7, 21],
        3 => &[8, 48],
        4 => &[1, 7, 27, 35],
        d => return Err(Error::UnsupportedDegree(d, "decompose")),
    };
    let t = spin7_tables();
    Ok(IrreducibleComponents {
        degree: a.degree(),
        parts: dims
            .iter()
            .map(|&dim| Component {
                dim,
                form: t.project(a, dim),
            })
            .collect(),
    })
}

/// The Lee form of a structure with the given codifferential of phi:
/// `theta = (1/7) star(delta_phi ^ phi)`.
pub fn lee_form(delta_phi: &KForm) -> Result<KForm> {
    if delta_phi.degree() != 3 {
        return Err(Error::UnsupportedDegree(delta_phi.degree(), "lee_form"));
    }
    Ok(hodge_star(&delta_phi.wedge(&fundamental_form())).scale(1.0 / 7.0))
}

/// The Lee form recovered from the torsion: `theta = (6/7) star(phi ^ t)`.
pub fn lee_from_torsion(t: &KForm) -> Result<KForm> {
    if t.degree() != 3 {
        return Err(Error::UnsupportedDegree(t.degree(), "lee_from_torsion"));
    }
    Ok(hodge_star(&fundamental_form().wedge(t)).scale(6.0 / 7.0))
}

/// Torsion of the characteristic connection from the codifferential of phi,
/// by the closed formula `t = -delta_phi - (7/6) star(theta ^ phi)`.
pub fn torsion_closed_form(delta_phi: &KForm) -> Result<KForm> {
    let theta = lee_form(delta_phi)?;
    let correction = hodge_star(&theta.wedge(&fundamental_form())).scale(7.0 / 6.0);
    Ok(delta_phi.neg().sub(&correction))
}

/// Torsion recovered by inverting the 56x56 contraction operator:
/// solves `M t = 2 delta_phi` after checking that M has full rank. Agrees
/// with [`torsion_closed_form`] on every degree-3 input.
pub fn torsion_linear_solve(delta_phi: &KForm) -> Result<KForm> {
    if delta_phi.degree() != 3 {
        return Err(Error::UnsupportedDegree(
            delta_phi.degree(),
            "torsion_linear_solve",
        ));
    }
    let t = spin7_tables();
    if t.torsion_rank() != 56 {
        return Err(Error::TorsionRankDeficient(t.torsion_rank()));
    }
    let rhs = form_to_vec(delta_phi) * 2.0;
    let sol = t
        .torsion_solve(&rhs)
        .ok_or(Error::TorsionRankDeficient(t.torsion_rank()))?;
    Ok(vec_to_form(3, &sol))
}

/// The covariant derivative of phi under the Levi-Civita connection,
/// evaluated pointwise from the codifferential alone:
/// `nabla_phi_formula(delta_phi, x, y, z, v, w) = (nabla_x phi)(y, z, v, w)`.
///
/// Each slot of (y, z, v, w) is replaced in turn by the cross product of the
/// other three; the codifferential contributes through a direct evaluation
/// and the Lee form contributes through a second cross product.
pub fn nabla_phi_formula(
    delta_phi: &KForm,
    x: &Vector8,
    y: &Vector8,
    z: &Vector8,
    v: &Vector8,
    w: &Vector8,
) -> Result<f64> {
    if delta_phi.degree() != 3 {
        return Err(Error::UnsupportedDegree(
            delta_phi.degree(),
            "nabla_phi_formula",
        ));
    }
    let seven_theta = hodge_star(&delta_phi.wedge(&fundamental_form()));
    let slots = [*y, *z, *v, *w];
    let mut val = 0.0;
    for r in 0..4 {
        let others: Vec<Vector8> = (0..4).filter(|&k| k != r).map(|k| slots[k]).collect();
        let p = cross_product(&others[0], &others[1], &others[2]);
        let s = if r % 2 == 0 { 1.0 } else { -1.0 };
        val += 0.5 * s * delta_phi.apply(&[*x, slots[r], p]);
        let q = cross_product(x, &slots[r], &p);
        let pairing: f64 = (0..8).map(|i| seven_theta.coeffs()[i] * q[i]).sum();
        val -= s * pairing / 12.0;
    }
    Ok(val)
}

/// Diagnostics of the defining constants of a 4-form claimed to be a
/// fundamental form. All residuals vanish (and the counts are 7/21, ranks
/// as listed) exactly when the form is admissible; any corruption shows up
/// as order-one residuals.
#[derive(Clone, Debug, serde::Serialize)]
pub struct AlgebraConstants {
    /// Squared norm over ordered monomials; must be 14.
    pub norm2: f64,
    /// Largest coefficient of star(phi) - phi; must vanish.
    pub self_dual_residual: f64,
    /// Coefficient of phi ^ phi against the volume form; must be 14.
    pub wedge_normalization: f64,
    /// Multiplicity of eigenvalue 3 of the 2-form operator; must be 7.
    pub eigen_plus3: usize,
    /// Multiplicity of eigenvalue -1; must be 21.
    pub eigen_minus1: usize,
    /// Largest distance of the 2-form operator spectrum from {3, -1}.
    pub eigen_residual: f64,
    /// Largest entry of B^T B - 7 I for the degree-3 generator matrix.
    pub gram_residual: f64,
    /// Traces of the eight projectors; must be 7, 21, 8, 48, 1, 7, 27, 35.
    pub projector_traces: [f64; 8],
    /// Largest idempotency or orthogonality defect among the projectors.
    pub projector_residual: f64,
    /// Rank of the antisymmetrized degree-4 generators; must be 7.
    pub four_seven_rank: usize,
}

impl AlgebraConstants {
    pub const EXPECTED_TRACES: [f64; 8] = [7.0, 21.0, 8.0, 48.0, 1.0, 7.0, 27.0, 35.0];

    /// Worst deviation across all the constants, counting multiplicity and
    /// rank mismatches as their absolute deviation.
    pub fn worst(&self) -> f64 {
        let mut w: f64 = 0.0;
        w = w.max((self.norm2 - 14.0).abs());
        w = w.max(self.self_dual_residual);
        w = w.max((self.wedge_normalization - 14.0).abs());
        w = w.max((self.eigen_plus3 as f64 - 7.0).abs());
        w = w.max((self.eigen_minus1 as f64 - 21.0).abs());
        w = w.max(self.eigen_residual);
        w = w.max(self.gram_residual);
        for (t, e) in self.projector_traces.iter().zip(Self::EXPECTED_TRACES) {
            w = w.max((t - e).abs());
        }
        w = w.max(self.projector_residual);
        w = w.max((self.four_seven_rank as f64 - 7.0).abs());
        w
    }

    pub fn pass(&self, tol: f64) -> bool {
        self.worst() <= tol
    }
}

/// Compute [`AlgebraConstants`] for an arbitrary 4-form. Used with the
/// standard form this reproduces the defining constants; used with a
/// corrupted form it quantifies how the constants fail.
pub fn constants_report(phi: &KForm) -> Result<AlgebraConstants> {
    if phi.degree() != 4 {
        return Err(Error::UnsupportedDegree(phi.degree(), "constants_report"));
    }
    let norm2 = phi.norm2();
    let self_dual_residual = hodge_star(phi).sub(phi).max_abs();
    let wedge_normalization = phi.wedge(phi).coeffs()[0];

    let l2 = two_form_operator(phi);
    let id28 = DMatrix::identity(28, 28);
    let p2_7 = (&l2 + &id28) / 4.0;
    let p2_21 = (&id28 * 3.0 - &l2) / 4.0;
    // the bilinear form of the operator is a ^ b ^ phi, symmetric for any
    // 4-form, so any asymmetry is roundoff; fold it into the residual and
    // diagonalize the symmetrized matrix
    let asym = (&l2 - l2.transpose()).abs().max();
    let eigs = ((&l2 + l2.transpose()) / 2.0).symmetric_eigen().eigenvalues;
    let mut eigen_plus3 = 0;
    let mut eigen_minus1 = 0;
    let mut eigen_residual: f64 = asym;
    for &e in eigs.iter() {
        let d3 = (e - 3.0).abs();
        let d1 = (e + 1.0).abs();
        if d3 < d1 {
            eigen_plus3 += 1;
        } else {
            eigen_minus1 += 1;
        }
        eigen_residual = eigen_residual.max(d3.min(d1));
    }

    let b = three_form_generators(phi);
    let gram = b.transpose() * &b;
    let gram_residual = (&gram - DMatrix::identity(8, 8) * 7.0).abs().max();
    let p3_8 = &b * b.transpose() / 7.0;
    let p3_48 = DMatrix::identity(56, 56) - &p3_8;

    let star4 = four_form_star();
    let id70 = DMatrix::identity(70, 70);
    let p4_plus = (&id70 + &star4) / 2.0;
    let p4_35 = (&id70 - &star4) / 2.0;
    let phi_vec = form_to_vec(phi);
    let p4_1 = &phi_vec * phi_vec.transpose() / norm2.max(1e-300);

    let gens = four_seven_generators(phi, &p4_plus, &p4_1);
    let svd = gens.svd(true, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let four_seven_rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > 1e-9 * smax)
        .count();
    let u = svd.u.as_ref().expect("svd requested u");
    let take = four_seven_rank.min(70);
    let q = u.columns(0, take).into_owned();
    let p4_7 = &q * q.transpose();
    let p4_27 = &p4_plus - &p4_1 - &p4_7;

    let projectors = [
        &p2_7, &p2_21, &p3_8, &p3_48, &p4_1, &p4_7, &p4_27, &p4_35,
    ];
    let mut projector_traces = [0.0; 8];
    let mut projector_residual: f64 = 0.0;
    for (k, p) in projectors.iter().enumerate() {
        projector_traces[k] = p.trace();
        projector_residual = projector_residual.max((*p * *p - *p).abs().max());
    }
    projector_residual = projector_residual.max((&p2_7 * &p2_21).abs().max());
    projector_residual = projector_residual.max((&p3_8 * &p3_48).abs().max());
    projector_residual = projector_residual.max((&p4_1 * &p4_7).abs().max());
    projector_residual = projector_residual.max((&p4_7 * &p4_27).abs().max());
    projector_residual = projector_residual.max((&p4_1 * &p4_27).abs().max());

    Ok(AlgebraConstants {
        norm2,
        self_dual_residual,
        wedge_normalization,
        eigen_plus3,
        eigen_minus1,
        eigen_residual,
        gram_residual,
        projector_traces,
        projector_residual,
        four_seven_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::inner;

    #[test]
    fn phi_constants() {
        let phi = fundamental_form();
        assert_eq!(phi.norm2(), 14.0);
        assert_eq!(hodge_star(&phi).sub(&phi).max_abs(), 0.0);
        assert_eq!(phi.wedge(&phi).coeffs()[0], 14.0);
    }

    #[test]
    fn cross_product_pairing() {
        let x = [1.0, 0.5, -0.25, 0.0, 2.0, 0.0, 0.0, -1.0];
        let y = [0.0, 1.0, 0.0, 3.0, 0.0, -0.5, 0.25, 0.0];
        let z = [0.5, 0.0, 1.0, 0.0, -1.0, 0.0, 2.0, 0.5];
        let t = [0.25, -0.75, 0.0, 1.0, 0.0, 2.0, 0.0, -0.5];
        let p = cross_product(&x, &y, &z);
        let lhs: f64 = p.iter().zip(&t).map(|(a, b)| a * b).sum();
        let rhs = fundamental_form().apply(&[x, y, z, t]);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn cross_product_orthogonality() {
        let x = basis_vector(1);
        let y = [0.3, 0.0, 1.0, 0.0, 0.0, -0.4, 0.0, 0.7];
        let z = [0.0, 0.0, 0.0, 1.0, 0.5, 0.0, -0.2, 0.0];
        let p = cross_product(&x, &y, &z);
        for v in [&x, &y, &z] {
            let d: f64 = p.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
            assert!(d.abs() < 1e-12, "cross product not orthogonal");
        }
    }

    #[test]
    fn standard_constants_pass() {
        let c = constants_report(&fundamental_form()).unwrap();
        assert!(c.pass(1e-9), "worst deviation {}", c.worst());
        assert_eq!(c.eigen_plus3, 7);
        assert_eq!(c.eigen_minus1, 21);
        assert_eq!(c.four_seven_rank, 7);
    }

    #[test]
    fn sign_flip_breaks_constants() {
        let mut phi = fundamental_form();
        // flip the sign of the e_4567 term
        *phi.coeff_mut(0b11110000) = -1.0;
        let c = constants_report(&phi).unwrap();
        assert!(c.worst() > 0.5, "corruption went unnoticed: {}", c.worst());
    }

    #[test]
    fn decompose_two_form() {
        let a = KForm::monomial(&[0, 1], 1.0).add(&KForm::monomial(&[4, 6], -2.0));
        let comps = decompose(&a).unwrap();
        assert!(comps.reconstruction_residual(&a) < 1e-12);
        assert!(comps.pythagoras_residual(&a) < 1e-12);
        let p7 = comps.part(7).unwrap();
        let p21 = comps.part(21).unwrap();
        assert!(inner(p7, p21).unwrap().abs() < 1e-12);
    }

    #[test]
    fn torsion_routes_agree() {
        let mut dp = KForm::zero(3);
        for (k, &m) in masks(3).iter().enumerate() {
            *dp.coeff_mut(m) = ((k * 37 + 11) % 23) as f64 / 23.0 - 0.5;
        }
        let t1 = torsion_closed_form(&dp).unwrap();
        let t2 = torsion_linear_solve(&dp).unwrap();
        assert!(t1.sub(&t2).max_abs() < 1e-10);
    }

    #[test]
    fn decompose_rejects_bad_degree() {
        let a = KForm::monomial(&[0], 1.0);
        assert!(decompose(&a).is_err());
    }
}
