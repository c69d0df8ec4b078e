//! Exterior algebra over Euclidean 8-space with bitmask-indexed bases.
//!
//! A degree-k form is a coefficient vector of length C(8,k) over the
//! monomials e_{i1...ik} with i1 < ... < ik. Each monomial is encoded as an
//! 8-bit mask and coefficients are stored in increasing mask order, so all
//! structural signs reduce to popcount parities.
//!
//! Orientation: the volume form is e_0123 4567 with coefficient +1. Ordered
//! monomials are orthonormal for [`inner`], so a k-form's squared norm is
//! (1/k!) times the squared norm of its full antisymmetric coefficient
//! tensor; [`Form::norm2_full`] returns the latter when a formula is stated
//! for full tensors.

use crate::scalar::{Differentiable, Ring};
use crate::jet::Mat8;
use crate::{Error, Result, Vector8};
use serde::de::Error as _;
use std::sync::OnceLock;

pub const DIM: usize = 8;

/// C(8,k) for k = 0..=8.
pub const BINOM: [usize; 9] = [1, 8, 28, 56, 70, 56, 28, 8, 1];

struct Tables {
    /// Monomial masks per degree, ascending.
    masks: [Vec<u8>; 9],
    /// Position of a mask within its degree's list.
    index: [u8; 256],
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut masks: [Vec<u8>; 9] = Default::default();
        let mut index = [0u8; 256];
        for m in 0..=255u8 {
            let k = m.count_ones() as usize;
            index[m as usize] = masks[k].len() as u8;
            masks[k].push(m);
        }
        Tables { masks, index }
    })
}

/// The monomial masks of a given degree in storage order.
pub fn masks(degree: usize) -> &'static [u8] {
    &tables().masks[degree]
}

/// Storage index of `mask` within its own degree.
pub fn mask_index(mask: u8) -> usize {
    tables().index[mask as usize] as usize
}

/// Sign of e_A wedge e_B for disjoint masks, as +-1.0; 0.0 when the masks
/// overlap. The parity counts, for each set bit of `b`, the set bits of `a`
/// above it.
pub fn merge_sign(a: u8, b: u8) -> f64 {
    if a & b != 0 {
        return 0.0;
    }
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += ((a as u32) >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// An alternating form of fixed degree with coefficients in a ring `S`.
#[derive(Clone, Debug)]
pub struct Form<S> {
    degree: usize,
    coeffs: Vec<S>,
}

/// Plain numeric form, the default coefficient ring.
pub type KForm = Form<f64>;

impl<S: Ring> Form<S> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "degree {} out of range", degree);
        Form {
            degree,
            coeffs: vec![S::ZERO; BINOM[degree]],
        }
    }

    pub fn scalar(c: S) -> Self {
        Form {
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// Monomial c * e_{i1} ^ ... ^ e_{ik}; indices may come in any order and
    /// contribute the permutation sign. Panics on a repeated index.
    pub fn monomial(indices: &[usize], c: S) -> Self {
        let mut mask = 0u8;
        let mut inversions = 0usize;
        for (pos, &i) in indices.iter().enumerate() {
            assert!(i < DIM, "index {} out of range", i);
            assert!(mask & (1 << i) == 0, "repeated index {}", i);
            for &j in &indices[..pos] {
                if j > i {
                    inversions += 1;
                }
            }
            mask |= 1 << i;
        }
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        let mut f = Form::zero(indices.len());
        f.coeffs[mask_index(mask)] = c.scale(sign);
        f
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), BINOM[degree], "coefficient count mismatch");
        Form { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [S] {
        &mut self.coeffs
    }

    pub fn coeff(&self, mask: u8) -> S {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        self.coeffs[mask_index(mask)]
    }

    pub fn coeff_mut(&mut self, mask: u8) -> &mut S {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        &mut self.coeffs[mask_index(mask)]
    }

    /// Full antisymmetric component with arbitrary index order (0 on repeats).
    pub fn component(&self, indices: &[usize]) -> S {
        debug_assert_eq!(indices.len(), self.degree);
        let mut mask = 0u8;
        let mut inversions = 0usize;
        for (pos, &i) in indices.iter().enumerate() {
            if mask & (1 << i) != 0 {
                return S::ZERO;
            }
            for &j in &indices[..pos] {
                if j > i {
                    inversions += 1;
                }
            }
            mask |= 1 << i;
        }
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        self.coeffs[mask_index(mask)].scale(sign)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(&a, &b)| a + b)
            .collect();
        Form {
            degree: self.degree,
            coeffs,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(&a, &b)| a - b)
            .collect();
        Form {
            degree: self.degree,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&a| -a).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&a| a.scale(c)).collect(),
        }
    }

    pub fn scale_ring(&self, c: S) -> Self {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        assert_eq!(self.degree, o.degree);
        for (a, &b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a = *a + b;
        }
    }

    /// Exterior product. Panics when the degrees overflow the dimension;
    /// use [`try_wedge`](Self::try_wedge) for checked input paths.
    pub fn wedge(&self, o: &Self) -> Self {
        self.try_wedge(o).expect("wedge degree overflow")
    }

    pub fn try_wedge(&self, o: &Self) -> Result<Self> {
        let k = self.degree + o.degree;
        if k > DIM {
            return Err(Error::DegreeOverflow(self.degree, o.degree));
        }
        let mut out = Form::zero(k);
        for (ia, &ma) in masks(self.degree).iter().enumerate() {
            let a = self.coeffs[ia];
            if a.is_zero() {
                continue;
            }
            for (ib, &mb) in masks(o.degree).iter().enumerate() {
                if ma & mb != 0 {
                    continue;
                }
                let b = o.coeffs[ib];
                if b.is_zero() {
                    continue;
                }
                let s = merge_sign(ma, mb);
                let idx = mask_index(ma | mb);
                out.coeffs[idx] = out.coeffs[idx] + (a * b).scale(s);
            }
        }
        Ok(out)
    }

    /// Interior product (contraction in the first slot) with a numeric
    /// vector. Panics on degree 0; use [`try_interior`](Self::try_interior)
    /// for checked input paths.
    pub fn interior(&self, v: &Vector8) -> Self {
        self.try_interior(v).expect("interior product of a scalar")
    }

    pub fn try_interior(&self, v: &Vector8) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::InteriorOfScalar);
        }
        let mut out = Form::zero(self.degree - 1);
        for (ia, &ma) in masks(self.degree).iter().enumerate() {
            let a = self.coeffs[ia];
            if a.is_zero() {
                continue;
            }
            let mut mm = ma;
            while mm != 0 {
                let i = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                if v[i] == 0.0 {
                    continue;
                }
                let below = (ma & ((1u16 << i) as u8).wrapping_sub(1)).count_ones();
                let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
                let rest = ma & !(1 << i);
                let idx = mask_index(rest);
                out.coeffs[idx] = out.coeffs[idx] + a.scale(sign * v[i]);
            }
        }
        Ok(out)
    }

    /// Hodge star for the Euclidean metric in the orthonormal basis, with
    /// volume form e_01234567. On degree k, star(star(a)) = (-1)^k a.
    pub fn hodge_star(&self) -> Self {
        let k = self.degree;
        let mut out = Form::zero(DIM - k);
        for (ia, &ma) in masks(k).iter().enumerate() {
            let a = self.coeffs[ia];
            if a.is_zero() {
                continue;
            }
            let comp = !ma;
            let s = merge_sign(ma, comp);
            out.coeffs[mask_index(comp)] = a.scale(s);
        }
        out
    }

    /// Inner product with ordered monomials orthonormal.
    pub fn inner(&self, o: &Self) -> S {
        assert_eq!(self.degree, o.degree, "inner product degree mismatch");
        let mut acc = S::ZERO;
        for (a, b) in self.coeffs.iter().zip(&o.coeffs) {
            acc = acc + *a * *b;
        }
        acc
    }

    /// Squared norm over ordered monomials.
    pub fn norm2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.value() * c.value()).sum()
    }

    /// Squared norm of the full antisymmetric coefficient tensor, which is
    /// degree! times the ordered norm. Curvature and torsion formulas that
    /// quote |T|^2 mean this normalization.
    pub fn norm2_full(&self) -> f64 {
        let mut f = 1.0;
        for i in 1..=self.degree {
            f *= i as f64;
        }
        f * self.norm2()
    }

    pub fn value(&self) -> KForm {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.value()).collect(),
        }
    }

    /// Evaluate on `degree` vectors (determinant convention: the monomial
    /// e_{01} applied to (e_0, e_1) gives 1).
    pub fn apply(&self, vectors: &[Vector8]) -> S {
        assert_eq!(vectors.len(), self.degree, "argument count mismatch");
        let mut cur = self.clone();
        for v in vectors {
            cur = cur.interior(v);
        }
        cur.coeffs[0]
    }

    /// Substitute basis covectors by the rows of `m`: each e_i in every
    /// monomial is replaced by the degree-1 form with coefficients m[i][*].
    /// This is the pullback along the linear map with matrix m, used for
    /// coframe pullbacks and the coordinate/orthonormal basis changes.
    pub fn transform(&self, m: &Mat8<S>) -> Self {
        if self.degree == 0 {
            return self.clone();
        }
        let rows: Vec<Form<S>> = (0..DIM)
            .map(|i| Form {
                degree: 1,
                coeffs: m[i].to_vec(),
            })
            .collect();
        let mut out = Form::zero(self.degree);
        for (ia, &ma) in masks(self.degree).iter().enumerate() {
            let a = self.coeffs[ia];
            if a.is_zero() {
                continue;
            }
            let mut chain = Form::scalar(a);
            let mut mm = ma;
            while mm != 0 {
                let i = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                chain = chain.wedge(&rows[i]);
            }
            out.add_assign(&chain);
        }
        out
    }

    /// The degree-preserving derivation that sends each basis covector e_r
    /// to the 1-form `images[r]` and obeys the Leibniz rule over wedges.
    /// Covariant derivatives of forms and torsion contractions of the
    /// fundamental form are both of this shape.
    pub fn derivation(&self, images: &[Form<S>; 8]) -> Self {
        let mut out = Form::zero(self.degree);
        if self.degree == 0 {
            return out;
        }
        for (ia, &ma) in masks(self.degree).iter().enumerate() {
            let a = self.coeffs[ia];
            if a.is_zero() {
                continue;
            }
            let mut mm = ma;
            while mm != 0 {
                let r = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                let below = (ma & ((1u16 << r) as u8).wrapping_sub(1)).count_ones();
                let pos_sign = if below % 2 == 0 { 1.0 } else { -1.0 };
                let rest = ma & !(1 << r);
                for (im, &c) in images[r].coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mmask = masks(1)[im];
                    if mmask & rest != 0 {
                        continue;
                    }
                    let s2 = merge_sign(mmask, rest);
                    let idx = mask_index(mmask | rest);
                    out.coeffs[idx] = out.coeffs[idx] + (a * c).scale(pos_sign * s2);
                }
            }
        }
        out
    }
}

impl<S: Differentiable> Form<S> {
    /// Exterior derivative. Coefficients lose one differentiability order:
    /// second-order jets go in, first-order jets come out.
    pub fn exterior_d(&self) -> Form<S::Lower> {
        assert!(self.degree < DIM, "d of a top-degree form is zero anyway");
        let mut out: Form<S::Lower> = Form::zero(self.degree + 1);
        for (ia, &ma) in masks(self.degree).iter().enumerate() {
            let a = self.coeffs[ia];
            if a.is_zero() {
                continue;
            }
            for i in 0..DIM {
                let bit = 1u8 << i;
                if ma & bit != 0 {
                    continue;
                }
                let s = merge_sign(bit, ma);
                let idx = mask_index(ma | bit);
                out.coeffs[idx] = out.coeffs[idx] + a.partial(i).scale(s);
            }
        }
        out
    }

    /// Forget the highest derivative order of every coefficient.
    /// Coefficientwise partial derivative in direction i, lowering the jet
    /// order.
    pub fn partial(&self, i: usize) -> Form<S::Lower> {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.partial(i)).collect(),
        }
    }

    pub fn truncate(&self) -> Form<S::Lower> {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.truncate()).collect(),
        }
    }
}

impl KForm {
    /// Reinterpret as a form with constant coefficients in a jet ring.
    pub fn lift<S: Ring>(&self) -> Form<S> {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&c| S::from_f64(c)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }
}

/// Exterior product of two forms (checked).
pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm> {
    a.try_wedge(b)
}

/// Interior product v -| a, contracting the first slot (checked).
pub fn interior(v: &Vector8, a: &KForm) -> Result<KForm> {
    a.try_interior(v)
}

/// Hodge star in the flat orthonormal basis.
pub fn hodge_star(a: &KForm) -> KForm {
    a.hodge_star()
}

/// Inner product of two forms of equal degree (checked).
pub fn inner(a: &KForm, b: &KForm) -> Result<f64> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(a.inner(b))
}

// JSON encoding of numeric forms:
// { "degree": k, "terms": [ { "indices": [i1 < ... < ik], "coeff": x }, ... ] }
// Omitted terms are zero; indices must be strictly increasing.

#[derive(serde::Serialize, serde::Deserialize)]
struct TermRepr {
    indices: Vec<usize>,
    coeff: f64,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct FormRepr {
    degree: usize,
    terms: Vec<TermRepr>,
}

impl serde::Serialize for KForm {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut terms = Vec::new();
        for (ia, &ma) in masks(self.degree).iter().enumerate() {
            if self.coeffs[ia] == 0.0 {
                continue;
            }
            let indices = (0..DIM).filter(|i| ma & (1 << i) != 0).collect();
            terms.push(TermRepr {
                indices,
                coeff: self.coeffs[ia],
            });
        }
        FormRepr {
            degree: self.degree,
            terms,
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for KForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(d)?;
        if repr.degree > DIM {
            return Err(D::Error::custom(format!(
                "degree {} exceeds dimension 8",
                repr.degree
            )));
        }
        let mut f = KForm::zero(repr.degree);
        for t in &repr.terms {
            if t.indices.len() != repr.degree {
                return Err(D::Error::custom(format!(
                    "term has {} indices, degree is {}",
                    t.indices.len(),
                    repr.degree
                )));
            }
            let mut mask = 0u8;
            let mut prev: i32 = -1;
            for &i in &t.indices {
                if i >= DIM {
                    return Err(D::Error::custom(format!("index {} out of range", i)));
                }
                if (i as i32) <= prev {
                    return Err(D::Error::custom(
                        "indices must be strictly increasing".to_string(),
                    ));
                }
                prev = i as i32;
                mask |= 1 << i;
            }
            *f.coeff_mut(mask) += t.coeff;
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_tables_consistent() {
        for k in 0..=8 {
            assert_eq!(masks(k).len(), BINOM[k]);
            for (i, &m) in masks(k).iter().enumerate() {
                assert_eq!(m.count_ones() as usize, k);
                assert_eq!(mask_index(m), i);
            }
        }
    }

    #[test]
    fn wedge_signs() {
        let e0 = KForm::monomial(&[0], 1.0);
        let e1 = KForm::monomial(&[1], 1.0);
        let w = e0.wedge(&e1);
        assert_eq!(w.coeff(0b11), 1.0);
        let w2 = e1.wedge(&e0);
        assert_eq!(w2.coeff(0b11), -1.0);
        let a = KForm::monomial(&[0, 1, 2, 3], 1.0);
        let b = KForm::monomial(&[4, 5, 6, 7], 1.0);
        assert_eq!(a.wedge(&b).coeff(0xff), 1.0);
    }

    #[test]
    fn interior_signs() {
        let f = KForm::monomial(&[0, 1, 2, 3], 1.0);
        let mut e0 = [0.0; 8];
        e0[0] = 1.0;
        let mut e1 = [0.0; 8];
        e1[1] = 1.0;
        let mut e4 = [0.0; 8];
        e4[4] = 1.0;
        assert_eq!(f.interior(&e0).coeff(0b1110), 1.0);
        assert_eq!(f.interior(&e1).coeff(0b1101), -1.0);
        assert_eq!(f.interior(&e4).norm2(), 0.0);
    }

    #[test]
    fn star_basics() {
        let f = KForm::monomial(&[0, 1, 2, 3], 1.0);
        assert_eq!(f.hodge_star().coeff(0xf0), 1.0);
        let one = KForm::scalar(1.0);
        assert_eq!(one.hodge_star().coeff(0xff), 1.0);
    }

    #[test]
    fn monomial_sorting_sign() {
        let a = KForm::monomial(&[1, 0], 2.0);
        assert_eq!(a.coeff(0b11), -2.0);
        let b = KForm::monomial(&[3, 1, 2], 1.0);
        // (3,1,2) -> (1,2,3) is an even permutation? 312 has inversions (3,1),(3,2): two -> even
        assert_eq!(b.coeff(0b1110), 1.0);
    }

    #[test]
    fn json_roundtrip() {
        let mut f = KForm::zero(2);
        *f.coeff_mut(0b11) = 1.5;
        *f.coeff_mut(0b101) = -0.25;
        let s = serde_json::to_string(&f).unwrap();
        let g: KForm = serde_json::from_str(&s).unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.coeff(0b11), 1.5);
        assert_eq!(g.coeff(0b101), -0.25);
        let bad = r#"{"degree":2,"terms":[{"indices":[1,0],"coeff":1.0}]}"#;
        assert!(serde_json::from_str::<KForm>(bad).is_err());
    }
}
