//! Coframe fields on flat 8-space and the differential geometry of the
//! structures they induce.
//!
//! A field assigns to each point an invertible coframe matrix E (rows are
//! the covectors e^a) together with exact first and second derivatives,
//! packaged as second-order jets. Everything else is derived: the metric
//! g = E^T E, the fundamental 4-form as the coordinate expression of the
//! model form in the coframe, its exterior derivative and codifferential,
//! the Lee form, the torsion 3-form of the characteristic connection, and
//! the curvature tensors of both the Levi-Civita and the characteristic
//! connection.
//!
//! Jets propagate through every algebraic step; each exterior derivative
//! consumes one jet order, and the type system tracks this (a derivative of
//! a `Jet2` quantity is `Jet1`, of `Jet1` plain), so no routine can silently
//! request a third derivative. All residuals on the built-in fixtures are
//! therefore exact-arithmetic identities up to floating-point roundoff.

pub mod curvature;
pub mod fixtures;
pub mod spin;

use crate::algebra::fundamental_form;
use crate::clifford::{clifford_form, fundamental_spinor, Spinor};
use crate::exterior::{Form, KForm};
use crate::jet::{
    mat_condition, mat_det_value, mat_inverse, mat_mul, mat_transpose, mat_truncate, mat_value,
    Jet1, Jet2, Mat8,
};
use crate::scalar::{Differentiable, Ring};
use crate::{Error, Result, Vector8};

pub use curvature::{Christoffel, Riemann};
pub use fixtures::{
    default_conformal, default_conformal_field, default_perturbed, fixture_conformal,
    fixture_flat, fixture_perturbed, sample_points, Fixture, FixtureSpec, FiniteDifferenceCoframe,
    MatrixTrigField, ScaledCoframe, ScalarTrigField, TrigTerm,
};
pub use spin::{spin_data, SpinData};

/// A coframe field with exact second-order jets at every point.
pub trait CoframeJetField {
    /// The coframe matrix at x: row a holds the coordinate components of
    /// the covector e^a, each entry carrying value, gradient and Hessian.
    fn coframe(&self, x: &[f64; 8]) -> Mat8<Jet2>;
}

/// Metric Hodge star at fixed jet order: pull the form to the orthonormal
/// coframe, star there, push back to coordinates. Assumes det E > 0, which
/// [`structure_jet`] enforces once per point.
fn star_g<S: Ring>(a: &Form<S>, e: &Mat8<S>, e_inv: &Mat8<S>) -> Form<S> {
    a.transform(e_inv).hodge_star().transform(e)
}

/// Codifferential `-star d star`, consuming one jet order.
fn codifferential<S: Differentiable>(
    a: &Form<S>,
    e: &Mat8<S>,
    e_inv: &Mat8<S>,
    e_lo: &Mat8<S::Lower>,
    e_inv_lo: &Mat8<S::Lower>,
) -> Form<S::Lower> {
    star_g(&star_g(a, e, e_inv).exterior_d(), e_lo, e_inv_lo).neg()
}

/// All structure data of a coframe field at one point.
///
/// Coordinate-component fields keep their jets where later derivatives are
/// taken; `*_frame` fields are plain values expressed in the orthonormal
/// frame, which is where the model form is constant and the algebraic
/// identities are stated.
pub struct StructureJet {
    pub point: [f64; 8],
    /// Condition number of the coframe value.
    pub condition: f64,
    pub e: Mat8<Jet2>,
    pub e_inv: Mat8<Jet2>,
    pub e0: [[f64; 8]; 8],
    pub e_inv0: [[f64; 8]; 8],
    pub g: Mat8<Jet2>,
    pub g_inv: Mat8<Jet2>,
    /// Coordinate components of the fundamental form.
    pub phi: Form<Jet2>,
    pub d_phi: Form<Jet1>,
    pub delta_phi: Form<Jet1>,
    /// Lee form, coordinate components.
    pub theta: Form<Jet1>,
    /// Torsion of the characteristic connection, coordinate components.
    pub torsion: Form<Jet1>,
    pub d_phi_frame: KForm,
    pub delta_phi_frame: KForm,
    pub theta_frame: KForm,
    pub torsion_frame: KForm,
    pub d_torsion_frame: KForm,
    pub delta_torsion_frame: KForm,
    pub d_theta_frame: KForm,
    pub d_delta_phi_frame: KForm,
    /// sigma = (1/2) sum_a (i_a T) ^ (i_a T), frame components.
    pub sigma_t_frame: KForm,
    /// Covariant derivative slices (nabla_{X_a} T) of the characteristic
    /// connection, frame components.
    pub nabla_torsion_frame: [KForm; 8],
    pub delta_theta: f64,
    pub christoffel: Box<Christoffel>,
    /// Lowered curvature of the Levi-Civita connection.
    pub riemann: Box<Riemann>,
    /// Ricci tensor of the Levi-Civita connection, coordinate indices.
    pub ricci: [[f64; 8]; 8],
    pub scal: f64,
    pub ricci_frame: [[f64; 8]; 8],
    /// Ricci tensor of the characteristic connection, frame indices, from
    /// the curvature correction by delta T and the torsion square.
    pub ricci_torsion_frame: [[f64; 8]; 8],
    pub scal_torsion: f64,
    /// Coordinate components of nabla_i phi for each coordinate direction.
    pub nabla_phi_slices: [KForm; 8],
    pub riemann_antisym_residual: f64,
    pub bianchi_residual: f64,
    /// Largest violation of nabla g = 0 for the characteristic connection.
    pub metricity_residual: f64,
}

/// Full inner product of two equal-degree forms (k! times the ordered one),
/// the normalization used by curvature formulas.
fn full_inner(a: &KForm, b: &KForm) -> f64 {
    let mut f = 1.0;
    for i in 1..=a.degree() {
        f *= i as f64;
    }
    let mut acc = 0.0;
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        acc += x * y;
    }
    f * acc
}

/// Compute the full structure data of `field` at `x`.
pub fn structure_jet<F: CoframeJetField + ?Sized>(field: &F, x: &[f64; 8]) -> Result<StructureJet> {
    let e = field.coframe(x);
    let e0 = mat_value(&e);
    if !e0.iter().flatten().all(|v| v.is_finite()) {
        return Err(Error::BadCoframe(*x));
    }
    if mat_det_value(&e) <= 0.0 {
        // orientation must match the model volume form for the star
        return Err(Error::BadCoframe(*x));
    }
    let condition = mat_condition(&e);
    let e_inv = mat_inverse(&e).ok_or(Error::BadCoframe(*x))?;
    let e_inv0 = mat_value(&e_inv);
    let e1 = mat_truncate(&e);
    let e_inv1 = mat_truncate(&e_inv);
    let g = mat_mul(&mat_transpose(&e), &e);
    let g_inv = mat_mul(&e_inv, &mat_transpose(&e_inv));
    let g0 = mat_value(&g);
    let g_inv0 = mat_value(&g_inv);

    let phi: Form<Jet2> = fundamental_form().lift::<Jet2>().transform(&e);
    let phi1 = phi.truncate();
    let d_phi = phi.exterior_d();
    let delta_phi = codifferential(&phi, &e, &e_inv, &e1, &e_inv1);
    let theta = star_g(&delta_phi.wedge(&phi1), &e1, &e_inv1).scale(1.0 / 7.0);
    let torsion = delta_phi
        .neg()
        .sub(&star_g(&theta.wedge(&phi1), &e1, &e_inv1).scale(7.0 / 6.0));

    let to_frame = |a: &KForm| a.transform(&e_inv0);
    let d_phi_frame = to_frame(&d_phi.value());
    let delta_phi_frame = to_frame(&delta_phi.value());
    let theta_frame = to_frame(&theta.value());
    let torsion_frame = to_frame(&torsion.value());
    let d_torsion_frame = to_frame(&torsion.exterior_d());
    let e0m: Mat8<f64> = e0;
    let e_inv0m: Mat8<f64> = e_inv0;
    let delta_torsion_frame = to_frame(&codifferential(&torsion, &e1, &e_inv1, &e0m, &e_inv0m));
    let d_theta_frame = to_frame(&theta.exterior_d());
    let d_delta_phi_frame = to_frame(&delta_phi.exterior_d());
    let delta_theta = codifferential(&theta, &e1, &e_inv1, &e0m, &e_inv0m).coeffs()[0];

    let mut sigma_t_frame = KForm::zero(4);
    for a in 0..8 {
        let mut ea = [0.0; 8];
        ea[a] = 1.0;
        let ia = torsion_frame.interior(&ea);
        sigma_t_frame.add_assign(&ia.wedge(&ia));
    }
    sigma_t_frame = sigma_t_frame.scale(0.5);

    let christoffel = curvature::christoffel(&g, &g_inv);
    let lc = curvature::curvature(&christoffel, &g0, &g_inv0);
    let tgamma = curvature::torsion_christoffel(&christoffel, &g_inv, &torsion);

    // covariant derivative corrections substitute dx^r -> -Gamma^r_im dx^m
    let correction_images = |gam: &Christoffel, i: usize| -> [KForm; 8] {
        std::array::from_fn(|r| {
            let mut w = KForm::zero(1);
            for m in 0..8 {
                let c = -gam[r][i][m].v;
                if c != 0.0 {
                    w.add_assign(&KForm::monomial(&[m], c));
                }
            }
            w
        })
    };

    // nabla phi uses the Levi-Civita connection; nabla T belongs to the
    // characteristic connection, whose Ricci formula consumes it.
    let torsion0 = torsion.value();
    let phi0 = phi1.value();
    let mut nabla_phi_slices: [KForm; 8] = std::array::from_fn(|_| KForm::zero(4));
    let mut nabla_torsion_coord: [KForm; 8] = std::array::from_fn(|_| KForm::zero(3));
    for i in 0..8 {
        let images = correction_images(&christoffel, i);
        nabla_phi_slices[i] = phi.partial(i).value().add(&phi0.derivation(&images));
        let images_t = correction_images(&tgamma, i);
        nabla_torsion_coord[i] = torsion.partial(i).add(&torsion0.derivation(&images_t));
    }
    let nabla_torsion_frame: [KForm; 8] = std::array::from_fn(|a| {
        let mut acc = KForm::zero(3);
        for i in 0..8 {
            if e_inv0[i][a] != 0.0 {
                acc.add_assign(&nabla_torsion_coord[i].scale(e_inv0[i][a]));
            }
        }
        to_frame(&acc)
    });

    let mut ricci_frame = [[0.0; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let mut acc = 0.0;
            for j in 0..8 {
                for k in 0..8 {
                    acc += e_inv0[j][a] * e_inv0[k][b] * lc.ricci[j][k];
                }
            }
            ricci_frame[a][b] = acc;
        }
    }

    // characteristic connection Ricci through the curvature correction
    let mut ricci_torsion_frame = [[0.0; 8]; 8];
    let mut interior_t: [KForm; 8] = std::array::from_fn(|_| KForm::zero(2));
    for (a, slot) in interior_t.iter_mut().enumerate() {
        let mut ea = [0.0; 8];
        ea[a] = 1.0;
        *slot = torsion_frame.interior(&ea);
    }
    for a in 0..8 {
        for b in 0..8 {
            ricci_torsion_frame[a][b] = ricci_frame[a][b]
                - 0.5 * delta_torsion_frame.component(&[a, b])
                - 0.25 * full_inner(&interior_t[a], &interior_t[b]);
        }
    }
    let scal_torsion = (0..8).map(|a| ricci_torsion_frame[a][a]).sum();

    // metricity of the characteristic connection
    let mut metricity_residual: f64 = 0.0;
    for k in 0..8 {
        for i in 0..8 {
            for j in 0..8 {
                let mut v = g[i][j].partial(k).v;
                for m in 0..8 {
                    v -= tgamma[m][k][i].v * g0[m][j] + tgamma[m][k][j].v * g0[i][m];
                }
                metricity_residual = metricity_residual.max(v.abs());
            }
        }
    }

    Ok(StructureJet {
        point: *x,
        condition,
        e,
        e_inv,
        e0,
        e_inv0,
        g,
        g_inv,
        phi,
        d_phi,
        delta_phi,
        theta,
        torsion,
        d_phi_frame,
        delta_phi_frame,
        theta_frame,
        torsion_frame,
        d_torsion_frame,
        delta_torsion_frame,
        d_theta_frame,
        d_delta_phi_frame,
        sigma_t_frame,
        nabla_torsion_frame,
        delta_theta,
        christoffel,
        riemann: lc.riemann,
        ricci: lc.ricci,
        scal: lc.scal,
        ricci_frame,
        ricci_torsion_frame,
        scal_torsion,
        nabla_phi_slices,
        riemann_antisym_residual: lc.antisym_residual,
        bianchi_residual: lc.bianchi_residual,
        metricity_residual,
    })
}

impl StructureJet {
    /// Express coordinate components in the orthonormal frame.
    pub fn to_frame(&self, a: &KForm) -> KForm {
        a.transform(&self.e_inv0)
    }

    /// Express frame components in coordinates.
    pub fn to_coord(&self, a: &KForm) -> KForm {
        a.transform(&self.e0)
    }

    /// Coordinate components of the frame vector X_a.
    pub fn frame_vector(&self, a: usize) -> Vector8 {
        std::array::from_fn(|i| self.e_inv0[i][a])
    }

    /// Metric Hodge star on coordinate components, at the value level.
    pub fn metric_star(&self, a: &KForm) -> KForm {
        star_g(a, &self.e0, &self.e_inv0)
    }

    /// Codifferential of a coordinate 1-form with first-order coefficients,
    /// e.g. the Laplacian of a scalar when fed its exterior derivative.
    pub fn codifferential_one_form(&self, a: &Form<Jet1>) -> f64 {
        let e1 = mat_truncate(&self.e);
        let e_inv1 = mat_truncate(&self.e_inv);
        codifferential(a, &e1, &e_inv1, &self.e0, &self.e_inv0).coeffs()[0]
    }

    /// nabla_X phi in coordinate components, X given in coordinates.
    pub fn nabla_phi(&self, x: &Vector8) -> KForm {
        let mut acc = KForm::zero(4);
        for i in 0..8 {
            if x[i] != 0.0 {
                acc.add_assign(&self.nabla_phi_slices[i].scale(x[i]));
            }
        }
        acc
    }

    /// nabla_{X_a} phi in frame components.
    pub fn nabla_phi_frame(&self, a: usize) -> KForm {
        self.to_frame(&self.nabla_phi(&self.frame_vector(a)))
    }

    /// Largest residual, over frame directions, of the transport identity:
    /// twice the covariant derivative of phi must equal the derivation of
    /// the model form by the torsion endomorphisms.
    pub fn parallel_residual(&self) -> f64 {
        self.parallel_residual_with(&self.torsion_frame)
    }

    /// Same residual with an arbitrary torsion candidate in frame
    /// components; feeding anything but the true torsion leaves an order-one
    /// defect.
    pub fn parallel_residual_with(&self, t_frame: &KForm) -> f64 {
        let model = fundamental_form();
        let mut worst: f64 = 0.0;
        for a in 0..8 {
            let lhs = self.nabla_phi_frame(a).scale(2.0);
            let images: [KForm; 8] = std::array::from_fn(|r| {
                let mut w = KForm::zero(1);
                for m in 0..8 {
                    let c = t_frame.component(&[a, m, r]);
                    if c != 0.0 {
                        w.add_assign(&KForm::monomial(&[m], c));
                    }
                }
                w
            });
            let rhs = model.derivation(&images);
            worst = worst.max(lhs.sub(&rhs).max_abs());
        }
        worst
    }
}

/// nabla_X phi at a point, in coordinate components.
pub fn nabla_phi_direct<F: CoframeJetField + ?Sized>(
    field: &F,
    x: &[f64; 8],
    dir: &Vector8,
) -> Result<KForm> {
    Ok(structure_jet(field, x)?.nabla_phi(dir))
}

/// Outcome of the parallel-transport check at one point.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ParallelReport {
    pub point: [f64; 8],
    /// Residual of the transport identity with the computed torsion.
    pub residual: f64,
    /// Residual of nabla g = 0 for the characteristic connection.
    pub metricity_residual: f64,
    /// Coframe condition number at the point.
    pub condition: f64,
}

/// Verify that the characteristic connection makes the fundamental form
/// parallel at `x`.
pub fn check_nabla_parallel<F: CoframeJetField + ?Sized>(
    field: &F,
    x: &[f64; 8],
) -> Result<ParallelReport> {
    let jet = structure_jet(field, x)?;
    Ok(ParallelReport {
        point: *x,
        residual: jet.parallel_residual(),
        metricity_residual: jet.metricity_residual,
        condition: jet.condition,
    })
}

/// Residuals tying the three Ricci routes together at one point: the
/// curvature correction, the torsion-derivative formula, and direct
/// contraction of the characteristic connection's curvature.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RicciReport {
    pub point: [f64; 8],
    /// Formula route vs curvature-correction route, characteristic
    /// connection, max entry (relative to 1 + scale).
    pub formula_residual: f64,
    /// Curvature-correction route vs direct curvature contraction.
    pub direct_residual: f64,
    /// Antisymmetric part of the characteristic Ricci against
    /// -(1/2) delta T.
    pub antisymmetry_residual: f64,
    /// Metric Ricci reassembled from the characteristic one vs the Riemann
    /// contraction.
    pub metric_residual: f64,
    /// Scalar curvature of the characteristic connection, both routes.
    pub scal_residual: f64,
}

/// Cross-check the Ricci tensor of the characteristic connection at `x`
/// along all three routes.
pub fn connection_ricci<F: CoframeJetField + ?Sized>(
    field: &F,
    x: &[f64; 8],
) -> Result<RicciReport> {
    let jet = structure_jet(field, x)?;
    let model = fundamental_form();

    // formula route: Ric(X_a) = -(1/2) star(i_a dT ^ phi) - star(nabla_a T ^ phi)
    let mut formula = [[0.0; 8]; 8];
    for a in 0..8 {
        let mut ea = [0.0; 8];
        ea[a] = 1.0;
        let first = crate::exterior::hodge_star(&jet.d_torsion_frame.interior(&ea).wedge(&model));
        let second = crate::exterior::hodge_star(&jet.nabla_torsion_frame[a].wedge(&model));
        for b in 0..8 {
            formula[a][b] = -0.5 * first.coeffs()[b] - second.coeffs()[b];
        }
    }

    // direct route: contract the curvature of the characteristic connection
    let tgamma = curvature::torsion_christoffel(&jet.christoffel, &jet.g_inv, &jet.torsion);
    let g0 = mat_value(&jet.g);
    let g_inv0 = mat_value(&jet.g_inv);
    let tc = curvature::curvature(&tgamma, &g0, &g_inv0);
    let mut direct = [[0.0; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let mut acc = 0.0;
            for j in 0..8 {
                for k in 0..8 {
                    acc += jet.e_inv0[j][a] * jet.e_inv0[k][b] * tc.ricci[j][k];
                }
            }
            direct[a][b] = acc;
        }
    }
    let direct_scal: f64 = (0..8).map(|a| direct[a][a]).sum();

    let scale = jet
        .ricci_torsion_frame
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let rel = |d: f64| d / (1.0 + scale);

    let mut formula_residual: f64 = 0.0;
    let mut direct_residual: f64 = 0.0;
    let mut antisymmetry_residual: f64 = 0.0;
    let mut metric_residual: f64 = 0.0;
    for a in 0..8 {
        for b in 0..8 {
            formula_residual =
                formula_residual.max((formula[a][b] - jet.ricci_torsion_frame[a][b]).abs());
            direct_residual =
                direct_residual.max((direct[a][b] - jet.ricci_torsion_frame[a][b]).abs());
            let anti = 0.5 * (jet.ricci_torsion_frame[a][b] - jet.ricci_torsion_frame[b][a]);
            antisymmetry_residual = antisymmetry_residual
                .max((anti + 0.5 * jet.delta_torsion_frame.component(&[a, b])).abs());
            // reassemble the metric Ricci from the formula route
            let mut ea = [0.0; 8];
            ea[a] = 1.0;
            let mut eb = [0.0; 8];
            eb[b] = 1.0;
            let back = formula[a][b]
                + 0.5 * jet.delta_torsion_frame.component(&[a, b])
                + 0.25
                    * full_inner(
                        &jet.torsion_frame.interior(&ea),
                        &jet.torsion_frame.interior(&eb),
                    );
            metric_residual = metric_residual.max((back - jet.ricci_frame[a][b]).abs());
        }
    }

    Ok(RicciReport {
        point: *x,
        formula_residual: rel(formula_residual),
        direct_residual: rel(direct_residual),
        antisymmetry_residual: rel(antisymmetry_residual),
        metric_residual: rel(metric_residual),
        scal_residual: rel((direct_scal - jet.scal_torsion).abs()),
    })
}

/// Residuals of the spinor transport identities at one point.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DiracReport {
    pub point: [f64; 8],
    /// max_c | nabla_{X_c} phi + (1/4) (i_c T) . phi |.
    pub parallel_residual: f64,
    /// | D phi - (7/8) theta . phi |.
    pub dirac_lee_residual: f64,
    /// | D phi + (3/4) T . phi |.
    pub dirac_torsion_residual: f64,
    /// | T . phi + (7/6) theta . phi |: the torsion acts like the Lee form
    /// on the distinguished spinor.
    pub torsion_lee_residual: f64,
    /// Antisymmetry defect of the connection 1-forms.
    pub omega_residual: f64,
}

/// Check the covariant-derivative and Dirac identities for the
/// distinguished spinor at `x`.
pub fn dirac_identities<F: CoframeJetField + ?Sized>(
    field: &F,
    x: &[f64; 8],
) -> Result<DiracReport> {
    let jet = structure_jet(field, x)?;
    let data = spin_data(&jet);
    let phi_s = fundamental_spinor()?;

    let mut parallel_residual: f64 = 0.0;
    for c in 0..8 {
        let mut ec = [0.0; 8];
        ec[c] = 1.0;
        let it = jet.torsion_frame.interior(&ec);
        let rhs = clifford_form(&it, &phi_s).scale(0.25);
        let diff = data.nabla_spinor[c].add(&rhs);
        parallel_residual = parallel_residual.max(diff.0.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    }

    let theta_phi = clifford_form(&jet.theta_frame, &phi_s);
    let torsion_phi = clifford_form(&jet.torsion_frame, &phi_s);

    let lee = data.dirac.sub(&theta_phi.scale(7.0 / 8.0));
    let tor = data.dirac.add(&torsion_phi.scale(0.75));
    let bridge = torsion_phi.add(&theta_phi.scale(7.0 / 6.0));
    let sup = |s: &Spinor| s.0.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    Ok(DiracReport {
        point: *x,
        parallel_residual,
        dirac_lee_residual: sup(&lee),
        dirac_torsion_residual: sup(&tor),
        torsion_lee_residual: sup(&bridge),
        omega_residual: data.omega_antisym_residual,
    })
}
