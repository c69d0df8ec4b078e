//! Identity checks and classification built on top of the field pipeline.
//!
//! Every function here evaluates both sides of a stated identity from
//! independently computed ingredients and reports the residual; nothing is
//! rearranged to make a residual small by construction. Scalar comparisons
//! are quoted relative to `1 + |reference|` so that both near-flat and
//! strongly curved samples are judged fairly.

use crate::algebra::{fundamental_form, spin7_tables};
use crate::clifford::{clifford_form, fundamental_spinor, Spinor};
use crate::exterior::hodge_star;
use crate::fields::{
    spin_data, structure_jet, CoframeJetField, ScalarTrigField, ScaledCoframe, StructureJet,
};
use crate::Result;

/// The torsion classes of an 8-dimensional structure, ordered from most to
/// least restrictive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureClass {
    /// The fundamental form is closed (hence parallel).
    Parallel,
    /// The Lee form vanishes.
    Balanced,
    /// d phi = theta ^ phi: locally a conformal change of a parallel
    /// structure.
    LocallyConformallyParallel,
    /// No defining equation holds.
    Generic,
}

impl std::fmt::Display for StructureClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StructureClass::Parallel => "parallel",
            StructureClass::Balanced => "balanced",
            StructureClass::LocallyConformallyParallel => "locally conformally parallel",
            StructureClass::Generic => "generic",
        };
        f.write_str(s)
    }
}

/// Classification outcome: the class together with the largest sampled norm
/// of each defining quantity.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ClassReport {
    pub class: StructureClass,
    /// max over points of |d phi| (frame components, ordered norm).
    pub d_phi_residual: f64,
    /// max over points of |theta|.
    pub lee_residual: f64,
    /// max over points of |d phi - theta ^ phi|.
    pub conformal_residual: f64,
    /// max over points of |d theta|; vanishes on the conformal class.
    pub d_lee_residual: f64,
    pub tol: f64,
}

/// Classify a field by the most restrictive defining equation that holds at
/// every sample point within `tol`.
pub fn classify<F: CoframeJetField + ?Sized>(
    field: &F,
    points: &[[f64; 8]],
    tol: f64,
) -> Result<ClassReport> {
    let model = fundamental_form();
    let mut d_phi_residual: f64 = 0.0;
    let mut lee_residual: f64 = 0.0;
    let mut conformal_residual: f64 = 0.0;
    let mut d_lee_residual: f64 = 0.0;
    for p in points {
        let jet = structure_jet(field, p)?;
        d_phi_residual = d_phi_residual.max(jet.d_phi_frame.norm());
        lee_residual = lee_residual.max(jet.theta_frame.norm());
        let defect = jet.d_phi_frame.sub(&jet.theta_frame.wedge(&model));
        conformal_residual = conformal_residual.max(defect.norm());
        d_lee_residual = d_lee_residual.max(jet.d_theta_frame.norm());
    }
    let class = if d_phi_residual <= tol {
        StructureClass::Parallel
    } else if lee_residual <= tol {
        StructureClass::Balanced
    } else if conformal_residual <= tol {
        StructureClass::LocallyConformallyParallel
    } else {
        StructureClass::Generic
    };
    Ok(ClassReport {
        class,
        d_phi_residual,
        lee_residual,
        conformal_residual,
        d_lee_residual,
        tol,
    })
}

/// Residuals of the conformal transformation laws.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConformalReport {
    /// Lee form law: the rescaled structure's Lee form must be
    /// theta + 4 df. Largest coefficient residual over the points.
    pub lee_residual: f64,
    /// Torsion law: the rescaled torsion must be
    /// e^{2f} T - (2/3) star(df ^ phi), with the star and the fundamental
    /// form taken in the rescaled structure.
    pub torsion_residual: f64,
}

/// Verify the conformal transformation laws by rescaling the coframe with
/// `e^f` and recomputing everything from scratch.
pub fn conformal_check<F: CoframeJetField + ?Sized>(
    field: &F,
    f: &ScalarTrigField,
    points: &[[f64; 8]],
) -> Result<ConformalReport> {
    let scaled = ScaledCoframe {
        base: field,
        factor: f,
    };
    let mut lee_residual: f64 = 0.0;
    let mut torsion_residual: f64 = 0.0;
    for p in points {
        let base = structure_jet(field, p)?;
        let resc = structure_jet(&scaled, p)?;
        let fj = f.jet2(p);
        let mut df = crate::exterior::KForm::zero(1);
        for i in 0..8 {
            if fj.d[i] != 0.0 {
                df.add_assign(&crate::exterior::KForm::monomial(&[i], fj.d[i]));
            }
        }
        let lee_pred = base.theta.value().add(&df.scale(4.0));
        lee_residual = lee_residual.max(resc.theta.value().sub(&lee_pred).max_abs());

        let phi_resc = resc.phi.truncate().value();
        let star_term = resc.metric_star(&df.wedge(&phi_resc));
        let torsion_pred = base
            .torsion
            .value()
            .scale((2.0 * fj.v).exp())
            .sub(&star_term.scale(2.0 / 3.0));
        torsion_residual =
            torsion_residual.max(resc.torsion.value().sub(&torsion_pred).max_abs());
    }
    Ok(ConformalReport {
        lee_residual,
        torsion_residual,
    })
}

/// Residuals of the scalar curvature formulas at one point.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ScalarReport {
    pub point: [f64; 8],
    /// Metric scalar curvature against
    /// (49/18)|theta|^2 - (1/12)|T|^2 + (7/2) delta theta.
    pub metric_residual: f64,
    /// Characteristic-connection scalar curvature against the same formula
    /// with -(1/3)|T|^2.
    pub torsion_residual: f64,
    /// The balanced-direction restriction: removing the Lee contributions
    /// from the metric formula must leave -(1/12) of the squared norm of
    /// the 48-component of delta phi (plus the Lee remainder of the
    /// torsion's 8-part). For a balanced structure this is exactly
    /// Scal = -(1/12)|delta phi|^2.
    pub balanced_probe_residual: f64,
}

/// Check the scalar curvature identities against the Riemann-contraction
/// oracle carried by the jet.
pub fn scalar_identity_check(jet: &StructureJet) -> ScalarReport {
    let theta2 = jet.theta_frame.norm2();
    let t2 = jet.torsion_frame.norm2_full();
    let rel = 1.0 + jet.scal.abs();

    let metric_pred = (49.0 / 18.0) * theta2 - t2 / 12.0 + 3.5 * jet.delta_theta;
    let torsion_pred = (49.0 / 18.0) * theta2 - t2 / 3.0 + 3.5 * jet.delta_theta;

    let tables = spin7_tables();
    let dp48 = tables.project(&jet.delta_phi_frame, 48);
    let stheta = hodge_star(&jet.theta_frame.wedge(&fundamental_form()));
    let probe_pred = (49.0 / 18.0) * theta2 + 3.5 * jet.delta_theta
        - (dp48.norm2_full() + stheta.norm2_full() / 36.0) / 12.0;

    ScalarReport {
        point: jet.point,
        metric_residual: (jet.scal - metric_pred).abs() / rel,
        torsion_residual: (jet.scal_torsion - torsion_pred).abs() / rel,
        balanced_probe_residual: (jet.scal - probe_pred).abs() / rel,
    }
}

/// Residual spinor norms of the curvature identities applied to the
/// distinguished spinor, at one point.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SpinorIdentityReport {
    pub point: [f64; 8],
    /// (3 dT - 2 sigma + 2 delta T) . phi + Scal phi = 0, the scalar part
    /// of the curvature action on the distinguished spinor.
    pub first_residual: f64,
    /// The same without the delta T term; exact only for coclosed torsion,
    /// reported for transparency and not gated.
    pub first_coclosed_residual: f64,
    /// (1/2)(i_X dT) . phi + (nabla_X T) . phi - Ric(X) . phi = 0 over all
    /// frame directions X.
    pub second_residual: f64,
    /// Spinor Laplacian against
    /// -(1/4) delta T . phi - (1/16)(2 sigma - (1/2)|T|^2) . phi.
    pub laplace_residual: f64,
    /// Scalar pairing:
    /// (-(7/2) delta theta - (1/4)|T|^2 + Scal)|phi|^2 + 4 (sigma.phi, phi).
    pub pairing_residual: f64,
}

fn sup(s: &Spinor) -> f64 {
    s.0.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Check the spinorial curvature identities at one point.
pub fn sl_identity_check(jet: &StructureJet) -> Result<SpinorIdentityReport> {
    let phi_s = fundamental_spinor()?;
    let data = spin_data(jet);
    let rel = 1.0 + jet.scal_torsion.abs();

    let dt_phi = clifford_form(&jet.d_torsion_frame, &phi_s);
    let sigma_phi = clifford_form(&jet.sigma_t_frame, &phi_s);
    let ddt_phi = clifford_form(&jet.delta_torsion_frame, &phi_s);

    let core = dt_phi
        .scale(3.0)
        .sub(&sigma_phi.scale(2.0))
        .add(&phi_s.scale(jet.scal_torsion));
    let first = core.add(&ddt_phi.scale(2.0));
    let first_residual = sup(&first) / rel;
    let first_coclosed_residual = sup(&core) / rel;

    let mut second_residual: f64 = 0.0;
    for a in 0..8 {
        let mut ea = [0.0; 8];
        ea[a] = 1.0;
        let idt = jet.d_torsion_frame.interior(&ea);
        let mut ric_row = crate::exterior::KForm::zero(1);
        for b in 0..8 {
            let c = jet.ricci_torsion_frame[a][b];
            if c != 0.0 {
                ric_row.add_assign(&crate::exterior::KForm::monomial(&[b], c));
            }
        }
        let lhs = clifford_form(&idt, &phi_s)
            .scale(0.5)
            .add(&clifford_form(&jet.nabla_torsion_frame[a], &phi_s))
            .sub(&clifford_form(&ric_row, &phi_s));
        second_residual = second_residual.max(sup(&lhs));
    }
    second_residual /= rel;

    let t2 = jet.torsion_frame.norm2_full();
    let lap_pred = ddt_phi
        .scale(-0.25)
        .sub(&sigma_phi.scale(0.125))
        .add(&phi_s.scale(t2 / 32.0));
    let laplace_residual = sup(&data.laplacian.sub(&lap_pred)) / rel;

    let pairing = (-3.5 * jet.delta_theta - 0.25 * t2 + jet.scal) * phi_s.norm2()
        + 4.0 * sigma_phi.dot(&phi_s);
    let pairing_residual = pairing.abs() / rel;

    Ok(SpinorIdentityReport {
        point: jet.point,
        first_residual,
        first_coclosed_residual,
        second_residual,
        laplace_residual,
        pairing_residual,
    })
}

/// Residual of the Lee codifferential identity at one point.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GauduchonReport {
    pub point: [f64; 8],
    /// 7 delta theta = star(d delta phi ^ phi) - |d phi|^2 (ordered norm).
    pub residual: f64,
    /// The same with +|d phi|^2; kept for transparency, never small away
    /// from the parallel class.
    pub plus_sign_residual: f64,
}

/// Check the identity tying delta theta to second derivatives of phi.
pub fn gauduchon_identity_check(jet: &StructureJet) -> GauduchonReport {
    let model = fundamental_form();
    let pairing = hodge_star(&jet.d_delta_phi_frame.wedge(&model)).coeffs()[0];
    let dphi2 = jet.d_phi_frame.norm2();
    let lhs = 7.0 * jet.delta_theta;
    let rel = 1.0 + lhs.abs();
    GauduchonReport {
        point: jet.point,
        residual: (lhs - (pairing - dphi2)).abs() / rel,
        plus_sign_residual: (lhs - (pairing + dphi2)).abs() / rel,
    }
}

/// The sharp torsion bound at one point.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TorsionBoundReport {
    pub point: [f64; 8],
    /// |T|^2 (full normalization).
    pub lhs: f64,
    /// (7/6)|theta|^2.
    pub rhs: f64,
    /// |T + (1/6) star(theta ^ phi)|^2 >= 0; vanishes exactly on the
    /// conformally parallel class.
    pub gap: f64,
    /// |lhs - rhs - gap|: the orthogonal splitting behind the bound, an
    /// exact identity.
    pub identity_residual: f64,
}

/// Evaluate the torsion lower bound |T|^2 >= (7/6)|theta|^2 and its defect.
pub fn torsion_bound_check(jet: &StructureJet) -> TorsionBoundReport {
    let model = fundamental_form();
    let lhs = jet.torsion_frame.norm2_full();
    let rhs = (7.0 / 6.0) * jet.theta_frame.norm2();
    let shift = hodge_star(&jet.theta_frame.wedge(&model)).scale(1.0 / 6.0);
    let gap = jet.torsion_frame.add(&shift).norm2_full();
    TorsionBoundReport {
        point: jet.point,
        lhs,
        rhs,
        gap,
        identity_residual: (lhs - rhs - gap).abs(),
    }
}

/// Residuals of the dilation pairing at the sampled points, with the
/// accept/reject verdict.
#[derive(Clone, Debug, serde::Serialize)]
pub struct KillingReport {
    /// max |(d psi - (1/2) T) . phi| over the points.
    pub spinor_residual: f64,
    /// max |theta + (12/7) d psi|.
    pub lee_residual: f64,
    /// max |T - (-delta phi + 2 star(d psi ^ phi))|.
    pub torsion_residual: f64,
    /// max residual of Scal = 8|d psi|^2 - (1/12)|T|^2 - 6 lap psi.
    pub scalar_residual: f64,
    /// True iff all four residuals are within tolerance.
    pub accepted: bool,
    pub tol: f64,
}

/// Check whether `psi` is a dilation function adapted to the field: the
/// Lee form must be -(12/7) d psi, which makes the remaining three
/// identities hold simultaneously.
pub fn killing_check<F: CoframeJetField + ?Sized>(
    field: &F,
    psi: &ScalarTrigField,
    points: &[[f64; 8]],
    tol: f64,
) -> Result<KillingReport> {
    let model = fundamental_form();
    let phi_s = fundamental_spinor()?;
    let mut spinor_residual: f64 = 0.0;
    let mut lee_residual: f64 = 0.0;
    let mut torsion_residual: f64 = 0.0;
    let mut scalar_residual: f64 = 0.0;
    for p in points {
        let jet = structure_jet(field, p)?;
        let pj = psi.jet2(p);
        let mut dpsi_coord = crate::exterior::Form::zero(1);
        for i in 0..8 {
            dpsi_coord.coeffs_mut()[i] = crate::jet::Jet1 {
                v: pj.d[i],
                d: pj.h[i],
            };
        }
        let dpsi = jet.to_frame(&dpsi_coord.value());

        let spinor_defect = clifford_form(&dpsi, &phi_s)
            .sub(&clifford_form(&jet.torsion_frame, &phi_s).scale(0.5));
        spinor_residual = spinor_residual.max(sup(&spinor_defect));

        lee_residual = lee_residual.max(
            jet.theta_frame
                .add(&dpsi.scale(12.0 / 7.0))
                .max_abs(),
        );

        let torsion_pred = jet
            .delta_phi_frame
            .neg()
            .add(&hodge_star(&dpsi.wedge(&model)).scale(2.0));
        torsion_residual =
            torsion_residual.max(jet.torsion_frame.sub(&torsion_pred).max_abs());

        let lap_psi = jet.codifferential_one_form(&dpsi_coord);
        let pred = 8.0 * dpsi.norm2() - jet.torsion_frame.norm2_full() / 12.0 - 6.0 * lap_psi;
        scalar_residual =
            scalar_residual.max((jet.scal - pred).abs() / (1.0 + jet.scal.abs()));
    }
    let accepted = spinor_residual <= tol
        && lee_residual <= tol
        && torsion_residual <= tol
        && scalar_residual <= tol;
    Ok(KillingReport {
        spinor_residual,
        lee_residual,
        torsion_residual,
        scalar_residual,
        accepted,
        tol,
    })
}
