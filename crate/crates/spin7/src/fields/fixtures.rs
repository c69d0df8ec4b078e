//! Coframe fields used as test geometries, plus their JSON description.
//!
//! Every built-in field is a trigonometric polynomial in the coordinates, so
//! its second-order jets are exact: residuals measured on these fixtures
//! probe the formulas, not a differentiation scheme. A finite-difference
//! adapter is provided for coframes only available as a value function.

use crate::jet::{Jet2, Mat8};
use crate::scalar::Ring;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CoframeJetField;

/// One term `amplitude * sin(frequency . x)`.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct TrigTerm {
    pub amplitude: f64,
    pub frequency: [f64; 8],
}

impl TrigTerm {
    pub fn eval(&self, x: &[f64; 8]) -> Jet2 {
        let mut phase = Jet2::constant(0.0);
        for j in 0..8 {
            phase = phase + Jet2::variable(j, x[j]).scale(self.frequency[j]);
        }
        phase.sin().scale(self.amplitude)
    }
}

/// A scalar trigonometric polynomial `scale * sum of terms`, with exact
/// second-order jets.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct ScalarTrigField {
    pub terms: Vec<TrigTerm>,
    pub scale: f64,
}

impl ScalarTrigField {
    pub fn jet2(&self, x: &[f64; 8]) -> Jet2 {
        let mut acc = Jet2::constant(0.0);
        for t in &self.terms {
            acc = acc + t.eval(x);
        }
        acc.scale(self.scale)
    }

    pub fn value(&self, x: &[f64; 8]) -> f64 {
        self.jet2(x).v
    }

    /// Gradient as a plain vector.
    pub fn gradient(&self, x: &[f64; 8]) -> [f64; 8] {
        self.jet2(x).d
    }
}

/// A matrix of trigonometric terms; entry (row, col) collects every term
/// listed for that position.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct MatrixTrigField {
    pub entries: Vec<(usize, usize, TrigTerm)>,
}

impl MatrixTrigField {
    fn jet2(&self, x: &[f64; 8]) -> Mat8<Jet2> {
        let mut m = [[Jet2::ZERO; 8]; 8];
        for (r, c, t) in &self.entries {
            m[*r][*c] = m[*r][*c] + t.eval(x);
        }
        m
    }
}

/// The built-in coframe fields.
#[derive(Clone, Debug)]
pub enum Fixture {
    /// The constant identity coframe: flat metric, constant fundamental form.
    Flat,
    /// Conformal scaling `e^f` of the identity coframe.
    Conformal(ScalarTrigField),
    /// Identity plus `epsilon` times a trigonometric matrix field.
    Perturbed(MatrixTrigField, f64),
}

impl CoframeJetField for Fixture {
    fn coframe(&self, x: &[f64; 8]) -> Mat8<Jet2> {
        match self {
            Fixture::Flat => {
                let mut m = [[Jet2::ZERO; 8]; 8];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = Jet2::ONE;
                }
                m
            }
            Fixture::Conformal(f) => {
                let s = f.jet2(x).exp();
                let mut m = [[Jet2::ZERO; 8]; 8];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = s;
                }
                m
            }
            Fixture::Perturbed(a, eps) => {
                let mut m = a.jet2(x);
                for (i, row) in m.iter_mut().enumerate() {
                    for entry in row.iter_mut() {
                        *entry = entry.scale(*eps);
                    }
                    row[i] = row[i] + Jet2::ONE;
                }
                m
            }
        }
    }
}

/// The identity coframe.
pub fn fixture_flat() -> Fixture {
    Fixture::Flat
}

/// Conformal coframe `e^f` times the identity.
pub fn fixture_conformal(f: ScalarTrigField) -> Fixture {
    Fixture::Conformal(f)
}

/// Coframe `I + epsilon A` for a trigonometric matrix field A.
pub fn fixture_perturbed(a: MatrixTrigField, epsilon: f64) -> Fixture {
    Fixture::Perturbed(a, epsilon)
}

/// The default conformal factor: three incommensurate sine terms with
/// nonvanishing gradient at the origin, overall amplitude `epsilon`.
pub fn default_conformal_field(epsilon: f64) -> ScalarTrigField {
    let terms = vec![
        TrigTerm {
            amplitude: 1.0,
            frequency: [1.0, 0.0, 0.0, 0.5, 0.0, 0.0, -0.3, 0.0],
        },
        TrigTerm {
            amplitude: 0.8,
            frequency: [0.0, 1.3, 0.0, 0.0, 0.7, 0.0, 0.0, 0.4],
        },
        TrigTerm {
            amplitude: 0.6,
            frequency: [0.3, 0.0, -1.1, 0.0, 0.0, 0.9, 0.0, 0.0],
        },
    ];
    ScalarTrigField {
        terms,
        scale: epsilon,
    }
}

/// The default conformal fixture built from [`default_conformal_field`].
pub fn default_conformal(epsilon: f64) -> Fixture {
    Fixture::Conformal(default_conformal_field(epsilon))
}

/// A generic perturbation: one seeded sine term per matrix entry. Seeded so
/// runs are reproducible; the resulting structure has all torsion components
/// present at order `epsilon`.
pub fn default_perturbed(epsilon: f64, seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(64);
    for r in 0..8 {
        for c in 0..8 {
            let mut frequency = [0.0; 8];
            for f in frequency.iter_mut() {
                *f = rng.gen_range(-1.0..1.0);
            }
            let amplitude = rng.gen_range(0.4..1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            entries.push((
                r,
                c,
                TrigTerm {
                    amplitude,
                    frequency,
                },
            ));
        }
    }
    Fixture::Perturbed(MatrixTrigField { entries }, epsilon)
}

/// JSON description of a fixture.
///
/// ```json
/// {"kind": "flat"}
/// {"kind": "conformal", "epsilon": 0.01,
///  "terms": [{"amplitude": 1.0, "frequency": [1, 0, 0, 0.5, 0, 0, -0.3, 0]}]}
/// {"kind": "perturbed", "epsilon": 0.01,
///  "terms": [{"axes": [0, 3], "amplitude": 0.7, "frequency": [0.2, 1.1]}]}
/// ```
///
/// `frequency` lists up to eight components, zero-padded on the right. For
/// `perturbed`, `axes` names the matrix entry `[row, col]` the term belongs
/// to; for `conformal` it must be absent or empty. Omitting `terms` selects
/// the built-in default field for the kind.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct FixtureSpec {
    pub kind: String,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct TermSpec {
    #[serde(default)]
    pub axes: Vec<usize>,
    pub amplitude: f64,
    pub frequency: Vec<f64>,
}

impl TermSpec {
    fn trig(&self) -> Result<TrigTerm> {
        if self.frequency.len() > 8 {
            return Err(Error::BadFixtureData(format!(
                "frequency has {} components, at most 8 allowed",
                self.frequency.len()
            )));
        }
        let mut frequency = [0.0; 8];
        frequency[..self.frequency.len()].copy_from_slice(&self.frequency);
        if !frequency.iter().all(|f| f.is_finite()) || !self.amplitude.is_finite() {
            return Err(Error::BadFixtureData("non-finite term".into()));
        }
        Ok(TrigTerm {
            amplitude: self.amplitude,
            frequency,
        })
    }
}

impl FixtureSpec {
    pub fn build(&self) -> Result<Fixture> {
        let epsilon = self.epsilon.unwrap_or(0.01);
        if !epsilon.is_finite() {
            return Err(Error::BadFixtureData("non-finite epsilon".into()));
        }
        match self.kind.as_str() {
            "flat" => Ok(Fixture::Flat),
            "conformal" => {
                if self.terms.is_empty() {
                    return Ok(default_conformal(epsilon));
                }
                let mut terms = Vec::new();
                for t in &self.terms {
                    if !t.axes.is_empty() {
                        return Err(Error::BadFixtureData(
                            "conformal terms must not carry axes".into(),
                        ));
                    }
                    terms.push(t.trig()?);
                }
                Ok(Fixture::Conformal(ScalarTrigField {
                    terms,
                    scale: epsilon,
                }))
            }
            "perturbed" => {
                if self.terms.is_empty() {
                    return Ok(default_perturbed(epsilon, self.seed.unwrap_or(7)));
                }
                let mut entries = Vec::new();
                for t in &self.terms {
                    if t.axes.len() != 2 || t.axes[0] >= 8 || t.axes[1] >= 8 {
                        return Err(Error::BadFixtureData(format!(
                            "perturbed term needs axes [row, col] below 8, got {:?}",
                            t.axes
                        )));
                    }
                    entries.push((t.axes[0], t.axes[1], t.trig()?));
                }
                Ok(Fixture::Perturbed(MatrixTrigField { entries }, epsilon))
            }
            k => Err(Error::BadFixtureData(format!("unknown kind {:?}", k))),
        }
    }

    pub fn from_json(text: &str) -> Result<FixtureSpec> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A coframe field rescaled by `e^f`: the conformal change of an arbitrary
/// base field.
pub struct ScaledCoframe<'a, F: CoframeJetField + ?Sized> {
    pub base: &'a F,
    pub factor: &'a ScalarTrigField,
}

impl<F: CoframeJetField + ?Sized> CoframeJetField for ScaledCoframe<'_, F> {
    fn coframe(&self, x: &[f64; 8]) -> Mat8<Jet2> {
        let s = self.factor.jet2(x).exp();
        let mut m = self.base.coframe(x);
        for row in m.iter_mut() {
            for entry in row.iter_mut() {
                *entry = *entry * s;
            }
        }
        m
    }
}

/// Jets by central finite differences of a coframe value function, for
/// fields without analytic derivatives. With step h the first derivatives
/// carry O(h^2) truncation error and the second derivatives additionally
/// O(eps / h^2) roundoff; the default h = 1e-5 balances these to roughly
/// 1e-6 accuracy in the Hessian, so downstream residuals are limited by the
/// differencing, not the formulas.
pub struct FiniteDifferenceCoframe<F: Fn(&[f64; 8]) -> [[f64; 8]; 8]> {
    pub value: F,
    pub step: f64,
}

impl<F: Fn(&[f64; 8]) -> [[f64; 8]; 8]> FiniteDifferenceCoframe<F> {
    pub fn new(value: F) -> Self {
        FiniteDifferenceCoframe { value, step: 1e-5 }
    }
}

impl<F: Fn(&[f64; 8]) -> [[f64; 8]; 8]> CoframeJetField for FiniteDifferenceCoframe<F> {
    fn coframe(&self, x: &[f64; 8]) -> Mat8<Jet2> {
        let h = self.step;
        let f = &self.value;
        let shift = |i: usize, s: f64| {
            let mut y = *x;
            y[i] += s;
            y
        };
        let shift2 = |i: usize, si: f64, j: usize, sj: f64| {
            let mut y = *x;
            y[i] += si;
            y[j] += sj;
            y
        };
        let base = f(x);
        let mut plus = [[[0.0; 8]; 8]; 8];
        let mut minus = [[[0.0; 8]; 8]; 8];
        for i in 0..8 {
            plus[i] = f(&shift(i, h));
            minus[i] = f(&shift(i, -h));
        }
        let mut m = [[Jet2::ZERO; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let mut jet = Jet2::constant(base[a][b]);
                for i in 0..8 {
                    jet.d[i] = (plus[i][a][b] - minus[i][a][b]) / (2.0 * h);
                    jet.h[i][i] = (plus[i][a][b] - 2.0 * base[a][b] + minus[i][a][b]) / (h * h);
                }
                m[a][b] = jet;
            }
        }
        for i in 0..8 {
            for j in (i + 1)..8 {
                let pp = f(&shift2(i, h, j, h));
                let pm = f(&shift2(i, h, j, -h));
                let mp = f(&shift2(i, -h, j, h));
                let mm = f(&shift2(i, -h, j, -h));
                for a in 0..8 {
                    for b in 0..8 {
                        let v = (pp[a][b] - pm[a][b] - mp[a][b] + mm[a][b]) / (4.0 * h * h);
                        m[a][b].h[i][j] = v;
                        m[a][b].h[j][i] = v;
                    }
                }
            }
        }
        m
    }
}

/// The origin followed by `n` points drawn uniformly from the cube
/// [-1/2, 1/2]^8, reproducibly from the seed.
pub fn sample_points(seed: u64, n: usize) -> Vec<[f64; 8]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(n + 1);
    pts.push([0.0; 8]);
    for _ in 0..n {
        let mut p = [0.0; 8];
        for c in p.iter_mut() {
            *c = rng.gen_range(-0.5..0.5);
        }
        pts.push(p);
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_jets_match_difference_quotients() {
        let f = ScalarTrigField {
            terms: vec![TrigTerm {
                amplitude: 0.7,
                frequency: [1.0, -0.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.3],
            }],
            scale: 1.0,
        };
        let x = [0.1, 0.2, 0.0, 0.0, -0.3, 0.0, 0.0, 0.4];
        let jet = f.jet2(&x);
        let h = 1e-6;
        for i in 0..8 {
            let mut xp = x;
            xp[i] += h;
            let mut xm = x;
            xm[i] -= h;
            let fd = (f.value(&xp) - f.value(&xm)) / (2.0 * h);
            assert!((fd - jet.d[i]).abs() < 1e-8);
        }
    }

    #[test]
    fn fixture_spec_roundtrip() {
        let text = r#"{"kind":"perturbed","epsilon":0.02,
            "terms":[{"axes":[1,4],"amplitude":0.5,"frequency":[1.0,0.0,2.0]}]}"#;
        let spec = FixtureSpec::from_json(text).unwrap();
        let fix = spec.build().unwrap();
        match fix {
            Fixture::Perturbed(m, eps) => {
                assert_eq!(eps, 0.02);
                assert_eq!(m.entries.len(), 1);
                assert_eq!(m.entries[0].2.frequency[2], 2.0);
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn fixture_spec_rejects_bad_axes() {
        let text = r#"{"kind":"perturbed","terms":[{"axes":[9,0],"amplitude":1.0,"frequency":[1.0]}]}"#;
        assert!(FixtureSpec::from_json(text).unwrap().build().is_err());
    }

    #[test]
    fn sample_points_start_at_origin() {
        let pts = sample_points(7, 4);
        assert_eq!(pts.len(), 5);
        assert_eq!(pts[0], [0.0; 8]);
        assert_eq!(pts, sample_points(7, 4));
    }
}
