//! Second-order forward-mode jets in eight variables, and jet matrices.
//!
//! A [`Jet2`] stores a value, its gradient, and its symmetric Hessian; a
//! [`Jet1`] stores value and gradient. Arithmetic propagates derivatives
//! exactly, so fields built from polynomials, trigonometric terms and
//! exponentials have machine-precision jets with no finite differencing.

use crate::scalar::{Differentiable, Ring};
use std::ops::{Add, Mul, Neg, Sub};

pub const N: usize = 8;

/// Value and gradient.
#[derive(Copy, Clone, Debug)]
pub struct Jet1 {
    pub v: f64,
    pub d: [f64; N],
}

/// Value, gradient, and symmetric Hessian.
#[derive(Copy, Clone, Debug)]
pub struct Jet2 {
    pub v: f64,
    pub d: [f64; N],
    pub h: [[f64; N]; N],
}

impl Jet1 {
    pub fn constant(v: f64) -> Self {
        Jet1 { v, d: [0.0; N] }
    }

    /// The coordinate function x_i seeded at value `x`.
    pub fn variable(i: usize, x: f64) -> Self {
        let mut d = [0.0; N];
        d[i] = 1.0;
        Jet1 { v: x, d }
    }

    /// Compose with a scalar function given by value and derivative at v.
    pub fn map(self, f: f64, df: f64) -> Self {
        let mut d = [0.0; N];
        for i in 0..N {
            d[i] = df * self.d[i];
        }
        Jet1 { v: f, d }
    }
}

impl Jet2 {
    pub fn constant(v: f64) -> Self {
        Jet2 {
            v,
            d: [0.0; N],
            h: [[0.0; N]; N],
        }
    }

    pub fn variable(i: usize, x: f64) -> Self {
        let mut d = [0.0; N];
        d[i] = 1.0;
        Jet2 {
            v: x,
            d,
            h: [[0.0; N]; N],
        }
    }

    /// Compose with a scalar function given by value, first and second
    /// derivative at v (univariate chain rule).
    pub fn map(self, f: f64, df: f64, d2f: f64) -> Self {
        let mut d = [0.0; N];
        let mut h = [[0.0; N]; N];
        for i in 0..N {
            d[i] = df * self.d[i];
        }
        for i in 0..N {
            for j in 0..N {
                h[i][j] = df * self.h[i][j] + d2f * self.d[i] * self.d[j];
            }
        }
        Jet2 { v: f, d, h }
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.map(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.map(c, -s, -c)
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.map(e, e, e)
    }
}

impl Add for Jet1 {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.v += o.v;
        for i in 0..N {
            self.d[i] += o.d[i];
        }
        self
    }
}

impl Sub for Jet1 {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        self.v -= o.v;
        for i in 0..N {
            self.d[i] -= o.d[i];
        }
        self
    }
}

impl Neg for Jet1 {
    type Output = Self;
    fn neg(mut self) -> Self {
        self.v = -self.v;
        for i in 0..N {
            self.d[i] = -self.d[i];
        }
        self
    }
}

impl Mul for Jet1 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut d = [0.0; N];
        for i in 0..N {
            d[i] = self.d[i] * o.v + self.v * o.d[i];
        }
        Jet1 {
            v: self.v * o.v,
            d,
        }
    }
}

impl Add for Jet2 {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.v += o.v;
        for i in 0..N {
            self.d[i] += o.d[i];
            for j in 0..N {
                self.h[i][j] += o.h[i][j];
            }
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        self.v -= o.v;
        for i in 0..N {
            self.d[i] -= o.d[i];
            for j in 0..N {
                self.h[i][j] -= o.h[i][j];
            }
        }
        self
    }
}

impl Neg for Jet2 {
    type Output = Self;
    fn neg(mut self) -> Self {
        self.v = -self.v;
        for i in 0..N {
            self.d[i] = -self.d[i];
            for j in 0..N {
                self.h[i][j] = -self.h[i][j];
            }
        }
        self
    }
}

impl Mul for Jet2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Jet2::constant(self.v * o.v);
        for i in 0..N {
            out.d[i] = self.d[i] * o.v + self.v * o.d[i];
        }
        for i in 0..N {
            for j in 0..N {
                out.h[i][j] = self.h[i][j] * o.v
                    + self.v * o.h[i][j]
                    + self.d[i] * o.d[j]
                    + self.d[j] * o.d[i];
            }
        }
        out
    }
}

impl Ring for Jet1 {
    const ZERO: Self = Jet1 {
        v: 0.0,
        d: [0.0; N],
    };
    const ONE: Self = Jet1 {
        v: 1.0,
        d: [0.0; N],
    };

    fn from_f64(c: f64) -> Self {
        Jet1::constant(c)
    }

    fn scale(mut self, c: f64) -> Self {
        self.v *= c;
        for i in 0..N {
            self.d[i] *= c;
        }
        self
    }

    fn value(&self) -> f64 {
        self.v
    }

    fn is_zero(&self) -> bool {
        self.v == 0.0 && self.d.iter().all(|&x| x == 0.0)
    }
}

impl Ring for Jet2 {
    const ZERO: Self = Jet2 {
        v: 0.0,
        d: [0.0; N],
        h: [[0.0; N]; N],
    };
    const ONE: Self = Jet2 {
        v: 1.0,
        d: [0.0; N],
        h: [[0.0; N]; N],
    };

    fn from_f64(c: f64) -> Self {
        Jet2::constant(c)
    }

    fn scale(mut self, c: f64) -> Self {
        self.v *= c;
        for i in 0..N {
            self.d[i] *= c;
            for j in 0..N {
                self.h[i][j] *= c;
            }
        }
        self
    }

    fn value(&self) -> f64 {
        self.v
    }

    fn is_zero(&self) -> bool {
        self.v == 0.0
            && self.d.iter().all(|&x| x == 0.0)
            && self.h.iter().all(|r| r.iter().all(|&x| x == 0.0))
    }
}

impl Differentiable for Jet1 {
    type Lower = f64;

    fn partial(&self, i: usize) -> f64 {
        self.d[i]
    }

    fn truncate(&self) -> f64 {
        self.v
    }
}

impl Differentiable for Jet2 {
    type Lower = Jet1;

    /// d/dx_i as a first-order jet: its value is the i-th gradient entry
    /// and its gradient is the i-th Hessian row.
    fn partial(&self, i: usize) -> Jet1 {
        Jet1 {
            v: self.d[i],
            d: self.h[i],
        }
    }

    fn truncate(&self) -> Jet1 {
        Jet1 {
            v: self.v,
            d: self.d,
        }
    }
}

/// 8x8 matrices over any coefficient ring.
pub type Mat8<S> = [[S; 8]; 8];

pub fn mat_identity<S: Ring>() -> Mat8<S> {
    let mut m = [[S::ZERO; 8]; 8];
    for i in 0..8 {
        m[i][i] = S::ONE;
    }
    m
}

pub fn mat_from_f64<S: Ring>(a: &[[f64; 8]; 8]) -> Mat8<S> {
    let mut m = [[S::ZERO; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            m[i][j] = S::from_f64(a[i][j]);
        }
    }
    m
}

pub fn mat_value<S: Ring>(m: &Mat8<S>) -> [[f64; 8]; 8] {
    let mut a = [[0.0; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            a[i][j] = m[i][j].value();
        }
    }
    a
}

pub fn mat_truncate<S: Differentiable>(m: &Mat8<S>) -> Mat8<S::Lower> {
    let mut out = [[S::Lower::ZERO; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            out[i][j] = m[i][j].truncate();
        }
    }
    out
}

pub fn mat_mul<S: Ring>(a: &Mat8<S>, b: &Mat8<S>) -> Mat8<S> {
    let mut out = [[S::ZERO; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let mut acc = S::ZERO;
            for k in 0..8 {
                acc = acc + a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_transpose<S: Ring>(a: &Mat8<S>) -> Mat8<S> {
    let mut out = [[S::ZERO; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            out[i][j] = a[j][i];
        }
    }
    out
}

fn mat_sub<S: Ring>(a: &Mat8<S>, b: &Mat8<S>) -> Mat8<S> {
    let mut out = [[S::ZERO; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            out[i][j] = a[i][j] - b[i][j];
        }
    }
    out
}

/// Matrix inverse over a jet ring.
///
/// Inverts the value part with LU, then runs two Newton-Schulz steps
/// N <- N(2I - MN) in jet arithmetic. The residual I - MN has vanishing
/// value part after the lift, so it is nilpotent in the truncated ring and
/// two squarings kill it through second order: the result is the exact jet
/// inverse, not an approximation.
///
/// Returns `None` when the value part is singular.
pub fn mat_inverse<S: Ring>(m: &Mat8<S>) -> Option<Mat8<S>> {
    let v = mat_value(m);
    let nv = nalgebra::SMatrix::<f64, 8, 8>::from_fn(|i, j| v[i][j]).try_inverse()?;
    let mut inv0 = [[0.0; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            inv0[i][j] = nv[(i, j)];
        }
    }
    let mut n = mat_from_f64::<S>(&inv0);
    let two_i = {
        let mut t = [[S::ZERO; 8]; 8];
        for i in 0..8 {
            t[i][i] = S::from_f64(2.0);
        }
        t
    };
    for _ in 0..2 {
        let mn = mat_mul(m, &n);
        n = mat_mul(&n, &mat_sub(&two_i, &mn));
    }
    Some(n)
}

/// Largest singular value over smallest, of the value part.
pub fn mat_condition<S: Ring>(m: &Mat8<S>) -> f64 {
    let v = mat_value(m);
    let sv = nalgebra::SMatrix::<f64, 8, 8>::from_fn(|i, j| v[i][j])
        .svd(false, false)
        .singular_values;
    let max = sv.iter().cloned().fold(f64::MIN, f64::max);
    let min = sv.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

pub fn mat_det_value<S: Ring>(m: &Mat8<S>) -> f64 {
    let v = mat_value(m);
    nalgebra::SMatrix::<f64, 8, 8>::from_fn(|i, j| v[i][j]).determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn jet2_product_rule() {
        // f = x0^2 * sin(x1) at x0=0.7, x1=0.3
        let x0 = Jet2::variable(0, 0.7);
        let x1 = Jet2::variable(1, 0.3);
        let f = x0 * x0 * x1.sin();
        assert!(close(f.v, 0.49 * 0.3f64.sin()));
        assert!(close(f.d[0], 1.4 * 0.3f64.sin()));
        assert!(close(f.d[1], 0.49 * 0.3f64.cos()));
        assert!(close(f.h[0][0], 2.0 * 0.3f64.sin()));
        assert!(close(f.h[0][1], 1.4 * 0.3f64.cos()));
        assert!(close(f.h[0][1], f.h[1][0]));
        assert!(close(f.h[1][1], -0.49 * 0.3f64.sin()));
    }

    #[test]
    fn jet_matrix_inverse_is_exact() {
        // random-ish test matrix with nontrivial jets
        let mut m: Mat8<Jet2> = mat_identity();
        for i in 0..8 {
            for j in 0..8 {
                let t = Jet2::variable((i + j) % 8, 0.1 + 0.05 * (i as f64) - 0.03 * (j as f64));
                m[i][j] = m[i][j] + t.sin().scale(0.08 + 0.01 * ((i * j) as f64 % 3.0));
            }
        }
        let inv = mat_inverse(&m).unwrap();
        let prod = mat_mul(&m, &inv);
        for i in 0..8 {
            for j in 0..8 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod[i][j].v - want).abs() < 1e-13);
                for a in 0..8 {
                    assert!(prod[i][j].d[a].abs() < 1e-12);
                    for b in 0..8 {
                        assert!(prod[i][j].h[a][b].abs() < 1e-11);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_shift_consistency() {
        let x0 = Jet2::variable(0, 0.4);
        let x2 = Jet2::variable(2, -0.2);
        let f = (x0 * x2).exp();
        // d/dx2 as Jet1 must match the stored gradient/Hessian slices
        let p = f.partial(2);
        assert!(close(p.v, f.d[2]));
        for i in 0..8 {
            assert!(close(p.d[i], f.h[2][i]));
        }
    }
}
