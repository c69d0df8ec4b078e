//! Numerical kernel for Spin(7) geometry on 8-dimensional space.
//!
//! The crate is organized in layers:
//!
//! * [`scalar`] and [`jet`] provide the coefficient rings: plain `f64` and
//!   truncated Taylor jets carrying exact first and second partial
//!   derivatives in the eight coordinates.
//! * [`exterior`] is the exterior algebra over 8-space: alternating forms
//!   with bitmask-indexed coefficient arrays, wedge, interior product,
//!   Hodge star, inner products, pullbacks, and the exterior derivative
//!   (which lowers the jet order by one).
//! * [`clifford`] realizes the real Clifford algebra Cl(8) on 16-component
//!   spinors with a chiral 8+8 split, and the distinguished unit spinor
//!   annihilated by the 21-dimensional part of the 2-forms.
//! * [`algebra`] holds the fundamental 4-form, the triple cross product,
//!   the irreducible projectors on degrees 2, 3, 4, the Lee form, and the
//!   torsion 3-form of the canonical metric connection, both in closed
//!   form and as a 56x56 linear solve.
//! * [`fields`] turns a coframe field with exact second-order jets into
//!   pointwise structure data: metric, torsion, Christoffel symbols,
//!   curvature, and the spin connection.
//! * [`analysis`] runs the theorem-level checks: structure classification,
//!   conformal transformation laws, scalar curvature formulas, the
//!   Schroedinger-Lichnerowicz spinor identities, and the Killing spinor
//!   equivalence.
//! * [`report`] defines the JSON report emitted by the `spin7` binary.
//!
//! Conventions (orientation, star signs, Clifford sign, spinor sign) are
//! collected in `docs/CONVENTIONS.md` at the repository root. Everything
//! here is pointwise, double precision, and deterministic.

pub mod algebra;
pub mod analysis;
pub mod clifford;
pub mod exterior;
pub mod fields;
pub mod jet;
pub mod report;
pub mod scalar;

/// A tangent or cotangent vector in components over the eight axes.
pub type Vector8 = [f64; 8];

/// Errors surfaced by fallible operations across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported degree {0} for {1}")]
    UnsupportedDegree(usize, &'static str),
    #[error("wedge degree overflow: {0} + {1} > 8")]
    DegreeOverflow(usize, usize),
    #[error("interior product of a degree-0 form")]
    InteriorOfScalar,
    #[error("inner product degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("coframe matrix is singular or orientation-reversing at {0:?}")]
    BadCoframe([f64; 8]),
    #[error("torsion system is rank deficient (rank {0} of 56); the assembly is inconsistent")]
    TorsionRankDeficient(usize),
    #[error("invariant spinor kernel has dimension {0}, expected 1; gamma table and orientation disagree")]
    SpinorKernelDimension(usize),
    #[error("invalid form data: {0}")]
    BadFormData(String),
    #[error("invalid fixture data: {0}")]
    BadFixtureData(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
