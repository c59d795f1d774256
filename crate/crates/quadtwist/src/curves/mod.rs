//! Elliptic curve models over ℚ, exact point arithmetic over ℚ and ℚ(√d),
//! quadratic twists, the explicit 2-isogeny pair, division polynomials, and
//! torsion subgroups over ℚ and over quadratic fields.

mod divpoly;
mod field;
mod isogeny;
mod lutz_nagell;
mod model;
mod quadtorsion;
mod torsion;

pub use divpoly::division_polynomial;
pub use field::{FieldCtx, QuadCtx, QuadElem, RationalCtx};
pub use isogeny::{dual_isogeny, two_isogeny, IsogenyMap};
pub use lutz_nagell::lutz_nagell_torsion;
pub use model::{to_two_torsion_model, CurveModel, ModelMap, Point, TwoTorsionModel};
pub use quadtorsion::torsion_over_quadratic;
pub use torsion::{torsion_over_q, TorsionStructure};

use crate::arith::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CurveError {
    #[error("curve is singular")]
    SingularCurve,
    #[error("isogeny target is singular (a^2 = 4b)")]
    SingularIsogenyTarget,
    #[error("{0} is not a valid squarefree twist parameter")]
    NotSquarefree(Integer),
    #[error("points lie over different quadratic fields")]
    MixedFields,
    #[error("point does not satisfy the curve equation")]
    PointNotOnCurve,
    #[error("curve has no rational 2-torsion point")]
    NoRationalTwoTorsion,
    #[error("division polynomial index {0} outside the supported range 1..=24")]
    OutOfRange(u32),
}
