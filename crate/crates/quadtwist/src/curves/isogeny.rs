//! The 2-isogeny pair attached to the rational 2-torsion point (0, 0) of
//! y² = x(x² + ax + b), and its dual; their composition is multiplication
//! by 2.

use super::field::{FieldCtx, QuadCtx, RationalCtx};
use super::model::{Point, TwoTorsionModel};
use super::CurveError;
use crate::arith::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A 2-isogeny with kernel {O, (0,0)}:
/// (x, y) ↦ (sx·(x + a + b/x), sy·(y − b y / x²)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsogenyMap {
    /// Domain curve y² = x(x² + ax + b).
    pub domain: TwoTorsionModel,
    /// Codomain curve.
    pub codomain: TwoTorsionModel,
    sx: Rational,
    sy: Rational,
}

/// The 2-isogeny φ: E(a,b) → E′(−2a, a² − 4b) with kernel generated by (0,0).
pub fn two_isogeny(e: &TwoTorsionModel) -> Result<(TwoTorsionModel, IsogenyMap), CurveError> {
    let a2 = &e.a * &e.a;
    let bp = &a2 - rat(4, 1) * &e.b;
    if bp.is_zero() {
        return Err(CurveError::SingularIsogenyTarget);
    }
    let target = TwoTorsionModel::new(rat(-2, 1) * &e.a, bp)?;
    let map = IsogenyMap {
        domain: e.clone(),
        codomain: target.clone(),
        sx: rat(1, 1),
        sy: rat(1, 1),
    };
    Ok((target, map))
}

/// The dual isogeny φ̂: E′ → E, with φ̂ ∘ φ = [2] on E.
pub fn dual_isogeny(e: &TwoTorsionModel) -> Result<IsogenyMap, CurveError> {
    let (target, _) = two_isogeny(e)?;
    Ok(IsogenyMap {
        domain: target,
        codomain: e.clone(),
        sx: rat(1, 4),
        sy: rat(1, 8),
    })
}

impl IsogenyMap {
    fn apply_xy<C: FieldCtx>(
        &self,
        ctx: &C,
        x: &C::Elem,
        y: &C::Elem,
    ) -> Option<(C::Elem, C::Elem)> {
        let a = ctx.from_rational(&self.domain.a);
        let b = ctx.from_rational(&self.domain.b);
        let x_inv = ctx.inv(x)?; // None exactly on the kernel point (0, 0)
        // x' = sx (x + a + b/x)
        let xi = ctx.mul(
            &ctx.from_rational(&self.sx),
            &ctx.add(&ctx.add(x, &a), &ctx.mul(&b, &x_inv)),
        );
        // y' = sy (y − b y / x²)
        let yi = ctx.mul(
            &ctx.from_rational(&self.sy),
            &ctx.sub(y, &ctx.mul(&ctx.mul(&b, y), &ctx.mul(&x_inv, &x_inv))),
        );
        Some((xi, yi))
    }

    /// Applies the isogeny; kernel points map to the point at infinity.
    pub fn apply(&self, p: &Point) -> Result<Point, CurveError> {
        if !self.domain.curve_model().contains(p) {
            return Err(CurveError::PointNotOnCurve);
        }
        Ok(match p {
            Point::Infinity => Point::Infinity,
            Point::Rational { x, y } => match self.apply_xy(&RationalCtx, x, y) {
                None => Point::Infinity,
                Some((x, y)) => Point::Rational { x, y },
            },
            Point::Quadratic { x, y } => {
                let ctx = QuadCtx { d: x.d.clone() };
                match self.apply_xy(&ctx, x, y) {
                    None => Point::Infinity,
                    Some((x, y)) => Point::Quadratic { x, y }.simplify(),
                }
            }
        })
    }
}
