//! Weierstrass models, the y² = x(x² + ax + b) form, points over ℚ and
//! ℚ(√d), and the exact group law.

use super::field::{FieldCtx, QuadCtx, QuadElem, RationalCtx};
use super::CurveError;
use crate::arith::{factorize, squarefree_part, Integer, Rational};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// General Weierstrass curve y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

/// A point on a curve: at infinity, rational, or with coordinates in ℚ(√d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Rational { x: Rational, y: Rational },
    Quadratic { x: QuadElem, y: QuadElem },
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// The quadratic field the point lives in, if its coordinates are
    /// irrational.
    pub fn field_d(&self) -> Option<&Integer> {
        match self {
            Point::Quadratic { x, .. } => Some(&x.d),
            _ => None,
        }
    }

    /// Embeds a rational point into ℚ(√d) coordinates.
    pub fn to_quadratic(&self, d: &Integer) -> Point {
        match self {
            Point::Rational { x, y } => Point::Quadratic {
                x: QuadElem::from_rational(x.clone(), d),
                y: QuadElem::from_rational(y.clone(), d),
            },
            other => other.clone(),
        }
    }

    /// Collapses quadratic coordinates with zero irrational part back to a
    /// rational point.
    pub fn simplify(&self) -> Point {
        match self {
            Point::Quadratic { x, y } if x.is_rational() && y.is_rational() => Point::Rational {
                x: x.u.clone(),
                y: y.u.clone(),
            },
            other => other.clone(),
        }
    }
}

struct Coeffs<E> {
    a1: E,
    a2: E,
    a3: E,
    a4: E,
    a6: E,
}

impl CurveModel {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Self {
        CurveModel { a1, a2, a3, a4, a6 }
    }

    pub fn from_i64(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Self {
        CurveModel::new(rat(a1), rat(a2), rat(a3), rat(a4), rat(a6))
    }

    pub fn b2(&self) -> Rational {
        &self.a1 * &self.a1 + rat(4) * &self.a2
    }

    pub fn b4(&self) -> Rational {
        rat(2) * &self.a4 + &self.a1 * &self.a3
    }

    pub fn b6(&self) -> Rational {
        &self.a3 * &self.a3 + rat(4) * &self.a6
    }

    pub fn b8(&self) -> Rational {
        &self.a1 * &self.a1 * &self.a6 + rat(4) * &self.a2 * &self.a6
            - &self.a1 * &self.a3 * &self.a4
            + &self.a2 * &self.a3 * &self.a3
            - &self.a4 * &self.a4
    }

    pub fn discriminant(&self) -> Rational {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -&b2 * &b2 * &b8 - rat(8) * &b4 * &b4 * &b4 - rat(27) * &b6 * &b6
            + rat(9) * &b2 * &b4 * &b6
    }

    pub fn c4(&self) -> Rational {
        let (b2, b4) = (self.b2(), self.b4());
        &b2 * &b2 - rat(24) * &b4
    }

    pub fn j_invariant(&self) -> Option<Rational> {
        let disc = self.discriminant();
        if disc.is_zero() {
            return None;
        }
        let c4 = self.c4();
        Some(&c4 * &c4 * &c4 / disc)
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.discriminant().is_zero()
    }

    fn coeffs_in<C: FieldCtx>(&self, ctx: &C) -> Coeffs<C::Elem> {
        Coeffs {
            a1: ctx.from_rational(&self.a1),
            a2: ctx.from_rational(&self.a2),
            a3: ctx.from_rational(&self.a3),
            a4: ctx.from_rational(&self.a4),
            a6: ctx.from_rational(&self.a6),
        }
    }

    fn on_curve_xy<C: FieldCtx>(&self, ctx: &C, x: &C::Elem, y: &C::Elem) -> bool {
        let c = self.coeffs_in(ctx);
        // y² + a1 xy + a3 y − x³ − a2 x² − a4 x − a6 = 0
        let lhs = ctx.add(
            &ctx.mul(y, y),
            &ctx.add(&ctx.mul(&ctx.mul(&c.a1, x), y), &ctx.mul(&c.a3, y)),
        );
        let x2 = ctx.mul(x, x);
        let rhs = ctx.add(
            &ctx.mul(&x2, x),
            &ctx.add(
                &ctx.mul(&c.a2, &x2),
                &ctx.add(&ctx.mul(&c.a4, x), &c.a6),
            ),
        );
        ctx.is_zero(&ctx.sub(&lhs, &rhs))
    }

    /// Exact curve-membership test.
    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Rational { x, y } => self.on_curve_xy(&RationalCtx, x, y),
            Point::Quadratic { x, y } => {
                if x.d != y.d {
                    return false;
                }
                let ctx = QuadCtx { d: x.d.clone() };
                self.on_curve_xy(&ctx, x, y)
            }
        }
    }

    fn add_xy<C: FieldCtx>(
        &self,
        ctx: &C,
        x1: &C::Elem,
        y1: &C::Elem,
        x2: &C::Elem,
        y2: &C::Elem,
    ) -> Option<(C::Elem, C::Elem)> {
        let c = self.coeffs_in(ctx);
        let (lambda, nu) = if x1 == x2 {
            // -(P) has y' = -y - a1 x - a3; P + (-P) = O
            let neg_y = ctx.sub(&ctx.neg(y2), &ctx.add(&ctx.mul(&c.a1, x2), &c.a3));
            if *y1 == neg_y {
                return None;
            }
            // doubling
            let x1sq = ctx.mul(x1, x1);
            let three = ctx.from_rational(&rat(3));
            let two = ctx.from_rational(&rat(2));
            let num = ctx.sub(
                &ctx.add(
                    &ctx.mul(&three, &x1sq),
                    &ctx.add(&ctx.mul(&two, &ctx.mul(&c.a2, x1)), &c.a4),
                ),
                &ctx.mul(&c.a1, y1),
            );
            let den = ctx.add(&ctx.mul(&two, y1), &ctx.add(&ctx.mul(&c.a1, x1), &c.a3));
            let lambda = ctx.mul(&num, &ctx.inv(&den)?);
            // nu from the tangent line: nu = y1 - lambda x1
            let nu = ctx.sub(y1, &ctx.mul(&lambda, x1));
            (lambda, nu)
        } else {
            let num = ctx.sub(y2, y1);
            let den = ctx.sub(x2, x1);
            let lambda = ctx.mul(&num, &ctx.inv(&den)?);
            let nu = ctx.sub(y1, &ctx.mul(&lambda, x1));
            (lambda, nu)
        };
        // x3 = λ² + a1 λ − a2 − x1 − x2
        let x3 = ctx.sub(
            &ctx.sub(
                &ctx.add(&ctx.mul(&lambda, &lambda), &ctx.mul(&c.a1, &lambda)),
                &c.a2,
            ),
            &ctx.add(x1, x2),
        );
        // y3 = −(λ + a1) x3 − ν − a3
        let y3 = ctx.sub(
            &ctx.neg(&ctx.mul(&ctx.add(&lambda, &c.a1), &x3)),
            &ctx.add(&nu, &c.a3),
        );
        Some((x3, y3))
    }

    /// Chord-tangent addition. Rational points are embedded into ℚ(√d) when
    /// mixed with quadratic ones; points over distinct quadratic fields are
    /// rejected.
    pub fn add_points(&self, p: &Point, q: &Point) -> Result<Point, CurveError> {
        if !self.contains(p) || !self.contains(q) {
            return Err(CurveError::PointNotOnCurve);
        }
        match (p.field_d(), q.field_d()) {
            (Some(d1), Some(d2)) if d1 != d2 => return Err(CurveError::MixedFields),
            _ => {}
        }
        let result = match (p, q) {
            (Point::Infinity, other) | (other, Point::Infinity) => other.clone(),
            (Point::Rational { x: x1, y: y1 }, Point::Rational { x: x2, y: y2 }) => {
                match self.add_xy(&RationalCtx, x1, y1, x2, y2) {
                    None => Point::Infinity,
                    Some((x, y)) => Point::Rational { x, y },
                }
            }
            _ => {
                let d = p.field_d().or(q.field_d()).unwrap().clone();
                let (pq, qq) = (p.to_quadratic(&d), q.to_quadratic(&d));
                let ctx = QuadCtx { d };
                match (&pq, &qq) {
                    (Point::Quadratic { x: x1, y: y1 }, Point::Quadratic { x: x2, y: y2 }) => {
                        match self.add_xy(&ctx, x1, y1, x2, y2) {
                            None => Point::Infinity,
                            Some((x, y)) => Point::Quadratic { x, y }.simplify(),
                        }
                    }
                    _ => unreachable!(),
                }
            }
        };
        Ok(result)
    }

    pub fn negate(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Rational { x, y } => Point::Rational {
                x: x.clone(),
                y: -(y.clone()) - &self.a1 * x - &self.a3,
            },
            Point::Quadratic { x, y } => {
                let ctx = QuadCtx { d: x.d.clone() };
                let ax = ctx.mul(&ctx.from_rational(&self.a1), x);
                Point::Quadratic {
                    x: x.clone(),
                    y: y.neg().sub(&ax).sub(&ctx.from_rational(&self.a3)),
                }
            }
        }
    }

    /// [k]P by double-and-add; negative k allowed.
    pub fn scalar_mul(&self, k: i64, p: &Point) -> Result<Point, CurveError> {
        if !self.contains(p) {
            return Err(CurveError::PointNotOnCurve);
        }
        let (mut k, mut base) = if k < 0 {
            (-k as u64, self.negate(p))
        } else {
            (k as u64, p.clone())
        };
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add_points(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Exact order of a point if it is at most `cap`; None otherwise.
    pub fn order_of(&self, p: &Point, cap: u32) -> Result<Option<u32>, CurveError> {
        if !self.contains(p) {
            return Err(CurveError::PointNotOnCurve);
        }
        let mut acc = p.clone();
        for k in 1..=cap {
            if acc.is_infinity() {
                return Ok(Some(k));
            }
            acc = self.add_points(&acc, p)?;
        }
        Ok(None)
    }

    /// Scales (x, y) ↦ (u²x, u³y) with the least u making all aᵢ integral.
    ///
    /// Since aᵢ scales by uⁱ, the minimal u needs p-adic valuation
    /// max_i ⌈v_p(den aᵢ)/i⌉ at every prime p of the denominators — usually
    /// much less than the plain lcm. Falls back to the lcm when a denominator
    /// resists factoring.
    pub fn integral_model(&self) -> (CurveModel, Integer) {
        let dens = [
            (self.a1.denom(), 1u32),
            (self.a2.denom(), 2),
            (self.a3.denom(), 3),
            (self.a4.denom(), 4),
            (self.a6.denom(), 6),
        ];
        let mut l = BigInt::one();
        for (den, _) in &dens {
            l = l.lcm(den);
        }
        let u = match crate::arith::factorize(&l) {
            Ok(f) => {
                let mut u = BigInt::one();
                for (p, _) in &f.factors {
                    let mut need = 0u32;
                    for (den, w) in &dens {
                        let mut e = 0u32;
                        let mut rem = (*den).clone();
                        while (&rem % p).is_zero() {
                            rem /= p;
                            e += 1;
                        }
                        need = need.max(e.div_ceil(*w));
                    }
                    u *= p.pow(need);
                }
                u
            }
            Err(_) => l,
        };
        let ur = Rational::from_integer(u.clone());
        let scaled = CurveModel::new(
            &self.a1 * &ur,
            &self.a2 * &ur * &ur,
            &self.a3 * &ur * &ur * &ur,
            &self.a4 * &ur * &ur * &ur * &ur,
            &self.a6 * &ur * &ur * &ur * &ur * &ur * &ur,
        );
        (scaled, u)
    }

    /// Maps a point on `self` to the corresponding point on the integral
    /// model scaled by u.
    pub fn point_to_scaled(&self, p: &Point, u: &Integer) -> Point {
        let u2 = Rational::from_integer(u * u);
        let u3 = Rational::from_integer(u * u * u);
        match p {
            Point::Infinity => Point::Infinity,
            Point::Rational { x, y } => Point::Rational {
                x: x * &u2,
                y: y * &u3,
            },
            Point::Quadratic { x, y } => Point::Quadratic {
                x: QuadElem::new(&x.u * &u2, &x.v * &u2, x.d.clone()),
                y: QuadElem::new(&y.u * &u3, &y.v * &u3, y.d.clone()),
            },
        }
    }

    /// Inverse of `point_to_scaled`.
    pub fn point_from_scaled(&self, p: &Point, u: &Integer) -> Point {
        let u2 = Rational::from_integer(u * u);
        let u3 = Rational::from_integer(u * u * u);
        match p {
            Point::Infinity => Point::Infinity,
            Point::Rational { x, y } => Point::Rational {
                x: x / &u2,
                y: y / &u3,
            },
            Point::Quadratic { x, y } => Point::Quadratic {
                x: QuadElem::new(&x.u / &u2, &x.v / &u2, x.d.clone()),
                y: QuadElem::new(&y.u / &u3, &y.v / &u3, y.d.clone()),
            },
        }
    }

    /// The quadratic twist by d of the curve in completed-square form:
    /// if η² = x³ + Ax² + Bx + C describes `self` up to the substitution
    /// η = y + (a1 x + a3)/2, the twist is y² = x³ + dAx² + d²Bx + d³C.
    pub fn quadratic_twist(&self, d: &Integer) -> CurveModel {
        let four = rat(4);
        let a = self.b2() / &four;
        let b = self.b4() / rat(2);
        let c = self.b6() / &four;
        let dr = Rational::from_integer(d.clone());
        CurveModel::new(
            rat(0),
            &a * &dr,
            rat(0),
            &b * &dr * &dr,
            &c * &dr * &dr * &dr,
        )
    }

    /// Exact fraction strings "p/q" for a1..a6, the serialization used by the
    /// CLI.
    pub fn coefficient_strings(&self) -> [String; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6].map(|c| c.to_string())
    }
}

/// Curve y² = x(x² + ax + b) with its distinguished 2-torsion point (0,0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTorsionModel {
    pub a: Rational,
    pub b: Rational,
}

impl TwoTorsionModel {
    pub fn new(a: Rational, b: Rational) -> Result<Self, CurveError> {
        if b.is_zero() || (&a * &a - rat(4) * &b).is_zero() {
            return Err(CurveError::SingularCurve);
        }
        Ok(TwoTorsionModel { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self, CurveError> {
        TwoTorsionModel::new(rat(a), rat(b))
    }

    pub fn curve_model(&self) -> CurveModel {
        CurveModel::new(rat(0), self.a.clone(), rat(0), self.b.clone(), rat(0))
    }

    /// Quadratic twist by squarefree d: y² = x(x² + adx + bd²), normalized so
    /// that twisting twice by the same d returns the original model.
    pub fn twist(&self, d: &Integer) -> Result<TwoTorsionModel, CurveError> {
        if d.is_zero() {
            return Err(CurveError::NotSquarefree(d.clone()));
        }
        let (s, f) = squarefree_part(d).map_err(|_| CurveError::NotSquarefree(d.clone()))?;
        if !f.is_one() {
            return Err(CurveError::NotSquarefree(d.clone()));
        }
        if s.is_one() {
            return Ok(self.clone());
        }
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &dr;
        let b = &self.b * &dr * &dr;
        // strip the largest s with s² | a and s⁴ | b (numerators), so that the
        // twist-by-d involution is an exact identity on models
        let bnum = b.numer();
        let mut scale = BigInt::one();
        if let Ok(fac) = factorize(bnum) {
            for (p, e) in &fac.factors {
                let mut cap = e / 4;
                if !a.is_zero() {
                    let mut va = 0u32;
                    let mut an = a.numer().clone();
                    while (&an % p).is_zero() {
                        an /= p;
                        va += 1;
                    }
                    cap = cap.min(va / 2);
                }
                scale *= p.pow(cap);
            }
        }
        let s2 = Rational::from_integer(&scale * &scale);
        let s4 = &s2 * &s2;
        TwoTorsionModel::new(a / s2, b / s4)
    }

}

/// Change of coordinates carrying a general model with rational 2-torsion to
/// y² = x(x² + ax + b): (x, y) ↦ (x − x0, y + (a1 x + a3)/2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelMap {
    pub x0: Rational,
    pub a1: Rational,
    pub a3: Rational,
}

impl ModelMap {
    pub fn to_model(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Rational { x, y } => Point::Rational {
                x: x - &self.x0,
                y: y + (&self.a1 * x + &self.a3) / rat(2),
            },
            Point::Quadratic { x, y } => {
                let ctx = QuadCtx { d: x.d.clone() };
                let half = ctx.from_rational(&(rat(1) / rat(2)));
                let shift = ctx.mul(
                    &half,
                    &ctx.add(
                        &ctx.mul(&ctx.from_rational(&self.a1), x),
                        &ctx.from_rational(&self.a3),
                    ),
                );
                Point::Quadratic {
                    x: x.sub(&ctx.from_rational(&self.x0)),
                    y: y.add(&shift),
                }
            }
        }
    }

    pub fn from_model(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Rational { x, y } => {
                let xb = x + &self.x0;
                Point::Rational {
                    y: y - (&self.a1 * &xb + &self.a3) / rat(2),
                    x: xb,
                }
            }
            Point::Quadratic { x, y } => {
                let ctx = QuadCtx { d: x.d.clone() };
                let xb = x.add(&ctx.from_rational(&self.x0));
                let half = ctx.from_rational(&(rat(1) / rat(2)));
                let shift = ctx.mul(
                    &half,
                    &ctx.add(
                        &ctx.mul(&ctx.from_rational(&self.a1), &xb),
                        &ctx.from_rational(&self.a3),
                    ),
                );
                Point::Quadratic {
                    x: xb,
                    y: y.sub(&shift),
                }
            }
        }
    }
}

/// Rewrites a curve with a rational 2-torsion point as y² = x(x² + ax + b),
/// together with the coordinate change.
pub fn to_two_torsion_model(e: &CurveModel) -> Result<(TwoTorsionModel, ModelMap), CurveError> {
    if !e.is_nonsingular() {
        return Err(CurveError::SingularCurve);
    }
    // complete the square: η² = x³ + (b2/4)x² + (b4/2)x + b6/4
    let four = rat(4);
    let cubic = crate::poly::RatPoly::new(vec![
        e.b6() / &four,
        e.b4() / rat(2),
        e.b2() / &four,
        rat(1),
    ]);
    let int_cubic = cubic.primitive_int();
    let mut roots = crate::poly::rational_roots(&int_cubic);
    if roots.is_empty() {
        return Err(CurveError::NoRationalTwoTorsion);
    }
    // deterministic choice: smallest |x0|, ties by value
    roots.sort_by(|a, b| {
        let (aa, bb) = (a.abs(), b.abs());
        aa.cmp(&bb).then(a.cmp(b))
    });
    let x0 = roots[0].clone();
    // shift x by x0: x³ + Ax² + Bx with
    let c2 = e.b2() / &four;
    let c1 = e.b4() / rat(2);
    let a = rat(3) * &x0 + &c2;
    let b = rat(3) * &x0 * &x0 + rat(2) * &c2 * &x0 + &c1;
    let model = TwoTorsionModel::new(a, b)?;
    let map = ModelMap {
        x0,
        a1: e.a1.clone(),
        a3: e.a3.clone(),
    };
    Ok((model, map))
}
