//! Torsion subgroup over a quadratic field ℚ(√d): the odd part decomposes as
//! the odd torsion of the curve and of its twist over ℚ, while the 2-primary
//! part is found directly from division-polynomial roots in ℚ(√d).

use super::divpoly::division_polynomial;
use super::field::{FieldCtx, QuadCtx, QuadElem};
use super::model::{CurveModel, Point};
use super::torsion::{torsion_over_q, TorsionStructure};
use super::CurveError;
use crate::arith::{squarefree_part, Integer, Rational};
use crate::poly::roots_in_quadratic_field;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// y-coordinates over ℚ(√d) above a given x, from the curve equation read as
/// a quadratic in y.
fn lift_y(e: &CurveModel, ctx: &QuadCtx, x: &QuadElem) -> Vec<QuadElem> {
    let a1 = ctx.from_rational(&e.a1);
    let a3 = ctx.from_rational(&e.a3);
    let lin = ctx.add(&ctx.mul(&a1, x), &a3);
    let x2 = ctx.mul(x, x);
    let rhs = ctx.add(
        &ctx.mul(&x2, x),
        &ctx.add(
            &ctx.mul(&ctx.from_rational(&e.a2), &x2),
            &ctx.add(&ctx.mul(&ctx.from_rational(&e.a4), x), &ctx.from_rational(&e.a6)),
        ),
    );
    let disc = ctx.add(
        &ctx.mul(&lin, &lin),
        &ctx.mul(&ctx.from_rational(&rat(4)), &rhs),
    );
    let Some(s) = disc.sqrt() else {
        return vec![];
    };
    let half = ctx.from_rational(&Rational::new(BigInt::one(), BigInt::from(2)));
    let mut ys = vec![ctx.mul(&half, &ctx.sub(&s, &lin))];
    if !s.is_zero() {
        ys.push(ctx.mul(&half, &ctx.sub(&s.neg(), &lin)));
    }
    ys
}

/// Roots of the m-th division polynomial in ℚ(√d), as points of ℚ(√d).
fn division_points(
    e: &CurveModel,
    ctx: &QuadCtx,
    m: u32,
) -> Result<Vec<Point>, CurveError> {
    let poly = division_polynomial(e, m)?.primitive_int();
    let (rational, quadratic) = roots_in_quadratic_field(&poly, &ctx.d);
    let mut pts = Vec::new();
    let mut xs: Vec<QuadElem> = rational
        .into_iter()
        .map(|x| QuadElem::from_rational(x, &ctx.d))
        .collect();
    xs.extend(
        quadratic
            .into_iter()
            .map(|(u, v)| QuadElem::new(u, v, ctx.d.clone())),
    );
    for x in xs {
        for y in lift_y(e, ctx, &x) {
            pts.push(Point::Quadratic { x: x.clone(), y }.simplify());
        }
    }
    Ok(pts)
}

fn close_under_addition(e: &CurveModel, seeds: Vec<Point>) -> Result<Vec<Point>, CurveError> {
    let mut group = vec![Point::Infinity];
    let mut frontier = seeds;
    while let Some(p) = frontier.pop() {
        if group.contains(&p) {
            continue;
        }
        group.push(p.clone());
        let snapshot = group.clone();
        for q in &snapshot {
            let s = e.add_points(&p, q)?;
            if !group.contains(&s) && !frontier.contains(&s) {
                frontier.push(s);
            }
        }
    }
    Ok(group)
}

/// The torsion subgroup of E(ℚ(√d)) for squarefree d ∉ {0, 1}.
pub fn torsion_over_quadratic(
    e: &CurveModel,
    d: &Integer,
) -> Result<TorsionStructure, CurveError> {
    let (s, f) = squarefree_part(d).map_err(|_| CurveError::NotSquarefree(d.clone()))?;
    if !f.is_one() || s.is_one() || d.is_zero() {
        return Err(CurveError::NotSquarefree(d.clone()));
    }
    if !e.is_nonsingular() {
        return Err(CurveError::SingularCurve);
    }
    let (ie, u) = e.integral_model();
    let ctx = QuadCtx { d: d.clone() };
    let mut seeds: Vec<Point> = Vec::new();

    // torsion already rational over ℚ
    let tq = torsion_over_q(&ie)?;
    seeds.extend(tq.generators.iter().cloned());

    // odd torsion acquired over ℚ(√d) comes from the quadratic twist:
    // a twist point (x, y) pulls back to (x/d, (y/d²)√d − (a1·x/d + a3)/2)
    let twist = ie.quadratic_twist(d);
    let tw = torsion_over_q(&twist)?;
    for g in &tw.generators {
        let Some(order) = twist.order_of(g, 16)? else {
            continue;
        };
        let odd_component = twist.scalar_mul(1 << order.trailing_zeros(), g)?;
        if let Point::Rational { x, y } = odd_component {
            let xe = &x / Rational::from_integer(d.clone());
            let eta = QuadElem::new(
                rat(0),
                &y / Rational::from_integer(d * d),
                d.clone(),
            );
            let shift = ctx.mul(
                &ctx.from_rational(&Rational::new(BigInt::one(), BigInt::from(2))),
                &ctx.add(
                    &ctx.mul(&ctx.from_rational(&ie.a1), &ctx.from_rational(&xe)),
                    &ctx.from_rational(&ie.a3),
                ),
            );
            let p = Point::Quadratic {
                x: QuadElem::from_rational(xe, d),
                y: eta.sub(&shift),
            }
            .simplify();
            debug_assert!(ie.contains(&p));
            seeds.push(p);
        }
    }

    // the 2-primary part directly over ℚ(√d), climbing one 2-power at a time
    let two_torsion = division_points(&ie, &ctx, 2)?;
    seeds.extend(two_torsion.iter().cloned());
    let mut level = 2u32;
    let mut have_level = !two_torsion.is_empty();
    while have_level && level < 16 {
        level *= 2;
        let pts = division_points(&ie, &ctx, level)?;
        have_level = false;
        for p in pts {
            if ie.order_of(&p, level)? == Some(level) {
                have_level = true;
                seeds.push(p);
            }
        }
    }

    let group = close_under_addition(&ie, seeds)?;
    let order = group.len() as u32;
    let mut max_order = 1u32;
    let mut by_order: Vec<(u32, Point)> = Vec::new();
    for p in &group {
        let o = ie
            .order_of(p, order.max(1))?
            .expect("group elements have finite order");
        max_order = max_order.max(o);
        by_order.push((o, p.clone()));
    }
    let n = max_order;
    let m = order / n;
    let g1 = by_order
        .iter()
        .find(|(o, _)| *o == n)
        .map(|(_, p)| p.clone())
        .expect("element of maximal order");
    let mut generators = Vec::new();
    if m > 1 {
        let g2 = by_order
            .iter()
            .filter(|(o, _)| *o == m)
            .map(|(_, p)| p.clone())
            .find(|h| {
                close_under_addition(&ie, vec![g1.clone(), h.clone()])
                    .map(|g| g.len() as u32 == order)
                    .unwrap_or(false)
            })
            .expect("complementary generator exists");
        generators.push(e.point_from_scaled(&g2, &u));
    }
    if n > 1 {
        generators.push(e.point_from_scaled(&g1, &u));
    }
    Ok(TorsionStructure { m, n, generators })
}
