//! Torsion subgroup over ℚ: reduction bounds modulo several good primes,
//! then exact division-polynomial root lifting and closure under the group
//! law.

use super::divpoly::division_polynomial;
use super::model::{CurveModel, Point};
use super::CurveError;
use crate::arith::{kronecker, primes_up_to, rational_sqrt, Rational};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

/// ℤ/m × ℤ/n with m | n (m = 1 for cyclic groups), plus generators of
/// orders m and n when nontrivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionStructure {
    pub m: u32,
    pub n: u32,
    pub generators: Vec<Point>,
}

impl TorsionStructure {
    pub fn order(&self) -> u32 {
        self.m * self.n
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// #E(F_p) for an integral model and a good odd prime p.
fn count_points_mod_p(e: &CurveModel, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let to_u = |r: &Rational| -> u64 {
        // integral model: denominators are 1
        let m = r.numer().mod_floor(&pb);
        let digits = m.to_u64_digits().1;
        *digits.first().unwrap_or(&0)
    };
    let (a1, a2, a3, a4, a6) = (
        to_u(&e.a1),
        to_u(&e.a2),
        to_u(&e.a3),
        to_u(&e.a4),
        to_u(&e.a6),
    );
    let mut count = 1u64; // point at infinity
    for x in 0..p {
        // D = 4f(x) + (a1 x + a3)², the completed-square discriminant in y
        let f = (((x + a2) % p * x + a4) % p * x + a6) % p;
        let lin = (a1 * x + a3) % p;
        let d = (4 * f % p + lin * lin % p) % p;
        let chi = kronecker(&BigInt::from(d), &pb);
        count += (1 + chi) as u64;
    }
    count
}

/// All rational y with y² + (a1 x + a3) y = x³ + a2 x² + a4 x + a6.
fn lift_y(e: &CurveModel, x: &Rational) -> Vec<Rational> {
    let lin = &e.a1 * x + &e.a3;
    let rhs = x * x * x + &e.a2 * x * x + &e.a4 * x + &e.a6;
    let disc = &lin * &lin + rat(4) * &rhs;
    match rational_sqrt(&disc) {
        None => vec![],
        Some(s) if s.is_zero() => vec![-&lin / rat(2)],
        Some(s) => vec![(&s - &lin) / rat(2), (-&s - &lin) / rat(2)],
    }
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

/// The torsion subgroup of E(ℚ) with generators, computed exactly.
pub fn torsion_over_q(e: &CurveModel) -> Result<TorsionStructure, CurveError> {
    if !e.is_nonsingular() {
        return Err(CurveError::SingularCurve);
    }
    let (ie, u) = e.integral_model();
    // gcd of #E(F_p) over several good odd primes bounds the torsion order
    let disc = ie.discriminant();
    let disc_num = disc.numer().abs();
    let mut bound = BigInt::zero();
    let mut used = 0;
    for p in primes_up_to(1000).into_iter().skip(1) {
        if (&disc_num % BigInt::from(p)).is_zero() {
            continue;
        }
        bound = bound.gcd(&BigInt::from(count_points_mod_p(&ie, p)));
        used += 1;
        if used >= 8 {
            break;
        }
    }
    // element orders over ℚ are at most 12, so prime-power orders are few
    let mut seeds = Vec::new();
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        if !(&bound % BigInt::from(q)).is_zero() {
            continue;
        }
        let f = division_polynomial(&ie, q)?.primitive_int();
        for x in crate::poly::rational_roots(&f) {
            for y in lift_y(&ie, &x) {
                seeds.push(Point::Rational { x: x.clone(), y });
            }
        }
    }
    let group = close_under_addition(&ie, seeds)?;
    let order = group.len() as u32;
    // split into invariant factors: m ∈ {1, 2}
    let two_torsion = group
        .iter()
        .filter(|p| {
            p.is_infinity() || matches!(ie.add_points(p, p), Ok(Point::Infinity))
        })
        .count() as u32;
    let m = if two_torsion == 4 { 2 } else { 1 };
    let n = order / m;
    let mut generators = Vec::new();
    if n > 1 {
        let g1 = group
            .iter()
            .find(|p| ie.order_of(p, 16).ok().flatten() == Some(n))
            .cloned()
            .expect("an element of maximal order exists");
        if m == 2 {
            // an order-2 element outside the cyclic part
            let half = ie.scalar_mul((n / 2) as i64, &g1)?;
            let g2 = group
                .iter()
                .find(|p| {
                    !p.is_infinity()
                        && **p != half
                        && matches!(ie.add_points(p, p), Ok(Point::Infinity))
                })
                .cloned()
                .expect("independent 2-torsion exists");
            generators.push(e.point_from_scaled(&g2, &u));
        }
        generators.push(e.point_from_scaled(&g1, &u));
    }
    Ok(TorsionStructure { m, n, generators })
}
