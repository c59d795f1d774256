//! Independent torsion oracle: integral coordinate bounds on y² = x³ + Ax + B
//! (torsion points are integral there, and y² divides 16(4A³ + 27B²)),
//! followed by exhaustive candidate filtering.

use super::model::{CurveModel, Point};
use super::CurveError;
use crate::arith::{factorize, Integer, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// All integer roots of the monic cubic Z³ + AZ + C, found by floating-point
/// root isolation plus an exact integer check in a small window.
fn integer_cubic_roots(a: &Integer, c: &Integer) -> Vec<Integer> {
    let af = a.to_f64().unwrap_or(f64::MAX);
    let cf = c.to_f64().unwrap_or(f64::MAX);
    // exact discriminant sign decides the root pattern
    let disc_exact: BigInt = BigInt::from(-4) * a * a * a - BigInt::from(27) * c * c;
    let mut approx = Vec::new();
    let p = af;
    let q = cf;
    if disc_exact.is_zero() {
        // repeated roots: z = 3c/a (simple) and z = −3c/(2a) (double);
        // a = 0 forces c = 0 here
        if !a.is_zero() {
            approx.push(3.0 * q / p);
            approx.push(-3.0 * q / (2.0 * p));
        } else {
            approx.push(0.0);
        }
    } else if disc_exact.is_positive() {
        // three distinct real roots (requires a < 0)
        let m = 2.0 * (-p / 3.0).sqrt();
        let theta = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
        for k in 0..3 {
            approx.push(m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos());
        }
    } else if af == 0.0 {
        approx.push(-cf.signum() * cf.abs().powf(1.0 / 3.0));
    } else {
        // one real root (Cardano)
        let half_q = q / 2.0;
        let inner = (half_q * half_q + p * p * p / 27.0).max(0.0).sqrt();
        let u = -half_q + inner;
        let v = -half_q - inner;
        let cbrt = |t: f64| t.signum() * t.abs().powf(1.0 / 3.0);
        approx.push(cbrt(u) + cbrt(v));
    }
    let mut roots = Vec::new();
    for r in approx {
        if !r.is_finite() {
            continue;
        }
        let base = BigInt::from(r.round() as i64);
        for off in -3i64..=3 {
            let z = &base + BigInt::from(off);
            if (&z * &z * &z + a * &z + c).is_zero() && !roots.contains(&z) {
                roots.push(z);
            }
        }
    }
    roots
}

/// Square-root divisors y ≥ 0 with y² | n.
fn square_divisor_roots(n: &Integer) -> Vec<Integer> {
    let fac = match factorize(n) {
        Ok(f) => f,
        Err(_) => return vec![BigInt::from(1)],
    };
    let mut out = vec![BigInt::from(1)];
    for (p, e) in &fac.factors {
        let mut next = Vec::new();
        for y in &out {
            let mut pk = BigInt::from(1);
            for _ in 0..=(e / 2) {
                next.push(y * &pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}

/// Computes the torsion subgroup shape (m, n) of E(ℚ), as ℤ/m × ℤ/n with
/// m | n, by the integral-coordinate bound on a short Weierstrass model.
pub fn lutz_nagell_torsion(e: &CurveModel) -> Result<(u32, u32), CurveError> {
    if !e.is_nonsingular() {
        return Err(CurveError::SingularCurve);
    }
    let (ie, u) = e.integral_model();
    // (x, η) ↦ (Z, Y) = (36x + 3b2, 216η) puts the curve in the form
    // Y² = Z³ + AZ + B with integer A, B
    let b2 = ie.b2();
    let b4 = ie.b4();
    let b6 = ie.b6();
    let a = (rat(648) * &b4 - rat(27) * &b2 * &b2).to_integer();
    let b = (rat(54) * &b2 * &b2 * &b2 - rat(1944) * &b2 * &b4 + rat(11664) * &b6).to_integer();
    let bound = (BigInt::from(4) * &a * &a * &a + BigInt::from(27) * &b * &b).abs() * 16;
    let mut candidates = vec![BigInt::zero()];
    candidates.extend(square_divisor_roots(&bound));
    let mut torsion = vec![Point::Infinity];
    for y in &candidates {
        let c = &b - y * y;
        for z in integer_cubic_roots(&a, &c) {
            for sy in [y.clone(), -y.clone()] {
                // back to the integral model: x = (Z − 3b2)/36, η = Y/216
                let x = (Rational::from_integer(z.clone()) - rat(3) * &b2) / rat(36);
                let eta = Rational::from_integer(sy) / rat(216);
                let py = &eta - (&ie.a1 * &x + &ie.a3) / rat(2);
                let p = Point::Rational { x, y: py };
                if !ie.contains(&p) {
                    continue;
                }
                if ie.order_of(&p, 12)?.is_some() && !torsion.contains(&p) {
                    torsion.push(p);
                }
            }
        }
    }
    let _ = u; // shape is invariant under the scaling
    let order = torsion.len() as u32;
    let two_torsion = torsion
        .iter()
        .filter(|p| p.is_infinity() || matches!(ie.add_points(p, p), Ok(Point::Infinity)))
        .count() as u32;
    let m = if two_torsion == 4 { 2 } else { 1 };
    Ok((m, order / m))
}
