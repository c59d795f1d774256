//! Division polynomials in x for a general Weierstrass model, normalized so
//! the m-th polynomial vanishes exactly at the x-coordinates of the nontrivial
//! points killed by [m].

use super::model::CurveModel;
use super::CurveError;
use crate::arith::Rational;
use crate::poly::RatPoly;
use num_bigint::BigInt;

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn rp(coeffs: Vec<Rational>) -> RatPoly {
    RatPoly::new(coeffs)
}

/// The cubic x³ + (b2/4)x² + (b4/2)x + b6/4 whose roots are the 2-torsion
/// x-coordinates (equal to (2y + a1 x + a3)²/4 on the curve).
pub(super) fn two_torsion_cubic(e: &CurveModel) -> RatPoly {
    rp(vec![
        e.b6() / rat(4),
        e.b4() / rat(2),
        e.b2() / rat(4),
        rat(1),
    ])
}

/// Builds f_0 .. f_top of the odd/even-split division polynomial table.
fn f_table(e: &CurveModel, top: usize) -> Vec<RatPoly> {
    let (b2, b4, b6, b8) = (e.b2(), e.b4(), e.b6(), e.b8());
    // S = 4x³ + b2 x² + 2 b4 x + b6 = (2y + a1 x + a3)² on the curve
    let s = rp(vec![b6.clone(), rat(2) * &b4, b2.clone(), rat(4)]);
    let s2 = s.mul(&s);
    let mut f: Vec<RatPoly> = Vec::with_capacity(top + 1);
    f.push(RatPoly::zero()); // f0
    f.push(RatPoly::one()); // f1
    f.push(RatPoly::one()); // f2
    f.push(rp(vec![
        b8.clone(),
        rat(3) * &b6,
        rat(3) * &b4,
        b2.clone(),
        rat(3),
    ])); // f3
    f.push(rp(vec![
        &b4 * &b8 - &b6 * &b6,
        &b2 * &b8 - &b4 * &b6,
        rat(10) * &b8,
        rat(10) * &b6,
        rat(5) * &b4,
        b2.clone(),
        rat(2),
    ])); // f4
    for n in 5..=top {
        let next = if n % 2 == 1 {
            let m = (n - 1) / 2;
            let t1 = f[m + 2].mul(&f[m]).mul(&f[m]).mul(&f[m]);
            let t2 = f[m - 1].mul(&f[m + 1]).mul(&f[m + 1]).mul(&f[m + 1]);
            if m % 2 == 0 {
                t1.mul(&s2).sub(&t2)
            } else {
                t1.sub(&t2.mul(&s2))
            }
        } else {
            let m = n / 2;
            let t1 = f[m + 2].mul(&f[m - 1]).mul(&f[m - 1]);
            let t2 = f[m - 2].mul(&f[m + 1]).mul(&f[m + 1]);
            f[m].mul(&t1.sub(&t2))
        };
        f.push(next);
    }
    f
}

/// The m-th division polynomial of `e` as a polynomial in x alone; its roots
/// are exactly the x-coordinates of the points of exact order dividing m
/// (other than the origin). Supported for 1 ≤ m ≤ 24.
pub fn division_polynomial(e: &CurveModel, m: u32) -> Result<RatPoly, CurveError> {
    if !(1..=24).contains(&m) {
        return Err(CurveError::OutOfRange(m));
    }
    if !e.is_nonsingular() {
        return Err(CurveError::SingularCurve);
    }
    let m = m as usize;
    let top = if m % 2 == 0 { m / 2 + 2 } else { m };
    let f = f_table(e, top.max(4).max(m));
    if m % 2 == 1 {
        Ok(f[m].clone())
    } else {
        Ok(f[m].mul(&two_torsion_cubic(e)))
    }
}
