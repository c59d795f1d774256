//! Field contexts for exact point arithmetic: ℚ itself and quadratic fields
//! ℚ(√d) represented directly on (u, v) pairs, u + v√d.

use crate::arith::{rational_sqrt, Integer, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

/// An element u + v√d of ℚ(√d); d squarefree, d ∉ {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub u: Rational,
    pub v: Rational,
    pub d: Integer,
}

fn rzero() -> Rational {
    Rational::from_integer(BigInt::from(0))
}

impl QuadElem {
    pub fn new(u: Rational, v: Rational, d: Integer) -> Self {
        QuadElem { u, v, d }
    }

    pub fn from_rational(u: Rational, d: &Integer) -> Self {
        QuadElem {
            u,
            v: rzero(),
            d: d.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn conjugate(&self) -> QuadElem {
        QuadElem {
            u: self.u.clone(),
            v: -self.v.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm u² − d v².
    pub fn norm(&self) -> Rational {
        &self.u * &self.u - Rational::from_integer(self.d.clone()) * &self.v * &self.v
    }

    pub fn add(&self, o: &QuadElem) -> QuadElem {
        QuadElem {
            u: &self.u + &o.u,
            v: &self.v + &o.v,
            d: self.d.clone(),
        }
    }

    pub fn sub(&self, o: &QuadElem) -> QuadElem {
        QuadElem {
            u: &self.u - &o.u,
            v: &self.v - &o.v,
            d: self.d.clone(),
        }
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem {
            u: -self.u.clone(),
            v: -self.v.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, o: &QuadElem) -> QuadElem {
        let d = Rational::from_integer(self.d.clone());
        QuadElem {
            u: &self.u * &o.u + &d * &self.v * &o.v,
            v: &self.u * &o.v + &self.v * &o.u,
            d: self.d.clone(),
        }
    }

    pub fn inv(&self) -> Option<QuadElem> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadElem {
            u: &self.u / &n,
            v: -&self.v / &n,
            d: self.d.clone(),
        })
    }

    /// Exact square root within ℚ(√d), if one exists.
    pub fn sqrt(&self) -> Option<QuadElem> {
        let d = &self.d;
        let dr = Rational::from_integer(d.clone());
        if self.v.is_zero() {
            if let Some(s) = rational_sqrt(&self.u) {
                return Some(QuadElem::from_rational(s, d));
            }
            // u = d s^2 gives sqrt = s √d
            let q = &self.u / &dr;
            if let Some(s) = rational_sqrt(&q) {
                return Some(QuadElem::new(rzero(), s, d.clone()));
            }
            return None;
        }
        // (α + β√d)² = u + v√d needs α² + dβ² = u, 2αβ = v.
        // α² = (u ± n)/2 with n = √(u² − d v²) rational.
        let n = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(BigInt::from(2));
        for cand in [&n, &(-n.clone())] {
            let alpha_sq = (&self.u + cand) / &two;
            if let Some(alpha) = rational_sqrt(&alpha_sq) {
                if !alpha.is_zero() {
                    let beta = &self.v / (&two * &alpha);
                    return Some(QuadElem::new(alpha, beta, d.clone()));
                }
            }
        }
        None
    }
}

/// Minimal field interface needed by the generic group law.
pub trait FieldCtx {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn from_rational(&self, r: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn zero(&self) -> Self::Elem {
        self.from_rational(&rzero())
    }
}

pub struct RationalCtx;

impl FieldCtx for RationalCtx {
    type Elem = Rational;
    fn from_rational(&self, r: &Rational) -> Rational {
        r.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a.clone()
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

pub struct QuadCtx {
    pub d: Integer,
}

impl FieldCtx for QuadCtx {
    type Elem = QuadElem;
    fn from_rational(&self, r: &Rational) -> QuadElem {
        QuadElem::from_rational(r.clone(), &self.d)
    }
    fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        a.add(b)
    }
    fn sub(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        a.sub(b)
    }
    fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        a.mul(b)
    }
    fn neg(&self, a: &QuadElem) -> QuadElem {
        a.neg()
    }
    fn inv(&self, a: &QuadElem) -> Option<QuadElem> {
        a.inv()
    }
    fn is_zero(&self, a: &QuadElem) -> bool {
        a.is_zero()
    }
}
