//! Univariate polynomials over ℚ and ℤ, and root extraction over ℚ and over
//! quadratic fields ℚ(√d).
//!
//! Root-finding works modularly: reduce the squarefree part modulo a prime p₀
//! chosen so the reduction stays squarefree (and, for quadratic fields, so
//! that d is a non-residue), collect the degree ≤ 2 irreducible factors,
//! Hensel-lift them and verify by exact division. Choosing (d|p₀) = −1 makes
//! every conjugate pair of ℚ(√d)-roots appear as a single irreducible
//! quadratic modulo p₀, so no recombination of modular factors is needed.

use crate::arith::{kronecker, perfect_sqrt, primes_up_to, Integer, Rational};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial over ℚ, coefficients from constant term upward, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    pub coeffs: Vec<Rational>,
}

/// Polynomial over ℤ, same layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<Integer>,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly::new(vec![rat(1)])
    }

    pub fn x() -> Self {
        RatPoly::new(vec![rat(0), rat(1)])
    }

    pub fn constant(c: Rational) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn from_int_coeffs(cs: &[i64]) -> Self {
        RatPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(|| rat(0))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![rat(0); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::new(out)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![rat(0); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        RatPoly::new(out)
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![rat(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> RatPoly {
        self.scale(&rat(-1))
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dn = div.coeffs.len();
        if rem.len() < dn {
            return (RatPoly::zero(), self.clone());
        }
        let mut quo = vec![rat(0); rem.len() - dn + 1];
        let lead = div.coeffs[dn - 1].clone();
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dn - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dcoef) in div.coeffs.iter().enumerate() {
                let t = &c * dcoef;
                rem[i + j] -= t;
            }
            quo[i] = c;
        }
        (RatPoly::new(quo), RatPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = rat(1) / a.leading();
            a.scale(&inv)
        }
    }

    /// Squarefree part (monic): self / gcd(self, self').
    pub fn squarefree_part(&self) -> RatPoly {
        if self.is_zero() || self.degree() == 0 {
            return RatPoly::one();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        let inv = rat(1) / q.leading();
        q.scale(&inv)
    }

    /// Clears denominators and the content: primitive integer polynomial with
    /// the same roots and positive leading coefficient.
    pub fn primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly { coeffs: vec![] };
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            g = BigInt::one();
        }
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let g = g * sign;
        IntPoly {
            coeffs: ints.iter().map(|c| c / &g).collect(),
        }
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        IntPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::new(vec![]);
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Content-free copy with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.coeffs.last().unwrap().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Primitive squarefree part with the same roots.
    ///
    /// Fast path: if the reduction modulo some good prime keeps the degree and
    /// is squarefree, the polynomial is squarefree over ℚ and is returned
    /// as-is. Otherwise the gcd with the derivative is computed by a primitive
    /// pseudo-remainder sequence over ℤ — the rational Euclidean gcd suffers
    /// catastrophic coefficient growth at the degrees used here.
    pub fn squarefree_primitive(&self) -> IntPoly {
        if self.is_zero() || self.degree() == 0 {
            return IntPoly::new(vec![BigInt::one()]);
        }
        let prim = self.primitive();
        let n = prim.degree();
        let deriv = prim.derivative();
        let mut tried = 0u32;
        for &p in primes_up_to(10_000).iter().filter(|&&p| p > 50) {
            let gp = fp_reduce(&prim, p);
            if gp.len() != n + 1 {
                continue; // p divides the leading coefficient
            }
            if fp_gcd(&gp, &fp_deriv(&gp, p), p).len() == 1 {
                return prim; // squarefree mod p at full degree ⇒ squarefree
            }
            tried += 1;
            if tried >= 25 {
                break;
            }
        }
        let g = int_gcd_primitive(&prim, &deriv);
        if g.degree() == 0 {
            return prim;
        }
        let (q, r) = prim.to_rat().divrem(&g.to_rat());
        debug_assert!(r.is_zero());
        q.primitive_int()
    }

    /// Exact division by a monic integer polynomial; None if not divisible.
    pub fn div_exact_monic(&self, div: &IntPoly) -> Option<IntPoly> {
        assert!(div.coeffs.last().map_or(false, |c| c.is_one()));
        let dn = div.coeffs.len();
        if self.coeffs.len() < dn {
            return if self.is_zero() {
                Some(IntPoly::new(vec![]))
            } else {
                None
            };
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); rem.len() - dn + 1];
        for i in (0..quo.len()).rev() {
            let c = rem[i + dn - 1].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dcoef) in div.coeffs.iter().enumerate() {
                let t = &c * dcoef;
                rem[i + j] -= t;
            }
            quo[i] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(quo))
        } else {
            None
        }
    }
}

/// Pseudo-remainder: lc(b)^(deg a − deg b + 1) · a reduced modulo b over ℤ.
fn int_pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree();
    let lb = b.coeffs.last().unwrap().clone();
    let mut rem = a.coeffs.clone();
    while rem.len() > db {
        let c = rem.last().unwrap().clone();
        for v in rem.iter_mut() {
            *v *= &lb;
        }
        let off = rem.len() - 1 - db;
        for (j, bc) in b.coeffs.iter().enumerate() {
            rem[off + j] -= &c * bc;
        }
        while rem.last().map_or(false, |v| v.is_zero()) {
            rem.pop();
        }
        if rem.is_empty() {
            break;
        }
    }
    IntPoly::new(rem)
}

/// Primitive gcd over ℤ via the primitive pseudo-remainder sequence.
fn int_gcd_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut a = a.primitive();
    let mut b = b.primitive();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.degree() == 0 {
            return IntPoly::new(vec![BigInt::one()]);
        }
        let r = int_pseudo_rem(&a, &b).primitive();
        a = b;
        b = r;
    }
    a
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a machine prime
// ---------------------------------------------------------------------------

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

type FpPoly = Vec<u64>;

fn fp_trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn fp_reduce(g: &IntPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    fp_trim(
        g.coeffs
            .iter()
            .map(|c| (((c % &pb) + &pb) % &pb).to_u64().unwrap())
            .collect(),
    )
}

fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + p - c) % p;
    }
    fp_trim(out)
}

fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_trim(out)
}

fn fp_rem(a: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    let mut r = a.clone();
    let dn = m.len();
    assert!(dn > 0);
    let linv = invmod(m[dn - 1], p);
    while r.len() >= dn {
        let c = mulmod(*r.last().unwrap(), linv, p);
        let off = r.len() - dn;
        if c != 0 {
            for (j, &mc) in m.iter().enumerate() {
                r[off + j] = (r[off + j] + p - mulmod(c, mc, p)) % p;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn fp_divexact(a: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    // exact division, panics in debug if not exact
    let mut r = a.clone();
    let dn = m.len();
    if r.len() < dn {
        debug_assert!(r.is_empty());
        return vec![];
    }
    let linv = invmod(m[dn - 1], p);
    let mut q = vec![0u64; r.len() - dn + 1];
    for i in (0..q.len()).rev() {
        let c = mulmod(*r.get(i + dn - 1).unwrap_or(&0), linv, p);
        q[i] = c;
        if c != 0 {
            for (j, &mc) in m.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mulmod(c, mc, p)) % p;
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    fp_trim(q)
}

fn fp_monic(f: &FpPoly, p: u64) -> FpPoly {
    if f.is_empty() {
        return vec![];
    }
    let inv = invmod(*f.last().unwrap(), p);
    f.iter().map(|&c| mulmod(c, inv, p)).collect()
}

fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

fn fp_deriv(f: &FpPoly, p: u64) -> FpPoly {
    if f.len() <= 1 {
        return vec![];
    }
    fp_trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
            .collect(),
    )
}

fn fp_powmod(base: &FpPoly, mut e: u64, m: &FpPoly, p: u64) -> FpPoly {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Bezout coefficients: s*a + t*b = 1 for coprime a, b in F_p[x].
fn fp_extgcd_coprime(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        // q = r0 div r1
        let q = {
            let rem = fp_rem(&r0, &r1, p);
            let num = fp_sub(&r0, &rem, p);
            fp_divexact(&num, &r1, p)
        };
        let r2 = fp_sub(&r0, &fp_mul(&q, &r1, p), p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0.len(), 1, "inputs not coprime");
    let inv = invmod(r0[0], p);
    let s = s0.iter().map(|&c| mulmod(c, inv, p)).collect();
    let t = t0.iter().map(|&c| mulmod(c, inv, p)).collect();
    (s, t)
}

struct Xorshift(u64);

impl Xorshift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Splits a product of distinct monic irreducible quadratics into its factors
/// (Cantor–Zassenhaus equal-degree splitting with a fixed-seed generator).
fn fp_split_quadratics(f: &FpPoly, p: u64, rng: &mut Xorshift, out: &mut Vec<FpPoly>) {
    if f.len() <= 1 {
        return;
    }
    if f.len() == 3 {
        out.push(fp_monic(f, p));
        return;
    }
    let e = (p * p - 1) / 2;
    loop {
        let t: FpPoly = fp_trim((0..4).map(|_| rng.next() % p).collect());
        if t.len() < 2 {
            continue;
        }
        let w = fp_powmod(&t, e, f, p);
        // w - 1
        let mut wm1 = w.clone();
        if wm1.is_empty() {
            wm1 = vec![p - 1];
        } else {
            wm1[0] = (wm1[0] + p - 1) % p;
        }
        let wm1 = fp_trim(wm1);
        let g = fp_gcd(f, &wm1, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_divexact(f, &g, p);
            fp_split_quadratics(&g, p, rng, out);
            fp_split_quadratics(&h, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting and root extraction
// ---------------------------------------------------------------------------

fn lift_symmetric(f: &FpPoly, p: u64) -> Vec<BigInt> {
    f.iter()
        .map(|&c| {
            if 2 * c > p {
                BigInt::from(c) - BigInt::from(p)
            } else {
                BigInt::from(c)
            }
        })
        .collect()
}

fn to_symmetric(c: &BigInt, modulus: &BigInt) -> BigInt {
    let r = ((c % modulus) + modulus) % modulus;
    if &r * 2 > *modulus {
        r - modulus
    } else {
        r
    }
}

/// Hensel-lifts the factorization G ≡ h*q (mod p) of a monic squarefree
/// integer polynomial until the modulus exceeds `target`, then returns the
/// symmetric-residue candidate for h.
fn hensel_lift_factor(g: &IntPoly, h0: &FpPoly, q0: &FpPoly, p: u64, target: &BigInt) -> IntPoly {
    let (_s, t) = fp_extgcd_coprime(h0, q0, p);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut h: Vec<BigInt> = lift_symmetric(h0, p);
    let mut q: Vec<BigInt> = lift_symmetric(q0, p);
    while modulus <= target * 2 {
        // error e = (G - h*q) / modulus
        let hq = int_mul(&h, &q);
        let mut e: Vec<BigInt> = Vec::with_capacity(g.coeffs.len());
        for i in 0..g.coeffs.len() {
            let gc = g.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let hc = hq.get(i).cloned().unwrap_or_else(BigInt::zero);
            let diff = gc - hc;
            debug_assert!((&diff % &modulus).is_zero());
            e.push(diff / &modulus);
        }
        let e_p: FpPoly = fp_trim(
            e.iter()
                .map(|c| (((c % &pb) + &pb) % &pb).to_u64().unwrap())
                .collect(),
        );
        let h_p: FpPoly = fp_trim(
            h.iter()
                .map(|c| (((c % &pb) + &pb) % &pb).to_u64().unwrap())
                .collect(),
        );
        let q_p: FpPoly = fp_trim(
            q.iter()
                .map(|c| (((c % &pb) + &pb) % &pb).to_u64().unwrap())
                .collect(),
        );
        let dh = fp_rem(&fp_mul(&t, &e_p, p), &h_p, p);
        let dq = fp_divexact(&fp_sub(&e_p, &fp_mul(&dh, &q_p, p), p), &h_p, p);
        for (i, c) in dh.iter().enumerate() {
            h[i] += &modulus * BigInt::from(*c);
        }
        for (i, c) in dq.iter().enumerate() {
            q[i] += &modulus * BigInt::from(*c);
        }
        modulus *= &pb;
        // keep coefficients in the symmetric range to bound growth
        for c in h.iter_mut() {
            *c = to_symmetric(c, &modulus);
        }
        for c in q.iter_mut() {
            *c = to_symmetric(c, &modulus);
        }
    }
    IntPoly::new(h)
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Monic integer polynomial with the roots of g scaled by lc(g):
/// G(X) = lc^(n-1) g(X/lc).
fn monicize(g: &IntPoly) -> (IntPoly, Integer) {
    let n = g.degree();
    let lc = g.coeffs.last().unwrap().clone();
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in g.coeffs.iter().enumerate() {
        // coefficient of X^i is c * lc^(n-1-i)
        out.push(if i == n {
            BigInt::one()
        } else {
            c * lc.pow((n - 1 - i) as u32)
        });
    }
    (IntPoly::new(out), lc)
}

/// Degree ≤ 2 monic integer factors of a monic squarefree integer polynomial.
/// When `residue_cond` is Some(d), the selection prime additionally satisfies
/// (d|p₀) = −1 and only irreducible quadratic modular factors are lifted
/// (plus all linear ones).
fn small_monic_factors(g: &IntPoly, residue_cond: Option<&Integer>) -> Vec<IntPoly> {
    let n = g.degree();
    if n == 0 {
        return vec![];
    }
    // coefficient bound for monic factors of degree <= 2 (Mignotte-style)
    let mut norm1 = BigInt::zero();
    for c in &g.coeffs {
        norm1 += c.abs();
    }
    let target: BigInt = norm1 * 8 + 8;
    // prime selection
    let primes = primes_up_to(100_000);
    let mut chosen: Option<(u64, FpPoly)> = None;
    for &p in primes.iter().filter(|&&p| p > 50) {
        if let Some(d) = residue_cond {
            if kronecker(d, &BigInt::from(p)) != -1 {
                continue;
            }
        }
        let gp = fp_reduce(g, p);
        if gp.len() != n + 1 {
            continue; // p divides the leading coefficient (monic: impossible, but keep safe)
        }
        let gd = fp_deriv(&gp, p);
        if fp_gcd(&gp, &gd, p).len() == 1 {
            chosen = Some((p, gp));
            break;
        }
    }
    let (p, gp) = chosen.expect("no suitable prime found for modular factorization");

    // linear factors: scan all residues
    let mut modular_factors: Vec<FpPoly> = Vec::new();
    let mut rest = gp.clone();
    for r in 0..p {
        if rest.len() <= 1 {
            break;
        }
        // evaluate
        let mut acc = 0u64;
        for &c in rest.iter().rev() {
            acc = (mulmod(acc, r, p) + c) % p;
        }
        if acc == 0 {
            let lin = vec![(p - r) % p, 1];
            rest = fp_divexact(&rest, &lin, p);
            modular_factors.push(lin);
        }
    }
    // quadratic factors: gcd with x^(p^2) - x on what's left
    if rest.len() > 2 {
        let x_poly: FpPoly = vec![0, 1];
        let xp = fp_powmod(&x_poly, p, &rest, p);
        let xpp = fp_powmod(&xp, p, &rest, p);
        let diff = fp_sub(&xpp, &x_poly, p);
        let quads = fp_gcd(&rest, &diff, p);
        if quads.len() > 1 {
            let mut rng = Xorshift(0x9e3779b97f4a7c15);
            let mut qs = Vec::new();
            fp_split_quadratics(&quads, p, &mut rng, &mut qs);
            modular_factors.extend(qs);
        }
    }

    // lift each candidate and verify
    let mut out = Vec::new();
    for h0 in modular_factors {
        let q0 = fp_divexact(&gp, &h0, p);
        let cand = if n + 1 == h0.len() {
            g.clone()
        } else {
            hensel_lift_factor(g, &h0, &q0, p, &target)
        };
        if let Some(_cof) = g.div_exact_monic(&cand) {
            out.push(cand);
        }
    }
    out
}

/// All rational roots of a nonzero integer polynomial.
pub fn rational_roots(g: &IntPoly) -> Vec<Rational> {
    let mut roots = Vec::new();
    if g.is_zero() || g.degree() == 0 {
        return roots;
    }
    // strip powers of x
    let mut g = g.clone();
    while g.coeffs.first().map_or(false, |c| c.is_zero()) {
        g.coeffs.remove(0);
        if roots.is_empty() {
            roots.push(rat(0));
        }
    }
    if g.degree() == 0 {
        return roots;
    }
    let sf = g.squarefree_primitive();
    if sf.degree() == 1 {
        roots.push(Rational::new(-sf.coeffs[0].clone(), sf.coeffs[1].clone()));
        return dedup_rats(roots);
    }
    if sf.degree() == 2 {
        let (c, b, a) = (&sf.coeffs[0], &sf.coeffs[1], &sf.coeffs[2]);
        let disc = b * b - BigInt::from(4) * a * c;
        if let Some(s) = perfect_sqrt(&disc) {
            roots.push(Rational::new(-b + &s, BigInt::from(2) * a));
            roots.push(Rational::new(-b - &s, BigInt::from(2) * a));
        }
        return dedup_rats(roots);
    }
    let (monic, lc) = monicize(&sf);
    for f in small_monic_factors(&monic, None) {
        if f.degree() == 1 {
            roots.push(Rational::new(-f.coeffs[0].clone(), lc.clone()));
        }
    }
    dedup_rats(roots)
}

fn dedup_rats(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v.dedup();
    v
}

/// Roots of g lying in ℚ(√d) but not in ℚ, as pairs (u, v) meaning u + v√d
/// (both members of each conjugate pair are returned). d must be squarefree,
/// not 0 or 1.
pub fn quadratic_irrational_roots(g: &IntPoly, d: &Integer) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    if g.is_zero() || g.degree() == 0 {
        return out;
    }
    let mut g = g.clone();
    while g.coeffs.first().map_or(false, |c| c.is_zero()) {
        g.coeffs.remove(0);
    }
    if g.degree() < 2 {
        return out;
    }
    let sf = g.squarefree_primitive();
    if sf.degree() < 2 {
        return out;
    }
    let mut push_quadratic = |a: &BigInt, b: &BigInt, c: &BigInt| {
        // roots of a x^2 + b x + c in Q(sqrt d): disc = d * s^2 required
        let disc = b * b - BigInt::from(4) * a * c;
        if disc.is_zero() || (&disc % d).is_zero() == false {
            return;
        }
        let quot = &disc / d;
        if let Some(s) = perfect_sqrt(&quot) {
            if s.is_zero() {
                return;
            }
            let den = Rational::from_integer(BigInt::from(2) * a);
            let u = Rational::from_integer(-b) / &den;
            let v = Rational::from_integer(s) / &den;
            out.push((u.clone(), v.clone()));
            out.push((u, -v));
        }
    };
    if sf.degree() == 2 {
        push_quadratic(&sf.coeffs[2].clone(), &sf.coeffs[1].clone(), &sf.coeffs[0].clone());
        return out;
    }
    let (monic, lc) = monicize(&sf);
    for f in small_monic_factors(&monic, Some(d)) {
        if f.degree() == 2 {
            // monic X^2 + B X + C; roots of g are X/lc
            // root x = X/lc where X^2 + B X + C = 0  <=>  lc^2 x^2 + B lc x + C = 0
            let b_scaled = &f.coeffs[1] * &lc;
            push_quadratic(&(&lc * &lc), &b_scaled, &f.coeffs[0].clone());
        }
    }
    out
}

/// All roots of g in ℚ(√d): the rational ones and the irrational ones.
pub fn roots_in_quadratic_field(
    g: &IntPoly,
    d: &Integer,
) -> (Vec<Rational>, Vec<(Rational, Rational)>) {
    (rational_roots(g), quadratic_irrational_roots(g, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn divrem_roundtrip() {
        let f = RatPoly::from_int_coeffs(&[2, 0, -3, 1, 4]);
        let g = RatPoly::from_int_coeffs(&[1, 2, 1]);
        let (q, rem) = f.divrem(&g);
        assert_eq!(q.mul(&g).add(&rem), f);
        assert!(rem.degree() < g.degree());
    }

    #[test]
    fn gcd_of_common_factor() {
        let common = RatPoly::from_int_coeffs(&[-1, 1]); // x - 1
        let f = common.mul(&RatPoly::from_int_coeffs(&[3, 1]));
        let g = common.mul(&RatPoly::from_int_coeffs(&[5, 0, 1]));
        assert_eq!(f.gcd(&g), common);
    }

    #[test]
    fn rational_roots_simple() {
        // (x - 2)(2x + 3)(x^2 + 1)
        let f = RatPoly::from_int_coeffs(&[-2, 1])
            .mul(&RatPoly::from_int_coeffs(&[3, 2]))
            .mul(&RatPoly::from_int_coeffs(&[1, 0, 1]))
            .primitive_int();
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![r(-3, 2), r(2, 1)]);
    }

    #[test]
    fn rational_roots_with_multiplicity_and_zero() {
        // x^2 (x - 5)^3
        let f = RatPoly::from_int_coeffs(&[0, 0, 1])
            .mul(&RatPoly::from_int_coeffs(&[-5, 1]))
            .mul(&RatPoly::from_int_coeffs(&[-5, 1]))
            .mul(&RatPoly::from_int_coeffs(&[-5, 1]))
            .primitive_int();
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![r(0, 1), r(5, 1)]);
    }

    #[test]
    fn rational_roots_high_degree() {
        // (3x - 1)(x^4 + x + 7)(x - 12)
        let f = RatPoly::from_int_coeffs(&[-1, 3])
            .mul(&RatPoly::from_int_coeffs(&[7, 1, 0, 0, 1]))
            .mul(&RatPoly::from_int_coeffs(&[-12, 1]))
            .primitive_int();
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![r(1, 3), r(12, 1)]);
    }

    #[test]
    fn quadratic_roots_found() {
        // (x^2 - 2x - 1) has roots 1 ± √2
        let f = IntPoly::from_i64(&[-1, -2, 1]);
        let roots = quadratic_irrational_roots(&f, &BigInt::from(2));
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&(r(1, 1), r(1, 1))));
        assert!(roots.contains(&(r(1, 1), r(-1, 1))));
        // no roots in Q(sqrt 3)
        assert!(quadratic_irrational_roots(&f, &BigInt::from(3)).is_empty());
    }

    #[test]
    fn quadratic_roots_embedded_in_big_poly() {
        // (x^2 + x + 1)(x^2 - 12)(x^3 + x + 2) over Q(sqrt -3) and Q(sqrt 3)
        let f = RatPoly::from_int_coeffs(&[1, 1, 1])
            .mul(&RatPoly::from_int_coeffs(&[-12, 0, 1]))
            .mul(&RatPoly::from_int_coeffs(&[2, 1, 0, 1]))
            .primitive_int();
        // x^2 + x + 1: roots (-1 ± √-3)/2
        let roots = quadratic_irrational_roots(&f, &BigInt::from(-3));
        assert!(roots.contains(&(r(-1, 2), r(1, 2))));
        assert_eq!(roots.len(), 2);
        // x^2 - 12: roots ± 2√3
        let roots3 = quadratic_irrational_roots(&f, &BigInt::from(3));
        assert!(roots3.contains(&(r(0, 1), r(2, 1))));
        assert_eq!(roots3.len(), 2);
        // rational root of the cubic factor
        assert_eq!(rational_roots(&f), vec![r(-1, 1)]);
    }

    #[test]
    fn quadratic_roots_nonmonic() {
        // (4x^2 - 4x - 1): roots (1 ± √2)/2
        let f = IntPoly::from_i64(&[-1, -4, 4]);
        let roots = quadratic_irrational_roots(&f, &BigInt::from(2));
        assert!(roots.contains(&(r(1, 2), r(1, 2))));
        // and inside a product with an irrelevant quartic
        let f2 = f
            .to_rat()
            .mul(&RatPoly::from_int_coeffs(&[1, 0, 1, 0, 1]))
            .primitive_int();
        let roots2 = quadratic_irrational_roots(&f2, &BigInt::from(2));
        assert!(roots2.contains(&(r(1, 2), r(1, 2))));
        assert_eq!(roots2.len(), 2);
    }

    #[test]
    fn int_squarefree_strips_powers() {
        // (x+1)^2 (x-3) -> (x+1)(x-3), up to sign/content
        let f = RatPoly::from_int_coeffs(&[1, 1])
            .mul(&RatPoly::from_int_coeffs(&[1, 1]))
            .mul(&RatPoly::from_int_coeffs(&[-3, 1]))
            .primitive_int();
        let sf = f.squarefree_primitive();
        assert_eq!(sf, IntPoly::from_i64(&[-3, -2, 1]));
        // already squarefree with content: 6(x^2+1)(x-2)
        let g = RatPoly::from_int_coeffs(&[1, 0, 1])
            .mul(&RatPoly::from_int_coeffs(&[-12, 6]))
            .primitive_int();
        let sf = g.squarefree_primitive();
        assert_eq!(sf, IntPoly::from_i64(&[-2, 1, -2, 1]));
        // nonmonic with a squared factor: (2x-1)^2 (x+5)
        let h = RatPoly::from_int_coeffs(&[-1, 2])
            .mul(&RatPoly::from_int_coeffs(&[-1, 2]))
            .mul(&RatPoly::from_int_coeffs(&[5, 1]))
            .primitive_int();
        let sf = h.squarefree_primitive();
        assert_eq!(rational_roots(&sf), vec![r(-5, 1), r(1, 2)]);
        assert_eq!(sf.degree(), 2);
    }

    #[test]
    fn squarefree_part_strips_powers() {
        let f = RatPoly::from_int_coeffs(&[1, 1]); // x + 1
        let g = f.mul(&f).mul(&RatPoly::from_int_coeffs(&[-3, 1]));
        let sf = g.squarefree_part();
        // (x+1)(x-3) monic
        assert_eq!(sf, RatPoly::from_int_coeffs(&[-3, -2, 1]));
    }
}
