//! Exact integer and rational arithmetic helpers: factorization, squarefree
//! decomposition, Kronecker symbols, quadratic residues and the Euler totient.
//!
//! All functions are pure and operate on arbitrary-precision values. The
//! factorization routines are tuned for the sizes that show up in twist
//! discriminants (well below 2^128), not for cryptographic inputs.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ArithError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("composite cofactor {0} could not be split within the budget")]
    FactorizationTimeout(BigInt),
    #[error("{0} is not an odd prime")]
    NotPrime(BigInt),
    #[error("input must be positive")]
    NonPositive,
}

/// Signed prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u64, base: u64) -> bool {
    // returns true if n passes (is a probable prime to this base)
    let a = base % n;
    if a == 0 {
        return true;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut x = powmod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic for n < 2^64 with this witness set
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .all(|&a| miller_rabin_u64(n, a))
}

fn miller_rabin_big(n: &BigInt, base: u64) -> bool {
    let a = BigInt::from(base) % n;
    if a.is_zero() {
        return true;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Primality check, deterministic below 2^64, Miller–Rabin with a fixed
/// battery of 40 prime bases above that (the documented working range is
/// |n| < 2^128).
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != num_bigint::Sign::Plus {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    const BASES: [u64; 40] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
    ];
    BASES.iter().all(|&a| miller_rabin_big(n, a))
}

fn pollard_brent_u64(n: u64) -> Option<u64> {
    // Brent's cycle variant of Pollard rho; n must be odd composite.
    for c in 1..40u64 {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut ys, mut q, mut g) = (2u64, 0u64, 1u64, 1u64);
        let mut y = 2u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y).max(1), n);
                }
                g = gcd_u64(q, n);
                k += lim;
            }
            r <<= 1;
            if r > 1 << 24 {
                break;
            }
        }
        if g == n {
            // backtrack
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys).max(1), n);
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn pollard_brent_big(n: &BigInt) -> Option<BigInt> {
    let one = BigInt::one();
    for c in 1u64..20 {
        let cc = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &cc) % n;
        let mut x = BigInt::from(2u32);
        let mut y = x.clone();
        let mut g = one.clone();
        let mut count = 0u64;
        while g.is_one() && count < 1 << 22 {
            x = f(&x);
            y = f(&f(&y));
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break;
            }
            g = diff.gcd(n);
            count += 1;
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn split(n: &BigInt, out: &mut Vec<BigInt>) -> Result<(), ArithError> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(n) {
        out.push(n.clone());
        return Ok(());
    }
    let d = if let Some(v) = n.to_u64() {
        pollard_brent_u64(v).map(BigInt::from)
    } else {
        pollard_brent_big(n)
    };
    match d {
        Some(d) => {
            split(&d, out)?;
            split(&(n / &d), out)?;
            Ok(())
        }
        None => Err(ArithError::FactorizationTimeout(n.clone())),
    }
}

/// Factors a nonzero integer into primes.
///
/// Trial division up to 10^6, then Brent-style splitting with a
/// Miller–Rabin primality check; intended for |n| < 2^128.
pub fn factorize(n: &BigInt) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let sign = if n.is_negative() { -1i8 } else { 1 };
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, factors: &mut Vec<(BigInt, u32)>| {
        factors.push((p, e));
    };
    for p in TrialPrimes::new(TRIAL_LIMIT) {
        if m.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        if (&pb * &pb) > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            push(pb, e, &mut factors);
        }
    }
    if !m.is_one() {
        let mut rest = Vec::new();
        split(&m, &mut rest)?;
        rest.sort();
        let mut i = 0;
        while i < rest.len() {
            let mut e = 1u32;
            while i + 1 < rest.len() && rest[i + 1] == rest[i] {
                e += 1;
                rest.remove(i + 1);
            }
            push(rest[i].clone(), e, &mut factors);
            i += 1;
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    // merge (trial part and split part never overlap, but keep this robust)
    let mut merged: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in factors {
        match merged.last_mut() {
            Some(last) if last.0 == p => last.1 += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization {
        sign,
        factors: merged,
    })
}

/// Simple incremental trial-division prime source (2, 3, 5, ...).
struct TrialPrimes {
    current: u64,
    limit: u64,
}

impl TrialPrimes {
    fn new(limit: u64) -> Self {
        TrialPrimes { current: 1, limit }
    }
}

impl Iterator for TrialPrimes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.current += if self.current < 3 { 1 } else { 2 };
            if self.current > self.limit {
                return None;
            }
            if is_prime_u64(self.current) {
                return Some(self.current);
            }
        }
    }
}

/// Writes n = s * f^2 with s squarefree, sign(s) = sign(n), f >= 1.
pub fn squarefree_part(n: &BigInt) -> Result<(BigInt, BigInt), ArithError> {
    let fac = factorize(n)?;
    let mut s = BigInt::from(fac.sign);
    let mut f = BigInt::one();
    for (p, e) in &fac.factors {
        if e % 2 == 1 {
            s *= p;
        }
        f *= p.pow(e / 2);
    }
    Ok((s, f))
}

/// All signed squarefree divisors of n (both signs, including ±1).
pub fn squarefree_divisors(n: &BigInt) -> Result<Vec<BigInt>, ArithError> {
    let fac = factorize(n)?;
    let primes: Vec<&BigInt> = fac.distinct_primes().collect();
    let mut out = Vec::with_capacity(2usize << primes.len());
    for mask in 0u64..(1u64 << primes.len()) {
        let mut d = BigInt::one();
        for (i, p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d *= *p;
            }
        }
        out.push(-&d);
        out.push(d);
    }
    out.sort();
    Ok(out)
}

/// Full Kronecker symbol (a|n), defined for all integers including n <= 0.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i32 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut result = 1i32;
    let mut n = n.clone();
    if n.is_negative() {
        if a.is_negative() {
            result = -result;
        }
        n = -n;
    }
    // (a|2) factor
    let two = BigInt::from(2u32);
    let mut a = a.clone();
    if n.is_even() {
        if a.is_even() {
            return 0;
        }
        let s = n.trailing_zeros().unwrap_or(0);
        n >>= s;
        if s % 2 == 1 {
            let am8 = ((&a % 8u32) + 8u32) % 8u32;
            let am8 = am8.to_u32().unwrap();
            if am8 == 3 || am8 == 5 {
                result = -result;
            }
        }
    }
    // now n odd positive; standard Jacobi loop
    a = ((&a % &n) + &n) % &n;
    while !a.is_zero() {
        let s = a.trailing_zeros().unwrap_or(0);
        a >>= s;
        if s % 2 == 1 {
            let nm8 = (&n % 8u32).to_u32().unwrap();
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        // reciprocity
        let am4 = (&a % 4u32).to_u32().unwrap();
        let nm4 = (&n % 4u32).to_u32().unwrap();
        if am4 == 3 && nm4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    let _ = two;
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Outcome of a quadratic-residue test modulo an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueClass {
    Residue,
    NonResidue,
    /// p divides a.
    Zero,
}

/// Quadratic-residue test of a modulo an odd prime p.
pub fn quadratic_residue_class(a: &BigInt, p: &BigInt) -> Result<ResidueClass, ArithError> {
    if p <= &BigInt::from(2u32) || !is_prime(p) {
        return Err(ArithError::NotPrime(p.clone()));
    }
    match kronecker(a, p) {
        0 => Ok(ResidueClass::Zero),
        1 => Ok(ResidueClass::Residue),
        _ => Ok(ResidueClass::NonResidue),
    }
}

/// Convenience wrapper: true iff a is a nonzero square mod p, or p | a is
/// reported through `ResidueClass::Zero` by `quadratic_residue_class`.
pub fn is_quadratic_residue(a: &BigInt, p: &BigInt) -> Result<bool, ArithError> {
    Ok(matches!(
        quadratic_residue_class(a, p)?,
        ResidueClass::Residue | ResidueClass::Zero
    ))
}

/// Euler totient of n >= 1.
pub fn euler_phi(n: &BigInt) -> Result<BigInt, ArithError> {
    if !n.is_positive() {
        return Err(ArithError::NonPositive);
    }
    if n.is_one() {
        return Ok(BigInt::one());
    }
    let fac = factorize(n)?;
    let mut phi = BigInt::one();
    for (p, e) in &fac.factors {
        phi *= p.pow(e - 1) * (p - 1u32);
    }
    Ok(phi)
}

/// Square class of a nonzero rational: the squarefree part of num * den.
pub fn rational_square_class(x: &Rational) -> Result<BigInt, ArithError> {
    let prod = x.numer() * x.denom();
    Ok(squarefree_part(&prod)?.0)
}

/// Exact integer square root check.
pub fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = perfect_sqrt(x.numer())?;
    let d = perfect_sqrt(x.denom())?;
    Some(Rational::new(n, d))
}

/// Primes up to `limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; (limit + 1) as usize];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= limit as usize {
        if sieve[p] {
            let mut q = p * p;
            while q <= limit as usize {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factorize_small() {
        let f = factorize(&big(45)).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, vec![(big(3), 2), (big(5), 1)]);
        let f = factorize(&big(-59)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(big(59), 1)]);
        let f = factorize(&big(1)).unwrap();
        assert_eq!(f.sign, 1);
        assert!(f.factors.is_empty());
        assert_eq!(factorize(&big(0)), Err(ArithError::ZeroInput));
    }

    #[test]
    fn factorize_reconstructs() {
        for n in [-720i64, 97, 2 * 3 * 5 * 7 * 11 * 13, -1, 1 << 20] {
            let f = factorize(&big(n)).unwrap();
            assert_eq!(f.product(), big(n));
        }
        // beyond the trial limit
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.product(), n);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&big(12)).unwrap(), (big(3), big(2)));
        assert_eq!(squarefree_part(&big(-45)).unwrap(), (big(-5), big(3)));
        assert_eq!(squarefree_part(&big(7)).unwrap(), (big(7), big(1)));
    }

    #[test]
    fn squarefree_divisor_sets() {
        let mut d = squarefree_divisors(&big(45)).unwrap();
        d.sort();
        let mut expect: Vec<BigInt> = [1i64, -1, 3, -3, 5, -5, 15, -15]
            .iter()
            .map(|&x| big(x))
            .collect();
        expect.sort();
        assert_eq!(d, expect);
        assert_eq!(squarefree_divisors(&big(1)).unwrap().len(), 2);
        let d4 = squarefree_divisors(&big(-4)).unwrap();
        assert_eq!(d4, vec![big(-2), big(-1), big(1), big(2)]);
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(&big(-59), &big(5)), 1);
        assert_eq!(kronecker(&big(2), &big(7)), 1);
        assert_eq!(kronecker(&big(5), &big(1)), 1);
        // negative and even moduli
        assert_eq!(kronecker(&big(-59), &big(-20)), -1);
        assert_eq!(kronecker(&big(-23), &big(-24)), -1);
        assert_eq!(kronecker(&big(-11), &big(-24)), 1);
        assert_eq!(kronecker(&big(2), &big(0)), 0);
        assert_eq!(kronecker(&big(-1), &big(0)), 1);
    }

    #[test]
    fn residue_examples() {
        assert_eq!(
            quadratic_residue_class(&big(-1), &big(7)).unwrap(),
            ResidueClass::NonResidue
        );
        assert_eq!(
            quadratic_residue_class(&big(5), &big(11)).unwrap(),
            ResidueClass::Residue
        );
        assert_eq!(
            quadratic_residue_class(&big(1), &big(13)).unwrap(),
            ResidueClass::Residue
        );
        assert_eq!(
            quadratic_residue_class(&big(14), &big(7)).unwrap(),
            ResidueClass::Zero
        );
        assert!(quadratic_residue_class(&big(3), &big(8)).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(&big(25)).unwrap(), big(20));
        assert_eq!(euler_phi(&big(1)).unwrap(), big(1));
        assert_eq!(euler_phi(&big(20)).unwrap(), big(8));
        assert!(euler_phi(&big(0)).is_err());
    }

    #[test]
    fn kronecker_matches_brute_force_residues() {
        // (a|p) for odd prime p agrees with direct enumeration
        for &p in &[3i64, 5, 7, 11, 13, 101] {
            let squares: std::collections::HashSet<i64> =
                (1..p).map(|x| (x * x) % p).collect();
            for a in -50..50i64 {
                let k = kronecker(&big(a), &big(p));
                let r = a.rem_euclid(p);
                let expect = if r == 0 {
                    0
                } else if squares.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(k, expect, "a={a} p={p}");
            }
        }
    }
}
