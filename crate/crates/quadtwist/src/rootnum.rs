//! Root numbers of quadratic twists via the Kronecker character, and the
//! parity-based conditional rank predictions they support.
//!
//! For an elliptic curve E/ℚ of conductor N with root number w(E), and a
//! fundamental discriminant D coprime to 2N, the twist satisfies
//! w(E_D/ℚ) = χ_D(−N)·w(E/ℚ). Under the parity conjecture the analytic-rank
//! parity this encodes equals the Mordell–Weil rank parity, so an odd twist
//! with descent upper bound 1 has rank exactly 1 — conditionally.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::arith::{kronecker, squarefree_part, ArithError, Integer};
use crate::descent::{rank_bounds, DescentError};
use crate::families::{family_two_torsion_model, FamilyId};

/// Conductors of the two base curves.
pub const CONDUCTOR_X1_2_10: i64 = 20;
pub const CONDUCTOR_X1_2_12: i64 = 24;

/// Root numbers of the base curves X₁(2,10) and X₁(2,12). Both curves have
/// algebraic and analytic rank 0, forcing w = +1; stored as data, not
/// computed.
pub const ROOT_NUMBER_X1_2_10: RootNumber = RootNumber { value: 1 };
pub const ROOT_NUMBER_X1_2_12: RootNumber = RootNumber { value: 1 };

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootNumber {
    /// +1 or −1.
    pub value: i8,
}

impl RootNumber {
    pub fn new(value: i8) -> Option<RootNumber> {
        (value == 1 || value == -1).then_some(RootNumber { value })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RootNumberError {
    #[error("d = {0} must be squarefree and not 0 or 1")]
    NotSquarefree(Integer),
    #[error("fundamental discriminant {0} is not coprime to 2N = {1}")]
    NotCoprime(Integer, Integer),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Descent(#[from] DescentError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankConclusion {
    /// Descent alone bounds the rank by 0: unconditional.
    RankZero,
    /// Odd parity and descent upper bound 1: rank 1 under the parity
    /// conjecture.
    RankOneConditional,
    Inconclusive,
}

impl RankConclusion {
    pub fn as_str(&self) -> &'static str {
        match self {
            RankConclusion::RankZero => "RankZero",
            RankConclusion::RankOneConditional => "RankOneConditional",
            RankConclusion::Inconclusive => "Inconclusive",
        }
    }
}

/// Parity-based rank prediction for the d-twist of a modular-curve family.
#[derive(Debug, Clone)]
pub struct ParityPrediction {
    pub family: FamilyId,
    pub d: Integer,
    pub predicted_parity: Parity,
    pub descent_upper: u32,
    pub conclusion: RankConclusion,
}

impl ParityPrediction {
    /// A prediction is conditional (on the parity conjecture) exactly when it
    /// asserts rank 1 from odd parity.
    pub fn conditional(&self) -> bool {
        self.conclusion == RankConclusion::RankOneConditional
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.as_str(),
            "d": self.d.to_string(),
            "predicted_parity": self.predicted_parity.as_str(),
            "descent_upper": self.descent_upper,
            "conclusion": self.conclusion.as_str(),
            "conditional": self.conditional(),
        })
    }
}

/// The discriminant of ℚ(√d): d itself if d ≡ 1 (mod 4), else 4d.
pub fn fundamental_discriminant(d: &Integer) -> Result<Integer, RootNumberError> {
    let (s, f) = squarefree_part(d)?;
    if !f.is_one() || s.is_one() || d.is_zero() {
        return Err(RootNumberError::NotSquarefree(d.clone()));
    }
    if d.mod_floor(&Integer::from(4)).is_one() {
        Ok(d.clone())
    } else {
        Ok(d * 4)
    }
}

/// Root number of the d-twist: χ_D(−N)·w with D the fundamental discriminant
/// of ℚ(√d), requiring gcd(D, 2N) = 1.
pub fn twist_root_number(
    w: RootNumber,
    n: &Integer,
    d: &Integer,
) -> Result<RootNumber, RootNumberError> {
    let disc = fundamental_discriminant(d)?;
    let two_n = n * 2;
    if !disc.gcd(&two_n).is_one() {
        return Err(RootNumberError::NotCoprime(disc, two_n));
    }
    let chi = kronecker(&disc, &(-n));
    Ok(RootNumber {
        value: w.value * chi as i8,
    })
}

fn family_data(family: FamilyId) -> Option<(RootNumber, i64)> {
    match family {
        FamilyId::X1_2_10 => Some((ROOT_NUMBER_X1_2_10, CONDUCTOR_X1_2_10)),
        FamilyId::X1_2_12 => Some((ROOT_NUMBER_X1_2_12, CONDUCTOR_X1_2_12)),
        FamilyId::X1_11 => None,
    }
}

/// Combines the twist root number with the descent rank upper bound for the
/// d-twist of X₁(2,10) or X₁(2,12).
pub fn parity_prediction(
    family: FamilyId,
    d: &Integer,
    torsor_bound: u64,
) -> Result<ParityPrediction, RootNumberError> {
    let (w, n) = family_data(family)
        .ok_or_else(|| RootNumberError::NotSquarefree(d.clone()))?;
    let tw = twist_root_number(w, &Integer::from(n), d)?;
    let predicted_parity = if tw.value == 1 { Parity::Even } else { Parity::Odd };
    let base = family_two_torsion_model(family).expect("family has 2-torsion");
    let twist = base
        .twist(d)
        .map_err(|_| RootNumberError::NotSquarefree(d.clone()))?;
    let report = rank_bounds(&twist, torsor_bound)?;
    let conclusion = if report.rank_upper == 0 {
        RankConclusion::RankZero
    } else if predicted_parity == Parity::Odd && report.rank_upper == 1 {
        RankConclusion::RankOneConditional
    } else {
        RankConclusion::Inconclusive
    };
    Ok(ParityPrediction {
        family,
        d: d.clone(),
        predicted_parity,
        descent_upper: report.rank_upper,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> Integer {
        Integer::from(n)
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(&big(-59)).unwrap(), big(-59));
        assert_eq!(fundamental_discriminant(&big(-5)).unwrap(), big(-20));
        assert_eq!(fundamental_discriminant(&big(3)).unwrap(), big(12));
        assert_eq!(fundamental_discriminant(&big(5)).unwrap(), big(5));
        for bad in [0i64, 1, 4, 18] {
            assert!(fundamental_discriminant(&big(bad)).is_err());
        }
    }

    #[test]
    fn twist_root_numbers_match_known_values() {
        let w = RootNumber { value: 1 };
        assert_eq!(
            twist_root_number(w, &big(20), &big(-59)).unwrap().value,
            -1
        );
        assert_eq!(
            twist_root_number(w, &big(24), &big(-23)).unwrap().value,
            -1
        );
        assert_eq!(twist_root_number(w, &big(24), &big(-11)).unwrap().value, 1);
        // d sharing a factor with 2N is rejected
        assert!(matches!(
            twist_root_number(w, &big(20), &big(-5)),
            Err(RootNumberError::NotCoprime(_, _))
        ));
        assert!(matches!(
            twist_root_number(w, &big(24), &big(-6)),
            Err(RootNumberError::NotCoprime(_, _))
        ));
    }

    #[test]
    fn congruence_classes_control_the_sign() {
        let w = RootNumber { value: 1 };
        for p in crate::arith::primes_up_to(500) {
            let d = big(-(p as i64));
            match p % 20 {
                3 | 7 => assert_eq!(
                    twist_root_number(w, &big(20), &d).unwrap().value,
                    1,
                    "p = {p}"
                ),
                11 | 19 => assert_eq!(
                    twist_root_number(w, &big(20), &d).unwrap().value,
                    -1,
                    "p = {p}"
                ),
                _ => {}
            }
            match p % 24 {
                11 => assert_eq!(
                    twist_root_number(w, &big(24), &d).unwrap().value,
                    1,
                    "p = {p}"
                ),
                23 => assert_eq!(
                    twist_root_number(w, &big(24), &d).unwrap().value,
                    -1,
                    "p = {p}"
                ),
                _ => {}
            }
        }
    }

    #[test]
    fn multiplicative_in_coprime_fundamental_discriminants() {
        // χ_{D₁D₂}(−N) = χ_{D₁}(−N)·χ_{D₂}(−N) for coprime D₁, D₂
        let n = big(-20);
        let pairs = [(-3i64, -7), (5, -3), (13, -7), (-11, 17)];
        for (d1, d2) in pairs {
            let disc1 = fundamental_discriminant(&big(d1)).unwrap();
            let disc2 = fundamental_discriminant(&big(d2)).unwrap();
            assert!(disc1.gcd(&disc2).is_one());
            assert_eq!(
                kronecker(&(&disc1 * &disc2), &n),
                kronecker(&disc1, &n) * kronecker(&disc2, &n)
            );
        }
    }

    #[test]
    fn predictions_for_the_reference_twists() {
        let p = parity_prediction(FamilyId::X1_2_10, &big(-19), 1 << 10).unwrap();
        assert_eq!(p.predicted_parity, Parity::Odd);
        assert_eq!(p.conclusion, RankConclusion::RankOneConditional);
        assert!(p.conditional());

        let p = parity_prediction(FamilyId::X1_2_10, &big(-3), 1 << 10).unwrap();
        assert_eq!(p.predicted_parity, Parity::Even);
        assert_eq!(p.conclusion, RankConclusion::RankZero);
        assert!(!p.conditional());
        assert_eq!(p.to_json()["conditional"], false);

        let p = parity_prediction(FamilyId::X1_2_12, &big(-23), 1 << 10).unwrap();
        assert_eq!(p.predicted_parity, Parity::Odd);
        assert_eq!(p.conclusion, RankConclusion::RankOneConditional);
    }
}
