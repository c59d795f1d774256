//! The modular-curve families X₁(11), X₁(2,10), X₁(2,12), their quadratic
//! twists, and the parametrized constructors of elliptic curves over ℚ whose
//! torsion over ℚ(√d) is ℤ/2×ℤ/10 or ℤ/2×ℤ/12.
//!
//! The pipeline is: search rational points on the d-twist of the relevant
//! modular curve, map each point to the rational parameter `t` of the
//! one-parameter curve family, build the candidate curve, and re-verify its
//! torsion over ℚ(√d) by direct computation.

use num_traits::{One, Zero};

use crate::arith::{rational_square_class, squarefree_part, ArithError, Integer, Rational};
use crate::curves::{
    torsion_over_quadratic, CurveError, CurveModel, Point, TwoTorsionModel,
};
use crate::descent::{
    point_search, prove_rank_zero_2_10, prove_rank_zero_2_12, rank_bounds, DescentError,
    DescentReport, RankZeroCertificate,
};

/// The three modular curves whose twists control torsion growth in quadratic
/// fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// X₁(11): y² − y = x³ − x²
    X1_11,
    /// X₁(2,10): y² = x³ + x² − x
    X1_2_10,
    /// X₁(2,12): y² = x³ − x² + x
    X1_2_12,
}

impl FamilyId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyId::X1_11 => "X1(11)",
            FamilyId::X1_2_10 => "X1(2,10)",
            FamilyId::X1_2_12 => "X1(2,12)",
        }
    }
}

/// Torsion structure targeted by the curve constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TorsionTarget {
    /// ℤ/2 × ℤ/10
    TwoByTen,
    /// ℤ/2 × ℤ/12
    TwoByTwelve,
}

impl TorsionTarget {
    pub fn as_str(&self) -> &'static str {
        match self {
            TorsionTarget::TwoByTen => "2x10",
            TorsionTarget::TwoByTwelve => "2x12",
        }
    }

    /// The (m, n) shape of the target group ℤ/m × ℤ/n.
    pub fn shape(&self) -> (u32, u32) {
        match self {
            TorsionTarget::TwoByTen => (2, 10),
            TorsionTarget::TwoByTwelve => (2, 12),
        }
    }

    /// The modular curve whose twists classify this torsion growth.
    pub fn family(&self) -> FamilyId {
        match self {
            TorsionTarget::TwoByTen => FamilyId::X1_2_10,
            TorsionTarget::TwoByTwelve => FamilyId::X1_2_12,
        }
    }
}

/// Errors from the family constructors and parameter maps.
#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("parameter t = {0} is excluded (degenerate curve or non-quadratic field)")]
    ExcludedParameter(Rational),
    #[error("the point at infinity has no parameter")]
    InfinityPoint,
    #[error("the parameter map is undefined at x = {0}")]
    UnmappablePoint(Rational),
    #[error("point has coordinates outside ℚ")]
    NonRationalPoint,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Descent(#[from] DescentError),
    /// Point search exhausted without producing a verified curve. Carries the
    /// descent report for the twist (rank 0 explains a genuine absence; a
    /// positive upper bound suggests raising the search height), plus a
    /// congruence certificate when the twist provably has rank 0.
    #[error("no suitable points found up to the height bound")]
    NoPointsFound {
        report: DescentReport,
        certificate: Option<RankZeroCertificate>,
    },
}

/// A member of a one-parameter family with prescribed torsion over ℚ(√d).
#[derive(Debug, Clone)]
pub struct ConstructedCurve {
    pub curve: CurveModel,
    pub t: Rational,
    /// Squarefree integer with ℚ(√d_class) the field of torsion growth.
    pub d_class: Integer,
    pub target: TorsionTarget,
    /// True once `torsion_over_quadratic` has confirmed the target group.
    pub verified: bool,
}

impl ConstructedCurve {
    pub fn to_json(&self) -> serde_json::Value {
        let [a1, a2, a3, a4, a6] = self.curve.coefficient_strings();
        serde_json::json!({
            "a1": a1,
            "a2": a2,
            "a3": a3,
            "a4": a4,
            "a6": a6,
            "t": self.t.to_string(),
            "d_class": self.d_class.to_string(),
            "target": self.target.as_str(),
            "verified": self.verified,
            "j_invariant": self
                .curve
                .j_invariant()
                .map(|j| j.to_string())
                .unwrap_or_else(|| "singular".to_string()),
        })
    }
}

/// The fixed Weierstrass model of a modular curve family.
pub fn family_model(id: FamilyId) -> CurveModel {
    match id {
        // y² − y = x³ − x²
        FamilyId::X1_11 => CurveModel::from_i64(0, -1, -1, 0, 0),
        // y² = x³ + x² − x
        FamilyId::X1_2_10 => CurveModel::from_i64(0, 1, 0, -1, 0),
        // y² = x³ − x² + x
        FamilyId::X1_2_12 => CurveModel::from_i64(0, -1, 0, 1, 0),
    }
}

/// The y² = x(x² + ax + b) form of a family with rational 2-torsion.
/// X₁(11) has no rational 2-torsion and is not representable this way.
pub fn family_two_torsion_model(id: FamilyId) -> Option<TwoTorsionModel> {
    match id {
        FamilyId::X1_11 => None,
        FamilyId::X1_2_10 => Some(TwoTorsionModel::from_i64(1, -1).expect("nonsingular")),
        FamilyId::X1_2_12 => Some(TwoTorsionModel::from_i64(-1, 1).expect("nonsingular")),
    }
}

fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Curve with ℤ/2×ℤ/10 torsion over ℚ(√d(t)), where d(t) = 8t³ − 8t² + 1:
/// y² + (1−c)xy − by = x³ − bx² with
/// b = t³(2t²−3t+1)/(t²−3t+1)², c = −t(2t²−3t+1)/(t²−3t+1).
pub fn jkl_curve_2_10(t: &Rational) -> Result<ConstructedCurve, FamilyError> {
    let half = Rational::new(Integer::from(1), Integer::from(2));
    let q = t * t - t * rat_i64(3) + rat_i64(1); // t² − 3t + 1
    if t.is_zero() || *t == half || t.is_one() || q.is_zero() {
        return Err(FamilyError::ExcludedParameter(t.clone()));
    }
    let p = t * t * rat_i64(2) - t * rat_i64(3) + rat_i64(1); // 2t² − 3t + 1
    let b = t * t * t * &p / (&q * &q);
    let c = -(t * &p) / &q;
    let d_t = t * t * t * rat_i64(8) - t * t * rat_i64(8) + rat_i64(1);
    finish_curve(t, &b, &c, &b, &d_t, TorsionTarget::TwoByTen)
}

/// Curve with ℤ/2×ℤ/12 torsion over ℚ(√d(t)), where d(t) = (t²−1)/(t²+3):
/// y² + (1−c)xy − (c+c²)y = x³ − (c+c²)x² with c = (1−t²)/(t⁴+3t²).
pub fn jkl_curve_2_12(t: &Rational) -> Result<ConstructedCurve, FamilyError> {
    let t2 = t * t;
    if t.is_zero() || (&t2).is_one() {
        return Err(FamilyError::ExcludedParameter(t.clone()));
    }
    let c = (rat_i64(1) - &t2) / (&t2 * &t2 + &t2 * rat_i64(3));
    let b = &c + &c * &c; // the a₂/a₃ coefficient c + c²
    // (t²−1)(t²+3) has the same square class as d(t) and clears denominators.
    let d_t = (&t2 - rat_i64(1)) * (&t2 + rat_i64(3));
    finish_curve(t, &b, &c, &b, &d_t, TorsionTarget::TwoByTwelve)
}

/// Shared tail: build y² + (1−c)xy − a3 y = x³ − a2 x², validate it, and take
/// the square class of d(t).
fn finish_curve(
    t: &Rational,
    a2_coeff: &Rational,
    c: &Rational,
    a3_coeff: &Rational,
    d_t: &Rational,
    target: TorsionTarget,
) -> Result<ConstructedCurve, FamilyError> {
    let curve = CurveModel::new(
        rat_i64(1) - c,
        -a2_coeff.clone(),
        -a3_coeff.clone(),
        Rational::zero(),
        Rational::zero(),
    );
    if !curve.is_nonsingular() {
        return Err(FamilyError::ExcludedParameter(t.clone()));
    }
    if d_t.is_zero() {
        return Err(FamilyError::ExcludedParameter(t.clone()));
    }
    let d_class = rational_square_class(d_t)?;
    if d_class.is_one() {
        // d(t) a nonzero square would make the "quadratic" field ℚ itself.
        return Err(FamilyError::ExcludedParameter(t.clone()));
    }
    Ok(ConstructedCurve {
        curve,
        t: t.clone(),
        d_class,
        target,
        verified: false,
    })
}

fn rational_xy(p: &Point) -> Result<(Rational, Rational), FamilyError> {
    match p {
        Point::Infinity => Err(FamilyError::InfinityPoint),
        Point::Rational { x, y } => Ok((x.clone(), y.clone())),
        Point::Quadratic { .. } => match p.simplify() {
            Point::Rational { x, y } => Ok((x, y)),
            _ => Err(FamilyError::NonRationalPoint),
        },
    }
}

/// Parameter of a point on dy² = x³ + x² − x: inverts x = 2t − 1.
pub fn point_to_parameter_2_10(p: &Point) -> Result<Rational, FamilyError> {
    let (x, _) = rational_xy(p)?;
    Ok((x + rat_i64(1)) / rat_i64(2))
}

/// Parameter of a point on dy² = x³ − x² + x, as a point (t, z) on the
/// quartic dz² = (t²−1)(t²+3).
///
/// The map is t = (x+1)/(x−1), z = 4y/(x−1)², derived by moving the rational
/// point t = 1, z = 0 of the quartic to infinity: substituting t = 1 + 1/u,
/// z = v/u² gives dv² = 8u³ + 8u² + 4u + 1, and x = 2u + 1, y = v carries
/// that cubic to dy² = x³ − x² + x. It is undefined at x = 1 (the preimage
/// of the base point) and sends x = 0 to the excluded parameter t = −1.
pub fn point_to_parameter_2_12(p: &Point) -> Result<(Rational, Rational), FamilyError> {
    let (x, y) = rational_xy(p)?;
    let den = &x - rat_i64(1);
    if den.is_zero() {
        return Err(FamilyError::UnmappablePoint(x));
    }
    let t = (&x + rat_i64(1)) / &den;
    let z = y * rat_i64(4) / (&den * &den);
    Ok((t, z))
}

/// Search the d-twist of the relevant modular curve for rational points up to
/// `height_bound`, map each through the parameter pipeline, and return up to
/// `count` curves with pairwise distinct j-invariants whose torsion over
/// ℚ(√d) is re-verified to equal the target group.
///
/// Twist convention: the twist of y² = x(x² + ax + b) by squarefree d is
/// y² = x(x² + adx + bd²); a point (X, Y) on the twist corresponds to
/// (x, y) = (X/d, Y/d²) with dy² = x³ + ax² + bx, the form in which the
/// parameter maps are stated.
pub fn construct_torsion_curves(
    target: TorsionTarget,
    d: &Integer,
    count: usize,
    height_bound: u64,
) -> Result<Vec<ConstructedCurve>, FamilyError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let (s, f) = squarefree_part(d)?;
    if !f.is_one() || s.is_one() || d.is_zero() {
        return Err(CurveError::NotSquarefree(d.clone()).into());
    }
    let base = family_two_torsion_model(target.family()).expect("family has 2-torsion");
    let twist = base.twist(d)?;
    let model = twist.curve_model();
    let d_rat = Rational::from_integer(d.clone());
    let (want_m, want_n) = target.shape();

    let mut out: Vec<ConstructedCurve> = Vec::new();
    let mut seen_j: Vec<Rational> = Vec::new();
    // Non-torsion points first: torsion points of the twist map to excluded
    // parameters or repeat the same handful of degenerate curves.
    let mut points = point_search(&model, height_bound);
    points.sort_by_key(|sp| !sp.non_torsion);
    for sp in &points {
        let (big_x, big_y) = match rational_xy(&sp.point) {
            Ok(xy) => xy,
            Err(_) => continue,
        };
        if big_y.is_zero() {
            continue; // 2-torsion
        }
        let x = &big_x / &d_rat;
        let y = &big_y / (&d_rat * &d_rat);
        let pt = Point::Rational { x, y };
        let built = match target {
            TorsionTarget::TwoByTen => {
                point_to_parameter_2_10(&pt).and_then(|t| jkl_curve_2_10(&t))
            }
            TorsionTarget::TwoByTwelve => {
                point_to_parameter_2_12(&pt).and_then(|(t, _z)| jkl_curve_2_12(&t))
            }
        };
        let mut cc = match built {
            Ok(cc) => cc,
            Err(
                FamilyError::ExcludedParameter(_)
                | FamilyError::UnmappablePoint(_)
                | FamilyError::InfinityPoint,
            ) => continue,
            Err(e) => return Err(e),
        };
        // The parameter pipeline must land in the requested field.
        if cc.d_class != s {
            continue;
        }
        let j = cc.curve.j_invariant().expect("nonsingular curve");
        if seen_j.contains(&j) {
            continue;
        }
        let tors = torsion_over_quadratic(&cc.curve, d)?;
        if (tors.m, tors.n) != (want_m, want_n) {
            continue;
        }
        cc.verified = true;
        seen_j.push(j);
        out.push(cc);
        if out.len() == count {
            return Ok(out);
        }
    }
    if !out.is_empty() {
        return Ok(out);
    }
    let report = rank_bounds(&twist, 1 << 10)?;
    let certificate = match target {
        TorsionTarget::TwoByTen => prove_rank_zero_2_10(d).ok(),
        TorsionTarget::TwoByTwelve => prove_rank_zero_2_12(d).ok(),
    };
    Err(FamilyError::NoPointsFound {
        report,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(Integer::from(n), Integer::from(d))
    }

    #[test]
    fn family_models_match_fixed_equations() {
        let e11 = family_model(FamilyId::X1_11);
        assert_eq!(e11, CurveModel::from_i64(0, -1, -1, 0, 0));
        let e10 = family_model(FamilyId::X1_2_10);
        assert_eq!(e10, CurveModel::from_i64(0, 1, 0, -1, 0));
        let e12 = family_model(FamilyId::X1_2_12);
        assert_eq!(e12, CurveModel::from_i64(0, -1, 0, 1, 0));
        for e in [&e11, &e10, &e12] {
            assert!(e.is_nonsingular());
        }
        // The x(x²+ax+b) forms describe the same curves.
        let m10 = family_two_torsion_model(FamilyId::X1_2_10).unwrap();
        assert_eq!(m10.curve_model(), e10);
        let m12 = family_two_torsion_model(FamilyId::X1_2_12).unwrap();
        assert_eq!(m12.curve_model(), e12);
        assert!(family_two_torsion_model(FamilyId::X1_11).is_none());
    }

    #[test]
    fn curve_2_10_at_t_2() {
        let cc = jkl_curve_2_10(&rat(2, 1)).unwrap();
        // b = 24, c = 6 → y² − 5xy − 24y = x³ − 24x²
        assert_eq!(cc.curve.a1, rat(-5, 1));
        assert_eq!(cc.curve.a2, rat(-24, 1));
        assert_eq!(cc.curve.a3, rat(-24, 1));
        assert_eq!(cc.d_class, Integer::from(33));
        assert_eq!(jkl_curve_2_10(&rat(3, 1)).unwrap().d_class, Integer::from(145));
    }

    #[test]
    fn curve_2_10_excluded_parameters() {
        for t in [rat(0, 1), rat(1, 2), rat(1, 1)] {
            assert!(matches!(
                jkl_curve_2_10(&t),
                Err(FamilyError::ExcludedParameter(_))
            ));
        }
    }

    #[test]
    fn curve_2_12_at_small_t() {
        let cc = jkl_curve_2_12(&rat(2, 1)).unwrap();
        // c = (1−4)/(16+12) = −3/28
        assert_eq!(cc.curve.a1, rat(31, 28));
        assert_eq!(cc.d_class, Integer::from(21));
        assert_eq!(jkl_curve_2_12(&rat(3, 1)).unwrap().d_class, Integer::from(6));
        for t in [rat(-1, 1), rat(0, 1), rat(1, 1)] {
            assert!(matches!(
                jkl_curve_2_12(&t),
                Err(FamilyError::ExcludedParameter(_))
            ));
        }
    }

    #[test]
    fn parameter_map_2_10() {
        let p = Point::Rational { x: rat(3, 1), y: rat(1, 1) };
        assert_eq!(point_to_parameter_2_10(&p).unwrap(), rat(2, 1));
        let p = Point::Rational { x: rat(-1, 1), y: rat(0, 1) };
        assert_eq!(point_to_parameter_2_10(&p).unwrap(), rat(0, 1));
        let p = Point::Rational { x: rat(0, 1), y: rat(0, 1) };
        assert_eq!(point_to_parameter_2_10(&p).unwrap(), rat(1, 2));
        assert!(matches!(
            point_to_parameter_2_10(&Point::Infinity),
            Err(FamilyError::InfinityPoint)
        ));
    }

    #[test]
    fn parameter_map_2_12_lands_on_quartic() {
        // (x, y) on d y² = x³ − x² + x must map to (t, z) on
        // d z² = (t²−1)(t²+3); check with the d = −23 generator image.
        let d = rat(-23, 1);
        let x = rat(-49, 575);
        let y = rat(4207, 66125);
        assert_eq!(&d * &y * &y, &x * &x * &x - &x * &x + &x);
        let p = Point::Rational { x, y };
        let (t, z) = point_to_parameter_2_12(&p).unwrap();
        assert_eq!(t, rat(-263, 312));
        let lhs = &d * &z * &z;
        let rhs = (&t * &t - rat(1, 1)) * (&t * &t + rat(3, 1));
        assert_eq!(lhs, rhs);
        // The pole of the map.
        let p = Point::Rational { x: rat(1, 1), y: rat(1, 1) };
        assert!(matches!(
            point_to_parameter_2_12(&p),
            Err(FamilyError::UnmappablePoint(_))
        ));
        // x = 0 maps to the excluded parameter t = −1.
        let p = Point::Rational { x: rat(0, 1), y: rat(0, 1) };
        let (t, _) = point_to_parameter_2_12(&p).unwrap();
        assert_eq!(t, rat(-1, 1));
    }

    #[test]
    fn parameter_round_trip_2_10() {
        // From admissible t, build the twist point and invert back to t.
        for t in [rat(2, 1), rat(3, 1), rat(-1, 2), rat(5, 3)] {
            let x = &t * rat(2, 1) - rat(1, 1); // x = 2t − 1
            let d_t = &x * &x * &x + &x * &x - &x; // equals 8t³ − 8t² + 1
            let d_class = rational_square_class(&d_t).unwrap();
            let ratio = &d_t / Rational::from_integer(d_class.clone());
            let y = crate::arith::rational_sqrt(&ratio).unwrap();
            // (X, Y) = (d x, d² y) lies on the d_class-twist.
            let d_rat = Rational::from_integer(d_class.clone());
            let big_x = &d_rat * &x;
            let big_y = &d_rat * &d_rat * &y;
            let base = family_two_torsion_model(FamilyId::X1_2_10).unwrap();
            let twist = base.twist(&d_class).unwrap().curve_model();
            let p = Point::Rational { x: big_x, y: big_y };
            assert!(twist.contains(&p));
            let back =
                point_to_parameter_2_10(&Point::Rational { x: x.clone(), y })
                    .unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn construct_2_12_for_minus_23() {
        let got =
            construct_torsion_curves(TorsionTarget::TwoByTwelve, &Integer::from(-23), 1, 10_000)
                .unwrap();
        assert_eq!(got.len(), 1);
        let cc = &got[0];
        assert!(cc.verified);
        assert_eq!(cc.d_class, Integer::from(-23));
        let json = cc.to_json();
        assert_eq!(json["target"], "2x12");
        assert_eq!(json["verified"], true);
    }

    #[test]
    fn construct_2_10_rank_zero_twist_reports_certificate() {
        // d = −3 ≡ −3 with 3 ≡ 3 (mod 20): the twist has rank 0, so no
        // points exist and a congruence certificate accompanies the failure.
        let err =
            construct_torsion_curves(TorsionTarget::TwoByTen, &Integer::from(-3), 1, 200)
                .unwrap_err();
        match err {
            FamilyError::NoPointsFound { report, certificate } => {
                assert_eq!(report.rank_upper, 0);
                let cert = certificate.expect("certificate for d = -3");
                assert!(cert.replay());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn construct_rejects_non_squarefree_d() {
        let err =
            construct_torsion_curves(TorsionTarget::TwoByTen, &Integer::from(12), 1, 100)
                .unwrap_err();
        assert!(matches!(err, FamilyError::Curve(CurveError::NotSquarefree(_))));
    }
}
