//! End-to-end acceptance checks for the descent, torsion, family, root-number
//! and rule-engine pipelines. Each test prints a single pass/fail line
//! (visible with `--nocapture`) and enforces its runtime budget.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use quadtwist::arith::{primes_up_to, rational_square_class};
use quadtwist::classify::{
    cyclotomic_elimination, quadratic_nonexistence, replay_cyclotomic_entry,
    replay_quadratic_entry, EliminationReport, TorsionGroupId,
};
use quadtwist::curves::{
    dual_isogeny, lutz_nagell_torsion, torsion_over_quadratic, torsion_over_q, two_isogeny,
    CurveModel, Point, QuadElem, TwoTorsionModel,
};
use quadtwist::descent::{
    point_search, prove_rank_zero_2_10, prove_rank_zero_2_12, rank_bounds, DescentError,
    DescentStatus,
};
use quadtwist::families::{
    construct_torsion_curves, family_two_torsion_model, FamilyId, TorsionTarget,
};
use quadtwist::rootnum::{twist_root_number, RootNumber};
use quadtwist::{Integer, Rational};

fn criterion(id: u32, desc: &str, budget: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    match &outcome {
        Ok(()) if elapsed <= budget => {
            println!("criterion {id:02} [{desc}]: PASS ({:.1}s)", elapsed.as_secs_f64());
        }
        Ok(()) => {
            println!(
                "criterion {id:02} [{desc}]: FAIL (over budget: {:.1}s > {:.1}s)",
                elapsed.as_secs_f64(),
                budget.as_secs_f64()
            );
            panic!("criterion {id} exceeded its runtime budget");
        }
        Err(msg) => {
            println!("criterion {id:02} [{desc}]: FAIL ({msg})");
            panic!("criterion {id} failed: {msg}");
        }
    }
}

fn big(n: i64) -> Integer {
    Integer::from(n)
}

fn twist_of(family: FamilyId, d: &Integer) -> TwoTorsionModel {
    family_two_torsion_model(family)
        .expect("family has rational 2-torsion")
        .twist(d)
        .expect("valid twist")
}

#[test]
fn criterion_01_rank_zero_2_10_primes() {
    criterion(
        1,
        "rank-zero twists of X1(2,10): p < 2000, p = 3,7 mod 20",
        Duration::from_secs(120),
        || {
            for p in primes_up_to(2000) {
                if p % 20 != 3 && p % 20 != 7 {
                    continue;
                }
                let d = big(-(p as i64));
                let cert = prove_rank_zero_2_10(&d)
                    .map_err(|e| format!("no certificate for d = -{p}: {e}"))?;
                if !cert.replay() {
                    return Err(format!("certificate for d = -{p} fails replay"));
                }
                let report = rank_bounds(&twist_of(FamilyId::X1_2_10, &d), 1 << 10)
                    .map_err(|e| format!("descent failed for d = -{p}: {e}"))?;
                if report.rank_lower != 0
                    || report.rank_upper != 0
                    || report.status != DescentStatus::Exact
                {
                    return Err(format!(
                        "d = -{p}: expected (0, 0, Exact), got ({}, {}, {})",
                        report.rank_lower, report.rank_upper, report.status
                    ));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_02_rank_zero_2_12_primes_and_products() {
    criterion(
        2,
        "rank-zero twists of X1(2,12): p = 11 mod 24, and products pq < 1e5",
        Duration::from_secs(300),
        || {
            for p in primes_up_to(2000) {
                if p % 24 != 11 {
                    continue;
                }
                let d = big(-(p as i64));
                let cert = prove_rank_zero_2_12(&d)
                    .map_err(|e| format!("no certificate for d = -{p}: {e}"))?;
                if !cert.replay() {
                    return Err(format!("certificate for d = -{p} fails replay"));
                }
            }
            let pool: Vec<u64> = primes_up_to(100_000 / 11)
                .into_iter()
                .filter(|p| p % 24 == 11)
                .collect();
            let mut products = 0u32;
            for (i, &p) in pool.iter().enumerate() {
                for &q in &pool[i + 1..] {
                    if p * q >= 100_000 {
                        break;
                    }
                    let d = big((p * q) as i64);
                    let cert = prove_rank_zero_2_12(&d)
                        .map_err(|e| format!("no certificate for d = {}: {e}", p * q))?;
                    if !cert.replay() {
                        return Err(format!("certificate for d = {} fails replay", p * q));
                    }
                    products += 1;
                }
            }
            if products == 0 {
                return Err("no products pq < 1e5 were exercised".into());
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_03_conditional_rank_one_families() {
    criterion(
        3,
        "upper bound 1 and root number -1: p = 11,19 mod 20 and p = 23 mod 24",
        Duration::from_secs(300),
        || {
            let check = |family: FamilyId, n: i64, p: u64| -> Result<(), String> {
                let d = big(-(p as i64));
                let report = rank_bounds(&twist_of(family, &d), 1 << 10)
                    .map_err(|e| format!("descent failed for d = -{p}: {e}"))?;
                if report.rank_upper != 1 {
                    return Err(format!(
                        "{}: d = -{p} has rank_upper {}, expected 1",
                        family.as_str(),
                        report.rank_upper
                    ));
                }
                let w = twist_root_number(RootNumber { value: 1 }, &big(n), &d)
                    .map_err(|e| format!("root number failed for d = -{p}: {e}"))?;
                if w.value != -1 {
                    return Err(format!(
                        "{}: d = -{p} has root number {:+}, expected -1",
                        family.as_str(),
                        w.value
                    ));
                }
                Ok(())
            };
            for p in primes_up_to(2000) {
                if p % 20 == 11 || p % 20 == 19 {
                    check(FamilyId::X1_2_10, 20, p)?;
                }
                if p % 24 == 23 {
                    check(FamilyId::X1_2_12, 24, p)?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_04_rank_one_twist_minus_23() {
    criterion(
        4,
        "X1(2,12) twist d = -23 has a non-torsion point and rank exactly 1",
        Duration::from_secs(60),
        || {
            let d = big(-23);
            let twist = twist_of(FamilyId::X1_2_12, &d);
            let found = point_search(&twist.curve_model(), 10_000);
            if !found.iter().any(|s| s.non_torsion) {
                return Err("no non-torsion point of height <= 1e4".into());
            }
            let report = rank_bounds(&twist, 1 << 10)
                .map_err(|e| format!("descent failed: {e}"))?;
            if report.rank_lower != 1 || report.rank_upper != 1 {
                return Err(format!(
                    "expected rank bounds (1, 1), got ({}, {})",
                    report.rank_lower, report.rank_upper
                ));
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_05_counterexample_twist() {
    criterion(
        5,
        "d = -11*59*83: certificate path refuses, descent leaves rank_upper >= 2",
        Duration::from_secs(120),
        || {
            let d = big(-11 * 59 * 83);
            match prove_rank_zero_2_12(&d) {
                Err(DescentError::NotInFamily { .. }) => {}
                Err(e) => return Err(format!("expected NotInFamily, got error {e}")),
                Ok(_) => return Err("expected NotInFamily, got a certificate".into()),
            }
            let report = rank_bounds(&twist_of(FamilyId::X1_2_12, &d), 1 << 10)
                .map_err(|e| format!("descent failed: {e}"))?;
            if report.rank_upper < 2 {
                return Err(format!(
                    "rank_upper = {} would prove rank < 2",
                    report.rank_upper
                ));
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_06_constructor_round_trip() {
    criterion(
        6,
        "construct curves with Z/2 x Z/10 over Q(sqrt(-59)) and Z/2 x Z/12 over Q(sqrt(-23))",
        Duration::from_secs(300),
        || {
            let cases = [
                (TorsionTarget::TwoByTen, -59i64, (2u32, 10u32)),
                (TorsionTarget::TwoByTwelve, -23, (2, 12)),
            ];
            for (target, d, (em, en)) in cases {
                let curves = construct_torsion_curves(target, &big(d), 1, 10_000)
                    .map_err(|e| format!("construction failed for ({}, {d}): {e}", target.as_str()))?;
                let cc = curves
                    .first()
                    .ok_or_else(|| format!("no curve returned for ({}, {d})", target.as_str()))?;
                if !cc.verified || cc.d_class != big(d) {
                    return Err(format!(
                        "({}, {d}): curve not verified or wrong field (d_class = {})",
                        target.as_str(),
                        cc.d_class
                    ));
                }
                let tors = torsion_over_quadratic(&cc.curve, &big(d))
                    .map_err(|e| format!("re-verification failed for ({}, {d}): {e}", target.as_str()))?;
                if (tors.m, tors.n) != (em, en) {
                    return Err(format!(
                        "({}, {d}): torsion Z/{} x Z/{}, expected Z/{em} x Z/{en}",
                        target.as_str(),
                        tors.m,
                        tors.n
                    ));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_07_torsion_matches_lutz_nagell() {
    criterion(
        7,
        "torsion_over_q agrees with the Lutz-Nagell oracle for |a|,|b| <= 20",
        Duration::from_secs(300),
        || {
            for a in -20i64..=20 {
                for b in -20i64..=20 {
                    let e = CurveModel::from_i64(0, a, 0, b, 0);
                    if !e.is_nonsingular() {
                        continue;
                    }
                    let fast = torsion_over_q(&e)
                        .map_err(|err| format!("torsion_over_q failed for (a, b) = ({a}, {b}): {err}"))?;
                    let slow = lutz_nagell_torsion(&e)
                        .map_err(|err| format!("oracle failed for (a, b) = ({a}, {b}): {err}"))?;
                    if (fast.m, fast.n) != slow {
                        return Err(format!(
                            "(a, b) = ({a}, {b}): torsion_over_q gave ({}, {}), oracle ({}, {})",
                            fast.m, fast.n, slow.0, slow.1
                        ));
                    }
                }
            }
            Ok(())
        },
    );
}

/// Deterministic xorshift generator so the sampled curves and points are
/// reproducible without an extra dependency.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

/// A point with x-coordinate x0 on y² = x(x² + ax + b), over whatever
/// quadratic field the y-coordinate lands in. None when y would be 0.
fn lift_point(e: &TwoTorsionModel, x0: &Rational) -> Option<Point> {
    let s = x0 * &(x0 * x0 + &e.a * x0 + &e.b);
    if s.is_zero() {
        return None;
    }
    let class = rational_square_class(&s).ok()?;
    if class.is_one() {
        // s is a square in Q: both numerator and denominator are squares.
        let y = Rational::new(s.numer().sqrt(), s.denom().sqrt());
        Some(Point::Rational { x: x0.clone(), y })
    } else {
        let y = QuadElem::from_rational(s, &class).sqrt()?;
        Some(Point::Quadratic {
            x: QuadElem::from_rational(x0.clone(), &class),
            y,
        })
    }
}

#[test]
fn criterion_08_dual_composed_with_isogeny_is_doubling() {
    criterion(
        8,
        "dual . phi = [2] on 100 points across 20 curves",
        Duration::from_secs(120),
        || {
            let mut rng = XorShift(0x9E37_79B9_7F4A_7C15);
            let mut models = 0;
            let mut points = 0;
            while models < 20 {
                let a = rng.in_range(-30, 30);
                let b = rng.in_range(-30, 30);
                let disc = a * a - 4 * b;
                let e = match TwoTorsionModel::from_i64(a, b) {
                    Ok(e) => e,
                    Err(_) => continue, // singular
                };
                // Skip split curves: the isogeny pair needs a*a - 4b nonsquare.
                if disc >= 0 && big(disc).sqrt().pow(2) == big(disc) {
                    continue;
                }
                models += 1;
                let (_, phi) = two_isogeny(&e).map_err(|err| format!("phi: {err}"))?;
                let dual = dual_isogeny(&e).map_err(|err| format!("dual: {err}"))?;
                let model = e.curve_model();
                let mut on_curve = 0;
                while on_curve < 5 {
                    let num = rng.in_range(-40, 40);
                    let den = rng.in_range(1, 12);
                    let x0 = Rational::new(big(num), big(den));
                    let Some(p) = lift_point(&e, &x0) else { continue };
                    on_curve += 1;
                    points += 1;
                    let via_isogeny = dual
                        .apply(&phi.apply(&p).map_err(|err| format!("phi apply: {err}"))?)
                        .map_err(|err| format!("dual apply: {err}"))?;
                    let doubled = model
                        .scalar_mul(2, &p)
                        .map_err(|err| format!("doubling: {err}"))?;
                    if via_isogeny.simplify() != doubled.simplify() {
                        return Err(format!(
                            "mismatch on (a, b) = ({a}, {b}), x = {num}/{den}"
                        ));
                    }
                }
            }
            if points < 100 {
                return Err(format!("only {points} points exercised"));
            }
            Ok(())
        },
    );
}

fn expect_entries(
    report: &EliminationReport,
    n_or_d: &Integer,
    cyclotomic: bool,
    expected: &[(u32, u32, &str)],
) -> Result<(), String> {
    for &(m, n, rule) in expected {
        let group = TorsionGroupId::new(m, n);
        let entry = report
            .eliminated
            .iter()
            .find(|e| e.group == group)
            .ok_or_else(|| format!("{}: missing {}", report.input, group.label()))?;
        if entry.rule != rule {
            return Err(format!(
                "{}: {} eliminated by rule {}, expected {}",
                report.input,
                group.label(),
                entry.rule,
                rule
            ));
        }
        let ok = if cyclotomic {
            replay_cyclotomic_entry(entry, n_or_d)
        } else {
            replay_quadratic_entry(entry, n_or_d)
        };
        if !ok {
            return Err(format!(
                "{}: entry for {} fails replay",
                report.input,
                group.label()
            ));
        }
    }
    Ok(())
}

#[test]
fn criterion_09_rule_engines_reproduce_worked_examples() {
    criterion(
        9,
        "cyclotomic and quadratic rule engines reproduce the reference cases",
        Duration::from_secs(30),
        || {
            // n = 20: rules for 3, 7 and the large primes fire; the rules for
            // 4 and 5 do not because 4 | 20 and 5 | 20.
            let r20 = cyclotomic_elimination(&big(20));
            expect_entries(
                &r20,
                &big(20),
                true,
                &[
                    (1, 21, "cyc-i"),
                    (1, 27, "cyc-i"),
                    (3, 1, "cyc-i"),
                    (3, 2, "cyc-i"),
                    (3, 3, "cyc-i"),
                    (6, 1, "cyc-i"),
                    (1, 14, "cyc-v"),
                    (1, 37, "cyc-v"),
                    (2, 7, "cyc-vi"),
                    (1, 11, "cyc-vii"),
                    (1, 17, "cyc-vii"),
                    (1, 19, "cyc-vii"),
                    (1, 43, "cyc-vii"),
                    (1, 67, "cyc-vii"),
                    (1, 163, "cyc-vii"),
                ],
            )?;
            for absent in [(1u32, 13u32), (1, 25), (4, 1), (8, 1), (1, 15)] {
                let g = TorsionGroupId::new(absent.0, absent.1);
                if r20.eliminated.iter().any(|e| e.group == g) {
                    return Err(format!("n = 20 must not eliminate {}", g.label()));
                }
            }

            // n = 23: a prime meeting the hypotheses of both refinements.
            let r23 = cyclotomic_elimination(&big(23));
            expect_entries(&r23, &big(23), true, &[(1, 13, "cyc-13"), (1, 25, "cyc-25")])?;

            // Quadratic fields.
            let r83 = quadratic_nonexistence(&big(-83)).map_err(|e| e.to_string())?;
            expect_entries(
                &r83,
                &big(-83),
                false,
                &[(2, 5, "quad-2x10"), (2, 6, "quad-2x12"), (1, 16, "quad-16")],
            )?;

            let r11 = quadratic_nonexistence(&big(-11)).map_err(|e| e.to_string())?;
            expect_entries(&r11, &big(-11), false, &[(2, 6, "quad-2x12"), (1, 16, "quad-16")])?;
            let g = TorsionGroupId::new(2, 5);
            if r11.eliminated.iter().any(|e| e.group == g) {
                return Err("d = -11 must not eliminate Z/2 x Z/10".into());
            }

            let r21 = quadratic_nonexistence(&big(21)).map_err(|e| e.to_string())?;
            expect_entries(&r21, &big(21), false, &[(2, 5, "quad-2x10")])?;
            for absent in [(2u32, 6u32), (1, 16)] {
                let g = TorsionGroupId::new(absent.0, absent.1);
                if r21.eliminated.iter().any(|e| e.group == g) {
                    return Err(format!("d = 21 must not eliminate {}", g.label()));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_10_root_number_sign_patterns() {
    criterion(
        10,
        "congruence classes determine twist root numbers for all p < 1e4",
        Duration::from_secs(30),
        || {
            let w = RootNumber { value: 1 };
            for p in primes_up_to(10_000) {
                let d = big(-(p as i64));
                let expect20 = match p % 20 {
                    3 | 7 => Some(1),
                    11 | 19 => Some(-1),
                    _ => None,
                };
                if let Some(sign) = expect20 {
                    let got = twist_root_number(w, &big(20), &d)
                        .map_err(|e| format!("N = 20, p = {p}: {e}"))?;
                    if got.value != sign {
                        return Err(format!(
                            "N = 20, p = {p}: got {:+}, expected {sign:+}",
                            got.value
                        ));
                    }
                }
                let expect24 = match p % 24 {
                    11 => Some(1),
                    23 => Some(-1),
                    _ => None,
                };
                if let Some(sign) = expect24 {
                    let got = twist_root_number(w, &big(24), &d)
                        .map_err(|e| format!("N = 24, p = {p}: {e}"))?;
                    if got.value != sign {
                        return Err(format!(
                            "N = 24, p = {p}: got {:+}, expected {sign:+}",
                            got.value
                        ));
                    }
                }
            }
            Ok(())
        },
    );
}
