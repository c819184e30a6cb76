//! Independent verification: a stepwise decomposition engine, the family
//! recurrence oracle, and a golden fixture suite of worked products.
//!
//! The two oracles here deliberately avoid the closed-form threaded rules:
//! they only ever multiply through the elementary cases, so agreement with
//! the engine is evidence, not circularity.

use crate::chebyshev::cheb_t;
use crate::curves::canonicalize;
use crate::laurent::LaurentPoly;
use crate::product::{epsilon_n, multiply, multiply_elementary, ProductError};
use crate::skein::{BasisKey, SkeinElement};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// What a fixture asserts: a product of two raw vectors, a family
/// correction in isolation, or the zero-thread normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureCheck {
    Product { lhs: [[i64; 2]; 2] },
    EpsilonFamily { n: u32 },
    UnitNormalization,
}

/// A worked product with its expected value, embedded as data so a
/// regression cannot silently redefine ground truth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub check: FixtureCheck,
    pub expected: SkeinElement,
    pub source: String,
}

/// The embedded fixture suite, in declaration order.
pub fn fixtures() -> Vec<Fixture> {
    serde_json::from_str(include_str!("fixtures.json")).expect("embedded fixture data parses")
}

/// One coefficient slot where expected and actual disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermDiff {
    pub stage: String,
    pub eta: u32,
    pub key: String,
    pub expected: LaurentPoly,
    pub actual: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub passed: bool,
    /// Engine error, if evaluation itself failed.
    pub error: Option<String>,
    pub diffs: Vec<TermDiff>,
    /// Whether an independent oracle leg ran in addition to the engine.
    pub oracle_checked: bool,
}

/// Computes the family product `(n,2n)_T * (1,0)_T` by iterating the
/// recurrence `P_n = (1,2)_T P_{n-1} - P_{n-2}` with elementary rules only.
/// The base values are spelled out directly rather than taken from the
/// engine, so the two sides share nothing but the value types.
pub fn brute_force_pn(n: u32) -> SkeinElement {
    assert!(n >= 1);
    let mono = |c: i64, e: i64| LaurentPoly::monomial(c, e);
    let p1 = {
        let mut e = SkeinElement::from_raw(2, 2).scale(&mono(1, -2));
        e = &e + &SkeinElement::from_raw(0, 2).scale(&mono(1, 2));
        &e + &SkeinElement::eta()
    };
    if n == 1 {
        return p1;
    }
    let p2 = {
        let mut e = SkeinElement::from_raw(3, 4).scale(&mono(1, -4));
        e = &e + &SkeinElement::from_raw(1, 4).scale(&mono(1, 4));
        &e + &SkeinElement::from_raw(1, 2).eta_shift(1)
    };
    let mu = SkeinElement::from_raw(1, 2);
    let (mut prev2, mut prev) = (p1, p2);
    for _ in 3..=n {
        let stepped = multiply_elementary(&mu, &prev)
            .expect("every recurrence step stays within the elementary rules");
        let next = &stepped - &prev2;
        prev2 = prev;
        prev = next;
    }
    prev
}

/// Multiplies two raw vectors by expanding each thread as its power-basis
/// polynomial in the underlying simple curve and multiplying stepwise,
/// peeling one simple factor at a time so every intermediate determinant
/// stays within the elementary rules. Errors if a step still falls outside
/// them (both threads above 1 can force that).
pub fn decompose_multiply(a: (i64, i64), b: (i64, i64)) -> Result<SkeinElement, ProductError> {
    let (mu_a, ka) = canonicalize(a.0, a.1);
    let (mu_b, kb) = canonicalize(b.0, b.1);
    if ka == 0 || kb == 0 {
        let ea = SkeinElement::from_raw(a.0, a.1);
        let eb = SkeinElement::from_raw(b.0, b.1);
        return multiply_elementary(&ea, &eb);
    }
    let ea = SkeinElement::from_raw(mu_a.p(), mu_a.q());
    let eb = SkeinElement::from_raw(mu_b.p(), mu_b.q());
    let scale_term = |acc: &SkeinElement, power: &SkeinElement, c: &num_bigint::BigInt| {
        if c.is_zero() {
            acc.clone()
        } else {
            acc + &power.scale(&LaurentPoly::monomial(c.clone(), 0))
        }
    };
    if kb == 1 {
        // sum_i c_i (mu_a^i * mu_b), building mu_a^i * mu_b by repeated
        // left multiplication with the simple curve.
        let pa = cheb_t(ka);
        let mut acc = SkeinElement::zero();
        let mut power = eb.clone();
        for (i, c) in pa.coeffs().iter().enumerate() {
            if i > 0 {
                power = multiply_elementary(&ea, &power)?;
            }
            acc = scale_term(&acc, &power, c);
        }
        return Ok(acc);
    }
    if ka == 1 {
        // sum_j d_j (mu_a * mu_b^j), absorbing one right factor at a time.
        let pb = cheb_t(kb);
        let mut acc = SkeinElement::zero();
        let mut power = ea.clone();
        for (j, c) in pb.coeffs().iter().enumerate() {
            if j > 0 {
                power = multiply_elementary(&power, &eb)?;
            }
            acc = scale_term(&acc, &power, c);
        }
        return Ok(acc);
    }
    // Both threads above 1: expand fully and attempt each power product.
    let pa = cheb_t(ka);
    let pb = cheb_t(kb);
    let mut b_powers = vec![SkeinElement::unit()];
    for j in 1..=usize::try_from(kb).expect("thread fits usize") {
        let prev = &b_powers[j - 1];
        b_powers.push(multiply_elementary(prev, &eb)?);
    }
    let mut acc = SkeinElement::zero();
    for (i, ci) in pa.coeffs().iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (j, dj) in pb.coeffs().iter().enumerate() {
            if dj.is_zero() {
                continue;
            }
            let mut m = b_powers[j].clone();
            for _ in 0..i {
                m = multiply_elementary(&ea, &m)?;
            }
            acc = scale_term(&acc, &m, &(ci * dj));
        }
    }
    Ok(acc)
}

fn diff_into(
    stage: &str,
    expected: &SkeinElement,
    actual: &SkeinElement,
    report: &mut FixtureReport,
) {
    if expected == actual {
        return;
    }
    report.passed = false;
    let mut slots: BTreeMap<(u32, BasisKey), (LaurentPoly, LaurentPoly)> = BTreeMap::new();
    for (d, k, c) in expected.terms() {
        slots.entry((d, *k)).or_default().0 = c.clone();
    }
    for (d, k, c) in actual.terms() {
        slots.entry((d, *k)).or_default().1 = c.clone();
    }
    for ((d, k), (e, a)) in slots {
        if e != a {
            report.diffs.push(TermDiff {
                stage: stage.to_string(),
                eta: d,
                key: k.to_string(),
                expected: e,
                actual: a,
            });
        }
    }
}

fn run_one(f: &Fixture) -> FixtureReport {
    let mut report = FixtureReport {
        name: f.name.clone(),
        passed: true,
        error: None,
        diffs: Vec::new(),
        oracle_checked: false,
    };
    let engine = match &f.check {
        FixtureCheck::Product { lhs } => multiply(
            &SkeinElement::from_raw(lhs[0][0], lhs[0][1]),
            &SkeinElement::from_raw(lhs[1][0], lhs[1][1]),
        ),
        FixtureCheck::EpsilonFamily { n } => Ok(epsilon_n(*n)),
        FixtureCheck::UnitNormalization => Ok(SkeinElement::from_raw(0, 0)),
    };
    match engine {
        Err(e) => {
            report.passed = false;
            report.error = Some(e.to_string());
        }
        Ok(actual) => diff_into("closed-form", &f.expected, &actual, &mut report),
    }
    match &f.check {
        FixtureCheck::Product { lhs } => {
            // The decomposition oracle covers the pairs it can reach; pairs
            // whose stepwise expansion leaves the elementary rules are
            // engine-only.
            if let Ok(actual) =
                decompose_multiply((lhs[0][0], lhs[0][1]), (lhs[1][0], lhs[1][1]))
            {
                report.oracle_checked = true;
                diff_into("decomposition", &f.expected, &actual, &mut report);
            }
        }
        FixtureCheck::EpsilonFamily { n } => {
            // The correction is exactly the eta-positive part of the
            // recurrence value.
            let brute = brute_force_pn(*n);
            let correction = &brute - &brute.eta_part(0);
            report.oracle_checked = true;
            diff_into("recurrence", &f.expected, &correction, &mut report);
        }
        FixtureCheck::UnitNormalization => {}
    }
    report
}

/// Evaluates a fixture set; the report order is the declaration order.
pub fn run_fixture_set(set: &[Fixture]) -> Vec<FixtureReport> {
    set.iter().map(run_one).collect()
}

/// Evaluates the embedded suite.
pub fn run_fixtures() -> Vec<FixtureReport> {
    run_fixture_set(&fixtures())
}

/// Adds 1 to the first coefficient of the expected value, for harness
/// self-tests: the runner must notice and report the exact slot.
pub fn corrupt_expected(f: &mut Fixture) {
    let first = f.expected.terms().next().map(|(d, k, _)| (d, *k));
    if let Some((d, k)) = first {
        f.expected.add_term(d, k, LaurentPoly::one());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::p_n_closed;

    #[test]
    fn fixture_data_parses() {
        let all = fixtures();
        assert_eq!(all.len(), 12);
        assert!(all.iter().all(|f| !f.expected.is_zero()));
        let names: Vec<_> = all.iter().map(|f| f.name.as_str()).collect();
        assert!(names.contains(&"p5"));
        assert!(names.contains(&"product_11_67_by_3_19"));
        assert!(names.contains(&"unit_normalization"));
    }

    #[test]
    fn recurrence_oracle_base_and_transcripts() {
        let p1 = fixtures().into_iter().find(|f| f.name == "p1").unwrap();
        assert_eq!(brute_force_pn(1), p1.expected);
        let p3 = fixtures().into_iter().find(|f| f.name == "p3").unwrap();
        assert_eq!(brute_force_pn(3), p3.expected);
    }

    #[test]
    fn recurrence_oracle_matches_closed_form() {
        for n in [2u32, 7, 12] {
            assert_eq!(brute_force_pn(n), p_n_closed(n), "n = {n}");
        }
    }

    #[test]
    fn decomposition_examples() {
        // (2,4)*(1,0) through (1,2)^2 - 2
        let e = decompose_multiply((2, 4), (1, 0)).unwrap();
        let mono = |c: i64, x: i64| LaurentPoly::monomial(c, x);
        let mut want = SkeinElement::from_raw(3, 4).scale(&mono(1, -4));
        want = &want + &SkeinElement::from_raw(1, 4).scale(&mono(1, 4));
        want = &want + &SkeinElement::from_raw(1, 2).eta_shift(1);
        assert_eq!(e, want);

        assert_eq!(decompose_multiply((3, 6), (1, 0)).unwrap(), p_n_closed(3));

        let direct = multiply(&SkeinElement::from_raw(1, 2), &SkeinElement::from_raw(1, 0));
        assert_eq!(decompose_multiply((1, 2), (1, 0)).unwrap(), direct.unwrap());
    }

    #[test]
    fn decomposition_handles_either_order_and_zero() {
        assert_eq!(
            decompose_multiply((1, 0), (3, 6)).unwrap(),
            p_n_closed(3).bar()
        );
        assert_eq!(
            decompose_multiply((0, 0), (1, 0)).unwrap(),
            SkeinElement::from_raw(1, 0).scale_int(2)
        );
    }

    #[test]
    fn decomposition_refuses_doubly_threaded_det2() {
        assert!(decompose_multiply((2, 0), (2, 4)).is_err());
    }

    #[test]
    fn embedded_suite_passes() {
        let reports = run_fixtures();
        assert_eq!(reports.len(), 12);
        for r in &reports {
            assert!(r.passed, "{} failed: {:?} {:?}", r.name, r.error, r.diffs);
        }
        // Every product and family fixture gets an oracle leg except the
        // maximal-thread pairs, which the decomposition cannot reach.
        let oracle_names: Vec<_> = reports
            .iter()
            .filter(|r| r.oracle_checked)
            .map(|r| r.name.as_str())
            .collect();
        assert!(oracle_names.contains(&"p5"));
        assert!(oracle_names.contains(&"epsilon_4"));
        assert!(!oracle_names.contains(&"product_2_1_by_3_4"));
    }

    #[test]
    fn corrupted_fixture_reports_term_diff() {
        let mut set = fixtures();
        let idx = set.iter().position(|f| f.name == "p4").unwrap();
        corrupt_expected(&mut set[idx]);
        let reports = run_fixture_set(&set);
        let r = &reports[idx];
        assert!(!r.passed);
        assert!(!r.diffs.is_empty());
        assert_eq!(r.diffs[0].eta, 0);
        assert!(reports.iter().filter(|r| !r.passed).count() == 1);
    }
}
