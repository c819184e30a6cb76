//! The suites behind `ptskein verify`: the embedded fixture set with its
//! oracle legs, and a seeded property battery over the closed-form rules.

use num_integer::Integer;
use ptskein_core::chebyshev::{big_l, big_l_via_s, cheb_s_laurent, cheb_t, x_laurent};
use ptskein_core::curves::{analyze_pair, det2_standardize, det_pair, sl2_normal_form, MaximalSummand};
use ptskein_core::oracle::{
    brute_force_pn, corrupt_expected, decompose_multiply, fixtures, run_fixture_set,
};
use ptskein_core::product::{cascade_g, multiply_basis, multiply_elementary, p_n_closed};
use ptskein_core::{BasisKey, CurveVector, LaurentPoly, SkeinElement};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub struct Outcome {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn pass(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(label: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            passed: false,
            detail: detail.into(),
        }
    }
}

/// Runs the embedded fixtures, optionally corrupting one by name first to
/// demonstrate diff reporting. Unknown names are an input error.
pub fn appendix_suite(corrupt: Option<&str>) -> Result<Vec<Outcome>, String> {
    let mut set = fixtures();
    if let Some(name) = corrupt {
        let f = set
            .iter_mut()
            .find(|f| f.name == name)
            .ok_or_else(|| format!("no fixture named `{name}`"))?;
        corrupt_expected(f);
    }
    let reports = run_fixture_set(&set);
    Ok(reports
        .into_iter()
        .map(|r| {
            let label = format!("fixture {}", r.name);
            if r.passed {
                Outcome::pass(label)
            } else {
                let mut lines = Vec::new();
                if let Some(e) = r.error {
                    lines.push(format!("evaluation error: {e}"));
                }
                for d in r.diffs {
                    lines.push(format!(
                        "{} disagrees at eta^{} {}: expected {}, got {}",
                        d.stage, d.eta, d.key, d.expected, d.actual
                    ));
                }
                Outcome::fail(label, lines.join("\n"))
            }
        })
        .collect())
}

fn random_primitive(rng: &mut StdRng, bound: i64) -> CurveVector {
    loop {
        let p = rng.gen_range(-bound..=bound);
        let q = rng.gen_range(-bound..=bound);
        if (p, q) != (0, 0) && p.gcd(&q) == 1 {
            return CurveVector::new(p, q);
        }
    }
}

fn unimodular_partner(rng: &mut StdRng, u: CurveVector) -> CurveVector {
    let e = u.p().extended_gcd(&u.q());
    let (x, y) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
    let t = rng.gen_range(-2..=2);
    CurveVector::new(-y + t * u.p(), x + t * u.q())
}

/// Checks the family closed form against the recurrence and decomposition
/// oracles for every degree up to 30.
pub fn family_oracles() -> Outcome {
    let label = "closed form vs both oracles, n = 1..30";
    for n in 1..=30u32 {
        let closed = p_n_closed(n);
        if closed != brute_force_pn(n) {
            return Outcome::fail(label, format!("recurrence oracle disagrees at n = {n}"));
        }
        let ni = i64::from(n);
        match decompose_multiply((ni, 2 * ni), (1, 0)) {
            Ok(d) if d == closed => {}
            Ok(_) => {
                return Outcome::fail(label, format!("decomposition disagrees at n = {n}"))
            }
            Err(e) => return Outcome::fail(label, format!("decomposition failed at n = {n}: {e}")),
        }
    }
    Outcome::pass(label)
}

/// Checks that one more thread on a cascade element satisfies the
/// three-term identity for degrees up to 50 and both exponent signs.
pub fn cascade_identity() -> Outcome {
    let label = "cascade identity, n = 2..50, both signs";
    let mu = CurveVector::new(0, 1);
    let simple = SkeinElement::from_raw(0, 1);
    for eps in [1i8, -1] {
        let e = i64::from(eps);
        for n in 2..=50u32 {
            let lhs = match multiply_elementary(&simple, &cascade_g(n, eps, mu)) {
                Ok(v) => v,
                Err(err) => return Outcome::fail(label, format!("n = {n}: {err}")),
            };
            let mut rhs = &cascade_g(n - 1, eps, mu).scale(&LaurentPoly::monomial(1, e))
                + &cascade_g(n + 1, eps, mu).scale(&LaurentPoly::monomial(1, -e));
            if n % 2 == 1 {
                rhs = &rhs
                    - &SkeinElement::unit().scale(&LaurentPoly::monomial(1, -e * i64::from(n)));
            }
            if lhs != rhs {
                return Outcome::fail(label, format!("mismatch at n = {n}, eps = {eps}"));
            }
        }
    }
    Outcome::pass(label)
}

/// Checks the closed form of the second-kind coefficients and the three
/// equivalent descriptions of the geometric sums.
pub fn coefficient_dictionary() -> Outcome {
    let label = "coefficient dictionary, S_j for j <= 200, L_k for k <= 100";
    let x = x_laurent();
    let divisor = &LaurentPoly::monomial(1, 2) - &LaurentPoly::monomial(1, -2);
    for j in 0..=200u32 {
        let lhs = &cheb_s_laurent(j) * &divisor;
        let e = 2 * (i64::from(j) + 1);
        let rhs = &LaurentPoly::monomial(1, e) - &LaurentPoly::monomial(1, -e);
        if lhs != rhs {
            return Outcome::fail(label, format!("second-kind dictionary fails at j = {j}"));
        }
    }
    let mut telescoped = LaurentPoly::one();
    for k in 0..=100u32 {
        if k > 0 {
            telescoped = &telescoped + &cheb_t(2 * k).eval_laurent(&x);
        }
        let l = big_l(k);
        if l != big_l_via_s(k) || l != cheb_s_laurent(2 * k) || l != telescoped {
            return Outcome::fail(label, format!("geometric sum fails at k = {k}"));
        }
    }
    Outcome::pass(label)
}

/// Checks the correction-degree ceiling on a reproducible random sample of
/// supported products, including the vanishing rule below the threshold.
pub fn eta_bounds() -> Outcome {
    let label = "eta-degree bound on 1000 random supported products";
    let mut rng = StdRng::seed_from_u64(0xC0DE_0001);
    for i in 0..1000u32 {
        let (a, b) = match supported_keys(&mut rng, i) {
            Some(p) => p,
            None => continue,
        };
        let prod = match multiply_basis(&a, &b) {
            Ok(v) => v,
            Err(e) => return Outcome::fail(label, format!("{a} * {b} failed: {e}")),
        };
        let (p, q) = a.full_vector();
        let (r, s) = b.full_vector();
        let min = (p.unsigned_abs() + r.unsigned_abs()).min(q.unsigned_abs() + s.unsigned_abs());
        let bound = u32::try_from(min / 2).unwrap();
        let top = prod.max_eta_degree().unwrap_or(0);
        if top > bound {
            return Outcome::fail(
                label,
                format!("{a} * {b}: eta degree {top} exceeds bound {bound}"),
            );
        }
        if min < 2 && top > 0 {
            return Outcome::fail(label, format!("{a} * {b}: correction below the threshold"));
        }
    }
    Outcome::pass(label)
}

/// Random supported ordered key pairs cycling through the six regimes; the
/// index picks the regime.
fn supported_keys(rng: &mut StdRng, which: u32) -> Option<(BasisKey, BasisKey)> {
    let pair = match which % 6 {
        0 => {
            let mu = random_primitive(rng, 30);
            (
                BasisKey::threaded(mu, rng.gen_range(1..=8)),
                BasisKey::threaded(mu, rng.gen_range(1..=8)),
            )
        }
        1 => {
            let u = random_primitive(rng, 50);
            let w = unimodular_partner(rng, u);
            (BasisKey::threaded(u, 1), BasisKey::threaded(w, 1))
        }
        2 => {
            let u = random_primitive(rng, 50);
            let w = unimodular_partner(rng, u);
            let k = [-5i64, -3, -1, 1, 3, 5][rng.gen_range(0..6)];
            let v = CurveVector::new(k * u.p() + 2 * w.p(), k * u.q() + 2 * w.q());
            (BasisKey::threaded(u, 1), BasisKey::threaded(v, 1))
        }
        3 => {
            let u = random_primitive(rng, 50);
            let w = unimodular_partner(rng, u);
            (BasisKey::threaded(u, 2), BasisKey::threaded(w, 1))
        }
        4 => {
            let u = random_primitive(rng, 50);
            let w = unimodular_partner(rng, u);
            let k = [-5i64, -3, -1, 1, 3, 5][rng.gen_range(0..6)];
            let v = CurveVector::new(k * u.p() + 2 * w.p(), k * u.q() + 2 * w.q());
            let thread = rng.gen_range(2..=6);
            if rng.gen_bool(0.5) {
                (BasisKey::threaded(u, thread), BasisKey::threaded(v, 1))
            } else {
                (BasisKey::threaded(u, 1), BasisKey::threaded(v, thread))
            }
        }
        _ => {
            let u = random_primitive(rng, 30);
            let w = unimodular_partner(rng, u);
            let n = rng.gen_range(3..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let sigma = if rng.gen_bool(0.5) { 1 } else { -1 };
            let v = CurveVector::new(sigma * u.p() + n * w.p(), sigma * u.q() + n * w.q());
            (BasisKey::threaded(u, 1), BasisKey::threaded(v, 1))
        }
    };
    if rng.gen_bool(0.5) {
        Some((pair.1, pair.0))
    } else {
        Some(pair)
    }
}

/// Checks that the three maximal-regime characterizations agree on random
/// primitive pairs and that the parity identities hold.
pub fn regime_classification() -> Outcome {
    let label = "maximal-regime characterizations on 1000 random pairs";
    let mut rng = StdRng::seed_from_u64(0xC0DE_0002);
    let mut done = 0u32;
    while done < 1000 {
        let u = random_primitive(&mut rng, 200);
        let v = random_primitive(&mut rng, 200);
        let n = det_pair(u, v);
        if n == 0 {
            continue;
        }
        done += 1;
        let nabs = n.abs();
        let pair = match analyze_pair(u, v) {
            Ok(p) => p,
            Err(e) => return Outcome::fail(label, format!("analysis failed: {e}")),
        };
        let by_threads = pair.maximal_summand != MaximalSummand::None;
        let (_, a) = match sl2_normal_form(u, v) {
            Ok(r) => r,
            Err(e) => return Outcome::fail(label, format!("normal form failed: {e}")),
        };
        let by_residue = a.rem_euclid(nabs) == 1i64.rem_euclid(nabs)
            || a.rem_euclid(nabs) == (-1i64).rem_euclid(nabs);
        let same = (u.p() - v.p()) % nabs == 0 && (u.q() - v.q()) % nabs == 0;
        let opposite = (u.p() + v.p()) % nabs == 0 && (u.q() + v.q()) % nabs == 0;
        if by_threads != by_residue || by_threads != (same || opposite) {
            return Outcome::fail(label, format!("characterizations split on {u} , {v}"));
        }
        if by_threads {
            let bot = pair.d_plus.min(pair.d_minus);
            if i64::from(bot) != nabs.gcd(&2) {
                return Outcome::fail(label, format!("minimal thread wrong on {u} , {v}"));
            }
        }
    }
    for n in 1..=1000i64 {
        let expected = if n % 2 == 0 { 1 } else { 2 };
        if (n + 1).gcd(&(2 * n)) != expected {
            return Outcome::fail(label, format!("parity lemma fails at n = {n}"));
        }
    }
    Outcome::pass(label)
}

/// Checks standardization postconditions on random determinant-2 pairs and
/// compares the transported product with direct decomposition.
pub fn det2_transport() -> Outcome {
    let label = "determinant-2 standardization and transport on 200 pairs";
    let mut rng = StdRng::seed_from_u64(0xC0DE_0003);
    for _ in 0..200 {
        let u = random_primitive(&mut rng, 40);
        let w = unimodular_partner(&mut rng, u);
        let c = [-5i64, -3, -1, 1, 3, 5][rng.gen_range(0..6)];
        let v = CurveVector::new(c * u.p() + 2 * w.p(), c * u.q() + 2 * w.q());
        let (c1, c2) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        let m = match det2_standardize(c1, c2) {
            Ok(m) => m,
            Err(e) => return Outcome::fail(label, format!("standardize failed: {e}")),
        };
        if m.a * m.d - m.b * m.c != 1
            || m.apply_curve(c1) != CurveVector::new(1, 0)
            || m.apply_curve(c2) != CurveVector::new(1, 2)
        {
            return Outcome::fail(label, format!("postconditions fail on {c1} , {c2}"));
        }
        let k = rng.gen_range(2..=6u32);
        let (a, b) = if rng.gen_bool(0.5) {
            (BasisKey::threaded(c1, k), BasisKey::threaded(c2, 1))
        } else {
            (BasisKey::threaded(c1, 1), BasisKey::threaded(c2, k))
        };
        let engine = match multiply_basis(&a, &b) {
            Ok(p) => p,
            Err(e) => return Outcome::fail(label, format!("{a} * {b} failed: {e}")),
        };
        match decompose_multiply(a.full_vector(), b.full_vector()) {
            Ok(o) if o == engine => {}
            Ok(_) => return Outcome::fail(label, format!("transport disagrees on {a} * {b}")),
            Err(e) => return Outcome::fail(label, format!("oracle failed on {a} * {b}: {e}")),
        }
    }
    Outcome::pass(label)
}

pub fn property_suite() -> Vec<Outcome> {
    vec![
        family_oracles(),
        cascade_identity(),
        coefficient_dictionary(),
        eta_bounds(),
        regime_classification(),
        det2_transport(),
    ]
}
