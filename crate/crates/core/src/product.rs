//! The multiplication engine: classification of ordered basis-key products,
//! the closed-form rules for each supported regime, and the bilinear
//! extension to whole elements (eta is central, so eta degrees add).

use crate::chebyshev::{big_l, cheb_s_laurent};
use crate::curves::{analyze_pair, det_pair, det2_standardize, CurveVector, MaximalSummand};
use crate::laurent::LaurentPoly;
use crate::skein::{BasisKey, SkeinElement};
use thiserror::Error;

/// The rule an ordered basis-key product dispatches to. Exactly one case
/// applies per ordered pair; classification is deterministic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductCase {
    Parallel,
    Det1,
    Det2BothSimple,
    Det2WithComposite,
    Det2ThreadedFamily,
    MaxThread,
    Unsupported,
}

impl std::fmt::Display for ProductCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ProductCase::Parallel => "Parallel",
            ProductCase::Det1 => "Det1",
            ProductCase::Det2BothSimple => "Det2BothSimple",
            ProductCase::Det2WithComposite => "Det2WithComposite",
            ProductCase::Det2ThreadedFamily => "Det2ThreadedFamily",
            ProductCase::MaxThread => "MaxThread",
            ProductCase::Unsupported => "Unsupported",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("unsupported product {a} * {b} (classified as {case})")]
    Unsupported {
        a: BasisKey,
        b: BasisKey,
        case: ProductCase,
    },
    #[error("pair ({alpha}, {beta}) is not in the maximal-thread regime")]
    NotMaxThread {
        alpha: CurveVector,
        beta: CurveVector,
    },
}

fn key_parts(k: &BasisKey) -> (CurveVector, u32) {
    match k {
        BasisKey::Unit => unreachable!("unit keys are resolved before classification"),
        BasisKey::Threaded { mu, k } => (*mu, *k),
    }
}

/// Picks the rule for an ordered pair of non-unit keys. Unit products are
/// scalar and handled upstream.
pub fn classify(a: &BasisKey, b: &BasisKey) -> ProductCase {
    assert!(
        !matches!(a, BasisKey::Unit) && !matches!(b, BasisKey::Unit),
        "unit keys are resolved before classification"
    );
    let (mu1, k1) = key_parts(a);
    let (mu2, k2) = key_parts(b);
    if mu1 == mu2 {
        return ProductCase::Parallel;
    }
    let (p, q) = a.full_vector();
    let (r, s) = b.full_vector();
    let big_d = p * s - q * r;
    let d = det_pair(mu1, mu2);
    if big_d.abs() == 1 {
        return ProductCase::Det1;
    }
    if big_d.abs() == 2 {
        return if k1 == 1 && k2 == 1 {
            ProductCase::Det2BothSimple
        } else {
            ProductCase::Det2WithComposite
        };
    }
    if d.abs() == 2 && (k1 > 1) != (k2 > 1) {
        return ProductCase::Det2ThreadedFamily;
    }
    if k1 == 1 && k2 == 1 && d.abs() >= 2 {
        let pair = analyze_pair(mu1, mu2).expect("primitive keys with nonzero determinant");
        if pair.maximal_summand != MaximalSummand::None {
            return ProductCase::MaxThread;
        }
    }
    ProductCase::Unsupported
}

/// The product-to-sum main terms: `t^D (u+v) + t^{-D} (u-v)` on the full
/// labeled vectors, with the signed determinant D of the ordered pair.
/// A `(0,0)` leg normalizes to `2 * Unit`.
pub fn fg_main_terms(a: &BasisKey, b: &BasisKey) -> SkeinElement {
    let (p, q) = a.full_vector();
    let (r, s) = b.full_vector();
    let big_d = p * s - q * r;
    let sum = SkeinElement::from_raw(p + r, q + s).scale(&LaurentPoly::monomial(1, big_d));
    let dif = SkeinElement::from_raw(p - r, q - s).scale(&LaurentPoly::monomial(1, -big_d));
    &sum + &dif
}

/// Parallel threads on one primitive: `T_n T_m = T_{n+m} + T_{|n-m|}`,
/// with the zero thread normalized to `2 * Unit`.
fn parallel_product(mu: CurveVector, n: u32, m: u32) -> SkeinElement {
    let hi = SkeinElement::from_term(0, BasisKey::threaded(mu, n + m), LaurentPoly::one());
    let lo = if n == m {
        SkeinElement::from_term(0, BasisKey::Unit, LaurentPoly::from(2))
    } else {
        SkeinElement::from_term(0, BasisKey::threaded(mu, n.abs_diff(m)), LaurentPoly::one())
    };
    &hi + &lo
}

/// The eta-degree ceiling for a product of full vectors (p,q), (r,s):
/// `floor(min(|p|+|r|, |q|+|s|) / 2)`; a minimum below 2 forces the
/// correction to vanish entirely.
fn eta_bound(a: &BasisKey, b: &BasisKey) -> u32 {
    let (p, q) = a.full_vector();
    let (r, s) = b.full_vector();
    let m = (p.unsigned_abs() + r.unsigned_abs()).min(q.unsigned_abs() + s.unsigned_abs());
    u32::try_from(m / 2).expect("eta bound fits u32")
}

/// Applies the correction bound to a computed product: below the threshold
/// the correction is zero, so only the main terms survive. The closed forms
/// already respect this; the debug assertion keeps them honest.
fn enforce_eta_bound(a: &BasisKey, b: &BasisKey, product: SkeinElement) -> SkeinElement {
    let bound = eta_bound(a, b);
    debug_assert!(
        product.max_eta_degree().unwrap_or(0) <= bound,
        "correction exceeds the eta-degree bound for {a} * {b}"
    );
    if bound == 0 {
        product.eta_part(0)
    } else {
        product
    }
}

fn elementary_basis(a: &BasisKey, b: &BasisKey) -> Result<SkeinElement, ProductError> {
    let case = classify(a, b);
    let raw = match case {
        ProductCase::Parallel => {
            let (mu, k1) = key_parts(a);
            let (_, k2) = key_parts(b);
            parallel_product(mu, k1, k2)
        }
        ProductCase::Det1 | ProductCase::Det2WithComposite => fg_main_terms(a, b),
        ProductCase::Det2BothSimple => &fg_main_terms(a, b) + &SkeinElement::eta(),
        _ => {
            return Err(ProductError::Unsupported {
                a: *a,
                b: *b,
                case,
            })
        }
    };
    Ok(enforce_eta_bound(a, b, raw))
}

fn closed_basis(a: &BasisKey, b: &BasisKey) -> Result<SkeinElement, ProductError> {
    let case = classify(a, b);
    let raw = match case {
        ProductCase::Parallel
        | ProductCase::Det1
        | ProductCase::Det2BothSimple
        | ProductCase::Det2WithComposite => return elementary_basis(a, b),
        ProductCase::Det2ThreadedFamily => threaded_family_product(a, b),
        ProductCase::MaxThread => {
            let (mu1, _) = key_parts(a);
            let (mu2, _) = key_parts(b);
            max_thread_product(mu1, mu2)?
        }
        ProductCase::Unsupported => {
            return Err(ProductError::Unsupported {
                a: *a,
                b: *b,
                case,
            })
        }
    };
    Ok(enforce_eta_bound(a, b, raw))
}

/// A threaded curve against a simple one over primitive determinant 2:
/// conjugate into the standard frame, read off the family closed form
/// there, and pull the answer back. Reversing the factor order inverts t
/// throughout, which the coefficient involution realizes.
fn threaded_family_product(a: &BasisKey, b: &BasisKey) -> SkeinElement {
    let (mu1, k1) = key_parts(a);
    let (mu2, k2) = key_parts(b);
    debug_assert!((k1 > 1) != (k2 > 1));
    let (threaded_first, simple_mu, threaded_mu, k) = if k1 > 1 {
        (true, mu2, mu1, k1)
    } else {
        (false, mu1, mu2, k2)
    };
    let m = det2_standardize(simple_mu, threaded_mu)
        .expect("classification guarantees a primitive determinant-2 pair");
    let standard = if threaded_first {
        p_n_closed(k)
    } else {
        p_n_closed(k).bar()
    };
    standard.sl2_apply(m.inverse())
}

/// Multiplies two basis keys with the full closed-form rule set.
pub fn multiply_basis(a: &BasisKey, b: &BasisKey) -> Result<SkeinElement, ProductError> {
    if let BasisKey::Unit = a {
        return Ok(SkeinElement::from_term(0, *b, LaurentPoly::one()));
    }
    if let BasisKey::Unit = b {
        return Ok(SkeinElement::from_term(0, *a, LaurentPoly::one()));
    }
    closed_basis(a, b)
}

/// The family product `(n,2n)_T * (1,0)_T`: two main terms with exponents
/// `-2n` and `2n` on the sum and difference curves, plus the degree-1
/// correction `epsilon_n`. The n = 1, 2 values are pinned verbatim; the
/// general form agrees with them.
pub fn p_n_closed(n: u32) -> SkeinElement {
    assert!(n >= 1);
    match n {
        1 => {
            // t^-2 (2,2)_T + t^2 (0,2)_T + eta
            let mut e = SkeinElement::from_raw(2, 2).scale(&LaurentPoly::monomial(1, -2));
            e = &e + &SkeinElement::from_raw(0, 2).scale(&LaurentPoly::monomial(1, 2));
            &e + &SkeinElement::eta()
        }
        2 => {
            // t^-4 (3,4)_T + t^4 (1,4)_T + (1,2)_T eta
            let mut e = SkeinElement::from_raw(3, 4).scale(&LaurentPoly::monomial(1, -4));
            e = &e + &SkeinElement::from_raw(1, 4).scale(&LaurentPoly::monomial(1, 4));
            &e + &SkeinElement::from_raw(1, 2).eta_shift(1)
        }
        _ => {
            let n_i = i64::from(n);
            let mut e = SkeinElement::from_raw(n_i + 1, 2 * n_i)
                .scale(&LaurentPoly::monomial(1, -2 * n_i));
            e = &e
                + &SkeinElement::from_raw(n_i - 1, 2 * n_i)
                    .scale(&LaurentPoly::monomial(1, 2 * n_i));
            &e + &epsilon_n(n)
        }
    }
}

/// The correction of the family product: `eta * sum_{k=0}^{floor((n-1)/2)}
/// (T_{n-1-2k}((1,2)) - delta) * L_k`, every term at eta degree exactly 1.
pub fn epsilon_n(n: u32) -> SkeinElement {
    assert!(n >= 1);
    let mu = CurveVector::new(1, 2);
    let mut e = SkeinElement::zero();
    for k in 0..=((n - 1) / 2) {
        let idx = n - 1 - 2 * k;
        let key = if idx == 0 {
            BasisKey::Unit
        } else {
            BasisKey::threaded(mu, idx)
        };
        e.add_term(1, key, big_l(k));
    }
    e
}

/// The degree-lowering cascade sum in the T-basis of `mu`:
/// `sum_{j=0}^{floor((n-2)/2)} t^{eps(n-2-2j)} (T_{n-2-2j}(mu) - delta) *
/// S_j(t^2 + t^-2)`, without the eta factor (the caller applies it).
///
/// The sum is empty for n = 1. At n = 2 the single j = 0 term is
/// `(T_0 - 1) S_0 = Unit`, which matches the plain eta correction of a
/// determinant-2 simple pair.
pub fn cascade_g(n: u32, eps: i8, mu: CurveVector) -> SkeinElement {
    assert!(n >= 1);
    assert!(mu.is_primitive());
    assert!(eps == 1 || eps == -1);
    let mut e = SkeinElement::zero();
    if n < 2 {
        return e;
    }
    for j in 0..=((n - 2) / 2) {
        let idx = n - 2 - 2 * j;
        let key = if idx == 0 {
            BasisKey::Unit
        } else {
            BasisKey::threaded(mu, idx)
        };
        let coeff =
            &LaurentPoly::monomial(1, i64::from(eps) * i64::from(idx)) * &cheb_s_laurent(j);
        e.add_term(0, key, coeff);
    }
    e
}

/// The maximal-thread closed form for an ordered primitive pair: the
/// product-to-sum main terms plus `eta` times the cascade on the maximally
/// threaded summand. The cascade sign follows the determinant sign, flipped
/// when the difference curve is the maximal one.
pub fn max_thread_product(
    alpha: CurveVector,
    beta: CurveVector,
) -> Result<SkeinElement, ProductError> {
    let not_max = || ProductError::NotMaxThread { alpha, beta };
    let pair = analyze_pair(alpha, beta).map_err(|_| not_max())?;
    if pair.n.abs() < 2 {
        return Err(not_max());
    }
    let (c_star, sign) = match pair.maximal_summand {
        MaximalSummand::Plus => (pair.c_plus, pair.eps),
        MaximalSummand::Minus => (pair.c_minus, -pair.eps),
        MaximalSummand::None => return Err(not_max()),
    };
    let (mu_star, d_star) = crate::curves::canonicalize(c_star.p(), c_star.q());
    debug_assert_eq!(u64::from(d_star), pair.n.unsigned_abs());
    let a = BasisKey::threaded(alpha, 1);
    let b = BasisKey::threaded(beta, 1);
    let main = fg_main_terms(&a, &b);
    let m = u32::try_from(pair.n.unsigned_abs()).expect("thread degree fits u32");
    Ok(&main + &cascade_g(m, sign, mu_star).eta_shift(1))
}

fn multiply_with(
    a: &SkeinElement,
    b: &SkeinElement,
    basis: impl Fn(&BasisKey, &BasisKey) -> Result<SkeinElement, ProductError>,
) -> Result<SkeinElement, ProductError> {
    let mut out = SkeinElement::zero();
    for (da, ka, ca) in a.terms() {
        for (db, kb, cb) in b.terms() {
            let part = if matches!(ka, BasisKey::Unit) {
                SkeinElement::from_term(0, *kb, LaurentPoly::one())
            } else if matches!(kb, BasisKey::Unit) {
                SkeinElement::from_term(0, *ka, LaurentPoly::one())
            } else {
                basis(ka, kb)?
            };
            let coeff = ca * cb;
            for (d, key, c) in part.terms() {
                out.add_term(d + da + db, *key, c * &coeff);
            }
        }
    }
    Ok(out)
}

/// The bilinear extension of the full closed-form rule set: coefficients
/// multiply, eta degrees add, unit keys act as scalars.
pub fn multiply(a: &SkeinElement, b: &SkeinElement) -> Result<SkeinElement, ProductError> {
    multiply_with(a, b, closed_basis)
}

/// The bilinear extension restricted to the elementary rules (parallel and
/// plain determinant 1/2 cases). The verification oracles build on this so
/// they stay independent of the threaded closed forms.
pub fn multiply_elementary(
    a: &SkeinElement,
    b: &SkeinElement,
) -> Result<SkeinElement, ProductError> {
    multiply_with(a, b, elementary_basis)
}
