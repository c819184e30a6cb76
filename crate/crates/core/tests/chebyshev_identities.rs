//! Chebyshev recurrence and dictionary identities, verified symbolically
//! over the integer-polynomial and Laurent layers.

use num_bigint::BigInt;
use ptskein_core::chebyshev::{
    big_l, big_l_via_s, cheb_s, cheb_s_laurent, cheb_t, x_laurent, IntPoly,
};
use ptskein_core::LaurentPoly;

#[test]
fn threading_recurrence_holds() {
    for m in 1..=200u32 {
        let want = &(&IntPoly::x() * &cheb_t(m)) - &cheb_t(m - 1);
        assert_eq!(cheb_t(m + 1), want, "m = {m}");
    }
    for j in 1..=200u32 {
        let want = &(&IntPoly::x() * &cheb_s(j)) - &cheb_s(j - 1);
        assert_eq!(cheb_s(j + 1), want, "j = {j}");
    }
}

#[test]
fn product_identity_in_the_polynomial_ring() {
    // T_n T_m = T_{n+m} + T_{|n-m|}, with T_0 = 2 closing the diagonal.
    for n in 0..=40u32 {
        for m in 0..=40u32 {
            let lhs = &cheb_t(n) * &cheb_t(m);
            let rhs = &cheb_t(n + m) + &cheb_t(n.abs_diff(m));
            assert_eq!(lhs, rhs, "n = {n}, m = {m}");
        }
    }
}

#[test]
fn threading_evaluates_to_symmetric_powers() {
    // T_k(t^2 + t^-2) = t^{2k} + t^{-2k}.
    for k in 0..=100u32 {
        let want = if k == 0 {
            LaurentPoly::from(2)
        } else {
            let e = i64::from(2 * k);
            LaurentPoly::from_terms([(e, 1), (-e, 1)])
        };
        assert_eq!(cheb_t(k).eval_laurent(&x_laurent()), want, "k = {k}");
    }
}

#[test]
fn second_kind_dictionary() {
    // S_j(t^2 + t^-2) * (t^2 - t^-2) = t^{2(j+1)} - t^{-2(j+1)}.
    let divisor = LaurentPoly::from_terms([(2, 1), (-2, -1)]);
    for j in 0..=200u32 {
        let e = 2 * (i64::from(j) + 1);
        let want = LaurentPoly::from_terms([(e, 1), (-e, -1)]);
        assert_eq!(&cheb_s_laurent(j) * &divisor, want, "j = {j}");
        // The division-based value agrees with direct polynomial
        // evaluation.
        assert_eq!(
            cheb_s_laurent(j),
            cheb_s(j).eval_laurent(&x_laurent()),
            "j = {j}"
        );
    }
}

#[test]
fn geometric_sums_match_their_chebyshev_forms() {
    // Running telescoping sum: tel_k = sum_{l<=k} (T_{2l}(x) - delta) at
    // x = t^2 + t^-2.
    let mut tel = LaurentPoly::one();
    for k in 0..=100u32 {
        if k > 0 {
            tel = &tel + &cheb_t(2 * k).eval_laurent(&x_laurent());
        }
        // Defining form: the symmetric geometric sum in t^4.
        let direct = LaurentPoly::from_terms(
            (-i64::from(k)..=i64::from(k)).map(|l| (4 * l, BigInt::from(1))),
        );
        assert_eq!(big_l(k), direct, "k = {k}");
        // L_k = S_{2k}(t^2 + t^-2).
        assert_eq!(big_l(k), big_l_via_s(k), "k = {k}");
        assert_eq!(big_l(k), cheb_s_laurent(2 * k), "k = {k}");
        assert_eq!(big_l(k), tel, "k = {k}");
    }
}
