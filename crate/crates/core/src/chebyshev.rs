//! Chebyshev machinery: first-kind T-polynomials in the `T_0 = 2`
//! normalization, second-kind S-polynomials, the symmetric geometric sums
//! `L_k` in `t^4`, and the power-basis expansions used by the stepwise
//! decomposition oracle.

use crate::laurent::LaurentPoly;
use num_bigint::BigInt;
use num_traits::Zero;
use std::ops::{Add, Mul, Sub};

/// Dense polynomial in an abstract variable `x` with `BigInt` coefficients,
/// stored in ascending degree; the leading coefficient is nonzero unless the
/// polynomial is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![BigInt::zero(), BigInt::from(1)])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in ascending degree: the power-basis expansion.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Substitutes a Laurent polynomial for `x` (Horner evaluation).
    pub fn eval_laurent(&self, v: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * v) + &LaurentPoly::monomial(c.clone(), 0);
        }
        acc
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::from_coeffs(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::from_coeffs(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

/// First-kind Chebyshev polynomial: `T_0 = 2`, `T_1 = x`,
/// `T_k = x*T_{k-1} - T_{k-2}`.
pub fn cheb_t(k: u32) -> IntPoly {
    cheb_seq(k, IntPoly::constant(2))
}

/// Second-kind Chebyshev polynomial: `S_0 = 1`, `S_1 = x`, same recurrence.
pub fn cheb_s(j: u32) -> IntPoly {
    cheb_seq(j, IntPoly::constant(1))
}

fn cheb_seq(k: u32, seed: IntPoly) -> IntPoly {
    let x = IntPoly::x();
    let (mut prev, mut cur) = (seed, x.clone());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The value `x = t^2 + t^-2` substituted for the Chebyshev variable.
pub fn x_laurent() -> LaurentPoly {
    LaurentPoly::from_terms([(2, 1), (-2, 1)])
}

/// `S_j(t^2 + t^-2)` by the closed form
/// `(t^{2(j+1)} - t^{-2(j+1)}) / (t^2 - t^-2)`, an exact division.
pub fn cheb_s_laurent(j: u32) -> LaurentPoly {
    let e = 2 * (i64::from(j) + 1);
    let num = LaurentPoly::from_terms([(e, 1), (-e, -1)]);
    num.div_exact_t2_minus_t_neg2()
}

/// The symmetric geometric sum `L_k = sum_{l=-k}^{k} t^{4l}`.
pub fn big_l(k: u32) -> LaurentPoly {
    let k = i64::from(k);
    LaurentPoly::from_terms((-k..=k).map(|l| (4 * l, 1)))
}

/// `L_k` in second-kind Chebyshev notation: `L_k = S_{2k}(t^2 + t^-2)`,
/// since both sides are the symmetric geometric sum with step `t^4`.
/// Always equals `big_l(k)`.
pub fn big_l_via_s(k: u32) -> LaurentPoly {
    cheb_s_laurent(2 * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn cheb_t_small_values() {
        assert_eq!(cheb_t(0), ip(&[2]));
        assert_eq!(cheb_t(1), ip(&[0, 1]));
        assert_eq!(cheb_t(2), ip(&[-2, 0, 1]));
        assert_eq!(cheb_t(3), ip(&[0, -3, 0, 1]));
    }

    #[test]
    fn cheb_s_small_values() {
        assert_eq!(cheb_s(0), ip(&[1]));
        assert_eq!(cheb_s(1), ip(&[0, 1]));
        assert_eq!(cheb_s(2), ip(&[-1, 0, 1]));
    }

    #[test]
    fn product_identity_first_steps() {
        // T_1 * T_m = T_{m+1} + T_{m-1}
        for m in 1..=10u32 {
            let lhs = &cheb_t(1) * &cheb_t(m);
            let rhs = &cheb_t(m + 1) + &cheb_t(m - 1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn s_laurent_closed_form_matches_recurrence() {
        for j in 0..=20u32 {
            assert_eq!(cheb_s_laurent(j), cheb_s(j).eval_laurent(&x_laurent()));
        }
    }

    #[test]
    fn s_laurent_small_values() {
        assert_eq!(cheb_s_laurent(0), LaurentPoly::one());
        assert_eq!(cheb_s_laurent(1), x_laurent());
        assert_eq!(
            cheb_s_laurent(3),
            LaurentPoly::from_terms([(6, 1), (2, 1), (-2, 1), (-6, 1)])
        );
    }

    #[test]
    fn big_l_small_values() {
        assert_eq!(big_l(0), LaurentPoly::one());
        assert_eq!(big_l(1), LaurentPoly::from_terms([(4, 1), (0, 1), (-4, 1)]));
        assert_eq!(
            big_l(2),
            LaurentPoly::from_terms([(8, 1), (4, 1), (0, 1), (-4, 1), (-8, 1)])
        );
    }

    #[test]
    fn big_l_two_ways() {
        for k in 0..=10 {
            assert_eq!(big_l(k), big_l_via_s(k));
        }
    }

    #[test]
    fn eval_laurent_substitutes() {
        // T_2 at x = t^2 + t^-2 is t^4 + t^-4
        assert_eq!(
            cheb_t(2).eval_laurent(&x_laurent()),
            LaurentPoly::from_terms([(4, 1), (-4, 1)])
        );
    }
}
