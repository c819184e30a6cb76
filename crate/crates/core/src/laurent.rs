//! Sparse exact Laurent polynomials in the variable `t` over
//! arbitrary-precision integers: the coefficient ring of the skein algebra.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial in `t` with `BigInt` coefficients, stored sparsely
/// as a map from exponent to coefficient.
///
/// Canonical form: no stored coefficient is zero; the zero polynomial is the
/// empty map. Every operation preserves this, so equality is map equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The single-term polynomial `coeff * t^exp` (zero if `coeff` is zero).
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.insert_add(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.insert_add(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term iterator in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_add(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, k)| (e, k * c)).collect(),
        }
    }

    /// The involution `t -> t^-1` (coefficients fixed, exponents negated).
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact division by `t^2 - t^-2`.
    ///
    /// Panics if the division leaves a remainder; this is the only division
    /// the algebra needs (the second-kind Chebyshev closed form).
    pub fn div_exact_t2_minus_t_neg2(&self) -> Self {
        // p / (t^2 - t^-2) = (p * t^2) / (t^4 - 1), by long division from
        // the top. Exactness keeps every intermediate exponent within the
        // shifted dividend's span.
        let mut rem = self * &Self::monomial(1, 2);
        let lo = match rem.min_exp() {
            None => return Self::zero(),
            Some(lo) => lo,
        };
        let mut quot = Self::zero();
        while let Some((&e, c)) = rem.terms.iter().next_back() {
            let c = c.clone();
            assert!(e - 4 >= lo, "division by t^2 - t^-2 is not exact");
            quot.insert_add(e - 4, c.clone());
            rem.insert_add(e, -c.clone());
            rem.insert_add(e - 4, c);
        }
        quot
    }

    /// Evaluates `t^shift * self` at `t = base` as an exact integer.
    /// Every shifted exponent must be nonnegative.
    pub fn eval_shifted(&self, base: i64, shift: i64) -> BigInt {
        let base = BigInt::from(base);
        let mut acc = BigInt::zero();
        for (e, c) in self.terms() {
            let k = u32::try_from(e + shift).expect("shifted exponent must be nonnegative");
            acc += c * base.pow(k);
        }
        acc
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.insert_add(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.insert_add(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.insert_add(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

/// Renders in descending exponent order, e.g. `t^4 + 2*t^2 - 1 + t^-4`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = c.magnitude();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let one = mag == &1u32.into();
            match (e, one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: an object mapping decimal exponent strings to decimal
/// coefficient strings in descending exponent order, e.g.
/// `{"4":"1","0":"1","-4":"1"}`.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.terms().rev() {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent strings to coefficient strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((e, c)) = access.next_entry::<String, String>()? {
                    let e: i64 = e.parse().map_err(|_| de::Error::custom("bad exponent"))?;
                    let c: BigInt = c.parse().map_err(|_| de::Error::custom("bad coefficient"))?;
                    p.insert_add(e, c);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_map(V)
    }
}
