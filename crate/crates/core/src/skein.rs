//! The value type of the algebra: finite linear combinations of T-basis
//! elements over `Z[t, t^-1]`, graded by powers of the central peripheral
//! loop `eta`.

use crate::curves::{canonicalize, CurveVector, SL2Matrix};
use crate::laurent::LaurentPoly;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A T-basis label: the unit, or the Chebyshev threading `T_k(mu)` of a
/// primitive canonical curve with thread degree `k >= 1`.
///
/// `Threaded { mu, k: 0 }` never exists: the zero thread is the scalar
/// `2 * Unit`, produced at normalization time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    Unit,
    Threaded { mu: CurveVector, k: u32 },
}

impl BasisKey {
    pub fn threaded(mu: CurveVector, k: u32) -> Self {
        assert!(k >= 1, "thread degree must be at least 1");
        assert!(mu.is_primitive(), "threaded curve must be primitive");
        BasisKey::Threaded { mu, k }
    }

    /// The full labeled vector `k * mu`; the unit maps to `(0,0)`.
    pub fn full_vector(&self) -> (i64, i64) {
        match self {
            BasisKey::Unit => (0, 0),
            BasisKey::Threaded { mu, k } => {
                let k = i64::from(*k);
                (mu.p() * k, mu.q() * k)
            }
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Unit => write!(f, "1"),
            BasisKey::Threaded { .. } => {
                let (p, q) = self.full_vector();
                write!(f, "({p},{q})")
            }
        }
    }
}

/// An element of the algebra: a finite map from `(eta_degree, key)` to a
/// nonzero Laurent coefficient. The map order (eta degree ascending, then
/// key) is the canonical term order everywhere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkeinElement {
    terms: BTreeMap<(u32, BasisKey), LaurentPoly>,
}

impl SkeinElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The algebra unit.
    pub fn unit() -> Self {
        Self::from_term(0, BasisKey::Unit, LaurentPoly::one())
    }

    /// The peripheral loop.
    pub fn eta() -> Self {
        Self::from_term(1, BasisKey::Unit, LaurentPoly::one())
    }

    pub fn from_term(eta: u32, key: BasisKey, coeff: LaurentPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(eta, key, coeff);
        e
    }

    /// Normalizes a raw vector into a basis element: `(0,0)` is the scalar
    /// `2 * Unit` (the zero thread), anything else is `T_k(mu)` with
    /// coefficient 1.
    pub fn from_raw(p: i64, q: i64) -> Self {
        let (mu, k) = canonicalize(p, q);
        if k == 0 {
            Self::from_term(0, BasisKey::Unit, LaurentPoly::from(2))
        } else {
            Self::from_term(0, BasisKey::threaded(mu, k), LaurentPoly::one())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BasisKey, &LaurentPoly)> {
        self.terms.iter().map(|((d, k), c)| (*d, k, c))
    }

    pub fn coeff(&self, eta: u32, key: &BasisKey) -> LaurentPoly {
        self.terms.get(&(eta, *key)).cloned().unwrap_or_default()
    }

    /// Adds `coeff` into the `(eta, key)` slot, dropping it if the sum is
    /// zero. This is the only mutation path, so canonical form is structural.
    pub fn add_term(&mut self, eta: u32, key: BasisKey, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((eta, key)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (d, key, coeff) in self.terms() {
            out.add_term(d, *key, coeff * c);
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&LaurentPoly::from(c))
    }

    /// Multiplies by `eta^d`: raises every term's eta degree. Legitimate as
    /// a plain shift because `eta` is central.
    pub fn eta_shift(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(e, k), c)| ((e + d, k), c.clone()))
                .collect(),
        }
    }

    /// The largest eta degree carried by any term.
    pub fn max_eta_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(d, _)| d).max()
    }

    /// The sub-sum of terms with eta degree exactly `d`, degrees kept.
    pub fn eta_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((e, _), _)| *e == d)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// The coefficient involution `t -> t^-1` applied to every term.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, c.bar())).collect(),
        }
    }

    /// Relabels every threaded curve through the mapping-class action of
    /// `m`; the unit, eta degrees, and coefficients are untouched.
    pub fn sl2_apply(&self, m: SL2Matrix) -> Self {
        let mut out = Self::zero();
        for (d, key, coeff) in self.terms() {
            let key = match key {
                BasisKey::Unit => BasisKey::Unit,
                BasisKey::Threaded { mu, k } => BasisKey::threaded(m.apply_curve(*mu), *k),
            };
            out.add_term(d, key, coeff.clone());
        }
        out
    }
}

impl std::ops::Add for &SkeinElement {
    type Output = SkeinElement;
    fn add(self, rhs: &SkeinElement) -> SkeinElement {
        let mut out = self.clone();
        for (d, key, coeff) in rhs.terms() {
            out.add_term(d, *key, coeff.clone());
        }
        out
    }
}

impl std::ops::Sub for &SkeinElement {
    type Output = SkeinElement;
    fn sub(self, rhs: &SkeinElement) -> SkeinElement {
        let mut out = self.clone();
        for (d, key, coeff) in rhs.terms() {
            out.add_term(d, *key, -coeff);
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum KeyRepr {
    Unit { unit: bool },
    Threaded { mu: [i64; 2], k: u32 },
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    eta: u32,
    key: KeyRepr,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    terms: Vec<TermRepr>,
}

/// JSON form: `{"terms":[{"eta":d,"key":{"unit":true}|{"mu":[p,q],"k":m},
/// "coeff":{...}}]}` with terms in canonical order.
impl Serialize for SkeinElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(eta, key, coeff)| TermRepr {
                eta,
                key: match key {
                    BasisKey::Unit => KeyRepr::Unit { unit: true },
                    BasisKey::Threaded { mu, k } => KeyRepr::Threaded {
                        mu: [mu.p(), mu.q()],
                        k: *k,
                    },
                },
                coeff: coeff.clone(),
            })
            .collect();
        ElementRepr { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkeinElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        let mut e = SkeinElement::zero();
        for t in repr.terms {
            let key = match t.key {
                KeyRepr::Unit { unit: true } => BasisKey::Unit,
                KeyRepr::Unit { unit: false } => {
                    return Err(serde::de::Error::custom("key object must set unit to true"))
                }
                KeyRepr::Threaded { mu: [p, q], k } => {
                    let v = CurveVector::new(p, q);
                    if !v.is_primitive() {
                        return Err(serde::de::Error::custom("threaded curve must be primitive"));
                    }
                    if k == 0 {
                        return Err(serde::de::Error::custom("thread degree must be at least 1"));
                    }
                    BasisKey::threaded(v, k)
                }
            };
            e.add_term(t.eta, key, t.coeff);
        }
        Ok(e)
    }
}

impl Zero for SkeinElement {
    fn zero() -> Self {
        Self::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl std::ops::Add for SkeinElement {
    type Output = SkeinElement;
    fn add(self, rhs: SkeinElement) -> SkeinElement {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::det2_standardize;

    fn cv(p: i64, q: i64) -> CurveVector {
        CurveVector::new(p, q)
    }

    #[test]
    fn from_raw_normalizes() {
        let e = SkeinElement::from_raw(3, 6);
        assert_eq!(
            e,
            SkeinElement::from_term(0, BasisKey::threaded(cv(1, 2), 3), LaurentPoly::one())
        );
        assert_eq!(
            SkeinElement::from_raw(0, 0),
            SkeinElement::from_term(0, BasisKey::Unit, LaurentPoly::from(2))
        );
        assert_eq!(
            SkeinElement::from_raw(1, 0),
            SkeinElement::from_term(0, BasisKey::threaded(cv(1, 0), 1), LaurentPoly::one())
        );
    }

    #[test]
    fn eta_shift_raises_degree() {
        let two_eta = SkeinElement::from_raw(0, 0).eta_shift(1);
        assert_eq!(two_eta, SkeinElement::eta().scale_int(2));
    }

    #[test]
    fn scale_and_cancel() {
        let e = SkeinElement::from_raw(2, 4);
        let l1 = LaurentPoly::from_terms([(4, 1), (0, 1), (-4, 1)]);
        let scaled = e.scale(&l1);
        assert_eq!(scaled.coeff(0, &BasisKey::threaded(cv(1, 2), 2)), l1);
        assert!((&e + &e.scale_int(-1)).is_zero());
    }

    #[test]
    fn equality_is_canonical_form() {
        let e = SkeinElement::from_raw(1, 2);
        let mut f = e.clone();
        f.add_term(1, BasisKey::Unit, LaurentPoly::zero());
        assert_eq!(e, f);
        let a = SkeinElement::from_term(0, BasisKey::Unit, LaurentPoly::monomial(1, 4));
        let b = SkeinElement::from_term(0, BasisKey::Unit, LaurentPoly::monomial(1, -4));
        assert_ne!(a, b);
    }

    #[test]
    fn sl2_apply_relabels_curves_only() {
        let e = SkeinElement::from_raw(20, 15); // T_5((4,3))
        let m = det2_standardize(cv(4, 3), cv(2, 1)).unwrap();
        assert_eq!(e.sl2_apply(m), SkeinElement::from_raw(5, 0));
        assert_eq!(SkeinElement::eta().sl2_apply(m), SkeinElement::eta());
        assert_eq!(e.sl2_apply(SL2Matrix::IDENTITY), e);
    }

    #[test]
    fn eta_parts_and_degree() {
        let mut e = SkeinElement::from_raw(1, 0);
        e.add_term(2, BasisKey::Unit, LaurentPoly::one());
        assert_eq!(e.max_eta_degree(), Some(2));
        assert_eq!(
            e.eta_part(2),
            SkeinElement::from_term(2, BasisKey::Unit, LaurentPoly::one())
        );
        assert_eq!(e.eta_part(1), SkeinElement::zero());
    }

    #[test]
    fn json_round_trip() {
        let mut e = SkeinElement::from_raw(2, 2).scale(&LaurentPoly::monomial(1, -2));
        e.add_term(1, BasisKey::Unit, LaurentPoly::one());
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"eta":0,"key":{"mu":[1,1],"k":2},"coeff":{"-2":"1"}},{"eta":1,"key":{"unit":true},"coeff":{"0":"1"}}]}"#
        );
        let back: SkeinElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn json_rejects_bad_keys() {
        let bad = r#"{"terms":[{"eta":0,"key":{"mu":[2,4],"k":1},"coeff":{"0":"1"}}]}"#;
        assert!(serde_json::from_str::<SkeinElement>(bad).is_err());
        let bad_k = r#"{"terms":[{"eta":0,"key":{"mu":[1,2],"k":0},"coeff":{"0":"1"}}]}"#;
        assert!(serde_json::from_str::<SkeinElement>(bad_k).is_err());
    }

    #[test]
    fn bar_fixes_curves_and_inverts_t() {
        let e = SkeinElement::from_raw(1, 2).scale(&LaurentPoly::monomial(1, 3));
        assert_eq!(
            e.bar(),
            SkeinElement::from_raw(1, 2).scale(&LaurentPoly::monomial(1, -3))
        );
    }
}
