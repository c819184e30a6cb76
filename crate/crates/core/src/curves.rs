//! Integer homology vectors for unoriented curves on the once-punctured
//! torus: canonical representatives, the determinant pairing, SL2(Z)
//! actions, and the normal-form analysis of ordered primitive pairs.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// An unoriented curve class `{(p,q), (-p,-q)}`, stored canonically:
/// `p > 0`, or `p = 0` and `q >= 0`.
///
/// Not necessarily primitive; `(0,0)` is permitted only as an intermediate
/// marker (the scalar case, converted upstream).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveVector {
    p: i64,
    q: i64,
}

impl CurveVector {
    /// Canonicalizes the sign of `(p, q)` under `(p,q) ~ (-p,-q)`.
    pub fn new(p: i64, q: i64) -> Self {
        if p < 0 || (p == 0 && q < 0) {
            Self { p: -p, q: -q }
        } else {
            Self { p, q }
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn raw(&self) -> (i64, i64) {
        (self.p, self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    pub fn is_primitive(&self) -> bool {
        self.p.gcd(&self.q) == 1
    }
}

impl fmt::Display for CurveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Serializes as a two-element array `[p, q]`.
impl Serialize for CurveVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.p, self.q).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (p, q) = <(i64, i64)>::deserialize(d)?;
        Ok(Self::new(p, q))
    }
}

/// Splits a raw vector into its primitive curve and thread degree:
/// `v = thread * curve` up to overall sign, `thread = gcd(|p|,|q|)`.
/// `(0,0)` maps to the degenerate marker `((0,0), 0)`.
pub fn canonicalize(p: i64, q: i64) -> (CurveVector, u32) {
    let g = p.gcd(&q);
    if g == 0 {
        return (CurveVector::new(0, 0), 0);
    }
    let thread = u32::try_from(g).expect("thread degree overflows u32");
    (CurveVector::new(p / g, q / g), thread)
}

/// The determinant pairing `p*s - q*r` of ordered canonical representatives.
pub fn det_pair(u: CurveVector, v: CurveVector) -> i64 {
    u.p * v.q - u.q * v.p
}

/// A matrix in SL2(Z), acting on curves as column vectors from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SL2Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SL2Matrix {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };

    /// Row-major entries; the determinant must be 1.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert_eq!(a * d - b * c, 1, "matrix is not in SL2(Z)");
        Self { a, b, c, d }
    }

    /// The shear `[[1, k], [0, 1]]`, which fixes `(1,0)`.
    pub fn shear(k: i64) -> Self {
        Self::new(1, k, 0, 1)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn apply(&self, (p, q): (i64, i64)) -> (i64, i64) {
        (self.a * p + self.b * q, self.c * p + self.d * q)
    }

    /// Linear action followed by sign canonicalization. Unimodularity
    /// preserves the thread degree of any integer vector.
    pub fn apply_curve(&self, v: CurveVector) -> CurveVector {
        let (p, q) = self.apply(v.raw());
        CurveVector::new(p, q)
    }
}

impl std::ops::Mul for SL2Matrix {
    type Output = SL2Matrix;
    fn mul(self, rhs: SL2Matrix) -> SL2Matrix {
        SL2Matrix::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }
}

/// Serializes as a nested array `[[a, b], [c, d]]`.
impl Serialize for SL2Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [[self.a, self.b], [self.c, self.d]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for SL2Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[i64; 2]; 2]>::deserialize(d)?;
        if a * d - b * c != 1 {
            return Err(serde::de::Error::custom("matrix is not in SL2(Z)"));
        }
        Ok(Self { a, b, c, d })
    }
}

/// Which of the sum/difference curves carries the maximal thread degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaximalSummand {
    Plus,
    Minus,
    None,
}

/// Full analysis of an ordered pair of primitive curves with nonzero
/// determinant.
///
/// Invariants: `n = det_pair(alpha, beta)`; `c_plus`/`c_minus` are the
/// canonicalized sum/difference with coordinate gcds `d_plus`/`d_minus`;
/// `eps = sign(n)`; if `maximal_summand != None` then `max{d_plus, d_minus}
/// = |n|` and `min{d_plus, d_minus} = gcd(|n|, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePair {
    pub alpha: CurveVector,
    pub beta: CurveVector,
    pub n: i64,
    pub c_plus: CurveVector,
    pub c_minus: CurveVector,
    pub d_plus: u32,
    pub d_minus: u32,
    pub eps: i8,
    pub maximal_summand: MaximalSummand,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("input vector ({0}, {1}) is not primitive")]
    NonPrimitiveInput(i64, i64),
    #[error("pair has determinant zero")]
    ZeroDeterminant,
    #[error("pair has determinant {0}, expected absolute value 2")]
    NotDetTwo(i64),
}

fn require_primitive(v: CurveVector) -> Result<(), CurveError> {
    if v.is_primitive() {
        Ok(())
    } else {
        Err(CurveError::NonPrimitiveInput(v.p, v.q))
    }
}

/// Computes the sum/difference curves, their thread degrees, and the
/// maximal-summand flag: Plus iff `alpha + beta == 0` componentwise mod
/// `|n|` (equivalently `d_plus = |n|`), Minus iff `alpha - beta == 0` mod
/// `|n|`. When both congruences hold (only at `|n| = 2`) Plus is recorded.
pub fn analyze_pair(alpha: CurveVector, beta: CurveVector) -> Result<CurvePair, CurveError> {
    require_primitive(alpha)?;
    require_primitive(beta)?;
    let n = det_pair(alpha, beta);
    if n == 0 {
        return Err(CurveError::ZeroDeterminant);
    }
    let nabs = n.unsigned_abs();
    let sum = (alpha.p + beta.p, alpha.q + beta.q);
    let dif = (alpha.p - beta.p, alpha.q - beta.q);
    let (c_plus, d_plus) = canonicalize_nonzero(sum);
    let (c_minus, d_minus) = canonicalize_nonzero(dif);
    let maximal_summand = if u64::from(d_plus) % nabs == 0 {
        MaximalSummand::Plus
    } else if u64::from(d_minus) % nabs == 0 {
        MaximalSummand::Minus
    } else {
        MaximalSummand::None
    };
    Ok(CurvePair {
        alpha,
        beta,
        n,
        c_plus,
        c_minus,
        d_plus,
        d_minus,
        eps: if n > 0 { 1 } else { -1 },
        maximal_summand,
    })
}

fn canonicalize_nonzero(v: (i64, i64)) -> (CurveVector, u32) {
    let (_, d) = canonicalize(v.0, v.1);
    debug_assert!(d > 0, "sum/difference of a nonzero-determinant pair is nonzero");
    (CurveVector::new(v.0, v.1), d)
}

/// Bezout coefficients `(x, y)` with `x*p + y*q = 1` for primitive `(p, q)`.
fn bezout(p: i64, q: i64) -> (i64, i64) {
    let e = p.extended_gcd(&q);
    debug_assert!(e.gcd == 1 || e.gcd == -1);
    if e.gcd == 1 {
        (e.x, e.y)
    } else {
        (-e.x, -e.y)
    }
}

/// Normal form of an ordered primitive pair with determinant `n != 0`:
/// returns `(M, a)` with `M*u = (1,0)` and `M*v = (a, n)`, `0 <= a < |n|`,
/// `gcd(a, n) = 1`. Built from a Bezout step followed by a shear.
pub fn sl2_normal_form(u: CurveVector, v: CurveVector) -> Result<(SL2Matrix, i64), CurveError> {
    require_primitive(u)?;
    require_primitive(v)?;
    let n = det_pair(u, v);
    if n == 0 {
        return Err(CurveError::ZeroDeterminant);
    }
    let (x, y) = bezout(u.p, u.q);
    let m1 = SL2Matrix::new(x, y, -u.q, u.p);
    let (a0, n_img) = m1.apply(v.raw());
    debug_assert_eq!(n_img, n);
    let a = a0.rem_euclid(n.abs());
    let m = SL2Matrix::shear((a - a0) / n) * m1;
    debug_assert_eq!(m.apply(u.raw()), (1, 0));
    debug_assert_eq!(m.apply(v.raw()), (a, n));
    Ok((m, a))
}

/// For a primitive pair with determinant of absolute value 2, returns `M`
/// such that applying `M` to both curves and canonicalizing each image sends
/// the pair to `((1,0), (1,2))`: a Bezout step sends the first curve to
/// `(1,0)`, then a shear (with per-curve sign canonicalization) sends the
/// image of the second to `(1,2)`.
pub fn det2_standardize(c1: CurveVector, c2: CurveVector) -> Result<SL2Matrix, CurveError> {
    require_primitive(c1)?;
    require_primitive(c2)?;
    let d = det_pair(c1, c2);
    if d.abs() != 2 {
        return Err(CurveError::NotDetTwo(d));
    }
    let (x, y) = bezout(c1.p, c1.q);
    let m1 = SL2Matrix::new(x, y, -c1.q, c1.p);
    let (a0, d_img) = m1.apply(c2.raw());
    debug_assert_eq!(d_img, d);
    debug_assert_eq!(a0.rem_euclid(2), 1, "image of a primitive curve stays primitive");
    // d = +2: shear (a0, 2) to (1, 2); d = -2: shear (a0, -2) to (-1, -2),
    // whose canonical representative is (1, 2).
    let k = if d == 2 { (1 - a0) / 2 } else { (a0 + 1) / 2 };
    let m = SL2Matrix::shear(k) * m1;
    debug_assert_eq!(m.apply_curve(c1), CurveVector::new(1, 0));
    debug_assert_eq!(m.apply_curve(c2), CurveVector::new(1, 2));
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(p: i64, q: i64) -> CurveVector {
        CurveVector::new(p, q)
    }

    #[test]
    fn canonicalize_extracts_sign_and_thread() {
        assert_eq!(canonicalize(-3, -6), (cv(1, 2), 3));
        assert_eq!(canonicalize(3, 6), (cv(1, 2), 3));
        assert_eq!(canonicalize(0, 0), (cv(0, 0), 0));
        assert_eq!(canonicalize(0, -5), (cv(0, 1), 5));
    }

    #[test]
    fn det_pair_known_values() {
        assert_eq!(det_pair(cv(1, 2), cv(1, 0)), -2);
        assert_eq!(det_pair(cv(4, 3), cv(0, 1)), 4);
        assert_eq!(det_pair(cv(11, 67), cv(3, 19)), 8);
    }

    #[test]
    fn analyze_pair_det_four() {
        let cp = analyze_pair(cv(4, 3), cv(0, 1)).unwrap();
        assert_eq!(cp.n, 4);
        assert_eq!((cp.c_plus, cp.d_plus), (cv(4, 4), 4));
        assert_eq!((cp.c_minus, cp.d_minus), (cv(4, 2), 2));
        assert_eq!(cp.maximal_summand, MaximalSummand::Plus);
        assert_eq!(cp.eps, 1);
    }

    #[test]
    fn analyze_pair_det_five() {
        let cp = analyze_pair(cv(2, 1), cv(3, 4)).unwrap();
        assert_eq!(cp.n, 5);
        assert_eq!((cp.c_plus, cp.d_plus), (cv(5, 5), 5));
        // (-1,-3) canonicalizes to (1,3)
        assert_eq!((cp.c_minus, cp.d_minus), (cv(1, 3), 1));
        assert_eq!(cp.maximal_summand, MaximalSummand::Plus);
    }

    #[test]
    fn analyze_pair_det_eight() {
        let cp = analyze_pair(cv(11, 67), cv(3, 19)).unwrap();
        assert_eq!(cp.n, 8);
        assert_eq!(cp.d_plus, 2);
        assert_eq!(cp.d_minus, 8);
        assert_eq!(cp.maximal_summand, MaximalSummand::Minus);
    }

    #[test]
    fn analyze_pair_rejects_bad_input() {
        assert_eq!(
            analyze_pair(cv(2, 4), cv(1, 0)),
            Err(CurveError::NonPrimitiveInput(2, 4))
        );
        assert_eq!(
            analyze_pair(cv(1, 2), cv(1, 2)),
            Err(CurveError::ZeroDeterminant)
        );
    }

    #[test]
    fn normal_form_fixes_standard_pairs() {
        let (m, a) = sl2_normal_form(cv(1, 0), cv(3, 7)).unwrap();
        assert_eq!(m, SL2Matrix::IDENTITY);
        assert_eq!(a, 3);
    }

    #[test]
    fn normal_form_postconditions() {
        for (u, v) in [(cv(4, 3), cv(0, 1)), (cv(2, 1), cv(3, 4))] {
            let n = det_pair(u, v);
            let (m, a) = sl2_normal_form(u, v).unwrap();
            assert_eq!(m.apply(u.raw()), (1, 0));
            assert_eq!(m.apply(v.raw()), (a, n));
            assert!(0 <= a && a < n);
            assert_eq!(a.gcd(&n), 1);
            // both pairs are in the maximal regime, so a == +/-1 mod n
            assert!(a % n == 1 || (a + 1) % n == 0);
        }
    }

    #[test]
    fn standardize_det_two_pairs() {
        assert_eq!(
            det2_standardize(cv(1, 0), cv(1, 2)).unwrap(),
            SL2Matrix::IDENTITY
        );
        for (c1, c2) in [
            (cv(1, 2), cv(1, 0)),
            (cv(4, 3), cv(2, 1)),
            (cv(3, 1), cv(1, 1)),
        ] {
            let m = det2_standardize(c1, c2).unwrap();
            assert_eq!(m.apply_curve(c1), cv(1, 0));
            assert_eq!(m.apply_curve(c2), cv(1, 2));
        }
        assert_eq!(
            det2_standardize(cv(1, 0), cv(0, 1)),
            Err(CurveError::NotDetTwo(1))
        );
    }

    #[test]
    fn apply_curve_canonicalizes_and_preserves_gcd() {
        assert_eq!(SL2Matrix::IDENTITY.apply_curve(cv(5, 7)), cv(5, 7));
        let rot = SL2Matrix::new(0, -1, 1, 0);
        assert_eq!(rot.apply_curve(cv(1, 0)), cv(0, 1));
        let m = det2_standardize(cv(4, 3), cv(2, 1)).unwrap();
        let (img_p, img_q) = m.apply((8, 6));
        assert_eq!(img_p.gcd(&img_q), 2);
    }

    #[test]
    fn matrix_algebra() {
        let m = SL2Matrix::new(2, 1, 1, 1);
        assert_eq!(m * m.inverse(), SL2Matrix::IDENTITY);
        assert_eq!(m.inverse() * m, SL2Matrix::IDENTITY);
    }

    #[test]
    fn serde_shapes() {
        assert_eq!(serde_json::to_string(&cv(1, 2)).unwrap(), "[1,2]");
        let m = SL2Matrix::new(1, 1, 0, 1);
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[1,1],[0,1]]");
        let back: SL2Matrix = serde_json::from_str("[[1,1],[0,1]]").unwrap();
        assert_eq!(back, m);
    }
}
