//! Exact arithmetic in the Kauffman bracket skein algebra of the
//! once-punctured torus.
//!
//! Elements are finite linear combinations of Chebyshev-threaded curves
//! `(kp, kq)_T = T_k((p, q))` over `Z[t, t^-1]`, graded by powers of the
//! central peripheral loop `eta`. The [`product`] module implements the
//! closed-form multiplication rules (product-to-sum main terms plus the
//! `eta`-corrections for small determinants, the `(n,2n)_T * (1,0)_T`
//! family, and the maximal-thread cascade); the [`oracle`] module verifies
//! them against an independent stepwise decomposition engine and a fixture
//! suite of worked products.

pub mod chebyshev;
pub mod curves;
pub mod laurent;
pub mod oracle;
pub mod product;
pub mod skein;

pub use curves::{CurvePair, CurveVector, SL2Matrix};
pub use laurent::LaurentPoly;
pub use product::ProductCase;
pub use skein::{BasisKey, SkeinElement};
