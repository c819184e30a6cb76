//! Randomized checks of the module-level algebra on skein elements: the
//! additive structure, the coefficient involution, change of basis, and the
//! serialization round trip.

use num_integer::Integer;
use ptskein_core::{BasisKey, CurveVector, LaurentPoly, SL2Matrix, SkeinElement};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_poly(rng: &mut StdRng) -> LaurentPoly {
    let n = rng.gen_range(1..=4);
    LaurentPoly::from_terms((0..n).map(|_| {
        (
            rng.gen_range(-10..=10i64),
            num_bigint::BigInt::from(rng.gen_range(-9..=9i64)),
        )
    }))
}

fn random_key(rng: &mut StdRng) -> BasisKey {
    if rng.gen_bool(0.2) {
        return BasisKey::Unit;
    }
    let mu = loop {
        let p = rng.gen_range(-20..=20i64);
        let q = rng.gen_range(-20..=20i64);
        if (p, q) != (0, 0) && p.gcd(&q) == 1 {
            break CurveVector::new(p, q);
        }
    };
    BasisKey::threaded(mu, rng.gen_range(1..=4))
}

fn random_element(rng: &mut StdRng) -> SkeinElement {
    let mut e = SkeinElement::zero();
    for _ in 0..rng.gen_range(0..=5) {
        e.add_term(rng.gen_range(0..=3), random_key(rng), random_poly(rng));
    }
    e
}

fn random_sl2(rng: &mut StdRng) -> SL2Matrix {
    let mut m = SL2Matrix::IDENTITY;
    for _ in 0..rng.gen_range(1..=6) {
        let g = if rng.gen_bool(0.5) {
            SL2Matrix::shear(rng.gen_range(-2..=2i64))
        } else {
            SL2Matrix::new(0, -1, 1, 0)
        };
        m = g * m;
    }
    m
}

#[test]
fn additive_structure_and_scaling() {
    let mut rng = StdRng::seed_from_u64(0x3001);
    for _ in 0..500 {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        let c = random_poly(&mut rng);
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!((&a + &b).scale(&c), &a.scale(&c) + &b.scale(&c));
        assert_eq!(a.scale_int(3), &(&a + &a) + &a);
        assert!((&a - &a).is_zero());
    }
}

#[test]
fn eta_shift_is_a_module_map() {
    let mut rng = StdRng::seed_from_u64(0x3002);
    for _ in 0..500 {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        let c = random_poly(&mut rng);
        let d = rng.gen_range(0..=3u32);
        assert_eq!((&a + &b).eta_shift(d), &a.eta_shift(d) + &b.eta_shift(d));
        assert_eq!(a.scale(&c).eta_shift(d), a.eta_shift(d).scale(&c));
        assert_eq!(a.eta_shift(0), a);
        assert_eq!(a.eta_shift(1).eta_shift(2), a.eta_shift(3));
    }
}

#[test]
fn eta_parts_partition_the_element() {
    let mut rng = StdRng::seed_from_u64(0x3003);
    for _ in 0..500 {
        let a = random_element(&mut rng);
        match a.max_eta_degree() {
            None => assert!(a.is_zero()),
            Some(top) => {
                let mut sum = SkeinElement::zero();
                for d in 0..=top {
                    let part = a.eta_part(d);
                    // Each part is homogeneous at its own degree.
                    for (eta, _, _) in part.terms() {
                        assert_eq!(eta, d);
                    }
                    sum = &sum + &part;
                }
                assert_eq!(sum, a);
                assert!(!a.eta_part(top).is_zero());
            }
        }
    }
}

#[test]
fn coefficient_involution() {
    let mut rng = StdRng::seed_from_u64(0x3004);
    for _ in 0..500 {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        assert_eq!(a.bar().bar(), a);
        assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        // bar inverts t, so it conjugates scaling.
        let c = random_poly(&mut rng);
        assert_eq!(a.scale(&c).bar(), a.bar().scale(&c.bar()));
    }
}

#[test]
fn change_of_basis_is_linear_and_invertible() {
    let mut rng = StdRng::seed_from_u64(0x3005);
    for _ in 0..300 {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        let m = random_sl2(&mut rng);
        assert_eq!((&a + &b).sl2_apply(m), &a.sl2_apply(m) + &b.sl2_apply(m));
        assert_eq!(a.sl2_apply(m).sl2_apply(m.inverse()), a);
        assert_eq!(a.sl2_apply(SL2Matrix::IDENTITY), a);
        // Unit terms are fixed; eta degrees are untouched.
        assert_eq!(
            a.sl2_apply(m).max_eta_degree(),
            a.max_eta_degree()
        );
    }
}

#[test]
fn raw_vectors_enter_at_class_level() {
    let mut rng = StdRng::seed_from_u64(0x3006);
    for _ in 0..200 {
        let p = rng.gen_range(-30..=30i64);
        let q = rng.gen_range(-30..=30i64);
        assert_eq!(SkeinElement::from_raw(p, q), SkeinElement::from_raw(-p, -q));
    }
    assert_eq!(
        SkeinElement::from_raw(0, 0),
        SkeinElement::unit().scale_int(2)
    );
}

#[test]
fn serialization_round_trips() {
    let mut rng = StdRng::seed_from_u64(0x3007);
    for _ in 0..200 {
        let a = random_element(&mut rng);
        let json = serde_json::to_string(&a).unwrap();
        let back: SkeinElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }
    // Malformed keys are rejected rather than silently coerced.
    for bad in [
        r#"{"terms":[{"eta":0,"key":{"mu":[2,4],"k":1},"coeff":{"0":"1"}}]}"#,
        r#"{"terms":[{"eta":0,"key":{"mu":[1,1],"k":0},"coeff":{"0":"1"}}]}"#,
        r#"{"terms":[{"eta":0,"key":{"unit":false},"coeff":{"0":"1"}}]}"#,
    ] {
        assert!(serde_json::from_str::<SkeinElement>(bad).is_err());
    }
}
