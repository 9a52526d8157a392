use braidmon::scalar::{is_square_free, rat, RealQuad};
use num::bigint::BigInt;
use num::Signed;
use proptest::prelude::*;

/// Sign of `a/b + (c/d)·√t` from a 100-digit integer square root.
fn decimal_sign(a: i64, b: i64, c: i64, d: i64, t: u64) -> i32 {
    let scale = BigInt::from(10).pow(100u32);
    let root = (BigInt::from(t) * &scale * &scale).sqrt();
    // value · b·d·10^100, up to an error below |c·b|
    let approx = BigInt::from(a) * d * &scale + BigInt::from(c) * b * root;
    let slack = BigInt::from(c * b).abs() + 1;
    if approx.abs() <= slack {
        assert!(a == 0 && c == 0, "value too close to zero for the oracle");
        return 0;
    }
    if approx.is_positive() { 1 } else { -1 }
}

fn square_free() -> impl Strategy<Value = u64> {
    (1u64..60).prop_filter("square-free", |&t| is_square_free(t))
}

fn quad(t: u64) -> impl Strategy<Value = RealQuad> {
    (-40i64..40, 1i64..12, -40i64..40, 1i64..12).prop_map(move |(a, b, c, d)| RealQuad::new(rat(a, b), rat(c, d), t).unwrap())
}

fn triple() -> impl Strategy<Value = (RealQuad, RealQuad, RealQuad)> {
    square_free().prop_flat_map(|t| (quad(t), quad(t), quad(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sign_matches_decimal_evaluation(a in -500i64..500, b in 1i64..50, c in -500i64..500, d in 1i64..50, t in square_free()) {
        let x = RealQuad::new(rat(a, b), rat(c, d), t).unwrap();
        prop_assert_eq!(x.sign(), decimal_sign(a, b, c, d, t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), RealQuad::one(x.t()));
        }
    }

    #[test]
    fn order_is_compatible_with_subtraction((x, y, _z) in triple()) {
        prop_assert_eq!(x.cmp(&y) as i32, (&x - &y).sign());
    }

    #[test]
    fn norm_is_multiplicative((x, y, _z) in triple()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }
}

#[test]
fn zero_has_sign_zero() {
    assert_eq!(RealQuad::new(rat(0, 1), rat(0, 1), 5).unwrap().sign(), 0);
    assert!(RealQuad::new(rat(1, 1), rat(0, 1), 4).is_err());
}
