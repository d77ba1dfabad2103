//! Field axioms for the Gaussian-rational scalars, exact on random inputs.

use pgca::Scalar;
use proptest::prelude::*;

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5)
        .prop_map(|(a, b, c, d)| Scalar::gaussian(a, b, c, d))
}

fn arb_nonzero() -> impl Strategy<Value = Scalar> {
    arb_scalar().prop_filter("nonzero", |v| !v.is_zero())
}

proptest! {
    #[test]
    fn addition_commutes(a in arb_scalar(), b in arb_scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn addition_associates(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_commutes(a in arb_scalar(), b in arb_scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn additive_inverse(a in arb_scalar()) {
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn multiplicative_inverse(a in arb_nonzero()) {
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn power_additivity(a in arb_nonzero(), m in -8i64..=8, n in -8i64..=8) {
        prop_assert_eq!(
            a.pow(m + n).unwrap(),
            a.pow(m).unwrap() * a.pow(n).unwrap()
        );
    }

    #[test]
    fn display_parse_round_trip(a in arb_scalar()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }
}
