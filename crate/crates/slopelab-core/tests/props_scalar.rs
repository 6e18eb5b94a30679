//! Property tests for the exact scalar field: field axioms on rational
//! and quadratic samples, order/decimal consistency, and normalization.

use proptest::prelude::*;

use slopelab_core::scalar::ExactScalar;

fn s(text: &str) -> ExactScalar {
    ExactScalar::parse(text).unwrap()
}

fn rational() -> impl Strategy<Value = ExactScalar> {
    (-200i64..=200, 1i64..=40).prop_map(|(n, d)| ExactScalar::from_ratio(n, d).unwrap())
}

/// `a + b*sqrt(d)` with small rational `a`, `b`.
fn quadratic(d: u32) -> impl Strategy<Value = ExactScalar> {
    (rational(), rational()).prop_map(move |(a, b)| {
        let root = s(&format!("0+1*sqrt({d})"));
        a + b * root
    })
}

/// Samples from one field at a time, so arithmetic always stays legal.
fn same_field_triple() -> impl Strategy<Value = (ExactScalar, ExactScalar, ExactScalar)> {
    prop_oneof![
        (rational(), rational(), rational()),
        (quadratic(5), quadratic(5), quadratic(5)),
        (quadratic(6), quadratic(6), quadratic(6)),
    ]
}

/// Mixed-field samples; only comparison is exercised on these.
fn any_scalar() -> impl Strategy<Value = ExactScalar> {
    prop_oneof![rational(), quadratic(2), quadratic(5), quadratic(6)]
}

/// Reads a plain decimal string back as an exact scalar.
fn decimal_value(text: &str) -> ExactScalar {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    let mut value = s(whole);
    if !frac.is_empty() {
        let numer = s(frac);
        let denom = ExactScalar::from_int(10).powi(frac.len() as u32);
        value = value + numer / denom;
    }
    if neg {
        -value
    } else {
        value
    }
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative((a, b, c) in same_field_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_is_associative_and_commutative((a, b, c) in same_field_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_distributes_over_addition((a, b, c) in same_field_triple()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn additive_and_multiplicative_inverses_cancel((a, _b, _c) in same_field_triple()) {
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), ExactScalar::one());
            prop_assert_eq!(ExactScalar::one().try_div(&a).unwrap(), a.recip().unwrap());
        } else {
            prop_assert!(a.recip().is_err());
        }
    }

    #[test]
    fn subtraction_and_division_agree_with_inverses((a, b, _c) in same_field_triple()) {
        prop_assert_eq!(&a - &b, &a + &(-&b));
        if !b.is_zero() {
            prop_assert_eq!(&a / &b, &a * &b.recip().unwrap());
        }
    }

    #[test]
    fn powers_multiply_exponents(a in any_scalar(), m in 0u32..6, n in 0u32..6) {
        prop_assert_eq!(a.powi(m + n), a.powi(m) * a.powi(n));
    }

    #[test]
    fn order_is_transitive_and_antisymmetric(
        a in any_scalar(),
        b in any_scalar(),
        c in any_scalar(),
    ) {
        let mut items = [a, b, c];
        items.sort();
        prop_assert!(items[0] <= items[1] && items[1] <= items[2]);
        let (a, b) = (&items[0], &items[1]);
        if a <= b && b <= a {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn squaring_preserves_order_on_nonnegatives(a in any_scalar(), b in any_scalar()) {
        let (x, y) = (a.abs(), b.abs());
        prop_assert_eq!(x < y, &x * &x < &y * &y);
    }

    #[test]
    fn decimal_rounding_is_monotone(a in any_scalar(), b in any_scalar(), digits in 0usize..10) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let dl = decimal_value(&lo.to_decimal(digits));
        let dh = decimal_value(&hi.to_decimal(digits));
        prop_assert!(dl <= dh);
    }

    #[test]
    fn decimal_error_is_at_most_half_an_ulp(a in any_scalar(), digits in 0usize..10) {
        let approx = decimal_value(&a.to_decimal(digits));
        let ulp = ExactScalar::from_int(10).powi(digits as u32).recip().unwrap();
        let two = ExactScalar::from_int(2);
        prop_assert!((&approx - &a).abs() * two <= ulp);
    }

    #[test]
    fn display_then_parse_is_the_identity(a in any_scalar()) {
        let text = a.to_string();
        let back = ExactScalar::parse(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn vanishing_irrational_part_normalizes_away(a in rational(), d in prop::sample::select(vec![2u32, 5, 6])) {
        let root = s(&format!("0+1*sqrt({d})"));
        let collapsed = &a + &(&root - &root);
        prop_assert_eq!(&collapsed, &a);
        prop_assert_eq!(collapsed.to_string(), a.to_string());
        prop_assert!(!collapsed.to_string().contains("sqrt"));
    }

    #[test]
    fn square_factors_leave_the_radical(r in rational(), d in prop::sample::select(vec![2u32, 3, 5, 6, 7, 10])) {
        let radicand = &(&r * &r) * &ExactScalar::from_int(d as i64);
        let expanded = ExactScalar::sqrt_of_rational(radicand.as_rational().unwrap()).unwrap();
        let root = s(&format!("0+1*sqrt({d})"));
        prop_assert_eq!(expanded, r.abs() * root);
    }

    #[test]
    fn floor_brackets_the_value(a in any_scalar()) {
        let floor = ExactScalar::from(a.floor_int());
        prop_assert!(&floor <= &a);
        prop_assert!(a < &floor + &ExactScalar::one());
        prop_assert_eq!(&a.fract(), &(&a - &floor));
    }

    #[test]
    fn mixed_field_arithmetic_is_rejected(a in rational(), b in rational()) {
        let r5 = &a + &s("0+1*sqrt(5)");
        let r6 = &b + &s("0+1*sqrt(6)");
        prop_assert!(r5.try_add(&r6).is_err());
        prop_assert!(r5.try_mul(&r6).is_err());
        prop_assert!(r5.cmp(&r6) == core::cmp::Ordering::Less || r5 > r6);
    }
}
