mod common;

use common::{laurent, monomial, one_minus, q};
use kenum::lattice::text::{format_polynomial, parse_polynomial, polynomial_from_json, polynomial_to_json};
use kenum::lattice::{
    expand_in_cone, ConeDirection, FactoredRational, LaurentPolynomial, Monomial, RationalSum,
    TruncatedSeries, VariableSet, Q,
};
use proptest::prelude::*;

fn vars4() -> VariableSet {
    VariableSet::new(&["t1", "t2", "t3", "t4"])
}

/// Prime squares, so every half-integer power is rational.
fn point(nvars: usize) -> Vec<Q> {
    [9, 25, 49, 121, 169].iter().take(nvars).map(|&p| q(p)).collect()
}

/// Polynomial with nonnegative integral exponents.
fn positive_poly(nvars: usize) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::collection::vec(0i32..=2, nvars), -3i64..=3), 1..=5).prop_map(
        move |ts| LaurentPolynomial::from_terms(nvars, ts.into_iter().map(|(e, c)| (Monomial::from_integer(e), q(c)))),
    )
}

/// Nontrivial monomial with nonnegative integral exponents.
fn positive_weight(nvars: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0i32..=2, nvars)
        .prop_filter("nontrivial", |e| e.iter().any(|&x| x > 0))
        .prop_map(Monomial::from_integer)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in laurent(4, 12), b in laurent(4, 12), c in laurent(4, 12)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &(-&a), LaurentPolynomial::zero(4));
        prop_assert_eq!(&a * &LaurentPolynomial::one(4), a.clone());
    }

    #[test]
    fn bar_is_an_involutive_homomorphism(a in laurent(4, 12), b in laurent(4, 12)) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn adams_is_a_ring_homomorphism(a in laurent(3, 8), b in laurent(3, 8), n in 1u32..4) {
        prop_assert_eq!((&a * &b).adams(n), &a.adams(n) * &b.adams(n));
        prop_assert_eq!(a.adams(1), a.clone());
    }

    #[test]
    fn exact_division_multiplies_back(a in laurent(3, 6), b in laurent(3, 6)) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in laurent(4, 12)) {
        let v = vars4();
        let s = format_polynomial(&v, &a);
        prop_assert_eq!(parse_polynomial(&v, &s).unwrap(), a);
    }

    #[test]
    fn json_round_trip(a in laurent(4, 12)) {
        let v = vars4();
        let (back_vars, back) = polynomial_from_json(&polynomial_to_json(&v, &a)).unwrap();
        prop_assert_eq!(back_vars.names(), v.names());
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(3, 8), b in laurent(3, 8)) {
        let p = point(3);
        let ab = (&a * &b).evaluate(&p).unwrap();
        prop_assert_eq!(ab, a.evaluate(&p).unwrap() * b.evaluate(&p).unwrap());
    }

    #[test]
    fn factored_evaluation_matches_expanded_parts(
        num in positive_poly(3),
        dens in prop::collection::vec((positive_weight(3), 1i32..=2), 1..=3),
        m in monomial(3),
    ) {
        let mut f = FactoredRational::from_poly(&num).mul_monomial(&m);
        for (w, k) in &dens {
            f.mul_power(&one_minus(w), -k);
        }
        let p = point(3);
        let direct = f.evaluate(&p).unwrap();
        let parts = f.numerator().evaluate(&p).unwrap() / f.denominator().evaluate(&p).unwrap();
        prop_assert_eq!(direct, parts);
    }

    #[test]
    fn cone_expansion_times_denominator(
        num in positive_poly(2),
        dens in prop::collection::vec(positive_weight(2), 1..=3),
        order in 1i64..=5,
    ) {
        let mut f = FactoredRational::from_poly(&num);
        for w in &dens {
            f.mul_power(&one_minus(w), -1);
        }
        let dirs = [Some(ConeDirection::AtZero); 2];
        let series = expand_in_cone(&f, &dirs, order).unwrap();
        let weights = [1, 1];
        let back = (&series * &f.denominator()).truncate_weighted(&weights, 2 * order);
        prop_assert_eq!(back, f.numerator().truncate_weighted(&weights, 2 * order));
    }

    #[test]
    fn series_reciprocal(cs in prop::collection::vec(laurent(2, 4), 4)) {
        let mut coeffs = cs;
        coeffs.insert(0, LaurentPolynomial::one(2));
        let a = TruncatedSeries::from_coeffs(&LaurentPolynomial::zero(2), 4, coeffs);
        let prod = a.mul(&a.reciprocal().unwrap());
        let one = TruncatedSeries::one(&LaurentPolynomial::zero(2), 4);
        prop_assert_eq!(prod.coeffs(), one.coeffs());
    }
}

#[test]
fn canonical_string_examples() {
    let v = VariableSet::new(&["t1", "t2"]);
    let p = v.parse("t1^(1/2)*t2^(-1) + 3 - 2*t1").unwrap();
    let s = format_polynomial(&v, &p);
    assert_eq!(parse_polynomial(&v, &s).unwrap(), p);
    assert_eq!(p.evaluate(&[q(4), q(2)]).unwrap(), q(-4));
}

#[test]
fn bar_of_a_constant() {
    let five = LaurentPolynomial::constant(3, q(5));
    assert_eq!(five.bar(), five);
}

#[test]
fn adams_examples() {
    let v = VariableSet::new(&["t1", "t2"]);
    let p = v.parse("t1*t2^(-1/2)").unwrap();
    assert_eq!(p.adams(2), v.parse("t1^2*t2^(-1)").unwrap());
    let s = v.parse("t1 + t2").unwrap();
    let newton = &(&s * &s) - &v.parse("2*t1*t2").unwrap();
    assert_eq!(s.adams(2), newton);
}

#[test]
fn cone_examples() {
    let v = VariableSet::new(&["t1", "t2"]);
    let mut f = FactoredRational::from_poly(&v.parse("(1 - t1^(-1))*(1 - t2^(-1))").unwrap());
    f.mul_power(&v.parse("1 - t1^(-1)*t2^(-1)").unwrap(), -1);
    let dirs = [Some(ConeDirection::AtInfinity); 2];
    let got = expand_in_cone(&f, &dirs, 2).unwrap();
    let expected = v
        .parse("1 - t1^(-1) - t2^(-1) + 2*t1^(-1)*t2^(-1)")
        .unwrap();
    assert_eq!(got, expected);

    let z = VariableSet::new(&["z"]);
    let mut g = FactoredRational::one(1);
    g.mul_power(&z.parse("1 - z").unwrap(), -1);
    let got = expand_in_cone(&g, &[Some(ConeDirection::AtZero)], 3).unwrap();
    assert_eq!(got, z.parse("1 + z + z^2 + z^3").unwrap());

    let mut h = FactoredRational::from_poly(&v.parse("1 - t1").unwrap());
    h.mul_power(&v.parse("1 - t1").unwrap(), -1);
    assert!(expand_in_cone(&h, &dirs, 4).unwrap().is_one());
}

#[test]
fn half_integer_evaluation() {
    let v = VariableSet::new(&["t1"]);
    assert_eq!(v.parse("1 - t1").unwrap().evaluate(&[q(4)]).unwrap(), q(-3));
    assert_eq!(v.parse("t1^(1/2)").unwrap().evaluate(&[q(9)]).unwrap(), q(3));
    assert!(v.parse("t1^(1/2)").unwrap().evaluate(&[q(2)]).is_err());
}

#[test]
fn sum_of_fractions_clears_to_a_polynomial() {
    let v = VariableSet::new(&["t"]);
    let t = v.parse("t").unwrap();
    let mut a = FactoredRational::one(1);
    a.mul_power(&v.parse("1 - t").unwrap(), -1);
    let b = FactoredRational::from_poly(&-&t).mul(&a);
    let total = RationalSum::from_factored(&a).add(&RationalSum::from_factored(&b));
    assert_eq!(total.to_laurent().unwrap(), LaurentPolynomial::one(1));
    assert!(total.sub(&RationalSum::one(1)).is_zero());
    assert!(!RationalSum::from_factored(&a).is_zero());
}
