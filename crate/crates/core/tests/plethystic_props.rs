mod common;

use common::{brute_plane_partitions, character, laurent, q};
use kenum::lattice::{FactoredRational, LaurentPolynomial, Monomial, RationalSum, TruncatedSeries, VariableSet};
use kenum::plethystic::{aroof, determinant, ext_alg, pleth_exp, pleth_log, sym_alg, sym_hat, PlethError};
use proptest::prelude::*;

const ORDER: usize = 4;

fn graded(nvars: usize) -> impl Strategy<Value = TruncatedSeries<LaurentPolynomial>> {
    prop::collection::vec(laurent(nvars, 5), ORDER).prop_map(move |mut cs| {
        cs.insert(0, LaurentPolynomial::zero(nvars));
        TruncatedSeries::from_coeffs(&LaurentPolynomial::zero(nvars), ORDER, cs)
    })
}

fn same(a: &FactoredRational, b: &FactoredRational) -> bool {
    RationalSum::from_factored(a).sub(&RationalSum::from_factored(b)).is_zero()
}

fn sign(v: &LaurentPolynomial) -> i64 {
    if v.rank().to_integer() % 2 == 0.into() {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn log_inverts_exp(g in graded(3)) {
        let back = pleth_log(&pleth_exp(&g).unwrap()).unwrap();
        prop_assert_eq!(back.coeffs(), g.coeffs());
    }

    #[test]
    fn exp_inverts_log(g in graded(3)) {
        let mut f = g.clone();
        f.set_coeff(0, LaurentPolynomial::one(3));
        let back = pleth_exp(&pleth_log(&f).unwrap()).unwrap();
        prop_assert_eq!(back.coeffs(), f.coeffs());
    }

    #[test]
    fn exp_turns_sums_into_products(a in graded(2), b in graded(2)) {
        let lhs = pleth_exp(&a.add(&b)).unwrap();
        let rhs = pleth_exp(&a).unwrap().mul(&pleth_exp(&b).unwrap());
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn koszul_reciprocity(v in character(3, 6)) {
        let prod = ext_alg(&v).unwrap().mul(&sym_alg(&v).unwrap());
        prop_assert!(same(&prod, &FactoredRational::one(3)));
    }

    #[test]
    fn symmetrized_sign_duality(v in character(3, 6)) {
        let lhs = sym_hat(&v.bar()).unwrap();
        let rhs = sym_hat(&v).unwrap().scale(&q(sign(&v)));
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn duality_with_determinant(v in character(3, 6)) {
        let det_dual = determinant(&v.bar()).unwrap();
        let rhs = sym_alg(&v.bar()).unwrap().mul_monomial(&det_dual).scale(&q(sign(&v)));
        prop_assert!(same(&sym_alg(&v).unwrap(), &rhs));
    }

    #[test]
    fn aroof_is_multiplicative(x in character(3, 4), y in character(3, 4)) {
        let lhs = aroof(&(&x + &y)).unwrap();
        let rhs = aroof(&x).unwrap().mul(&aroof(&y).unwrap());
        prop_assert!(same(&lhs, &rhs));
    }
}

fn z_series(nvars: usize, coeffs: Vec<LaurentPolynomial>) -> TruncatedSeries<LaurentPolynomial> {
    let order = coeffs.len() - 1;
    TruncatedSeries::from_coeffs(&LaurentPolynomial::zero(nvars), order, coeffs)
}

#[test]
fn single_weight() {
    let v = VariableSet::new(&["t"]);
    let t = v.parse("t").unwrap();
    let g = z_series(1, vec![v.zero(), t.clone(), v.zero(), v.zero()]);
    let e = pleth_exp(&g).unwrap();
    let powers: Vec<LaurentPolynomial> = (0..4).map(|k| t.pow(k)).collect();
    assert_eq!(e.coeffs(), powers.as_slice());
    assert_eq!(pleth_log(&e).unwrap().coeffs(), g.coeffs());

    let neg = pleth_exp(&g.neg()).unwrap();
    assert_eq!(neg.coeffs(), &[v.one(), -&t, v.zero(), v.zero()]);
}

#[test]
fn macmahon_logarithm() {
    let order = 6;
    let counts: Vec<LaurentPolynomial> = (0..=order)
        .map(|n| LaurentPolynomial::constant(1, q(brute_plane_partitions(n).len() as i64)))
        .collect();
    let log = pleth_log(&z_series(1, counts)).unwrap();
    for k in 0..=order {
        assert_eq!(log.coeff(k).constant_term(), q(k as i64));
    }
}

#[test]
fn aroof_single_weight() {
    let v = VariableSet::new(&["t1"]);
    let a = aroof(&v.parse("t1").unwrap()).unwrap();
    let d = v.parse("t1^(1/2) - t1^(-1/2)").unwrap();
    assert!(same(&a, &FactoredRational::from_power(&d, -1)));
    assert!(matches!(aroof(&v.one()), Err(PlethError::TrivialWeight)));
}

#[test]
fn symmetrized_rank_one() {
    let v = VariableSet::new(&["t"]);
    let s = sym_hat(&v.parse("t").unwrap()).unwrap();
    let mut expect = FactoredRational::term(q(1), Monomial::from_doubled([1]));
    expect.mul_power(&v.parse("1 - t").unwrap(), -1);
    assert!(same(&s, &expect));
}

#[test]
fn zero_weight_is_rejected() {
    let g = z_series(1, vec![LaurentPolynomial::one(1), LaurentPolynomial::zero(1)]);
    assert!(matches!(pleth_exp(&g), Err(PlethError::ZeroWeightPresent)));
    let f = z_series(1, vec![LaurentPolynomial::constant(1, q(2)), LaurentPolynomial::zero(1)]);
    assert!(matches!(pleth_log(&f), Err(PlethError::ConstantTermNotOne)));
}
