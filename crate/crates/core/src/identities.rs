//! The q-binomial theorem in sum, plethystic and product form, its
//! first-order difference equation, and the M-theory character identity.

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{
    expand_in_cone, q, AlgebraError, ConeDirection,
    FactoredRational, LaurentPolynomial, Monomial, MonomialMap, RationalSum, TruncatedSeries,
    VariableSet, Q,
};
use crate::lattice::text::{format_factored, format_polynomial};
use crate::plethystic::{pleth_exp, PlethError};

pub const MAX_QBINOMIAL_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("order {order} exceeds the limit {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error(transparent)]
    Pleth(#[from] PlethError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub order: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub verdict: bool,
    pub first_mismatch: Option<usize>,
}

fn guard(order: usize) -> Result<(), IdentityError> {
    if order > MAX_QBINOMIAL_ORDER {
        return Err(IdentityError::OrderTooLarge {
            order,
            max: MAX_QBINOMIAL_ORDER,
        });
    }
    Ok(())
}

/// Variables `(t, m)`.
pub fn qbinomial_vars() -> VariableSet {
    VariableSet::new(&["t", "m"])
}

fn tm(et: i32, em: i32) -> Monomial {
    Monomial::from_integer([et, em])
}

fn one_minus(m: Monomial) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(2, [(Monomial::one(2), q(1)), (m, q(-1))])
}

/// `prod_{i=1..n} (1 - m t^i)/(1 - t^i)` with `m` replaced by `m_image`.
fn sum_coefficient(n: usize, m_image: &Monomial) -> FactoredRational {
    let mut f = FactoredRational::one(2);
    for i in 1..=n as i32 {
        f.mul_power(&one_minus(m_image.mul(&tm(i, 0))), 1);
        f.mul_power(&one_minus(tm(i, 0)), -1);
    }
    f
}

/// Coefficients of `sum_n z^n prod_{i=1..n} (1 - m t^i)/(1 - t^i)`.
pub fn qbinomial_sum_coefficients(order: usize) -> Vec<FactoredRational> {
    (0..=order).map(|n| sum_coefficient(n, &tm(0, 1))).collect()
}

pub fn qbinomial_sum_form(order: usize) -> TruncatedSeries<RationalSum> {
    let coeffs = qbinomial_sum_coefficients(order)
        .iter()
        .map(RationalSum::from_factored)
        .collect();
    TruncatedSeries::from_coeffs(&RationalSum::zero(2), order, coeffs)
}

/// `S•(z (1 - m t)/(1 - t))`.
pub fn qbinomial_pleth_form(order: usize) -> Result<TruncatedSeries<RationalSum>, IdentityError> {
    let zero = RationalSum::zero(2);
    let mut g = TruncatedSeries::zero(&zero, order);
    if order >= 1 {
        g.set_coeff(1, RationalSum::from_factored(&sum_coefficient(1, &tm(0, 1))));
    }
    Ok(pleth_exp(&g)?)
}

/// `prod_{k=0..D} (1 - z m t^{k+1})/(1 - z t^k)` expanded through `t^D`.
pub fn qbinomial_product_form(order: usize, t_order: usize) -> TruncatedSeries<LaurentPolynomial> {
    let w = [1, 0];
    let max = 2 * t_order as i64;
    let zero = LaurentPolynomial::zero(2);
    let mut acc = TruncatedSeries::one(&zero, order);
    for k in 0..=t_order as i32 {
        let mut num = TruncatedSeries::one(&zero, order);
        if order >= 1 {
            num.set_coeff(1, LaurentPolynomial::monomial(tm(k + 1, 1), q(-1)));
        }
        let geo = (0..=order as i32)
            .map(|j| LaurentPolynomial::monomial(tm(k * j, 0), q(1)).truncate_weighted(&w, max))
            .collect();
        let den_inv = TruncatedSeries::from_coeffs(&zero, order, geo);
        acc = acc
            .mul(&num)
            .mul(&den_inv)
            .map(|c| c.truncate_weighted(&w, max));
    }
    acc
}

fn t_adic(f: &FactoredRational, t_order: usize) -> Result<LaurentPolynomial, IdentityError> {
    Ok(expand_in_cone(
        f,
        &[Some(ConeDirection::AtZero), None],
        t_order as i64,
    )?)
}

fn format_rational_series(s: &TruncatedSeries<RationalSum>) -> Vec<String> {
    let vars = qbinomial_vars();
    s.coeffs()
        .iter()
        .map(|c| format_factored(&vars, &c.to_factored()))
        .collect()
}

/// Sum, plethystic and product forms agree through `z^order`; the product
/// form is compared through `t^{2 order}`.
pub fn qbinomial_check(order: usize) -> Result<IdentityReport, IdentityError> {
    guard(order)?;
    let sum = qbinomial_sum_form(order);
    let pleth = qbinomial_pleth_form(order)?;
    let mut mismatch = sum.first_mismatch(&pleth);
    let t_order = 2 * order.max(1);
    let product = qbinomial_product_form(order, t_order);
    let sum_f = qbinomial_sum_coefficients(order);
    for k in 0..=order {
        if mismatch.is_some_and(|m| m <= k) {
            break;
        }
        if t_adic(&sum_f[k], t_order)? != *product.coeff(k) {
            mismatch = Some(k);
        }
    }
    Ok(IdentityReport {
        name: "qbinomial".into(),
        order,
        lhs: format_rational_series(&sum),
        rhs: format_rational_series(&pleth),
        verdict: mismatch.is_none(),
        first_mismatch: mismatch,
    })
}

/// `(1 - z) f(z) - (1 - z m' t) f(t z)` for the sum form `f`, where the
/// right factor uses `m' = m_image`.
fn difference_residual(
    f: &TruncatedSeries<RationalSum>,
    m_image: &Monomial,
) -> (TruncatedSeries<RationalSum>, TruncatedSeries<RationalSum>) {
    let order = f.order();
    let zero = RationalSum::zero(2);
    let linear = |c: RationalSum| {
        let mut s = TruncatedSeries::one(&zero, order);
        if order >= 1 {
            s.set_coeff(1, c);
        }
        s
    };
    let t = RationalSum::monomial(tm(1, 0), q(1));
    let lhs = linear(RationalSum::constant(2, q(-1))).mul(f);
    let rhs = linear(RationalSum::monomial(m_image.mul(&tm(1, 0)), q(-1))).mul(&f.compose_monomial(&t, 1));
    (lhs, rhs)
}

/// `(1 - z) f(z) = (1 - z m t) f(t z)` for the sum form exactly and for the
/// product form through `t^{2 order}`.
pub fn qbinomial_difference_equation(order: usize) -> Result<IdentityReport, IdentityError> {
    qbinomial_difference_with(order, &tm(0, 1))
}

/// Difference equation with `m` replaced by `m_image` in the right factor.
pub fn qbinomial_difference_with(order: usize, m_image: &Monomial) -> Result<IdentityReport, IdentityError> {
    guard(order)?;
    let sum = qbinomial_sum_form(order);
    let (lhs, rhs) = difference_residual(&sum, m_image);
    let mut mismatch = lhs.first_mismatch(&rhs);

    let t_order = 2 * order.max(1);
    let w = [1, 0];
    let max = 2 * t_order as i64;
    let prod = qbinomial_product_form(order, t_order).map_into(|c| RationalSum::from_poly(c.clone()));
    let (pl, pr) = difference_residual(&prod, m_image);
    for k in 0..=order {
        let a = pl.coeff(k).to_laurent()?.truncate_weighted(&w, max);
        let b = pr.coeff(k).to_laurent()?.truncate_weighted(&w, max);
        if a != b {
            mismatch = Some(mismatch.map_or(k, |m| m.min(k)));
            break;
        }
    }
    Ok(IdentityReport {
        name: "qbinomial-diff".into(),
        order,
        lhs: format_rational_series(&lhs),
        rhs: format_rational_series(&rhs),
        verdict: mismatch.is_none(),
        first_mismatch: mismatch,
    })
}

/// Variables `t1..t5`.
pub fn spinor_vars() -> VariableSet {
    VariableSet::new(&["t1", "t2", "t3", "t4", "t5"])
}

/// `(S+, S-)`: sums of `t^ε`, `ε ∈ {±1/2}^5`, with an even resp. odd number
/// of minus signs.
pub fn spinor_characters() -> (LaurentPolynomial, LaurentPolynomial) {
    let mut plus = LaurentPolynomial::zero(5);
    let mut minus = LaurentPolynomial::zero(5);
    for mask in 0u32..32 {
        let e: Vec<i32> = (0..5).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        let m = Monomial::from_doubled(e);
        if mask.count_ones() % 2 == 0 {
            plus.add_term(m, Q::one());
        } else {
            minus.add_term(m, Q::one());
        }
    }
    (plus, minus)
}

/// `(t1...t5)^{1/2} prod (1 - t_i^{-1})`.
pub fn spinor_difference_product() -> LaurentPolynomial {
    let mut acc = LaurentPolynomial::monomial(Monomial::from_doubled([1; 5]), Q::one());
    for i in 0..5 {
        let mut e = [0; 5];
        e[i] = -1;
        acc = &acc * &LaurentPolynomial::from_terms(5, [(Monomial::one(5), q(1)), (Monomial::from_integer(e), q(-1))]);
    }
    acc
}

pub fn sym2(v: &LaurentPolynomial) -> LaurentPolynomial {
    (&(v * v) + &v.adams(2)).scale(&Q::new(1.into(), 2.into()))
}

pub fn ext2(v: &LaurentPolynomial) -> LaurentPolynomial {
    (&(v * v) - &v.adams(2)).scale(&Q::new(1.into(), 2.into()))
}

/// `(ψ1^3 - 3 ψ1 ψ2 + 2 ψ3)/6`.
pub fn ext3(v: &LaurentPolynomial) -> LaurentPolynomial {
    let cube = &(v * v) * v;
    let mixed = (v * &v.adams(2)).scale(&q(3));
    let third = v.adams(3).scale(&q(2));
    (&(&cube - &mixed) + &third).scale(&Q::new(1.into(), 6.into()))
}

/// Character of `W`. The coordinate lines carry the weights `t_i^{-1}`,
/// so `W = t1^{-1} + ... + t5^{-1}`.
pub fn w_char() -> LaurentPolynomial {
    LaurentPolynomial::from_terms(5, (0..5).map(|i| (Monomial::var(5, i).inv(), q(1))))
}

/// `Λ•W = prod (1 - t_i^{-1})`.
pub fn ext_w() -> LaurentPolynomial {
    (0..5).fold(LaurentPolynomial::one(5), |acc, i| {
        &acc * &LaurentPolynomial::from_terms(
            5,
            [(Monomial::one(5), q(1)), (Monomial::var(5, i).inv(), q(-1))],
        )
    })
}

/// `(S²V - 1) - V + Λ³V - Λ²V + V - 1 - RS + S` with `V = W + W*` and
/// `RS = V S - S'` for the spinor pair `(S, S')`.
pub fn m_field_character(s: &LaurentPolynomial, s_other: &LaurentPolynomial) -> LaurentPolynomial {
    let w = w_char();
    let v = &w + &w.bar();
    let one = LaurentPolynomial::one(5);
    let rs = &(&v * s) - s_other;
    let mut acc = &sym2(&v) - &one;
    acc = &acc - &v;
    acc = &acc + &ext3(&v);
    acc = &acc - &ext2(&v);
    acc = &acc + &v;
    acc = &acc - &one;
    acc = &acc - &rs;
    &acc + s
}

/// `t5 -> (t1 t2 t3 t4)^{-1}` with `t5^{1/2} -> ±(t1 t2 t3 t4)^{-1/2}`.
pub fn sl_constraint(branch_flip: bool) -> MonomialMap {
    let mut map = MonomialMap::from_full_images(
        4,
        (0..4)
            .map(|i| Monomial::var(4, i))
            .chain(std::iter::once(Monomial::from_integer([-1, -1, -1, -1])))
            .collect(),
    );
    map.set_half_image(4, branch_flip, Monomial::from_doubled([-1, -1, -1, -1]));
    map
}

/// `M+ = -W Λ•W` and `M- = W* Λ•W` on the constraint surface.
pub fn mtheory_identity_with(branch_flip: bool) -> IdentityReport {
    let (sp, sm) = spinor_characters();
    let map = sl_constraint(branch_flip);
    let ew = ext_w();
    let w = w_char();
    let lhs = [m_field_character(&sp, &sm), m_field_character(&sm, &sp)];
    let rhs = [(&w * &ew).scale(&q(-1)), &w.bar() * &ew];
    let lhs: Vec<LaurentPolynomial> = lhs.iter().map(|p| map.apply(p)).collect();
    let rhs: Vec<LaurentPolynomial> = rhs.iter().map(|p| map.apply(p)).collect();
    let mismatch = (0..2).find(|&k| lhs[k] != rhs[k]);
    let vars = VariableSet::new(&["t1", "t2", "t3", "t4"]);
    IdentityReport {
        name: "mtheory".into(),
        order: 0,
        lhs: lhs.iter().map(|p| format_polynomial(&vars, p)).collect(),
        rhs: rhs.iter().map(|p| format_polynomial(&vars, p)).collect(),
        verdict: mismatch.is_none(),
        first_mismatch: mismatch,
    }
}

pub fn mtheory_identity_check() -> IdentityReport {
    mtheory_identity_with(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qbinomial_small() {
        let r = qbinomial_check(4).unwrap();
        assert!(r.verdict, "{:?}", r);
        assert!(qbinomial_difference_equation(4).unwrap().verdict);
        assert!(!qbinomial_difference_with(4, &tm(0, 2)).unwrap().verdict);
    }

    #[test]
    fn spinors() {
        let (p, m) = spinor_characters();
        assert_eq!(p.len(), 16);
        assert_eq!(&p - &m, spinor_difference_product());
        assert_eq!(p.bar(), m);
    }

    #[test]
    fn mtheory() {
        let r = mtheory_identity_check();
        assert!(r.verdict, "{:?}", r);
        assert!(!mtheory_identity_with(true).verdict);
    }
}
