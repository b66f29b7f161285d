//! Plethystic exponential and logarithm, exterior algebra, symmetrized
//! symmetric algebra and the â-genus.
//!
//! Graded characters are [`TruncatedSeries`] in a counting variable `z`;
//! the Adams operation acts on `z` as well as on the coefficients.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{
    AlgebraError, Coefficient, FactoredRational, LaurentPolynomial, Monomial, RationalSum,
    TruncatedSeries, Q,
};

pub const DEFAULT_ORDER: usize = 6;
pub const MAX_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlethError {
    #[error("the trivial weight occurs in the degree-zero part")]
    ZeroWeightPresent,
    #[error("constant term of the series is not 1")]
    ConstantTermNotOne,
    #[error("trivial weight in an â-genus argument")]
    TrivialWeight,
    #[error("determinant has no square root on the half-integer lattice")]
    NonSquareDeterminant,
    #[error("order {order} exceeds the maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn guard(order: usize) -> Result<(), PlethError> {
    if order > MAX_ORDER {
        Err(PlethError::OrderTooLarge {
            order,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Möbius function.
pub fn mobius(n: u32) -> i32 {
    assert!(n >= 1);
    let mut n = n;
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

fn integral_multiplicity(c: &Q) -> Result<i32, AlgebraError> {
    if !c.is_integer() {
        return Err(AlgebraError::NonIntegralMultiplicity(c.to_string()));
    }
    i32::try_from(c.to_integer())
        .map_err(|_| AlgebraError::NonIntegralMultiplicity(c.to_string()))
}

fn one_minus(m: &Monomial) -> LaurentPolynomial {
    let n = m.nvars();
    LaurentPolynomial::from_terms(n, [(Monomial::one(n), Q::one()), (m.clone(), -Q::one())])
}

/// `Λ•(v) = prod (1 - w)^{c_w}` over the weights of a virtual character.
pub fn ext_alg(v: &LaurentPolynomial) -> Result<FactoredRational, AlgebraError> {
    let mut out = FactoredRational::one(v.nvars());
    for (m, c) in v.terms() {
        let k = integral_multiplicity(c)?;
        if m.is_one() {
            if k > 0 {
                return Ok(FactoredRational::zero(v.nvars()));
            }
            return Err(AlgebraError::PoleAtPoint);
        }
        out.mul_power(&one_minus(m), k);
    }
    Ok(out)
}

/// `S•(v) = prod (1 - w)^{-c_w}`; the trivial weight is not allowed.
pub fn sym_alg(v: &LaurentPolynomial) -> Result<FactoredRational, PlethError> {
    if !v.constant_term().is_zero() {
        return Err(PlethError::ZeroWeightPresent);
    }
    Ok(ext_alg(&-v)?)
}

/// `det v = prod w^{c_w}`.
pub fn determinant(v: &LaurentPolynomial) -> Result<Monomial, AlgebraError> {
    let mut out = Monomial::one(v.nvars());
    for (m, c) in v.terms() {
        out = out.mul(&m.pow(integral_multiplicity(c)?));
    }
    Ok(out)
}

/// `Ŝ•(v) = (det v)^{1/2} S•(v)`.
pub fn sym_hat(v: &LaurentPolynomial) -> Result<FactoredRational, PlethError> {
    let root = determinant(v)?
        .sqrt()
        .ok_or(PlethError::NonSquareDeterminant)?;
    Ok(sym_alg(v)?.mul_monomial(&root))
}

/// `w^{1/2} - w^{-1/2}`; `None` when `w^{1/2}` is off the lattice.
pub fn half_difference(m: &Monomial) -> Option<LaurentPolynomial> {
    let root = m.sqrt()?;
    Some(LaurentPolynomial::from_terms(
        m.nvars(),
        [(root.inv(), -Q::one()), (root, Q::one())],
    ))
}

/// `â(v) = prod (w^{1/2} - w^{-1/2})^{-c_w}`.
pub fn aroof(v: &LaurentPolynomial) -> Result<FactoredRational, PlethError> {
    let mut out = FactoredRational::one(v.nvars());
    for (m, c) in v.terms() {
        if m.is_one() {
            return Err(PlethError::TrivialWeight);
        }
        let k = integral_multiplicity(c)?;
        let d = half_difference(m).ok_or(PlethError::NonSquareDeterminant)?;
        out.mul_power(&d, -k);
    }
    Ok(out)
}

/// `sum_{n>=1} psi_n(g) / n` through the order of `g`.
fn adams_sum<C: Coefficient>(g: &TruncatedSeries<C>) -> TruncatedSeries<C> {
    let order = g.order();
    let mut acc = TruncatedSeries::zero(g.coeff(0), order);
    for n in 1..=order.max(1) as u32 {
        let term = g.adams(n).scale(&Q::new(1.into(), n.into()));
        acc = acc.add(&term);
    }
    acc
}

fn check_degree_zero<C: Coefficient>(g: &TruncatedSeries<C>) -> Result<(), PlethError> {
    if g.coeff(0).is_zero_value() {
        Ok(())
    } else {
        Err(PlethError::ZeroWeightPresent)
    }
}

/// `S•(g) = exp(sum psi_n(g)/n)` for a class with no degree-zero part.
pub fn pleth_exp<C: Coefficient>(g: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>, PlethError> {
    guard(g.order())?;
    check_degree_zero(g)?;
    Ok(adams_sum(g).exp())
}

/// `S•(g)` for a rational-function class whose degree-zero part is a
/// Laurent polynomial without the trivial weight; that part contributes
/// the factored `S•(g_0)`.
pub fn pleth_exp_rational(
    g: &TruncatedSeries<RationalSum>,
) -> Result<TruncatedSeries<RationalSum>, PlethError> {
    guard(g.order())?;
    let g0 = g.coeff(0);
    if g0.is_zero() {
        return pleth_exp(g);
    }
    let g0 = g0.to_laurent().map_err(|_| PlethError::ZeroWeightPresent)?;
    let base = RationalSum::from_factored(&sym_alg(&g0)?);
    let mut rest = g.clone();
    rest.set_coeff(0, base.zero_like());
    Ok(pleth_exp(&rest)?.mul_coeff(&base))
}

/// Inverse of [`pleth_exp`]: `sum_d mu(d)/d psi_d(log f)`.
pub fn pleth_log<C: Coefficient>(f: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>, PlethError> {
    guard(f.order())?;
    let c0 = f.coeff(0);
    if !c0.minus(&c0.one_like()).is_zero_value() {
        return Err(PlethError::ConstantTermNotOne);
    }
    let mut f = f.clone();
    f.set_coeff(0, c0.one_like());
    let l = f.log();
    let order = l.order();
    let mut acc = TruncatedSeries::zero(l.coeff(0), order);
    for d in 1..=order.max(1) as u32 {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        acc = acc.add(&l.adams(d).scale(&Q::new(mu.into(), d.into())));
    }
    Ok(acc)
}

/// Binomial coefficient for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
