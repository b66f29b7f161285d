//! Exact arithmetic on the half-integer exponent lattice.
//!
//! Everything downstream is built from four value types:
//!
//! - [`LaurentPolynomial`]: sparse map from [`Monomial`] to an exact rational.
//!   Exponents live on a doubled lattice so `v^(1/2)` is an ordinary monomial.
//! - [`FactoredRational`]: scalar times monomial times a product of canonical
//!   polynomial factors with signed multiplicities. Multivariate gcds are never
//!   computed; identical factors cancel syntactically.
//! - [`RationalSum`]: a finite sum of factored terms, the working
//!   representation of rational functions (localization sums, R-matrix
//!   entries). Zero tests clear denominators against the syntactic lcm.
//! - [`TruncatedSeries`]: power series in a counting variable, hard-truncated
//!   at a fixed order, over any [`Coefficient`] ring.

mod cone;
mod factored;
mod monomial;
mod poly;
mod rsum;
mod series;
mod subst;
pub mod text;

pub use cone::{expand_in_cone, ConeDirection};
pub use factored::FactoredRational;
pub use monomial::{Monomial, EXP_DENOM};
pub use poly::LaurentPolynomial;
pub use rsum::RationalSum;
pub use series::{Coefficient, TruncatedSeries};
pub use subst::MonomialMap;
pub use zero_test::{prime_square_point, ZeroTestConfig, ZeroTestRoute, DEFAULT_CLEARING_THRESHOLD};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalars.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `base^(k/2)` for a rational base; `None` when the square root is irrational.
pub fn rational_half_pow(base: &Q, doubled_exp: i32) -> Result<Q, AlgebraError> {
    if doubled_exp == 0 {
        return Ok(Q::one());
    }
    if base.is_zero() {
        return if doubled_exp > 0 {
            Ok(Q::zero())
        } else {
            Err(AlgebraError::PoleAtPoint)
        };
    }
    let root = if doubled_exp % 2 == 0 {
        base.clone()
    } else {
        rational_sqrt(base).ok_or(AlgebraError::NonSquareBase)?
    };
    let k = if doubled_exp % 2 == 0 {
        doubled_exp / 2
    } else {
        doubled_exp
    };
    Ok(pow_q(&root, k))
}

pub fn pow_q(base: &Q, k: i32) -> Q {
    let p = num_traits::pow(base.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("no Laurent quotient exists")]
    NonDivisible,
    #[error("denominator factor has no unique extreme term in the chosen cone")]
    NotExpandable,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("half-integer exponent on a base that is not a rational square")]
    NonSquareBase,
    #[error("constant term is not invertible")]
    NonInvertibleConstantTerm,
    #[error("non-integral multiplicity {0} cannot be written as a factored product")]
    NonIntegralMultiplicity(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Ordered variable names for one exponent lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable name `{n}` in VariableSet"
            );
        }
        VariableSet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// The polynomial `name^1`.
    pub fn var(&self, name: &str) -> LaurentPolynomial {
        let i = self
            .index(name)
            .unwrap_or_else(|| panic!("unknown variable `{name}`"));
        LaurentPolynomial::monomial(Monomial::var(self.len(), i), Q::one())
    }

    /// Monomial from `(name, doubled exponent)` pairs.
    pub fn monomial(&self, parts: &[(&str, i32)]) -> Monomial {
        let mut m = Monomial::one(self.len());
        for (name, e) in parts {
            let i = self
                .index(name)
                .unwrap_or_else(|| panic!("unknown variable `{name}`"));
            m.doubled_mut()[i] += e;
        }
        m
    }

    pub fn one(&self) -> LaurentPolynomial {
        LaurentPolynomial::one(self.len())
    }

    pub fn zero(&self) -> LaurentPolynomial {
        LaurentPolynomial::zero(self.len())
    }

    pub fn parse(&self, s: &str) -> Result<LaurentPolynomial, AlgebraError> {
        text::parse_polynomial(self, s)
    }
}
