use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{AlgebraError, LaurentPolynomial, Monomial, MonomialMap, Q};

/// Split a nonzero polynomial as `scalar * shift * core`.
///
/// The core has its lexicographically smallest monomial equal to `1` and
/// its leading coefficient equal to `1`, so `p`, `-p`, `c * m * p` all share
/// one core. Single-term polynomials have no core.
pub(crate) fn canonicalize(p: &LaurentPolynomial) -> (Q, Monomial, Option<LaurentPolynomial>) {
    assert!(!p.is_zero(), "cannot canonicalize the zero polynomial");
    if let Some((m, c)) = p.as_term() {
        return (c.clone(), m.clone(), None);
    }
    let shift = p.trailing_term().unwrap().0.clone();
    let lead = p.leading_term().unwrap().1.clone();
    let core = p.mul_monomial(&shift.inv()).scale(&lead.recip());
    (lead, shift, Some(core))
}

/// `scalar * monomial * prod(factor^mult)` with canonical polynomial factors.
///
/// Negative multiplicities are denominators. Identical factors are merged on
/// insertion, so cancellation is syntactic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredRational {
    nvars: usize,
    scalar: Q,
    monomial: Monomial,
    factors: BTreeMap<LaurentPolynomial, i32>,
}

impl FactoredRational {
    pub fn one(nvars: usize) -> Self {
        Self::term(Q::one(), Monomial::one(nvars))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::term(Q::zero(), Monomial::one(nvars))
    }

    pub fn term(scalar: Q, monomial: Monomial) -> Self {
        FactoredRational {
            nvars: monomial.nvars(),
            scalar,
            monomial,
            factors: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: &LaurentPolynomial) -> Self {
        Self::from_power(p, 1)
    }

    /// `p^mult`; panics if `p` is zero and `mult < 0`.
    pub fn from_power(p: &LaurentPolynomial, mult: i32) -> Self {
        let mut out = Self::one(p.nvars());
        out.mul_power(p, mult);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn scalar(&self) -> &Q {
        &self.scalar
    }

    pub fn monomial(&self) -> &Monomial {
        &self.monomial
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LaurentPolynomial, i32)> {
        self.factors.iter().map(|(p, m)| (p, *m))
    }

    pub(crate) fn factor_map(&self) -> &BTreeMap<LaurentPolynomial, i32> {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// True when no polynomial factors remain (a scaled monomial).
    pub fn is_monomial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of denominator factors, counted with multiplicity.
    pub fn denominator_degree(&self) -> i32 {
        self.factors.values().filter(|m| **m < 0).map(|m| -m).sum()
    }

    /// Multiply in `p^mult`.
    pub fn mul_power(&mut self, p: &LaurentPolynomial, mult: i32) {
        assert_eq!(p.nvars(), self.nvars, "variable count mismatch");
        if mult == 0 || self.is_zero() {
            return;
        }
        if p.is_zero() {
            assert!(mult > 0, "zero factor in a denominator");
            *self = Self::zero(self.nvars);
            return;
        }
        let (c, shift, core) = canonicalize(p);
        self.scalar *= super::pow_q(&c, mult);
        self.monomial = self.monomial.mul(&shift.pow(mult));
        if let Some(core) = core {
            let e = self.factors.entry(core.clone()).or_insert(0);
            *e += mult;
            if *e == 0 {
                self.factors.remove(&core);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        out.monomial = out.monomial.mul(&other.monomial);
        for (p, m) in &other.factors {
            let e = out.factors.entry(p.clone()).or_insert(0);
            *e += m;
        }
        out.factors.retain(|_, m| *m != 0);
        out
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::PoleAtPoint);
        }
        Ok(FactoredRational {
            nvars: self.nvars,
            scalar: self.scalar.recip(),
            monomial: self.monomial.inv(),
            factors: self.factors.iter().map(|(p, m)| (p.clone(), -m)).collect(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Self {
        if k == 0 {
            return Self::one(self.nvars);
        }
        if self.is_zero() {
            assert!(k > 0, "zero raised to a negative power");
            return self.clone();
        }
        FactoredRational {
            nvars: self.nvars,
            scalar: super::pow_q(&self.scalar, k),
            monomial: self.monomial.pow(k),
            factors: self.factors.iter().map(|(p, m)| (p.clone(), m * k)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.scalar = -out.scalar;
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        out.scalar *= c;
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = self.clone();
        out.monomial = out.monomial.mul(m);
        out
    }

    /// Apply a ring endomorphism factor by factor and re-canonicalize.
    fn map_factors(
        &self,
        f: impl Fn(&LaurentPolynomial) -> LaurentPolynomial,
        g: impl Fn(&Monomial) -> LaurentPolynomial,
        scalar_sign: impl Fn(&Monomial) -> Q,
    ) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mono_image = g(&self.monomial);
        let (c, m) = mono_image
            .as_term()
            .map(|(m, c)| (c.clone(), m.clone()))
            .expect("monomial image must be a single term");
        let mut out = Self::term(&self.scalar * c * scalar_sign(&self.monomial), m);
        for (p, mult) in &self.factors {
            let img = f(p);
            if img.is_zero() {
                if *mult > 0 {
                    return Ok(Self::zero(out.nvars));
                }
                return Err(AlgebraError::PoleAtPoint);
            }
            out.mul_power(&img, *mult);
        }
        Ok(out)
    }

    /// Adams operation on every factor.
    pub fn adams(&self, n: u32) -> Self {
        self.map_factors(
            |p| p.adams(n),
            |m| LaurentPolynomial::monomial(m.pow(n as i32), Q::one()),
            |_| Q::one(),
        )
        .expect("Adams operation cannot create poles")
    }

    /// Dual: `t -> t^-1` on every factor.
    pub fn bar(&self) -> Self {
        self.map_factors(
            |p| p.bar(),
            |m| LaurentPolynomial::monomial(m.inv(), Q::one()),
            |_| Q::one(),
        )
        .expect("duality cannot create poles")
    }

    /// Image under a monomial substitution; a denominator mapping to zero is
    /// a `PoleAtPoint`.
    pub fn substitute(&self, map: &MonomialMap) -> Result<Self, AlgebraError> {
        self.map_factors(|p| map.apply(p), |m| map.apply_monomial(m), |_| Q::one())
    }

    pub fn evaluate(&self, point: &[Q]) -> Result<Q, AlgebraError> {
        if self.is_zero() {
            return Ok(Q::zero());
        }
        let mut v = self.scalar.clone();
        v *= LaurentPolynomial::monomial(self.monomial.clone(), Q::one()).evaluate(point)?;
        let mut den = Q::one();
        for (p, m) in &self.factors {
            let x = p.evaluate(point)?;
            if *m > 0 {
                v *= super::pow_q(&x, *m);
            } else {
                if x.is_zero() {
                    return Err(AlgebraError::PoleAtPoint);
                }
                den *= super::pow_q(&x, -*m);
            }
        }
        Ok(v / den)
    }

    /// Expanded numerator, including scalar and monomial prefactor.
    pub fn numerator(&self) -> LaurentPolynomial {
        let mut acc = LaurentPolynomial::monomial(self.monomial.clone(), self.scalar.clone());
        for (p, m) in &self.factors {
            if *m > 0 {
                acc = &acc * &p.pow(*m as u32);
            }
        }
        acc
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> LaurentPolynomial {
        let mut acc = LaurentPolynomial::one(self.nvars);
        for (p, m) in &self.factors {
            if *m < 0 {
                acc = &acc * &p.pow((-*m) as u32);
            }
        }
        acc
    }

    /// Denominator-free value, if every multiplicity is nonnegative.
    pub fn to_polynomial(&self) -> Option<LaurentPolynomial> {
        if self.factors.values().any(|m| *m < 0) {
            None
        } else {
            Some(self.numerator())
        }
    }

}

impl std::fmt::Debug for FactoredRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*{:?}", self.scalar, self.monomial)?;
        for (p, m) in &self.factors {
            write!(f, " * ({p:?})^{m}")?;
        }
        Ok(())
    }
}
