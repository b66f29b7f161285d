use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rational_half_pow, AlgebraError, Monomial, Q};

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
///
/// Terms are kept in canonical (lexicographic) monomial order and zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next()
    }

    /// The single term, if this polynomial is a scalar multiple of a monomial.
    pub fn as_term(&self) -> Option<(&Monomial, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &LaurentPolynomial, factor: &Q) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The dual character: every exponent vector negated.
    pub fn bar(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.inv(), c.clone())).collect(),
        }
    }

    /// Adams operation `psi_n`: every exponent multiplied by `n`.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operation needs n >= 1");
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.pow(n as i32), c.clone()))
                .collect(),
        }
    }

    /// Sum of coefficients, i.e. the value at the identity of the torus.
    pub fn rank(&self) -> Q {
        self.terms.values().cloned().sum()
    }

    /// Per-variable (min, max) of the stored exponents; `None` for zero.
    pub fn exponent_box(&self) -> Option<Vec<(i32, i32)>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut bx: Vec<(i32, i32)> = first.doubled().iter().map(|&e| (e, e)).collect();
        for m in it {
            for (b, &e) in bx.iter_mut().zip(m.doubled()) {
                b.0 = b.0.min(e);
                b.1 = b.1.max(e);
            }
        }
        Some(bx)
    }

    /// Keep only terms whose weighted degree (doubled units) is at most `max`.
    pub fn truncate_weighted(&self, weights: &[i32], max: i64) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(weights) <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated to weighted degree `<= max`, skipping work on
    /// pairs that are known to overshoot.
    pub fn mul_truncated(&self, other: &Self, weights: &[i32], max: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        let rhs: Vec<(&Monomial, &Q, i64)> = other
            .terms
            .iter()
            .map(|(m, c)| (m, c, m.weighted_degree(weights)))
            .collect();
        for (ma, ca) in &self.terms {
            let da = ma.weighted_degree(weights);
            for (mb, cb, db) in &rhs {
                if da + db <= max {
                    out.add_term(ma.mul(mb), ca * *cb);
                }
            }
        }
        out
    }

    /// Exact division in the Laurent ring.
    ///
    /// Divides by repeatedly cancelling the lexicographic leading term. The
    /// quotient's exponents must lie in the box
    /// `[min(a) - min(b), max(a) - max(b)]` per variable, which bounds the
    /// loop and detects non-divisibility.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        if divisor.is_zero() {
            return Err(AlgebraError::NonDivisible);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let Some((m, c)) = divisor.as_term() {
            return Ok(self.mul_monomial(&m.inv()).scale(&c.recip()));
        }
        let abox = self.exponent_box().unwrap();
        let bbox = divisor.exponent_box().unwrap();
        let qbox: Vec<(i32, i32)> = abox
            .iter()
            .zip(&bbox)
            .map(|(a, b)| (a.0 - b.0, a.1 - b.1))
            .collect();
        if qbox.iter().any(|(lo, hi)| lo > hi) {
            return Err(AlgebraError::NonDivisible);
        }
        let (lead_m, lead_c) = divisor.leading_term().unwrap();
        let lead_c_inv = lead_c.recip();
        let lead_m = lead_m.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&lead_m);
            if qm
                .doubled()
                .iter()
                .zip(&qbox)
                .any(|(e, (lo, hi))| e < lo || e > hi)
            {
                return Err(AlgebraError::NonDivisible);
            }
            let qc = rc * &lead_c_inv;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Exact value at a rational point (one entry per variable).
    pub fn evaluate(&self, point: &[Q]) -> Result<Q, AlgebraError> {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (base, &e) in point.iter().zip(m.doubled()) {
                if e != 0 {
                    v *= rational_half_pow(base, e)?;
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Add trailing variables that do not occur.
    pub fn extend_vars(&self, extra: usize) -> Self {
        LaurentPolynomial {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extend_vars(extra), c.clone()))
                .collect(),
        }
    }

    /// Every exponent is integral (no half-integer weights).
    pub fn is_integral(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.doubled().iter().all(|e| e % super::EXP_DENOM == 0))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Q) -> Q) -> Self {
        LaurentPolynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }
}

impl std::fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $f(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{q, VariableSet};

    fn vs() -> VariableSet {
        VariableSet::new(&["t1", "t2"])
    }

    #[test]
    fn difference_of_squares() {
        let v = vs();
        let t1 = v.var("t1");
        let one = v.one();
        let lhs = &(&one - &t1) * &(&one + &t1);
        assert_eq!(lhs, &one - &t1.pow(2));
    }

    #[test]
    fn additive_inverse() {
        let v = vs();
        let p = &v.var("t1") + &v.var("t2");
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn exact_divide_multiplies_back() {
        let v = vs();
        let t1 = v.var("t1");
        let one = v.one();
        let a = &one - &t1.pow(2);
        let b = &one - &t1;
        let quot = a.exact_div(&b).unwrap();
        assert_eq!(quot, &one + &t1);
        assert_eq!(&quot * &b, a);
    }

    #[test]
    fn exact_divide_rejects_nondivisible() {
        let v = vs();
        let t1 = v.var("t1");
        let t2 = v.var("t2");
        let one = v.one();
        let a = &one + &t1.pow(2);
        assert_eq!(a.exact_div(&(&one - &t1)), Err(AlgebraError::NonDivisible));
        assert_eq!(
            (&t1 + &t2).exact_div(&(&one - &t2)),
            Err(AlgebraError::NonDivisible)
        );
    }

    #[test]
    fn exact_divide_laurent_shifts() {
        let v = vs();
        let t1 = v.var("t1");
        let inv = LaurentPolynomial::monomial(v.monomial(&[("t1", -2)]), q(1));
        let one = v.one();
        // (t1^-1 - t1) / (1 - t1) = t1^-1 (1 + t1)
        let a = &inv - &t1;
        let quot = a.exact_div(&(&one - &t1)).unwrap();
        assert_eq!(quot, &inv + &one);
    }

    #[test]
    fn bar_and_adams() {
        let v = vs();
        let p = v.parse("t1 + t2^(-1)").unwrap();
        assert_eq!(p.bar(), v.parse("t1^(-1) + t2").unwrap());
        let c = LaurentPolynomial::constant(2, q(5));
        assert_eq!(c.bar(), c);
        let m = v.parse("t1 * t2^(-1/2)").unwrap();
        assert_eq!(m.adams(2), v.parse("t1^2 * t2^(-1)").unwrap());
        assert_eq!(m.adams(1), m);
        let s = v.parse("t1 + t2").unwrap();
        let newton = &s.pow(2) - &v.parse("2*t1*t2").unwrap();
        assert_eq!(s.adams(2), newton);
    }

    #[test]
    fn evaluate_half_integer() {
        let v = vs();
        let p = v.parse("1 - t1").unwrap();
        assert_eq!(p.evaluate(&[q(4), q(1)]).unwrap(), q(-3));
        let r = v.parse("t1^(1/2)").unwrap();
        assert_eq!(r.evaluate(&[q(9), q(1)]).unwrap(), q(3));
        assert_eq!(
            r.evaluate(&[q(2), q(1)]),
            Err(AlgebraError::NonSquareBase)
        );
        let inv = v.parse("t1^(-1)").unwrap();
        assert_eq!(inv.evaluate(&[q(0), q(1)]), Err(AlgebraError::PoleAtPoint));
    }
}
