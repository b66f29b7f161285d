use std::collections::BTreeMap;

use num_traits::Zero;

use super::factored::canonicalize;
use super::zero_test::{self, ZeroTestConfig, ZeroTestRoute};
use super::{AlgebraError, FactoredRational, LaurentPolynomial, Monomial, MonomialMap, Q};

pub(crate) type FactorKey = BTreeMap<LaurentPolynomial, i32>;

/// A rational function stored as `sum_k numerator_k * prod(factor^mult)`.
///
/// Terms with the same factor multiset share one Laurent-polynomial
/// numerator. No gcds are computed; equality is decided by
/// [`RationalSum::is_zero`], which clears denominators against the
/// syntactic lcm of the factor lists.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalSum {
    nvars: usize,
    terms: BTreeMap<FactorKey, LaurentPolynomial>,
}

impl RationalSum {
    pub fn zero(nvars: usize) -> Self {
        RationalSum {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPolynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::from_poly(LaurentPolynomial::constant(nvars, c))
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        let mut out = Self::zero(p.nvars());
        out.add_term(FactorKey::new(), p);
        out
    }

    pub fn from_factored(f: &FactoredRational) -> Self {
        let mut out = Self::zero(f.nvars());
        if !f.is_zero() {
            out.add_term(
                f.factor_map().clone(),
                LaurentPolynomial::monomial(f.monomial().clone(), f.scalar().clone()),
            );
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of distinct factor lists.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FactorKey, &LaurentPolynomial)> {
        self.terms.iter()
    }

    /// Syntactically zero (no stored terms). See [`Self::is_zero`] for the
    /// semantic test.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: FactorKey, num: LaurentPolynomial) {
        if num.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(num);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &num;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, n) in &other.terms {
            out.add_term(k.clone(), n.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalSum {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, n)| (k.clone(), -n)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        RationalSum {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, n)| (k.clone(), n.scale(c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPolynomial) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, n) in &self.terms {
            out.add_term(k.clone(), n * p);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ka, na) in &self.terms {
            for (kb, nb) in &other.terms {
                let mut key = ka.clone();
                for (p, m) in kb {
                    let e = key.entry(p.clone()).or_insert(0);
                    *e += m;
                }
                key.retain(|_, m| *m != 0);
                out.add_term(key, na * nb);
            }
        }
        out
    }

    pub fn mul_factored(&self, f: &FactoredRational) -> Self {
        self.mul(&Self::from_factored(f))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn map_terms(
        &self,
        poly_map: impl Fn(&LaurentPolynomial) -> LaurentPolynomial,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(self.nvars);
        let mut target_nvars = None;
        for (key, num) in &self.terms {
            let mut n = poly_map(num);
            target_nvars.get_or_insert(n.nvars());
            let mut new_key = FactorKey::new();
            let mut vanished = false;
            for (p, m) in key {
                let img = poly_map(p);
                if img.is_zero() {
                    if *m > 0 {
                        vanished = true;
                        break;
                    }
                    return Err(AlgebraError::PoleAtPoint);
                }
                let (c, shift, core) = canonicalize(&img);
                let unit = LaurentPolynomial::monomial(shift.pow(*m), super::pow_q(&c, *m));
                n = &n * &unit;
                if let Some(core) = core {
                    let e = new_key.entry(core).or_insert(0);
                    *e += m;
                }
            }
            if vanished {
                continue;
            }
            new_key.retain(|_, m| *m != 0);
            out.nvars = n.nvars();
            out.add_term(new_key, n);
        }
        if let Some(n) = target_nvars {
            out.nvars = n;
        }
        Ok(out)
    }

    pub fn adams(&self, n: u32) -> Self {
        self.map_terms(|p| p.adams(n))
            .expect("Adams operation cannot create poles")
    }

    pub fn bar(&self) -> Self {
        self.map_terms(|p| p.bar()).expect("duality cannot create poles")
    }

    pub fn substitute(&self, map: &MonomialMap) -> Result<Self, AlgebraError> {
        let mut out = self.map_terms(|p| map.apply(p))?;
        out.nvars = map.target_nvars();
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Q]) -> Result<Q, AlgebraError> {
        let mut total = Q::zero();
        for (key, num) in &self.terms {
            let mut v = num.evaluate(point)?;
            if v.is_zero() {
                continue;
            }
            for (p, m) in key {
                let x = p.evaluate(point)?;
                if *m < 0 && x.is_zero() {
                    return Err(AlgebraError::PoleAtPoint);
                }
                v *= super::pow_q(&x, *m);
            }
            total += v;
        }
        Ok(total)
    }

    /// Syntactic lcm of all denominators: factor -> largest denominator power.
    pub fn common_denominator(&self) -> FactorKey {
        let mut lcm = FactorKey::new();
        for key in self.terms.keys() {
            for (p, m) in key {
                if *m < 0 {
                    let e = lcm.entry(p.clone()).or_insert(0);
                    *e = (*e).max(-m);
                }
            }
        }
        lcm
    }

    /// Upper estimate for the number of terms produced by clearing
    /// denominators: the smaller of the naive product of term counts and
    /// the volume of the exponent box.
    pub fn clearing_estimate(&self) -> f64 {
        let lcm = self.common_denominator();
        let mut worst = 0f64;
        for (key, num) in &self.terms {
            let mut count = num.len() as f64;
            let mut spans: Vec<i64> = span_of(num);
            for (p, exp) in cleared_factor_powers(key, &lcm) {
                count *= (p.len() as f64).powi(exp as i32);
                for (s, ps) in spans.iter_mut().zip(span_of(p)) {
                    *s += ps * exp as i64;
                }
            }
            let volume: f64 = spans.iter().map(|s| (*s as f64) + 1.0).product();
            worst = worst.max(count.min(volume));
        }
        worst * self.terms.len() as f64
    }

    /// Numerator over the syntactic common denominator.
    pub fn cleared(&self) -> (LaurentPolynomial, FactorKey) {
        let lcm = self.common_denominator();
        let parts: Vec<(&FactorKey, &LaurentPolynomial)> = self.terms.iter().collect();
        let expand = |(key, num): &(&FactorKey, &LaurentPolynomial)| {
            let mut acc = (*num).clone();
            let mut powers: Vec<(&LaurentPolynomial, u32)> = cleared_factor_powers(key, &lcm);
            // multiply small factors first so intermediate sizes grow slowly
            powers.sort_by_key(|(p, _)| p.len());
            for (p, e) in powers {
                for _ in 0..e {
                    acc = &acc * p;
                }
            }
            acc
        };
        #[cfg(feature = "parallel")]
        let expanded: Vec<LaurentPolynomial> = {
            use rayon::prelude::*;
            parts.par_iter().map(expand).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let expanded: Vec<LaurentPolynomial> = parts.iter().map(expand).collect();
        let mut total = LaurentPolynomial::zero(self.nvars);
        for e in &expanded {
            total = &total + e;
        }
        (total, lcm)
    }

    /// Semantic zero test with the default configuration.
    pub fn is_zero(&self) -> bool {
        self.is_zero_with(&ZeroTestConfig::default()).0
    }

    /// Semantic zero test; reports which route decided it.
    pub fn is_zero_with(&self, cfg: &ZeroTestConfig) -> (bool, ZeroTestRoute) {
        zero_test::decide(self, cfg)
    }

    /// Exact Laurent polynomial, when the sum is denominator-free as a
    /// function.
    pub fn to_laurent(&self) -> Result<LaurentPolynomial, AlgebraError> {
        let (num, den) = self.merged();
        match den.into_iter().next() {
            None => Ok(num),
            Some(_) => Err(AlgebraError::NonDivisible),
        }
    }

    /// Collapse into one factored fraction `N / D`.
    pub fn to_factored(&self) -> FactoredRational {
        let (num, den) = self.merged();
        if num.is_zero() {
            return FactoredRational::zero(self.nvars);
        }
        let mut f = FactoredRational::from_poly(&num);
        for (p, e) in den {
            f.mul_power(&p, -e);
        }
        f
    }

    /// Numerator and denominator after summing terms pairwise, removing
    /// every denominator factor that divides the running numerator.
    pub fn merged(&self) -> (LaurentPolynomial, FactorKey) {
        let mut level: Vec<(LaurentPolynomial, FactorKey)> = self
            .terms
            .iter()
            .map(|(key, num)| {
                let mut n = num.clone();
                let mut den = FactorKey::new();
                for (p, m) in key {
                    if *m > 0 {
                        for _ in 0..*m {
                            n = &n * p;
                        }
                    } else {
                        den.insert(p.clone(), -m);
                    }
                }
                cancel(n, den)
            })
            .collect();
        if level.is_empty() {
            return (LaurentPolynomial::zero(self.nvars), FactorKey::new());
        }
        while level.len() > 1 {
            let mut it = level.into_iter();
            let mut pairs = Vec::new();
            while let Some(a) = it.next() {
                pairs.push((a, it.next()));
            }
            let merge = |(a, b): (
                (LaurentPolynomial, FactorKey),
                Option<(LaurentPolynomial, FactorKey)>,
            )| match b {
                None => a,
                Some(b) => add_fractions(a, b),
            };
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                level = pairs.into_par_iter().map(merge).collect();
            }
            #[cfg(not(feature = "parallel"))]
            {
                level = pairs.into_iter().map(merge).collect();
            }
        }
        level.pop().unwrap()
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let f = self.to_factored();
        if f.is_zero() {
            return Err(AlgebraError::PoleAtPoint);
        }
        Ok(Self::from_factored(&f.inv()?))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Keep only terms whose key is the empty factor list.
    pub fn polynomial_part(&self) -> Option<&LaurentPolynomial> {
        self.terms.get(&FactorKey::new())
    }

    /// Single-term view, when the sum has exactly one factor list and a
    /// single-monomial numerator.
    pub fn as_factored(&self) -> Option<FactoredRational> {
        if self.terms.is_empty() {
            return Some(FactoredRational::zero(self.nvars));
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (key, num) = self.terms.iter().next().unwrap();
        let (m, c) = num.as_term()?;
        let mut f = FactoredRational::term(c.clone(), m.clone());
        for (p, e) in key {
            f.mul_power(p, *e);
        }
        Some(f)
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        Self::from_poly(LaurentPolynomial::monomial(m, c))
    }
}

fn add_fractions(
    (a, da): (LaurentPolynomial, FactorKey),
    (b, db): (LaurentPolynomial, FactorKey),
) -> (LaurentPolynomial, FactorKey) {
    if a.is_zero() {
        return (b, db);
    }
    if b.is_zero() {
        return (a, da);
    }
    let mut lcm = da.clone();
    for (p, e) in &db {
        let x = lcm.entry(p.clone()).or_insert(0);
        *x = (*x).max(*e);
    }
    let lift = |n: LaurentPolynomial, d: &FactorKey| {
        let mut n = n;
        let mut missing: Vec<(&LaurentPolynomial, i32)> = lcm
            .iter()
            .map(|(p, e)| (p, e - d.get(p).copied().unwrap_or(0)))
            .filter(|(_, m)| *m > 0)
            .collect();
        missing.sort_by_key(|(p, _)| p.len());
        for (p, m) in missing {
            for _ in 0..m {
                n = &n * p;
            }
        }
        n
    };
    let num = &lift(a, &da) + &lift(b, &db);
    cancel(num, lcm)
}

fn cancel(mut num: LaurentPolynomial, mut den: FactorKey) -> (LaurentPolynomial, FactorKey) {
    if num.is_zero() {
        return (num, FactorKey::new());
    }
    for (p, e) in den.iter_mut() {
        while *e > 0 {
            match num.exact_div(p) {
                Ok(q) => {
                    num = q;
                    *e -= 1;
                }
                Err(_) => break,
            }
        }
    }
    den.retain(|_, e| *e > 0);
    (num, den)
}

fn span_of(p: &LaurentPolynomial) -> Vec<i64> {
    p.exponent_box()
        .map(|b| b.iter().map(|(lo, hi)| (hi - lo) as i64).collect())
        .unwrap_or_else(|| vec![0; p.nvars()])
}

/// Factor powers that multiply a term's numerator when clearing against
/// `lcm`: its own positive factors and the missing part of the lcm.
pub(crate) fn cleared_factor_powers<'a>(
    key: &'a FactorKey,
    lcm: &'a FactorKey,
) -> Vec<(&'a LaurentPolynomial, u32)> {
    let mut out = Vec::new();
    for (p, m) in key {
        if *m > 0 {
            out.push((p, *m as u32));
        }
    }
    for (d, e) in lcm {
        let own = key.get(d).map(|m| (-m).max(0)).unwrap_or(0);
        let missing = e - own;
        if missing > 0 {
            out.push((d, missing as u32));
        }
    }
    out
}

impl std::fmt::Debug for RationalSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, num) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{num:?}]")?;
            for (p, m) in key {
                write!(f, " * ({p:?})^{m}")?;
            }
        }
        Ok(())
    }
}

impl From<LaurentPolynomial> for RationalSum {
    fn from(p: LaurentPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<&FactoredRational> for RationalSum {
    fn from(f: &FactoredRational) -> Self {
        Self::from_factored(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{q, VariableSet};

    #[test]
    fn partial_fractions_sum_to_zero() {
        // 1/(1-t) + 1/(1-t^-1) = 1
        let v = VariableSet::new(&["t"]);
        let a = RationalSum::from_factored(&FactoredRational::from_power(
            &v.parse("1 - t").unwrap(),
            -1,
        ));
        let b = RationalSum::from_factored(&FactoredRational::from_power(
            &v.parse("1 - t^(-1)").unwrap(),
            -1,
        ));
        let s = a.add(&b).sub(&RationalSum::one(1));
        assert!(s.is_zero());
        assert_eq!(a.add(&b).to_laurent().unwrap(), v.one());
    }

    #[test]
    fn inverse_round_trip() {
        let v = VariableSet::new(&["t", "u"]);
        let a = RationalSum::from_poly(v.parse("1 + t + u").unwrap()).add(
            &RationalSum::from_factored(&FactoredRational::from_power(
                &v.parse("1 - t*u").unwrap(),
                -1,
            )),
        );
        let prod = a.mul(&a.inverse().unwrap());
        assert!(prod.sub(&RationalSum::one(2)).is_zero());
        assert_eq!(a.evaluate(&[q(4), q(9)]).unwrap() * a.inverse().unwrap().evaluate(&[q(4), q(9)]).unwrap(), q(1));
    }

    #[test]
    fn to_laurent_rejects_true_fraction() {
        let v = VariableSet::new(&["t"]);
        let a = RationalSum::from_factored(&FactoredRational::from_power(
            &v.parse("1 - t").unwrap(),
            -1,
        ));
        assert_eq!(a.to_laurent(), Err(AlgebraError::NonDivisible));
    }
}
