use super::{AlgebraError, LaurentPolynomial, RationalSum, Q};

/// Coefficient rings for [`TruncatedSeries`].
pub trait Coefficient: Clone + std::fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Semantic zero test.
    fn is_zero_value(&self) -> bool;
    /// Stored as zero; may be false for values that are zero as functions.
    fn is_syntactic_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scaled(&self, c: &Q) -> Self;
    fn adams(&self, n: u32) -> Self;
    fn try_inverse(&self) -> Result<Self, AlgebraError>;
}

impl Coefficient for LaurentPolynomial {
    fn zero_like(&self) -> Self {
        LaurentPolynomial::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        LaurentPolynomial::one(self.nvars())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn is_syntactic_zero(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn adams(&self, n: u32) -> Self {
        LaurentPolynomial::adams(self, n)
    }
    /// Only single terms are units of the Laurent ring.
    fn try_inverse(&self) -> Result<Self, AlgebraError> {
        match self.as_term() {
            Some((m, c)) => Ok(LaurentPolynomial::monomial(m.inv(), c.recip())),
            None => Err(AlgebraError::NonInvertibleConstantTerm),
        }
    }
}

impl Coefficient for RationalSum {
    fn zero_like(&self) -> Self {
        RationalSum::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RationalSum::one(self.nvars())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn is_syntactic_zero(&self) -> bool {
        self.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn adams(&self, n: u32) -> Self {
        RationalSum::adams(self, n)
    }
    fn try_inverse(&self) -> Result<Self, AlgebraError> {
        self.inverse()
            .map_err(|_| AlgebraError::NonInvertibleConstantTerm)
    }
}

/// Power series `sum_{k<=N} c_k z^k` in a counting variable `z`, hard
/// truncated at order `N`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Zero series; `template` fixes the coefficient ring.
    pub fn zero(template: &C, order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![template.zero_like(); order + 1],
        }
    }

    pub fn one(template: &C, order: usize) -> Self {
        let mut s = Self::zero(template, order);
        s.coeffs[0] = template.one_like();
        s
    }

    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn from_coeffs(template: &C, order: usize, coeffs: Vec<C>) -> Self {
        let mut s = Self::zero(template, order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    /// `c * z^k`.
    pub fn term(c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(&c, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: C) {
        self.coeffs[k] = c;
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.minus(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|x| x.scaled(c))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Coefficient, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<TruncatedSeries<D>, E> {
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.order();
        let mut out = Self::zero(&self.coeffs[0], n);
        for i in 0..=n {
            if self.coeffs[i].is_syntactic_zero() {
                continue;
            }
            for j in 0..=n - i {
                if other.coeffs[j].is_syntactic_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].plus(&self.coeffs[i].times(&other.coeffs[j]));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.coeffs[0], self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn reciprocal(&self) -> Result<Self, AlgebraError> {
        let n = self.order();
        let inv0 = self.coeffs[0].try_inverse()?;
        let mut out = Self::zero(&self.coeffs[0], n);
        out.coeffs[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=k {
                if self.coeffs[j].is_syntactic_zero() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[j].times(&out.coeffs[k - j]));
            }
            out.coeffs[k] = acc.times(&inv0).negate();
        }
        Ok(out)
    }

    /// `exp` of a series with zero constant term, via `n b_n = sum k a_k b_{n-k}`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut out = Self::one(&self.coeffs[0], n);
        for m in 1..=n {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=m {
                if self.coeffs[k].is_syntactic_zero() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[k].times(&out.coeffs[m - k]).scaled(&q_int(k)));
            }
            out.coeffs[m] = acc.scaled(&q_int(m).recip());
        }
        out
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(&self.coeffs[0], n);
        for m in 1..=n {
            let mut acc = self.coeffs[m].scaled(&q_int(m));
            for k in 1..m {
                if out.coeffs[k].is_syntactic_zero() || self.coeffs[m - k].is_syntactic_zero() {
                    continue;
                }
                acc = acc.minus(&out.coeffs[k].times(&self.coeffs[m - k]).scaled(&q_int(k)));
            }
            out.coeffs[m] = acc.scaled(&q_int(m).recip());
        }
        out
    }

    /// Adams operation acting on `z` and on the coefficients:
    /// `sum c_k z^k -> sum psi_n(c_k) z^{nk}`.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1);
        let n = n as usize;
        let mut out = Self::zero(&self.coeffs[0], self.order());
        for k in 0..=self.order() / n {
            out.coeffs[k * n] = self.coeffs[k].adams(n as u32);
        }
        out
    }

    /// `f(z) -> f(c z^k)`.
    pub fn compose_monomial(&self, c: &C, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero(&self.coeffs[0], self.order());
        let mut cp = c.one_like();
        for j in 0..=self.order() / k {
            out.coeffs[j * k] = self.coeffs[j].times(&cp);
            cp = cp.times(c);
        }
        out
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// First index where the two series differ as functions.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.check(other);
        (0..=self.order()).find(|&k| !self.coeffs[k].minus(&other.coeffs[k]).is_zero_value())
    }
}

fn q_int(k: usize) -> Q {
    Q::from_integer((k as i64).into())
}

impl<C: Coefficient + PartialEq> PartialEq for TruncatedSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl TruncatedSeries<LaurentPolynomial> {
    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn to_rational(&self) -> TruncatedSeries<RationalSum> {
        self.map_into(|c| RationalSum::from_poly(c.clone()))
    }
}

impl<C> TruncatedSeries<C> {
    pub fn map_into<D>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}
