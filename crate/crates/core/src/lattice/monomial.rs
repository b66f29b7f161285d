use std::fmt;

use smallvec::SmallVec;

/// Scale of the exponent lattice: a stored exponent `e` means `v^(e/2)`.
pub const EXP_DENOM: i32 = 2;

/// A monomial on the doubled exponent lattice.
///
/// `Ord` is lexicographic on the stored exponent vector, which is the
/// canonical monomial order used for printing and serialization.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    /// `v_i^1`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = EXP_DENOM;
        m
    }

    /// Build from stored (doubled) exponents.
    pub fn from_doubled(exps: impl IntoIterator<Item = i32>) -> Self {
        Monomial(exps.into_iter().collect())
    }

    /// Build from integer exponents.
    pub fn from_integer(exps: impl IntoIterator<Item = i32>) -> Self {
        Monomial(exps.into_iter().map(|e| e * EXP_DENOM).collect())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Stored (doubled) exponents.
    pub fn doubled(&self) -> &[i32] {
        &self.0
    }

    pub fn doubled_mut(&mut self) -> &mut [i32] {
        &mut self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Square root on the doubled lattice, if every stored exponent is even.
    pub fn sqrt(&self) -> Option<Monomial> {
        if self.0.iter().all(|e| e % 2 == 0) {
            Some(Monomial(self.0.iter().map(|e| e / 2).collect()))
        } else {
            None
        }
    }

    /// Pairing with an integer weight vector, in doubled units.
    pub fn weighted_degree(&self, weights: &[i32]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    /// Append `extra` zero exponents (new trailing variables).
    pub fn extend_vars(&self, extra: usize) -> Monomial {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(0, extra));
        Monomial(v)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", self.0.as_slice())
    }
}
