//! Γ± vertex operators on the partition basis and the transfer-matrix
//! evaluation of diagonal-weighted plane-partition sums.
//!
//! Lemma used for truncation: a plane partition with at most `N` boxes only
//! meets diagonals `|i2 - i1| <= N - 1`, and every amplitude in the transfer
//! product has grading at least the size of its partition, so operators
//! outside the window `[-(N-1), N-1]` act as the identity on the vacuum
//! amplitude through grading `N`.

use std::collections::BTreeMap;

use num_traits::One;
use thiserror::Error;

use crate::lattice::{LaurentPolynomial, Monomial, TruncatedSeries, Q};
use crate::partition::{enumerate_plane_partitions, Partition, PartitionError};
use crate::plethystic::{pleth_exp, PlethError};

pub const MAX_REFINED_CUTOFF: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("window {window} is smaller than cutoff - 1 = {needed}")]
    WindowTooSmall { window: usize, needed: usize },
    #[error("cutoff {cutoff} exceeds the limit {max}")]
    CutoffTooLarge { cutoff: usize, max: usize },
    #[error("no assignment for diagonal {0}")]
    MissingDiagonal(i64),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Pleth(#[from] PlethError),
}

/// Truncation data shared by all vectors of one computation.
#[derive(Debug, Clone)]
pub struct FockSpace {
    pub nvars: usize,
    /// Largest partition size kept.
    pub size_cutoff: usize,
    /// Optional `(weights, max)`: amplitude terms whose weighted degree
    /// (doubled units) exceeds `max` are dropped.
    pub grading: Option<(Vec<i32>, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockVector {
    amplitudes: BTreeMap<Partition, LaurentPolynomial>,
    /// Number of amplitude terms discarded by truncation.
    pub dropped: usize,
}

impl FockVector {
    pub fn vacuum(nvars: usize) -> Self {
        Self::basis(Partition::empty(), LaurentPolynomial::one(nvars))
    }

    pub fn basis(lambda: Partition, amp: LaurentPolynomial) -> Self {
        let mut amplitudes = BTreeMap::new();
        if !amp.is_zero() {
            amplitudes.insert(lambda, amp);
        }
        FockVector {
            amplitudes,
            dropped: 0,
        }
    }

    pub fn from_amplitudes(amplitudes: BTreeMap<Partition, LaurentPolynomial>) -> Self {
        FockVector {
            amplitudes: amplitudes.into_iter().filter(|(_, a)| !a.is_zero()).collect(),
            dropped: 0,
        }
    }

    pub fn amplitudes(&self) -> &BTreeMap<Partition, LaurentPolynomial> {
        &self.amplitudes
    }

    pub fn amplitude(&self, lambda: &Partition, nvars: usize) -> LaurentPolynomial {
        self.amplitudes
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| LaurentPolynomial::zero(nvars))
    }

    /// `⟨self, other⟩` in the orthonormal partition basis.
    pub fn pairing(&self, other: &Self, nvars: usize) -> LaurentPolynomial {
        let mut acc = LaurentPolynomial::zero(nvars);
        for (l, a) in &self.amplitudes {
            if let Some(b) = other.amplitudes.get(l) {
                acc = &acc + &(a * b);
            }
        }
        acc
    }
}

/// All `μ ≻ λ` with `|μ| <= cutoff`.
pub fn interlacing_above(lambda: &Partition, cutoff: usize) -> Vec<Partition> {
    let n = lambda.len() + 1;
    let mut out = Vec::new();
    let mut parts = vec![0usize; n];
    fn rec(i: usize, lambda: &Partition, budget: usize, parts: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            out.push(Partition::from_parts(parts));
            return;
        }
        let lo = lambda.part(i);
        let hi = if i == 0 { lo + budget } else { lambda.part(i - 1) };
        for p in lo..=hi {
            let extra = p - lo;
            if extra > budget {
                break;
            }
            parts[i] = p;
            rec(i + 1, lambda, budget - extra, parts, out);
        }
    }
    let size = lambda.size();
    if size <= cutoff {
        rec(0, lambda, cutoff - size, &mut parts, &mut out);
    }
    out
}

/// All `μ ≺ λ`.
pub fn interlacing_below(lambda: &Partition) -> Vec<Partition> {
    let n = lambda.len();
    let mut out = Vec::new();
    let mut parts = vec![0usize; n];
    fn rec(i: usize, lambda: &Partition, parts: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            out.push(Partition::from_parts(parts));
            return;
        }
        for p in lambda.part(i + 1)..=lambda.part(i) {
            parts[i] = p;
            rec(i + 1, lambda, parts, out);
        }
    }
    rec(0, lambda, &mut parts, &mut out);
    out
}

fn apply(
    space: &FockSpace,
    v: &FockVector,
    step: impl Fn(&Partition, &LaurentPolynomial) -> Vec<(Partition, LaurentPolynomial)> + Sync,
) -> FockVector {
    let items: Vec<(&Partition, &LaurentPolynomial)> = v.amplitudes.iter().collect();
    #[cfg(feature = "parallel")]
    let parts: Vec<Vec<(Partition, LaurentPolynomial)>> = {
        use rayon::prelude::*;
        items.par_iter().map(|(l, a)| step(l, a)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Vec<(Partition, LaurentPolynomial)>> =
        items.iter().map(|(l, a)| step(l, a)).collect();
    let mut out: BTreeMap<Partition, LaurentPolynomial> = BTreeMap::new();
    let mut dropped = v.dropped;
    for (mu, amp) in parts.into_iter().flatten() {
        if mu.size() > space.size_cutoff {
            dropped += amp.len();
            continue;
        }
        let amp = match &space.grading {
            Some((w, max)) => {
                let kept = amp.truncate_weighted(w, *max);
                dropped += amp.len() - kept.len();
                kept
            }
            None => amp,
        };
        if amp.is_zero() {
            continue;
        }
        let e = out
            .entry(mu)
            .or_insert_with(|| LaurentPolynomial::zero(space.nvars));
        *e = &*e + &amp;
    }
    out.retain(|_, a| !a.is_zero());
    FockVector {
        amplitudes: out,
        dropped,
    }
}

/// `Γ−(z) s_λ = sum_{μ ≻ λ} z^{|μ|-|λ|} s_μ`.
pub fn gamma_minus(space: &FockSpace, v: &FockVector, z: &Monomial) -> FockVector {
    apply(space, v, |lambda, a| {
        interlacing_above(lambda, space.size_cutoff)
            .into_iter()
            .map(|mu| {
                let k = (mu.size() - lambda.size()) as i32;
                let amp = a.mul_monomial(&z.pow(k));
                (mu, amp)
            })
            .collect()
    })
}

/// `Γ+(z) s_λ = sum_{μ ≺ λ} z^{|λ|-|μ|} s_μ`, the transpose of `Γ−`.
pub fn gamma_plus(space: &FockSpace, v: &FockVector, z: &Monomial) -> FockVector {
    apply(space, v, |lambda, a| {
        interlacing_below(lambda)
            .into_iter()
            .map(|mu| {
                let k = (lambda.size() - mu.size()) as i32;
                let amp = a.mul_monomial(&z.pow(k));
                (mu, amp)
            })
            .collect()
    })
}

/// `q^{|·|} s_λ = q^{|λ|} s_λ`.
pub fn energy_conjugate(space: &FockSpace, v: &FockVector, q: &LaurentPolynomial) -> FockVector {
    apply(space, v, |lambda, a| {
        vec![(lambda.clone(), a * &q.pow(lambda.size() as u32))]
    })
}

/// Diagonal weights `q_d` for `d` in `[-window, window]`.
#[derive(Debug, Clone)]
pub struct DiagonalSpec {
    pub nvars: usize,
    pub window: usize,
    pub assignment: BTreeMap<i64, LaurentPolynomial>,
    /// Grading in which every `q_d` has degree 1 (doubled units).
    pub grading: Vec<i32>,
}

impl DiagonalSpec {
    pub fn q(&self, d: i64) -> Result<&LaurentPolynomial, FockError> {
        self.assignment.get(&d).ok_or(FockError::MissingDiagonal(d))
    }

    fn check(&self, cutoff: usize) -> Result<(), FockError> {
        let needed = cutoff.saturating_sub(1);
        if self.window < needed {
            return Err(FockError::WindowTooSmall {
                window: self.window,
                needed,
            });
        }
        Ok(())
    }

    fn space(&self, cutoff: usize) -> FockSpace {
        FockSpace {
            nvars: self.nvars,
            size_cutoff: cutoff,
            grading: Some((self.grading.clone(), 2 * cutoff as i64)),
        }
    }

    /// All `q_d` equal to the single variable `q`.
    pub fn macmahon(window: usize) -> Self {
        let q = LaurentPolynomial::monomial(Monomial::var(1, 0), Q::one());
        DiagonalSpec {
            nvars: 1,
            window,
            assignment: (-(window as i64)..=window as i64).map(|d| (d, q.clone())).collect(),
            grading: vec![1],
        }
    }

    /// Independent variables `q_{-M}, ..., q_M` (variable `d + M`).
    pub fn generic(window: usize) -> Self {
        let n = 2 * window + 1;
        DiagonalSpec {
            nvars: n,
            window,
            assignment: (0..n)
                .map(|i| {
                    (
                        i as i64 - window as i64,
                        LaurentPolynomial::monomial(Monomial::var(n, i), Q::one()),
                    )
                })
                .collect(),
            grading: vec![1; n],
        }
    }

    /// `q_d = z κ^{1/2}` for `d >= 0` and `z κ^{-1/2}` for `d < 0`, in the
    /// variables `(z, kappa)` with `kappa` counting powers of `κ`.
    pub fn refined(window: usize) -> Self {
        let w = window as i64;
        let assignment = (-w..=w)
            .map(|d| {
                let k = if d >= 0 { 1 } else { -1 };
                (
                    d,
                    LaurentPolynomial::monomial(Monomial::from_doubled([2, k]), Q::one()),
                )
            })
            .collect();
        DiagonalSpec {
            nvars: 2,
            window,
            assignment,
            grading: vec![1, 0],
        }
    }
}

/// `⟨ ... Γ+ q_1^{|·|} Γ+ q_0^{|·|} Γ− q_{-1}^{|·|} Γ− ... ∅, ∅ ⟩` over the
/// window `[-(N-1), N-1]`, truncated at grading `N`.
pub fn or_formula_lhs(spec: &DiagonalSpec, cutoff: usize) -> Result<LaurentPolynomial, FockError> {
    spec.check(cutoff)?;
    let space = spec.space(cutoff);
    let m = cutoff.saturating_sub(1) as i64;
    let one = Monomial::one(spec.nvars);
    let mut v = FockVector::vacuum(spec.nvars);
    for d in -m..=0 {
        v = gamma_minus(&space, &v, &one);
        v = energy_conjugate(&space, &v, spec.q(d)?);
    }
    for d in 1..=m {
        v = gamma_plus(&space, &v, &one);
        v = energy_conjugate(&space, &v, spec.q(d)?);
    }
    v = gamma_plus(&space, &v, &one);
    Ok(v.amplitude(&Partition::empty(), spec.nvars)
        .truncate_weighted(&spec.grading, 2 * cutoff as i64))
}

/// Same matrix element, evaluated by acting on the dual vacuum from the left.
pub fn or_formula_lhs_dual(spec: &DiagonalSpec, cutoff: usize) -> Result<LaurentPolynomial, FockError> {
    spec.check(cutoff)?;
    let space = spec.space(cutoff);
    let m = cutoff.saturating_sub(1) as i64;
    let one = Monomial::one(spec.nvars);
    let mut u = FockVector::vacuum(spec.nvars);
    u = gamma_minus(&space, &u, &one);
    for d in (1..=m).rev() {
        u = energy_conjugate(&space, &u, spec.q(d)?);
        u = gamma_minus(&space, &u, &one);
    }
    for d in (-m..=0).rev() {
        u = energy_conjugate(&space, &u, spec.q(d)?);
        u = gamma_plus(&space, &u, &one);
    }
    Ok(u.amplitude(&Partition::empty(), spec.nvars)
        .truncate_weighted(&spec.grading, 2 * cutoff as i64))
}

/// `S• sum_{a <= 0 <= b} q_a q_{a+1} ... q_b`, truncated at grading `N`.
pub fn or_formula_rhs(spec: &DiagonalSpec, cutoff: usize) -> Result<LaurentPolynomial, FockError> {
    spec.check(cutoff)?;
    let m = cutoff.saturating_sub(1) as i64;
    let zero = LaurentPolynomial::zero(spec.nvars);
    let mut g = vec![zero.clone(); cutoff + 1];
    for a in -m..=0 {
        for b in 0..=m {
            let len = (b - a + 1) as usize;
            if len > cutoff {
                continue;
            }
            let mut prod = LaurentPolynomial::one(spec.nvars);
            for d in a..=b {
                prod = &prod * spec.q(d)?;
            }
            g[len] = &g[len] + &prod;
        }
    }
    let series = pleth_exp(&TruncatedSeries::from_coeffs(&zero, cutoff, g))?;
    let mut out = zero;
    for c in series.coeffs() {
        out = &out + c;
    }
    Ok(out.truncate_weighted(&spec.grading, 2 * cutoff as i64))
}

/// `sum_{|π| <= N} prod_{boxes} q_{i2 - i1}` by enumeration.
pub fn plane_partition_sum(spec: &DiagonalSpec, cutoff: usize) -> Result<LaurentPolynomial, FockError> {
    let mut out = LaurentPolynomial::zero(spec.nvars);
    for n in 0..=cutoff {
        for pi in enumerate_plane_partitions(n)? {
            let mut w = LaurentPolynomial::one(spec.nvars);
            for (i, j, _) in pi.boxes() {
                w = &w * spec.q(j as i64 - i as i64)?;
            }
            out = &out + &w;
        }
    }
    Ok(out)
}

/// `S•( z κ^{1/2} / ((1 - z κ^{1/2})(1 - z κ^{-1/2})) )` in `(z, kappa)`.
pub fn refined_closed_form(cutoff: usize) -> Result<LaurentPolynomial, FockError> {
    let zero = LaurentPolynomial::zero(2);
    let mut g = vec![zero.clone()];
    for n in 1..=cutoff as i32 {
        let mut c = zero.clone();
        // z^n κ^{1/2} h_{n-1}(κ^{1/2}, κ^{-1/2})
        for j in 0..n {
            c.add_term(Monomial::from_doubled([2 * n, 1 + (n - 1 - 2 * j)]), Q::one());
        }
        g.push(c);
    }
    let series = pleth_exp(&TruncatedSeries::from_coeffs(&zero, cutoff, g))?;
    Ok(series.coeffs().iter().fold(zero, |acc, c| &acc + c))
}

/// Transfer-matrix side with the refined specialization against the
/// closed form; `spec` may be altered for negative controls.
pub fn refined_vertex_check_with(spec: &DiagonalSpec, cutoff: usize) -> Result<bool, FockError> {
    if cutoff > MAX_REFINED_CUTOFF {
        return Err(FockError::CutoffTooLarge {
            cutoff,
            max: MAX_REFINED_CUTOFF,
        });
    }
    Ok(or_formula_lhs(spec, cutoff)? == refined_closed_form(cutoff)?)
}

pub fn refined_vertex_check(cutoff: usize) -> Result<bool, FockError> {
    refined_vertex_check_with(&DiagonalSpec::refined(cutoff.saturating_sub(1)), cutoff)
}

/// Coefficients of a one-variable polynomial, lowest first.
pub fn univariate_coefficients(p: &LaurentPolynomial, upto: usize) -> Vec<Q> {
    (0..=upto)
        .map(|k| {
            let mut m = Monomial::one(1);
            m.doubled_mut()[0] = 2 * k as i32;
            p.coeff(&m)
        })
        .collect()
}
