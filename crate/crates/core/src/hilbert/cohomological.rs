use num_bigint::BigInt;
use num_traits::Zero;

use super::{c3_torus, guard, virtual_tangent_c3, HilbertError};
use crate::lattice::{
    FactoredRational, LaurentPolynomial, Monomial, RationalSum, TruncatedSeries, VariableSet, Q,
};
use crate::partition::enumerate_plane_partitions;

/// ε⁰ terms of the `z^n` coefficients under `t_i = exp(ε s_i)`, and the
/// prediction `M(z)^{E(s)}` built from `E = E_1`.
#[derive(Debug, Clone)]
pub struct CohomologicalLimit {
    pub vars: VariableSet,
    pub limits: Vec<RationalSum>,
    pub predicted: Vec<RationalSum>,
    pub mismatches: Vec<usize>,
}

impl CohomologicalLimit {
    pub fn verdict(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn exponent(&self) -> &RationalSum {
        &self.limits[1]
    }
}

/// `sum_i a_i s_i` for the weight `t^a`.
fn linear_form(w: &Monomial) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero(3);
    for (i, &e) in w.doubled().iter().enumerate() {
        if e != 0 {
            out.add_term(Monomial::var(3, i), Q::new(e.into(), 2.into()));
        }
    }
    out
}

/// Each factor `w^{1/2} - w^{-1/2}` is `ε ⟨w, s⟩ (1 + O(ε²))`, so a virtual
/// character of rank 0 has `prod ⟨w, s⟩^{-c_w}` as its ε⁰ term.
fn aroof_limit(tvir: &LaurentPolynomial, n: usize) -> Result<FactoredRational, HilbertError> {
    let rank = tvir.rank();
    if rank > Q::zero() {
        return Err(HilbertError::EpsilonPoleRemains(n));
    }
    if rank < Q::zero() {
        return Ok(FactoredRational::zero(3));
    }
    let mut out = FactoredRational::one(3);
    for (w, c) in tvir.terms() {
        let k = i32::try_from(c.to_integer()).expect("small multiplicity");
        out.mul_power(&linear_form(w), -k);
    }
    Ok(out)
}

fn sigma2_over(m: usize) -> Q {
    let s: i64 = (1..=m).filter(|d| m.is_multiple_of(*d)).map(|d| (d * d) as i64).sum();
    Q::new(BigInt::from(s), BigInt::from(m as i64))
}

pub fn cohomological_limit(order: usize) -> Result<CohomologicalLimit, HilbertError> {
    guard(order, super::MAX_COH_ORDER)?;
    let order = order.max(1);
    let t = c3_torus();
    let mut limits = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = RationalSum::zero(3);
        for pi in enumerate_plane_partitions(n)? {
            let tvir = virtual_tangent_c3(&pi, [&t[0], &t[1], &t[2]])?.value;
            let mut w = aroof_limit(&tvir, n)?;
            if n % 2 == 1 {
                w = w.neg();
            }
            c = c.add(&RationalSum::from_factored(&w));
        }
        limits.push(c);
    }
    let zero = RationalSum::zero(3);
    let e = limits[1].clone();
    let log_m: Vec<RationalSum> = (0..=order)
        .map(|m| if m == 0 { zero.clone() } else { e.scale(&sigma2_over(m)) })
        .collect();
    let predicted = TruncatedSeries::from_coeffs(&zero, order, log_m).exp();
    let mismatches = (0..=order)
        .filter(|&k| !limits[k].sub(predicted.coeff(k)).is_zero())
        .collect();
    Ok(CohomologicalLimit {
        vars: VariableSet::new(&["s1", "s2", "s3"]),
        limits,
        predicted: predicted.coeffs().to_vec(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::q;
    use num_traits::One;

    #[test]
    fn exponent_is_degree_zero_and_symmetric() {
        let r = cohomological_limit(2).unwrap();
        assert!(r.verdict());
        let e = r.exponent();
        let a = e.evaluate(&[q(1), q(4), q(9)]).unwrap();
        let b = e.evaluate(&[q(2), q(8), q(18)]).unwrap();
        let c = e.evaluate(&[q(9), q(1), q(4)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(!e.evaluate(&[q(1), q(1), q(1)]).unwrap().is_one());
    }
}
