use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{localization_weights, HilbertError};
use crate::lattice::{pow_q, prime_square_point, FactoredRational, LaurentPolynomial, Monomial, Q};
use crate::partition::PlanePartition;

#[derive(Debug, Clone)]
pub struct RigidityReport {
    pub fixed_point: PlanePartition,
    /// Net order of vanishing of the weight along `t1 t2 = 1`.
    pub vanishing_order: i32,
    /// Exact values at the sampled points on the locus.
    pub values: Vec<Q>,
    /// Value at one generic point off the locus.
    pub off_locus: Q,
}

impl RigidityReport {
    pub fn verdict(&self) -> bool {
        self.vanishing_order > 0 && self.values.iter().all(|v| v.is_zero())
    }
}

/// `t1 t2 - 1` in `t1, t2, t3`.
fn locus() -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        3,
        [
            (Monomial::one(3), -Q::from_integer(1.into())),
            (Monomial::from_integer([1, 1, 0]), Q::from_integer(1.into())),
        ],
    )
}

fn split_locus(f: &FactoredRational) -> (i32, FactoredRational) {
    let d = locus();
    let mut order = 0;
    let mut rest = FactoredRational::term(f.scalar().clone(), f.monomial().clone());
    for (p, m) in f.factors() {
        let mut p = p.clone();
        let mut k = 0;
        while let Ok(q) = p.exact_div(&d) {
            p = q;
            k += 1;
        }
        order += k * m;
        rest.mul_power(&p, m);
    }
    (order, rest)
}

/// Evaluates `(-1)^{|π|} â(T^vir_π)` on the locus `t2 = 1/t1` after
/// cancelling powers of `t1 t2 - 1` between numerator and denominator.
pub fn rigidity_vanish_check(
    pi: &PlanePartition,
    trials: usize,
    seed: u64,
) -> Result<RigidityReport, HilbertError> {
    let w = localization_weights(pi)?.ohat;
    let (order, cofactor) = split_locus(&w);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(trials);
    while values.len() < trials {
        let pt = prime_square_point(2, &mut rng);
        let on_locus = [pt[0].clone(), pt[0].recip(), pt[1].clone()];
        let c = match cofactor.evaluate(&on_locus) {
            Ok(c) => c,
            Err(crate::lattice::AlgebraError::PoleAtPoint) => continue,
            Err(e) => return Err(e.into()),
        };
        let d = locus().evaluate(&on_locus)?;
        if order < 0 && d.is_zero() {
            return Err(crate::lattice::AlgebraError::PoleAtPoint.into());
        }
        values.push(pow_q(&d, order) * c);
    }
    let off_locus = loop {
        let pt = prime_square_point(3, &mut rng);
        if let Ok(v) = w.evaluate(&pt) {
            break v;
        }
    };
    Ok(RigidityReport {
        fixed_point: pi.clone(),
        vanishing_order: order,
        values,
        off_locus,
    })
}
