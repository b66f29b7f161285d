use num_traits::One;

use super::HilbertError;
use crate::lattice::{FactoredRational, LaurentPolynomial, Monomial, RationalSum, VariableSet, Q};

pub const MAX_DIMENSION: usize = 6;
pub const MAX_TWIST: i32 = 20;

/// `t0, ..., tn`.
pub fn projective_vars(n: usize) -> VariableSet {
    let names: Vec<String> = (0..=n).map(|i| format!("t{i}")).collect();
    VariableSet::new(&names)
}

/// `χ(P^n, O(k)) = sum_i t_i^k / prod_{j != i} (1 - t_j/t_i)`, reduced to
/// a Laurent polynomial by exact division.
pub fn chi_projective_space(n: usize, k: i32) -> Result<LaurentPolynomial, HilbertError> {
    if n > MAX_DIMENSION {
        return Err(HilbertError::SizeLimitExceeded {
            order: n,
            max: MAX_DIMENSION,
        });
    }
    if k.abs() > MAX_TWIST {
        return Err(HilbertError::SizeLimitExceeded {
            order: k.unsigned_abs() as usize,
            max: MAX_TWIST as usize,
        });
    }
    let nv = n + 1;
    let t: Vec<Monomial> = (0..nv).map(|i| Monomial::var(nv, i)).collect();
    let mut sum = RationalSum::zero(nv);
    for i in 0..nv {
        let mut w = FactoredRational::term(Q::one(), t[i].pow(k));
        for j in (0..nv).filter(|&j| j != i) {
            let f = LaurentPolynomial::from_terms(
                nv,
                [(Monomial::one(nv), Q::one()), (t[j].div(&t[i]), -Q::one())],
            );
            w.mul_power(&f, -1);
        }
        sum = sum.add(&RationalSum::from_factored(&w));
    }
    Ok(sum.to_laurent()?)
}
