use num_traits::One;

use super::{guard, tangent_c2_closed, HilbertError, SeriesComparison};
use crate::lattice::{
    FactoredRational, LaurentPolynomial, Monomial, RationalSum, TruncatedSeries, VariableSet,
    ZeroTestConfig, Q,
};
use crate::partition::enumerate_partitions;
use crate::plethystic::pleth_exp;

/// `t1, t2, m`.
pub fn surface_vars() -> VariableSet {
    VariableSet::new(&["t1", "t2", "m"])
}

fn one_minus(m: Monomial) -> LaurentPolynomial {
    let n = m.nvars();
    LaurentPolynomial::from_terms(n, [(Monomial::one(n), Q::one()), (m, -Q::one())])
}

/// `sum_λ z^{|λ|} prod_{w in T_λ} (1 - m/w)/(1 - 1/w)`.
pub fn z_series_hilb_c2(order: usize) -> Result<TruncatedSeries<RationalSum>, HilbertError> {
    guard(order, super::MAX_SURFACE_ORDER)?;
    let (t1, t2, m) = (Monomial::var(3, 0), Monomial::var(3, 1), Monomial::var(3, 2));
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = RationalSum::zero(3);
        for lambda in enumerate_partitions(n)? {
            let tan = tangent_c2_closed(&lambda, [&t1, &t2]).value;
            let mut w = FactoredRational::one(3);
            for (wt, mult) in tan.terms() {
                let k = i32::try_from(mult.to_integer()).expect("small multiplicity");
                w.mul_power(&one_minus(m.div(wt)), k);
                w.mul_power(&one_minus(wt.inv()), -k);
            }
            c = c.add(&RationalSum::from_factored(&w));
        }
        coeffs.push(c);
    }
    Ok(TruncatedSeries::from_coeffs(&RationalSum::zero(3), order, coeffs))
}

/// `S•( z (1 - m/t1)(1 - m/t2) / ((1 - 1/t1)(1 - 1/t2)(1 - m z)) )`.
pub fn surface_closed_form(order: usize) -> Result<TruncatedSeries<RationalSum>, HilbertError> {
    guard(order, super::MAX_SURFACE_ORDER)?;
    let (t1, t2, m) = (Monomial::var(3, 0), Monomial::var(3, 1), Monomial::var(3, 2));
    let mut f = FactoredRational::one(3);
    f.mul_power(&one_minus(m.div(&t1)), 1);
    f.mul_power(&one_minus(m.div(&t2)), 1);
    f.mul_power(&one_minus(t1.inv()), -1);
    f.mul_power(&one_minus(t2.inv()), -1);
    let zero = RationalSum::zero(3);
    let mut coeffs = vec![zero.clone()];
    for n in 1..=order {
        coeffs.push(RationalSum::from_factored(&f.mul_monomial(&m.pow(n as i32 - 1))));
    }
    let arg = TruncatedSeries::from_coeffs(&zero, order, coeffs);
    Ok(pleth_exp(&arg)?)
}

pub fn hilb_c2_check(order: usize, cfg: &ZeroTestConfig) -> Result<SeriesComparison, HilbertError> {
    Ok(SeriesComparison::compare(
        &z_series_hilb_c2(order)?,
        &surface_closed_form(order)?,
        cfg,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficient() {
        let v = surface_vars();
        let z = z_series_hilb_c2(1).unwrap();
        let mut expect = FactoredRational::from_poly(&v.parse("(1 - m*t1^(-1))*(1 - m*t2^(-1))").unwrap());
        expect.mul_power(&v.parse("1 - t1^(-1)").unwrap(), -1);
        expect.mul_power(&v.parse("1 - t2^(-1)").unwrap(), -1);
        assert!(z.coeff(1).sub(&RationalSum::from_factored(&expect)).is_zero());
        assert!(hilb_c2_check(2, &ZeroTestConfig::default()).unwrap().verdict());
    }
}
