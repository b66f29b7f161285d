use num_traits::One;

use super::{c3_torus, guard, kappa_half, virtual_tangent_c3, HilbertError};
use crate::lattice::{
    FactoredRational, LaurentPolynomial, Monomial, RationalSum, TruncatedSeries, ZeroTestConfig,
    ZeroTestRoute, Q,
};
use crate::partition::{enumerate_plane_partitions, PlanePartition};
use crate::plethystic::{aroof, ext_alg, half_difference, pleth_exp, pleth_log};

#[derive(Debug, Clone)]
pub struct LocalizationWeight {
    pub fixed_point: PlanePartition,
    /// `prod (1 - w/κ)/(1 - w^{-1})` over the weights of the ambient tangent.
    pub ovir: FactoredRational,
    /// `(-1)^{|π|} â(T^vir_π)`.
    pub ohat: FactoredRational,
}

pub fn localization_weights(pi: &PlanePartition) -> Result<LocalizationWeight, HilbertError> {
    let t = c3_torus();
    let tvir = virtual_tangent_c3(pi, [&t[0], &t[1], &t[2]])?.value;
    let ovir = ext_alg(&-tvir.bar())?;
    let mut ohat = aroof(&tvir)?;
    if pi.size() % 2 == 1 {
        ohat = ohat.neg();
    }
    Ok(LocalizationWeight {
        fixed_point: pi.clone(),
        ovir,
        ohat,
    })
}

/// Per-order lists of fixed-point contributions to the `z^n` coefficient.
pub fn z_series_terms(order: usize) -> Result<Vec<Vec<FactoredRational>>, HilbertError> {
    guard(order, super::MAX_Z_SERIES_ORDER)?;
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let pis = enumerate_plane_partitions(n)?;
        let weights = map_in_order(&pis, |pi| localization_weights(pi).map(|w| w.ohat))?;
        out.push(weights);
    }
    Ok(out)
}

#[cfg(feature = "parallel")]
fn map_in_order<T: Sync, U: Send, E: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<U, E> + Sync + Send,
) -> Result<Vec<U>, E> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_in_order<T, U, E>(items: &[T], f: impl Fn(&T) -> Result<U, E>) -> Result<Vec<U>, E> {
    items.iter().map(f).collect()
}

/// `sum_n z^n (-1)^n sum_{|π|=n} â(T^vir_π)`.
pub fn z_series_c3(order: usize) -> Result<TruncatedSeries<RationalSum>, HilbertError> {
    let terms = z_series_terms(order)?;
    let coeffs = terms
        .iter()
        .map(|ws| {
            ws.iter()
                .fold(RationalSum::zero(3), |acc, w| acc.add(&RationalSum::from_factored(w)))
        })
        .collect();
    Ok(TruncatedSeries::from_coeffs(&RationalSum::zero(3), order, coeffs))
}

/// `G = prod_i ((κ/t_i)^{1/2} - (t_i/κ)^{1/2}) / (t_i^{1/2} - t_i^{-1/2})`.
pub fn g_factor() -> FactoredRational {
    let mut g = FactoredRational::one(3);
    let kappa = kappa_half().pow(2);
    for t in c3_torus() {
        let num = half_difference(&kappa.div(&t)).expect("integral weight");
        let den = half_difference(&t).expect("integral weight");
        g.mul_power(&num, 1);
        g.mul_power(&den, -1);
    }
    g
}

/// `★ = -z / ((1 - κ^{1/2} z)(1 - κ^{-1/2} z))` expanded in `z`, with
/// `κ^{1/2}` taken from `unit` (a monomial in any lattice).
fn star_with(unit: &Monomial, order: usize) -> TruncatedSeries<LaurentPolynomial> {
    let n = unit.nvars();
    let zero = LaurentPolynomial::zero(n);
    let mut coeffs = vec![zero.clone()];
    for k in 1..=order as i32 {
        let mut c = zero.clone();
        for j in 0..k {
            c.add_term(unit.pow(k - 1 - 2 * j), -Q::one());
        }
        coeffs.push(c);
    }
    TruncatedSeries::from_coeffs(&zero, order, coeffs)
}

/// ★ in the single variable `kappa`, exponents in units of `κ^{1/2}`.
pub fn star_closed(order: usize) -> TruncatedSeries<LaurentPolynomial> {
    star_with(&Monomial::from_doubled([1]), order)
}

/// `S•(★ G)`, the plethystic side of the identity.
pub fn nekrasov_rhs(order: usize) -> Result<TruncatedSeries<RationalSum>, HilbertError> {
    guard(order, super::MAX_RHS_ORDER)?;
    let star = star_with(&kappa_half(), order);
    let g = RationalSum::from_factored(&g_factor());
    let arg = star.map_into(|c| g.mul_poly(c));
    Ok(pleth_exp(&arg)?)
}

#[derive(Debug, Clone)]
pub struct SeriesComparison {
    pub order: usize,
    /// Orders at which the two sides differ.
    pub mismatches: Vec<usize>,
    pub routes: Vec<ZeroTestRoute>,
}

impl SeriesComparison {
    pub fn verdict(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn compare(
        lhs: &TruncatedSeries<RationalSum>,
        rhs: &TruncatedSeries<RationalSum>,
        cfg: &ZeroTestConfig,
    ) -> Self {
        let mut mismatches = Vec::new();
        let mut routes = Vec::new();
        for k in 0..=lhs.order() {
            let (zero, route) = lhs.coeff(k).sub(rhs.coeff(k)).is_zero_with(cfg);
            if !zero {
                mismatches.push(k);
            }
            routes.push(route);
        }
        SeriesComparison {
            order: lhs.order(),
            mismatches,
            routes,
        }
    }
}

/// Localization series against the plethystic closed form.
pub fn nekrasov_check(order: usize, cfg: &ZeroTestConfig) -> Result<SeriesComparison, HilbertError> {
    let lhs = z_series_c3(order)?;
    let rhs = nekrasov_rhs(order)?;
    Ok(SeriesComparison::compare(&lhs, &rhs, cfg))
}

/// `★ = pleth_log(Z) / G`, returned in the variable `kappa` (stored
/// exponents count powers of `κ^{1/2}`).
pub fn star_extract(order: usize) -> Result<TruncatedSeries<LaurentPolynomial>, HilbertError> {
    guard(order, super::MAX_STAR_ORDER)?;
    // collapse each coefficient to one fraction before taking the log
    let z = z_series_c3(order)?.map(|c| RationalSum::from_factored(&c.to_factored()));
    let log = pleth_log(&z)?;
    let g_inv = RationalSum::from_factored(&g_factor().inv()?);
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let c = log
            .coeff(k)
            .mul(&g_inv)
            .to_laurent()
            .map_err(|_| HilbertError::NonPolynomialStar(k))?;
        coeffs.push(to_kappa(&c).ok_or(HilbertError::NonPolynomialStar(k))?);
    }
    let zero = LaurentPolynomial::zero(1);
    Ok(TruncatedSeries::from_coeffs(&zero, order, coeffs))
}

/// Rewrite a polynomial in `(t1 t2 t3)^{1/2}` alone as one in `kappa`.
fn to_kappa(p: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    let mut out = LaurentPolynomial::zero(1);
    for (m, c) in p.terms() {
        let e = m.doubled();
        if e[0] != e[1] || e[1] != e[2] {
            return None;
        }
        out.add_term(Monomial::from_doubled([e[0]]), c.clone());
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::q;

    #[test]
    fn single_box_weight_is_minus_g() {
        let pi = PlanePartition::new(vec![vec![1]]).unwrap();
        let w = localization_weights(&pi).unwrap();
        assert_eq!(w.ohat, g_factor().neg());
        let empty = localization_weights(&PlanePartition::empty()).unwrap();
        assert_eq!(empty.ohat, FactoredRational::one(3));
        let pt = [q(4), q(9), q(25)];
        let direct = w.ovir.evaluate(&pt).unwrap();
        // (1 - w/κ)/(1 - 1/w) over the ambient weights t1, t2, t3
        let k = q(4 * 9 * 25);
        let mut expect = Q::one();
        for w in [q(4), q(9), q(25)] {
            expect *= (Q::one() - &w / &k) / (Q::one() - w.recip());
        }
        assert_eq!(direct, expect);
    }

    #[test]
    fn low_orders_agree() {
        let cmp = nekrasov_check(2, &ZeroTestConfig::default()).unwrap();
        assert!(cmp.verdict(), "{cmp:?}");
    }
}
