use super::{AlgebraError, FactoredRational, LaurentPolynomial, Monomial};

/// Direction of expansion for one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeDirection {
    /// Nonnegative powers, `1/(1-t) = 1 + t + ...`.
    AtZero,
    /// Nonpositive powers, `1/(1-t) = -t^-1 - t^-2 - ...`.
    AtInfinity,
}

fn orientation(directions: &[Option<ConeDirection>]) -> Vec<i32> {
    directions
        .iter()
        .map(|d| match d {
            Some(ConeDirection::AtZero) => 1,
            Some(ConeDirection::AtInfinity) => -1,
            None => 0,
        })
        .collect()
}

/// Expansion of `r` in the cone, keeping terms of cone degree `<= order`.
///
/// The cone degree of `t^e` is `sum_v sign_v * e_v` with `sign_v = +1` for
/// [`ConeDirection::AtZero`], `-1` for [`ConeDirection::AtInfinity`] and
/// `0` for variables left as parameters (`None`). Each denominator factor
/// must have a single term of minimal degree, and every other term must
/// differ from it by a monomial inside the cone.
pub fn expand_in_cone(
    r: &FactoredRational,
    directions: &[Option<ConeDirection>],
    order: i64,
) -> Result<LaurentPolynomial, AlgebraError> {
    assert_eq!(directions.len(), r.nvars(), "one direction per variable");
    let n = r.nvars();
    if r.is_zero() {
        return Ok(LaurentPolynomial::zero(n));
    }
    let w = orientation(directions);
    let max = 2 * order;
    let deg = |m: &Monomial| m.weighted_degree(&w);

    // (polynomial piece, its minimal degree); denominators become
    // prefactor times a geometric series computed lazily below
    let mut pieces: Vec<Piece> = Vec::new();
    let pre = LaurentPolynomial::monomial(r.monomial().clone(), r.scalar().clone());
    pieces.push(Piece::Poly(pre));
    for (p, m) in r.factors() {
        if m > 0 {
            pieces.push(Piece::Poly(p.pow(m as u32)));
            continue;
        }
        let (lead_m, lead_c) = cone_extreme(p, &w)?;
        let unit = LaurentPolynomial::monomial(lead_m.inv(), lead_c.recip());
        // p = lead * (1 - g)
        let g = &LaurentPolynomial::one(n) - &(p * &unit);
        pieces.push(Piece::Poly(unit.pow((-m) as u32)));
        pieces.push(Piece::Geometric(g, (-m) as u32));
    }
    let min_degree = |pc: &Piece| -> i64 {
        match pc {
            Piece::Poly(p) => p.terms().map(|(m, _)| deg(m)).min().unwrap_or(0),
            Piece::Geometric(..) => 0,
        }
    };
    let mins: Vec<i64> = pieces.iter().map(min_degree).collect();
    let total_min: i64 = mins.iter().sum();
    let mut acc = LaurentPolynomial::one(n);
    let mut rest_min = total_min;
    for (pc, lo) in pieces.iter().zip(&mins) {
        let budget = max - (total_min - lo);
        rest_min -= lo;
        let expanded = match pc {
            Piece::Poly(p) => p.truncate_weighted(&w, budget),
            Piece::Geometric(g, k) => {
                let base = geometric(g, &w, budget);
                let mut s = LaurentPolynomial::one(n);
                for _ in 0..*k {
                    s = s.mul_truncated(&base, &w, budget);
                }
                s
            }
        };
        acc = acc.mul_truncated(&expanded, &w, max - rest_min);
    }
    Ok(acc)
}

enum Piece {
    Poly(LaurentPolynomial),
    /// `(1 - g)^(-k)`
    Geometric(LaurentPolynomial, u32),
}

fn cone_extreme<'a>(
    p: &'a LaurentPolynomial,
    w: &[i32],
) -> Result<(&'a Monomial, &'a super::Q), AlgebraError> {
    let lo = p
        .terms()
        .map(|(m, _)| m.weighted_degree(w))
        .min()
        .ok_or(AlgebraError::NotExpandable)?;
    let mut lows = p.terms().filter(|(m, _)| m.weighted_degree(w) == lo);
    let (lm, lc) = lows.next().unwrap();
    if lows.next().is_some() {
        return Err(AlgebraError::NotExpandable);
    }
    for (m, _) in p.terms() {
        if m == lm {
            continue;
        }
        let ratio = m.div(lm);
        let in_cone = ratio
            .doubled()
            .iter()
            .zip(w)
            .all(|(e, s)| *s == 0 || e * s >= 0);
        if !in_cone {
            return Err(AlgebraError::NotExpandable);
        }
    }
    Ok((lm, lc))
}

/// `1/(1-g)` truncated; every term of `g` has positive cone degree.
fn geometric(g: &LaurentPolynomial, w: &[i32], max: i64) -> LaurentPolynomial {
    let n = g.nvars();
    let mut acc = LaurentPolynomial::one(n);
    let mut power = LaurentPolynomial::one(n);
    loop {
        power = power.mul_truncated(g, w, max);
        if power.is_zero() {
            return acc;
        }
        acc = &acc + &power;
    }
}
