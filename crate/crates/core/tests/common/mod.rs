#![allow(dead_code)]

use kenum::lattice::{LaurentPolynomial, Monomial, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Partitions of `n` as weakly decreasing part lists, by recursion on the
/// largest part.
pub fn brute_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Plane partitions of `n` as `n x n` height grids filled cell by cell.
pub fn brute_plane_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(cell: usize, n: usize, left: usize, grid: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if left == 0 {
            out.push(grid.clone());
            return;
        }
        if cell == n * n {
            return;
        }
        let (i, j) = (cell / n, cell % n);
        let up = if i == 0 { usize::MAX } else { grid[i - 1][j] };
        let lf = if j == 0 { usize::MAX } else { grid[i][j - 1] };
        let cap = up.min(lf).min(left);
        for h in 0..=cap {
            grid[i][j] = h;
            rec(cell + 1, n, left - h, grid, out);
        }
        grid[i][j] = 0;
    }
    let mut out = Vec::new();
    let mut grid = vec![vec![0; n.max(1)]; n.max(1)];
    rec(0, n.max(1), n, &mut grid, &mut out);
    out
}

/// Coefficients of `prod_k (1 - q^k)^{-k}` through `q^n`.
pub fn macmahon_coefficients(n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for k in 1..=n {
        for _ in 0..k {
            for d in k..=n {
                c[d] += c[d - k];
            }
        }
    }
    c
}

pub fn mono(exps: &[i32]) -> Monomial {
    Monomial::from_integer(exps.iter().copied())
}

pub fn poly(nvars: usize, terms: &[(&[i32], i64)]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(nvars, terms.iter().map(|(e, c)| (mono(e), q(*c))))
}

/// `1 - m`.
pub fn one_minus(m: &Monomial) -> LaurentPolynomial {
    let n = m.nvars();
    LaurentPolynomial::from_terms(n, [(Monomial::one(n), q(1)), (m.clone(), q(-1))])
}

pub fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Q::new(a.into(), b.into()))
}

/// Monomial with doubled exponents in `[-4, 4]`.
pub fn monomial(nvars: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-4i32..=4, nvars).prop_map(Monomial::from_doubled)
}

/// Up to `max_terms` terms in `nvars` variables.
pub fn laurent(nvars: usize, max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((monomial(nvars), rational()), 0..=max_terms)
        .prop_map(move |ts| LaurentPolynomial::from_terms(nvars, ts))
}

/// Virtual character: integer multiplicities on nontrivial integral weights.
pub fn character(nvars: usize, max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, nvars), -2i64..=2), 0..=max_terms)
        .prop_map(move |ts| {
            let mut p = LaurentPolynomial::zero(nvars);
            for (e, c) in ts {
                let m = Monomial::from_integer(e);
                if !m.is_one() {
                    p.add_term(m, q(c));
                }
            }
            p
        })
}
