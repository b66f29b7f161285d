//! Partitions and plane partitions.
//!
//! Boxes are 0-based: `(i, j)` lies in row `i` (first axis, weight `t1`)
//! and column `j`, with `0 <= j < parts[i]`. A plane partition stores a
//! row-major height matrix; its boxes are `(i1, i2, i3)` with
//! `i3 < heights[i1][i2]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{LaurentPolynomial, Monomial, Q};

pub const MAX_PARTITION_SIZE: usize = 30;
pub const MAX_PLANE_PARTITION_SIZE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("size {n} exceeds the limit {max}")]
    SizeLimitExceeded { n: usize, max: usize },
    #[error("box ({0}, {1}) is outside the diagram")]
    BoxOutsideDiagram(usize, usize),
    #[error("no variable assigned to diagonal {0}")]
    MissingDiagonalVariable(i64),
    #[error("parts are not weakly decreasing and positive")]
    InvalidParts,
}

/// An integer partition with weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::InvalidParts);
        }
        Ok(Partition(parts))
    }

    /// Drops zero parts; panics on an increasing sequence.
    pub fn from_parts(parts: &[usize]) -> Self {
        Self::new(parts.iter().copied().filter(|&p| p > 0).collect()).expect("weakly decreasing parts")
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        j < self.part(i)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    pub fn arm(&self, i: usize, j: usize) -> Result<usize, PartitionError> {
        if !self.contains(i, j) {
            return Err(PartitionError::BoxOutsideDiagram(i, j));
        }
        Ok(self.part(i) - j - 1)
    }

    pub fn leg(&self, i: usize, j: usize) -> Result<usize, PartitionError> {
        if !self.contains(i, j) {
            return Err(PartitionError::BoxOutsideDiagram(i, j));
        }
        Ok(self.0.iter().filter(|&&p| p > j).count() - i - 1)
    }

    /// `V = sum t1^{-i} t2^{-j}` with `t = [t1, t2]` given as monomials.
    pub fn character(&self, t: [&Monomial; 2]) -> LaurentPolynomial {
        let n = t[0].nvars();
        let (a, b) = (t[0].inv(), t[1].inv());
        LaurentPolynomial::from_terms(
            n,
            self.boxes()
                .map(|(i, j)| (a.pow(i as i32).mul(&b.pow(j as i32)), Q::from_integer(1.into()))),
        )
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn partitions_bounded(n: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(prefix.clone()));
        return;
    }
    for p in 1..=max_part.min(n) {
        prefix.push(p);
        partitions_bounded(n - p, p, prefix, out);
        prefix.pop();
    }
}

/// All partitions of `n`, in increasing lexicographic order of part lists.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>, PartitionError> {
    if n > MAX_PARTITION_SIZE {
        return Err(PartitionError::SizeLimitExceeded {
            n,
            max: MAX_PARTITION_SIZE,
        });
    }
    let mut out = Vec::new();
    partitions_bounded(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Partitions of every size up to `n`, by size then lexicographically.
pub fn partitions_upto(n: usize) -> Result<Vec<Partition>, PartitionError> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_partitions(k)?);
    }
    Ok(out)
}

/// `μ ≻ λ`: `μ1 >= λ1 >= μ2 >= λ2 >= ...`.
pub fn interlaces(mu: &Partition, lambda: &Partition) -> bool {
    let n = mu.len().max(lambda.len());
    (0..n).all(|i| mu.part(i) >= lambda.part(i) && lambda.part(i) >= mu.part(i + 1))
}

/// A plane partition as a row-major matrix of positive heights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlanePartition(Vec<Vec<usize>>);

impl PlanePartition {
    pub fn empty() -> Self {
        PlanePartition(Vec::new())
    }

    pub fn new(heights: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let p = PlanePartition(heights);
        if p.is_valid() {
            Ok(p)
        } else {
            Err(PartitionError::InvalidParts)
        }
    }

    pub fn heights(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn height(&self, i: usize, j: usize) -> usize {
        self.0.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().flatten().sum()
    }

    /// Weakly decreasing along rows and columns, all stored heights positive.
    pub fn is_valid(&self) -> bool {
        self.0.iter().enumerate().all(|(i, row)| {
            !row.is_empty()
                && row.iter().enumerate().all(|(j, &h)| {
                    h > 0
                        && (j == 0 || row[j - 1] >= h)
                        && (i == 0 || self.height(i - 1, j) >= h)
                })
        })
    }

    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(j, &h)| (0..h).map(move |k| (i, j, k)))
        })
    }

    /// `V = sum t1^{-i1} t2^{-i2} t3^{-i3}`.
    pub fn character(&self, t: [&Monomial; 3]) -> LaurentPolynomial {
        let n = t[0].nvars();
        let inv: Vec<Monomial> = t.iter().map(|m| m.inv()).collect();
        LaurentPolynomial::from_terms(
            n,
            self.boxes().map(|(i, j, k)| {
                (
                    inv[0]
                        .pow(i as i32)
                        .mul(&inv[1].pow(j as i32))
                        .mul(&inv[2].pow(k as i32)),
                    Q::from_integer(1.into()),
                )
            }),
        )
    }

    /// Image under a permutation of the three axes: box `(b0,b1,b2)` goes
    /// to the box whose coordinate `perm[a]` is `b_a`.
    pub fn permute_axes(&self, perm: [usize; 3]) -> PlanePartition {
        let mut h: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for b in self.boxes() {
            let src = [b.0, b.1, b.2];
            let mut dst = [0; 3];
            for a in 0..3 {
                dst[perm[a]] = src[a];
            }
            *h.entry((dst[0], dst[1])).or_insert(0) += 1;
        }
        let rows = h.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); rows];
        for ((i, j), v) in h {
            let row = &mut out[i];
            if row.len() <= j {
                row.resize(j + 1, 0);
            }
            row[j] = v;
        }
        PlanePartition(out)
    }

    /// `prod q_{i2 - i1}` over boxes.
    pub fn diagonal_weight(&self, q: &BTreeMap<i64, Monomial>) -> Result<Monomial, PartitionError> {
        let mut out: Option<Monomial> = None;
        for (i, j, _) in self.boxes() {
            let d = j as i64 - i as i64;
            let m = q.get(&d).ok_or(PartitionError::MissingDiagonalVariable(d))?;
            out = Some(match out {
                None => m.clone(),
                Some(acc) => acc.mul(m),
            });
        }
        Ok(out.unwrap_or_else(|| {
            Monomial::one(q.values().next().map(|m| m.nvars()).unwrap_or(0))
        }))
    }
}

fn plane_rows(remaining: usize, bound: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<PlanePartition>) {
    if remaining == 0 {
        out.push(PlanePartition(rows.clone()));
        return;
    }
    // next row: weakly decreasing, entrywise <= the previous row
    let mut row = Vec::new();
    next_row(remaining, bound, &mut row, rows, out);
}

fn next_row(
    remaining: usize,
    bound: &[usize],
    row: &mut Vec<usize>,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<PlanePartition>,
) {
    let used: usize = row.iter().sum();
    if !row.is_empty() {
        rows.push(row.clone());
        let b = row.clone();
        plane_rows(remaining - used, &b, rows, out);
        rows.pop();
    }
    let j = row.len();
    if j >= bound.len() {
        return;
    }
    let cap = bound[j].min(row.last().copied().unwrap_or(usize::MAX)).min(remaining - used);
    for h in 1..=cap {
        row.push(h);
        next_row(remaining, bound, row, rows, out);
        row.pop();
    }
}

/// All plane partitions of `n`, sorted by height matrix.
pub fn enumerate_plane_partitions(n: usize) -> Result<Vec<PlanePartition>, PartitionError> {
    if n > MAX_PLANE_PARTITION_SIZE {
        return Err(PartitionError::SizeLimitExceeded {
            n,
            max: MAX_PLANE_PARTITION_SIZE,
        });
    }
    let mut out = Vec::new();
    let unbounded = vec![usize::MAX; n.max(1)];
    plane_rows(n, &unbounded, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}
