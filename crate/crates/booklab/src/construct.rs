//! Generators for the two extremal families: balanced k-partite colorings
//! and seeded p-random colorings, plus the two lower-bound formulas they
//! witness.

use crate::bitset::VertexSet;
use crate::coloring::{ColoringBuilder, TwoColoring};
use crate::error::{Error, Result};
use crate::rat::{rat_to_f64, Rat};
use crate::rng::SplitMix64;
use num::{One, Zero};

/// A partition of `[0, n)` into pairwise disjoint parts covering everything.
#[derive(Clone, Debug)]
pub struct Partition {
    n: usize,
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Partition> {
        let mut seen = VertexSet::empty(n);
        for p in &parts {
            if !seen.is_disjoint(p) {
                return Err(Error::Precondition("partition parts overlap".into()));
            }
            seen = seen.union(p);
        }
        if seen.len() != n {
            return Err(Error::Precondition(
                "partition parts must cover all vertices".into(),
            ));
        }
        Ok(Partition { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    /// Sizes differ by at most one.
    pub fn is_balanced(&self) -> bool {
        let min = self.parts.iter().map(VertexSet::len).min().unwrap_or(0);
        let max = self.parts.iter().map(VertexSet::len).max().unwrap_or(0);
        max - min <= 1
    }
}

/// The balanced k-partite coloring on `k * part_size` vertices: blue inside
/// each block, red across blocks. The red graph is complete k-partite and
/// therefore K_{k+1}-free; with `part_size = n + k - 1` the largest blue
/// book on a k-clique spine has exactly `n - 1` pages.
///
/// Blocks are the contiguous ranges `[i*s, (i+1)*s)`.
pub fn balanced_kpartite(k: usize, part_size: usize) -> Result<(TwoColoring, Partition)> {
    if k < 2 {
        return Err(Error::Domain("k must be at least 2".into()));
    }
    if part_size < 1 {
        return Err(Error::Domain("part_size must be at least 1".into()));
    }
    let n = k * part_size;
    let mut b = ColoringBuilder::new(n)?;
    let mut parts = Vec::with_capacity(k);
    for block in 0..k {
        let lo = block * part_size;
        let hi = lo + part_size;
        let members: Vec<usize> = (lo..hi).collect();
        parts.push(VertexSet::from_members(n, &members)?);
        for i in lo..hi {
            for j in (i + 1)..hi {
                b.set_blue(i, j)?;
            }
        }
    }
    Ok((b.finish(), Partition::new(n, parts)?))
}

/// Seeded p-random coloring: each edge is blue independently with
/// probability `p`, red otherwise.
///
/// Determinism contract: edges `(i, j)` with `i < j` are visited in
/// lexicographic order, one SplitMix64 draw per edge, and the edge is blue
/// iff `draw / 2^64 < p` (decided exactly in integers). The same
/// `(n, p, seed)` always produces the same coloring on every platform.
pub fn random_coloring(n: usize, p: Rat, seed: u64) -> Result<TwoColoring> {
    if n < 1 {
        return Err(Error::Domain("vertex count must be at least 1".into()));
    }
    if p <= Rat::zero() || p >= Rat::one() {
        return Err(Error::Domain(format!(
            "p must lie strictly between 0 and 1, got {}/{}",
            p.numer(),
            p.denom()
        )));
    }
    let num = *p.numer() as u64;
    let den = *p.denom() as u64;
    let mut g = SplitMix64::new(seed);
    let mut b = ColoringBuilder::new(n)?;
    for i in 0..n {
        for j in (i + 1)..n {
            if g.next_bernoulli(num, den) {
                b.set_blue(i, j)?;
            }
        }
    }
    Ok(b.finish())
}

/// The k-partite lower bound `k(n + k - 1) + 1`.
pub fn goodness_bound(k: usize, n: usize) -> usize {
    k * (n + k - 1) + 1
}

/// The random lower bound `(c^{1/k} + 1)^k * n`.
pub fn random_bound(c: Rat, k: usize, n: usize) -> Result<f64> {
    let cf = rat_to_f64(&c);
    if !(cf > 0.0 && cf <= 1.0) {
        return Err(Error::Domain("c must lie in (0, 1]".into()));
    }
    if k < 2 {
        return Err(Error::Domain("k must be at least 2".into()));
    }
    Ok((cf.powf(1.0 / k as f64) + 1.0).powi(k as i32) * n as f64)
}
