//! Exact enumeration of monochromatic cliques, their extension counts, and
//! book statistics.
//!
//! A *book* is a monochromatic k-clique (the spine) together with the
//! vertices joined to all of it in the same color (its pages). The page
//! count of a spine equals the size of the intersection of its vertices'
//! color-neighborhoods, which the enumeration carries along for free.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bitset::{words_for, VertexSet};
use crate::coloring::{Color, TwoColoring};
use crate::error::{Error, Result};
use crate::rat::{rat_pow, Rat};
use num::{One, Zero};

// ============================================================================
// Color view: materialized neighborhood rows for one color
// ============================================================================

/// Neighborhood rows of one color, materialized once per operation so the
/// red side costs the same as the blue side.
pub(crate) struct ColorView {
    n: usize,
    w: usize,
    rows: Vec<u64>,
}

impl ColorView {
    pub(crate) fn new(c: &TwoColoring, color: Color) -> ColorView {
        let n = c.n();
        let w = c.words_per_row();
        let mut rows = vec![0u64; n * w];
        for v in 0..n {
            c.neighbors_into(v, color, &mut rows[v * w..(v + 1) * w]);
        }
        ColorView { n, w, rows }
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.w..(v + 1) * self.w]
    }

    #[inline]
    fn n(&self) -> usize {
        self.n
    }
}

#[inline]
fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn intersect_into(a: &[u64], b: &[u64], out: &mut [u64]) {
    for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
        *o = x & y;
    }
}

/// Iterates set bits of `words` with index `> from` (pass `from = usize::MAX`
/// wrapped as start sentinel via `from_opt`), calling `f` for each.
#[inline]
fn for_each_bit_above(words: &[u64], above: Option<usize>, mut f: impl FnMut(usize)) {
    let start_word = match above {
        None => 0,
        Some(a) => a >> 6,
    };
    for wi in start_word..words.len() {
        let mut w = words[wi];
        if let Some(a) = above {
            if wi == a >> 6 {
                let sh = (a & 63) + 1;
                w = if sh == 64 { 0 } else { w & !((1u64 << sh) - 1) };
            }
        }
        let base = wi << 6;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            f(base + b);
        }
    }
}

// ============================================================================
// Spine enumeration
// ============================================================================

/// Visits every monochromatic k-clique with first vertex `v0`, in
/// lexicographic spine order, passing the sorted spine and its page count.
fn visit_spines_from(
    view: &ColorView,
    k: usize,
    v0: usize,
    f: &mut impl FnMut(&[usize], usize),
) {
    let w = view.w;
    let mut spine = Vec::with_capacity(k);
    spine.push(v0);
    if k == 1 {
        f(&spine, popcount(view.row(v0)));
        return;
    }
    // commons[d] is the intersection of the neighborhoods of spine[0..=d].
    let mut commons = vec![0u64; k * w];
    commons[..w].copy_from_slice(view.row(v0));
    rec(view, k, &mut spine, &mut commons, f);

    fn rec(
        view: &ColorView,
        k: usize,
        spine: &mut Vec<usize>,
        commons: &mut [u64],
        f: &mut impl FnMut(&[usize], usize),
    ) {
        let w = view.w;
        let depth = spine.len();
        let last = *spine.last().unwrap();
        let parent = commons[(depth - 1) * w..depth * w].to_vec();
        let mut candidates = Vec::new();
        for_each_bit_above(&parent, Some(last), |v| candidates.push(v));
        // Not enough candidates left to complete a spine.
        if candidates.len() + depth < k {
            return;
        }
        for v in candidates {
            let (head, tail) = commons.split_at_mut(depth * w);
            let parent_row = &head[(depth - 1) * w..depth * w];
            intersect_into(parent_row, view.row(v), &mut tail[..w]);
            spine.push(v);
            if spine.len() == k {
                f(spine, popcount(&tail[..w]));
            } else {
                rec(view, k, spine, commons, f);
            }
            spine.pop();
        }
    }
}

/// Parallel map-reduce over all monochromatic k-cliques.
///
/// Work splits on the first spine vertex; `merge` must be associative and
/// commutative so the result is independent of scheduling.
fn spine_map_reduce<T: Send>(
    c: &TwoColoring,
    color: Color,
    k: usize,
    identity: impl Fn() -> T + Sync + Send,
    visit: impl Fn(&mut T, &[usize], usize) + Sync + Send,
    merge: impl Fn(T, T) -> T + Sync + Send,
) -> Result<T> {
    if k < 1 || k > c.n() {
        return Err(Error::Domain(format!(
            "spine size k = {k} out of range for n = {}",
            c.n()
        )));
    }
    let view = ColorView::new(c, color);
    let out = (0..c.n())
        .into_par_iter()
        .map(|v0| {
            let mut acc = identity();
            visit_spines_from(&view, k, v0, &mut |spine, pages| {
                visit(&mut acc, spine, pages)
            });
            acc
        })
        .reduce(&identity, &merge);
    Ok(out)
}

// ============================================================================
// Clique counting (degeneracy-ordered)
// ============================================================================

/// Exact number of monochromatic k-cliques of `color`.
///
/// Counts by vertex-ordered recursion over bitset candidate intersections,
/// after a degeneracy-ordering pre-pass on the color graph.
pub fn count_cliques(c: &TwoColoring, color: Color, k: usize) -> Result<u64> {
    let n = c.n();
    if k < 1 || k > n {
        return Err(Error::Domain(format!(
            "clique size k = {k} out of range for n = {n}"
        )));
    }
    if k == 1 {
        return Ok(n as u64);
    }
    let view = ColorView::new(c, color);
    let order = degeneracy_order(&view);
    // Relabel so that position in the degeneracy order is the vertex id;
    // then "candidates after the current vertex" is a cheap mask.
    let w = words_for(n);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut rows = vec![0u64; n * w];
    for v in 0..n {
        let pv = pos[v];
        for_each_bit_above(view.row(v), None, |u| {
            let pu = pos[u];
            rows[pv * w + (pu >> 6)] |= 1u64 << (pu & 63);
        });
    }
    let relabeled = ColorView { n, w, rows };

    let total: u64 = (0..n)
        .into_par_iter()
        .map(|v0| {
            let mut above = vec![0u64; w];
            bits_above_into(v0, n, &mut above);
            let mut cand = vec![0u64; w];
            intersect_into(relabeled.row(v0), &above, &mut cand);
            count_rec(&relabeled, &cand, k - 1)
        })
        .sum();
    Ok(total)
}

/// Counts `depth`-cliques inside `cand` (every member adjacent to the
/// already-fixed prefix), extending only to higher-numbered vertices.
fn count_rec(view: &ColorView, cand: &[u64], depth: usize) -> u64 {
    if depth == 1 {
        return popcount(cand) as u64;
    }
    let w = view.w;
    let mut total = 0u64;
    let mut members = Vec::new();
    for_each_bit_above(cand, None, |v| members.push(v));
    if members.len() < depth {
        return 0;
    }
    let mut next = vec![0u64; w];
    for (i, &v) in members.iter().enumerate() {
        if members.len() - i < depth {
            break;
        }
        intersect_into(cand, view.row(v), &mut next);
        // Restrict to candidates above v.
        let mut above = vec![0u64; w];
        bits_above_into(v, view.n(), &mut above);
        for (x, a) in next.iter_mut().zip(&above) {
            *x &= a;
        }
        total += count_rec(view, &next, depth - 1);
    }
    total
}

#[inline]
fn bits_above_into(v: usize, n: usize, out: &mut [u64]) {
    out.fill(0);
    for (wi, word) in out.iter_mut().enumerate() {
        let lo = wi << 6;
        let hi = lo + 63;
        if hi <= v {
            continue;
        }
        let mut m = u64::MAX;
        if lo <= v {
            let sh = (v - lo) + 1;
            m = if sh == 64 { 0 } else { m & !((1u64 << sh) - 1) };
        }
        // Clear padding beyond n.
        if lo + 64 > n {
            let rem = n - lo;
            m &= if rem == 64 { u64::MAX } else { (1u64 << rem) - 1 };
        }
        *word = m;
    }
}

/// Smallest-last (degeneracy) elimination order of the color graph.
fn degeneracy_order(view: &ColorView) -> Vec<usize> {
    let n = view.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| popcount(view.row(v))).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        alive[v] = false;
        order.push(v);
        for_each_bit_above(view.row(v), None, |u| {
            if alive[u] {
                deg[u] -= 1;
            }
        });
    }
    order
}

// ============================================================================
// Extension sets, spectra, and book reports
// ============================================================================

/// A monochromatic book: spine plus page count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BookReport {
    pub color: Color,
    pub k: usize,
    /// Sorted spine vertices; they span a monochromatic k-clique.
    pub spine: Vec<usize>,
    /// Number of common same-color neighbors of the spine.
    pub pages: usize,
}

/// The multiset of extension counts over all monochromatic k-cliques of one
/// color: `histogram[pages]` spines have exactly `pages` extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub color: Color,
    pub k: usize,
    pub n: usize,
    pub histogram: BTreeMap<usize, u64>,
    pub total_spines: u64,
}

impl Spectrum {
    /// Sum of extension counts over all spines; equals `(k+1)` times the
    /// number of monochromatic (k+1)-cliques.
    pub fn sum_ext(&self) -> u128 {
        self.histogram
            .iter()
            .map(|(&p, &m)| p as u128 * m as u128)
            .sum()
    }

    /// Sum of `C(ext, 2)` over all spines; equals the number of
    /// monochromatic `K_{k+2}`-minus-an-edge copies (spine + two pages).
    pub fn sum_ext_choose2(&self) -> u128 {
        self.histogram
            .iter()
            .map(|(&p, &m)| (p as u128 * (p as u128).saturating_sub(1) / 2) * m as u128)
            .sum()
    }

    pub fn max_pages(&self) -> Option<usize> {
        self.histogram.keys().next_back().copied()
    }

    /// Mean page count, exact.
    pub fn mean_pages(&self) -> Option<Rat> {
        if self.total_spines == 0 {
            return None;
        }
        Some(Rat::new(self.sum_ext() as i128, self.total_spines as i128))
    }

    /// Number of spines with at least `threshold` pages (exact compare).
    pub fn count_at_least(&self, threshold: &Rat) -> u64 {
        self.histogram
            .iter()
            .filter(|(&p, _)| Rat::from_integer(p as i128) >= *threshold)
            .map(|(_, &m)| m)
            .sum()
    }
}

/// Common same-color neighbors of a monochromatic spine, spine excluded.
pub fn extensions(c: &TwoColoring, spine: &[usize], color: Color) -> Result<VertexSet> {
    if spine.is_empty() {
        return Err(Error::Precondition("spine must be nonempty".into()));
    }
    for &v in spine {
        if v >= c.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: c.n() });
        }
    }
    for (i, &u) in spine.iter().enumerate() {
        for &v in &spine[i + 1..] {
            if u == v {
                return Err(Error::Precondition(format!(
                    "spine repeats vertex {u}"
                )));
            }
            if !c.has_edge(u, v, color) {
                return Err(Error::NotMonochromatic);
            }
        }
    }
    let mut acc = c.neighbors(spine[0], color)?;
    for &v in &spine[1..] {
        acc = acc.intersection(&c.neighbors(v, color)?);
    }
    Ok(acc)
}

/// Full histogram of extension counts over all monochromatic k-cliques.
pub fn spectrum(c: &TwoColoring, color: Color, k: usize) -> Result<Spectrum> {
    let hist = spine_map_reduce(
        c,
        color,
        k,
        BTreeMap::<usize, u64>::new,
        |acc, _spine, pages| *acc.entry(pages).or_insert(0) += 1,
        |mut a, b| {
            for (p, m) in b {
                *a.entry(p).or_insert(0) += m;
            }
            a
        },
    )?;
    let total = hist.values().sum();
    Ok(Spectrum {
        color,
        k,
        n: c.n(),
        histogram: hist,
        total_spines: total,
    })
}

/// The spine with the most pages; ties broken by lexicographically smallest
/// spine. Errors if no monochromatic k-clique exists.
pub fn max_book(c: &TwoColoring, color: Color, k: usize) -> Result<BookReport> {
    let best = spine_map_reduce(
        c,
        color,
        k,
        || None::<(usize, Vec<usize>)>,
        |acc, spine, pages| {
            let better = match acc {
                None => true,
                Some((bp, bs)) => pages > *bp || (pages == *bp && spine < bs.as_slice()),
            };
            if better {
                *acc = Some((pages, spine.to_vec()));
            }
        },
        |a, b| match (a, b) {
            (None, x) | (x, None) => x,
            (Some((pa, sa)), Some((pb, sb))) => {
                if pa > pb || (pa == pb && sa <= sb) {
                    Some((pa, sa))
                } else {
                    Some((pb, sb))
                }
            }
        },
    )?;
    match best {
        Some((pages, spine)) => Ok(BookReport {
            color,
            k,
            spine,
            pages,
        }),
        None => Err(Error::NoSpine {
            color: color.name(),
            k,
        }),
    }
}

// ============================================================================
// Many-books verdicts
// ============================================================================

/// Which extension thresholds a many-books check uses.
#[derive(Clone, Debug)]
pub enum ManyBooksThresholds {
    /// Red spines need `(c/k + gamma) N` pages, blue spines `(1/k + gamma) N`.
    Goodness { c: Rat },
    /// Random-regime variant: red spines need `((1-p)^k + gamma) N` pages,
    /// blue spines `(p^k + gamma) N`.
    Quasirandom { p: Rat },
}

/// Exact qualifying counts for a many-books check, plus the verdict.
#[derive(Clone, Debug)]
pub struct ManyBooksReport {
    pub k: usize,
    pub n: usize,
    pub gamma: Rat,
    pub variant: bool,
    /// Page threshold a red spine must meet.
    pub red_threshold: Rat,
    /// Page threshold a blue spine must meet.
    pub blue_threshold: Rat,
    /// For the variant, the thresholds under the `c`-normalization
    /// (`(c/k + gamma) N` and `(1/k + gamma) N` with `c = ((1-p)/p)^k`);
    /// informational only.
    pub statement_red_threshold: Option<Rat>,
    pub statement_blue_threshold: Option<Rat>,
    pub red_qualifying: u64,
    pub blue_qualifying: u64,
    /// The bar both qualifying counts are measured against: `gamma * N^k`.
    pub needed: Rat,
    pub verdict: bool,
}

/// Counts monochromatic k-cliques whose page counts clear the thresholds
/// and decides whether either color reaches `gamma N^k` of them.
pub fn many_books(
    c: &TwoColoring,
    thresholds: &ManyBooksThresholds,
    gamma: Rat,
    k: usize,
) -> Result<ManyBooksReport> {
    if gamma <= Rat::zero() {
        return Err(Error::Domain("gamma must be positive".into()));
    }
    let n = c.n();
    let n_rat = Rat::from_integer(n as i128);
    let kk = Rat::from_integer(k as i128);
    let (variant, red_thr, blue_thr, stmt_red, stmt_blue) = match thresholds {
        ManyBooksThresholds::Goodness { c: cc } => {
            if *cc <= Rat::zero() || *cc > Rat::one() {
                return Err(Error::Domain("c must lie in (0, 1]".into()));
            }
            let red = (cc / &kk + &gamma) * &n_rat;
            let blue = (Rat::one() / &kk + &gamma) * &n_rat;
            (false, red, blue, None, None)
        }
        ManyBooksThresholds::Quasirandom { p } => {
            if *p <= Rat::zero() || *p >= Rat::one() {
                return Err(Error::Domain("p must lie strictly between 0 and 1".into()));
            }
            let q = Rat::one() - p;
            let red = (rat_pow(&q, k as u32) + &gamma) * &n_rat;
            let blue = (rat_pow(p, k as u32) + &gamma) * &n_rat;
            let cc = rat_pow(&(q.clone() / p), k as u32);
            let stmt_red = (cc / &kk + &gamma) * &n_rat;
            let stmt_blue = (Rat::one() / &kk + &gamma) * &n_rat;
            (true, red, blue, Some(stmt_red), Some(stmt_blue))
        }
    };

    let red_spec = spectrum(c, Color::Red, k)?;
    let blue_spec = spectrum(c, Color::Blue, k)?;
    let red_qualifying = red_spec.count_at_least(&red_thr);
    let blue_qualifying = blue_spec.count_at_least(&blue_thr);

    let mut n_pow_k = Rat::one();
    for _ in 0..k {
        n_pow_k *= &n_rat;
    }
    let needed = gamma.clone() * n_pow_k;
    let verdict = Rat::from_integer(red_qualifying as i128) >= needed
        || Rat::from_integer(blue_qualifying as i128) >= needed;

    Ok(ManyBooksReport {
        k,
        n,
        gamma,
        variant,
        red_threshold: red_thr,
        blue_threshold: blue_thr,
        statement_red_threshold: stmt_red,
        statement_blue_threshold: stmt_blue,
        red_qualifying,
        blue_qualifying,
        needed,
        verdict,
    })
}

// ============================================================================
// Common-neighbor tuples
// ============================================================================

/// Hard cap on the number of k-subsets the exhaustive tuple count visits.
pub const TUPLE_ENUMERATION_CAP: u128 = 100_000_000;

/// Number of k-subsets of `B` whose members have at least `zeta * |A|`
/// common `color`-neighbors inside `A`. Exhaustive over all
/// `C(|B|, k)` subsets; errors out above [`TUPLE_ENUMERATION_CAP`].
pub fn common_neighbor_tuples(
    c: &TwoColoring,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    color: Color,
    zeta: Rat,
) -> Result<u64> {
    if !a.is_disjoint(b) {
        return Err(Error::Precondition("A and B must be disjoint".into()));
    }
    let b_members = b.to_vec();
    if k > b_members.len() {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds |B| = {}",
            b_members.len()
        )));
    }
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let work = binomial_u128(b_members.len() as u128, k as u128);
    if work > TUPLE_ENUMERATION_CAP {
        return Err(Error::TooLarge(format!(
            "C({}, {k}) = {work} k-subsets exceeds the exhaustive cap of {TUPLE_ENUMERATION_CAP}",
            b_members.len()
        )));
    }
    // Threshold: common >= zeta * |A|, compared exactly.
    let need = zeta * Rat::from_integer(a.len() as i128);
    let view = ColorView::new(c, color);
    let w = c.words_per_row();
    let a_words: Vec<u64> = a.words().to_vec();

    // Intersections only shrink, so a prefix already below the threshold
    // rules out all of its supersets.
    fn rec(
        view: &ColorView,
        members: &[usize],
        from: usize,
        remaining: usize,
        common: &[u64],
        need: &Rat,
        w: usize,
    ) -> u64 {
        if Rat::from_integer(popcount(common) as i128) < *need {
            return 0;
        }
        if remaining == 0 {
            return 1;
        }
        let mut total = 0u64;
        let mut next = vec![0u64; w];
        for (i, &v) in members.iter().enumerate().skip(from) {
            if members.len() - i < remaining {
                break;
            }
            intersect_into(common, view.row(v), &mut next);
            total += rec(view, members, i + 1, remaining - 1, &next, need, w);
        }
        total
    }

    Ok(rec(&view, &b_members, 0, k, &a_words, &need, w))
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

// ============================================================================
// Markov floor check
// ============================================================================

/// Always-true spectrum invariant: if the mean page count is at least
/// `xi * N` over at least `kappa * N^k` spines, then at least
/// `(xi - nu) * kappa * N^k` spines have at least `nu * N` pages.
///
/// Preconditions are checked and reported distinctly; under them a `false`
/// return indicates an engine bug.
pub fn markov_floor_check(s: &Spectrum, xi: Rat, nu: Rat, kappa: Rat) -> Result<bool> {
    if nu >= xi {
        return Err(Error::Precondition(format!(
            "nu must be smaller than xi (nu = {}/{}, xi = {}/{})",
            nu.numer(),
            nu.denom(),
            xi.numer(),
            xi.denom()
        )));
    }
    if s.total_spines == 0 {
        return Err(Error::Precondition("spectrum is empty".into()));
    }
    let n_rat = Rat::from_integer(s.n as i128);
    let mean = s.mean_pages().expect("nonempty spectrum");
    if mean < xi.clone() * &n_rat {
        return Err(Error::Precondition(format!(
            "mean pages {}/{} is below xi * N",
            mean.numer(),
            mean.denom()
        )));
    }
    let n_pow_k = checked_pow_rat(s.n, s.k)?;
    let floor_spines = kappa.clone() * &n_pow_k;
    if Rat::from_integer(s.total_spines as i128) < floor_spines {
        return Err(Error::Precondition(
            "total spines fall below kappa * N^k".into(),
        ));
    }
    let threshold = nu.clone() * n_rat;
    let have = s.count_at_least(&threshold);
    let need = (xi - nu) * kappa * n_pow_k;
    Ok(Rat::from_integer(have as i128) >= need)
}

fn checked_pow_rat(n: usize, k: usize) -> Result<Rat> {
    let mut acc: i128 = 1;
    for _ in 0..k {
        acc = acc
            .checked_mul(n as i128)
            .ok_or_else(|| Error::TooLarge(format!("N^k overflows for N = {n}, k = {k}")))?;
    }
    Ok(Rat::from_integer(acc))
}

// ============================================================================
// Labeled counts vs density-product prediction
// ============================================================================

/// Exact labeled clique count across an ordered family of parts, together
/// with the density-product prediction interval.
#[derive(Clone, Debug)]
pub struct CountingReport {
    pub k: usize,
    /// Labeled monochromatic k-cliques with the i-th vertex in the i-th part.
    pub exact: u128,
    pub predicted_lo: f64,
    pub predicted_hi: f64,
    /// Whether `exact` lies in `[predicted_lo, predicted_hi]`. Recorded, not
    /// asserted: the prediction assumes regularity, which is a hypothesis.
    pub contained: bool,
    /// Pairwise densities `d(V_i, V_j)` for `i < j`, as floats.
    pub densities: Vec<f64>,
}

/// Compares the exact labeled count of k-cliques with the i-th vertex in
/// `parts[i]` against the density-product interval
/// `(prod d(V_i, V_j) +- eps * C(k,2)) * prod |V_i|`.
pub fn counting_report(
    c: &TwoColoring,
    parts: &[VertexSet],
    color: Color,
    eps: f64,
) -> Result<CountingReport> {
    let k = parts.len();
    if k == 0 {
        return Err(Error::Precondition("at least one part required".into()));
    }
    for p in parts {
        if p.is_empty() {
            return Err(Error::EmptySet { what: "part" });
        }
    }
    let view = ColorView::new(c, color);
    let w = c.words_per_row();

    // Exact labeled count by nested intersection; adjacency forces
    // distinctness, so no separate check is needed.
    fn rec(
        view: &ColorView,
        parts: &[VertexSet],
        depth: usize,
        common: &[u64],
        w: usize,
    ) -> u128 {
        if depth == parts.len() {
            return 1;
        }
        let mut total = 0u128;
        let mut next = vec![0u64; w];
        for v in parts[depth].iter() {
            if depth > 0 {
                if (common[v >> 6] >> (v & 63)) & 1 == 0 {
                    continue;
                }
                intersect_into(common, view.row(v), &mut next);
            } else {
                next.copy_from_slice(view.row(v));
            }
            total += rec(view, parts, depth + 1, &next, w);
        }
        total
    }
    let exact = rec(&view, parts, 0, &vec![u64::MAX; w], w);

    let mut dens_product = 1.0f64;
    let mut densities = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let d = c.density(&parts[i], &parts[j], color)?;
            let df = *d.numer() as f64 / *d.denom() as f64;
            densities.push(df);
            dens_product *= df;
        }
    }
    let size_product: f64 = parts.iter().map(|p| p.len() as f64).product();
    let slack = eps * (k * (k - 1) / 2) as f64;
    let predicted_lo = ((dens_product - slack) * size_product).max(0.0);
    let predicted_hi = (dens_product + slack) * size_product;
    let exact_f = exact as f64;
    let contained = exact_f >= predicted_lo && exact_f <= predicted_hi;
    Ok(CountingReport {
        k,
        exact,
        predicted_lo,
        predicted_hi,
        contained,
        densities,
    })
}

// ============================================================================
// Tests
// ============================================================================
