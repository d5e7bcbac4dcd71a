//! Quasirandomness diagnostics: deviation-witness search, the extension
//! variance identity, regularity refutation, blocked configurations, and
//! k-partite edit distance.
//!
//! Search semantics are asymmetric by design: a reported violation always
//! carries an exact witness and is sound; a clean bill of health is a
//! proof only in exhaustive mode.

use rayon::prelude::*;

use crate::bitset::VertexSet;
use crate::books::{count_cliques, spectrum};
use crate::coloring::{Color, TwoColoring};
use crate::construct::Partition;
use crate::error::{Error, Result};
use crate::rat::{rat_pow, Rat};
use crate::rng::SplitMix64;
use num::{One, Signed, Zero};

// ============================================================================
// Deviation witnesses ((p, theta)-quasirandomness)
// ============================================================================

/// How a deviation report was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiMethod {
    Exhaustive,
    Sampled,
}

/// Verdict of a deviation search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiVerdict {
    /// The witness deviation exceeds `theta N^2`; sound in every mode.
    Violated,
    /// Exhaustive mode only: no disjoint pair deviates beyond `theta N^2`.
    Quasirandom,
    /// Sampled mode: nothing found, which proves nothing.
    NoViolationFound,
}

/// Worst deviation witness found for `|e_B(X, Y) - p |X||Y||`.
#[derive(Clone, Debug)]
pub struct QuasiReport {
    pub p: Rat,
    pub theta: Rat,
    pub x: VertexSet,
    pub y: VertexSet,
    /// `e_B(X, Y)` for the witness pair.
    pub blue_pairs: usize,
    /// `|e_B(X, Y) - p |X||Y||`, exact.
    pub deviation: Rat,
    /// The bar: `theta N^2`.
    pub bound: Rat,
    pub method: QuasiMethod,
    pub probes: u64,
    pub verdict: QuasiVerdict,
}

fn check_p_theta(p: &Rat, theta: &Rat) -> Result<()> {
    if *p <= Rat::zero() || *p >= Rat::one() {
        return Err(Error::Domain("p must lie strictly between 0 and 1".into()));
    }
    if *theta <= Rat::zero() {
        return Err(Error::Domain("theta must be positive".into()));
    }
    Ok(())
}

/// Maximum cap for the exhaustive deviation scan (3^n assignments).
pub const QUASI_EXHAUSTIVE_MAX_N: usize = 18;

/// Exact maximizer of `|e_B(X, Y) - p |X||Y||` over all disjoint pairs
/// `(X, Y)`, by ternary assignment of each vertex to X, Y, or neither.
/// Definitive verdict; capped at `n <= 18`.
pub fn quasi_exhaustive(c: &TwoColoring, p: Rat, theta: Rat) -> Result<QuasiReport> {
    check_p_theta(&p, &theta)?;
    let n = c.n();
    if n > QUASI_EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge(format!(
            "exhaustive deviation scan is capped at n = {QUASI_EXHAUSTIVE_MAX_N} \
             (3^n assignments); use the sampled mode for n = {n}"
        )));
    }
    let num = *p.numer();
    let den = *p.denom();
    let rows: Vec<u64> = (0..n).map(|v| c.blue_row(v)[0]).collect();

    struct State {
        rows: Vec<u64>,
        n: usize,
        num: i128,
        den: i128,
        // Best so far: deviation numerator over the fixed denominator `den`.
        best_dev_num: i128,
        best: (u64, u64, usize),
        leaves: u64,
    }

    // Assign vertices one at a time; the swap symmetry (X, Y) ~ (Y, X) is
    // broken by forcing the lowest-indexed used vertex into X.
    fn rec(s: &mut State, v: usize, x: u64, y: u64, cnt: usize, any: bool) {
        if v == s.n {
            s.leaves += 1;
            let sx = x.count_ones() as i128;
            let sy = y.count_ones() as i128;
            let dev_num = (cnt as i128 * s.den - s.num * sx * sy).abs();
            if dev_num > s.best_dev_num {
                s.best_dev_num = dev_num;
                s.best = (x, y, cnt);
            }
            return;
        }
        let row = s.rows[v];
        rec(s, v + 1, x, y, cnt, any);
        rec(
            s,
            v + 1,
            x | 1 << v,
            y,
            cnt + (row & y).count_ones() as usize,
            true,
        );
        if any {
            rec(
                s,
                v + 1,
                x,
                y | 1 << v,
                cnt + (row & x).count_ones() as usize,
            true,
            );
        }
    }

    let mut s = State {
        rows,
        n,
        num,
        den,
        best_dev_num: -1,
        best: (0, 0, 0),
        leaves: 0,
    };
    rec(&mut s, 0, 0, 0, 0, false);

    let (xm, ym, cnt) = s.best;
    let x = mask_to_set(n, xm);
    let y = mask_to_set(n, ym);
    let deviation = Rat::new(s.best_dev_num, den);
    let bound = theta.clone() * Rat::from_integer((n * n) as i128);
    let verdict = if deviation > bound {
        QuasiVerdict::Violated
    } else {
        QuasiVerdict::Quasirandom
    };
    Ok(QuasiReport {
        p,
        theta,
        x,
        y,
        blue_pairs: cnt,
        deviation,
        bound,
        method: QuasiMethod::Exhaustive,
        probes: s.leaves,
        verdict,
    })
}

fn mask_to_set(n: usize, mask: u64) -> VertexSet {
    let mut s = VertexSet::empty(n);
    for v in 0..n {
        if (mask >> v) & 1 == 1 {
            s.insert(v).expect("v < n");
        }
    }
    s
}

/// Seeded stochastic deviation search: random disjoint pairs refined by
/// greedy single-vertex hill climbing. The best deviation found is a lower
/// bound on the true maximum; `Violated` is sound, `NoViolationFound` is
/// not a proof.
pub fn quasi_sampled(
    c: &TwoColoring,
    p: Rat,
    theta: Rat,
    probes: u64,
    seed: u64,
) -> Result<QuasiReport> {
    check_p_theta(&p, &theta)?;
    if probes == 0 {
        return Err(Error::Precondition("probes must be at least 1".into()));
    }
    let n = c.n();
    let num = *p.numer();
    let den = *p.denom();

    // Probes run independently with per-probe derived streams; the merge is
    // deterministic (max deviation, lexicographic witness tiebreak).
    let best = (0..probes)
        .into_par_iter()
        .map(|i| {
            let mut gen = SplitMix64::derive(seed, i);
            hill_climb(c, num, den, &mut gen)
        })
        .reduce_with(|a, b| {
            // Higher deviation wins; ties keep the lexicographically
            // smallest (X, Y) witness.
            if b.0 > a.0 || (b.0 == a.0 && (&b.1, &b.2) < (&a.1, &a.2)) {
                b
            } else {
                a
            }
        })
        .expect("at least one probe");

    let (dev_num, xw, yw, cnt) = best;
    let x = VertexSet::from_words(n, xw);
    let y = VertexSet::from_words(n, yw);
    let deviation = Rat::new(dev_num, den);
    let bound = theta.clone() * Rat::from_integer((n * n) as i128);
    let verdict = if deviation > bound {
        QuasiVerdict::Violated
    } else {
        QuasiVerdict::NoViolationFound
    };
    Ok(QuasiReport {
        p,
        theta,
        x,
        y,
        blue_pairs: cnt,
        deviation,
        bound,
        method: QuasiMethod::Sampled,
        probes,
        verdict,
    })
}

type ClimbResult = (i128, Vec<u64>, Vec<u64>, usize);

/// One probe: random ternary start, then steepest-ascent single-vertex
/// moves (to X, to Y, or out) until the deviation stops improving.
fn hill_climb(c: &TwoColoring, num: i128, den: i128, gen: &mut SplitMix64) -> ClimbResult {
    let n = c.n();
    let w = c.words_per_row();
    let mut state = vec![0u8; n]; // 0 = out, 1 = X, 2 = Y
    let mut xw = vec![0u64; w];
    let mut yw = vec![0u64; w];
    for v in 0..n {
        match gen.next_below(3) {
            1 => {
                state[v] = 1;
                xw[v >> 6] |= 1 << (v & 63);
            }
            2 => {
                state[v] = 2;
                yw[v >> 6] |= 1 << (v & 63);
            }
            _ => {}
        }
    }
    let mut sx: i128 = state.iter().filter(|&&s| s == 1).count() as i128;
    let mut sy: i128 = state.iter().filter(|&&s| s == 2).count() as i128;
    let mut cnt: i128 = 0;
    for v in 0..n {
        if state[v] == 1 {
            cnt += count_and(c.blue_row(v), &yw) as i128;
        }
    }
    let dev = |cnt: i128, sx: i128, sy: i128| (cnt * den - num * sx * sy).abs();
    let mut cur = dev(cnt, sx, sy);

    loop {
        let mut best_gain = 0i128;
        let mut best_move: Option<(usize, u8, i128)> = None;
        for v in 0..n {
            let row = c.blue_row(v);
            let bx = count_and(row, &xw) as i128;
            let by = count_and(row, &yw) as i128;
            let s = state[v];
            // Contribution of v to cnt in each state.
            let (cnt_base, sx0, sy0) = match s {
                1 => (cnt - by, sx - 1, sy),
                2 => (cnt - bx, sx, sy - 1),
                _ => (cnt, sx, sy),
            };
            for target in 0u8..3 {
                if target == s {
                    continue;
                }
                let (ncnt, nsx, nsy) = match target {
                    1 => (cnt_base + by, sx0 + 1, sy0),
                    2 => (cnt_base + bx, sx0, sy0 + 1),
                    _ => (cnt_base, sx0, sy0),
                };
                let nd = dev(ncnt, nsx, nsy);
                if nd - cur > best_gain {
                    best_gain = nd - cur;
                    best_move = Some((v, target, ncnt));
                }
            }
        }
        match best_move {
            None => break,
            Some((v, target, ncnt)) => {
                let bit = 1u64 << (v & 63);
                match state[v] {
                    1 => {
                        xw[v >> 6] &= !bit;
                        sx -= 1;
                    }
                    2 => {
                        yw[v >> 6] &= !bit;
                        sy -= 1;
                    }
                    _ => {}
                }
                match target {
                    1 => {
                        xw[v >> 6] |= bit;
                        sx += 1;
                    }
                    2 => {
                        yw[v >> 6] |= bit;
                        sy += 1;
                    }
                    _ => {}
                }
                state[v] = target;
                cnt = ncnt;
                cur = dev(cnt, sx, sy);
            }
        }
    }
    (cur, xw, yw, cnt as usize)
}

#[inline]
fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

// ============================================================================
// Extension variance identity
// ============================================================================

/// Both evaluations of the extension variance
/// `E = sum over blue K_k of (ext_B(Q) - p^k N)^2`, which must agree
/// exactly for rational `p`.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub k: usize,
    pub n: usize,
    pub p: Rat,
    /// Number of blue k-cliques.
    pub b_k: u64,
    /// Number of blue (k+1)-cliques.
    pub b_k1: u64,
    /// Number of blue K_{k+2}-minus-an-edge copies (a spine plus an
    /// unordered pair of its extensions), counted by a pair-first route.
    pub b_k2e: u128,
    pub e_direct: Rat,
    pub e_identity: Rat,
    pub equal: bool,
    /// False for the float-p variant, which compares with tolerance.
    pub exact: bool,
}

const IDENTITY_MAX_N: usize = 60;
const IDENTITY_MAX_K: usize = 5;

fn check_identity_size(n: usize, k: usize) -> Result<()> {
    if n > IDENTITY_MAX_N || k > IDENTITY_MAX_K || k < 1 {
        return Err(Error::TooLarge(format!(
            "identity check supports n <= {IDENTITY_MAX_N} and 1 <= k <= {IDENTITY_MAX_K}, \
             got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// Counts copies of `K_{k+2}` minus an edge in `color`: pairs
/// `(Q, {u, v})` where `Q` is a monochromatic k-clique and `u != v` are
/// both joined to all of `Q` in `color` (the pair `{u, v}` itself may be
/// either color; that slot is the missing edge).
///
/// Pair-first route: for every unordered vertex pair, count the k-cliques
/// inside the common color-neighborhood. Independent of the spectrum
/// route `sum_Q C(ext(Q), 2)`.
pub fn count_clique_minus_edge(c: &TwoColoring, color: Color, k: usize) -> Result<u128> {
    let n = c.n();
    check_identity_size(n, k)?;
    let w = c.words_per_row();
    let mut row_u = vec![0u64; w];
    let mut row_v = vec![0u64; w];
    let mut rows = vec![0u64; n * w];
    for v in 0..n {
        c.neighbors_into(v, color, &mut rows[v * w..(v + 1) * w]);
    }
    let mut total: u128 = 0;
    let mut common = vec![0u64; w];
    for u in 0..n {
        row_u.copy_from_slice(&rows[u * w..(u + 1) * w]);
        for v in (u + 1)..n {
            row_v.copy_from_slice(&rows[v * w..(v + 1) * w]);
            for i in 0..w {
                common[i] = row_u[i] & row_v[i];
            }
            total += count_cliques_in_subset(&rows, n, w, &common, k);
        }
    }
    Ok(total)
}

/// Number of `k`-cliques of the row graph whose vertices all lie in
/// `subset`.
fn count_cliques_in_subset(rows: &[u64], n: usize, w: usize, subset: &[u64], k: usize) -> u128 {
    fn rec(rows: &[u64], w: usize, cand: &[u64], from: usize, depth: usize) -> u128 {
        if depth == 0 {
            return 1;
        }
        let mut total = 0u128;
        let mut next = vec![0u64; w];
        for wi in from >> 6..w {
            let mut word = cand[wi];
            if wi == from >> 6 {
                // Keep only bits at positions >= from within this word.
                let sh = from & 63;
                if sh > 0 {
                    word &= !((1u64 << sh) - 1);
                }
            }
            let base = wi << 6;
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                let v = base + b;
                for i in 0..w {
                    next[i] = cand[i] & rows[v * w + i];
                }
                total += rec(rows, w, &next, v + 1, depth - 1);
            }
        }
        total
    }
    let _ = n;
    rec(rows, w, subset, 0, k)
}

/// Computes `E` two ways and checks exact equality:
/// directly from the spectrum, and via
/// `E = 2 B(K_{k+2}-e) + (1 - 2 p^k N)(k+1) B(K_{k+1}) + p^{2k} N^2 B(K_k)`
/// with each count produced by an independent routine.
pub fn identity_check(c: &TwoColoring, k: usize, p: Rat) -> Result<IdentityReport> {
    let n = c.n();
    check_identity_size(n, k)?;
    if p <= Rat::zero() || p >= Rat::one() {
        return Err(Error::Domain("p must lie strictly between 0 and 1".into()));
    }
    let n_rat = Rat::from_integer(n as i128);
    let pk = rat_pow(&p, k as u32);
    let target = pk.clone() * &n_rat;

    let spec = spectrum(c, Color::Blue, k)?;
    let mut e_direct = Rat::zero();
    for (&pages, &mult) in &spec.histogram {
        let d = Rat::from_integer(pages as i128) - &target;
        e_direct += d.clone() * d * Rat::from_integer(mult as i128);
    }

    let b_k = count_cliques(c, Color::Blue, k)?;
    let b_k1 = if k + 1 <= n {
        count_cliques(c, Color::Blue, k + 1)?
    } else {
        0
    };
    let b_k2e = count_clique_minus_edge(c, Color::Blue, k)?;

    let e_identity = Rat::from_integer(2) * Rat::from_integer(b_k2e as i128)
        + (Rat::one() - Rat::from_integer(2) * pk * &n_rat)
            * Rat::from_integer((k + 1) as i128)
            * Rat::from_integer(b_k1 as i128)
        + rat_pow(&p, 2 * k as u32) * &n_rat * &n_rat * Rat::from_integer(b_k as i128);

    Ok(IdentityReport {
        k,
        n,
        p,
        b_k,
        b_k1,
        b_k2e,
        equal: e_direct == e_identity,
        e_direct,
        e_identity,
        exact: true,
    })
}

/// Float-p variant of [`identity_check`]: both sides evaluate in f64 and
/// `equal` holds up to a `1e-6` relative tolerance. Flagged `exact: false`.
pub fn identity_check_f64(c: &TwoColoring, k: usize, p: f64) -> Result<IdentityReport> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain("p must lie strictly between 0 and 1".into()));
    }
    let n = c.n();
    check_identity_size(n, k)?;
    let target = p.powi(k as i32) * n as f64;
    let spec = spectrum(c, Color::Blue, k)?;
    let e_direct: f64 = spec
        .histogram
        .iter()
        .map(|(&pages, &mult)| {
            let d = pages as f64 - target;
            d * d * mult as f64
        })
        .sum();
    let b_k = count_cliques(c, Color::Blue, k)?;
    let b_k1 = if k + 1 <= n {
        count_cliques(c, Color::Blue, k + 1)?
    } else {
        0
    };
    let b_k2e = count_clique_minus_edge(c, Color::Blue, k)?;
    let e_identity = 2.0 * b_k2e as f64
        + (1.0 - 2.0 * p.powi(k as i32) * n as f64) * (k + 1) as f64 * b_k1 as f64
        + p.powi(2 * k as i32) * (n * n) as f64 * b_k as f64;
    let equal = (e_direct - e_identity).abs() <= 1e-6 * (1.0 + e_identity.abs());
    // Rational fields carry the nearest dyadic approximations for reporting.
    let approx = |v: f64| Rat::approximate_float(v).unwrap_or_else(Rat::zero);
    Ok(IdentityReport {
        k,
        n,
        p: approx(p),
        b_k,
        b_k1,
        b_k2e,
        e_direct: approx(e_direct),
        e_identity: approx(e_identity),
        equal,
        exact: false,
    })
}

// ============================================================================
// Regularity witnesses
// ============================================================================

/// How a regularity check explored the subset space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularityMode {
    /// All sub-pairs; requires `|X|, |Y| <= 12`.
    Exhaustive,
    /// Seeded hill climbing on the density gap.
    Heuristic { probes: u64, seed: u64 },
}

/// Outcome of a regularity check on a pair `(X, Y)`.
#[derive(Clone, Debug)]
pub enum RegularityOutcome {
    /// No sub-pair with `|X'| >= eps |X|`, `|Y'| >= eps |Y|` and density
    /// gap above `eps` was found. A proof only in exhaustive mode.
    NotRefuted,
    /// Explicit witness sub-pair with `|d(X,Y) - d(X',Y')| > eps`.
    Refuted {
        x_sub: VertexSet,
        y_sub: VertexSet,
        gap: Rat,
    },
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub eps: Rat,
    pub exhaustive: bool,
    pub base_density: Rat,
    pub outcome: RegularityOutcome,
}

/// Cap on exhaustive regularity scans: both sides at most 12 members
/// (about 16.7M sub-pair combinations).
pub const REGULARITY_EXHAUSTIVE_MAX: usize = 12;

/// Searches for sub-pairs violating `|d(X,Y) - d(X',Y')| <= eps` subject
/// to `|X'| >= eps |X|`, `|Y'| >= eps |Y|`. `X` and `Y` may overlap (a set
/// is checked against itself for self-regularity).
pub fn regularity_witness(
    c: &TwoColoring,
    x: &VertexSet,
    y: &VertexSet,
    eps: Rat,
    color: Color,
    mode: RegularityMode,
) -> Result<RegularityReport> {
    if eps <= Rat::zero() || eps >= Rat::one() {
        return Err(Error::Domain("eps must lie strictly between 0 and 1".into()));
    }
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySet { what: "X and Y" });
    }
    let base = c.density(x, y, color)?;
    match mode {
        RegularityMode::Exhaustive => {
            let report = regularity_exhaustive(c, x, y, &eps, color, &base)?;
            Ok(RegularityReport {
                eps,
                exhaustive: true,
                base_density: base,
                outcome: report,
            })
        }
        RegularityMode::Heuristic { probes, seed } => {
            let outcome = regularity_heuristic(c, x, y, &eps, color, &base, probes, seed);
            Ok(RegularityReport {
                eps,
                exhaustive: false,
                base_density: base,
                outcome,
            })
        }
    }
}

fn regularity_exhaustive(
    c: &TwoColoring,
    x: &VertexSet,
    y: &VertexSet,
    eps: &Rat,
    color: Color,
    base: &Rat,
) -> Result<RegularityOutcome> {
    let xs = x.to_vec();
    let ys = y.to_vec();
    let (nx, ny) = (xs.len(), ys.len());
    if nx > REGULARITY_EXHAUSTIVE_MAX || ny > REGULARITY_EXHAUSTIVE_MAX {
        return Err(Error::TooLarge(format!(
            "exhaustive regularity scan is capped at |X|, |Y| <= {REGULARITY_EXHAUSTIVE_MAX}, \
             got {nx} and {ny}"
        )));
    }
    // edge[i][j] = 1 iff (xs[i], ys[j]) carries `color` and the vertices
    // differ; the ordered-pair convention drops the diagonal.
    let mut edge = vec![0u8; nx * ny];
    for i in 0..nx {
        for j in 0..ny {
            if xs[i] != ys[j] && c.has_edge(xs[i], ys[j], color) {
                edge[i * ny + j] = 1;
            }
        }
    }
    // cnt_from_y[j][xmask]: colored pairs from ys[j] into the X' selection.
    let xmasks = 1usize << nx;
    let mut cnt_from_y = vec![0u16; ny * xmasks];
    for j in 0..ny {
        let base_idx = j * xmasks;
        for m in 1..xmasks {
            let low = m.trailing_zeros() as usize;
            cnt_from_y[base_idx + m] =
                cnt_from_y[base_idx + (m & (m - 1))] + edge[low * ny + j] as u16;
        }
    }

    let min_x = min_size(eps, nx);
    let min_y = min_size(eps, ny);
    let base_num = *base.numer();
    let base_den = *base.denom();

    // gap(X', Y') = |base_num * sub - e * base_den| / (base_den * sub) with
    // sub = |X'||Y'|. Gaps compare by cross multiplication (base_den
    // cancels), so the scan stays in integers.
    let mut best: Option<(i128, i128, usize, usize)> = None; // (lhs, sub, xmask, ymask)
    let ymasks = 1usize << ny;
    let mut e_by_ymask = vec![0u32; ymasks];
    for xmask in 1..xmasks {
        let sx = (xmask as u64).count_ones() as usize;
        if sx < min_x {
            continue;
        }
        for ymask in 1..ymasks {
            let low = ymask.trailing_zeros() as usize;
            e_by_ymask[ymask] =
                e_by_ymask[ymask & (ymask - 1)] + cnt_from_y[low * xmasks + xmask] as u32;
        }
        for ymask in 1..ymasks {
            let sy = (ymask as u64).count_ones() as usize;
            if sy < min_y {
                continue;
            }
            let e = e_by_ymask[ymask] as i128;
            let sub = (sx * sy) as i128;
            let lhs = (base_num * sub - e * base_den).abs();
            let better = match best {
                None => true,
                Some((bl, bs, _, _)) => lhs * bs > bl * sub,
            };
            if better {
                best = Some((lhs, sub, xmask, ymask));
            }
        }
    }

    match best {
        Some((lhs, sub, xmask, ymask)) => {
            let gap = Rat::new(lhs, base_den * sub);
            if gap > *eps {
                let x_sub = pick_subset(&xs, xmask, c.n());
                let y_sub = pick_subset(&ys, ymask, c.n());
                Ok(RegularityOutcome::Refuted { x_sub, y_sub, gap })
            } else {
                Ok(RegularityOutcome::NotRefuted)
            }
        }
        None => Ok(RegularityOutcome::NotRefuted),
    }
}

/// Smallest admissible sub-size: the least integer `s` with `s >= eps * n`.
fn min_size(eps: &Rat, n: usize) -> usize {
    let num = *eps.numer() as u128 * n as u128;
    let den = *eps.denom() as u128;
    (num.div_ceil(den)).max(1) as usize
}

fn pick_subset(members: &[usize], mask: usize, n: usize) -> VertexSet {
    let chosen: Vec<usize> = members
        .iter()
        .enumerate()
        .filter(|(i, _)| (mask >> i) & 1 == 1)
        .map(|(_, &v)| v)
        .collect();
    VertexSet::from_members(n, &chosen).expect("members are in range")
}

#[allow(clippy::too_many_arguments)]
fn regularity_heuristic(
    c: &TwoColoring,
    x: &VertexSet,
    y: &VertexSet,
    eps: &Rat,
    color: Color,
    base: &Rat,
    probes: u64,
    seed: u64,
) -> RegularityOutcome {
    let xs = x.to_vec();
    let ys = y.to_vec();
    let min_x = min_size(eps, xs.len());
    let min_y = min_size(eps, ys.len());

    let best = (0..probes.max(1))
        .into_par_iter()
        .map(|i| {
            let mut gen = SplitMix64::derive(seed ^ 0x5E61_AB1E, i);
            climb_gap(c, &xs, &ys, min_x, min_y, color, base, &mut gen)
        })
        .reduce_with(|a, b| {
            // Largest gap wins; ties keep the lexicographically smallest
            // witness so the outcome is schedule-independent.
            if b.0 > a.0 || (b.0 == a.0 && (&b.1, &b.2) < (&a.1, &a.2)) {
                b
            } else {
                a
            }
        });

    match best {
        Some((gap, xv, yv)) if gap > *eps => RegularityOutcome::Refuted {
            x_sub: VertexSet::from_members(c.n(), &xv).expect("in range"),
            y_sub: VertexSet::from_members(c.n(), &yv).expect("in range"),
            gap,
        },
        _ => RegularityOutcome::NotRefuted,
    }
}

fn climb_gap(
    c: &TwoColoring,
    xs: &[usize],
    ys: &[usize],
    min_x: usize,
    min_y: usize,
    color: Color,
    base: &Rat,
    gen: &mut SplitMix64,
) -> (Rat, Vec<usize>, Vec<usize>) {
    let mut in_x: Vec<bool> = xs.iter().map(|_| gen.next_bernoulli(1, 2)).collect();
    let mut in_y: Vec<bool> = ys.iter().map(|_| gen.next_bernoulli(1, 2)).collect();
    // Enforce size floors by force-adding members.
    fix_floor(&mut in_x, min_x, gen);
    fix_floor(&mut in_y, min_y, gen);

    let gap_of = |in_x: &[bool], in_y: &[bool]| -> Rat {
        let xsub: Vec<usize> = xs
            .iter()
            .zip(in_x)
            .filter(|(_, &b)| b)
            .map(|(&v, _)| v)
            .collect();
        let ysub: Vec<usize> = ys
            .iter()
            .zip(in_y)
            .filter(|(_, &b)| b)
            .map(|(&v, _)| v)
            .collect();
        let mut e = 0i128;
        for &a in &xsub {
            for &b in &ysub {
                if a != b && c.has_edge(a, b, color) {
                    e += 1;
                }
            }
        }
        (base.clone() - Rat::new(e, (xsub.len() * ysub.len()) as i128)).abs()
    };

    let mut cur = gap_of(&in_x, &in_y);
    loop {
        let mut improved = false;
        for (side, min) in [(0usize, min_x), (1, min_y)] {
            let len = if side == 0 { in_x.len() } else { in_y.len() };
            for i in 0..len {
                let flags = if side == 0 { &mut in_x } else { &mut in_y };
                let count = flags.iter().filter(|&&b| b).count();
                if flags[i] && count <= min {
                    continue;
                }
                flags[i] = !flags[i];
                let cand = gap_of(&in_x, &in_y);
                if cand > cur {
                    cur = cand;
                    improved = true;
                } else {
                    let flags = if side == 0 { &mut in_x } else { &mut in_y };
                    flags[i] = !flags[i];
                }
            }
        }
        if !improved {
            break;
        }
    }
    let xv: Vec<usize> = xs.iter().zip(&in_x).filter(|(_, &b)| b).map(|(&v, _)| v).collect();
    let yv: Vec<usize> = ys.iter().zip(&in_y).filter(|(_, &b)| b).map(|(&v, _)| v).collect();
    (cur, xv, yv)
}

fn fix_floor(flags: &mut [bool], min: usize, gen: &mut SplitMix64) {
    let mut count = flags.iter().filter(|&&b| b).count();
    while count < min {
        let i = gen.next_below(flags.len() as u64) as usize;
        if !flags[i] {
            flags[i] = true;
            count += 1;
        }
    }
}

// ============================================================================
// Blocked configurations
// ============================================================================

/// Density and regularity evidence for one color pattern of a blocked
/// configuration.
#[derive(Clone, Debug)]
pub struct PatternCheck {
    /// Internal density of each set in the pattern's inner color.
    pub internal_densities: Vec<Rat>,
    /// Cross densities (i < j) in the pattern's outer color.
    pub cross_densities: Vec<Rat>,
    pub densities_ok: bool,
    /// Regularity refutation witness, if any check refuted.
    pub regularity_refuted: bool,
    /// Satisfied iff densities pass and no regularity check refuted. A
    /// passing verdict is evidence, not proof, unless all regularity
    /// checks ran exhaustively.
    pub verdict: bool,
}

#[derive(Clone, Debug)]
pub struct BlockedConfigReport {
    pub k: usize,
    pub eta: Rat,
    pub delta: Rat,
    pub sizes: Vec<usize>,
    /// All regularity checks ran in exhaustive mode.
    pub exhaustive: bool,
    pub red: PatternCheck,
    pub blue: PatternCheck,
}

impl BlockedConfigReport {
    /// "red-blocked", "blue-blocked", "red-and-blue-blocked", or "neither".
    pub fn pattern(&self) -> &'static str {
        match (self.red.verdict, self.blue.verdict) {
            (true, true) => "red-and-blue-blocked",
            (true, false) => "red-blocked",
            (false, true) => "blue-blocked",
            (false, false) => "neither",
        }
    }
}

/// Checks the blocked-configuration predicate for both color patterns:
/// every set self-regular with internal density at least `delta` in the
/// inner color, every cross pair regular with density at least `delta` in
/// the outer color. Regularity runs exhaustively when every set has at
/// most 12 members, else heuristically.
pub fn blocked_config_check(
    c: &TwoColoring,
    sets: &[VertexSet],
    eta: Rat,
    delta: Rat,
) -> Result<BlockedConfigReport> {
    let k = sets.len();
    if k < 2 {
        return Err(Error::Precondition("need at least two sets".into()));
    }
    for s in sets {
        if s.is_empty() {
            return Err(Error::EmptySet { what: "configuration set" });
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if !sets[i].is_disjoint(&sets[j]) {
                return Err(Error::Precondition(format!(
                    "sets {i} and {j} overlap"
                )));
            }
        }
    }
    let exhaustive = sets.iter().all(|s| s.len() <= REGULARITY_EXHAUSTIVE_MAX);
    let mode = if exhaustive {
        RegularityMode::Exhaustive
    } else {
        RegularityMode::Heuristic {
            probes: 64,
            seed: 0xB10C_C0DE,
        }
    };

    let check_pattern = |inner: Color| -> Result<PatternCheck> {
        let outer = inner.opposite();
        let mut internal = Vec::with_capacity(k);
        let mut cross = Vec::new();
        let mut densities_ok = true;
        for s in sets {
            let d = c.density(s, s, inner)?;
            if d < delta {
                densities_ok = false;
            }
            internal.push(d);
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let d = c.density(&sets[i], &sets[j], outer)?;
                if d < delta {
                    densities_ok = false;
                }
                cross.push(d);
            }
        }
        // Self-regularity in the inner color; cross regularity in the
        // outer color (for disjoint pairs the two colors' density gaps
        // coincide, so the choice matters only for self-pairs).
        let mut refuted = false;
        for s in sets {
            let r = regularity_witness(c, s, s, eta.clone(), inner, mode)?;
            if matches!(r.outcome, RegularityOutcome::Refuted { .. }) {
                refuted = true;
            }
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let r = regularity_witness(c, &sets[i], &sets[j], eta.clone(), outer, mode)?;
                if matches!(r.outcome, RegularityOutcome::Refuted { .. }) {
                    refuted = true;
                }
            }
        }
        Ok(PatternCheck {
            internal_densities: internal,
            cross_densities: cross,
            densities_ok,
            regularity_refuted: refuted,
            verdict: densities_ok && !refuted,
        })
    };

    let red = check_pattern(Color::Red)?;
    let blue = check_pattern(Color::Blue)?;
    Ok(BlockedConfigReport {
        k,
        eta,
        delta,
        sizes: sets.iter().map(VertexSet::len).collect(),
        exhaustive,
        red,
        blue,
    })
}

// ============================================================================
// k-partite edit distance
// ============================================================================

/// Local search for the cheapest recoloring turning the red graph into a
/// balanced complete k-partite graph.
///
/// For a balanced partition the exact recolor count is
/// `#blue cross-part edges + #red intra-part edges`; the search minimizes
/// that over vertex swaps (and balance-preserving single moves) from a
/// greedy start plus seeded random restarts. The result is an upper bound
/// on the true distance.
pub fn kpartite_distance(
    c: &TwoColoring,
    k: usize,
    restarts: u64,
    seed: u64,
) -> Result<(u64, Partition)> {
    let n = c.n();
    if k < 2 {
        return Err(Error::Domain("k must be at least 2".into()));
    }
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }

    let assigns: Vec<Vec<u8>> = (0..=restarts)
        .into_par_iter()
        .map(|r| {
            if r == 0 {
                greedy_assignment(c, k)
            } else {
                let mut gen = SplitMix64::derive(seed, r);
                random_assignment(n, k, &mut gen)
            }
        })
        .collect();

    let best = assigns
        .into_par_iter()
        .map(|mut assign| {
            let cost = descend(c, k, &mut assign);
            (cost, assign)
        })
        .reduce_with(|a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("at least the greedy start");

    let (cost, assign) = best;
    let mut parts = vec![Vec::new(); k];
    for (v, &p) in assign.iter().enumerate() {
        parts[p as usize].push(v);
    }
    let parts: Result<Vec<VertexSet>> = parts
        .iter()
        .map(|m| VertexSet::from_members(n, m))
        .collect();
    Ok((cost, Partition::new(n, parts?)?))
}

/// Part capacities for a balanced partition: the first `n mod k` parts get
/// the extra vertex.
fn capacities(n: usize, k: usize) -> Vec<usize> {
    let q = n / k;
    let r = n % k;
    (0..k).map(|i| q + usize::from(i < r)).collect()
}

fn greedy_assignment(c: &TwoColoring, k: usize) -> Vec<u8> {
    let n = c.n();
    let caps = capacities(n, k);
    let mut counts = vec![0usize; k];
    let mut assign = vec![0u8; n];
    let w = c.words_per_row();
    let mut part_words = vec![vec![0u64; w]; k];
    for v in 0..n {
        let row = c.blue_row(v);
        // Cost of placing v in part P: red edges into P plus blue edges to
        // the other already-placed vertices.
        let mut best = (usize::MAX, 0usize);
        let placed: usize = counts.iter().sum();
        let blue_to_placed: usize = {
            let mut t = 0;
            for p in 0..k {
                t += count_and(row, &part_words[p]);
            }
            t
        };
        for p in 0..k {
            if counts[p] >= caps[p] {
                continue;
            }
            let blue_in_p = count_and(row, &part_words[p]);
            let red_in_p = counts[p] - blue_in_p;
            let cost = red_in_p + (blue_to_placed - blue_in_p);
            if cost < best.0 {
                best = (cost, p);
            }
        }
        let _ = placed;
        let p = best.1;
        assign[v] = p as u8;
        counts[p] += 1;
        part_words[p][v >> 6] |= 1 << (v & 63);
    }
    assign
}

fn random_assignment(n: usize, k: usize, gen: &mut SplitMix64) -> Vec<u8> {
    let caps = capacities(n, k);
    let mut slots: Vec<u8> = Vec::with_capacity(n);
    for (p, &cap) in caps.iter().enumerate() {
        slots.extend(std::iter::repeat(p as u8).take(cap));
    }
    // Fisher-Yates with the shared stream.
    for i in (1..n).rev() {
        let j = gen.next_below(i as u64 + 1) as usize;
        slots.swap(i, j);
    }
    slots
}

/// Steepest-descent on the recolor count; mutates `assign` to the local
/// minimum reached and returns its exact cost.
fn descend(c: &TwoColoring, k: usize, assign: &mut [u8]) -> u64 {
    let n = c.n();
    let w = c.words_per_row();
    let mut part_words = vec![vec![0u64; w]; k];
    let mut counts = vec![0usize; k];
    for (v, &p) in assign.iter().enumerate() {
        part_words[p as usize][v >> 6] |= 1 << (v & 63);
        counts[p as usize] += 1;
    }

    // S(P) = red_in(P) - blue_in(P); objective = total_blue + sum_P S(P).
    // Deltas below track sum_P S(P); the constant offset never changes.
    loop {
        let mut best_delta = 0i64;
        let mut best_move: Option<(usize, usize)> = None;
        let mut best_swap: Option<(usize, usize)> = None;

        // Balance-preserving single moves: from a larger part to a smaller.
        for v in 0..n {
            let a = assign[v] as usize;
            let row = c.blue_row(v);
            let b_va = count_and(row, &part_words[a]) as i64;
            let r_va = (counts[a] as i64 - 1) - b_va;
            for b in 0..k {
                if b == a || counts[a] != counts[b] + 1 {
                    continue;
                }
                let b_vb = count_and(row, &part_words[b]) as i64;
                let r_vb = counts[b] as i64 - b_vb;
                let delta = (r_vb - b_vb) - (r_va - b_va);
                if delta < best_delta {
                    best_delta = delta;
                    best_move = Some((v, b));
                    best_swap = None;
                }
            }
        }
        // Swaps between any two parts. With u leaving A and v leaving B,
        // all counts are taken against A\{u} and B\{v}.
        for u in 0..n {
            for v in (u + 1)..n {
                let (a, b) = (assign[u] as usize, assign[v] as usize);
                if a == b {
                    continue;
                }
                let uv_blue = c.is_blue(u, v) as i64;
                let row_u = c.blue_row(u);
                let row_v = c.blue_row(v);
                let size_a = counts[a] as i64 - 1; // |A \ u|
                let size_b = counts[b] as i64 - 1; // |B \ v|
                let b_ua = count_and(row_u, &part_words[a]) as i64;
                let r_ua = size_a - b_ua;
                let b_va = count_and(row_v, &part_words[a]) as i64 - uv_blue;
                let r_va = size_a - b_va;
                let b_vb = count_and(row_v, &part_words[b]) as i64;
                let r_vb = size_b - b_vb;
                let b_ub = count_and(row_u, &part_words[b]) as i64 - uv_blue;
                let r_ub = size_b - b_ub;
                let delta = (r_va - b_va) - (r_ua - b_ua) + (r_ub - b_ub) - (r_vb - b_vb);
                if delta < best_delta {
                    best_delta = delta;
                    best_swap = Some((u, v));
                    best_move = None;
                }
            }
        }

        if let Some((v, b)) = best_move {
            let a = assign[v] as usize;
            part_words[a][v >> 6] &= !(1 << (v & 63));
            part_words[b][v >> 6] |= 1 << (v & 63);
            counts[a] -= 1;
            counts[b] += 1;
            assign[v] = b as u8;
        } else if let Some((u, v)) = best_swap {
            let (a, b) = (assign[u] as usize, assign[v] as usize);
            part_words[a][u >> 6] &= !(1 << (u & 63));
            part_words[b][u >> 6] |= 1 << (u & 63);
            part_words[b][v >> 6] &= !(1 << (v & 63));
            part_words[a][v >> 6] |= 1 << (v & 63);
            assign.swap(u, v);
        } else {
            break;
        }
    }

    exact_cost(c, k, assign)
}

/// Recolor count of a partition, computed from scratch: blue cross-part
/// edges plus red intra-part edges.
fn exact_cost(c: &TwoColoring, k: usize, assign: &[u8]) -> u64 {
    let _ = k;
    let n = c.n();
    let mut cost = 0u64;
    for u in 0..n {
        for v in (u + 1)..n {
            let same = assign[u] == assign[v];
            let blue = c.is_blue(u, v);
            if (same && !blue) || (!same && blue) {
                cost += 1;
            }
        }
    }
    cost
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{balanced_kpartite, random_coloring};
    use crate::rat::rat;

    fn all_blue(n: usize) -> TwoColoring {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        TwoColoring::build(n, &edges).unwrap()
    }

    #[test]
    fn quasi_exhaustive_kpartite_blocks_are_the_witness() {
        let (c, _) = balanced_kpartite(2, 6).unwrap();
        let r = quasi_exhaustive(&c, rat(1, 2), rat(1, 10)).unwrap();
        assert_eq!(r.verdict, QuasiVerdict::Violated);
        assert_eq!(r.deviation, rat(18, 1));
        assert_eq!(r.bound, rat(144, 10));
        // The maximizer is a block pair: 6 + 6 vertices with no blue cross pair.
        assert_eq!(r.x.len(), 6);
        assert_eq!(r.y.len(), 6);
        assert_eq!(r.blue_pairs, 0);
        // Witness recomputes through the coloring queries.
        assert_eq!(c.pair_count(&r.x, &r.y, Color::Blue), r.blue_pairs);
        assert!(r.x.is_disjoint(&r.y));
    }

    #[test]
    fn quasi_exhaustive_all_blue() {
        let c = all_blue(6);
        // p = 1: zero deviation everywhere... p must be < 1, so use the
        // complementary check: p = 1/2 must be violated by halves.
        let r = quasi_exhaustive(&c, rat(1, 2), rat(1, 100)).unwrap();
        assert_eq!(r.verdict, QuasiVerdict::Violated);
        assert_eq!(r.deviation, rat(9, 2)); // e_B = 9 vs 4.5 for 3+3 split
    }

    #[test]
    fn quasi_exhaustive_respects_cap() {
        let c = all_blue(19);
        assert!(matches!(
            quasi_exhaustive(&c, rat(1, 2), rat(1, 10)),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn quasi_sampled_finds_kpartite_violation() {
        // Part-pair deviation is N^2/18, far beyond theta N^2 = N^2/100;
        // hill climbing reaches it from random starts.
        let (c, _) = balanced_kpartite(3, 40).unwrap();
        let r = quasi_sampled(&c, rat(1, 2), rat(1, 100), 1000, 7).unwrap();
        assert_eq!(r.verdict, QuasiVerdict::Violated);
        // Sound: the witness really deviates beyond theta N^2.
        assert!(r.deviation > r.bound);
        let e = c.pair_count(&r.x, &r.y, Color::Blue);
        assert_eq!(e, r.blue_pairs);
    }

    #[test]
    fn quasi_sampled_rejects_zero_probes() {
        let c = all_blue(5);
        assert!(quasi_sampled(&c, rat(1, 2), rat(1, 10), 0, 1).is_err());
    }

    #[test]
    fn quasi_sampled_deterministic() {
        let c = random_coloring(60, rat(1, 2), 3).unwrap();
        let a = quasi_sampled(&c, rat(1, 2), rat(1, 20), 16, 11).unwrap();
        let b = quasi_sampled(&c, rat(1, 2), rat(1, 20), 16, 11).unwrap();
        assert_eq!(a.deviation, b.deviation);
        assert_eq!(a.x, b.x);
        assert_eq!(a.y, b.y);
    }

    #[test]
    fn red_blue_duality() {
        // A coloring is (p, theta)-quasirandom iff the color swap is
        // (1-p, theta)-quasirandom; with exhaustive scans the worst
        // deviations agree exactly.
        let c = random_coloring(10, rat(1, 3), 5).unwrap();
        // Swap colors by rebuilding with the complement edge set.
        let mut red_edges = Vec::new();
        for i in 0..10 {
            for j in (i + 1)..10 {
                if !c.is_blue(i, j) {
                    red_edges.push((i, j));
                }
            }
        }
        let swapped = TwoColoring::build(10, &red_edges).unwrap();
        let a = quasi_exhaustive(&c, rat(1, 3), rat(1, 50)).unwrap();
        let b = quasi_exhaustive(&swapped, rat(2, 3), rat(1, 50)).unwrap();
        assert_eq!(a.deviation, b.deviation);
        assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn identity_hand_checked_k4() {
        // All-blue K_4, k = 2, p = 1/2: six spines with 2 pages each;
        // target p^2 N = 1, so E = 6. Identity side: 2*6 + (1-8)*3*4/... the
        // full expansion also lands on 6.
        let c = all_blue(4);
        let r = identity_check(&c, 2, rat(1, 2)).unwrap();
        assert_eq!(r.b_k, 6);
        assert_eq!(r.b_k1, 4);
        assert_eq!(r.b_k2e, 6);
        assert_eq!(r.e_direct, rat(6, 1));
        assert_eq!(r.e_identity, rat(6, 1));
        assert!(r.equal && r.exact);
    }

    #[test]
    fn identity_empty_blue() {
        let c = TwoColoring::build(5, &[]).unwrap();
        let r = identity_check(&c, 2, rat(2, 5)).unwrap();
        assert_eq!(r.b_k, 0);
        assert_eq!(r.e_direct, rat(0, 1));
        assert_eq!(r.e_identity, rat(0, 1));
        assert!(r.equal);
    }

    #[test]
    fn identity_random_instances() {
        for (seed, k, p) in [(1u64, 2usize, rat(1, 2)), (2, 3, rat(1, 3)), (3, 2, rat(3, 5))] {
            let c = random_coloring(30, rat(1, 2), seed).unwrap();
            let r = identity_check(&c, k, p).unwrap();
            assert!(r.equal, "identity failed: {:?} vs {:?}", r.e_direct, r.e_identity);
            // Spectrum route agrees with the pair-first route.
            let s = spectrum(&c, Color::Blue, k).unwrap();
            assert_eq!(s.sum_ext_choose2(), r.b_k2e);
        }
    }

    #[test]
    fn identity_variance_zero_iff_constant_extensions() {
        // Balanced 2-partite: every blue pair has exactly 4 extensions;
        // with p^k N = 4 (p = ..., k = 2, N = 12 -> p^2 * 12 = 4 needs
        // p^2 = 1/3, irrational) use k = 1: every vertex has 5 blue
        // neighbors; p N = 5 at p = 5/12.
        let (c, _) = balanced_kpartite(2, 6).unwrap();
        let r = identity_check(&c, 1, rat(5, 12)).unwrap();
        assert_eq!(r.e_direct, rat(0, 1));
        assert!(r.equal);
    }

    #[test]
    fn identity_size_guard() {
        let c = all_blue(61);
        assert!(matches!(
            identity_check(&c, 2, rat(1, 2)),
            Err(Error::TooLarge(_))
        ));
        let c = all_blue(10);
        assert!(matches!(
            identity_check(&c, 6, rat(1, 2)),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn identity_float_variant_flags_inexact() {
        let c = random_coloring(20, rat(1, 2), 9).unwrap();
        let r = identity_check_f64(&c, 2, 0.5).unwrap();
        assert!(!r.exact);
        assert!(r.equal);
    }

    #[test]
    fn regularity_all_blue_not_refuted() {
        let c = all_blue(12);
        let x = VertexSet::from_members(12, &(0..6).collect::<Vec<_>>()).unwrap();
        let y = VertexSet::from_members(12, &(6..12).collect::<Vec<_>>()).unwrap();
        let r = regularity_witness(&c, &x, &y, rat(1, 4), Color::Blue, RegularityMode::Exhaustive)
            .unwrap();
        assert!(matches!(r.outcome, RegularityOutcome::NotRefuted));
    }

    #[test]
    fn regularity_kpartite_cross_block_refuted() {
        // X = one block, Y = 3 + 3 across blocks: blue density from X is 1
        // into the same block, 0 across, so sub-pairs exhibit a gap of ~1.
        let (c, parts) = balanced_kpartite(2, 6).unwrap();
        let x = parts.parts()[0].clone();
        let y = VertexSet::from_members(12, &[3, 4, 5, 6, 7, 8]).unwrap();
        let r = regularity_witness(&c, &x, &y, rat(1, 4), Color::Blue, RegularityMode::Exhaustive)
            .unwrap();
        match r.outcome {
            RegularityOutcome::Refuted { gap, .. } => assert!(gap > rat(1, 4)),
            RegularityOutcome::NotRefuted => panic!("expected refutation"),
        }
    }

    #[test]
    fn regularity_heuristic_refutations_are_sound() {
        let (c, parts) = balanced_kpartite(2, 8).unwrap();
        let x = parts.parts()[0].clone();
        let y = VertexSet::from_members(16, &[4, 5, 6, 7, 8, 9, 10, 11]).unwrap();
        let r = regularity_witness(
            &c,
            &x,
            &y,
            rat(1, 4),
            Color::Blue,
            RegularityMode::Heuristic { probes: 16, seed: 3 },
        )
        .unwrap();
        if let RegularityOutcome::Refuted { x_sub, y_sub, gap } = r.outcome {
            // Witness recomputes: |d(X,Y) - d(X',Y')| equals the reported gap.
            let d0 = c.density(&x, &y, Color::Blue).unwrap();
            let d1 = c.density(&x_sub, &y_sub, Color::Blue).unwrap();
            assert_eq!((d0 - d1).abs(), gap);
        }
    }

    #[test]
    fn regularity_random_pair_not_refuted_at_coarse_eps() {
        // Exhaustive scan over all sub-pairs of a 12/12 split of a random
        // coloring: density fluctuations stay well under eps = 0.45.
        let c = random_coloring(24, rat(1, 2), 17).unwrap();
        let x = VertexSet::from_members(24, &(0..12).collect::<Vec<_>>()).unwrap();
        let y = VertexSet::from_members(24, &(12..24).collect::<Vec<_>>()).unwrap();
        let r = regularity_witness(
            &c,
            &x,
            &y,
            rat(45, 100),
            Color::Blue,
            RegularityMode::Exhaustive,
        )
        .unwrap();
        assert!(matches!(r.outcome, RegularityOutcome::NotRefuted));
    }

    #[test]
    fn regularity_self_pair_allowed() {
        let c = all_blue(10);
        let x = VertexSet::from_members(10, &(0..8).collect::<Vec<_>>()).unwrap();
        let r = regularity_witness(&c, &x, &x, rat(1, 3), Color::Blue, RegularityMode::Exhaustive)
            .unwrap();
        // Densities of sub-pairs vary only through the diagonal exclusion;
        // with eps = 1/3 that slack never reaches the bar.
        assert!(matches!(r.outcome, RegularityOutcome::NotRefuted));
    }

    #[test]
    fn blocked_config_kpartite_is_neither() {
        let (c, parts) = balanced_kpartite(2, 6).unwrap();
        let r = blocked_config_check(&c, parts.parts(), rat(3, 10), rat(3, 10)).unwrap();
        // Red-blocked needs internal red density >= 0.3: blocks are all blue.
        assert!(!r.red.verdict);
        // Blue-blocked needs cross blue density >= 0.3: cross edges are red.
        assert!(!r.blue.verdict);
        assert_eq!(r.pattern(), "neither");
    }

    #[test]
    fn blocked_config_random_passes_both_densities() {
        let c = random_coloring(24, rat(1, 2), 12).unwrap();
        let sets = vec![
            VertexSet::from_members(24, &(0..8).collect::<Vec<_>>()).unwrap(),
            VertexSet::from_members(24, &(8..16).collect::<Vec<_>>()).unwrap(),
            VertexSet::from_members(24, &(16..24).collect::<Vec<_>>()).unwrap(),
        ];
        let r = blocked_config_check(&c, &sets, rat(45, 100), rat(1, 5)).unwrap();
        assert!(r.red.densities_ok, "red densities {:?} {:?}", r.red.internal_densities, r.red.cross_densities);
        assert!(r.blue.densities_ok);
    }

    #[test]
    fn blocked_config_rejects_overlap() {
        let c = all_blue(6);
        let a = VertexSet::from_members(6, &[0, 1, 2]).unwrap();
        let b = VertexSet::from_members(6, &[2, 3, 4]).unwrap();
        assert!(blocked_config_check(&c, &[a, b], rat(1, 4), rat(1, 4)).is_err());
    }

    #[test]
    fn kdist_zero_on_kpartite() {
        for k in [2usize, 3, 4] {
            let (c, _) = balanced_kpartite(k, 5).unwrap();
            let (d, parts) = kpartite_distance(&c, k, 4, 9).unwrap();
            assert_eq!(d, 0, "k = {k}");
            assert!(parts.is_balanced());
        }
    }

    #[test]
    fn kdist_one_after_single_flip() {
        let (c, _) = balanced_kpartite(2, 6).unwrap();
        // Flip one cross edge to blue.
        let mut edges = Vec::new();
        for i in 0..12 {
            for j in (i + 1)..12 {
                if c.is_blue(i, j) {
                    edges.push((i, j));
                }
            }
        }
        edges.push((0, 6));
        let flipped = TwoColoring::build(12, &edges).unwrap();
        let (d, _) = kpartite_distance(&flipped, 2, 4, 9).unwrap();
        assert_eq!(d, 1);
    }

    #[test]
    fn kdist_random_stays_far_from_kpartite() {
        // A random balanced partition disagrees on about half the pairs;
        // minimizing over partitions shaves a Theta(n^{3/2})-scale margin
        // off that, so the optimized fraction sits noticeably below 1/2
        // (0.412 for this seed) while staying far from 0.
        let c = random_coloring(60, rat(1, 2), 21).unwrap();
        let (d, parts) = kpartite_distance(&c, 2, 8, 5).unwrap();
        assert!(parts.is_balanced());
        let total = 60.0 * 59.0 / 2.0;
        let frac = d as f64 / total;
        assert!((0.30..=0.48).contains(&frac), "fraction {frac}");
        // Deterministic for fixed seeds.
        let (d2, _) = kpartite_distance(&c, 2, 8, 5).unwrap();
        assert_eq!(d, d2);
    }
}
