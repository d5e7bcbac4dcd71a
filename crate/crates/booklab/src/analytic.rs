//! Closed-form functions, thresholds, and inequality checks for the random
//! regime.
//!
//! Everything here is numeric verification with explicit tolerances: the
//! minima are known analytically, and this module probes them on grids
//! with local refinement rather than re-deriving them symbolically.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::rng::SplitMix64;

/// Boundary between the constant and formula branches of `k1`: `1 - 5/(4e)`.
pub fn k1_branch_point() -> f64 {
    1.0 - 5.0 / (4.0 * std::f64::consts::E)
}

// ============================================================================
// Parameters
// ============================================================================

/// The `(p, k, c)` parameter triple with `c = ((1-p)/p)^k`.
///
/// `c` lies in `(0, 1]` exactly when `p >= 1/2`, and
/// `p = 1/(c^{1/k} + 1)` recovers `p` from `c`.
#[derive(Clone, Copy, Debug)]
pub struct AnalyticParams {
    pub p: f64,
    pub k: u32,
    pub c: f64,
}

impl AnalyticParams {
    pub fn from_p(p: f64, k: u32) -> Result<AnalyticParams> {
        check_p_open(p)?;
        check_k(k)?;
        let c = ((1.0 - p) / p).powi(k as i32);
        Ok(AnalyticParams { p, k, c })
    }

    pub fn from_c(c: f64, k: u32) -> Result<AnalyticParams> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Domain("c must be positive".into()));
        }
        check_k(k)?;
        let p = 1.0 / (c.powf(1.0 / k as f64) + 1.0);
        Ok(AnalyticParams { p, k, c })
    }
}

fn check_p_open(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "p must lie strictly between 0 and 1, got {p}"
        )));
    }
    Ok(())
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

// ============================================================================
// The core inequality function F and its one-dimensional reduction psi
// ============================================================================

/// `F(x, p) = p^{1-k} prod x_i + (1-p)^{1-k}/k * sum (1-x_i)^k`,
/// with `k` the length of `x`. For `k >= k1(p)` this is at least 1
/// everywhere on `[0,1]^k`, with equality at `x = (p, ..., p)`.
pub fn big_f(x: &[f64], p: f64) -> Result<f64> {
    check_p_open(p)?;
    if x.is_empty() {
        return Err(Error::Domain("x must be nonempty".into()));
    }
    for &xi in x {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::Domain(format!("x_i must lie in [0,1], got {xi}")));
        }
    }
    Ok(big_f_unchecked(x, p))
}

#[inline]
fn big_f_unchecked(x: &[f64], p: f64) -> f64 {
    let k = x.len() as i32;
    let mut prod = 1.0;
    let mut sum = 0.0;
    for &xi in x {
        prod *= xi;
        sum += (1.0 - xi).powi(k);
    }
    p.powi(1 - k) * prod + (1.0 - p).powi(1 - k) / k as f64 * sum
}

/// `psi(w) = p^{1-k} w^k + (1-p)^{1-k} (1-w)^k`, the reduction of `F` along
/// the equal-coordinates diagonal. Minimized at `w = p` with value 1.
pub fn psi(w: f64, p: f64, k: u32) -> Result<f64> {
    check_p_open(p)?;
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("w must lie in [0,1], got {w}")));
    }
    let ki = k as i32;
    Ok(p.powi(1 - ki) * w.powi(ki) + (1.0 - p).powi(1 - ki) * (1.0 - w).powi(ki))
}

/// Minimizes `psi` over `[0, 1]`.
///
/// `psi` is strictly convex for `k >= 2`, so the minimizer is the root of
/// `psi'`, found by bisection (comparing function values instead would
/// lose half the significant digits to the flat quadratic bottom).
/// Returns `(w*, psi(w*))`; analytically `(p, 1)`, reproduced well within
/// `1e-10`.
pub fn psi_min(p: f64, k: u32) -> Result<(f64, f64)> {
    check_p_open(p)?;
    check_k(k)?;
    let ki = k as i32;
    let dpsi = |w: f64| {
        k as f64 * (p.powi(1 - ki) * w.powi(ki - 1) - (1.0 - p).powi(1 - ki) * (1.0 - w).powi(ki - 1))
    };
    let (mut a, mut b) = (0.0f64, 1.0f64); // dpsi(0) < 0 < dpsi(1)
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if dpsi(mid) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let w = 0.5 * (a + b);
    Ok((w, psi(w, p, k)?))
}

// ============================================================================
// The thresholds k1, k2, g, f, c1
// ============================================================================

/// `f(p, k) = (1-p)^{1-k} / (e^2 k)`, the floor of `F` when some
/// coordinate is at most `1/k`.
pub fn small_f(p: f64, k: u32) -> Result<f64> {
    check_p_open(p)?;
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    Ok((1.0 - p).powi(1 - k as i32) / (std::f64::consts::E.powi(2) * k as f64))
}

/// `g(p) = 1 + lambda/log(1/lambda) + 5/log(1/lambda)
///        + log log(1/lambda) / log(1/lambda)` with `lambda = log 1/(1-p)`.
///
/// Defined for `0 < p <= 1 - 5/(4e)` (the formula branch of `k1`, closed at
/// the right endpoint so the anchor comparison `g(1-5/(4e)) < e^3` is
/// evaluable).
pub fn g(p: f64) -> Result<f64> {
    check_p_open(p)?;
    if p > k1_branch_point() {
        return Err(Error::Domain(format!(
            "g is defined for p <= 1 - 5/(4e) ~ {:.6}, got {p}",
            k1_branch_point()
        )));
    }
    let lambda = -(-p).ln_1p(); // log 1/(1-p), stable near p = 0
    let log_inv = (1.0 / lambda).ln();
    Ok(1.0 + lambda / log_inv + 5.0 / log_inv + log_inv.ln() / log_inv)
}

/// The threshold `k1(p)`: 6 for `p >= 1 - 5/(4e)`, otherwise
/// `1 + (5 - log lambda + log log(1/lambda)) / lambda` with
/// `lambda = log 1/(1-p)`.
pub fn k1(p: f64) -> Result<f64> {
    check_p_open(p)?;
    if p >= k1_branch_point() {
        return Ok(6.0);
    }
    let lambda = -(-p).ln_1p();
    Ok(k1_from_lambda(lambda))
}

#[inline]
fn k1_from_lambda(lambda: f64) -> f64 {
    // Valid for lambda in (0, 1); the formula branch only sees
    // lambda <= log(4e/5) < 1.
    let log_inv = (1.0 / lambda).ln();
    1.0 + (5.0 - lambda.ln() + log_inv.ln()) / lambda
}

/// `k2(p) = k1(1 - p)`.
pub fn k2(p: f64) -> Result<f64> {
    check_p_open(p)?;
    k1(1.0 - p)
}

/// `k2(p(c, k))` evaluated from `log c` without forming `1 - p`, so it
/// stays accurate for astronomically small `c`.
fn k2_of_log_c(log_c: f64, k: u32) -> f64 {
    // q = 1 - p = t/(1+t) with t = c^{1/k}; lambda(q) = log(1+t).
    let t = (log_c / k as f64).exp();
    let q = t / (1.0 + t);
    if q >= k1_branch_point() {
        return 6.0;
    }
    k1_from_lambda(t.ln_1p())
}

/// The infimum of `c` in `(0, 1]` with `k2(1/(c^{1/k}+1)) <= k`, found by
/// bisection on `log c` (the condition is monotone in `c`). Returns 1 when
/// no `c` in `(0, 1]` qualifies, as happens for every `k <= 7`.
pub fn c1(k: u32) -> Result<f64> {
    check_k(k)?;
    if k2_of_log_c(0.0, k) > k as f64 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (-700.0 * k as f64, 0.0f64);
    for _ in 0..500 {
        let mid = 0.5 * (lo + hi);
        if k2_of_log_c(mid, k) <= k as f64 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi.exp())
}

// ============================================================================
// Grid minimization of F
// ============================================================================

/// Outcome of a grid-plus-refinement minimization of `F`.
#[derive(Clone, Debug)]
pub struct MinimizationReport {
    pub p: f64,
    pub k: u32,
    /// Smallest value found; an upper bound on the true minimum, and no
    /// probed point evaluated below it.
    pub minimum: f64,
    pub argmin: Vec<f64>,
    /// Grid points per axis.
    pub resolution: usize,
    /// Step size at which the local refinement stopped.
    pub refine_tol: f64,
    /// When present, the scan was restricted to `max_j |x_j - p| >= eps0`.
    pub restricted: Option<f64>,
    /// Whether the full grid was scanned (false: coordinate descent from
    /// seeded random restarts, used for k > 6).
    pub exhaustive: bool,
    /// Whether `k >= k1(p)`, the hypothesis under which the minimum is
    /// guaranteed to be at least 1. Recorded, not enforced.
    pub hypothesis_met: bool,
    pub points_probed: u64,
}

const GRID_POINT_CAP: u128 = 1 << 30;

struct Best {
    value: f64,
    idx: Vec<usize>,
    probed: u64,
}

/// Minimizes `F` over `[0,1]^k` (or its restriction to points with some
/// coordinate `eps0`-far from `p`) by full grid scan plus coordinate
/// descent refinement. For `k > 6` the grid is replaced by coordinate
/// descent from seeded random restarts, flagged in the report.
pub fn grid_min_f(
    p: f64,
    k: u32,
    resolution: usize,
    restricted: Option<f64>,
) -> Result<MinimizationReport> {
    check_p_open(p)?;
    check_k(k)?;
    if resolution < 11 {
        return Err(Error::Domain(format!(
            "resolution must be at least 11 points per axis, got {resolution}"
        )));
    }
    if let Some(eps0) = restricted {
        if !(eps0 > 0.0) {
            return Err(Error::Domain("eps0 must be positive".into()));
        }
    }
    let exhaustive = k <= 6;
    if exhaustive {
        let points = (resolution as u128).pow(k);
        if points > GRID_POINT_CAP {
            return Err(Error::TooLarge(format!(
                "{resolution}^{k} grid points exceed the exhaustive cap"
            )));
        }
    }

    let ku = k as usize;
    let (grid_best, grid_arg, probed) = if exhaustive {
        scan_full_grid(p, ku, resolution, restricted)
    } else {
        descent_restarts(p, ku, restricted)
    };

    let (minimum, argmin, refine_tol) = refine(p, grid_best, grid_arg, restricted);
    let hypothesis_met = k as f64 >= k1(p)?;
    Ok(MinimizationReport {
        p,
        k,
        minimum,
        argmin,
        resolution,
        refine_tol,
        restricted,
        exhaustive,
        hypothesis_met,
        points_probed: probed,
    })
}

/// Scans the full grid; parallel over the first axis, merged by
/// (value, lexicographic argmin) so the result is schedule-independent.
fn scan_full_grid(
    p: f64,
    k: usize,
    resolution: usize,
    restricted: Option<f64>,
) -> (f64, Vec<f64>, u64) {
    let xs: Vec<f64> = (0..resolution)
        .map(|i| i as f64 / (resolution - 1) as f64)
        .collect();
    let pow_k: Vec<f64> = xs.iter().map(|&x| (1.0 - x).powi(k as i32)).collect();
    let far: Vec<bool> = match restricted {
        Some(eps0) => xs.iter().map(|&x| (x - p).abs() >= eps0 - 1e-12).collect(),
        None => vec![true; resolution],
    };
    let needs_far = restricted.is_some();
    let p1k = p.powi(1 - k as i32);
    let coeff = (1.0 - p).powi(1 - k as i32) / k as f64;

    let merge = |a: Best, b: Best| {
        let probed = a.probed + b.probed;
        let mut best = if b.value < a.value || (b.value == a.value && b.idx < a.idx) {
            b
        } else {
            a
        };
        best.probed = probed;
        best
    };

    let best = (0..resolution)
        .into_par_iter()
        .map(|i0| {
            let mut idx = vec![0usize; k];
            idx[0] = i0;
            let mut best = Best {
                value: f64::INFINITY,
                idx: Vec::new(),
                probed: 0,
            };
            scan_rec(ScanCtx {
                xs: &xs,
                pow_k: &pow_k,
                far: &far,
                needs_far,
                p1k,
                coeff,
            }, &mut idx, 1, xs[i0], pow_k[i0], far[i0], &mut best);
            best
        })
        .reduce(
            || Best {
                value: f64::INFINITY,
                idx: Vec::new(),
                probed: 0,
            },
            merge,
        );

    let arg: Vec<f64> = best.idx.iter().map(|&i| xs[i]).collect();
    (best.value, arg, best.probed)
}

#[derive(Clone, Copy)]
struct ScanCtx<'a> {
    xs: &'a [f64],
    pow_k: &'a [f64],
    far: &'a [bool],
    needs_far: bool,
    p1k: f64,
    coeff: f64,
}

fn scan_rec(
    ctx: ScanCtx<'_>,
    idx: &mut Vec<usize>,
    depth: usize,
    prod: f64,
    sum: f64,
    any_far: bool,
    best: &mut Best,
) {
    let k = idx.len();
    if depth == k {
        best.probed += 1;
        if ctx.needs_far && !any_far {
            return;
        }
        let value = ctx.p1k * prod + ctx.coeff * sum;
        if value < best.value || (value == best.value && idx.as_slice() < best.idx.as_slice()) {
            best.value = value;
            best.idx = idx.clone();
        }
        return;
    }
    for i in 0..ctx.xs.len() {
        idx[depth] = i;
        scan_rec(
            ctx,
            idx,
            depth + 1,
            prod * ctx.xs[i],
            sum + ctx.pow_k[i],
            any_far || ctx.far[i],
            best,
        );
    }
}

/// Seeded coordinate descent from random restarts, for k beyond exhaustive
/// grid reach. Deterministic: fixed seed, fixed restart count.
fn descent_restarts(p: f64, k: usize, restricted: Option<f64>) -> (f64, Vec<f64>, u64) {
    const RESTARTS: u64 = 64;
    let mut best_val = f64::INFINITY;
    let mut best_arg = vec![p; k];
    let mut probed = 0u64;
    for r in 0..RESTARTS {
        let mut gen = SplitMix64::derive(0xB00C_1AB5, r);
        let mut x: Vec<f64> = (0..k).map(|_| gen.next_f64()).collect();
        if let Some(eps0) = restricted {
            // Force feasibility by pushing one coordinate away from p.
            if x.iter().all(|&xi| (xi - p).abs() < eps0) {
                x[0] = if p + eps0 <= 1.0 { p + eps0 } else { p - eps0 };
            }
        }
        let (v, arg, _) = refine(p, big_f_unchecked(&x, p), x, restricted);
        probed += 1;
        if v < best_val || (v == best_val && arg < best_arg) {
            best_val = v;
            best_arg = arg;
        }
    }
    (best_val, best_arg, probed)
}

/// Coordinate descent with a halving step schedule, honoring the
/// restriction by rejecting moves that leave the feasible region.
fn refine(
    p: f64,
    mut value: f64,
    mut x: Vec<f64>,
    restricted: Option<f64>,
) -> (f64, Vec<f64>, f64) {
    let feasible = |y: &[f64]| match restricted {
        None => true,
        Some(eps0) => y.iter().any(|&yi| (yi - p).abs() >= eps0 - 1e-12),
    };
    let mut step = 0.05f64;
    while step > 1e-12 {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [-1.0, 1.0] {
                let xi = (x[i] + dir * step).clamp(0.0, 1.0);
                if xi == x[i] {
                    continue;
                }
                let old = x[i];
                x[i] = xi;
                if feasible(&x) {
                    let v = big_f_unchecked(&x, p);
                    if v < value {
                        value = v;
                        improved = true;
                        continue;
                    }
                }
                x[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (value, x, 1e-12)
}

// ============================================================================
// Jensen-type gap checks
// ============================================================================

/// Gap of the multiplicative Jensen inequality for `f(x) = (1-x)^k`:
/// `mean((1-x_i)^k) - (1 - z^{1/k})^k` with `z = prod x_i` and `k = |x|`.
///
/// Nonnegative whenever all `x_i` lie in the log-convexity region
/// `(1/k, 1)`; outside it the gap can go negative and is merely reported.
pub fn mult_jensen_gap(x: &[f64]) -> Result<f64> {
    let k = x.len();
    if k == 0 {
        return Err(Error::Domain("x must be nonempty".into()));
    }
    for &xi in x {
        if xi <= 0.0 {
            return Err(Error::Domain(format!(
                "coordinates must be strictly positive, got {xi}"
            )));
        }
        if xi >= 1.0 {
            return Err(Error::Domain(format!(
                "coordinates must be strictly below 1, got {xi}"
            )));
        }
    }
    let ki = k as i32;
    let mut prod = 1.0f64;
    let mut sum = 0.0f64;
    for &xi in x {
        prod *= xi;
        sum += (1.0 - xi).powi(ki);
    }
    let z_root = prod.powf(1.0 / k as f64);
    Ok(sum / k as f64 - (1.0 - z_root).powi(ki))
}

/// `phi(y) = (1 - e^y)^k`.
pub fn phi(y: f64, k: u32) -> f64 {
    (1.0 - y.exp()).powi(k as i32)
}

/// `phi''(y) = k e^y (1 - e^y)^{k-2} (k e^y - 1)`; strictly positive on
/// `(log(1/k), 0)`.
pub fn phi_second(y: f64, k: u32) -> f64 {
    let ey = y.exp();
    k as f64 * ey * (1.0 - ey).powi(k as i32 - 2) * (k as f64 * ey - 1.0)
}

/// A valid strict lower bound on `phi''` over `[a, b]`, found by endpoint
/// evaluation plus an interior grid, scaled by a 0.99 safety factor.
pub fn phi2_lower(a: f64, b: f64, k: u32) -> Result<f64> {
    check_k(k)?;
    let lo = -(k as f64).ln();
    if !(a > lo && b < 0.0 && a <= b) {
        return Err(Error::Domain(format!(
            "[{a}, {b}] must lie strictly inside (log(1/k), 0) = ({lo}, 0)"
        )));
    }
    const GRID: usize = 8192;
    let mut min = f64::INFINITY;
    for i in 0..=GRID {
        let y = a + (b - a) * i as f64 / GRID as f64;
        min = min.min(phi_second(y, k));
    }
    Ok(0.99 * min)
}

/// Defect-Jensen gap `mean(phi(y_i)) - phi(mean) - m sigma^2 / 2`.
///
/// Nonnegative whenever all `y_i` lie in an interval of strict convexity
/// on which `m` lower-bounds `phi''` (use [`phi2_lower`]).
pub fn holder_defect_gap(ys: &[f64], k: u32, m: f64) -> Result<f64> {
    check_k(k)?;
    if ys.is_empty() {
        return Err(Error::Domain("y must be nonempty".into()));
    }
    let lo = -(k as f64).ln();
    for &y in ys {
        if !(y > lo && y < 0.0) {
            return Err(Error::Domain(format!(
                "y = {y} outside the convexity interval ({lo}, 0)"
            )));
        }
    }
    if m < 0.0 {
        return Err(Error::Domain("m must be nonnegative".into()));
    }
    let n = ys.len() as f64;
    let mu = ys.iter().sum::<f64>() / n;
    let var = ys.iter().map(|&y| (y - mu) * (y - mu)).sum::<f64>() / n;
    let mean_phi = ys.iter().map(|&y| phi(y, k)).sum::<f64>() / n;
    Ok(mean_phi - phi(mu, k) - m * var / 2.0)
}

/// The minimum-degree slack `rho = 1/(3k^2 - k)` under which K_{k+1}-free
/// graphs are forced k-partite. Exact rational.
pub fn aes_rho(k: u32) -> Result<Rat> {
    check_k(k)?;
    let kk = k as i128;
    Ok(Rat::new(1, 3 * kk * kk - kk))
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_pow};
    use num::One;

    #[test]
    fn big_f_identity_at_diagonal_exact_rational() {
        // p^{1-k} * p^k + (1-p)^{1-k}/k * k (1-p)^k = p + (1-p) = 1, checked
        // in exact rationals.
        for (num, den, k) in [(1i128, 2i128, 4u32), (3, 5, 6), (2, 7, 3)] {
            let p = rat(num, den);
            let q = Rat::one() - &p;
            let lhs = rat_pow(&p, k) / rat_pow(&p, k - 1)
                + rat_pow(&q, k) / rat_pow(&q, k - 1) / Rat::from_integer(k as i128)
                    * Rat::from_integer(k as i128);
            assert_eq!(lhs, Rat::one());
        }
        // And the float evaluation agrees to machine precision.
        for (p, k) in [(0.55, 6), (0.6, 6), (0.9, 6), (0.5, 2)] {
            let x = vec![p; k];
            let v = big_f(&x, p).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "F at diagonal = {v}");
        }
    }

    #[test]
    fn big_f_zero_coordinate_floor() {
        // With a zero coordinate the product vanishes and F is at least
        // (1-p)^{1-k}/k.
        for (p, k) in [(0.55, 6usize), (0.7, 4)] {
            let mut x = vec![0.8; k];
            x[0] = 0.0;
            let v = big_f(&x, p).unwrap();
            let floor = (1.0 - p).powi(1 - k as i32) / k as f64;
            assert!(v >= floor - 1e-12);
        }
    }

    #[test]
    fn big_f_domain_errors() {
        assert!(big_f(&[0.5, 1.5], 0.5).is_err());
        assert!(big_f(&[0.5], 0.0).is_err());
        assert!(big_f(&[], 0.5).is_err());
    }

    #[test]
    fn psi_examples() {
        for (p, k) in [(0.5, 3u32), (0.7, 5), (0.9, 2)] {
            assert!((psi(p, p, k).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((psi(1.0, 0.5, 3).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn psi_min_recovers_p() {
        for (p, k) in [(0.7, 5u32), (0.55, 6), (0.9, 3)] {
            let (w, v) = psi_min(p, k).unwrap();
            assert!((w - p).abs() < 1e-12, "argmin {w} vs p {p}");
            assert!((v - 1.0).abs() < 1e-12, "min {v}");
        }
    }

    #[test]
    fn k1_branch_values() {
        assert_eq!(k1(0.9).unwrap(), 6.0);
        assert_eq!(k1(k1_branch_point()).unwrap(), 6.0);
        // Pinned by high-precision evaluation of the formula.
        assert!((k1(0.2).unwrap() - 31.945842).abs() < 1e-6);
        assert!((k1(0.5).unwrap() - 7.294178).abs() < 1e-6);
    }

    #[test]
    fn g_anchor_value() {
        // g at the branch point is about 18.4, safely below e^3.
        let v = g(k1_branch_point()).unwrap();
        assert!((v - 18.4278).abs() < 0.01, "g = {v}");
        assert!(v < std::f64::consts::E.powi(3));
        assert!(g(0.9).is_err());
    }

    #[test]
    fn k1_nonincreasing_below_branch_point() {
        let mut prev = f64::INFINITY;
        for i in 1..2000 {
            let p = i as f64 / 2000.0 * k1_branch_point();
            let v = k1(p).unwrap();
            assert!(v <= prev + 1e-9, "k1 increased at p = {p}");
            prev = v;
        }
    }

    #[test]
    fn k2_agrees_with_k1_of_complement() {
        for i in 1..100 {
            let p = i as f64 / 100.0;
            assert_eq!(k2(p).unwrap(), k1(1.0 - p).unwrap());
        }
    }

    #[test]
    fn c1_values() {
        assert_eq!(c1(2).unwrap(), 1.0);
        for k in 3..=7 {
            assert_eq!(c1(k).unwrap(), 1.0, "k = {k}");
        }
        // Pinned by an independent bisection implementation.
        assert!((c1(8).unwrap() - 0.520662470143).abs() < 1e-9);
        let c50 = c1(50).unwrap();
        assert!((c50 / 8.77535931804e-40 - 1.0).abs() < 1e-6, "c1(50) = {c50:e}");
    }

    #[test]
    fn c1_asymptotic_ratio_decreases() {
        // The ratio c1^{1/k} k / log k drifts down toward 1; pinned values
        // from the independent bisection: 2.588 (k=20), 2.116 (k=50),
        // 1.917 (k=100).
        let ratio = |k: u32| {
            let c = c1(k).unwrap();
            (c.ln() / k as f64).exp() * k as f64 / (k as f64).ln()
        };
        let (r20, r50, r100) = (ratio(20), ratio(50), ratio(100));
        assert!((r20 - 2.588385).abs() < 1e-4, "{r20}");
        assert!((r50 - 2.115602).abs() < 1e-4, "{r50}");
        assert!((r100 - 1.916719).abs() < 1e-4, "{r100}");
        assert!(r20 > r50 && r50 > r100);
    }

    #[test]
    fn k2_of_c_monotone_in_c() {
        for k in [8u32, 10, 20] {
            let mut prev = f64::INFINITY;
            for i in 1..=1000 {
                let c = i as f64 / 1000.0;
                let v = k2_of_log_c(c.ln(), k);
                assert!(v <= prev + 1e-9, "k2(p(c,{k})) increased at c = {c}");
                prev = v;
            }
        }
    }

    #[test]
    fn grid_min_small_unrestricted() {
        // k = 2 is below the lemma threshold but this instance still has
        // minimum 1 on the diagonal; mainly exercises the scan machinery.
        let r = grid_min_f(0.5, 2, 21, None).unwrap();
        assert!(r.exhaustive);
        assert!(!r.hypothesis_met);
        assert!((r.minimum - 1.0).abs() < 1e-9, "min {}", r.minimum);
        assert_eq!(r.points_probed, 441);
    }

    #[test]
    fn grid_min_restricted_honors_constraint() {
        // For k = 2, p = 1/2 the whole valley x1 + x2 = 1 attains the
        // minimum 1, part of it inside the restricted region; this case
        // exercises the constraint bookkeeping, not the margin.
        let r = grid_min_f(0.5, 2, 21, Some(0.2)).unwrap();
        assert!(r.minimum >= 1.0 - 1e-12, "restricted min {}", r.minimum);
        let far = r.argmin.iter().any(|&x| (x - 0.5).abs() >= 0.2 - 1e-9);
        assert!(far, "argmin violates restriction: {:?}", r.argmin);
    }

    #[test]
    fn grid_min_restricted_margin_when_hypothesis_holds() {
        // k = 6 meets k1(0.55) = 6; coarse 11-point grid plus refinement
        // still lands near the true restricted minimum ~1.112.
        let r = grid_min_f(0.55, 6, 11, Some(0.2)).unwrap();
        assert!(r.hypothesis_met);
        assert!(r.minimum > 1.05, "restricted min {}", r.minimum);
        assert!(r.minimum < 1.2, "restricted min {}", r.minimum);
        let far = r.argmin.iter().any(|&x| (x - 0.55).abs() >= 0.2 - 1e-9);
        assert!(far, "argmin violates restriction: {:?}", r.argmin);
    }

    #[test]
    fn grid_min_rejects_bad_inputs() {
        assert!(grid_min_f(0.5, 2, 5, None).is_err());
        assert!(grid_min_f(0.0, 2, 21, None).is_err());
        assert!(matches!(
            grid_min_f(0.5, 6, 101, None),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn grid_min_descent_path_for_large_k() {
        let r = grid_min_f(0.55, 8, 11, None).unwrap();
        assert!(!r.exhaustive);
        // k = 8 clears k1(0.55) = 6, so the minimum should still be ~1.
        assert!(r.hypothesis_met);
        assert!(r.minimum >= 1.0 - 1e-9, "min {}", r.minimum);
        assert!((r.minimum - 1.0).abs() < 1e-6);
    }

    #[test]
    fn mult_jensen_gap_cases() {
        // Equal coordinates sit exactly at the Jensen minimum.
        assert!(mult_jensen_gap(&[0.7, 0.7, 0.7]).unwrap().abs() < 1e-12);
        // Zero (or boundary) coordinates violate the open-interval domain.
        assert!(mult_jensen_gap(&[0.0, 0.5]).is_err());
        assert!(mult_jensen_gap(&[1.0, 0.5]).is_err());
        // Inside the convexity region (1/k, 1) the gap is nonnegative.
        let mut gen = SplitMix64::new(2024);
        for _ in 0..20_000 {
            let k = 2 + (gen.next_below(5) as usize);
            let lo = 1.0 / k as f64;
            let x: Vec<f64> = (0..k)
                .map(|_| lo + (1.0 - lo) * (0.0001 + 0.9998 * gen.next_f64()))
                .collect();
            let gap = mult_jensen_gap(&x).unwrap();
            assert!(gap >= -1e-12, "gap {gap} at {x:?}");
        }
        // Outside that region the inequality genuinely fails; the function
        // reports the (negative) gap rather than clamping it.
        let gap = mult_jensen_gap(&[0.9, 0.1]).unwrap();
        assert!((gap - (0.41 - 0.49)).abs() < 1e-12, "gap {gap}");
    }

    #[test]
    fn holder_defect_cases() {
        let k = 4u32;
        let (a, b) = (0.3f64.ln(), 0.9f64.ln());
        let m = phi2_lower(a, b, k).unwrap();
        assert!(m > 0.0);
        // Equal points: sigma = 0 and the gap is exactly 0.
        let gap = holder_defect_gap(&[-0.5, -0.5, -0.5], k, m).unwrap();
        assert!(gap.abs() < 1e-12);
        // Random points within [a, b].
        let mut gen = SplitMix64::new(7);
        for _ in 0..20_000 {
            let ys: Vec<f64> = (0..k as usize)
                .map(|_| a + (b - a) * gen.next_f64())
                .collect();
            let gap = holder_defect_gap(&ys, k, m).unwrap();
            assert!(gap >= -1e-12, "gap {gap} at {ys:?}");
        }
        // Interval touching log(1/k) is outside the convexity region.
        assert!(phi2_lower(-(k as f64).ln(), -0.1, k).is_err());
        assert!(holder_defect_gap(&[-(k as f64).ln() - 0.1], k, m).is_err());
    }

    #[test]
    fn aes_rho_values() {
        assert_eq!(aes_rho(2).unwrap(), rat(1, 10));
        assert_eq!(aes_rho(3).unwrap(), rat(1, 24));
        assert_eq!(aes_rho(10).unwrap(), rat(1, 290));
        assert!(aes_rho(1).is_err());
    }

    #[test]
    fn analytic_params_round_trip() {
        let a = AnalyticParams::from_p(0.75, 3).unwrap();
        assert!(a.c > 0.0 && a.c <= 1.0);
        let b = AnalyticParams::from_c(a.c, 3).unwrap();
        assert!((b.p - 0.75).abs() < 1e-12);
        // c in (0, 1] iff p >= 1/2.
        let low = AnalyticParams::from_p(0.4, 3).unwrap();
        assert!(low.c > 1.0);
    }
}
