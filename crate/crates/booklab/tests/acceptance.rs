//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them). Tolerances are pinned in
//! code; nothing is deferred to later calibration.
//!
//! Criterion 9's upper band is expected to fail: the maximum page count of
//! ~10^6 binomial spines concentrates near 0.295 N, above the stated 0.29
//! ceiling, for every seed (see the regression test pinning the true
//! values). The assertion is kept as stated rather than loosened.

use std::time::{Duration, Instant};

use booklab::analytic;
use booklab::bitset::VertexSet;
use booklab::books::{self, count_cliques, max_book, spectrum, Spectrum};
use booklab::coloring::{Color, TwoColoring};
use booklab::construct::{balanced_kpartite, random_coloring};
use booklab::quasi::{
    count_clique_minus_edge, identity_check, kpartite_distance, quasi_exhaustive, quasi_sampled,
    QuasiVerdict,
};
use booklab::rat::{rat, Rat};
use booklab::rng::SplitMix64;
use booklab::search::{ramsey_number, verify_witness, RamseyValue, SearchOptions};
use num::One;

fn report(id: u32, ok: bool, detail: &str, elapsed: Duration, budget: Duration) {
    let verdict = if ok && elapsed <= budget { "PASS" } else { "FAIL" };
    println!(
        "[criterion {id:2}] {verdict}: {detail} ({elapsed:.2?}, budget {budget:.0?})"
    );
    assert!(ok, "criterion {id}: {detail}");
    assert!(
        elapsed <= budget,
        "criterion {id}: runtime {elapsed:?} over budget {budget:?}"
    );
}

#[test]
fn criterion_01_kpartite_witness_property() {
    let t = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for k in [2usize, 3] {
        for n in 3..=8usize {
            let (c, _) = balanced_kpartite(k, n + k - 1).unwrap();
            let red_cliques = count_cliques(&c, Color::Red, k + 1).unwrap();
            let pages = max_book(&c, Color::Blue, k).unwrap().pages;
            if red_cliques != 0 || pages != n - 1 {
                ok = false;
                detail = format!(
                    "k={k}, n={n}: red K_{}={red_cliques}, max pages={pages} (want 0, {})",
                    k + 1,
                    n - 1
                );
            }
        }
    }
    if ok {
        detail = "red K_{k+1}=0 and max blue pages=n-1 for k in {2,3}, n in 3..=8".into();
    }
    report(1, ok, &detail, t.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_02_exact_ramsey_oracle() {
    let t = Instant::now();
    let r = ramsey_number(2, 1, 1, 10, &SearchOptions::default()).unwrap();
    let headline = t.elapsed();
    let mut ok = r.value == RamseyValue::Exact(6);
    let w = r.witness.as_ref().expect("witness at 5 vertices");
    ok &= w.n() == 5;
    // Verified by the book engine, not by isomorphism: no monochromatic
    // triangle in either color (forcing both classes to be 5-cycles).
    ok &= verify_witness(w, 2, 1, 1).unwrap();
    ok &= count_cliques(w, Color::Red, 3).unwrap() == 0;
    ok &= count_cliques(w, Color::Blue, 3).unwrap() == 0;

    // Regression fixtures computed once by this exhaustive oracle.
    for (k, m, n, value) in [(2, 1, 2, 7), (2, 1, 3, 9), (2, 2, 2, 10)] {
        let r = ramsey_number(k, m, n, 12, &SearchOptions::default()).unwrap();
        ok &= r.value == RamseyValue::Exact(value);
        ok &= verify_witness(r.witness.as_ref().unwrap(), k, m, n).unwrap();
    }
    report(
        2,
        ok,
        &format!("r = 6 with verified 5-vertex witness; fixtures 7/9/10 reproduced"),
        headline,
        Duration::from_secs(1),
    );
}

/// The shared corpus for criteria 3 and 4: 100 seeded random colorings
/// with n <= 30, k in {2, 3}, rational p in {1/2, 1/3, 3/5}.
fn identity_corpus() -> Vec<(TwoColoring, usize, Rat)> {
    let ps = [rat(1, 2), rat(1, 3), rat(3, 5)];
    (0..100u64)
        .map(|s| {
            let n = 10 + (s as usize * 11) % 21; // covers all of 10..=30
            let k = 2 + (s as usize) % 2;
            let c = random_coloring(n, rat(1, 2), s).unwrap();
            (c, k, ps[s as usize % 3].clone())
        })
        .collect()
}

#[test]
fn criterion_03_extension_variance_identity() {
    let t = Instant::now();
    // Hand-checked instance: all-blue K_4, k = 2, p = 1/2 gives E = 6 on
    // both routes.
    let k4 = TwoColoring::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let r = identity_check(&k4, 2, rat(1, 2)).unwrap();
    let mut ok = r.equal && r.e_direct == rat(6, 1) && r.e_identity == rat(6, 1);

    for (c, k, p) in identity_corpus() {
        let r = identity_check(&c, k, p).unwrap();
        if !r.equal {
            ok = false;
        }
    }
    report(
        3,
        ok,
        "E computed via spectrum equals the clique-count identity, exactly, on K4 and 100 random colorings",
        t.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_04_spectrum_consistency() {
    let t = Instant::now();
    let mut ok = true;
    for (c, k, _) in identity_corpus() {
        for color in [Color::Red, Color::Blue] {
            let s = spectrum(&c, color, k).unwrap();
            let bigger = count_cliques(&c, color, k + 1).unwrap() as u128;
            if s.sum_ext() != (k as u128 + 1) * bigger {
                ok = false;
            }
            if s.sum_ext_choose2() != count_clique_minus_edge(&c, color, k).unwrap() {
                ok = false;
            }
        }
    }
    report(
        4,
        ok,
        "sum ext = (k+1) B(K_{k+1}) and sum C(ext,2) = B(K_{k+2}-e) on the corpus, exactly",
        t.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_05_inequality_grid_verification() {
    let t = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (p, k) in [(0.55, 6u32), (0.6, 6), (0.9, 6)] {
        let r = analytic::grid_min_f(p, k, 21, None).unwrap();
        let arg_err = r
            .argmin
            .iter()
            .map(|&x| (x - p).abs())
            .fold(0.0f64, f64::max);
        if r.minimum < 1.0 - 1e-9 || arg_err > 1e-3 {
            ok = false;
            detail = format!("(p={p}, k={k}): min={}, argmin error={arg_err}", r.minimum);
        }
        // These p all sit in the constant branch of k1.
        if analytic::k1(p).unwrap() != 6.0 {
            ok = false;
        }
    }
    // Anchor: g at the branch point, to three significant figures.
    let gv = analytic::g(analytic::k1_branch_point()).unwrap();
    if (gv - 18.4).abs() > 0.05 || gv >= std::f64::consts::E.powi(3) {
        ok = false;
        detail = format!("g anchor = {gv}");
    }
    if ok {
        detail = format!(
            "min F >= 1 - 1e-9 with argmin at (p,...,p) for three (p,6) pairs; g anchor {gv:.4} < e^3"
        );
    }
    report(5, ok, &detail, t.elapsed(), Duration::from_secs(300));
}

#[test]
fn criterion_06_stability_margin() {
    let t = Instant::now();
    let r1 = analytic::grid_min_f(0.55, 6, 21, Some(0.2)).unwrap();
    let r2 = analytic::grid_min_f(0.55, 6, 21, Some(0.2)).unwrap();
    let delta0 = r1.minimum - 1.0;
    // Pinned on the first verified run; independently reproduced by a
    // separate implementation to the same 15 digits.
    let pinned = 0.111_686_871_208_199;
    let ok = delta0 > 0.0
        && (delta0 - pinned).abs() < 1e-6
        && (r1.minimum - r2.minimum).abs() < 1e-6;
    report(
        6,
        ok,
        &format!("restricted margin delta0 = {delta0:.9} (pinned {pinned}), stable across runs"),
        t.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_07_jensen_property_suites() {
    let t = Instant::now();
    let mut ok = true;
    // Multiplicative Jensen on its convexity domain (1/k, 1).
    let mut gen = SplitMix64::new(0xACCE_0701);
    for _ in 0..100_000 {
        let k = 2 + gen.next_below(5) as usize;
        let lo = 1.0 / k as f64;
        let x: Vec<f64> = (0..k)
            .map(|_| lo + (1.0 - lo) * (1e-6 + (1.0 - 2e-6) * gen.next_f64()))
            .collect();
        if analytic::mult_jensen_gap(&x).unwrap() < -1e-12 {
            ok = false;
        }
    }
    // Defect Jensen with a certified second-derivative floor.
    let k = 4u32;
    let (a, b) = (0.3f64.ln(), 0.9f64.ln());
    let m = analytic::phi2_lower(a, b, k).unwrap();
    let mut gen = SplitMix64::new(0xACCE_0702);
    for _ in 0..100_000 {
        let ys: Vec<f64> = (0..k as usize)
            .map(|_| a + (b - a) * gen.next_f64())
            .collect();
        if analytic::holder_defect_gap(&ys, k, m).unwrap() < -1e-12 {
            ok = false;
        }
    }
    report(
        7,
        ok,
        "10^5 samples each: multiplicative-Jensen and defect-Jensen gaps >= -1e-12",
        t.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_08_markov_floor_invariant() {
    let t = Instant::now();
    let mut gen = SplitMix64::new(0xACCE_0801);
    let mut ok = true;
    for _ in 0..10_000 {
        // Random spectrum, then parameters drawn to satisfy the
        // preconditions exactly.
        let n = 10 + gen.next_below(51) as usize;
        let k = 2 + gen.next_below(3) as usize;
        let mut histogram = std::collections::BTreeMap::new();
        let bins = 1 + gen.next_below(8);
        for _ in 0..bins {
            let pages = gen.next_below(n as u64 + 1) as usize;
            let mult = 1 + gen.next_below(1000);
            *histogram.entry(pages).or_insert(0) += mult;
        }
        let total: u64 = histogram.values().sum();
        let s = Spectrum {
            color: Color::Blue,
            k,
            n,
            histogram,
            total_spines: total,
        };
        let mean = s.mean_pages().unwrap();
        // xi = mean/N * a/b with a <= b keeps the mean precondition true.
        let a = 1 + gen.next_below(16) as i128;
        let b = a + gen.next_below(16) as i128;
        let xi = mean.clone() / Rat::from_integer(n as i128) * rat(a, b);
        if xi <= Rat::from_integer(0) {
            continue;
        }
        // nu strictly below xi.
        let c = 1 + gen.next_below(9) as i128;
        let nu = xi.clone() * rat(c, 10);
        // kappa at most total/N^k.
        let mut n_pow = Rat::one();
        for _ in 0..k {
            n_pow *= Rat::from_integer(n as i128);
        }
        let d = 1 + gen.next_below(16) as i128;
        let e = d + gen.next_below(16) as i128;
        let kappa = Rat::from_integer(total as i128) / n_pow * rat(d, e);
        match books::markov_floor_check(&s, xi, nu, kappa) {
            Ok(true) => {}
            Ok(false) => ok = false,
            Err(err) => panic!("preconditions violated by construction: {err}"),
        }
    }
    report(
        8,
        ok,
        "markov floor holds on 10^4 generated spectra satisfying its preconditions",
        t.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_09_random_coloring_concentration() {
    let t = Instant::now();
    let mut density_ok = true;
    let mut band_ok = true;
    let mut maxima = Vec::new();
    for seed in 1..=5u64 {
        let c = random_coloring(2000, rat(1, 2), seed).unwrap();
        let pairs = 2000 * 1999 / 2;
        let density = c.count_edges(Color::Blue) as f64 / pairs as f64;
        if (density - 0.5).abs() > 0.01 {
            density_ok = false;
        }
        let s = spectrum(&c, Color::Blue, 2).unwrap();
        let frac = s.max_pages().unwrap() as f64 / 2000.0;
        maxima.push(frac);
        if !(0.23..=0.29).contains(&frac) {
            band_ok = false;
        }
    }
    let ok = density_ok && band_ok;
    report(
        9,
        ok,
        &format!(
            "density within 0.01 of 1/2: {density_ok}; max pages/N in [0.23, 0.29]: {band_ok} \
             (observed {maxima:?}; the stated ceiling sits below the true \
             concentration point ~0.295, see regression test)"
        ),
        t.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_10_quasirandomness_contrast() {
    let t = Instant::now();
    let (kp, parts) = balanced_kpartite(2, 6).unwrap();
    let r = quasi_exhaustive(&kp, rat(1, 2), rat(1, 10)).unwrap();
    let mut ok = r.verdict == QuasiVerdict::Violated
        && r.deviation == rat(18, 1)
        && r.bound == rat(72, 5)
        && ((r.x == parts.parts()[0] && r.y == parts.parts()[1])
            || (r.x == parts.parts()[1] && r.y == parts.parts()[0]));

    for seed in 1..=5u64 {
        let c = random_coloring(500, rat(1, 2), seed).unwrap();
        let s = quasi_sampled(&c, rat(1, 2), rat(1, 20), 1000, 7).unwrap();
        if s.verdict != QuasiVerdict::NoViolationFound {
            ok = false;
        }
    }
    report(
        10,
        ok,
        "2-partite flagged non-quasirandom with the block pair (18 > 14.4); \
         5 random colorings at n=500 clear theta = 0.05",
        t.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_11_kpartite_distance() {
    let t = Instant::now();
    let mut ok = true;
    for k in [2usize, 3, 4] {
        let (c, _) = balanced_kpartite(k, 5).unwrap();
        let (d, _) = kpartite_distance(&c, k, 4, 9).unwrap();
        if d != 0 {
            ok = false;
        }
        // Adversarial single flip: recolor one cross edge blue.
        let n = c.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if c.is_blue(i, j) {
                    edges.push((i, j));
                }
            }
        }
        edges.push((0, 5)); // vertices 0 and 5 lie in different parts
        let flipped = TwoColoring::build(n, &edges).unwrap();
        let (d, _) = kpartite_distance(&flipped, k, 4, 9).unwrap();
        if d != 1 {
            ok = false;
        }
    }
    report(
        11,
        ok,
        "distance 0 on balanced k-partite colorings (k = 2, 3, 4) and 1 after one flipped edge",
        t.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_12_threshold_formulas() {
    let t = Instant::now();
    let mut ok = analytic::c1(2).unwrap() == 1.0;
    for i in 1..=99 {
        let p = i as f64 / 100.0;
        if analytic::k2(p).unwrap() != analytic::k1(1.0 - p).unwrap() {
            ok = false;
        }
    }
    report(
        12,
        ok,
        "c1(2) = 1 and k2(p) = k1(1-p) across the p-grid, exactly",
        t.elapsed(),
        Duration::from_secs(10),
    );
}

// ----------------------------------------------------------------------------
// Regression pin for the quantity criterion 9 measures (true fixture values).
// ----------------------------------------------------------------------------

#[test]
fn regression_max_pages_fixture_values() {
    // Cross-validated against an independent implementation of the same
    // seeded stream; the max/N values are what a p^2 N + extreme-value
    // analysis predicts (~0.295 N).
    let expected = [(1u64, 587usize), (2, 584), (3, 596), (4, 585), (5, 600)];
    for (seed, max_pages) in expected {
        let c = random_coloring(2000, rat(1, 2), seed).unwrap();
        let s = spectrum(&c, Color::Blue, 2).unwrap();
        assert_eq!(s.max_pages(), Some(max_pages), "seed {seed}");
    }
}
