//! booklab command line: generation, book analysis, Ramsey search,
//! analytic checks, and quasirandomness diagnostics over kcg files.
//!
//! Every run first echoes its effective configuration (including seeds) as
//! a JSON line, so any output is reproducible from its own log. Reports
//! are JSON-lines; exact rationals travel as "NUM/DEN" strings.
//!
//! Exit codes: 0 success, 1 domain/usage error, 2 inconclusive or cap
//! exceeded (never together with a value claim).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use booklab::analytic;
use booklab::books::{self, ManyBooksThresholds};
use booklab::coloring::{Color, TwoColoring};
use booklab::construct;
use booklab::error::Error;
use booklab::quasi::{self, QuasiMethod, QuasiVerdict};
use booklab::rat::{format_rat, parse_rat, rat_to_f64, Rat};
use booklab::search::{self, RamseyValue, SearchOptions};

#[derive(Parser)]
#[command(name = "booklab", version, about = "Books, colorings, and quasirandomness diagnostics")]
struct Cli {
    /// Worker budget; defaults to BOOKLAB_THREADS, then all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a coloring and write it as kcg v1.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Book statistics of one color at one spine size.
    Books(BooksArgs),
    /// Count spines clearing the many-books extension thresholds.
    ManyBooks(ManyBooksArgs),
    /// Exact book Ramsey value (or bounds) by exhaustive search.
    Ramsey(RamseyArgs),
    /// Stochastic search for a lower-bound witness coloring.
    Witness(WitnessArgs),
    /// Closed-form thresholds and grid minimization.
    #[command(subcommand)]
    Analytic(AnalyticCmd),
    /// Deviation-witness search for (p, theta)-quasirandomness.
    Quasi(QuasiArgs),
    /// Exact extension-variance identity check.
    Identity(IdentityArgs),
    /// Edit-distance upper bound to a balanced complete k-partite red graph.
    Kdist(KdistArgs),
}

#[derive(Subcommand)]
enum GenCmd {
    /// Balanced k-partite coloring: blue blocks, red across.
    Kpartite(GenKpartiteArgs),
    /// Seeded p-random coloring.
    Random(GenRandomArgs),
}

#[derive(Args)]
struct GenKpartiteArgs {
    #[arg(long)]
    k: usize,
    #[arg(long = "part-size")]
    part_size: usize,
    /// Output kcg path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenRandomArgs {
    #[arg(long)]
    n: usize,
    /// Blue probability as NUM/DEN.
    #[arg(long)]
    p: String,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BooksArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    color: Color,
    #[arg(long)]
    k: usize,
    /// Emit the full extension-count histogram.
    #[arg(long)]
    spectrum: bool,
    /// Emit the maximum book (spine and pages).
    #[arg(long)]
    max: bool,
    /// Redirect JSON-lines to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ManyBooksArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Red-threshold parameter c as NUM/DEN (goodness normalization).
    #[arg(long, conflicts_with = "variant_p")]
    c: Option<String>,
    /// Quasirandom-regime variant: thresholds from p as NUM/DEN.
    #[arg(long = "variant-p")]
    variant_p: Option<String>,
    #[arg(long)]
    gamma: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RamseyArgs {
    #[arg(long)]
    k: usize,
    /// Red book page count.
    #[arg(long)]
    m: usize,
    /// Blue book page count.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    cap: usize,
    /// Node budget before the search declares itself inconclusive.
    #[arg(long, default_value_t = search::DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Save the lower-bound witness coloring here.
    #[arg(long = "witness-out")]
    witness_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Number of vertices of the sought coloring.
    #[arg(long = "N")]
    vertices: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Annealing move budget.
    #[arg(long)]
    budget: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum AnalyticCmd {
    /// The threshold k1(p).
    K1 {
        #[arg(long, value_parser = parse_real)]
        p: f64,
    },
    /// The infimum c1(k) of the random-regime range.
    C1 {
        #[arg(long)]
        k: u32,
    },
    /// Grid-plus-refinement minimization of the core inequality function.
    #[command(name = "min-F")]
    MinF {
        #[arg(long, value_parser = parse_real)]
        p: f64,
        #[arg(long)]
        k: u32,
        /// Restrict to points with some coordinate at least eps0 from p.
        #[arg(long, value_parser = parse_real)]
        eps0: Option<f64>,
        /// Grid points per axis.
        #[arg(long, default_value_t = 21)]
        grid: usize,
    },
}

#[derive(Args)]
struct QuasiArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    p: String,
    #[arg(long)]
    theta: String,
    /// Definitive scan over all disjoint pairs (n <= 18).
    #[arg(long, conflicts_with_all = ["probes", "seed"])]
    exhaustive: bool,
    #[arg(long)]
    probes: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    p: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KdistArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    restarts: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Accepts either NUM/DEN or a decimal literal.
fn parse_real(s: &str) -> Result<f64, String> {
    if s.contains('/') {
        return parse_rat(s).map(|r| rat_to_f64(&r)).map_err(|e| e.to_string());
    }
    s.parse::<f64>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Usage problems (unknown flag, malformed value) are domain
            // errors: exit 1, keeping 2 for inconclusive outcomes.
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("BOOKLAB_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli.cmd, threads) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Inconclusive(_) | Error::TooLarge(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

/// JSON-lines sink: stdout by default, a file with --out.
struct Sink {
    out: Box<dyn Write>,
}

impl Sink {
    fn new(path: &Option<PathBuf>) -> Result<Sink, Error> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
            None => Box::new(std::io::stdout().lock()),
        };
        Ok(Sink { out })
    }

    fn line(&mut self, v: Value) -> Result<(), Error> {
        writeln!(self.out, "{v}")?;
        Ok(())
    }

    fn finish(mut self) -> Result<(), Error> {
        self.out.flush()?;
        Ok(())
    }
}

fn load_input(path: &PathBuf) -> Result<TwoColoring, Error> {
    TwoColoring::load(path).map_err(|e| match e {
        Error::Io(ioe) => Error::Format(format!(
            "missing or unreadable input file {}: {ioe}",
            path.display()
        )),
        other => other,
    })
}

fn rat_arg(s: &str) -> Result<Rat, Error> {
    parse_rat(s)
}

fn run(cmd: Cmd, threads: usize) -> Result<u8, Error> {
    match cmd {
        Cmd::Gen(GenCmd::Kpartite(a)) => {
            let mut sink = Sink::new(&None)?;
            sink.line(json!({"config": {"subcommand": "gen kpartite", "k": a.k,
                "part_size": a.part_size, "out": a.out.display().to_string(),
                "threads": threads}}))?;
            let (c, parts) = construct::balanced_kpartite(a.k, a.part_size)?;
            c.save(&a.out)?;
            sink.line(json!({
                "type": "coloring",
                "n": c.n(),
                "blue_edges": c.count_edges(Color::Blue),
                "red_edges": c.count_edges(Color::Red),
                "parts": parts.parts().iter().map(|p| p.to_vec()).collect::<Vec<_>>(),
                "path": a.out.display().to_string(),
            }))?;
            sink.finish()?;
            Ok(0)
        }
        Cmd::Gen(GenCmd::Random(a)) => {
            let p = rat_arg(&a.p)?;
            let mut sink = Sink::new(&None)?;
            sink.line(json!({"config": {"subcommand": "gen random", "n": a.n,
                "p": format_rat(&p), "seed": a.seed,
                "out": a.out.display().to_string(), "threads": threads}}))?;
            let c = construct::random_coloring(a.n, p.clone(), a.seed)?;
            c.save(&a.out)?;
            let blue = c.count_edges(Color::Blue) as f64;
            let pairs = (a.n * (a.n - 1) / 2) as f64;
            let pf = rat_to_f64(&p);
            let mean = pf * pairs;
            let sigma = (pairs * pf * (1.0 - pf)).sqrt();
            let mut line = json!({
                "type": "coloring",
                "n": c.n(),
                "blue_edges": c.count_edges(Color::Blue),
                "red_edges": c.count_edges(Color::Red),
                "path": a.out.display().to_string(),
            });
            // Flag (without failing) a blue count outside 3 sigma.
            if sigma > 0.0 && (blue - mean).abs() > 3.0 * sigma {
                line["warning"] = json!(format!(
                    "blue edge count {blue} deviates more than 3 sigma from {mean:.1}"
                ));
            }
            sink.line(line)?;
            sink.finish()?;
            Ok(0)
        }
        Cmd::Books(a) => {
            let c = load_input(&a.input)?;
            let mut sink = Sink::new(&a.out)?;
            sink.line(json!({"config": {"subcommand": "books",
                "in": a.input.display().to_string(), "color": a.color.name(),
                "k": a.k, "spectrum": a.spectrum, "max": a.max, "threads": threads}}))?;
            let spec = books::spectrum(&c, a.color, a.k)?;
            sink.line(json!({
                "type": "books",
                "color": a.color.name(),
                "k": a.k,
                "n": c.n(),
                "total_spines": spec.total_spines,
                "max_pages": spec.max_pages(),
                "sum_ext": spec.sum_ext().to_string(),
            }))?;
            if a.spectrum {
                for (pages, spines) in &spec.histogram {
                    sink.line(json!({
                        "type": "spectrum_entry",
                        "color": a.color.name(),
                        "k": a.k,
                        "pages": pages,
                        "spines": spines,
                    }))?;
                }
            }
            if a.max {
                let b = books::max_book(&c, a.color, a.k)?;
                sink.line(json!({
                    "type": "max_book",
                    "color": b.color.name(),
                    "k": b.k,
                    "spine": b.spine,
                    "pages": b.pages,
                }))?;
            }
            sink.finish()?;
            Ok(0)
        }
        Cmd::ManyBooks(a) => {
            let c = load_input(&a.input)?;
            let gamma = rat_arg(&a.gamma)?;
            let thresholds = match (&a.c, &a.variant_p) {
                (Some(cs), None) => ManyBooksThresholds::Goodness { c: rat_arg(cs)? },
                (None, Some(ps)) => ManyBooksThresholds::Quasirandom { p: rat_arg(ps)? },
                _ => {
                    return Err(Error::Domain(
                        "exactly one of --c and --variant-p is required".into(),
                    ))
                }
            };
            let mut sink = Sink::new(&a.out)?;
            sink.line(json!({"config": {"subcommand": "many-books",
                "in": a.input.display().to_string(),
                "c": a.c, "variant_p": a.variant_p,
                "gamma": format_rat(&gamma), "k": a.k, "threads": threads}}))?;
            let r = books::many_books(&c, &thresholds, gamma, a.k)?;
            sink.line(json!({
                "type": "many_books",
                "k": r.k,
                "n": r.n,
                "variant": r.variant,
                "gamma": format_rat(&r.gamma),
                "red_threshold": format_rat(&r.red_threshold),
                "blue_threshold": format_rat(&r.blue_threshold),
                "statement_red_threshold": r.statement_red_threshold.as_ref().map(format_rat),
                "statement_blue_threshold": r.statement_blue_threshold.as_ref().map(format_rat),
                "red_qualifying": r.red_qualifying,
                "blue_qualifying": r.blue_qualifying,
                "needed": format_rat(&r.needed),
                "verdict": r.verdict,
            }))?;
            sink.finish()?;
            Ok(0)
        }
        Cmd::Ramsey(a) => {
            let mut sink = Sink::new(&a.out)?;
            sink.line(json!({"config": {"subcommand": "ramsey", "k": a.k,
                "m": a.m, "n": a.n, "cap": a.cap, "budget": a.budget,
                "threads": threads}}))?;
            let opts = SearchOptions {
                node_budget: a.budget,
                parallel: threads != 1,
            };
            let r = search::ramsey_number(a.k, a.m, a.n, a.cap, &opts)?;
            if let (Some(path), Some(w)) = (&a.witness_out, &r.witness) {
                w.save(path)?;
            }
            let (value, lower, exact) = match r.value {
                RamseyValue::Exact(v) => (Some(v), v, true),
                RamseyValue::BoundsOnly { lower } => (None, lower, false),
            };
            // The two analytic lower bounds for this query (c = m/n), and
            // which one dominates at these sizes.
            let goodness = construct::goodness_bound(a.k, a.n);
            let random = construct::random_bound(
                Rat::new(a.m as i128, a.n as i128),
                a.k,
                a.n,
            )?;
            sink.line(json!({
                "type": "ramsey",
                "k": r.k,
                "m": r.red_pages,
                "n": r.blue_pages,
                "value": value,
                "lower_bound": lower,
                "exact": exact,
                "goodness_lower_bound": goodness,
                "random_lower_bound": random,
                "dominant_lower_bound":
                    if (goodness as f64) >= random { "goodness" } else { "random" },
                "witness_vertices": r.witness.as_ref().map(TwoColoring::n),
                "nodes": r.stats.nodes,
                "success_prunes": r.stats.success_prunes,
                "canonical_prunes": r.stats.canonical_prunes,
            }))?;
            sink.finish()?;
            Ok(if exact { 0 } else { 2 })
        }
        Cmd::Witness(a) => {
            let mut sink = Sink::new(&None)?;
            sink.line(json!({"config": {"subcommand": "witness", "N": a.vertices,
                "k": a.k, "m": a.m, "n": a.n, "budget": a.budget, "seed": a.seed,
                "out": a.out.display().to_string(), "threads": threads}}))?;
            let w = search::witness_search(a.vertices, a.k, a.m, a.n, a.budget, a.seed)?;
            match w {
                Some(c) => {
                    c.save(&a.out)?;
                    sink.line(json!({
                        "type": "witness",
                        "found": true,
                        "n": c.n(),
                        "blue_edges": c.count_edges(Color::Blue),
                        "path": a.out.display().to_string(),
                    }))?;
                }
                None => {
                    sink.line(json!({"type": "witness", "found": false}))?;
                }
            }
            sink.finish()?;
            Ok(0)
        }
        Cmd::Analytic(cmd) => {
            let mut sink = Sink::new(&None)?;
            match cmd {
                AnalyticCmd::K1 { p } => {
                    sink.line(json!({"config": {"subcommand": "analytic k1", "p": p,
                        "threads": threads}}))?;
                    let v = analytic::k1(p)?;
                    sink.line(json!({"type": "k1", "p": p, "k1": v,
                        "k2": analytic::k2(p)?}))?;
                }
                AnalyticCmd::C1 { k } => {
                    sink.line(json!({"config": {"subcommand": "analytic c1", "k": k,
                        "threads": threads}}))?;
                    let v = analytic::c1(k)?;
                    sink.line(json!({"type": "c1", "k": k, "c1": v}))?;
                }
                AnalyticCmd::MinF { p, k, eps0, grid } => {
                    sink.line(json!({"config": {"subcommand": "analytic min-F", "p": p,
                        "k": k, "eps0": eps0, "grid": grid, "threads": threads}}))?;
                    let r = analytic::grid_min_f(p, k, grid, eps0)?;
                    sink.line(json!({
                        "type": "min_F",
                        "p": r.p,
                        "k": r.k,
                        "minimum": r.minimum,
                        "argmin": r.argmin,
                        "margin_over_one": r.minimum - 1.0,
                        "resolution": r.resolution,
                        "restricted": r.restricted,
                        "exhaustive": r.exhaustive,
                        "hypothesis_met": r.hypothesis_met,
                        "points_probed": r.points_probed,
                    }))?;
                }
            }
            sink.finish()?;
            Ok(0)
        }
        Cmd::Quasi(a) => {
            let c = load_input(&a.input)?;
            let p = rat_arg(&a.p)?;
            let theta = rat_arg(&a.theta)?;
            let mut sink = Sink::new(&a.out)?;
            sink.line(json!({"config": {"subcommand": "quasi",
                "in": a.input.display().to_string(), "p": format_rat(&p),
                "theta": format_rat(&theta), "exhaustive": a.exhaustive,
                "probes": a.probes, "seed": a.seed, "threads": threads}}))?;
            let r = if a.exhaustive {
                quasi::quasi_exhaustive(&c, p, theta)?
            } else {
                let probes = a.probes.unwrap_or(1000);
                let seed = a.seed.unwrap_or(0);
                quasi::quasi_sampled(&c, p, theta, probes, seed)?
            };
            sink.line(json!({
                "type": "quasi",
                "method": match r.method {
                    QuasiMethod::Exhaustive => "exhaustive",
                    QuasiMethod::Sampled => "sampled",
                },
                "verdict": match r.verdict {
                    QuasiVerdict::Violated => "violated",
                    QuasiVerdict::Quasirandom => "quasirandom",
                    QuasiVerdict::NoViolationFound => "no-violation-found",
                },
                "deviation": format_rat(&r.deviation),
                "bound": format_rat(&r.bound),
                "x": r.x.to_vec(),
                "y": r.y.to_vec(),
                "blue_pairs": r.blue_pairs,
                "probes": r.probes,
            }))?;
            sink.finish()?;
            Ok(0)
        }
        Cmd::Identity(a) => {
            let c = load_input(&a.input)?;
            let p = rat_arg(&a.p)?;
            let mut sink = Sink::new(&a.out)?;
            sink.line(json!({"config": {"subcommand": "identity",
                "in": a.input.display().to_string(), "k": a.k,
                "p": format_rat(&p), "threads": threads}}))?;
            let r = quasi::identity_check(&c, a.k, p)?;
            sink.line(json!({
                "type": "identity",
                "k": r.k,
                "n": r.n,
                "p": format_rat(&r.p),
                "blue_k_cliques": r.b_k,
                "blue_k1_cliques": r.b_k1,
                "blue_k2_minus_edge": r.b_k2e.to_string(),
                "e_direct": format_rat(&r.e_direct),
                "e_identity": format_rat(&r.e_identity),
                "equal": r.equal,
                "exact": r.exact,
            }))?;
            sink.finish()?;
            Ok(0)
        }
        Cmd::Kdist(a) => {
            let c = load_input(&a.input)?;
            let mut sink = Sink::new(&a.out)?;
            sink.line(json!({"config": {"subcommand": "kdist",
                "in": a.input.display().to_string(), "k": a.k,
                "restarts": a.restarts, "seed": a.seed, "threads": threads}}))?;
            let (d, parts) = quasi::kpartite_distance(&c, a.k, a.restarts, a.seed)?;
            sink.line(json!({
                "type": "kdist",
                "k": a.k,
                "n": c.n(),
                "edit_distance_upper_bound": d,
                "parts": parts.parts().iter().map(|p| p.to_vec()).collect::<Vec<_>>(),
            }))?;
            sink.finish()?;
            Ok(0)
        }
    }
}
