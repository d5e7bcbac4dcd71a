//! C ABI for booklab.
//!
//! Conventions:
//! - Colorings and spectra are opaque handles, created and freed through
//!   these functions only.
//! - Every fallible call returns a [`BlkStatus`]; results travel through
//!   out-pointers that are written only on `BLK_STATUS_OK`.
//! - The most recent error message is kept per thread and retrievable via
//!   [`blk_last_error_message`].
//! - Exact rationals cross the boundary as numerator/denominator pairs.

use std::cell::RefCell;
use std::ffi::CStr;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use booklab::books;
use booklab::coloring::{Color, TwoColoring};
use booklab::construct;
use booklab::error::Error;
use booklab::quasi;
use booklab::rat::Rat;
use booklab::search;

// ============================================================================
// Status codes and error reporting
// ============================================================================

/// Result of a booklab call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlkStatus {
    Ok = 0,
    /// A numeric argument was outside its domain.
    Domain = 1,
    /// An operation precondition was violated.
    Precondition = 2,
    /// Persistence format violation.
    Format = 3,
    /// Underlying I/O failure.
    Io = 4,
    /// The instance exceeds an exhaustive-processing cap.
    TooLarge = 5,
    /// A search hit its budget without a definitive answer.
    Inconclusive = 6,
    /// No monochromatic clique of the requested size exists.
    NoSpine = 7,
    /// A supplied spine is not monochromatic.
    NotMonochromatic = 8,
    /// A required pointer argument was null.
    NullArgument = 9,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 10,
    /// A supplied buffer was too small.
    BufferTooSmall = 11,
    /// The callee panicked; state may be stale but memory is intact.
    Panic = 12,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> BlkStatus {
    match err {
        Error::VertexOutOfRange { .. } | Error::SelfLoop { .. } | Error::Domain(_) => {
            BlkStatus::Domain
        }
        Error::EmptySet { .. } | Error::Precondition(_) => BlkStatus::Precondition,
        Error::Format(_) => BlkStatus::Format,
        Error::Io(_) => BlkStatus::Io,
        Error::TooLarge(_) => BlkStatus::TooLarge,
        Error::Inconclusive(_) => BlkStatus::Inconclusive,
        Error::NoSpine { .. } => BlkStatus::NoSpine,
        Error::NotMonochromatic => BlkStatus::NotMonochromatic,
    }
}

fn fail(err: Error) -> BlkStatus {
    let code = status_of(&err);
    set_error(err.to_string());
    code
}

/// Copies the calling thread's last error message (NUL-terminated) into
/// `buf`. Returns the full message length in bytes, excluding the NUL; a
/// return value of `cap` or more means the message was truncated. Passing
/// a null `buf` just queries the length.
#[no_mangle]
pub extern "C" fn blk_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Runs a closure, converting panics into `BLK_STATUS_PANIC`.
fn guarded(f: impl FnOnce() -> BlkStatus) -> BlkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic".into());
            BlkStatus::Panic
        }
    }
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        $(
            if $p.is_null() {
                set_error(format!("null pointer argument: {}", stringify!($p)));
                return BlkStatus::NullArgument;
            }
        )+
    };
}

// ============================================================================
// Colors and opaque handles
// ============================================================================

/// Edge color.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlkColor {
    Red = 0,
    Blue = 1,
}

impl From<BlkColor> for Color {
    fn from(c: BlkColor) -> Color {
        match c {
            BlkColor::Red => Color::Red,
            BlkColor::Blue => Color::Blue,
        }
    }
}

/// Opaque two-coloring of a complete graph.
pub struct BlkColoring {
    inner: TwoColoring,
}

/// Opaque extension-count spectrum.
pub struct BlkSpectrum {
    inner: books::Spectrum,
    // Sorted (pages, multiplicity) pairs for indexed access.
    entries: Vec<(u64, u64)>,
}

fn c_str_arg(s: *const c_char) -> Result<String, BlkStatus> {
    if s.is_null() {
        set_error("null string argument".into());
        return Err(BlkStatus::NullArgument);
    }
    match unsafe { CStr::from_ptr(s) }.to_str() {
        Ok(v) => Ok(v.to_owned()),
        Err(_) => {
            set_error("string argument is not valid UTF-8".into());
            Err(BlkStatus::InvalidUtf8)
        }
    }
}

fn rational_arg(num: i64, den: i64) -> Result<Rat, BlkStatus> {
    if den <= 0 {
        set_error(format!("denominator must be positive, got {den}"));
        return Err(BlkStatus::Domain);
    }
    Ok(Rat::new(num as i128, den as i128))
}

unsafe fn coloring_ref<'a>(h: *const BlkColoring) -> &'a TwoColoring {
    &(*h).inner
}

fn give_coloring(c: TwoColoring, out: *mut *mut BlkColoring) -> BlkStatus {
    unsafe {
        *out = Box::into_raw(Box::new(BlkColoring { inner: c }));
    }
    BlkStatus::Ok
}

// ============================================================================
// Coloring construction and persistence
// ============================================================================

/// Builds a coloring of `K_n` whose blue edges are the `pair_count`
/// unordered pairs in `edges` (flattened as u, v, u, v, ...); all other
/// distinct pairs are red.
///
/// # Safety
/// `edges` must point to `2 * pair_count` readable `uint32_t`s (or be null
/// with `pair_count == 0`), and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_coloring_build(
    n: usize,
    edges: *const u32,
    pair_count: usize,
    out: *mut *mut BlkColoring,
) -> BlkStatus {
    guarded(|| {
        nonnull!(out);
        if pair_count > 0 {
            nonnull!(edges);
        }
        let pairs: Vec<(usize, usize)> = (0..pair_count)
            .map(|i| unsafe {
                (
                    *edges.add(2 * i) as usize,
                    *edges.add(2 * i + 1) as usize,
                )
            })
            .collect();
        match TwoColoring::build(n, &pairs) {
            Ok(c) => give_coloring(c, out),
            Err(e) => fail(e),
        }
    })
}

/// Balanced k-partite coloring on `k * part_size` vertices: blue inside
/// contiguous blocks, red across.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_coloring_kpartite(
    k: usize,
    part_size: usize,
    out: *mut *mut BlkColoring,
) -> BlkStatus {
    guarded(|| {
        nonnull!(out);
        match construct::balanced_kpartite(k, part_size) {
            Ok((c, _)) => give_coloring(c, out),
            Err(e) => fail(e),
        }
    })
}

/// Seeded p-random coloring with blue probability `p_num / p_den`
/// (reproducible across platforms).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_coloring_random(
    n: usize,
    p_num: i64,
    p_den: i64,
    seed: u64,
    out: *mut *mut BlkColoring,
) -> BlkStatus {
    guarded(|| {
        nonnull!(out);
        let p = match rational_arg(p_num, p_den) {
            Ok(p) => p,
            Err(code) => return code,
        };
        match construct::random_coloring(n, p, seed) {
            Ok(c) => give_coloring(c, out),
            Err(e) => fail(e),
        }
    })
}

/// Loads a coloring from a kcg v1 file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_coloring_load(
    path: *const c_char,
    out: *mut *mut BlkColoring,
) -> BlkStatus {
    guarded(|| {
        nonnull!(out);
        let path = match c_str_arg(path) {
            Ok(p) => p,
            Err(code) => return code,
        };
        match TwoColoring::load(path) {
            Ok(c) => give_coloring(c, out),
            Err(e) => fail(e),
        }
    })
}

/// Writes the coloring in the canonical kcg v1 format.
///
/// # Safety
/// `h` must be a live handle from this library; `path` a NUL-terminated
/// string.
#[no_mangle]
pub unsafe extern "C" fn blk_coloring_save(
    h: *const BlkColoring,
    path: *const c_char,
) -> BlkStatus {
    guarded(|| {
        nonnull!(h);
        let path = match c_str_arg(path) {
            Ok(p) => p,
            Err(code) => return code,
        };
        match unsafe { coloring_ref(h) }.save(path) {
            Ok(()) => BlkStatus::Ok,
            Err(e) => fail(e),
        }
    })
}

/// Releases a coloring handle. Null is a no-op.
///
/// # Safety
/// `h` must be a handle previously returned by this library and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn blk_coloring_free(h: *mut BlkColoring) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

// ============================================================================
// Coloring queries
// ============================================================================

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn blk_coloring_vertex_count(h: *const BlkColoring) -> usize {
    if h.is_null() {
        return 0;
    }
    unsafe { coloring_ref(h) }.n()
}

/// Whether edge (u, v) is blue.
///
/// # Safety
/// `h` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_coloring_is_blue(
    h: *const BlkColoring,
    u: usize,
    v: usize,
    out: *mut bool,
) -> BlkStatus {
    guarded(|| {
        nonnull!(h, out);
        let c = unsafe { coloring_ref(h) };
        if u >= c.n() || v >= c.n() {
            return fail(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: c.n(),
            });
        }
        if u == v {
            return fail(Error::SelfLoop { vertex: u });
        }
        unsafe { *out = c.is_blue(u, v) };
        BlkStatus::Ok
    })
}

/// Total number of unordered edges of `color`.
///
/// # Safety
/// `h` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_coloring_edge_count(
    h: *const BlkColoring,
    color: BlkColor,
    out: *mut u64,
) -> BlkStatus {
    guarded(|| {
        nonnull!(h, out);
        unsafe { *out = coloring_ref(h).count_edges(color.into()) as u64 };
        BlkStatus::Ok
    })
}

/// Exact number of monochromatic k-cliques of `color`.
///
/// # Safety
/// `h` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_count_cliques(
    h: *const BlkColoring,
    color: BlkColor,
    k: usize,
    out: *mut u64,
) -> BlkStatus {
    guarded(|| {
        nonnull!(h, out);
        match books::count_cliques(unsafe { coloring_ref(h) }, color.into(), k) {
            Ok(v) => {
                unsafe { *out = v };
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The spine with the most pages. `spine_out` receives the k spine
/// vertices and must have capacity for `k` entries; `pages_out` receives
/// the page count.
///
/// # Safety
/// `h` must be a live handle; `spine_out` must point to `k` writable
/// u64 slots; `pages_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn blk_max_book(
    h: *const BlkColoring,
    color: BlkColor,
    k: usize,
    spine_out: *mut u64,
    pages_out: *mut u64,
) -> BlkStatus {
    guarded(|| {
        nonnull!(h, spine_out, pages_out);
        match books::max_book(unsafe { coloring_ref(h) }, color.into(), k) {
            Ok(b) => {
                for (i, &v) in b.spine.iter().enumerate() {
                    unsafe { *spine_out.add(i) = v as u64 };
                }
                unsafe { *pages_out = b.pages as u64 };
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

// ============================================================================
// Spectra
// ============================================================================

/// Computes the extension-count spectrum of `color` at spine size `k`.
///
/// # Safety
/// `h` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_spectrum_new(
    h: *const BlkColoring,
    color: BlkColor,
    k: usize,
    out: *mut *mut BlkSpectrum,
) -> BlkStatus {
    guarded(|| {
        nonnull!(h, out);
        match books::spectrum(unsafe { coloring_ref(h) }, color.into(), k) {
            Ok(s) => {
                let entries = s
                    .histogram
                    .iter()
                    .map(|(&p, &m)| (p as u64, m))
                    .collect();
                unsafe {
                    *out = Box::into_raw(Box::new(BlkSpectrum { inner: s, entries }));
                }
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Number of distinct page counts in the histogram.
///
/// # Safety
/// `s` must be a live spectrum handle or null.
#[no_mangle]
pub unsafe extern "C" fn blk_spectrum_entry_count(s: *const BlkSpectrum) -> usize {
    if s.is_null() {
        return 0;
    }
    unsafe { &*s }.entries.len()
}

/// Reads histogram entry `idx` (ascending page order).
///
/// # Safety
/// `s` must be a live spectrum handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn blk_spectrum_entry(
    s: *const BlkSpectrum,
    idx: usize,
    pages_out: *mut u64,
    spines_out: *mut u64,
) -> BlkStatus {
    guarded(|| {
        nonnull!(s, pages_out, spines_out);
        let spec = unsafe { &*s };
        match spec.entries.get(idx) {
            Some(&(p, m)) => {
                unsafe {
                    *pages_out = p;
                    *spines_out = m;
                }
                BlkStatus::Ok
            }
            None => {
                set_error(format!(
                    "spectrum entry {idx} out of range ({} entries)",
                    spec.entries.len()
                ));
                BlkStatus::Domain
            }
        }
    })
}

/// Total number of spines in the spectrum.
///
/// # Safety
/// `s` must be a live spectrum handle or null.
#[no_mangle]
pub unsafe extern "C" fn blk_spectrum_total_spines(s: *const BlkSpectrum) -> u64 {
    if s.is_null() {
        return 0;
    }
    unsafe { &*s }.inner.total_spines
}

/// Releases a spectrum handle. Null is a no-op.
///
/// # Safety
/// `s` must be a handle previously returned by this library and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn blk_spectrum_free(s: *mut BlkSpectrum) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

// ============================================================================
// Bounds, thresholds, and verdict-style operations
// ============================================================================

/// The k-partite lower bound `k (n + k - 1) + 1`.
#[no_mangle]
pub extern "C" fn blk_goodness_bound(k: u64, n: u64) -> u64 {
    construct::goodness_bound(k as usize, n as usize) as u64
}

/// The random lower bound `(c^{1/k} + 1)^k n` for `c = c_num / c_den`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_random_bound(
    c_num: i64,
    c_den: i64,
    k: usize,
    n: usize,
    out: *mut f64,
) -> BlkStatus {
    guarded(|| {
        nonnull!(out);
        let c = match rational_arg(c_num, c_den) {
            Ok(c) => c,
            Err(code) => return code,
        };
        match construct::random_bound(c, k, n) {
            Ok(v) => {
                unsafe { *out = v };
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The threshold `k1(p)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_k1(p: f64, out: *mut f64) -> BlkStatus {
    guarded(|| {
        nonnull!(out);
        match booklab::analytic::k1(p) {
            Ok(v) => {
                unsafe { *out = v };
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// `k2(p) = k1(1 - p)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_k2(p: f64, out: *mut f64) -> BlkStatus {
    guarded(|| {
        nonnull!(out);
        match booklab::analytic::k2(p) {
            Ok(v) => {
                unsafe { *out = v };
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The infimum `c1(k)` of the random-regime range (1 when empty).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_c1(k: u32, out: *mut f64) -> BlkStatus {
    guarded(|| {
        nonnull!(out);
        match booklab::analytic::c1(k) {
            Ok(v) => {
                unsafe { *out = v };
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The exact rational `rho = 1/(3k^2 - k)` as numerator/denominator.
///
/// # Safety
/// Out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn blk_aes_rho(k: u32, num_out: *mut i64, den_out: *mut i64) -> BlkStatus {
    guarded(|| {
        nonnull!(num_out, den_out);
        match booklab::analytic::aes_rho(k) {
            Ok(r) => {
                unsafe {
                    *num_out = *r.numer() as i64;
                    *den_out = *r.denom() as i64;
                }
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Exhaustive arrowing decision: does every coloring of `K_vertices`
/// contain a red k-book with `red_pages` pages or a blue one with
/// `blue_pages`?
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blk_arrow(
    vertices: usize,
    k: usize,
    red_pages: usize,
    blue_pages: usize,
    node_budget: u64,
    out: *mut bool,
) -> BlkStatus {
    guarded(|| {
        nonnull!(out);
        let q = match search::ArrowQuery::new(vertices, k, red_pages, blue_pages) {
            Ok(q) => q,
            Err(e) => return fail(e),
        };
        let opts = search::SearchOptions {
            node_budget,
            parallel: false,
        };
        match search::arrow_with(&q, &opts) {
            Ok(o) => {
                unsafe { *out = o.arrows };
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Smallest N at which the arrowing holds, up to `cap`. On `BLK_STATUS_OK`
/// writes the exact value and sets `*exact_out = true`, or the proven
/// lower bound with `*exact_out = false` when the cap was reached.
///
/// # Safety
/// Out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn blk_ramsey_number(
    k: usize,
    red_pages: usize,
    blue_pages: usize,
    cap: usize,
    value_out: *mut u64,
    exact_out: *mut bool,
) -> BlkStatus {
    guarded(|| {
        nonnull!(value_out, exact_out);
        match search::ramsey_number(k, red_pages, blue_pages, cap, &search::SearchOptions::default())
        {
            Ok(r) => {
                let (v, exact) = match r.value {
                    search::RamseyValue::Exact(v) => (v as u64, true),
                    search::RamseyValue::BoundsOnly { lower } => (lower as u64, false),
                };
                unsafe {
                    *value_out = v;
                    *exact_out = exact;
                }
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Exhaustive (p, theta)-quasirandomness scan (n <= 18). Writes whether a
/// violating pair exists and the worst deviation as an exact rational.
///
/// # Safety
/// `h` must be a live handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn blk_quasi_exhaustive(
    h: *const BlkColoring,
    p_num: i64,
    p_den: i64,
    theta_num: i64,
    theta_den: i64,
    violated_out: *mut bool,
    dev_num_out: *mut i64,
    dev_den_out: *mut i64,
) -> BlkStatus {
    guarded(|| {
        nonnull!(h, violated_out, dev_num_out, dev_den_out);
        let p = match rational_arg(p_num, p_den) {
            Ok(p) => p,
            Err(code) => return code,
        };
        let theta = match rational_arg(theta_num, theta_den) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match quasi::quasi_exhaustive(unsafe { coloring_ref(h) }, p, theta) {
            Ok(r) => {
                unsafe {
                    *violated_out = r.verdict == quasi::QuasiVerdict::Violated;
                    *dev_num_out = *r.deviation.numer() as i64;
                    *dev_den_out = *r.deviation.denom() as i64;
                }
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Exact extension-variance identity check at rational p.
///
/// # Safety
/// `h` must be a live handle; `equal_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn blk_identity_check(
    h: *const BlkColoring,
    k: usize,
    p_num: i64,
    p_den: i64,
    equal_out: *mut bool,
) -> BlkStatus {
    guarded(|| {
        nonnull!(h, equal_out);
        let p = match rational_arg(p_num, p_den) {
            Ok(p) => p,
            Err(code) => return code,
        };
        match quasi::identity_check(unsafe { coloring_ref(h) }, k, p) {
            Ok(r) => {
                unsafe { *equal_out = r.equal };
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Upper bound on the recoloring distance to a balanced complete
/// k-partite red graph.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn blk_kpartite_distance(
    h: *const BlkColoring,
    k: usize,
    restarts: u64,
    seed: u64,
    out: *mut u64,
) -> BlkStatus {
    guarded(|| {
        nonnull!(h, out);
        match quasi::kpartite_distance(unsafe { coloring_ref(h) }, k, restarts, seed) {
            Ok((d, _)) => {
                unsafe { *out = d };
                BlkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
