//! Immutable red/blue edge colorings of complete graphs.
//!
//! A `TwoColoring` stores the blue graph as per-vertex bitsets; red is the
//! complement on distinct pairs. Colorings are frozen at construction, so
//! they can be shared freely across threads; all queries are pure.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::bitset::{words_for, VertexSet};
use crate::error::{Error, Result};
use crate::rat::Rat;

// ============================================================================
// Color
// ============================================================================

/// One of the two edge colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    #[inline]
    pub fn opposite(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "red" | "r" => Ok(Color::Red),
            "blue" | "b" => Ok(Color::Blue),
            other => Err(Error::Format(format!(
                "unknown color {other:?}; expected red or blue"
            ))),
        }
    }
}

// ============================================================================
// TwoColoring
// ============================================================================

/// An immutable two-coloring of the edge set of `K_n`.
///
/// Representation: `blue` holds `n` rows of `words_per_row` u64 words; bit
/// `j` of row `i` is set iff edge `(i, j)` is blue. The matrix is symmetric
/// with a zero diagonal, and bits at positions `>= n` are always zero.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoColoring {
    n: usize,
    words_per_row: usize,
    blue: Vec<u64>,
}

impl fmt::Debug for TwoColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TwoColoring(n={}, blue_edges={})",
            self.n,
            self.count_edges(Color::Blue)
        )
    }
}

impl TwoColoring {
    /// Builds a coloring of `K_n` whose blue edges are exactly the listed
    /// unordered pairs; every other distinct pair is red.
    pub fn build(n: usize, blue_edges: &[(usize, usize)]) -> Result<TwoColoring> {
        if n < 1 {
            return Err(Error::Domain("vertex count must be at least 1".into()));
        }
        let mut b = ColoringBuilder::new(n)?;
        for &(u, v) in blue_edges {
            b.set_blue(u, v)?;
        }
        Ok(b.finish())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    #[inline]
    pub(crate) fn blue_row(&self, v: usize) -> &[u64] {
        let start = v * self.words_per_row;
        &self.blue[start..start + self.words_per_row]
    }

    /// Whether edge `(u, v)` is blue. `u != v` required.
    #[inline]
    pub fn is_blue(&self, u: usize, v: usize) -> bool {
        debug_assert!(u != v && u < self.n && v < self.n);
        (self.blue_row(u)[v >> 6] >> (v & 63)) & 1 == 1
    }

    /// Whether edge `(u, v)` carries `color`. `u != v` required.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize, color: Color) -> bool {
        match color {
            Color::Blue => self.is_blue(u, v),
            Color::Red => !self.is_blue(u, v),
        }
    }

    /// The set of `u != v` joined to `v` by an edge of `color`.
    ///
    /// The two colors' neighborhoods partition `[0, n) \ {v}`.
    pub fn neighbors(&self, v: usize, color: Color) -> Result<VertexSet> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let row = self.blue_row(v);
        let mut words: Vec<u64> = match color {
            Color::Blue => row.to_vec(),
            Color::Red => {
                let mut w: Vec<u64> = row.iter().map(|x| !x).collect();
                // Clear the diagonal bit and the padding above n.
                w[v >> 6] &= !(1u64 << (v & 63));
                mask_tail(&mut w, self.n);
                w
            }
        };
        mask_tail(&mut words, self.n);
        Ok(VertexSet::from_words(self.n, words))
    }

    /// Copies the `color`-neighborhood of `v` into `out` (which must have
    /// `words_per_row` words). Allocation-free variant for hot loops.
    pub(crate) fn neighbors_into(&self, v: usize, color: Color, out: &mut [u64]) {
        let row = self.blue_row(v);
        match color {
            Color::Blue => out.copy_from_slice(row),
            Color::Red => {
                for (o, r) in out.iter_mut().zip(row) {
                    *o = !r;
                }
                out[v >> 6] &= !(1u64 << (v & 63));
                mask_tail(out, self.n);
            }
        }
    }

    /// Number of ordered pairs `(x, y)` in `X x Y` with `x != y` whose edge
    /// carries `color`. `X` and `Y` may overlap.
    pub fn pair_count(&self, x: &VertexSet, y: &VertexSet, color: Color) -> usize {
        assert_eq!(x.n(), self.n, "set over wrong vertex range");
        assert_eq!(y.n(), self.n, "set over wrong vertex range");
        let mut scratch = vec![0u64; self.words_per_row];
        let mut count = 0usize;
        for v in x.iter() {
            self.neighbors_into(v, color, &mut scratch);
            count += scratch
                .iter()
                .zip(y.words())
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>();
        }
        count
    }

    /// Exact edge density of `color` on `X x Y`: `e_color(X, Y) / (|X||Y|)`.
    pub fn density(&self, x: &VertexSet, y: &VertexSet, color: Color) -> Result<Rat> {
        let (sx, sy) = (x.len(), y.len());
        if sx == 0 {
            return Err(Error::EmptySet { what: "X" });
        }
        if sy == 0 {
            return Err(Error::EmptySet { what: "Y" });
        }
        let e = self.pair_count(x, y, color) as i128;
        Ok(Rat::new(e, (sx * sy) as i128))
    }

    /// Total number of unordered edges of `color`.
    pub fn count_edges(&self, color: Color) -> usize {
        let blue_bits: usize = self.blue.iter().map(|w| w.count_ones() as usize).sum();
        let blue = blue_bits / 2;
        match color {
            Color::Blue => blue,
            Color::Red => self.n * (self.n - 1) / 2 - blue,
        }
    }

    /// Degree of `v` in the `color` graph.
    pub fn degree(&self, v: usize, color: Color) -> usize {
        let row = self.blue_row(v);
        let blue: usize = row.iter().map(|w| w.count_ones() as usize).sum();
        match color {
            Color::Blue => blue,
            Color::Red => self.n - 1 - blue,
        }
    }

    // ------------------------------------------------------------------------
    // kcg v1 persistence
    // ------------------------------------------------------------------------

    /// Serializes in the canonical `kcg v1` text format.
    ///
    /// Line 1 is `kcg 1`, line 2 the decimal vertex count, then `n-1` rows;
    /// row `i` (1-based) holds the colors of edges `(i-1, j)` for
    /// `j = i..n-1` as `{0,1}` characters, `1` meaning blue. Newlines are LF.
    /// The encoding is bit-exact: equal colorings produce equal bytes.
    pub fn write_kcg<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "kcg 1")?;
        writeln!(w, "{}", self.n)?;
        let mut line = String::new();
        for i in 0..self.n.saturating_sub(1) {
            line.clear();
            for j in (i + 1)..self.n {
                line.push(if self.is_blue(i, j) { '1' } else { '0' });
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let f = File::create(path)?;
        let mut w = BufWriter::new(f);
        self.write_kcg(&mut w)?;
        w.flush()?;
        Ok(())
    }

    /// Parses the `kcg v1` format; inverse of [`TwoColoring::write_kcg`].
    pub fn read_kcg<R: Read>(r: R) -> Result<TwoColoring> {
        let mut lines = BufReader::new(r).lines();
        let header = lines
            .next()
            .transpose()?
            .ok_or_else(|| Error::Format("malformed header: empty file".into()))?;
        if header.trim_end() != "kcg 1" {
            return Err(Error::Format(format!(
                "malformed header: expected \"kcg 1\", got {header:?}"
            )));
        }
        let n_line = lines
            .next()
            .transpose()?
            .ok_or_else(|| Error::Format("malformed header: missing vertex count".into()))?;
        let n: usize = n_line
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("malformed header: bad vertex count {n_line:?}")))?;
        if n < 1 {
            return Err(Error::Format("vertex count must be at least 1".into()));
        }
        let mut b = ColoringBuilder::new(n)?;
        for i in 0..n - 1 {
            let expected = n - 1 - i;
            let row = match lines.next().transpose()? {
                Some(s) => s,
                None => {
                    return Err(Error::Format(format!(
                        "row length mismatch: row {} has 0 characters, expected {expected}",
                        i + 1
                    )))
                }
            };
            let row = row.trim_end_matches('\r');
            if row.len() != expected {
                return Err(Error::Format(format!(
                    "row length mismatch: row {} has {} characters, expected {expected}",
                    i + 1,
                    row.len()
                )));
            }
            for (off, ch) in row.bytes().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => b.set_blue(i, i + 1 + off)?,
                    _ => {
                        return Err(Error::Format(format!(
                            "invalid character {:?} in row {}",
                            ch as char,
                            i + 1
                        )))
                    }
                }
            }
        }
        Ok(b.finish())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<TwoColoring> {
        let f = File::open(path)?;
        TwoColoring::read_kcg(f)
    }
}

#[inline]
fn mask_tail(words: &mut [u64], n: usize) {
    let full = words_for(n);
    debug_assert_eq!(words.len(), full);
    let rem = n & 63;
    if rem != 0 {
        words[full - 1] &= (1u64 << rem) - 1;
    }
}

// ============================================================================
// Builder
// ============================================================================

/// Mutable staging area for a coloring; all edges start red.
///
/// Mutation lives here so that `TwoColoring` itself can stay immutable and
/// safely shareable.
pub struct ColoringBuilder {
    n: usize,
    words_per_row: usize,
    blue: Vec<u64>,
}

impl ColoringBuilder {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("vertex count must be at least 1".into()));
        }
        let words_per_row = words_for(n);
        Ok(ColoringBuilder {
            n,
            words_per_row,
            blue: vec![0; n * words_per_row],
        })
    }

    fn check(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        Ok(())
    }

    pub fn set_blue(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u, v)?;
        self.blue[u * self.words_per_row + (v >> 6)] |= 1u64 << (v & 63);
        self.blue[v * self.words_per_row + (u >> 6)] |= 1u64 << (u & 63);
        Ok(())
    }

    pub fn set_red(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u, v)?;
        self.blue[u * self.words_per_row + (v >> 6)] &= !(1u64 << (v & 63));
        self.blue[v * self.words_per_row + (u >> 6)] &= !(1u64 << (u & 63));
        Ok(())
    }

    pub fn set(&mut self, u: usize, v: usize, color: Color) -> Result<()> {
        match color {
            Color::Blue => self.set_blue(u, v),
            Color::Red => self.set_red(u, v),
        }
    }

    pub fn finish(self) -> TwoColoring {
        TwoColoring {
            n: self.n,
            words_per_row: self.words_per_row,
            blue: self.blue,
        }
    }
}

// ============================================================================
// Tests
// ============================================================================
