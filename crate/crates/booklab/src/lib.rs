//! booklab: exact analysis of red/blue colorings of complete graphs.
//!
//! The crate revolves around monochromatic *books*: a k-clique spine plus
//! the vertices extending it monochromatically (its pages). It provides
//!
//! - immutable bitset-backed colorings with a canonical text format
//!   ([`coloring`]),
//! - the balanced k-partite and seeded p-random generators together with
//!   the lower-bound formulas they witness ([`construct`]),
//! - exact clique/book/extension-spectrum enumeration ([`books`]),
//! - exhaustive decision and stochastic witness search for tiny book
//!   Ramsey instances ([`search`]),
//! - numeric verification of the closed-form inequalities and thresholds
//!   that govern the random regime ([`analytic`]),
//! - quasirandomness diagnostics: deviation witnesses, the extension
//!   variance identity, regularity refutation, blocked configurations,
//!   and k-partite edit distance ([`quasi`]).
//!
//! All counting is exact; thresholds compare in exact rational arithmetic.

pub mod analytic;
pub mod bitset;
pub mod books;
pub mod coloring;
pub mod construct;
pub mod error;
pub mod quasi;
pub mod rat;
pub mod rng;
pub mod search;

pub use bitset::VertexSet;
pub use coloring::{Color, ColoringBuilder, TwoColoring};
pub use error::{Error, Result};
pub use rat::Rat;
