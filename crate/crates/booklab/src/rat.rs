//! Exact rational arithmetic helpers.
//!
//! Densities, thresholds, and identity checks all compare in exact
//! rationals so downstream equalities hold with tolerance zero.

use crate::error::{Error, Result};
use num::rational::Ratio;
use num::One;

/// The rational type used for all exact comparisons.
///
/// `i128` gives ample headroom: the largest intermediate products (the
/// extension-variance identity on 60-vertex colorings) stay below 2^110.
pub type Rat = Ratio<i128>;

pub fn rat(num: i128, den: i128) -> Rat {
    Rat::new(num, den)
}

/// Parses a rational from `"NUM/DEN"` or a bare integer `"NUM"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let mk_err = || Error::Format(format!("malformed rational {s:?}; expected NUM/DEN"));
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: i128 = num_s.trim().parse().map_err(|_| mk_err())?;
    let den: i128 = den_s.trim().parse().map_err(|_| mk_err())?;
    if den <= 0 {
        return Err(Error::Format(format!(
            "malformed rational {s:?}: denominator must be positive"
        )));
    }
    Ok(Rat::new(num, den))
}

/// Canonical on-the-wire form `"NUM/DEN"` (always carries the denominator).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact `r^k` for small nonnegative exponents.
pub fn rat_pow(r: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let r = parse_rat("3/6").unwrap();
        assert_eq!(r, rat(1, 2));
        assert_eq!(format_rat(&r), "1/2");
        assert_eq!(parse_rat("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rat("-2/4").unwrap(), rat(-1, 2));
    }

    #[test]
    fn parse_rejects_junk() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let r = rat(2, 3);
        assert_eq!(rat_pow(&r, 0), rat(1, 1));
        assert_eq!(rat_pow(&r, 3), rat(8, 27));
    }
}
