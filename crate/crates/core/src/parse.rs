//! Parsers for the small textual input formats: simple type labels,
//! 1-based simple-root subsets, and comma-separated fundamental coordinates.

use crate::error::{config_err, Result};
use crate::rootsys::{SimpleType, Weight};

/// "A2", "e6", " F4 " → the simple type.  The family letter is
/// case-insensitive.
pub fn parse_type(s: &str) -> Result<SimpleType> {
    s.trim().to_ascii_uppercase().parse()
}

/// Comma-separated 1-based simple-root indices, e.g. "1,3" → {0, 2}.
/// Empty input (or "-") selects the empty set, i.e. the Borel case.
/// Output is 0-based, sorted, duplicate-free; properness against the full
/// simple system is the constructors' job, range checking happens here.
pub fn parse_pi_prime(s: &str, rank: usize) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.is_empty() || t == "-" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for piece in t.split(',') {
        let p = piece.trim();
        let k: usize = p
            .parse()
            .map_err(|_| config_err(format!("bad simple-root index {p:?}")))?;
        if k == 0 || k > rank {
            return Err(config_err(format!(
                "simple-root index {k} out of range 1..={rank}"
            )));
        }
        if out.contains(&(k - 1)) {
            return Err(config_err(format!("duplicate simple-root index {k}")));
        }
        out.push(k - 1);
    }
    out.sort_unstable();
    Ok(out)
}

/// Comma-separated integer fundamental coordinates, e.g. "2,-1".
pub fn parse_weight(s: &str, rank: usize) -> Result<Weight> {
    let t = s.trim();
    let pieces: Vec<&str> = if t.is_empty() {
        Vec::new()
    } else {
        t.split(',').collect()
    };
    if pieces.len() != rank {
        return Err(config_err(format!(
            "expected {rank} coordinates, got {}",
            pieces.len()
        )));
    }
    let mut coords = Vec::with_capacity(rank);
    for piece in pieces {
        let p = piece.trim();
        let c: i64 = p
            .parse()
            .map_err(|_| config_err(format!("bad coordinate {p:?}")))?;
        coords.push(c);
    }
    Ok(Weight::from_i64s(&coords))
}
