//! Code specification strings: `ebch:n,k` builds an extended BCH code,
//! `random:n,k,seed` a random full-rank code, `file:path` (or a bare path)
//! loads a saved code file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use leosd::codes::{build_ebch_by_k, load_code, random_code, LinearCode};

fn parse_fields(rest: &str, want: usize, spec: &str) -> Result<Vec<u64>> {
    let fields: Vec<u64> = rest
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("could not parse numeric fields in {spec:?}"))?;
    if fields.len() != want {
        bail!("{spec:?} needs {want} comma-separated fields, got {}", fields.len());
    }
    Ok(fields)
}

pub fn build_code(spec: &str) -> Result<LinearCode> {
    if let Some(rest) = spec.strip_prefix("ebch:") {
        let f = parse_fields(rest, 2, spec)?;
        let (n, k) = (f[0] as usize, f[1] as usize);
        if !n.is_power_of_two() || n < 8 || n > 256 {
            bail!("extended BCH length must be a power of two in 8..=256, got {n}");
        }
        build_ebch_by_k(n.trailing_zeros(), k)
            .with_context(|| format!("no extended BCH code of length {n} has dimension {k}"))
    } else if let Some(rest) = spec.strip_prefix("random:") {
        let f = parse_fields(rest, 3, spec)?;
        let (n, k) = (f[0] as usize, f[1] as usize);
        if !(0 < k && k < n && n <= 1024) {
            bail!("random code needs 0 < k < n <= 1024, got n={n}, k={k}");
        }
        Ok(random_code(n, k, f[2]))
    } else {
        let path = spec.strip_prefix("file:").unwrap_or(spec);
        load_code(Path::new(path)).with_context(|| format!("could not load code file {path:?}"))
    }
}
