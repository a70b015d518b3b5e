//! Command-line front end for the bhj-core engine: JSON documents in and
//! out, text reports with `key=value` machine lines, and DOT dual graphs.

pub mod commands;
pub mod doc;
pub mod dot;
pub mod intro;

use anyhow::{anyhow, Context, Result};

pub use commands::{exit, Emit, Outcome};
pub use doc::{ConfigDocument, Payload, SCHEMA_VERSION};

pub const EXCLUDE_VAR: &str = "BHJ_CHAR_EXCLUDE";

/// Parses a comma-separated list of primes, e.g. `"2,3"`.
pub fn parse_exclusion(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            let q: u64 = x.parse().with_context(|| format!("{EXCLUDE_VAR}: {x:?} is not an integer"))?;
            if bhj_core::brauer::is_prime(q as i64) {
                Ok(q)
            } else {
                Err(anyhow!("{EXCLUDE_VAR}: {q} is not prime"))
            }
        })
        .collect()
}
