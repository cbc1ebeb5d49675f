//! Integer grids: comma-separated items, each a value or an inclusive
//! range `a..b` (also accepted as `a..=b`).

use crate::error::{CliError, CliResult};

pub fn parse_grid(text: &str) -> CliResult<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(CliError::usage(format!("empty item in grid {text:?}")));
        }
        if let Some((lo, hi)) = item.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (number(lo, text)?, number(hi, text)?);
            if lo > hi {
                return Err(CliError::usage(format!("descending range {item:?}")));
            }
            out.extend(lo..=hi);
        } else {
            out.push(number(item, text)?);
        }
    }
    Ok(out)
}

fn number(s: &str, grid: &str) -> CliResult<usize> {
    s.trim()
        .parse()
        .map_err(|_| CliError::usage(format!("bad number {s:?} in grid {grid:?}")))
}
