use num_bigint::BigUint;
use serde::Serialize;

use super::ENUMERATION_LIMIT;
use crate::channel::subsets;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::word::{BinaryRow, CompositeSymbol, CompositeWord, ReceivedWord};

/// An e-Hamming distance; `Infinite` orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Number of differing rows, or infinite if some row pair differs in more
/// than `e` positions.
pub fn d_eh(x: &CompositeWord, y: &CompositeWord, e: usize) -> Result<Distance> {
    if (x.m(), x.n()) != (y.m(), y.n()) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            x.m(),
            x.n(),
            y.m(),
            y.n()
        )));
    }
    let mut differing = 0;
    for (a, b) in x.rows().iter().zip(y.rows()) {
        let d = a.row().hamming_distance(b.row());
        if d > e {
            return Ok(Distance::Infinite);
        }
        differing += usize::from(d > 0);
    }
    Ok(Distance::Finite(differing))
}

/// Minimum distance over distinct pairs; `None` for fewer than two words.
pub fn code_distance(code: &[CompositeWord], e: usize) -> Result<Option<Distance>> {
    let mut best: Option<Distance> = None;
    for (i, x) in code.iter().enumerate() {
        for y in &code[i + 1..] {
            if x == y {
                continue;
            }
            let d = d_eh(x, y, e)?;
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    Ok(best)
}

/// `|B_{e-H}(X, t)| = sum_{k<=t} C(m,k) (sum_{1<=j<=e/2} C(w,j) C(n-w,j))^k`.
pub fn ball_eh_size(m: usize, n: usize, w: usize, t: usize, e: usize) -> BigUint {
    let per_row: BigUint = (1..=e / 2)
        .map(|j| binomial(w, j) * binomial(n - w, j))
        .sum();
    (0..=t.min(m))
        .map(|k| binomial(m, k) * per_row.pow(k as u32))
        .sum()
}

fn check_size(size: &BigUint) -> Result<()> {
    if *size > BigUint::from(ENUMERATION_LIMIT) {
        return Err(Error::TooLargeForEnumeration {
            size: size.to_string(),
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Calls `visit` once for every way of replacing at most `budget` rows of
/// `base` by one of that row's `options`.
fn for_each_substitution<T: Clone>(
    base: &[T],
    options: &[Vec<T>],
    budget: usize,
    visit: &mut impl FnMut(&[T]),
) {
    fn go<T: Clone>(
        row: usize,
        current: &mut Vec<T>,
        base: &[T],
        options: &[Vec<T>],
        budget: usize,
        visit: &mut impl FnMut(&[T]),
    ) {
        if row == base.len() {
            visit(current);
            return;
        }
        go(row + 1, current, base, options, budget, visit);
        if budget > 0 {
            for option in &options[row] {
                current[row] = option.clone();
                go(row + 1, current, base, options, budget - 1, visit);
            }
            current[row] = base[row].clone();
        }
    }
    let mut current = base.to_vec();
    go(0, &mut current, base, options, budget, visit);
}

/// Every word of the space within e-Hamming distance `t` of `x`.
pub fn ball_eh(x: &CompositeWord, t: usize, e: usize) -> Result<Vec<CompositeWord>> {
    let (m, n, w) = (x.m(), x.n(), x.w());
    check_size(&ball_eh_size(m, n, w, t, e))?;
    let options: Vec<Vec<CompositeSymbol>> = x
        .rows()
        .iter()
        .map(|row| {
            let ones = row.support();
            let zeros: Vec<usize> = (0..n).filter(|&i| !row.bits()[i]).collect();
            let mut out = Vec::new();
            for j in 1..=e / 2 {
                for out_set in subsets(&ones, j) {
                    for in_set in subsets(&zeros, j) {
                        let mut bits = row.bits().to_vec();
                        out_set.iter().for_each(|&i| bits[i] = false);
                        in_set.iter().for_each(|&i| bits[i] = true);
                        out.push(CompositeSymbol::from_bits(bits, w).expect("swap keeps weight"));
                    }
                }
            }
            out
        })
        .collect();
    let mut ball = Vec::new();
    for_each_substitution(x.rows(), &options, t, &mut |rows| {
        ball.push(CompositeWord::new(rows.to_vec()).expect("rows share n and w"));
    });
    Ok(ball)
}

/// Every word obtained from `x` by clearing at most `e` ones anywhere.
pub fn asym_ball(x: &CompositeWord, e: usize) -> Result<Vec<ReceivedWord>> {
    let ones: Vec<(usize, usize)> = x
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.support().into_iter().map(move |c| (r, c)))
        .collect();
    let size: BigUint = (0..=e).map(|j| binomial(ones.len(), j)).sum();
    check_size(&size)?;
    let base: Vec<BinaryRow> = x.rows().iter().map(|r| r.row().clone()).collect();
    let mut ball = Vec::new();
    for j in 0..=e.min(ones.len()) {
        for cleared in subsets(&ones, j) {
            let mut rows = base.clone();
            for (r, c) in cleared {
                rows[r].set(c, false);
            }
            ball.push(ReceivedWord::new(rows, x.w())?);
        }
    }
    Ok(ball)
}
