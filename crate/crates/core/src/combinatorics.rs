//! Exact binomials and the lexicographic ranking of weight-`w` supports.
//!
//! Supports are ordered lexicographically as sorted index sequences, so
//! `{0,1,...,w-1}` has rank 0 and `{n-w,...,n-1}` has rank `C(n,w) - 1`.
//! Scanning positions left to right, every set that contains the current
//! position precedes every set (with the same prefix) that skips it.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::word::CompositeSymbol;

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `floor(log2 x)`; zero for `x <= 1`.
pub fn floor_log2(x: &BigUint) -> usize {
    (x.bits() as usize).saturating_sub(1)
}

/// `log2 x` to double precision, for arbitrarily large `x`.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap_or(u64::MAX) as f64).log2();
    }
    let shift = bits - 64;
    let head = (x >> shift).to_u64().unwrap_or(u64::MAX) as f64;
    head.log2() + shift as f64
}

/// `log2(num / den)` to double precision.
pub fn log2_ratio(num: &BigUint, den: &BigUint) -> f64 {
    log2_big(num) - log2_big(den)
}

/// Zero-based lexicographic rank of the symbol's support among all
/// `C(n,w)` weight-`w` subsets of `[n]`.
pub fn rank_symbol(symbol: &CompositeSymbol) -> BigUint {
    rank_support(symbol.n(), symbol.bits())
}

pub(crate) fn rank_support(n: usize, bits: &[bool]) -> BigUint {
    let mut remaining = bits.iter().filter(|&&b| b).count();
    let mut rank = BigUint::zero();
    for (i, &bit) in bits.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if bit {
            remaining -= 1;
        } else {
            rank += binomial(n - i - 1, remaining - 1);
        }
    }
    rank
}

/// Inverse of [`rank_symbol`].
pub fn unrank_symbol(rank: &BigUint, n: usize, w: usize) -> Result<CompositeSymbol> {
    let total = binomial(n, w);
    if *rank >= total || w == 0 || w >= n {
        return Err(Error::RankOutOfRange {
            rank: rank.to_string(),
            bound: total.to_string(),
        });
    }
    let mut rank = rank.clone();
    let mut remaining = w;
    let mut bits = vec![false; n];
    for (i, bit) in bits.iter_mut().enumerate() {
        if remaining == 0 {
            break;
        }
        let with_i = binomial(n - i - 1, remaining - 1);
        if rank < with_i {
            *bit = true;
            remaining -= 1;
        } else {
            rank -= with_i;
        }
    }
    CompositeSymbol::from_bits(bits, w)
}

/// Largest alphabet [`all_symbols`] will materialise.
pub const SYMBOL_ENUMERATION_LIMIT: u64 = 5_000_000;

/// Every weight-`w` symbol of length `n`, in rank order.
pub fn all_symbols(n: usize, w: usize) -> Result<Vec<CompositeSymbol>> {
    let total = binomial(n, w);
    if total > BigUint::from(SYMBOL_ENUMERATION_LIMIT) {
        return Err(Error::TooLargeForEnumeration {
            size: total.to_string(),
            limit: SYMBOL_ENUMERATION_LIMIT,
        });
    }
    if w == 0 || w >= n {
        return Err(Error::RankOutOfRange {
            rank: "0".into(),
            bound: total.to_string(),
        });
    }
    let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
    let mut support: Vec<usize> = (0..w).collect();
    loop {
        out.push(CompositeSymbol::from_support(n, &support)?);
        // Advance to the next sorted support.
        let Some(i) = (0..w).rev().find(|&i| support[i] < n - w + i) else {
            return Ok(out);
        };
        support[i] += 1;
        for j in i + 1..w {
            support[j] = support[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn symbol(n: usize, support: &[usize]) -> CompositeSymbol {
        CompositeSymbol::from_support(n, support).unwrap()
    }

    /// All weight-`w` supports of `[n]` in lexicographic order, by brute force.
    fn all_supports(n: usize, w: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0u32..(1 << n))
            .filter(|mask| mask.count_ones() as usize == w)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn symbol_listing_is_rank_order() {
        for n in 2..=9 {
            for w in 1..n {
                let listed: Vec<Vec<usize>> = all_symbols(n, w)
                    .unwrap()
                    .iter()
                    .map(|s| s.support())
                    .collect();
                assert_eq!(listed, all_supports(n, w));
            }
        }
        assert!(all_symbols(60, 30).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(17, 5), BigUint::from(6188u32));
        assert_eq!(binomial(16, 5), BigUint::from(4368u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn worked_example_rank_99() {
        let x99 = symbol(16, &[0, 1, 3, 6, 7]);
        assert_eq!(rank_symbol(&x99), BigUint::from(99u32));
        let back = unrank_symbol(&BigUint::from(99u32), 16, 5).unwrap();
        assert_eq!(back.support(), vec![0, 1, 3, 6, 7]);
    }

    #[test]
    fn extreme_ranks() {
        for (n, w) in [(5, 2), (9, 4), (16, 5)] {
            let first: Vec<usize> = (0..w).collect();
            let last: Vec<usize> = (n - w..n).collect();
            assert_eq!(rank_symbol(&symbol(n, &first)), BigUint::zero());
            assert_eq!(rank_symbol(&symbol(n, &last)), binomial(n, w) - 1u32);
        }
    }

    #[test]
    fn unrank_out_of_range() {
        let err = unrank_symbol(&BigUint::from(10u32), 5, 2).unwrap_err();
        assert_eq!(err.code(), "RANK_OUT_OF_RANGE");
    }

    #[test]
    fn matches_enumeration_oracle() {
        for n in 2..=12 {
            for w in 1..n {
                let supports = all_supports(n, w);
                assert_eq!(BigUint::from(supports.len()), binomial(n, w));
                for (r, support) in supports.iter().enumerate() {
                    let r = BigUint::from(r);
                    assert_eq!(rank_symbol(&symbol(n, support)), r);
                    let back = unrank_symbol(&r, n, w).unwrap();
                    assert_eq!(&back.support(), support);
                    assert_eq!(back.weight(), w);
                }
            }
        }
    }

    #[test]
    fn log2_helpers() {
        assert_eq!(floor_log2(&BigUint::from(6188u32)), 12);
        assert_eq!(floor_log2(&BigUint::from(364u32)), 8);
        assert_eq!(floor_log2(&BigUint::one()), 0);
        let big = binomial(200, 100);
        let approx = log2_big(&big);
        // log2 C(2k,k) ~ 2k - log2(pi k)/2
        assert!((approx - 195.85).abs() < 0.01, "{approx}");
        assert!(
            (log2_ratio(&BigUint::from(1224u32), &BigUint::one()) - 1224f64.log2()).abs() < 1e-12
        );
        assert!((log2_big(&BigUint::from(1u64 << 40)) - 40.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn rank_round_trip_large(n in 20usize..120, seed in any::<u64>()) {
            let w = (seed as usize % (n - 1)) + 1;
            let total = binomial(n, w);
            let r = BigUint::from(seed) % &total;
            let sym = unrank_symbol(&r, n, w).unwrap();
            prop_assert_eq!(sym.weight(), w);
            prop_assert_eq!(rank_symbol(&sym), r);
        }
    }
}
