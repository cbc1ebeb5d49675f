//! Exact read-depth statistics under uniform sampling of a symbol's `w`
//! shortmers (the occupancy, or coupon-collector, law).
//!
//! All probabilities are rationals with denominator `w^R`; floating point
//! appears only when a value is reported.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::binomial;

/// Law of the number of shortmers of one symbol never observed in `R` reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissDistribution {
    w: usize,
    reads: usize,
    /// `numerators[j] / denominator = P(exactly j unobserved)`.
    numerators: Vec<BigUint>,
    denominator: BigUint,
}

/// `q[j] = C(w,j) sum_i (-1)^i C(w-j,i) ((w-j-i)/w)^R`, exactly.
pub fn miss_distribution(w: usize, reads: usize) -> MissDistribution {
    assert!(w >= 1, "w must be positive");
    let powers: Vec<BigInt> = (0..=w)
        .map(|k| BigInt::from(BigUint::from(k).pow(reads as u32)))
        .collect();
    let numerators = (0..=w)
        .map(|j| {
            let mut acc = BigInt::zero();
            for i in 0..=w - j {
                let term = BigInt::from(binomial(w - j, i)) * &powers[w - j - i];
                if i % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            (BigInt::from(binomial(w, j)) * acc)
                .to_biguint()
                .expect("occupancy counts are nonnegative")
        })
        .collect();
    MissDistribution {
        w,
        reads,
        numerators,
        denominator: BigUint::from(w).pow(reads as u32),
    }
}

impl MissDistribution {
    pub fn w(&self) -> usize {
        self.w
    }

    pub fn reads(&self) -> usize {
        self.reads
    }

    pub fn numerators(&self) -> &[BigUint] {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// `P(exactly j unobserved)`.
    pub fn q(&self, j: usize) -> f64 {
        ratio_to_f64(&self.numerators[j], &self.denominator)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        (0..=self.w).map(|j| self.q(j)).collect()
    }

    pub fn sums_to_one(&self) -> bool {
        self.numerators.iter().sum::<BigUint>() == self.denominator
    }

    /// Numerator of `P(at least e unobserved)` over [`Self::denominator`].
    pub fn at_least_numerator(&self, e: usize) -> BigUint {
        self.numerators.iter().skip(e).sum()
    }
}

/// `P(at least e of the w shortmers unobserved after R reads)`.
pub fn p_at_least_e(e: usize, w: usize, reads: usize) -> f64 {
    let dist = miss_distribution(w, reads);
    ratio_to_f64(&dist.at_least_numerator(e), dist.denominator())
}

/// Exact `P(at most t of m symbols miss anything, each missing at most e)`
/// as a numerator over `w^(R m)`.
pub fn p_word_success_exact(
    t: usize,
    e: usize,
    w: usize,
    reads: usize,
    m: usize,
) -> (BigUint, BigUint) {
    let dist = miss_distribution(w, reads);
    let clean = &dist.numerators[0];
    let noisy: BigUint = dist.numerators.iter().skip(1).take(e).sum();
    let numerator = (0..=t.min(m))
        .map(|k| binomial(m, k) * clean.pow((m - k) as u32) * noisy.pow(k as u32))
        .sum();
    (numerator, dist.denominator.pow(m as u32))
}

pub fn p_word_success(t: usize, e: usize, w: usize, reads: usize, m: usize) -> f64 {
    let (num, den) = p_word_success_exact(t, e, w, reads, m);
    ratio_to_f64(&num, &den)
}

/// `num / den` rounded to double precision, for any magnitudes.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient carries about 64 significant bits.
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let quotient = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let digits: f64 = quotient
        .to_u64_digits()
        .iter()
        .rev()
        .fold(0.0, |acc, &d| acc * 2f64.powi(64) + d as f64);
    digits * 2f64.powi(-shift as i32)
}

/// Fixed six-decimal rendering used in every report.
pub fn format_probability(p: f64) -> String {
    format!("{p:.6}")
}

/// One point of a miss-probability curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub w: usize,
    pub reads: usize,
    pub e: usize,
    pub value: f64,
}

/// `P(at least e missing)` for every `R` in `reads` and `e` in `0..w`.
pub fn miss_curves(w: usize, reads: &[usize]) -> Vec<CurvePoint> {
    reads
        .iter()
        .flat_map(|&r| {
            let dist = miss_distribution(w, r);
            (0..w).map(move |e| CurvePoint {
                w,
                reads: r,
                e,
                value: ratio_to_f64(&dist.at_least_numerator(e), dist.denominator()),
            })
        })
        .collect()
}

/// One cell of a word-success grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridCell {
    pub t: usize,
    pub e: usize,
    pub probability: f64,
}

/// `p_word_success` over `t` in `ts` and `e` in `es`.
pub fn success_grid(w: usize, reads: usize, m: usize, ts: &[usize], es: &[usize]) -> Vec<GridCell> {
    ts.iter()
        .flat_map(|&t| {
            es.iter().map(move |&e| GridCell {
                t,
                e,
                probability: p_word_success(t, e, w, reads, m),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn degenerate_read_counts() {
        let none = miss_distribution(5, 0);
        assert_eq!(none.q(5), 1.0);
        assert!(none.sums_to_one());
        let one = miss_distribution(5, 1);
        assert_eq!(one.probabilities(), vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(p_at_least_e(4, 5, 1), 1.0);
        assert_eq!(p_at_least_e(0, 5, 17), 1.0);
    }

    #[test]
    fn occupancy_reference_values() {
        let d = miss_distribution(4, 10);
        assert!((d.q(0) - 0.780602).abs() < 1e-6, "{}", d.q(0));
        assert!((d.q(1) - 0.213547).abs() < 1e-6, "{}", d.q(1));
        assert_eq!(format_probability(d.q(0)), "0.780602");
    }

    /// Counts read sequences by brute force: every one of the `w^R` draws.
    #[test]
    fn matches_brute_force_counts() {
        for w in 1..=4usize {
            for reads in 0..=6usize {
                let mut counts = vec![0u64; w + 1];
                let total = (w as u64).pow(reads as u32);
                for mut code in 0..total {
                    let mut seen = vec![false; w];
                    for _ in 0..reads {
                        seen[(code % w as u64) as usize] = true;
                        code /= w as u64;
                    }
                    counts[seen.iter().filter(|&&s| !s).count()] += 1;
                }
                let dist = miss_distribution(w, reads);
                let exact: Vec<BigUint> = counts.into_iter().map(BigUint::from).collect();
                assert_eq!(dist.numerators(), exact.as_slice(), "w={w} R={reads}");
            }
        }
    }

    #[test]
    fn sampling_agrees_within_three_sigma() {
        let mut rng = ChaCha20Rng::seed_from_u64(2024);
        let trials = 100_000;
        for (w, reads) in [(4usize, 10usize), (5, 10), (5, 25)] {
            let dist = miss_distribution(w, reads);
            let mut counts = vec![0u64; w + 1];
            for _ in 0..trials {
                let mut seen = vec![false; w];
                for _ in 0..reads {
                    seen[rng.gen_range(0..w)] = true;
                }
                counts[seen.iter().filter(|&&s| !s).count()] += 1;
            }
            for (j, &c) in counts.iter().enumerate() {
                let q = dist.q(j);
                let sigma = (q * (1.0 - q) / trials as f64).sqrt();
                let observed = c as f64 / trials as f64;
                assert!(
                    (observed - q).abs() <= 3.0 * sigma + 1e-12,
                    "w={w} R={reads} j={j}"
                );
            }
        }
    }

    #[test]
    fn exact_normalisation() {
        for w in 1..=20 {
            for reads in (0..=60).step_by(7) {
                assert!(miss_distribution(w, reads).sums_to_one(), "w={w} R={reads}");
            }
        }
    }

    #[test]
    fn word_success_edges() {
        assert_eq!(p_word_success(10, 3, 4, 10, 10), 1.0);
        let q0 = miss_distribution(4, 10).q(0);
        assert!((p_word_success(0, 2, 4, 10, 10) - q0.powi(10)).abs() < 1e-15);
        let (num, den) = p_word_success_exact(3, 3, 4, 7, 3);
        assert_eq!(num, den);
    }

    #[test]
    fn monotone_in_reads_and_budget() {
        for e in 1..5 {
            let curve: Vec<f64> = [1, 5, 10, 20, 25]
                .iter()
                .map(|&r| p_at_least_e(e, 5, r))
                .collect();
            assert!(curve.windows(2).all(|p| p[1] <= p[0]), "{curve:?}");
        }
        for t in 0..10 {
            for e in 1..5 {
                let here = p_word_success(t, e, 4, 10, 10);
                assert!(p_word_success(t + 1, e, 4, 10, 10) >= here);
                assert!(p_word_success(t, e + 1, 4, 10, 10) >= here);
                assert!(p_word_success(t, e, 4, 11, 10) >= here);
            }
        }
    }

    #[test]
    fn ratio_conversion() {
        let big = BigUint::from(3u32).pow(400);
        let bigger = BigUint::from(3u32).pow(401);
        assert!((ratio_to_f64(&big, &bigger) - 1.0 / 3.0).abs() < 1e-15);
        assert!((ratio_to_f64(&bigger, &big) - 3.0).abs() < 1e-14);
        assert_eq!(ratio_to_f64(&BigUint::zero(), &big), 0.0);
        let tiny = ratio_to_f64(&BigUint::one(), &(BigUint::one() << 200u32));
        assert_eq!(tiny, 2f64.powi(-200));
    }
}
