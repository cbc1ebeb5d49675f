//! Validated code parameters.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, floor_log2};
use crate::error::{Error, Result};

/// Why a parameter set was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParamReason {
    MZero,
    NTooSmall,
    WZero,
    WNotLessThanN,
    TExceedsM,
    EZero,
    EExceedsW,
    MExceedsP,
    TwoTierOrder,
    GeneralizedOrder,
}

impl ParamReason {
    pub fn code(self) -> &'static str {
        match self {
            ParamReason::MZero => "M_ZERO",
            ParamReason::NTooSmall => "N_TOO_SMALL",
            ParamReason::WZero => "W_ZERO",
            ParamReason::WNotLessThanN => "W_NOT_LESS_THAN_N",
            ParamReason::TExceedsM => "T_EXCEEDS_M",
            ParamReason::EZero => "E_ZERO",
            ParamReason::EExceedsW => "E_EXCEEDS_W",
            ParamReason::MExceedsP => "M_EXCEEDS_P",
            ParamReason::TwoTierOrder => "T1_LESS_THAN_T2",
            ParamReason::GeneralizedOrder => "E_TIERS_NOT_ORDERED",
        }
    }
}

pub(crate) fn invalid(reason: ParamReason, detail: impl Into<String>) -> Error {
    Error::InvalidParams {
        reason,
        detail: detail.into(),
    }
}

/// Parameter bundle shared by every module: `m` rows, `n` shortmers,
/// combinatorial factor `w`, at most `t` noisy rows with at most `e`
/// missing ones each, and the outer-field prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    m: usize,
    n: usize,
    w: usize,
    t: usize,
    e: usize,
    p: usize,
}

impl CodeParams {
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn w(&self) -> usize {
        self.w
    }
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn p(&self) -> usize {
        self.p
    }

    /// `n` itself is prime, the setting of the explicit encoder.
    pub fn n_is_prime(&self) -> bool {
        self.n == self.p
    }
}

/// Validates `(m, n, w, t, e)` and computes `p`, the least prime `>= n`.
///
/// `t = 0` is accepted and describes the uncoded space.
pub fn validate_params(m: usize, n: usize, w: usize, t: usize, e: usize) -> Result<CodeParams> {
    if m == 0 {
        return Err(invalid(ParamReason::MZero, "m must be positive"));
    }
    if n < 2 {
        return Err(invalid(
            ParamReason::NTooSmall,
            format!("n={n} must be > 1"),
        ));
    }
    if w == 0 {
        return Err(invalid(ParamReason::WZero, "w must be positive"));
    }
    if w >= n {
        return Err(invalid(
            ParamReason::WNotLessThanN,
            format!("w={w} must be < n={n}"),
        ));
    }
    if t > m {
        return Err(invalid(
            ParamReason::TExceedsM,
            format!("t={t} must be <= m={m}"),
        ));
    }
    if e == 0 {
        return Err(invalid(ParamReason::EZero, "e must be positive"));
    }
    if e > w {
        return Err(invalid(
            ParamReason::EExceedsW,
            format!("e={e} must be <= w={w}"),
        ));
    }
    let p = smallest_prime_geq(n as u64) as usize;
    debug_assert!(p <= 2 * n);
    if m > p {
        return Err(invalid(
            ParamReason::MExceedsP,
            format!("m={m} exceeds p={p}; no [m, m-t] Reed-Solomon code over F_p"),
        ));
    }
    Ok(CodeParams { m, n, w, t, e, p })
}

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x < 4 {
        return true;
    }
    if x.is_multiple_of(2) || x.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= x {
        if x.is_multiple_of(d) || x.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Least prime `p >= n`. Bertrand's postulate gives `p <= 2n`.
pub fn smallest_prime_geq(n: u64) -> u64 {
    let mut candidate = n.max(2);
    while !is_prime(candidate) {
        candidate += 1;
    }
    candidate
}

/// Exact payload size of the explicit encoder:
/// `(m - t) * floor(log2 C(n,w)) + t * floor(log2 (C(n,w) / n))`.
pub fn payload_bit_count(params: &CodeParams) -> Result<usize> {
    if !params.n_is_prime() {
        return Err(Error::EncoderRequiresPrimeN {
            n: params.n,
            p: params.p,
        });
    }
    let (info_bits, coset_bits) = row_bit_widths(params.n, params.w);
    Ok((params.m - params.t) * info_bits + params.t * coset_bits)
}

/// Bits carried by an information row and by a redundancy row.
pub(crate) fn row_bit_widths(n: usize, w: usize) -> (usize, usize) {
    let total = binomial(n, w);
    let per_coset = &total / n;
    (floor_log2(&total), floor_log2(&per_coset))
}
