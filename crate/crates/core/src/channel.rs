//! The composite asymmetric channel: deletion patterns, sequencing reads,
//! and a seeded Monte Carlo decoding harness.
//!
//! Randomness comes from ChaCha20 (`rand_chacha`). A run with seed `s` is
//! split into fixed-size partitions of trials; partition `i` draws from the
//! generator seeded with `s` on stream `i`. Partitions run in parallel and
//! are merged in index order, so the report depends only on the seed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codec::{CodeSpec, Payload};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::word::{BinaryRow, CompositeWord, ReceivedWord};

/// Name of the generator recorded in reports.
pub const GENERATOR: &str = "ChaCha20";

/// Trials per independently seeded partition.
pub const PARTITION_TRIALS: u64 = 1024;

/// Positions of the ones deleted from each row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ErrorPattern {
    deletions: Vec<Vec<usize>>,
}

impl ErrorPattern {
    pub fn empty(m: usize) -> Self {
        Self {
            deletions: vec![Vec::new(); m],
        }
    }

    /// One list of deleted positions per row; lists are stored sorted.
    pub fn new(mut deletions: Vec<Vec<usize>>) -> Self {
        for row in &mut deletions {
            row.sort_unstable();
        }
        Self { deletions }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.deletions
    }

    /// Number of rows with at least one deletion.
    pub fn noisy_rows(&self) -> usize {
        self.deletions.iter().filter(|d| !d.is_empty()).count()
    }

    /// Largest number of deletions in one row.
    pub fn max_errors(&self) -> usize {
        self.deletions.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn total_deletions(&self) -> usize {
        self.deletions.iter().map(Vec::len).sum()
    }

    pub fn within(&self, t: usize, e: usize) -> bool {
        self.noisy_rows() <= t && self.max_errors() <= e
    }
}

pub fn inject_errors(word: &CompositeWord, pattern: &ErrorPattern) -> Result<ReceivedWord> {
    if pattern.rows().len() != word.m() {
        return Err(Error::PatternInvalidForWord(format!(
            "pattern has {} rows, word has {}",
            pattern.rows().len(),
            word.m()
        )));
    }
    let mut rows = Vec::with_capacity(word.m());
    for (i, (symbol, deletions)) in word.rows().iter().zip(pattern.rows()).enumerate() {
        let mut row = symbol.row().clone();
        for &h in deletions {
            if h >= row.len() || !row.get(h) {
                return Err(Error::PatternInvalidForWord(format!(
                    "row {i} has no one at position {h}"
                )));
            }
            row.set(h, false);
        }
        rows.push(row);
    }
    ReceivedWord::new(rows, word.w())
}

/// `sum_{k<=t} C(m,k) (sum_{j=1..e} C(w,j))^k`.
pub fn pattern_count(m: usize, w: usize, t: usize, e: usize) -> BigUint {
    let per_row: BigUint = (1..=e.min(w)).map(|j| binomial(w, j)).sum();
    (0..=t.min(m))
        .map(|k| binomial(m, k) * per_row.pow(k as u32))
        .sum()
}

/// All `k`-subsets of `items`, each in increasing order.
pub(crate) fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every pattern with at most `t` noisy rows and at most `e` deletions per
/// noisy row, each exactly once.
pub fn enumerate_patterns(word: &CompositeWord, t: usize, e: usize) -> PatternIter {
    let options: Vec<Vec<Vec<usize>>> = word
        .rows()
        .iter()
        .map(|row| {
            let support = row.support();
            (1..=e.min(support.len()))
                .flat_map(|j| subsets(&support, j))
                .collect()
        })
        .collect();
    let m = word.m();
    let row_sets: Vec<Vec<usize>> = (0..=t.min(m))
        .flat_map(|k| subsets(&(0..m).collect::<Vec<_>>(), k))
        .collect();
    PatternIter {
        options,
        row_sets,
        set: 0,
        digits: Vec::new(),
        started: false,
    }
}

pub struct PatternIter {
    options: Vec<Vec<Vec<usize>>>,
    row_sets: Vec<Vec<usize>>,
    set: usize,
    digits: Vec<usize>,
    started: bool,
}

impl Iterator for PatternIter {
    type Item = ErrorPattern;

    fn next(&mut self) -> Option<ErrorPattern> {
        loop {
            let rows = self.row_sets.get(self.set)?;
            if self.started {
                let mut d = 0;
                while d < rows.len() {
                    self.digits[d] += 1;
                    if self.digits[d] < self.options[rows[d]].len() {
                        break;
                    }
                    self.digits[d] = 0;
                    d += 1;
                }
                if d == rows.len() {
                    self.set += 1;
                    self.started = false;
                    continue;
                }
            } else {
                if rows.iter().any(|&r| self.options[r].is_empty()) {
                    self.set += 1;
                    continue;
                }
                self.digits = vec![0; rows.len()];
                self.started = true;
            }
            let mut deletions = vec![Vec::new(); self.options.len()];
            for (&row, &digit) in rows.iter().zip(&self.digits) {
                deletions[row] = self.options[row][digit].clone();
            }
            return Some(ErrorPattern { deletions });
        }
    }
}

/// Draws an in-budget pattern: `k` uniform on `0..=t`, the noisy rows
/// uniform without replacement, each row's deletion count uniform on
/// `1..=e`, and positions uniform without replacement from its support.
pub fn random_pattern<R: Rng + ?Sized>(
    word: &CompositeWord,
    t: usize,
    e: usize,
    rng: &mut R,
) -> ErrorPattern {
    let (m, w) = (word.m(), word.w());
    let mut deletions = vec![Vec::new(); m];
    let k = rng.gen_range(0..=t.min(m));
    let e = e.min(w);
    if e == 0 {
        return ErrorPattern { deletions };
    }
    for row in sample(rng, m, k).into_iter() {
        let count = rng.gen_range(1..=e);
        let support = word.row(row).support();
        let mut chosen: Vec<usize> = sample(rng, w, count)
            .into_iter()
            .map(|i| support[i])
            .collect();
        chosen.sort_unstable();
        deletions[row] = chosen;
    }
    ErrorPattern { deletions }
}

/// Sequencing reads of one strand: each read names one observed shortmer
/// per row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadSet {
    pub m: usize,
    pub n: usize,
    pub w: usize,
    pub reads: Vec<Vec<usize>>,
}

impl ReadSet {
    pub fn len(&self) -> usize {
        self.reads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reads.is_empty()
    }

    /// Checks every read against the source word.
    pub fn check_against(&self, word: &CompositeWord) -> Result<()> {
        if (self.m, self.n, self.w) != (word.m(), word.n(), word.w()) {
            return Err(Error::DimensionMismatch(format!(
                "reads for m={} n={} w={}, word is m={} n={} w={}",
                self.m,
                self.n,
                self.w,
                word.m(),
                word.n(),
                word.w()
            )));
        }
        for (r, read) in self.reads.iter().enumerate() {
            for (row, &index) in read.iter().enumerate() {
                if !word.row(row).bits()[index] {
                    return Err(Error::InvalidSymbol(format!(
                        "read {r} names shortmer {index} outside row {row}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("#caecc-reads m={} n={} w={}\n", self.m, self.n, self.w);
        for read in &self.reads {
            let line: Vec<String> = read.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join("\t"));
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `#caecc-reads` header".into(),
        })?;
        let header_err = |message: String| Error::Parse { line: 1, message };
        let fields = header
            .strip_prefix("#caecc-reads")
            .ok_or_else(|| header_err("missing `#caecc-reads` header".into()))?;
        let mut dims = BTreeMap::new();
        for field in fields.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| header_err(format!("bad header field {field:?}")))?;
            let value: usize = value
                .parse()
                .map_err(|e| header_err(format!("bad value for {key}: {e}")))?;
            dims.insert(key, value);
        }
        let get = |key: &str| {
            dims.get(key)
                .copied()
                .ok_or_else(|| header_err(format!("header lacks {key}=")))
        };
        let (m, n, w) = (get("m")?, get("n")?, get("w")?);

        let mut reads = Vec::new();
        for (i, line) in lines {
            let line = line.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let read = line
                .split('\t')
                .map(|f| {
                    let index: usize = f.trim().parse().map_err(|e| Error::Parse {
                        line: i + 1,
                        message: format!("bad index {f:?}: {e}"),
                    })?;
                    if index >= n {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: format!("index {index} out of range for n={n}"),
                        });
                    }
                    Ok(index)
                })
                .collect::<Result<Vec<_>>>()?;
            if read.len() != m {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected {m} indices, found {}", read.len()),
                });
            }
            reads.push(read);
        }
        Ok(Self { m, n, w, reads })
    }
}

/// `reads` reads, each picking per row one index uniformly from the row's
/// support.
pub fn sample_reads(word: &CompositeWord, reads: usize, seed: u64) -> ReadSet {
    sample_reads_with(word, reads, &mut ChaCha20Rng::seed_from_u64(seed))
}

pub fn sample_reads_with<R: Rng + ?Sized>(
    word: &CompositeWord,
    reads: usize,
    rng: &mut R,
) -> ReadSet {
    let supports: Vec<Vec<usize>> = word.rows().iter().map(|r| r.support()).collect();
    let reads = (0..reads)
        .map(|_| {
            supports
                .iter()
                .map(|s| s[rng.gen_range(0..s.len())])
                .collect()
        })
        .collect();
    ReadSet {
        m: word.m(),
        n: word.n(),
        w: word.w(),
        reads,
    }
}

/// Per-row union of the observed indices.
pub fn aggregate_reads(reads: &ReadSet) -> ReceivedWord {
    let mut rows = vec![BinaryRow::zeros(reads.n); reads.m];
    for read in &reads.reads {
        for (row, &index) in rows.iter_mut().zip(read) {
            row.set(index, true);
        }
    }
    ReceivedWord::new(rows, reads.w).expect("unions of at most w supports stay within w")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimMode {
    /// Random in-budget deletion patterns.
    Pattern { t: usize, e: usize },
    /// `reads` sampled reads aggregated per row.
    Reads { reads: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimReport {
    pub m: usize,
    pub n: usize,
    pub w: usize,
    pub t: usize,
    pub e: usize,
    pub variant: String,
    pub mode: SimMode,
    pub trials: u64,
    pub successes: u64,
    pub decode_failures: u64,
    pub miscorrections: u64,
    /// Decode failures by error code.
    pub failure_codes: BTreeMap<String, u64>,
    /// `deficit_histogram[row][d]`: trials in which `row` lost `d` ones.
    pub deficit_histogram: Vec<Vec<u64>>,
    pub seed: u64,
    pub generator: String,
}

/// One CSV row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSummary {
    pub m: usize,
    pub n: usize,
    pub w: usize,
    pub t: usize,
    pub e: usize,
    pub variant: String,
    pub mode: String,
    pub mode_t: Option<usize>,
    pub mode_e: Option<usize>,
    pub reads: Option<usize>,
    pub trials: u64,
    pub successes: u64,
    pub decode_failures: u64,
    pub miscorrections: u64,
    pub success_rate: f64,
    pub seed: u64,
}

impl SimReport {
    fn empty(spec: &CodeSpec, mode: SimMode, seed: u64) -> Self {
        let p = spec.params();
        Self {
            m: p.m(),
            n: p.n(),
            w: p.w(),
            t: p.t(),
            e: p.e(),
            variant: spec.variant().name().to_owned(),
            mode,
            trials: 0,
            successes: 0,
            decode_failures: 0,
            miscorrections: 0,
            failure_codes: BTreeMap::new(),
            deficit_histogram: vec![vec![0; p.w() + 1]; p.m()],
            seed,
            generator: GENERATOR.to_owned(),
        }
    }

    fn merge(&mut self, other: &SimReport) {
        self.trials += other.trials;
        self.successes += other.successes;
        self.decode_failures += other.decode_failures;
        self.miscorrections += other.miscorrections;
        for (code, count) in &other.failure_codes {
            *self.failure_codes.entry(code.clone()).or_default() += count;
        }
        for (mine, theirs) in self
            .deficit_histogram
            .iter_mut()
            .zip(&other.deficit_histogram)
        {
            for (a, b) in mine.iter_mut().zip(theirs) {
                *a += b;
            }
        }
    }

    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    pub fn summary(&self) -> SimSummary {
        let (mode, mode_t, mode_e, reads) = match self.mode {
            SimMode::Pattern { t, e } => ("pattern", Some(t), Some(e), None),
            SimMode::Reads { reads } => ("reads", None, None, Some(reads)),
        };
        SimSummary {
            m: self.m,
            n: self.n,
            w: self.w,
            t: self.t,
            e: self.e,
            variant: self.variant.clone(),
            mode: mode.to_owned(),
            mode_t,
            mode_e,
            reads,
            trials: self.trials,
            successes: self.successes,
            decode_failures: self.decode_failures,
            miscorrections: self.miscorrections,
            success_rate: self.success_rate(),
            seed: self.seed,
        }
    }
}

/// Generator for partition `index` of a run seeded with `seed`.
pub fn partition_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Encodes random payloads, passes them through the channel, decodes, and
/// tallies the outcomes. Codec errors count as decode failures.
pub fn monte_carlo(spec: &CodeSpec, mode: SimMode, trials: u64, seed: u64) -> Result<SimReport> {
    let bits = spec.payload_bits()?;
    if let SimMode::Pattern { t, .. } = mode {
        if t > spec.params().m() {
            return Err(Error::DimensionMismatch(format!(
                "pattern mode with t={t} on a code with m={}",
                spec.params().m()
            )));
        }
    }
    let partitions = trials.div_ceil(PARTITION_TRIALS);
    let partials: Vec<SimReport> = (0..partitions)
        .into_par_iter()
        .map(|index| {
            let start = index * PARTITION_TRIALS;
            let count = PARTITION_TRIALS.min(trials - start);
            run_partition(
                spec,
                mode,
                bits,
                count,
                &mut partition_rng(seed, index),
                seed,
            )
        })
        .collect::<Result<_>>()?;
    let mut report = SimReport::empty(spec, mode, seed);
    for partial in &partials {
        report.merge(partial);
    }
    Ok(report)
}

fn run_partition(
    spec: &CodeSpec,
    mode: SimMode,
    bits: usize,
    trials: u64,
    rng: &mut ChaCha20Rng,
    seed: u64,
) -> Result<SimReport> {
    let mut report = SimReport::empty(spec, mode, seed);
    for _ in 0..trials {
        let payload = Payload::new((0..bits).map(|_| rng.gen::<bool>()).collect());
        let word = spec.encode(&payload)?;
        let received = match mode {
            SimMode::Pattern { t, e } => inject_errors(&word, &random_pattern(&word, t, e, rng))?,
            SimMode::Reads { reads } => aggregate_reads(&sample_reads_with(&word, reads, rng)),
        };
        for (row, deficit) in received.deficits().into_iter().enumerate() {
            report.deficit_histogram[row][deficit] += 1;
        }
        report.trials += 1;
        match spec.decode(&received) {
            Ok(decoded) if decoded == payload => report.successes += 1,
            Ok(_) => report.miscorrections += 1,
            Err(err) => {
                report.decode_failures += 1;
                *report
                    .failure_codes
                    .entry(err.code().to_owned())
                    .or_default() += 1;
            }
        }
    }
    Ok(report)
}
