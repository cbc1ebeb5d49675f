//! Syndrome-constrained composite codes: membership, size, the explicit
//! encoder, and the erasure-based decoder.
//!
//! A code is `{X : column l of the syndrome matrix of X lies in outer code
//! C_l}` for every protected order `l`. Each `C_l` is a systematic
//! `[m, m - t_l]` Reed-Solomon code over `F_p`. Rows that lost ones have
//! unknown syndromes; they are erased, filled in by the outer codes, and
//! then restored one row at a time from the filled-in syndromes.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, rank_symbol, unrank_symbol};
use crate::error::{Error, Result};
use crate::gf::{ErasureCode, FieldElement, PrimeField};
use crate::params::{
    invalid, payload_bit_count, row_bit_widths, validate_params, CodeParams, ParamReason,
};
use crate::syndrome::{complete_syndrome, recover_row, CosetTable, RowSyndrome, SyndromeVector};
use crate::word::{CompositeSymbol, CompositeWord, ReceivedWord};

/// Upper limit on exact counting work (symbols or outer codewords).
const COUNT_BUDGET: u64 = 20_000_000;

/// Which error patterns a code is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Variant {
    /// Up to `t` rows, each missing up to `e` ones.
    Uniform { t: usize, e: usize },
    /// Up to `t1` rows missing one and `t2` rows missing two ones.
    TwoTier { t1: usize, t2: usize },
    /// Up to `t1` rows missing `e1` and `t2` rows missing `e2` ones.
    Generalized {
        t1: usize,
        e1: usize,
        t2: usize,
        e2: usize,
    },
}

/// Syndrome orders sharing one outer code, which corrects `erasures` rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tier {
    pub orders: RangeInclusive<usize>,
    pub erasures: usize,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Uniform { .. } => "uniform",
            Variant::TwoTier { .. } => "two-tier",
            Variant::Generalized { .. } => "generalized",
        }
    }

    /// Largest number of noisy rows.
    pub fn total_rows(&self) -> usize {
        match *self {
            Variant::Uniform { t, .. } => t,
            Variant::TwoTier { t1, t2 } => t1 + t2,
            Variant::Generalized { t1, t2, .. } => t1 + t2,
        }
    }

    /// Largest number of missing ones in one row.
    pub fn max_errors(&self) -> usize {
        match *self {
            Variant::Uniform { e, .. } => e,
            Variant::TwoTier { .. } => 2,
            Variant::Generalized { e2, .. } => e2,
        }
    }

    pub fn tiers(&self) -> Vec<Tier> {
        match *self {
            Variant::Uniform { t, e } => vec![Tier {
                orders: 1..=e,
                erasures: t,
            }],
            Variant::TwoTier { t1, t2 } => vec![
                Tier {
                    orders: 1..=1,
                    erasures: t1 + t2,
                },
                Tier {
                    orders: 2..=2,
                    erasures: t2,
                },
            ],
            Variant::Generalized { t1, e1, t2, e2 } => {
                let mut tiers = vec![Tier {
                    orders: 1..=e1,
                    erasures: t1 + t2,
                }];
                if e2 > e1 {
                    tiers.push(Tier {
                        orders: e1 + 1..=e2,
                        erasures: t2,
                    });
                }
                tiers
            }
        }
    }

    /// Outer-code redundancy `sum_l t_l` in field symbols per row position;
    /// the code has redundancy at most this many times `log2 p` bits.
    pub fn outer_redundancy(&self) -> usize {
        self.tiers()
            .iter()
            .map(|tier| tier.erasures * tier.orders.clone().count())
            .sum()
    }

    fn check(&self) -> Result<()> {
        match *self {
            Variant::TwoTier { t1, t2 } if t1 < t2 => Err(invalid(
                ParamReason::TwoTierOrder,
                format!("two-tier codes need t1 >= t2 (t1={t1}, t2={t2})"),
            )),
            Variant::Generalized { e1, e2, .. } if e1 == 0 || e2 < e1 => Err(invalid(
                ParamReason::GeneralizedOrder,
                format!("generalized codes need e2 >= e1 >= 1 (e1={e1}, e2={e2})"),
            )),
            _ => Ok(()),
        }
    }
}

/// Payload bits of the explicit encoder.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Payload {
    bits: Vec<bool>,
}

impl Payload {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Big-endian within bytes; the final partial byte is zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.bits
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)))
            })
            .collect()
    }

    pub fn from_bytes(bytes: &[u8], bit_len: usize) -> Result<Self> {
        if bytes.len() != bit_len.div_ceil(8) {
            return Err(Error::PayloadLength {
                expected: bit_len,
                actual: bytes.len() * 8,
            });
        }
        let bits = (0..bit_len)
            .map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1)
            .collect();
        Ok(Self { bits })
    }

    /// The integer spelled by the bits most-significant first.
    fn slice_value(bits: &[bool]) -> BigUint {
        bits.iter().fold(BigUint::zero(), |acc, &b| {
            (acc << 1u32) + if b { BigUint::one() } else { BigUint::zero() }
        })
    }

    fn push_value(out: &mut Vec<bool>, value: &BigUint, width: usize) {
        out.extend((0..width).rev().map(|i| value.bit(i as u64)));
    }
}

/// Sidecar header written next to payload files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PayloadHeader {
    pub m: usize,
    pub n: usize,
    pub w: usize,
    pub t: usize,
    pub e: usize,
    pub variant: String,
    pub payload_bits: usize,
}

/// A fully specified code. Immutable once built; safe to share.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    params: CodeParams,
    variant: Variant,
    field: PrimeField,
    /// Outer code for each syndrome order, index `order - 1`.
    outer: Vec<ErasureCode>,
    cosets: Option<CosetTable>,
}

impl CodeSpec {
    pub fn new(m: usize, n: usize, w: usize, variant: Variant) -> Result<Self> {
        variant.check()?;
        let params = validate_params(m, n, w, variant.total_rows(), variant.max_errors())?;
        let field = PrimeField::new(params.p() as u32)?;
        let mut outer = Vec::new();
        for tier in variant.tiers() {
            for _ in tier.orders.clone() {
                outer.push(ErasureCode::new(field, m, m - tier.erasures)?);
            }
        }
        let cosets = if encoder_variant(&variant) && params.n_is_prime() {
            Some(CosetTable::build(n, w, field)?)
        } else {
            None
        };
        Ok(Self {
            params,
            variant,
            field,
            outer,
            cosets,
        })
    }

    pub fn uniform(m: usize, n: usize, w: usize, t: usize, e: usize) -> Result<Self> {
        Self::new(m, n, w, Variant::Uniform { t, e })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Outer code protecting syndrome order `order` (1-based).
    pub fn outer_code(&self, order: usize) -> &ErasureCode {
        &self.outer[order - 1]
    }

    /// Number of protected syndrome orders.
    pub fn orders(&self) -> usize {
        self.outer.len()
    }

    pub fn header(&self) -> Result<PayloadHeader> {
        Ok(PayloadHeader {
            m: self.params.m(),
            n: self.params.n(),
            w: self.params.w(),
            t: self.params.t(),
            e: self.params.e(),
            variant: self.variant.name().to_owned(),
            payload_bits: self.payload_bits()?,
        })
    }

    pub fn syndromes(&self, word: &CompositeWord) -> SyndromeVector {
        crate::syndrome::word_syndrome_vector(word, self.orders(), self.field)
    }

    pub fn is_codeword(&self, word: &CompositeWord) -> Result<bool> {
        self.check_dims(word.m(), word.n())?;
        if word.w() != self.params.w() {
            return Err(Error::DimensionMismatch(format!(
                "word has w={}, code has w={}",
                word.w(),
                self.params.w()
            )));
        }
        let syndromes = self.syndromes(word);
        Ok((1..=self.orders())
            .all(|order| self.outer_code(order).contains(&syndromes.component(order))))
    }

    /// Exact number of codewords.
    pub fn code_size(&self) -> Result<BigUint> {
        let (m, n, w) = (self.params.m(), self.params.n(), self.params.w());
        let alphabet = binomial(n, w);
        if self.variant.total_rows() == 0 {
            return Ok(alphabet.pow(m as u32));
        }
        if let Variant::Uniform { t, e: 1 } = self.variant {
            if self.params.n_is_prime() {
                // Every first-order coset has C(n,w)/n members.
                let per_coset = &alphabet / n;
                return Ok(per_coset.pow(m as u32) * BigUint::from(n).pow((m - t) as u32));
            }
        }
        self.count_by_syndrome_classes()
    }

    /// Sums, over every tuple of outer codewords, the number of words
    /// realising that syndrome matrix.
    fn count_by_syndrome_classes(&self) -> Result<BigUint> {
        let (m, n, w) = (self.params.m(), self.params.n(), self.params.w());
        let alphabet = binomial(n, w);
        if alphabet > BigUint::from(COUNT_BUDGET) {
            return Err(Error::TooLargeForExactCount(format!(
                "C({n},{w}) = {alphabet} symbols"
            )));
        }
        let p = self.field.p() as u64;
        let combos = self
            .outer
            .iter()
            .map(|code| BigUint::from(p).pow(code.dimension() as u32))
            .product::<BigUint>();
        if combos > BigUint::from(COUNT_BUDGET) {
            return Err(Error::TooLargeForExactCount(format!(
                "{combos} outer codeword combinations"
            )));
        }

        let mut histogram: HashMap<Vec<u32>, u64> = HashMap::new();
        for symbol in crate::combinatorics::all_symbols(n, w)? {
            let key = complete_syndrome(symbol.row(), self.orders(), self.field)
                .components()
                .iter()
                .map(|c| c.value())
                .collect();
            *histogram.entry(key).or_default() += 1;
        }

        let codebooks: Vec<Vec<Vec<FieldElement>>> =
            self.outer.iter().map(codewords).collect::<Result<_>>()?;
        let mut total = BigUint::zero();
        let mut choice = vec![0usize; codebooks.len()];
        let mut key = vec![0u32; codebooks.len()];
        loop {
            let mut product = BigUint::one();
            for row in 0..m {
                for (order, book) in codebooks.iter().enumerate() {
                    key[order] = book[choice[order]][row].value();
                }
                match histogram.get(&key) {
                    Some(&c) => product *= c,
                    None => {
                        product = BigUint::zero();
                        break;
                    }
                }
            }
            total += product;
            // Mixed-radix increment.
            let mut digit = 0;
            loop {
                if digit == choice.len() {
                    return Ok(total);
                }
                choice[digit] += 1;
                if choice[digit] < codebooks[digit].len() {
                    break;
                }
                choice[digit] = 0;
                digit += 1;
            }
        }
    }

    /// Checks that the explicit encoder applies: `Uniform(t, 1)`, `n` prime.
    pub fn require_encoder(&self) -> Result<&CosetTable> {
        if !encoder_variant(&self.variant) {
            return Err(Error::UnsupportedVariant(format!(
                "explicit encoder covers uniform codes with e = 1, not {:?}",
                self.variant
            )));
        }
        self.cosets.as_ref().ok_or(Error::EncoderRequiresPrimeN {
            n: self.params.n(),
            p: self.params.p(),
        })
    }

    pub fn payload_bits(&self) -> Result<usize> {
        self.require_encoder()?;
        payload_bit_count(&self.params)
    }

    /// Information rows first (plain lexicographic ranks), then the
    /// redundancy rows chosen inside the syndrome coset the outer code
    /// dictates.
    pub fn encode(&self, payload: &Payload) -> Result<CompositeWord> {
        let cosets = self.require_encoder()?;
        let expected = self.payload_bits()?;
        if payload.len() != expected {
            return Err(Error::PayloadLength {
                expected,
                actual: payload.len(),
            });
        }
        let (m, n, w, t) = (
            self.params.m(),
            self.params.n(),
            self.params.w(),
            self.params.t(),
        );
        let k = m - t;
        let (info_bits, coset_bits) = row_bit_widths(n, w);
        let mut chunks = payload.bits().chunks(info_bits.max(1));

        let mut rows = Vec::with_capacity(m);
        for _ in 0..k {
            let value = if info_bits == 0 {
                BigUint::zero()
            } else {
                Payload::slice_value(chunks.next().expect("length checked"))
            };
            rows.push(unrank_symbol(&value, n, w)?);
        }
        let info_syndromes: Vec<FieldElement> = rows
            .iter()
            .map(|row| crate::syndrome::vt_syndrome(row.row(), 1, self.field))
            .collect();
        let full = self.outer_code(1).extend(&info_syndromes)?;

        let tail = &payload.bits()[k * info_bits..];
        for (i, &syndrome) in full[k..].iter().enumerate() {
            let index = Payload::slice_value(&tail[i * coset_bits..(i + 1) * coset_bits]);
            rows.push(cosets.unrank(syndrome, &index)?);
        }
        CompositeWord::new(rows)
    }

    /// Reads the payload back out of a codeword.
    pub fn extract_payload(&self, word: &CompositeWord) -> Result<Payload> {
        let cosets = self.require_encoder()?;
        if !self.is_codeword(word)? {
            return Err(Error::InconsistentCodeword);
        }
        let (m, n, w, t) = (
            self.params.m(),
            self.params.n(),
            self.params.w(),
            self.params.t(),
        );
        let (info_bits, coset_bits) = row_bit_widths(n, w);
        let mut bits = Vec::with_capacity(self.payload_bits()?);
        for (i, row) in word.rows().iter().enumerate().take(m - t) {
            let rank = rank_symbol(row);
            if rank.bits() as usize > info_bits {
                return Err(Error::OutsideEncoderImage { row: i });
            }
            Payload::push_value(&mut bits, &rank, info_bits);
        }
        for (i, row) in word.rows().iter().enumerate().skip(m - t) {
            let (_, index) = cosets.rank(row)?;
            if index.bits() as usize > coset_bits {
                return Err(Error::OutsideEncoderImage { row: i });
            }
            Payload::push_value(&mut bits, &index, coset_bits);
        }
        Ok(Payload::new(bits))
    }

    pub fn decode(&self, received: &ReceivedWord) -> Result<Payload> {
        self.require_encoder()?;
        let word = self.correct_word(received)?;
        self.extract_payload(&word)
    }

    /// Restores every row that lost ones.
    ///
    /// Tiers are processed in order of syndrome order. A tier erases the
    /// rows still unresolved, fills in its syndrome columns from the outer
    /// codes, and then restores every unresolved row whose deficit it
    /// covers. Restored rows contribute known syndromes to later tiers.
    pub fn correct_word(&self, received: &ReceivedWord) -> Result<CompositeWord> {
        self.check_received(received)?;
        let (m, w) = (self.params.m(), self.params.w());
        let deficits = self.checked_deficits(received)?;

        let mut resolved: Vec<Option<CompositeSymbol>> = received
            .rows()
            .iter()
            .zip(&deficits)
            .map(|(row, &d)| {
                (d == 0)
                    .then(|| CompositeSymbol::new(row.clone()))
                    .transpose()
            })
            .collect::<Result<_>>()?;
        // filled[order - 1][row]
        let mut filled: Vec<Vec<FieldElement>> = Vec::with_capacity(self.orders());

        for tier in self.variant.tiers() {
            for order in tier.orders.clone() {
                let column: Vec<Option<FieldElement>> = resolved
                    .iter()
                    .map(|row| {
                        row.as_ref()
                            .map(|sym| crate::syndrome::vt_syndrome(sym.row(), order, self.field))
                    })
                    .collect();
                filled.push(self.outer_code(order).decode(&column)?);
            }
            let known_orders = *tier.orders.end();
            for i in 0..m {
                if resolved[i].is_none() && deficits[i] <= known_orders {
                    let target = RowSyndrome::new(filled.iter().map(|column| column[i]).collect());
                    resolved[i] = Some(recover_row(received.row(i), &target, w, self.field)?);
                }
            }
        }
        let rows = resolved
            .into_iter()
            .enumerate()
            .map(|(row, sym)| {
                sym.ok_or(Error::RowDeficitExceeded {
                    row,
                    deficit: deficits[row],
                    max: self.params.e(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CompositeWord::new(rows)
    }

    /// Restores rows from externally known true syndromes, bypassing the
    /// outer codes. Any number of rows may be deficient.
    pub fn correct_word_with_syndromes(
        &self,
        received: &ReceivedWord,
        known: &SyndromeVector,
    ) -> Result<CompositeWord> {
        self.check_received(received)?;
        if known.len() != self.params.m() {
            return Err(Error::DimensionMismatch(format!(
                "{} known syndromes for {} rows",
                known.len(),
                self.params.m()
            )));
        }
        let deficits = self.checked_deficits(received)?;
        let rows = received
            .rows()
            .iter()
            .zip(known.entries())
            .zip(&deficits)
            .map(|((row, target), &d)| {
                if d == 0 {
                    CompositeSymbol::new(row.clone())
                } else {
                    recover_row(row, target, self.params.w(), self.field)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        CompositeWord::new(rows)
    }

    fn checked_deficits(&self, received: &ReceivedWord) -> Result<Vec<usize>> {
        let deficits = received.deficits();
        let max = self.params.e();
        if let Some((row, &deficit)) = deficits.iter().enumerate().find(|(_, &d)| d > max) {
            return Err(Error::RowDeficitExceeded { row, deficit, max });
        }
        Ok(deficits)
    }

    fn check_received(&self, received: &ReceivedWord) -> Result<()> {
        self.check_dims(received.m(), received.n())?;
        if received.w() != self.params.w() {
            return Err(Error::DimensionMismatch(format!(
                "received word declared with w={}, code has w={}",
                received.w(),
                self.params.w()
            )));
        }
        Ok(())
    }

    fn check_dims(&self, m: usize, n: usize) -> Result<()> {
        if m != self.params.m() || n != self.params.n() {
            return Err(Error::DimensionMismatch(format!(
                "word is {m}x{n}, code is {}x{}",
                self.params.m(),
                self.params.n()
            )));
        }
        Ok(())
    }
}

fn encoder_variant(variant: &Variant) -> bool {
    matches!(variant, Variant::Uniform { e: 1, .. })
}

/// Every codeword of a (small) outer code.
fn codewords(code: &ErasureCode) -> Result<Vec<Vec<FieldElement>>> {
    let field = code.field();
    let p = field.p() as u64;
    let k = code.dimension();
    let count = p
        .checked_pow(k as u32)
        .filter(|&c| c <= COUNT_BUDGET)
        .ok_or_else(|| Error::TooLargeForExactCount(format!("{p}^{k} outer codewords")))?;
    (0..count)
        .map(|mut index| {
            let message: Vec<FieldElement> = (0..k)
                .map(|_| {
                    let digit = index % p;
                    index /= p;
                    field.elem(digit)
                })
                .collect();
            code.extend(&message)
        })
        .collect()
}

/// Redundancy in bits, `log2 C(n,w)^m - log2 |C|`.
pub fn redundancy_bits(params: &CodeParams, code_size: &BigUint) -> f64 {
    let space = binomial(params.n(), params.w()).pow(params.m() as u32);
    crate::combinatorics::log2_ratio(&space, code_size)
}
