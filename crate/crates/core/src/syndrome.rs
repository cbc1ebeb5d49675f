//! VT syndromes over a prime field, first-order syndrome cosets, and
//! single-row recovery from syndromes.
//!
//! The order-`l` syndrome of a binary row `x` is `sum_i i^l x_i mod p`
//! with 0-based indices. Clearing the ones at positions `h_1..h_d` lowers
//! the order-`l` syndrome by the power sum `h_1^l + ... + h_d^l`, so the
//! first `d` syndrome differences determine the missing positions as the
//! roots of a degree-`d` locator polynomial.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, PrimeField};
use crate::word::{BinaryRow, CompositeSymbol, CompositeWord};

/// Syndromes of orders `1..=e` of one row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowSyndrome {
    components: Vec<FieldElement>,
}

impl RowSyndrome {
    pub fn new(components: Vec<FieldElement>) -> Self {
        Self { components }
    }

    pub fn components(&self) -> &[FieldElement] {
        &self.components
    }

    /// Syndrome of order `order` (1-based).
    pub fn order(&self, order: usize) -> FieldElement {
        self.components[order - 1]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn truncated(&self, orders: usize) -> Self {
        Self {
            components: self.components[..orders.min(self.len())].to_vec(),
        }
    }
}

/// Per-row syndromes of a whole word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SyndromeVector {
    entries: Vec<RowSyndrome>,
}

impl SyndromeVector {
    pub fn new(entries: Vec<RowSyndrome>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[RowSyndrome] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The length-`m` column of order-`order` syndromes.
    pub fn component(&self, order: usize) -> Vec<FieldElement> {
        self.entries.iter().map(|s| s.order(order)).collect()
    }
}

pub fn vt_syndrome(x: &BinaryRow, order: usize, field: PrimeField) -> FieldElement {
    x.support().into_iter().fold(field.zero(), |acc, i| {
        acc + field.elem(i as u64).pow(order as u64)
    })
}

pub fn complete_syndrome(x: &BinaryRow, e: usize, field: PrimeField) -> RowSyndrome {
    let support = x.support();
    let components = (1..=e)
        .map(|order| {
            support.iter().fold(field.zero(), |acc, &i| {
                acc + field.elem(i as u64).pow(order as u64)
            })
        })
        .collect();
    RowSyndrome { components }
}

pub fn word_syndrome_vector(word: &CompositeWord, e: usize, field: PrimeField) -> SyndromeVector {
    SyndromeVector {
        entries: word
            .rows()
            .iter()
            .map(|row| complete_syndrome(row.row(), e, field))
            .collect(),
    }
}

/// Exact first-order coset sizes of `Sigma_w^n` modulo `p`, together with
/// the suffix-count table that ranks vectors inside a coset.
///
/// `suffix[i][r][s]` counts the ways to place `r` ones in positions
/// `i..n` so that their index sum is `s mod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    n: usize,
    w: usize,
    field: PrimeField,
    suffix: Vec<BigUint>,
}

impl CosetTable {
    pub fn build(n: usize, w: usize, field: PrimeField) -> Result<Self> {
        let p = field.p() as usize;
        if w == 0 || w >= n || n > p {
            return Err(Error::DimensionMismatch(format!(
                "coset table needs 0 < w < n <= p (n={n}, w={w}, p={p})"
            )));
        }
        let mut table = Self {
            n,
            w,
            field,
            suffix: vec![BigUint::zero(); (n + 1) * (w + 1) * p],
        };
        let end = table.index(n, 0, 0);
        table.suffix[end] = BigUint::from(1u32);
        for i in (0..n).rev() {
            for r in 0..=w {
                for s in 0..p {
                    let mut count = table.suffix[table.index(i + 1, r, s)].clone();
                    if r > 0 {
                        let rest = (s + p - i % p) % p;
                        count += &table.suffix[table.index(i + 1, r - 1, rest)];
                    }
                    let at = table.index(i, r, s);
                    table.suffix[at] = count;
                }
            }
        }
        Ok(table)
    }

    fn index(&self, i: usize, r: usize, s: usize) -> usize {
        (i * (self.w + 1) + r) * self.field.p() as usize + s
    }

    fn suffix(&self, i: usize, r: usize, s: usize) -> &BigUint {
        &self.suffix[self.index(i, r, s)]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Size of the coset with first-order syndrome `s`.
    pub fn count(&self, s: FieldElement) -> &BigUint {
        self.suffix(0, self.w, s.value() as usize)
    }

    /// Sizes of all `p` cosets, indexed by syndrome.
    pub fn counts(&self) -> Vec<BigUint> {
        (0..self.field.p() as usize)
            .map(|s| self.suffix(0, self.w, s).clone())
            .collect()
    }

    /// The `j`-th vector (lexicographic support order) of coset `s`.
    pub fn unrank(&self, s: FieldElement, j: &BigUint) -> Result<CompositeSymbol> {
        let size = self.count(s);
        if size.is_zero() {
            return Err(Error::EmptyCoset {
                syndrome: s.value() as u64,
            });
        }
        if j >= size {
            return Err(Error::RankOutOfRange {
                rank: j.to_string(),
                bound: size.to_string(),
            });
        }
        let p = self.field.p() as usize;
        let mut j = j.clone();
        let mut remaining = self.w;
        let mut target = s.value() as usize;
        let mut bits = vec![false; self.n];
        for (i, bit) in bits.iter_mut().enumerate() {
            if remaining == 0 {
                break;
            }
            let rest = (target + p - i % p) % p;
            let with_i = self.suffix(i + 1, remaining - 1, rest);
            if j < *with_i {
                *bit = true;
                remaining -= 1;
                target = rest;
            } else {
                j -= with_i;
            }
        }
        CompositeSymbol::from_bits(bits, self.w)
    }

    /// Inverse of [`CosetTable::unrank`]: `(syndrome, index within coset)`.
    pub fn rank(&self, symbol: &CompositeSymbol) -> Result<(FieldElement, BigUint)> {
        if symbol.n() != self.n || symbol.w() != self.w {
            return Err(Error::DimensionMismatch(format!(
                "symbol (n={}, w={}) vs table (n={}, w={})",
                symbol.n(),
                symbol.w(),
                self.n,
                self.w
            )));
        }
        let p = self.field.p() as usize;
        let s = vt_syndrome(symbol.row(), 1, self.field);
        let mut j = BigUint::zero();
        let mut remaining = self.w;
        let mut target = s.value() as usize;
        for (i, &bit) in symbol.bits().iter().enumerate() {
            if remaining == 0 {
                break;
            }
            let rest = (target + p - i % p) % p;
            if bit {
                remaining -= 1;
                target = rest;
            } else {
                j += self.suffix(i + 1, remaining - 1, rest);
            }
        }
        Ok((s, j))
    }
}

/// Restores the ones missing from `y` given the true row's syndromes.
///
/// `target` must carry at least `w - weight(y)` orders. Every component of
/// `target` is checked against the restored row.
pub fn recover_row(
    y: &BinaryRow,
    target: &RowSyndrome,
    w: usize,
    field: PrimeField,
) -> Result<CompositeSymbol> {
    let weight = y.weight();
    if weight > w {
        return Err(Error::InvalidSymbol(format!(
            "row weight {weight} exceeds w={w}"
        )));
    }
    let missing = w - weight;
    if target.len() < missing {
        return Err(Error::DimensionMismatch(format!(
            "{missing} missing ones need {missing} syndrome orders, got {}",
            target.len()
        )));
    }
    let observed = complete_syndrome(y, missing, field);
    let power_sums: Vec<FieldElement> = (1..=missing)
        .map(|k| target.order(k) - observed.order(k))
        .collect();
    let sigma = elementary_from_power_sums(&power_sums, field)?;

    // Locator z^d - s1 z^(d-1) + s2 z^(d-2) - ..., coefficients high to low.
    let locator: Vec<FieldElement> = sigma
        .iter()
        .enumerate()
        .map(|(k, &s)| if k % 2 == 0 { s } else { -s })
        .collect();
    let roots: Vec<usize> = (0..y.len())
        .filter(|&j| !y.get(j))
        .filter(|&j| {
            let z = field.elem(j as u64);
            locator
                .iter()
                .fold(field.zero(), |acc, &c| acc * z + c)
                .is_zero()
        })
        .collect();
    if roots.len() != missing {
        return Err(Error::LocatorRootMismatch {
            degree: missing,
            roots: roots.len(),
        });
    }

    let mut restored = y.clone();
    for &j in &roots {
        restored.set(j, true);
    }
    if complete_syndrome(&restored, target.len(), field) != *target {
        return Err(Error::SyndromeMismatch);
    }
    CompositeSymbol::from_bits(restored.bits().to_vec(), w)
}

/// Newton's identities: `k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) p_i`.
/// Returns `e_0..=e_d`. Requires `d < p`.
fn elementary_from_power_sums(
    power_sums: &[FieldElement],
    field: PrimeField,
) -> Result<Vec<FieldElement>> {
    let mut sigma = vec![field.one()];
    for k in 1..=power_sums.len() {
        let mut acc = field.zero();
        for i in 1..=k {
            let term = sigma[k - i] * power_sums[i - 1];
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        sigma.push(acc.checked_div(field.elem(k as u64))?);
    }
    Ok(sigma)
}
