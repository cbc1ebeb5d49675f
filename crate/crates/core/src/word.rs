//! The combinatorial-composite data model.
//!
//! A [`CompositeSymbol`] is the indicator vector of `w` shortmers out of
//! `n`; a [`CompositeWord`] stacks `m` of them as the rows of an `m x n`
//! binary matrix. A [`ReceivedWord`] is what the channel returns: the same
//! matrix with some ones cleared, so every row weight is at most `w`.
//!
//! Word files are plain text, one row per line, each line exactly `n`
//! characters from `{0,1}`. Lines starting with `#` are ignored on input.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryRow {
    bits: Vec<bool>,
}

impl BinaryRow {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        let mut bits = vec![false; n];
        for &i in support {
            if i >= n {
                return Err(Error::InvalidSymbol(format!("index {i} >= n={n}")));
            }
            if bits[i] {
                return Err(Error::InvalidSymbol(format!("index {i} repeated")));
            }
            bits[i] = true;
        }
        Ok(Self { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn support(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    /// True when every one of `self` is also a one of `other`.
    pub fn is_covered_by(&self, other: &BinaryRow) -> bool {
        self.len() == other.len() && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn hamming_distance(&self, other: &BinaryRow) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    fn parse_line(line: &str, line_no: usize) -> Result<Self> {
        line.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    line: line_no,
                    message: format!("unexpected character {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for BinaryRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A weight-`w` binary vector of length `n`, `0 < w < n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositeSymbol {
    row: BinaryRow,
    w: usize,
}

impl CompositeSymbol {
    pub fn new(row: BinaryRow) -> Result<Self> {
        let w = row.weight();
        if w == 0 || w >= row.len() {
            return Err(Error::InvalidSymbol(format!(
                "weight {w} not in (0, {})",
                row.len()
            )));
        }
        Ok(Self { row, w })
    }

    /// Builds a symbol and checks that it has exactly weight `w`.
    pub fn from_bits(bits: Vec<bool>, w: usize) -> Result<Self> {
        let symbol = Self::new(BinaryRow::new(bits))?;
        if symbol.w != w {
            return Err(Error::InvalidSymbol(format!(
                "weight {} but expected {w}",
                symbol.w
            )));
        }
        Ok(symbol)
    }

    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        Self::new(BinaryRow::from_support(n, support)?)
    }

    pub fn n(&self) -> usize {
        self.row.len()
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn weight(&self) -> usize {
        self.w
    }

    pub fn bits(&self) -> &[bool] {
        self.row.bits()
    }

    pub fn row(&self) -> &BinaryRow {
        &self.row
    }

    pub fn support(&self) -> Vec<usize> {
        self.row.support()
    }
}

impl fmt::Display for CompositeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.row.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositeWord {
    rows: Vec<CompositeSymbol>,
}

impl CompositeWord {
    pub fn new(rows: Vec<CompositeSymbol>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::DimensionMismatch("a word needs at least one row".into()))?;
        let (n, w) = (first.n(), first.w());
        if let Some((i, _)) = rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.n() != n || r.w() != w)
        {
            return Err(Error::DimensionMismatch(format!(
                "row {i} does not share (n={n}, w={w})"
            )));
        }
        Ok(Self { rows })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].n()
    }

    pub fn w(&self) -> usize {
        self.rows[0].w()
    }

    pub fn rows(&self) -> &[CompositeSymbol] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &CompositeSymbol {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<CompositeSymbol> {
        self.rows
    }

    pub fn to_received(&self) -> ReceivedWord {
        ReceivedWord {
            rows: self.rows.iter().map(|r| r.row().clone()).collect(),
            w: self.w(),
        }
    }

    pub fn to_text(&self) -> String {
        rows_to_text(self.rows.iter().map(CompositeSymbol::row))
    }

    /// Parses a word file; `n` and `w` are taken from the first row.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = parse_rows(text)?;
        let w = rows[0].weight();
        let symbols = rows
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let weight = row.weight();
                if weight != w {
                    return Err(Error::InvalidSymbol(format!(
                        "row {i} has weight {weight}, expected {w}"
                    )));
                }
                CompositeSymbol::new(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols)
    }
}

impl fmt::Display for CompositeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Channel output: `m` rows of length `n`, each of weight at most `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReceivedWord {
    rows: Vec<BinaryRow>,
    w: usize,
}

impl ReceivedWord {
    pub fn new(rows: Vec<BinaryRow>, w: usize) -> Result<Self> {
        let n = rows
            .first()
            .ok_or_else(|| Error::DimensionMismatch("a word needs at least one row".into()))?
            .len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            if row.weight() > w {
                return Err(Error::InvalidSymbol(format!(
                    "row {i} has weight {} > w={w}",
                    row.weight()
                )));
            }
        }
        Ok(Self { rows, w })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn rows(&self) -> &[BinaryRow] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BinaryRow {
        &self.rows[i]
    }

    /// `w` minus the weight of each row.
    pub fn deficits(&self) -> Vec<usize> {
        self.rows.iter().map(|r| self.w - r.weight()).collect()
    }

    /// Recovers the composite word if no row lost a one.
    pub fn to_composite(&self) -> Option<CompositeWord> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (r.weight() == self.w)
                    .then(|| CompositeSymbol::new(r.clone()).ok())
                    .flatten()
            })
            .collect::<Option<Vec<_>>>()?;
        CompositeWord::new(rows).ok()
    }

    pub fn to_text(&self) -> String {
        rows_to_text(self.rows.iter())
    }

    pub fn parse(text: &str, w: usize) -> Result<Self> {
        Self::new(parse_rows(text)?, w)
    }
}

impl From<&CompositeWord> for ReceivedWord {
    fn from(word: &CompositeWord) -> Self {
        word.to_received()
    }
}

fn rows_to_text<'a>(rows: impl Iterator<Item = &'a BinaryRow>) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

fn parse_rows(text: &str) -> Result<Vec<BinaryRow>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rows.push(BinaryRow::parse_line(line, i + 1)?);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no rows".into(),
        });
    }
    let n = rows[0].len();
    if let Some(pos) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "row {pos} has length {}, expected {n}",
            rows[pos].len()
        )));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x99() -> CompositeSymbol {
        CompositeSymbol::from_support(16, &[0, 1, 3, 6, 7]).unwrap()
    }

    #[test]
    fn symbol_invariants() {
        assert_eq!(x99().to_string(), "1101001100000000");
        assert!(CompositeSymbol::from_support(4, &[]).is_err());
        assert!(CompositeSymbol::from_support(3, &[0, 1, 2]).is_err());
        assert!(CompositeSymbol::from_support(3, &[0, 0]).is_err());
        assert!(CompositeSymbol::from_bits(vec![true, false, false], 2).is_err());
    }

    #[test]
    fn word_text_round_trip() {
        let word = CompositeWord::new(vec![x99(), x99()]).unwrap();
        let text = word.to_text();
        assert_eq!(text, "1101001100000000\n1101001100000000\n");
        assert_eq!(CompositeWord::parse(&text).unwrap(), word);
        let with_comment = format!("# m=2 n=16 w=5\n{text}");
        assert_eq!(CompositeWord::parse(&with_comment).unwrap(), word);
    }

    #[test]
    fn parse_rejects_malformed() {
        assert_eq!(
            CompositeWord::parse("0110\n011\n").unwrap_err().code(),
            "DIMENSION_MISMATCH"
        );
        assert_eq!(
            CompositeWord::parse("0110\n0111\n").unwrap_err().code(),
            "INVALID_SYMBOL"
        );
        assert_eq!(
            CompositeWord::parse("01x0\n").unwrap_err().code(),
            "PARSE_ERROR"
        );
        assert_eq!(
            CompositeWord::parse("\n").unwrap_err().code(),
            "PARSE_ERROR"
        );
        assert_eq!(
            ReceivedWord::parse("0111\n", 2).unwrap_err().code(),
            "INVALID_SYMBOL"
        );
    }

    #[test]
    fn received_word_deficits() {
        let received = ReceivedWord::parse("0110\n0100\n0000\n", 2).unwrap();
        assert_eq!(received.deficits(), vec![0, 1, 2]);
        assert!(received.to_composite().is_none());
        let clean = ReceivedWord::parse("0110\n1001\n", 2).unwrap();
        assert_eq!(clean.to_composite().unwrap().m(), 2);
    }
}
