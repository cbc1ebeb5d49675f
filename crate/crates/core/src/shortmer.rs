//! Shortmer alphabets and the TSV shortmer-map format (`index<TAB>bases`).
//!
//! Coding never looks at bases; a map only translates symbol supports to
//! DNA strings at the I/O boundary.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::CompositeSymbol;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shortmer {
    pub index: usize,
    pub bases: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortmerAlphabet {
    shortmers: Vec<Shortmer>,
    len: usize,
}

/// The 16 three-base shortmers of the combinatorial synthesis experiments
/// (`n = 16`, `w = 5`), in their published index order.
const EXAMPLE_BASES: [&str; 16] = [
    "AAT", "ACA", "ATG", "AGC", "TAA", "TCT", "TTC", "TGG", "GAG", "GCC", "GTT", "GGA", "CAC",
    "CCG", "CTA", "CGT",
];

impl ShortmerAlphabet {
    /// Assigns indices in lexicographic order of the base strings.
    pub fn from_bases<S: AsRef<str>>(bases: &[S]) -> Result<Self> {
        let mut sorted: Vec<String> = bases.iter().map(|b| b.as_ref().to_owned()).collect();
        sorted.sort();
        Self::from_indexed(sorted.into_iter().enumerate().collect())
    }

    /// Keeps a caller-supplied indexing. Indices must be exactly `0..n`.
    pub fn from_indexed(mut entries: Vec<(usize, String)>) -> Result<Self> {
        entries.sort_by_key(|(i, _)| *i);
        if entries.len() < 2 {
            return Err(Error::InvalidSymbol(
                "an alphabet needs n > 1 shortmers".into(),
            ));
        }
        let len = entries[0].1.len();
        if len == 0 {
            return Err(Error::InvalidSymbol("empty shortmer".into()));
        }
        let mut seen = HashMap::new();
        let mut shortmers = Vec::with_capacity(entries.len());
        for (expected, (index, bases)) in entries.into_iter().enumerate() {
            if index != expected {
                return Err(Error::InvalidSymbol(format!(
                    "indices must be contiguous from 0; missing {expected}"
                )));
            }
            if bases.len() != len {
                return Err(Error::InvalidSymbol(format!(
                    "shortmer {bases:?} has length {}, expected {len}",
                    bases.len()
                )));
            }
            if let Some(c) = bases.chars().find(|c| !matches!(c, 'A' | 'C' | 'G' | 'T')) {
                return Err(Error::InvalidSymbol(format!(
                    "invalid base {c:?} in {bases:?}"
                )));
            }
            if let Some(prev) = seen.insert(bases.clone(), index) {
                return Err(Error::InvalidSymbol(format!(
                    "shortmer {bases:?} appears at indices {prev} and {index}"
                )));
            }
            shortmers.push(Shortmer { index, bases });
        }
        Ok(Self { shortmers, len })
    }

    pub fn example() -> Self {
        Self::from_indexed(
            EXAMPLE_BASES
                .iter()
                .enumerate()
                .map(|(i, b)| (i, (*b).to_owned()))
                .collect(),
        )
        .expect("embedded alphabet is valid")
    }

    pub fn n(&self) -> usize {
        self.shortmers.len()
    }

    /// Shortmer length in bases.
    pub fn shortmer_len(&self) -> usize {
        self.len
    }

    pub fn shortmers(&self) -> &[Shortmer] {
        &self.shortmers
    }

    pub fn index_of(&self, bases: &str) -> Option<usize> {
        self.shortmers.iter().position(|s| s.bases == bases)
    }

    pub fn symbol_bases(&self, symbol: &CompositeSymbol) -> Result<Vec<&str>> {
        if symbol.n() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "symbol length {} but alphabet has {} shortmers",
                symbol.n(),
                self.n()
            )));
        }
        Ok(symbol
            .support()
            .into_iter()
            .map(|i| self.shortmers[i].bases.as_str())
            .collect())
    }

    pub fn symbol_from_bases(&self, bases: &[&str]) -> Result<CompositeSymbol> {
        let support = bases
            .iter()
            .map(|b| {
                self.index_of(b)
                    .ok_or_else(|| Error::InvalidSymbol(format!("unknown shortmer {b:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CompositeSymbol::from_support(self.n(), &support)
    }

    pub fn to_tsv(&self) -> String {
        self.shortmers
            .iter()
            .map(|s| format!("{}\t{}\n", s.index, s.bases))
            .collect()
    }

    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let (index, bases) = line
                .split_once('\t')
                .ok_or_else(|| parse_err("expected `index<TAB>bases`".into()))?;
            let index = index
                .parse::<usize>()
                .map_err(|e| parse_err(format!("bad index: {e}")))?;
            if entries.last().is_some_and(|(prev, _)| *prev >= index) {
                return Err(parse_err("indices must be strictly increasing".into()));
            }
            entries.push((index, bases.to_owned()));
        }
        Self::from_indexed(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_alphabet_names_x99() {
        let alphabet = ShortmerAlphabet::example();
        assert_eq!(alphabet.n(), 16);
        assert_eq!(alphabet.shortmer_len(), 3);
        let x99 = CompositeSymbol::from_support(16, &[0, 1, 3, 6, 7]).unwrap();
        assert_eq!(
            alphabet.symbol_bases(&x99).unwrap(),
            vec!["AAT", "ACA", "AGC", "TTC", "TGG"]
        );
        let back = alphabet
            .symbol_from_bases(&["TGG", "AAT", "AGC", "ACA", "TTC"])
            .unwrap();
        assert_eq!(back, x99);
    }

    #[test]
    fn tsv_round_trip() {
        let alphabet = ShortmerAlphabet::example();
        let tsv = alphabet.to_tsv();
        assert!(tsv.starts_with("0\tAAT\n1\tACA\n"));
        assert_eq!(ShortmerAlphabet::parse_tsv(&tsv).unwrap(), alphabet);
    }

    #[test]
    fn lexicographic_indexing() {
        let alphabet = ShortmerAlphabet::from_bases(&["GT", "AC", "CA"]).unwrap();
        let order: Vec<_> = alphabet
            .shortmers()
            .iter()
            .map(|s| s.bases.as_str())
            .collect();
        assert_eq!(order, vec!["AC", "CA", "GT"]);
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(ShortmerAlphabet::parse_tsv("0\tAAT\n2\tACA\n").is_err());
        assert!(ShortmerAlphabet::parse_tsv("1\tAAT\n0\tACA\n").is_err());
        assert!(ShortmerAlphabet::parse_tsv("0\tAAT\n1\tAC\n").is_err());
        assert!(ShortmerAlphabet::parse_tsv("0\tAAT\n1\tAAT\n").is_err());
        assert!(ShortmerAlphabet::parse_tsv("0\tAAU\n1\tACA\n").is_err());
        assert!(ShortmerAlphabet::parse_tsv("0 AAT\n").is_err());
        assert!(ShortmerAlphabet::parse_tsv("0\tAAT\n").is_err());
    }
}
