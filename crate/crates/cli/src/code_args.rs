//! Code parameters from flags, falling back to the header line that word
//! files carry (`#caecc-word m=3 n=5 w=2 variant=uniform t=1 e=1`).

use std::collections::BTreeMap;

use caecc::{CodeSpec, Variant};
use clap::{Args, ValueEnum};

use crate::error::{exit, CliError, CliResult};

pub const WORD_TAG: &str = "#caecc-word";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantKind {
    Uniform,
    TwoTier,
    Generalized,
}

impl VariantKind {
    fn from_name(name: &str) -> CliResult<Self> {
        Self::from_str(name, true).map_err(|_| header_error(format!("unknown variant {name:?}")))
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CodeArgs {
    /// Rows per word.
    #[arg(long)]
    pub m: Option<usize>,
    /// Shortmers in the alphabet.
    #[arg(long)]
    pub n: Option<usize>,
    /// Shortmers per symbol.
    #[arg(long)]
    pub w: Option<usize>,
    /// Noisy rows corrected (uniform).
    #[arg(long)]
    pub t: Option<usize>,
    /// Missing ones corrected per row (uniform; default 1).
    #[arg(long)]
    pub e: Option<usize>,
    #[arg(long)]
    pub t1: Option<usize>,
    #[arg(long)]
    pub t2: Option<usize>,
    #[arg(long)]
    pub e1: Option<usize>,
    #[arg(long)]
    pub e2: Option<usize>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantKind>,
}

pub type Header = BTreeMap<String, String>;

fn header_error(message: String) -> CliError {
    CliError::new("BAD_HEADER", message, exit::BAD_INPUT)
}

/// Reads `key=value` pairs from the first line starting with `tag`.
pub fn parse_header(text: &str, tag: &str) -> CliResult<Header> {
    let Some(line) = text.lines().find(|l| l.starts_with(tag)) else {
        return Ok(Header::new());
    };
    line[tag.len()..]
        .split_whitespace()
        .map(|field| {
            field
                .split_once('=')
                .map(|(k, v)| (k.to_owned(), v.to_owned()))
                .ok_or_else(|| header_error(format!("bad header field {field:?}")))
        })
        .collect()
}

impl CodeArgs {
    fn value(&self, flag: Option<usize>, key: &str, header: &Header) -> CliResult<Option<usize>> {
        let from_header = header
            .get(key)
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| header_error(format!("bad header value {key}={v}")))
            })
            .transpose()?;
        match (flag, from_header) {
            (Some(a), Some(b)) if a != b => Err(header_error(format!(
                "--{key} {a} disagrees with file header {key}={b}"
            ))),
            (Some(a), _) => Ok(Some(a)),
            (None, b) => Ok(b),
        }
    }

    fn required(&self, flag: Option<usize>, key: &str, header: &Header) -> CliResult<usize> {
        self.value(flag, key, header)?
            .ok_or_else(|| CliError::usage(format!("missing --{key}")))
    }

    pub fn variant_kind(&self, header: &Header) -> CliResult<VariantKind> {
        let from_header = header
            .get("variant")
            .map(|v| VariantKind::from_name(v))
            .transpose()?;
        match (self.variant, from_header) {
            (Some(a), Some(b)) if a != b => Err(header_error(format!(
                "--variant {a:?} disagrees with file header variant {b:?}"
            ))),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Ok(VariantKind::Uniform),
        }
    }

    pub fn variant(&self, header: &Header) -> CliResult<Variant> {
        Ok(match self.variant_kind(header)? {
            VariantKind::Uniform => Variant::Uniform {
                t: self.required(self.t, "t", header)?,
                e: self.value(self.e, "e", header)?.unwrap_or(1),
            },
            VariantKind::TwoTier => Variant::TwoTier {
                t1: self.required(self.t1, "t1", header)?,
                t2: self.required(self.t2, "t2", header)?,
            },
            VariantKind::Generalized => Variant::Generalized {
                t1: self.required(self.t1, "t1", header)?,
                e1: self.required(self.e1, "e1", header)?,
                t2: self.required(self.t2, "t2", header)?,
                e2: self.required(self.e2, "e2", header)?,
            },
        })
    }

    pub fn resolve(&self, header: &Header) -> CliResult<CodeSpec> {
        let m = self.required(self.m, "m", header)?;
        let n = self.required(self.n, "n", header)?;
        let w = self.required(self.w, "w", header)?;
        Ok(CodeSpec::new(m, n, w, self.variant(header)?)?)
    }
}

pub fn code_header(spec: &CodeSpec) -> String {
    let p = spec.params();
    let tail = match spec.variant() {
        Variant::Uniform { t, e } => format!("variant=uniform t={t} e={e}"),
        Variant::TwoTier { t1, t2 } => format!("variant=two-tier t1={t1} t2={t2}"),
        Variant::Generalized { t1, e1, t2, e2 } => {
            format!("variant=generalized t1={t1} e1={e1} t2={t2} e2={e2}")
        }
    };
    format!("{WORD_TAG} m={} n={} w={} {tail}\n", p.m(), p.n(), p.w())
}

pub fn dims_header(m: usize, n: usize, w: usize) -> String {
    format!("{WORD_TAG} m={m} n={n} w={w}\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_round_trip() {
        let spec = CodeSpec::new(4, 7, 3, Variant::TwoTier { t1: 2, t2: 1 }).unwrap();
        let line = code_header(&spec);
        let header = parse_header(&line, WORD_TAG).unwrap();
        let back = CodeArgs::default().resolve(&header).unwrap();
        assert_eq!(back.variant(), spec.variant());
        assert_eq!(back.params(), spec.params());
    }

    #[test]
    fn flags_must_agree_with_header() {
        let header = parse_header(
            "#caecc-word m=3 n=5 w=2 variant=uniform t=1 e=1\n",
            WORD_TAG,
        )
        .unwrap();
        let args = CodeArgs {
            m: Some(4),
            ..CodeArgs::default()
        };
        assert_eq!(args.resolve(&header).unwrap_err().code, "BAD_HEADER");
        let args = CodeArgs {
            m: Some(3),
            ..CodeArgs::default()
        };
        assert!(args.resolve(&header).is_ok());
        assert!(CodeArgs::default().resolve(&Header::new()).is_err());
    }
}
