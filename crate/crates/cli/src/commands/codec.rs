//! `params`, `encode`, `decode` and `correct`.

use std::path::PathBuf;

use caecc::codec::redundancy_bits;
use caecc::combinatorics::{binomial, floor_log2};
use caecc::{CodeSpec, CompositeWord, Payload, PayloadHeader, ReceivedWord};
use clap::Args;
use serde_json::{json, Map, Value};

use crate::code_args::{code_header, parse_header, CodeArgs, Header, WORD_TAG};
use crate::error::{exit, CliError, CliResult};
use crate::output::{csv_text, emit, json_text, read_bytes, read_text, sidecar, Format};

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Also count the code exactly (can be slow for large alphabets).
    #[arg(long)]
    pub size: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn params(args: &ParamsArgs) -> CliResult<()> {
    let spec = args.code.resolve(&Header::new())?;
    let report = params_report(&spec, args.size)?;
    let text = match args.format {
        Format::Json => json_text(&report)?,
        Format::Csv => csv_text(&[flatten(&report)])?,
        Format::Text => flatten(&report)
            .as_object()
            .expect("report is an object")
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
    };
    emit(args.out.as_deref(), text.as_bytes())
}

fn params_report(spec: &CodeSpec, with_size: bool) -> CliResult<Value> {
    let p = spec.params();
    let tiers: Vec<Value> = spec
        .variant()
        .tiers()
        .iter()
        .map(|tier| json!({"orders": [tier.orders.start(), tier.orders.end()], "erasures": tier.erasures}))
        .collect();
    let mut report = Map::new();
    report.insert("m".into(), json!(p.m()));
    report.insert("n".into(), json!(p.n()));
    report.insert("w".into(), json!(p.w()));
    report.insert("t".into(), json!(p.t()));
    report.insert("e".into(), json!(p.e()));
    report.insert("p".into(), json!(p.p()));
    report.insert("n_is_prime".into(), json!(p.n_is_prime()));
    report.insert("variant".into(), serde_json::to_value(spec.variant())?);
    report.insert("tiers".into(), Value::Array(tiers));
    report.insert(
        "outer_redundancy_symbols".into(),
        json!(spec.variant().outer_redundancy()),
    );
    let bound = spec.variant().outer_redundancy() as f64 * (p.p() as f64).log2();
    report.insert("construction_redundancy_bits".into(), json!(bound));
    let symbols = binomial(p.n(), p.w());
    report.insert(
        "log2_alphabet".into(),
        json!(caecc::combinatorics::log2_big(&symbols)),
    );
    match spec.payload_bits() {
        Ok(bits) => {
            report.insert("payload_bits".into(), json!(bits));
            report.insert("info_bits_per_row".into(), json!(floor_log2(&symbols)));
            report.insert(
                "coset_bits_per_row".into(),
                json!(floor_log2(&(symbols / p.n()))),
            );
        }
        Err(err) => {
            report.insert("payload_bits".into(), Value::Null);
            report.insert("payload_bits_unavailable".into(), json!(err.code()));
        }
    }
    if with_size {
        match spec.code_size() {
            Ok(size) => {
                report.insert("code_size".into(), json!(size.to_string()));
                report.insert(
                    "achieved_redundancy_bits".into(),
                    json!(redundancy_bits(p, &size)),
                );
            }
            Err(err) => {
                report.insert("code_size".into(), Value::Null);
                report.insert("code_size_unavailable".into(), json!(err.code()));
            }
        }
    }
    Ok(Value::Object(report))
}

/// Nested values become compact JSON strings so the report fits one row.
fn flatten(report: &Value) -> Value {
    let map = report
        .as_object()
        .expect("report is an object")
        .iter()
        .map(|(k, v)| {
            let v = match v {
                Value::Array(_) | Value::Object(_) => Value::String(v.to_string()),
                other => other.clone(),
            };
            (k.clone(), v)
        })
        .collect();
    Value::Object(map)
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Payload bytes; a `<in>.json` sidecar, if present, supplies parameters.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn encode(args: &EncodeArgs) -> CliResult<()> {
    let side = sidecar(&args.input);
    let payload_header: Option<PayloadHeader> = if side.exists() {
        Some(serde_json::from_str(&read_text(&side)?)?)
    } else {
        None
    };
    let header = payload_header
        .as_ref()
        .map(header_from_payload)
        .unwrap_or_default();
    let spec = args.code.resolve(&header)?;
    let bits = spec.payload_bits()?;
    if let Some(h) = &payload_header {
        if h.payload_bits != bits {
            return Err(CliError::new(
                "BAD_HEADER",
                format!(
                    "sidecar declares {} payload bits, code carries {bits}",
                    h.payload_bits
                ),
                exit::BAD_INPUT,
            ));
        }
    }
    let payload = Payload::from_bytes(&read_bytes(&args.input)?, bits)?;
    let word = spec.encode(&payload)?;
    let text = format!("{}{}", code_header(&spec), word.to_text());
    emit(args.out.as_deref(), text.as_bytes())
}

fn header_from_payload(h: &PayloadHeader) -> Header {
    [
        ("m", h.m.to_string()),
        ("n", h.n.to_string()),
        ("w", h.w.to_string()),
        ("t", h.t.to_string()),
        ("e", h.e.to_string()),
        ("variant", h.variant.clone()),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_owned(), v))
    .collect()
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Received word file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Payload file; its parameters go to `<out>.json`.
    #[arg(long)]
    pub out: PathBuf,
}

fn read_received(code: &CodeArgs, input: &std::path::Path) -> CliResult<(CodeSpec, ReceivedWord)> {
    let text = read_text(input)?;
    let header = parse_header(&text, WORD_TAG)?;
    let spec = code.resolve(&header)?;
    let received = ReceivedWord::parse(&text, spec.params().w())?;
    Ok((spec, received))
}

pub fn decode(args: &DecodeArgs) -> CliResult<()> {
    let (spec, received) = read_received(&args.code, &args.input)?;
    let payload = spec.decode(&received)?;
    let header = spec.header()?;
    emit(Some(&args.out), &payload.to_bytes())?;
    emit(Some(&sidecar(&args.out)), json_text(&header)?.as_bytes())
}

#[derive(Debug, Args)]
pub struct CorrectArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Received word file.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn correct(args: &CorrectArgs) -> CliResult<()> {
    let (spec, received) = read_received(&args.code, &args.input)?;
    let word: CompositeWord = spec.correct_word(&received)?;
    let text = format!("{}{}", code_header(&spec), word.to_text());
    emit(args.out.as_deref(), text.as_bytes())
}
