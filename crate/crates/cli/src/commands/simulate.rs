//! `simulate` and `reads`.

use std::path::PathBuf;

use caecc::channel::{aggregate_reads, monte_carlo, sample_reads, ReadSet, SimMode};
use caecc::stats::p_word_success;
use caecc::{CompositeWord, Variant};
use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use crate::code_args::{dims_header, CodeArgs, Header};
use crate::error::{CliError, CliResult};
use crate::grid::parse_grid;
use crate::output::{csv_text, emit, json_text, read_text, round6, to_value, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeKind {
    /// Random deletion patterns within the code's budget.
    Pattern,
    /// Sampled reads aggregated per row.
    Reads,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value = "pattern")]
    pub mode: ModeKind,
    /// Read counts for reads mode, e.g. `1,5,10,20,25`.
    #[arg(long)]
    pub reads: Option<String>,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn simulate(args: &SimulateArgs) -> CliResult<()> {
    let spec = args.code.resolve(&Header::new())?;
    let modes: Vec<SimMode> = match args.mode {
        ModeKind::Pattern => {
            if args.reads.is_some() {
                return Err(CliError::usage("--reads applies to --mode reads only"));
            }
            vec![SimMode::Pattern {
                t: spec.params().t(),
                e: spec.params().e(),
            }]
        }
        ModeKind::Reads => {
            let grid = args
                .reads
                .as_deref()
                .ok_or_else(|| CliError::usage("--mode reads needs --reads"))?;
            parse_grid(grid)?
                .into_iter()
                .map(|reads| SimMode::Reads { reads })
                .collect()
        }
    };
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for mode in modes {
        let report = monte_carlo(&spec, mode, args.trials, args.seed)?;
        let predicted =
            match (mode, spec.variant()) {
                (SimMode::Reads { reads }, Variant::Uniform { t, e }) => Some(round6(
                    p_word_success(t, e, spec.params().w(), reads, spec.params().m()),
                )),
                _ => None,
            };
        let mut row = to_value(&report.summary())?;
        row["success_rate"] = json!(round6(report.success_rate()));
        row["predicted_success"] = json!(predicted);
        rows.push(row);
        let mut full = to_value(&report)?;
        full["predicted_success"] = json!(predicted);
        reports.push(full);
    }
    let text = match args.format {
        Format::Json => json_text(&reports)?,
        Format::Csv => csv_text(&rows)?,
        Format::Text => return Err(CliError::usage("simulate writes json or csv")),
    };
    emit(args.out.as_deref(), text.as_bytes())
}

#[derive(Debug, Subcommand)]
pub enum ReadsCommand {
    /// Draw reads from a word file.
    Sample {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        reads: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union the reads of each row into a received word.
    Aggregate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn reads(command: &ReadsCommand) -> CliResult<()> {
    match command {
        ReadsCommand::Sample {
            input,
            reads,
            seed,
            out,
        } => {
            let word = CompositeWord::parse(&read_text(input)?)?;
            emit(
                out.as_deref(),
                sample_reads(&word, *reads, *seed).to_tsv().as_bytes(),
            )
        }
        ReadsCommand::Aggregate { input, out } => {
            let set = ReadSet::parse_tsv(&read_text(input)?)?;
            let received = aggregate_reads(&set);
            let text = format!(
                "{}{}",
                dims_header(received.m(), received.n(), received.w()),
                received.to_text()
            );
            emit(out.as_deref(), text.as_bytes())
        }
    }
}
