//! Dumps the corpus as JSONL or TSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::Context;
use awal_core::export::{export_corpus, ExportFilter, ExportFormat};
use awal_core::LanguageTag;
use awal_platform::State;
use clap::Parser;

#[derive(Parser, Debug)]
#[command(name = "awal-export", about = "Export contributions from an Awal store")]
struct Args {
    /// Store log file.
    #[arg(long, env = "AWAL_STORE")]
    store: PathBuf,
    /// Only validated contributions.
    #[arg(long)]
    validated_only: bool,
    /// jsonl or tsv.
    #[arg(long, default_value = "jsonl")]
    format: String,
    /// Restrict to one language pair, e.g. `ca-zgh` (either direction).
    #[arg(long)]
    pair: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_pair(raw: &str) -> anyhow::Result<(LanguageTag, LanguageTag)> {
    let (a, b) = raw.split_once('-').context("pair must look like ca-zgh")?;
    Ok((a.parse()?, b.parse()?))
}

fn main() -> anyhow::Result<()> {
    let args = Args::parse();
    let format: ExportFormat = args.format.parse()?;
    let filter = ExportFilter { validated_only: args.validated_only, language_pair: args.pair.as_deref().map(parse_pair).transpose()? };
    let state = State::load(&args.store).with_context(|| format!("reading {}", args.store.display()))?;
    let records = state.records();

    let out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let written = export_corpus(&records, &filter, format, BufWriter::new(out))?;
    eprintln!("exported {written} records");
    Ok(())
}
