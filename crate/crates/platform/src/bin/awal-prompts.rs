//! Lists distinct sentences to use as speech-recording prompts.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::Context;
use awal_core::export::{export_prompts, PromptFilter};
use awal_core::{LanguageTag, ScriptClass};
use awal_platform::State;
use clap::Parser;

#[derive(Parser, Debug)]
#[command(name = "awal-prompts", about = "Export reading prompts from an Awal store")]
struct Args {
    #[arg(long, env = "AWAL_STORE")]
    store: PathBuf,
    #[arg(long, default_value = "zgh")]
    lang: LanguageTag,
    /// tifinagh, latin, mixed or neutral; any script when omitted.
    #[arg(long)]
    script: Option<ScriptClass>,
    /// Include contributions that are not validated yet.
    #[arg(long)]
    include_unvalidated: bool,
}

fn main() -> anyhow::Result<()> {
    let args = Args::parse();
    let state = State::load(&args.store).with_context(|| format!("reading {}", args.store.display()))?;
    let filter = PromptFilter { language: args.lang, script: args.script, validated_only: !args.include_unvalidated };
    let prompts = export_prompts(&state.records(), state.seeds(), &filter);
    let mut out = BufWriter::new(io::stdout().lock());
    for p in &prompts {
        writeln!(out, "{p}")?;
    }
    out.flush()?;
    Ok(())
}
