//! Loads a seed-sentence file into a store.

use std::path::PathBuf;

use anyhow::Context;
use awal_platform::Store;
use clap::Parser;

#[derive(Parser, Debug)]
#[command(name = "awal-seeds", about = "Ingest Creative Commons seed sentences")]
struct Args {
    #[arg(long, env = "AWAL_STORE")]
    store: PathBuf,
    /// Tab-separated seed file.
    file: PathBuf,
    /// Source name for lines that do not give one.
    #[arg(long, default_value = "")]
    source: String,
    /// License for lines that do not give one.
    #[arg(long, default_value = "")]
    license: String,
}

fn main() -> anyhow::Result<()> {
    let args = Args::parse();
    let doc = std::fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let store = Store::open(&args.store)?;
    let added = store.ingest_seeds(&doc, &args.source, &args.license)?;
    println!("{added}");
    Ok(())
}
