//! Loads a JSONL export into a store.

use std::path::PathBuf;

use anyhow::Context;
use awal_core::export::parse_jsonl;
use awal_platform::Store;
use clap::Parser;

#[derive(Parser, Debug)]
#[command(name = "awal-import", about = "Import a JSONL corpus export")]
struct Args {
    #[arg(long, env = "AWAL_STORE")]
    store: PathBuf,
    file: PathBuf,
}

fn main() -> anyhow::Result<()> {
    let args = Args::parse();
    let doc = std::fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let records = parse_jsonl(&doc)?;
    let store = Store::open(&args.store)?;
    println!("{}", store.import_records(records)?);
    Ok(())
}
