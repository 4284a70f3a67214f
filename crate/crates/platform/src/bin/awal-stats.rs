//! Prints the language-pair × script table and the headline metrics.

use std::path::PathBuf;

use anyhow::Context;
use awal_platform::State;
use clap::Parser;

#[derive(Parser, Debug)]
#[command(name = "awal-stats", about = "Corpus statistics for an Awal store")]
struct Args {
    #[arg(long, env = "AWAL_STORE")]
    store: PathBuf,
    /// Emit one JSON object instead of text.
    #[arg(long)]
    json: bool,
}

fn main() -> anyhow::Result<()> {
    let args = Args::parse();
    let state = State::load(&args.store).with_context(|| format!("reading {}", args.store.display()))?;
    let table = state.table();
    let metrics = state.metrics();
    if args.json {
        let doc = serde_json::json!({
            "table": table.rows().map(|(tag, c)| (tag.code(), c)).collect::<std::collections::BTreeMap<_, _>>(),
            "column_totals": table.column_totals(),
            "grand_total": table.grand_total(),
            "metrics": metrics,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print!("{table}");
        println!();
        print!("{metrics}");
    }
    Ok(())
}
