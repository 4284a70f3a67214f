use std::path::Path;
use std::process::{Command, Output};

use awal_core::contribution::Verdict;
use awal_core::submission::Submission;
use awal_core::{ContributionId, LanguageTag, Rules};
use awal_platform::Store;
use chrono::Utc;

fn run(bin: &str, args: &[&str]) -> Output {
    Command::new(bin).args(args).env_remove("AWAL_STORE").output().expect("spawn")
}

fn ok(out: Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn sub(src_lang: LanguageTag, src: &str, tgt: &str) -> Submission {
    Submission {
        src_lang,
        tgt_lang: LanguageTag::Zgh,
        src_text: src.into(),
        tgt_text: tgt.into(),
        dialect: Default::default(),
        src_provenance: Default::default(),
        tgt_provenance: Default::default(),
        mt_suggestion: None,
        declared_script: None,
    }
}

fn populate(path: &Path) {
    let store = Store::open(path).unwrap();
    let rules = Rules::default();
    let a = store.register("a", Utc::now()).unwrap().0.id;
    let b = store.register("b", Utc::now()).unwrap().0.id;
    let c = store.register("c", Utc::now()).unwrap().0.id;
    store.submit(a, sub(LanguageTag::Ca, "bon dia", "ⴰⵣⵓⵍ"), &rules, Utc::now()).unwrap();
    store.submit(a, sub(LanguageTag::Fr, "merci\tbien", "tanemmirt\nbahra"), &rules, Utc::now()).unwrap();
    store.submit(b, sub(LanguageTag::Ca, "adéu", "ar tufat"), &rules, Utc::now()).unwrap();
    for v in [b, c] {
        store.vote(v, ContributionId(1), Verdict::Approve, &rules, Utc::now()).unwrap();
    }
}

#[test]
fn stats_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("s.jsonl");
    populate(&store);
    let text = ok(run(env!("CARGO_BIN_EXE_awal-stats"), &["--store", store.to_str().unwrap()]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "\tTifinagh\tLatin\tTOTAL");
    assert!(lines.contains(&"ca\t1\t1\t2"), "{text}");
    assert!(lines.contains(&"fr\t0\t1\t1"), "{text}");
    assert!(lines.contains(&"TOTAL\t1\t2\t3"), "{text}");
    assert!(text.contains("67"), "{text}");

    let json: serde_json::Value =
        serde_json::from_str(&ok(run(env!("CARGO_BIN_EXE_awal-stats"), &["--store", store.to_str().unwrap(), "--json"]))).unwrap();
    assert_eq!(json["grand_total"], 3);
    assert_eq!(json["metrics"]["validated_contributions"], 1);
    assert_eq!(json["metrics"]["contributing_users"], 2);
}

#[test]
fn export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src.jsonl");
    let dst = dir.path().join("dst.jsonl");
    let dump = dir.path().join("dump.jsonl");
    populate(&src);
    let export = env!("CARGO_BIN_EXE_awal-export");
    ok(run(export, &["--store", src.to_str().unwrap(), "--out", dump.to_str().unwrap()]));
    let first = std::fs::read_to_string(&dump).unwrap();
    assert_eq!(first.lines().count(), 3);

    assert_eq!(ok(run(env!("CARGO_BIN_EXE_awal-import"), &["--store", dst.to_str().unwrap(), dump.to_str().unwrap()])).trim(), "3");
    let second = ok(run(export, &["--store", dst.to_str().unwrap()]));
    assert_eq!(first, second);

    // importing the same ids again is refused
    let again = run(env!("CARGO_BIN_EXE_awal-import"), &["--store", dst.to_str().unwrap(), dump.to_str().unwrap()]);
    assert!(!again.status.success());

    let stats = |p: &Path| ok(run(env!("CARGO_BIN_EXE_awal-stats"), &["--store", p.to_str().unwrap(), "--json"]));
    let (a, b): (serde_json::Value, serde_json::Value) =
        (serde_json::from_str(&stats(&src)).unwrap(), serde_json::from_str(&stats(&dst)).unwrap());
    assert_eq!(a["table"], b["table"]);
    assert_eq!(a["metrics"]["validated_contributions"], b["metrics"]["validated_contributions"]);
}

#[test]
fn export_filters_and_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("s.jsonl");
    populate(&store);
    let export = env!("CARGO_BIN_EXE_awal-export");
    let s = store.to_str().unwrap();
    assert_eq!(ok(run(export, &["--store", s, "--validated-only"])).lines().count(), 1);
    assert_eq!(ok(run(export, &["--store", s, "--pair", "zgh-ca"])).lines().count(), 2);

    let tsv = ok(run(export, &["--store", s, "--format", "tsv", "--pair", "fr-zgh"]));
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("id\tsrc_lang\ttgt_lang"));
    assert!(lines[1].contains("merci\\tbien\ttanemmirt\\nbahra"), "{tsv}");

    assert!(!run(export, &["--store", s, "--format", "xml"]).status.success());
    assert!(!run(export, &["--store", s, "--pair", "cazgh"]).status.success());
}

#[test]
fn seeds_then_prompts() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("s.jsonl");
    let seeds = dir.path().join("seeds.tsv");
    populate(&store);
    std::fs::write(&seeds, "# lang\ttext\nzgh\tⵜⴰⴼⵓⴽⵜ ⵜⵍⵍⴰ\nca\tBon dia.\nzgh\tazul  fellawen\n").unwrap();
    let s = store.to_str().unwrap();
    let add = |store: &str| {
        ok(run(
            env!("CARGO_BIN_EXE_awal-seeds"),
            &["--store", store, seeds.to_str().unwrap(), "--source", "Tatoeba", "--license", "CC-BY-2.0-FR"],
        ))
    };
    assert_eq!(add(s).trim(), "3");
    assert_eq!(add(s).trim(), "0");

    let prompts = env!("CARGO_BIN_EXE_awal-prompts");
    let all = ok(run(prompts, &["--store", s]));
    assert_eq!(all, "ⴰⵣⵓⵍ\nⵜⴰⴼⵓⴽⵜ ⵜⵍⵍⴰ\nazul fellawen\n");
    let latin = ok(run(prompts, &["--store", s, "--script", "latin", "--include-unvalidated"]));
    assert_eq!(latin, "tanemmirt bahra\nar tufat\nazul fellawen\n");

    let missing_license = dir.path().join("bad.jsonl");
    let bad = run(env!("CARGO_BIN_EXE_awal-seeds"), &["--store", missing_license.to_str().unwrap(), seeds.to_str().unwrap()]);
    assert!(!bad.status.success());
}

#[test]
fn missing_store_fails_cleanly() {
    let out = run(env!("CARGO_BIN_EXE_awal-stats"), &["--store", "/nonexistent/awal.jsonl"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("reading"));
}
