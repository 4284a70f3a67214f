//! Corpus export (JSONL and TSV), re-import, and reading-prompt lists.

use std::collections::HashSet;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contribution::{Contribution, Dialect, Status};
use crate::seed::SeedBank;
use crate::{classify_script, ContributionId, LanguageTag, ScriptClass};

/// One exported sentence pair. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportRecord {
    pub id: ContributionId,
    pub src_lang: LanguageTag,
    pub tgt_lang: LanguageTag,
    pub src_text: String,
    pub tgt_text: String,
    pub script: ScriptClass,
    pub dialect: Dialect,
    pub status: Status,
    pub approvals: u32,
    pub rejections: u32,
    #[serde(with = "iso8601")]
    pub created_at: DateTime<Utc>,
}

impl From<&Contribution> for ExportRecord {
    fn from(c: &Contribution) -> Self {
        ExportRecord {
            id: c.id,
            src_lang: c.src_lang,
            tgt_lang: c.tgt_lang,
            src_text: c.src_text.clone(),
            tgt_text: c.tgt_text.clone(),
            script: c.tamazight_script,
            dialect: c.dialect,
            status: c.status,
            approvals: c.approvals(),
            rejections: c.rejections(),
            created_at: c.created_at,
        }
    }
}

/// Millisecond-precision UTC timestamps: `2025-06-13T08:30:00.000Z`.
pub mod iso8601 {
    use chrono::{DateTime, Utc};
    use serde::{Deserialize, Deserializer, Serializer};

    pub const FORMAT: &str = "%Y-%m-%dT%H:%M:%S%.3fZ";

    pub fn format(t: &DateTime<Utc>) -> String {
        t.format(FORMAT).to_string()
    }

    pub fn serialize<S: Serializer>(t: &DateTime<Utc>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&t.format(FORMAT))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DateTime<Utc>, D::Error> {
        let raw = String::deserialize(d)?;
        DateTime::parse_from_rfc3339(&raw).map(|t| t.with_timezone(&Utc)).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Jsonl,
    Tsv,
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("unsupported export format {0:?} (expected jsonl or tsv)")]
    UnsupportedFormat(String),
    #[error("line {line}: {source}")]
    BadRecord { line: usize, source: serde_json::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl FromStr for ExportFormat {
    type Err = ExportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(ExportFormat::Jsonl),
            "tsv" => Ok(ExportFormat::Tsv),
            other => Err(ExportError::UnsupportedFormat(other.to_string())),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Jsonl => "jsonl",
            ExportFormat::Tsv => "tsv",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExportFilter {
    pub validated_only: bool,
    /// Unordered: `(ca, zgh)` also matches zgh→ca contributions.
    pub language_pair: Option<(LanguageTag, LanguageTag)>,
}

impl ExportFilter {
    pub fn matches(&self, r: &ExportRecord) -> bool {
        if self.validated_only && r.status != Status::Validated {
            return false;
        }
        match self.language_pair {
            None => true,
            Some((a, b)) => (r.src_lang, r.tgt_lang) == (a, b) || (r.src_lang, r.tgt_lang) == (b, a),
        }
    }
}

pub const TSV_HEADER: &str = "id\tsrc_lang\ttgt_lang\tsrc_text\ttgt_text\tscript\tdialect\tstatus\tapprovals\trejections\tcreated_at";

/// Backslash-escapes tab, CR, LF and backslash so every record stays on one line.
pub fn escape_tsv(field: &str) -> String {
    let mut out = String::with_capacity(field.len());
    for ch in field.chars() {
        match ch {
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out
}

/// Writes every matching record in id order. Returns the number written.
pub fn export_corpus<W: Write>(
    records: &[ExportRecord],
    filter: &ExportFilter,
    format: ExportFormat,
    mut out: W,
) -> Result<usize, ExportError> {
    let mut selected: Vec<&ExportRecord> = records.iter().filter(|r| filter.matches(r)).collect();
    selected.sort_by_key(|r| r.id);

    if format == ExportFormat::Tsv {
        writeln!(out, "{TSV_HEADER}")?;
    }
    for r in &selected {
        match format {
            ExportFormat::Jsonl => {
                serde_json::to_writer(&mut out, r).map_err(io::Error::from)?;
                out.write_all(b"\n")?;
            }
            ExportFormat::Tsv => writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.id.0,
                r.src_lang,
                r.tgt_lang,
                escape_tsv(&r.src_text),
                escape_tsv(&r.tgt_text),
                r.script,
                r.dialect.as_str(),
                r.status,
                r.approvals,
                r.rejections,
                iso8601::format(&r.created_at),
            )?,
        }
    }
    out.flush()?;
    Ok(selected.len())
}

pub fn export_to_string(records: &[ExportRecord], filter: &ExportFilter, format: ExportFormat) -> String {
    let mut buf = Vec::new();
    export_corpus(records, filter, format, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("export is UTF-8")
}

/// Parses a JSONL export back into records. Blank lines are skipped.
pub fn parse_jsonl(document: &str) -> Result<Vec<ExportRecord>, ExportError> {
    document
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|source| ExportError::BadRecord { line: i + 1, source }))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PromptFilter {
    pub language: LanguageTag,
    /// `None` accepts any script.
    pub script: Option<ScriptClass>,
    pub validated_only: bool,
}

impl PromptFilter {
    pub fn new(language: LanguageTag, script: Option<ScriptClass>) -> Self {
        PromptFilter { language, script, validated_only: true }
    }
}

/// Distinct sentences in one language and script, suitable as reading
/// prompts. Sentences come from contribution sides in that language (in id
/// order) followed by seed sentences; whitespace runs are collapsed to a
/// single space and the first occurrence of each sentence wins.
pub fn export_prompts(records: &[ExportRecord], seeds: &SeedBank, filter: &PromptFilter) -> Vec<String> {
    let mut ordered: Vec<&ExportRecord> = records.iter().collect();
    ordered.sort_by_key(|r| r.id);

    let from_records = ordered.into_iter().filter(|r| !filter.validated_only || r.status == Status::Validated).flat_map(|r| {
        let src = (r.src_lang == filter.language).then_some(r.src_text.as_str());
        let tgt = (r.tgt_lang == filter.language).then_some(r.tgt_text.as_str());
        src.into_iter().chain(tgt)
    });
    let from_seeds = seeds.iter().filter(|s| s.language == filter.language).map(|s| s.text.as_str());

    let mut seen = HashSet::new();
    from_records
        .chain(from_seeds)
        .map(|t| t.split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|t| !t.is_empty())
        .filter(|t| filter.script.is_none_or(|s| classify_script(t) == s))
        .filter(|t| seen.insert(t.clone()))
        .collect()
}
