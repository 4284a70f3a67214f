//! Creative Commons seed sentences for the Random Sentence feature.
//!
//! Seed files are UTF-8 and tab separated, one sentence per line:
//!
//! ```text
//! # comment
//! language_tag<TAB>text<TAB>source_name<TAB>license
//! ```
//!
//! The last two columns may be left out, in which case the defaults passed
//! to [`SeedBank::ingest_seeds`] apply.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{LanguageTag, SeedId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSentence {
    pub id: SeedId,
    pub text: String,
    pub language: LanguageTag,
    pub source_name: String,
    /// SPDX-style identifier, e.g. `CC-BY-SA-4.0`.
    pub license: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("line {line}: {reason}")]
    MalformedDocument { line: usize, reason: String },
    #[error("line {line}: unknown language tag {tag:?}")]
    UnknownLanguage { line: usize, tag: String },
    #[error("no seed sentences in {0}")]
    EmptyBank(LanguageTag),
}

/// A parsed seed line not yet assigned an id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedLine {
    pub language: LanguageTag,
    pub text: String,
    pub source_name: String,
    pub license: String,
}

/// Parses a whole seed document. Blank lines, comment lines and lines whose
/// text column is blank are skipped.
pub fn parse_seed_file(document: &str, default_source: &str, default_license: &str) -> Result<Vec<SeedLine>, SeedError> {
    let document = document.strip_prefix('\u{FEFF}').unwrap_or(document);
    let mut out = Vec::new();
    for (idx, raw) in document.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if fields.len() < 2 || fields.len() > 4 {
            return Err(SeedError::MalformedDocument {
                line,
                reason: format!("expected 2 to 4 tab-separated fields, found {}", fields.len()),
            });
        }
        let tag = fields[0].trim();
        let language = tag.parse::<LanguageTag>().map_err(|_| SeedError::UnknownLanguage { line, tag: tag.to_string() })?;
        let text = fields[1].trim();
        if text.is_empty() {
            continue;
        }
        let pick =
            |i: usize, default: &str| fields.get(i).map(|f| f.trim()).filter(|f| !f.is_empty()).unwrap_or(default.trim()).to_string();
        let source_name = pick(2, default_source);
        let license = pick(3, default_license);
        if license.is_empty() {
            return Err(SeedError::MalformedDocument { line, reason: "no license given and no default".into() });
        }
        out.push(SeedLine { language, text: text.to_string(), source_name, license });
    }
    Ok(out)
}

/// Result of [`SeedBank::draw_random`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Draw<'a> {
    pub sentence: &'a SeedSentence,
    /// Every candidate had been served; the caller should clear the history
    /// and record only this sentence.
    pub history_reset: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SeedBank {
    sentences: Vec<SeedSentence>,
    by_language: BTreeMap<LanguageTag, Vec<usize>>,
    seen: HashSet<(LanguageTag, String)>,
}

impl SeedBank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SeedSentence> {
        self.sentences.iter()
    }

    pub fn get(&self, id: SeedId) -> Option<&SeedSentence> {
        self.sentences.binary_search_by_key(&id, |s| s.id).ok().map(|i| &self.sentences[i])
    }

    pub fn contains_text(&self, language: LanguageTag, text: &str) -> bool {
        self.seen.contains(&(language, text.to_string()))
    }

    fn next_id(&self) -> SeedId {
        SeedId(self.sentences.last().map_or(1, |s| s.id.0 + 1))
    }

    /// Adds an already-identified sentence. Returns false, changing nothing,
    /// for duplicates and for ids not above the current maximum.
    pub fn insert(&mut self, sentence: SeedSentence) -> bool {
        let key = (sentence.language, sentence.text.clone());
        if self.seen.contains(&key) || sentence.id < self.next_id() {
            return false;
        }
        self.seen.insert(key);
        self.by_language.entry(sentence.language).or_default().push(self.sentences.len());
        self.sentences.push(sentence);
        true
    }

    /// Sentences from `lines` that would be new, with ids assigned.
    pub fn plan_ingest(&self, lines: Vec<SeedLine>) -> Vec<SeedSentence> {
        let mut next = self.next_id().0;
        let mut batch_seen = HashSet::new();
        lines
            .into_iter()
            .filter(|l| !self.contains_text(l.language, &l.text) && batch_seen.insert((l.language, l.text.clone())))
            .map(|l| {
                let id = SeedId(next);
                next += 1;
                SeedSentence { id, text: l.text, language: l.language, source_name: l.source_name, license: l.license }
            })
            .collect()
    }

    /// Parses `document` and adds every sentence not already in the bank.
    /// Nothing is added when the document fails to parse.
    pub fn ingest_seeds(&mut self, document: &str, default_source: &str, default_license: &str) -> Result<usize, SeedError> {
        let lines = parse_seed_file(document, default_source, default_license)?;
        let planned = self.plan_ingest(lines);
        let accepted = planned.len();
        for s in planned {
            self.insert(s);
        }
        Ok(accepted)
    }

    /// Picks uniformly among sentences in `language` that are not in
    /// `served`. When `served` covers them all, picks among all of them.
    pub fn draw_random(&self, language: LanguageTag, served: &HashSet<SeedId>, rng_seed: Option<u64>) -> Result<Draw<'_>, SeedError> {
        let pool = self.by_language.get(&language).map(Vec::as_slice).unwrap_or_default();
        if pool.is_empty() {
            return Err(SeedError::EmptyBank(language));
        }
        let fresh: Vec<usize> = pool.iter().copied().filter(|&i| !served.contains(&self.sentences[i].id)).collect();
        let (candidates, history_reset) = if fresh.is_empty() { (pool.to_vec(), true) } else { (fresh, false) };

        let mut rng = match rng_seed {
            Some(seed) => ChaCha8Rng::seed_from_u64(seed),
            None => ChaCha8Rng::from_rng(&mut rand::rng()),
        };
        let pick = candidates[rng.random_range(0..candidates.len())];
        Ok(Draw { sentence: &self.sentences[pick], history_reset })
    }
}
