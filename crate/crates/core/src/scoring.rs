//! Gamification points for a submission.
//!
//! One point per code point typed by the contributor. Text the platform
//! produced (a seed sentence or an MT suggestion) is not the contributor's
//! input, so under the default policy a seed-loaded source earns nothing and
//! a pretranslated target earns only the edit distance from the suggestion.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::levenshtein;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceProvenance {
    #[default]
    Manual,
    /// Loaded by the Random Sentence feature.
    SeedBank,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetProvenance {
    #[default]
    Manual,
    /// Started from a machine-translation suggestion and post-edited.
    Pretranslated,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoringPolicy {
    /// Only contributor-typed characters count.
    #[default]
    InputOnly,
    /// Every character in both boxes counts, whatever its origin.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("target is marked pretranslated but no MT suggestion was supplied")]
    MissingSuggestion,
}

pub fn char_count(text: &str) -> u64 {
    text.chars().count() as u64
}

pub fn score_submission(
    src_text: &str,
    tgt_text: &str,
    src_provenance: SourceProvenance,
    tgt_provenance: TargetProvenance,
    mt_suggestion: Option<&str>,
    policy: ScoringPolicy,
) -> Result<u64, ScoreError> {
    let suggestion = match tgt_provenance {
        TargetProvenance::Pretranslated => Some(mt_suggestion.ok_or(ScoreError::MissingSuggestion)?),
        TargetProvenance::Manual => None,
    };
    if policy == ScoringPolicy::Literal {
        return Ok(char_count(src_text) + char_count(tgt_text));
    }

    let src_points = match src_provenance {
        SourceProvenance::Manual => char_count(src_text),
        SourceProvenance::SeedBank => 0,
    };
    let tgt_points = match suggestion {
        None => char_count(tgt_text),
        Some(mt) => levenshtein(mt, tgt_text) as u64,
    };
    Ok(src_points + tgt_points)
}
