//! Admission of a new sentence pair: pair rule, post-edit gate, script
//! detection and scoring, in that order.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contribution::{Contribution, Dialect, Status};
use crate::pair::{check_pair_with, PairViolation};
use crate::pretranslate::{check_postedit, PostEditMode, PostEditReport};
use crate::scoring::{score_submission, ScoreError, SourceProvenance, TargetProvenance};
use crate::{classify_script, ContributionId, LanguageTag, Rules, ScriptClass, UserId};

/// A sentence pair as entered by a contributor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Submission {
    pub src_lang: LanguageTag,
    pub tgt_lang: LanguageTag,
    pub src_text: String,
    pub tgt_text: String,
    #[serde(default)]
    pub dialect: Dialect,
    #[serde(default)]
    pub src_provenance: SourceProvenance,
    #[serde(default)]
    pub tgt_provenance: TargetProvenance,
    #[serde(default)]
    pub mt_suggestion: Option<String>,
    /// Script the contributor says the Tamazight side is written in.
    #[serde(default)]
    pub declared_script: Option<ScriptClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SubmissionError {
    #[error(transparent)]
    Pair(#[from] PairViolation),
    #[error("target is marked pretranslated but no MT suggestion was supplied")]
    MissingSuggestion,
    #[error("the suggested translation must be corrected before submission")]
    UneditedPretranslation,
}

impl From<ScoreError> for SubmissionError {
    fn from(e: ScoreError) -> Self {
        match e {
            ScoreError::MissingSuggestion => SubmissionError::MissingSuggestion,
        }
    }
}

/// Outcome of admitting a submission.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub points: u64,
    pub tamazight_script: ScriptClass,
    pub script_mismatch: bool,
    pub postedit: Option<PostEditReport>,
    /// Set when an unedited pretranslation was let through in warn mode.
    pub unedited_warning: bool,
}

/// Text whose script labels the pair: the Tamazight side, or the target
/// when both sides are Tamazight.
pub fn tamazight_side<'a>(src_lang: LanguageTag, tgt_lang: LanguageTag, src_text: &'a str, tgt_text: &'a str) -> &'a str {
    if tgt_lang.is_tamazight() || !src_lang.is_tamazight() {
        tgt_text
    } else {
        src_text
    }
}

pub fn evaluate_submission(sub: &Submission, rules: &Rules) -> Result<Evaluation, SubmissionError> {
    check_pair_with(rules.require_tamazight, sub.src_lang, sub.tgt_lang, &sub.src_text, &sub.tgt_text)?;

    let postedit = match sub.tgt_provenance {
        TargetProvenance::Manual => None,
        TargetProvenance::Pretranslated => {
            let mt = sub.mt_suggestion.as_deref().ok_or(SubmissionError::MissingSuggestion)?;
            Some(check_postedit(mt, &sub.tgt_text))
        }
    };
    let unedited = postedit.is_some_and(|r| !r.accepted);
    if unedited && rules.postedit == PostEditMode::Enforce {
        return Err(SubmissionError::UneditedPretranslation);
    }

    let points = score_submission(
        &sub.src_text,
        &sub.tgt_text,
        sub.src_provenance,
        sub.tgt_provenance,
        sub.mt_suggestion.as_deref(),
        rules.scoring,
    )?;
    let tamazight_script = classify_script(tamazight_side(sub.src_lang, sub.tgt_lang, &sub.src_text, &sub.tgt_text));

    Ok(Evaluation {
        points,
        tamazight_script,
        script_mismatch: sub.declared_script.is_some_and(|d| d != tamazight_script),
        postedit,
        unedited_warning: unedited,
    })
}

impl Evaluation {
    /// Builds the pending contribution this evaluation admits.
    pub fn into_contribution(&self, sub: Submission, id: ContributionId, author: UserId, created_at: DateTime<Utc>) -> Contribution {
        let tamazight_script = self.tamazight_script;
        let mt_suggestion = match sub.tgt_provenance {
            TargetProvenance::Pretranslated => sub.mt_suggestion,
            TargetProvenance::Manual => None,
        };
        Contribution {
            id,
            author,
            src_lang: sub.src_lang,
            tgt_lang: sub.tgt_lang,
            src_text: sub.src_text,
            tgt_text: sub.tgt_text,
            tamazight_script,
            declared_script: sub.declared_script.filter(|d| *d != tamazight_script),
            dialect: sub.dialect,
            src_provenance: sub.src_provenance,
            tgt_provenance: sub.tgt_provenance,
            mt_suggestion,
            status: Status::Pending,
            votes: Vec::new(),
            created_at,
        }
    }
}
