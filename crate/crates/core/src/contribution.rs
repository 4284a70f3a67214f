//! Contributions and the peer-validation state machine.
//!
//! A contribution starts `Pending`. It becomes `Validated` on the second
//! approval from distinct non-authors, or `Rejected` once rejections reach
//! the configured threshold while approvals are still below two. Decided
//! contributions never change status again.

use std::fmt;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scoring::{SourceProvenance, TargetProvenance};
use crate::{ContributionId, LanguageTag, ScriptClass, UserId};

/// Approvals that move a contribution into the validated corpus.
pub const APPROVALS_TO_VALIDATE: u32 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dialect {
    /// Standard Moroccan Tamazight.
    Standard,
    Central,
    Tarifit,
    Tachelhit,
    Other,
    #[default]
    Unspecified,
}

impl Dialect {
    pub fn as_str(self) -> &'static str {
        match self {
            Dialect::Standard => "standard",
            Dialect::Central => "central",
            Dialect::Tarifit => "tarifit",
            Dialect::Tachelhit => "tachelhit",
            Dialect::Other => "other",
            Dialect::Unspecified => "unspecified",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Approve,
    Reject,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    #[default]
    Pending,
    Validated,
    Rejected,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pending => "pending",
            Status::Validated => "validated",
            Status::Rejected => "rejected",
        }
    }

    pub fn is_decided(self) -> bool {
        self != Status::Pending
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationVote {
    pub voter: UserId,
    pub verdict: Verdict,
    pub cast_at: DateTime<Utc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum VoteError {
    #[error("contributors cannot validate their own submissions")]
    SelfVote,
    #[error("this user has already voted on the contribution")]
    DuplicateVote,
    #[error("the contribution has already been {0}")]
    AlreadyDecided(Status),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub id: ContributionId,
    pub author: UserId,
    pub src_lang: LanguageTag,
    pub tgt_lang: LanguageTag,
    pub src_text: String,
    pub tgt_text: String,
    /// Detected script of the Tamazight side.
    pub tamazight_script: ScriptClass,
    /// Script the contributor declared, kept only when it disagrees with
    /// the detected one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_script: Option<ScriptClass>,
    pub dialect: Dialect,
    pub src_provenance: SourceProvenance,
    pub tgt_provenance: TargetProvenance,
    /// Raw MT output the target was edited from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mt_suggestion: Option<String>,
    pub status: Status,
    pub votes: Vec<ValidationVote>,
    pub created_at: DateTime<Utc>,
}

impl Contribution {
    pub fn approvals(&self) -> u32 {
        self.count(Verdict::Approve)
    }

    pub fn rejections(&self) -> u32 {
        self.count(Verdict::Reject)
    }

    fn count(&self, verdict: Verdict) -> u32 {
        self.votes.iter().filter(|v| v.verdict == verdict).count() as u32
    }

    pub fn has_voted(&self, user: UserId) -> bool {
        self.votes.iter().any(|v| v.voter == user)
    }

    pub fn script_mismatch(&self) -> bool {
        self.declared_script.is_some_and(|s| s != self.tamazight_script)
    }

    /// Checks whether `vote` may be applied, without changing anything.
    pub fn check_vote(&self, voter: UserId) -> Result<(), VoteError> {
        if voter == self.author {
            return Err(VoteError::SelfVote);
        }
        if self.status.is_decided() {
            return Err(VoteError::AlreadyDecided(self.status));
        }
        if self.has_voted(voter) {
            return Err(VoteError::DuplicateVote);
        }
        Ok(())
    }

    /// Records `vote` and returns the resulting status. On error the
    /// contribution is left untouched.
    pub fn apply_vote(&mut self, vote: ValidationVote, rejection_threshold: u32) -> Result<Status, VoteError> {
        self.check_vote(vote.voter)?;
        self.votes.push(vote);
        self.status = status_for(self.approvals(), self.rejections(), rejection_threshold);
        Ok(self.status)
    }
}

/// Status reached by a pending contribution holding these tallies.
pub fn status_for(approvals: u32, rejections: u32, rejection_threshold: u32) -> Status {
    if approvals >= APPROVALS_TO_VALIDATE {
        Status::Validated
    } else if rejections >= rejection_threshold.max(1) {
        Status::Rejected
    } else {
        Status::Pending
    }
}

/// Value-returning form of [`Contribution::apply_vote`].
pub fn apply_vote(mut contribution: Contribution, vote: ValidationVote, rejection_threshold: u32) -> Result<Contribution, VoteError> {
    contribution.apply_vote(vote, rejection_threshold)?;
    Ok(contribution)
}
