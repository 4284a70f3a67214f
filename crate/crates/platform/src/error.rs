use std::io;

use awal_core::contribution::VoteError;
use awal_core::export::ExportError;
use awal_core::pair::PairViolation;
use awal_core::pretranslate::MtError;
use awal_core::seed::SeedError;
use awal_core::submission::SubmissionError;
use awal_core::ContributionId;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("missing or invalid bearer token")]
    Unauthorized,
    #[error("{0} not found")]
    NotFound(String),
    #[error("display name {0:?} is already taken")]
    NameTaken(String),
    #[error("invalid display name: {0}")]
    InvalidName(&'static str),
    #[error(transparent)]
    Submission(#[from] SubmissionError),
    #[error(transparent)]
    Vote(#[from] VoteError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Mt(#[from] MtError),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error("record {0} already exists")]
    DuplicateRecord(ContributionId),
    #[error("{0}")]
    BadRequest(String),
    #[error("store log is corrupt at line {line}: {reason}")]
    Corrupt { line: usize, reason: String },
    #[error("storage failure: {0}")]
    Io(#[from] io::Error),
}

impl Error {
    /// Stable machine-readable code used in API error bodies.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Unauthorized => "unauthorized",
            Error::NotFound(_) => "not_found",
            Error::NameTaken(_) => "name_taken",
            Error::InvalidName(_) => "invalid_name",
            Error::Submission(e) => match e {
                SubmissionError::Pair(p) => pair_code(*p),
                SubmissionError::MissingSuggestion => "missing_suggestion",
                SubmissionError::UneditedPretranslation => "unedited_pretranslation",
            },
            Error::Vote(e) => match e {
                VoteError::SelfVote => "self_vote",
                VoteError::DuplicateVote => "duplicate_vote",
                VoteError::AlreadyDecided(_) => "already_decided",
            },
            Error::Seed(e) => match e {
                SeedError::MalformedDocument { .. } => "malformed_document",
                SeedError::UnknownLanguage { .. } => "unknown_language",
                SeedError::EmptyBank(_) => "empty_bank",
            },
            Error::Mt(e) => match e {
                MtError::EmptyInput => "empty_input",
                MtError::Pair(p) => pair_code(*p),
                MtError::BackendUnavailable(_) => "backend_unavailable",
            },
            Error::Export(e) => match e {
                ExportError::UnsupportedFormat(_) => "unsupported_format",
                ExportError::BadRecord { .. } => "bad_record",
                ExportError::Io(_) => "storage_error",
            },
            Error::DuplicateRecord(_) => "duplicate_record",
            Error::BadRequest(_) => "bad_request",
            Error::Corrupt { .. } | Error::Io(_) => "storage_error",
        }
    }
}

fn pair_code(p: PairViolation) -> &'static str {
    match p {
        PairViolation::EmptyText => "empty_text",
        PairViolation::NoTamazightSide => "no_tamazight_side",
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
