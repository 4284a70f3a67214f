//! Domain logic for a crowdsourced Tamazight↔X parallel-corpus platform.
//!
//! Nothing here does I/O or holds shared state. Timestamps are passed in,
//! except for the one stamped on a fresh MT suggestion. The `awal-platform`
//! crate layers persistence, the HTTP service and the command-line tools on
//! top of it.

pub mod contribution;
pub mod distance;
pub mod export;
pub mod lang;
pub mod leaderboard;
pub mod pair;
pub mod pretranslate;
pub mod rules;
pub mod scoring;
pub mod script;
pub mod seed;
pub mod stats;
pub mod submission;

mod ids;

pub use ids::{ContributionId, SeedId, UserId};
pub use lang::{LanguageTag, UnknownLanguage};
pub use rules::Rules;
pub use script::{classify_script, ScriptClass};

/// Reviewer-facing acceptability guideline identifier shipped with every
/// validation queue item.
pub const GUIDELINES_REF: &str = "acceptability/meaning-fluency-grammar";

/// Short text of the acceptability guidelines shown to validators.
pub const GUIDELINES_TEXT: &str = "Approve only if the translation preserves the meaning of the source, \
reads fluently to a native speaker and is grammatically correct. Dialectal and script variation is \
welcome and is not a reason to reject.";
