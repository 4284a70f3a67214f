//! The closed set of language tags the platform accepts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Language of one side of a sentence pair.
///
/// Declaration order is the row order used by the statistics table; the
/// Tamazight row (only populated by Tamazight↔Tamazight pairs) comes last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LanguageTag {
    /// Arabic.
    Ar,
    /// Moroccan Arabic (Darija).
    Ary,
    /// Catalan.
    Ca,
    /// Spanish.
    Es,
    /// English.
    En,
    /// French.
    Fr,
    /// Tamazight, in any script.
    Zgh,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown language tag {0:?}")]
pub struct UnknownLanguage(pub String);

impl LanguageTag {
    pub const ALL: [LanguageTag; 7] =
        [LanguageTag::Ar, LanguageTag::Ary, LanguageTag::Ca, LanguageTag::Es, LanguageTag::En, LanguageTag::Fr, LanguageTag::Zgh];

    pub fn code(self) -> &'static str {
        match self {
            LanguageTag::Ar => "ar",
            LanguageTag::Ary => "ary",
            LanguageTag::Ca => "ca",
            LanguageTag::Es => "es",
            LanguageTag::En => "en",
            LanguageTag::Fr => "fr",
            LanguageTag::Zgh => "zgh",
        }
    }

    pub fn is_tamazight(self) -> bool {
        self == LanguageTag::Zgh
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for LanguageTag {
    type Err = UnknownLanguage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LanguageTag::ALL.into_iter().find(|tag| tag.code() == s).ok_or_else(|| UnknownLanguage(s.to_string()))
    }
}
