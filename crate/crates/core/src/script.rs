//! Tifinagh / Latin script classification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use unicode_script::{Script, UnicodeScript};

/// Script a piece of Tamazight text is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScriptClass {
    Tifinagh,
    Latin,
    /// Both Tifinagh code points and Latin letters.
    Mixed,
    /// Neither (digits, punctuation, other scripts only).
    Neutral,
}

impl ScriptClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ScriptClass::Tifinagh => "tifinagh",
            ScriptClass::Latin => "latin",
            ScriptClass::Mixed => "mixed",
            ScriptClass::Neutral => "neutral",
        }
    }
}

impl fmt::Display for ScriptClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScriptClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tifinagh" => Ok(ScriptClass::Tifinagh),
            "latin" => Ok(ScriptClass::Latin),
            "mixed" => Ok(ScriptClass::Mixed),
            "neutral" => Ok(ScriptClass::Neutral),
            other => Err(format!("unknown script {other:?}")),
        }
    }
}

/// Anything in the Tifinagh block U+2D30–U+2D7F, assigned or not.
pub fn is_tifinagh(ch: char) -> bool {
    ('\u{2D30}'..='\u{2D7F}').contains(&ch)
}

/// A letter whose Unicode script property is Latin. This covers the
/// extended letters used in Latin-script Tamazight (ɛ, ɣ, ḍ, ṛ, ṣ, ṭ, ẓ, č, ǧ).
/// Combining marks carry the Inherited script and are not counted.
pub fn is_latin_letter(ch: char) -> bool {
    ch.is_alphabetic() && ch.script() == Script::Latin
}

pub fn classify_script(text: &str) -> ScriptClass {
    let mut tifinagh = false;
    let mut latin = false;
    for ch in text.chars() {
        tifinagh |= is_tifinagh(ch);
        latin |= is_latin_letter(ch);
        if tifinagh && latin {
            return ScriptClass::Mixed;
        }
    }
    match (tifinagh, latin) {
        (true, false) => ScriptClass::Tifinagh,
        (false, true) => ScriptClass::Latin,
        (true, true) => ScriptClass::Mixed,
        (false, false) => ScriptClass::Neutral,
    }
}
