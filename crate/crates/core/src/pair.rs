//! Language-pair admission rule.

use thiserror::Error;

use crate::LanguageTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PairViolation {
    #[error("source or target text is empty")]
    EmptyText,
    #[error("at least one side of the pair must be Tamazight (zgh)")]
    NoTamazightSide,
}

/// Checks that both texts are non-blank and that one side is Tamazight.
pub fn check_pair(src_lang: LanguageTag, tgt_lang: LanguageTag, src_text: &str, tgt_text: &str) -> Result<(), PairViolation> {
    check_pair_with(true, src_lang, tgt_lang, src_text, tgt_text)
}

/// [`check_pair`] with the Tamazight requirement switchable.
pub fn check_pair_with(
    require_tamazight: bool,
    src_lang: LanguageTag,
    tgt_lang: LanguageTag,
    src_text: &str,
    tgt_text: &str,
) -> Result<(), PairViolation> {
    if src_text.trim().is_empty() || tgt_text.trim().is_empty() {
        return Err(PairViolation::EmptyText);
    }
    check_languages(require_tamazight, src_lang, tgt_lang)
}

pub fn check_languages(require_tamazight: bool, src_lang: LanguageTag, tgt_lang: LanguageTag) -> Result<(), PairViolation> {
    if require_tamazight && !src_lang.is_tamazight() && !tgt_lang.is_tamazight() {
        return Err(PairViolation::NoTamazightSide);
    }
    Ok(())
}

/// The non-Tamazight language of a pair, or `zgh` when both sides are.
pub fn partner_language(src_lang: LanguageTag, tgt_lang: LanguageTag) -> LanguageTag {
    if src_lang.is_tamazight() {
        tgt_lang
    } else {
        src_lang
    }
}
