//! Corpus statistics: the language-pair × script table and the headline
//! metrics shown on the homepage.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::contribution::{Contribution, Status};
use crate::export::ExportRecord;
use crate::pair::partner_language;
use crate::{ContributionId, LanguageTag, ScriptClass, UserId};

/// The fields statistics and exports read from a stored sentence pair.
pub trait CorpusItem {
    fn id(&self) -> ContributionId;
    /// `None` for records imported without authorship.
    fn author(&self) -> Option<UserId>;
    fn src_lang(&self) -> LanguageTag;
    fn tgt_lang(&self) -> LanguageTag;
    fn script(&self) -> ScriptClass;
    fn status(&self) -> Status;
}

impl CorpusItem for Contribution {
    fn id(&self) -> ContributionId {
        self.id
    }
    fn author(&self) -> Option<UserId> {
        Some(self.author)
    }
    fn src_lang(&self) -> LanguageTag {
        self.src_lang
    }
    fn tgt_lang(&self) -> LanguageTag {
        self.tgt_lang
    }
    fn script(&self) -> ScriptClass {
        self.tamazight_script
    }
    fn status(&self) -> Status {
        self.status
    }
}

impl CorpusItem for ExportRecord {
    fn id(&self) -> ContributionId {
        self.id
    }
    fn author(&self) -> Option<UserId> {
        None
    }
    fn src_lang(&self) -> LanguageTag {
        self.src_lang
    }
    fn tgt_lang(&self) -> LanguageTag {
        self.tgt_lang
    }
    fn script(&self) -> ScriptClass {
        self.script
    }
    fn status(&self) -> Status {
        self.status
    }
}

impl<T: CorpusItem + ?Sized> CorpusItem for &T {
    fn id(&self) -> ContributionId {
        (**self).id()
    }
    fn author(&self) -> Option<UserId> {
        (**self).author()
    }
    fn src_lang(&self) -> LanguageTag {
        (**self).src_lang()
    }
    fn tgt_lang(&self) -> LanguageTag {
        (**self).tgt_lang()
    }
    fn script(&self) -> ScriptClass {
        (**self).script()
    }
    fn status(&self) -> Status {
        (**self).status()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptCounts {
    pub tifinagh: u64,
    pub latin: u64,
    /// Mixed or neutral Tamazight side.
    pub other: u64,
}

impl ScriptCounts {
    pub fn total(&self) -> u64 {
        self.tifinagh + self.latin + self.other
    }

    fn add(&mut self, script: ScriptClass) {
        match script {
            ScriptClass::Tifinagh => self.tifinagh += 1,
            ScriptClass::Latin => self.latin += 1,
            ScriptClass::Mixed | ScriptClass::Neutral => self.other += 1,
        }
    }
}

/// Contribution counts per partner language and Tamazight script.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairScriptTable {
    rows: BTreeMap<LanguageTag, ScriptCounts>,
}

impl Default for PairScriptTable {
    fn default() -> Self {
        PairScriptTable { rows: LanguageTag::ALL.into_iter().map(|t| (t, ScriptCounts::default())).collect() }
    }
}

impl PairScriptTable {
    /// Row for `tag`; the `zgh` row holds Tamazight↔Tamazight pairs.
    pub fn row(&self, tag: LanguageTag) -> ScriptCounts {
        self.rows.get(&tag).copied().unwrap_or_default()
    }

    pub fn rows(&self) -> impl Iterator<Item = (LanguageTag, ScriptCounts)> + '_ {
        self.rows.iter().map(|(t, c)| (*t, *c))
    }

    pub fn column_totals(&self) -> ScriptCounts {
        self.rows.values().fold(ScriptCounts::default(), |acc, c| ScriptCounts {
            tifinagh: acc.tifinagh + c.tifinagh,
            latin: acc.latin + c.latin,
            other: acc.other + c.other,
        })
    }

    pub fn grand_total(&self) -> u64 {
        self.rows.values().map(ScriptCounts::total).sum()
    }
}

impl fmt::Display for PairScriptTable {
    /// Tab-separated table. The `other` column appears only when some
    /// contribution is mixed or neutral; the `zgh` row only when non-empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let totals = self.column_totals();
        let with_other = totals.other > 0;
        let line = |f: &mut fmt::Formatter<'_>, label: &str, c: ScriptCounts| {
            if with_other {
                writeln!(f, "{label}\t{}\t{}\t{}\t{}", c.tifinagh, c.latin, c.other, c.total())
            } else {
                writeln!(f, "{label}\t{}\t{}\t{}", c.tifinagh, c.latin, c.total())
            }
        };
        if with_other {
            writeln!(f, "\tTifinagh\tLatin\tother\tTOTAL")?;
        } else {
            writeln!(f, "\tTifinagh\tLatin\tTOTAL")?;
        }
        for (tag, counts) in self.rows() {
            if tag.is_tamazight() && counts.total() == 0 {
                continue;
            }
            line(f, tag.code(), counts)?;
        }
        line(f, "TOTAL", totals)
    }
}

pub fn pair_script_table<I>(items: I) -> PairScriptTable
where
    I: IntoIterator,
    I::Item: CorpusItem,
{
    let mut table = PairScriptTable::default();
    for item in items {
        let tag = partner_language(item.src_lang(), item.tgt_lang());
        table.rows.entry(tag).or_default().add(item.script());
    }
    table
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeadlineMetrics {
    pub registered_users: u64,
    pub contributing_users: u64,
    pub contributor_pct: u64,
    pub total_contributions: u64,
    pub validated_contributions: u64,
    pub validated_pct: u64,
    pub avg_contributions_per_contributor: u64,
}

/// `num / den` rounded to the nearest integer, halves up; 0 when `den` is 0.
pub fn round_half_up(num: u64, den: u64) -> u64 {
    if den == 0 {
        0
    } else {
        (2 * num + den) / (2 * den)
    }
}

/// Metrics over `items`. Contributors are the distinct known authors;
/// records with no author count towards totals only.
pub fn headline_metrics<I>(registered_users: u64, items: I) -> HeadlineMetrics
where
    I: IntoIterator,
    I::Item: CorpusItem,
{
    let mut authors = HashSet::new();
    let mut total = 0u64;
    let mut validated = 0u64;
    for item in items {
        total += 1;
        if item.status() == Status::Validated {
            validated += 1;
        }
        if let Some(author) = item.author() {
            authors.insert(author);
        }
    }
    let contributors = authors.len() as u64;
    HeadlineMetrics {
        registered_users,
        contributing_users: contributors,
        contributor_pct: round_half_up(100 * contributors, registered_users),
        total_contributions: total,
        validated_contributions: validated,
        validated_pct: round_half_up(100 * validated, total),
        avg_contributions_per_contributor: round_half_up(total, contributors),
    }
}

impl fmt::Display for HeadlineMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "registered_users\t{}", self.registered_users)?;
        writeln!(f, "contributing_users\t{} ({}%)", self.contributing_users, self.contributor_pct)?;
        writeln!(f, "total_contributions\t{}", self.total_contributions)?;
        writeln!(f, "validated_contributions\t{} ({}%)", self.validated_contributions, self.validated_pct)?;
        writeln!(f, "avg_contributions_per_contributor\t{}", self.avg_contributions_per_contributor)
    }
}
