//! Points ledger and leaderboard ranking.

use std::collections::{BTreeMap, HashMap};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::UserId;

/// Accumulated points per user.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointsLedger {
    entries: BTreeMap<UserId, u64>,
}

impl PointsLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Credits `points` to `user`; a zero award still creates the entry.
    pub fn award(&mut self, user: UserId, points: u64) {
        *self.entries.entry(user).or_insert(0) += points;
    }

    pub fn points(&self, user: UserId) -> u64 {
        self.entries.get(&user).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (UserId, u64)> + '_ {
        self.entries.iter().map(|(u, p)| (*u, *p))
    }
}

impl FromIterator<(UserId, u64)> for PointsLedger {
    fn from_iter<I: IntoIterator<Item = (UserId, u64)>>(iter: I) -> Self {
        let mut ledger = PointsLedger::new();
        for (user, points) in iter {
            ledger.award(user, points);
        }
        ledger
    }
}

/// What the leaderboard needs to know about a registered user.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisteredUser {
    pub id: UserId,
    pub display_name: String,
    pub registered_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeaderboardEntry {
    pub rank: u32,
    pub user_id: UserId,
    pub display_name: String,
    pub points: u64,
}

/// Ranks every ledger entry by points, highest first. Equal scores are
/// ordered by earlier registration, then by user id; users missing from the
/// registry sort after registered ones with the same score. Ranks are
/// consecutive from 1.
pub fn compute_leaderboard(ledger: &PointsLedger, registry: &HashMap<UserId, RegisteredUser>) -> Vec<LeaderboardEntry> {
    let mut rows: Vec<(UserId, u64, Option<&RegisteredUser>)> =
        ledger.iter().map(|(user, points)| (user, points, registry.get(&user))).collect();

    rows.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then_with(|| match (a.2, b.2) {
                (Some(x), Some(y)) => x.registered_at.cmp(&y.registered_at),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
            .then_with(|| a.0.cmp(&b.0))
    });

    rows.into_iter()
        .enumerate()
        .map(|(i, (user_id, points, profile))| LeaderboardEntry {
            rank: i as u32 + 1,
            user_id,
            display_name: profile.map(|p| p.display_name.clone()).unwrap_or_default(),
            points,
        })
        .collect()
}
