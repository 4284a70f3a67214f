//! Durable platform state.
//!
//! The store is an append-only log of JSON lines. Each line is one commit:
//! an array of events that are applied together or not at all. Opening a
//! store replays the log; a torn final line (no trailing newline) is an
//! interrupted commit and is discarded. Readers in other processes can open
//! a [`State`] snapshot from the same file while the service is appending.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use awal_core::contribution::{Contribution, Dialect, Status, ValidationVote, Verdict};
use awal_core::export::ExportRecord;
use awal_core::leaderboard::{compute_leaderboard, LeaderboardEntry, PointsLedger, RegisteredUser};
use awal_core::seed::{parse_seed_file, Draw, SeedBank, SeedSentence};
use awal_core::stats::{headline_metrics, pair_script_table, CorpusItem, HeadlineMetrics, PairScriptTable};
use awal_core::submission::{evaluate_submission, Evaluation, Submission};
use awal_core::{ContributionId, LanguageTag, Rules, ScriptClass, SeedId, UserId, GUIDELINES_REF};
use chrono::{DateTime, Utc};
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const MAX_NAME_CHARS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserProfile {
    pub id: UserId,
    pub display_name: String,
    pub registered_at: DateTime<Utc>,
    /// SHA-256 of the bearer token; the token itself is never stored.
    pub token_hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationQueueItem {
    pub id: ContributionId,
    pub src_lang: LanguageTag,
    pub tgt_lang: LanguageTag,
    pub src_text: String,
    pub tgt_text: String,
    pub script: ScriptClass,
    pub dialect: Dialect,
    pub approvals: u32,
    pub rejections: u32,
    pub guidelines: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmitOutcome {
    pub id: ContributionId,
    pub evaluation: Evaluation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteOutcome {
    pub contribution_id: ContributionId,
    pub status: Status,
    pub approvals: u32,
    pub rejections: u32,
    /// This vote moved the contribution out of `Pending`.
    pub decided: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum Event {
    UserRegistered { user: UserProfile },
    ContributionSubmitted { contribution: Contribution, points: u64 },
    VoteCast { contribution_id: ContributionId, vote: ValidationVote, status: Status },
    SeedsAdded { seeds: Vec<SeedSentence> },
    RecordsImported { records: Vec<ExportRecord> },
}

/// In-memory view of everything committed to the log.
#[derive(Debug, Default)]
pub struct State {
    users: BTreeMap<UserId, UserProfile>,
    registry: HashMap<UserId, RegisteredUser>,
    names: HashMap<String, UserId>,
    tokens: HashMap<String, UserId>,
    contributions: BTreeMap<ContributionId, Contribution>,
    imported: BTreeMap<ContributionId, ExportRecord>,
    awards: BTreeMap<ContributionId, u64>,
    ledger: PointsLedger,
    seeds: SeedBank,
}

pub fn hash_token(token: &str) -> String {
    hex::encode(Sha256::digest(token.as_bytes()))
}

fn fresh_token() -> String {
    let bytes: [u8; 32] = rand::rng().random();
    hex::encode(bytes)
}

fn check_name(raw: &str) -> Result<String> {
    let name = raw.trim();
    if name.is_empty() {
        return Err(Error::InvalidName("must not be empty"));
    }
    if name.chars().count() > MAX_NAME_CHARS {
        return Err(Error::InvalidName("must be at most 64 characters"));
    }
    if name.chars().any(char::is_control) {
        return Err(Error::InvalidName("must not contain control characters"));
    }
    Ok(name.to_string())
}

impl State {
    fn apply(&mut self, event: Event) -> std::result::Result<(), String> {
        match event {
            Event::UserRegistered { user } => {
                if self.users.contains_key(&user.id) || self.names.contains_key(&user.display_name) {
                    return Err(format!("duplicate user {}", user.id));
                }
                self.names.insert(user.display_name.clone(), user.id);
                self.tokens.insert(user.token_hash.clone(), user.id);
                self.registry.insert(
                    user.id,
                    RegisteredUser { id: user.id, display_name: user.display_name.clone(), registered_at: user.registered_at },
                );
                self.users.insert(user.id, user);
            }
            Event::ContributionSubmitted { contribution, points } => {
                if self.id_taken(contribution.id) {
                    return Err(format!("duplicate contribution {}", contribution.id));
                }
                self.ledger.award(contribution.author, points);
                self.awards.insert(contribution.id, points);
                self.contributions.insert(contribution.id, contribution);
            }
            Event::VoteCast { contribution_id, vote, status } => {
                let c = self
                    .contributions
                    .get_mut(&contribution_id)
                    .ok_or_else(|| format!("vote for unknown contribution {contribution_id}"))?;
                c.votes.push(vote);
                c.status = status;
            }
            Event::SeedsAdded { seeds } => {
                for s in seeds {
                    let id = s.id;
                    if !self.seeds.insert(s) {
                        return Err(format!("seed {id} out of order or duplicated"));
                    }
                }
            }
            Event::RecordsImported { records } => {
                for r in records {
                    if self.id_taken(r.id) {
                        return Err(format!("duplicate record {}", r.id));
                    }
                    self.imported.insert(r.id, r);
                }
            }
        }
        Ok(())
    }

    fn id_taken(&self, id: ContributionId) -> bool {
        self.contributions.contains_key(&id) || self.imported.contains_key(&id)
    }

    fn next_user_id(&self) -> UserId {
        UserId(self.users.keys().next_back().map_or(1, |u| u.0 + 1))
    }

    fn next_contribution_id(&self) -> ContributionId {
        let native = self.contributions.keys().next_back().map_or(0, |c| c.0);
        let imported = self.imported.keys().next_back().map_or(0, |c| c.0);
        ContributionId(native.max(imported) + 1)
    }

    /// Replays a log. Returns the state and the byte length of the valid
    /// prefix; anything after it is a torn final commit.
    fn replay(bytes: &[u8]) -> Result<(State, usize)> {
        let mut state = State::default();
        let mut offset = 0;
        let mut line_no = 0;
        while let Some(nl) = bytes[offset..].iter().position(|b| *b == b'\n') {
            line_no += 1;
            let line = &bytes[offset..offset + nl];
            offset += nl + 1;
            if line.iter().all(u8::is_ascii_whitespace) {
                continue;
            }
            let events: Vec<Event> = serde_json::from_slice(line).map_err(|e| Error::Corrupt { line: line_no, reason: e.to_string() })?;
            for event in events {
                state.apply(event).map_err(|reason| Error::Corrupt { line: line_no, reason })?;
            }
        }
        Ok((state, offset))
    }

    /// Read-only snapshot of the log at `path`.
    pub fn load(path: impl AsRef<Path>) -> Result<State> {
        let mut bytes = Vec::new();
        File::open(path.as_ref())?.read_to_end(&mut bytes)?;
        Ok(State::replay(&bytes)?.0)
    }

    pub fn user_count(&self) -> usize {
        self.users.len()
    }

    pub fn user(&self, id: UserId) -> Option<&UserProfile> {
        self.users.get(&id)
    }

    pub fn user_by_token(&self, token: &str) -> Option<UserId> {
        self.tokens.get(&hash_token(token)).copied()
    }

    pub fn contribution(&self, id: ContributionId) -> Option<&Contribution> {
        self.contributions.get(&id)
    }

    pub fn contributions(&self) -> impl Iterator<Item = &Contribution> {
        self.contributions.values()
    }

    pub fn contribution_count(&self) -> usize {
        self.contributions.len() + self.imported.len()
    }

    pub fn seeds(&self) -> &SeedBank {
        &self.seeds
    }

    pub fn ledger(&self) -> &PointsLedger {
        &self.ledger
    }

    /// Sum of the points recorded per contribution at submission time.
    pub fn awards_total(&self) -> u64 {
        self.awards.values().sum()
    }

    fn items(&self) -> impl Iterator<Item = &dyn CorpusItem> {
        self.contributions.values().map(|c| c as &dyn CorpusItem).chain(self.imported.values().map(|r| r as &dyn CorpusItem))
    }

    /// Every stored pair as an export record, in id order.
    pub fn records(&self) -> Vec<ExportRecord> {
        let mut out: Vec<ExportRecord> =
            self.contributions.values().map(ExportRecord::from).chain(self.imported.values().cloned()).collect();
        out.sort_by_key(|r| r.id);
        out
    }

    pub fn metrics(&self) -> HeadlineMetrics {
        headline_metrics(self.users.len() as u64, self.items())
    }

    pub fn table(&self) -> PairScriptTable {
        pair_script_table(self.items())
    }

    pub fn leaderboard(&self, limit: usize) -> Vec<LeaderboardEntry> {
        let mut board = compute_leaderboard(&self.ledger, &self.registry);
        board.truncate(limit);
        board
    }

    /// Oldest pending contributions the user may still vote on.
    pub fn validation_queue(&self, user: UserId, limit: usize) -> Vec<ValidationQueueItem> {
        self.contributions
            .values()
            .filter(|c| c.status == Status::Pending && c.author != user && !c.has_voted(user))
            .take(limit)
            .map(|c| ValidationQueueItem {
                id: c.id,
                src_lang: c.src_lang,
                tgt_lang: c.tgt_lang,
                src_text: c.src_text.clone(),
                tgt_text: c.tgt_text.clone(),
                script: c.tamazight_script,
                dialect: c.dialect,
                approvals: c.approvals(),
                rejections: c.rejections(),
                guidelines: GUIDELINES_REF.to_string(),
            })
            .collect()
    }

    pub fn draw_seed(&self, language: LanguageTag, served: &HashSet<SeedId>, rng_seed: Option<u64>) -> Result<Draw<'_>> {
        Ok(self.seeds.draw_random(language, served, rng_seed)?)
    }
}

/// Whether every commit is flushed to disk before it is acknowledged.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SyncMode {
    #[default]
    Fsync,
    /// Leave flushing to the OS. For bulk loads and tests.
    NoSync,
}

#[derive(Debug)]
struct Log {
    file: File,
    len: u64,
    sync: SyncMode,
}

impl Log {
    fn append(&mut self, events: &[Event]) -> Result<()> {
        let mut line = serde_json::to_vec(events).map_err(std::io::Error::from)?;
        line.push(b'\n');
        let written = self.file.write_all(&line).and_then(|_| match self.sync {
            SyncMode::Fsync => self.file.sync_data(),
            SyncMode::NoSync => Ok(()),
        });
        if let Err(e) = written {
            // drop the partial line so later commits start on a clean boundary
            let _ = self.file.set_len(self.len);
            return Err(e.into());
        }
        self.len += line.len() as u64;
        Ok(())
    }
}

#[derive(Debug)]
struct Inner {
    state: State,
    log: Option<Log>,
}

impl Inner {
    fn commit(&mut self, events: Vec<Event>) -> Result<()> {
        if let Some(log) = self.log.as_mut() {
            log.append(&events)?;
        }
        for event in events {
            self.state.apply(event).map_err(|reason| Error::Corrupt { line: 0, reason })?;
        }
        Ok(())
    }
}

/// Shared handle over the platform state. All mutations are serialized and
/// each one is a single log commit.
#[derive(Debug)]
pub struct Store {
    inner: RwLock<Inner>,
    path: Option<PathBuf>,
}

impl Store {
    /// A store that lives only in memory.
    pub fn in_memory() -> Store {
        Store { inner: RwLock::new(Inner { state: State::default(), log: None }), path: None }
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Store> {
        Store::open_with(path, SyncMode::Fsync)
    }

    pub fn open_with(path: impl AsRef<Path>, sync: SyncMode) -> Result<Store> {
        let path = path.as_ref();
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent)?;
        }
        let mut file = OpenOptions::new().read(true).append(true).create(true).open(path)?;
        let mut bytes = Vec::new();
        file.read_to_end(&mut bytes)?;
        let (state, valid) = State::replay(&bytes)?;
        if valid < bytes.len() {
            tracing::warn!(path = %path.display(), dropped = bytes.len() - valid, "discarding torn final commit");
            file.set_len(valid as u64)?;
        }
        let log = Log { file, len: valid as u64, sync };
        Ok(Store { inner: RwLock::new(Inner { state, log: Some(log) }), path: Some(path.to_path_buf()) })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// Runs `f` against committed state.
    pub fn read<R>(&self, f: impl FnOnce(&State) -> R) -> R {
        let inner = self.inner.read().unwrap_or_else(|e| e.into_inner());
        f(&inner.state)
    }

    fn write<R>(&self, f: impl FnOnce(&mut Inner) -> Result<R>) -> Result<R> {
        let mut inner = self.inner.write().unwrap_or_else(|e| e.into_inner());
        f(&mut inner)
    }

    pub fn authenticate(&self, token: &str) -> Result<UserId> {
        self.read(|s| s.user_by_token(token)).ok_or(Error::Unauthorized)
    }

    /// Creates a user and returns the profile with its bearer token.
    pub fn register(&self, display_name: &str, now: DateTime<Utc>) -> Result<(UserProfile, String)> {
        let name = check_name(display_name)?;
        let token = fresh_token();
        self.write(|inner| {
            if inner.state.names.contains_key(&name) {
                return Err(Error::NameTaken(name));
            }
            let user =
                UserProfile { id: inner.state.next_user_id(), display_name: name, registered_at: now, token_hash: hash_token(&token) };
            inner.commit(vec![Event::UserRegistered { user: user.clone() }])?;
            Ok((user, token))
        })
    }

    /// Stores a contribution and credits its points in one commit.
    pub fn submit(&self, author: UserId, submission: Submission, rules: &Rules, now: DateTime<Utc>) -> Result<SubmitOutcome> {
        let evaluation = evaluate_submission(&submission, rules)?;
        self.write(|inner| {
            if !inner.state.users.contains_key(&author) {
                return Err(Error::Unauthorized);
            }
            let id = inner.state.next_contribution_id();
            let contribution = evaluation.into_contribution(submission, id, author, now);
            inner.commit(vec![Event::ContributionSubmitted { contribution, points: evaluation.points }])?;
            Ok(SubmitOutcome { id, evaluation })
        })
    }

    pub fn vote(&self, voter: UserId, id: ContributionId, verdict: Verdict, rules: &Rules, now: DateTime<Utc>) -> Result<VoteOutcome> {
        self.write(|inner| {
            let mut updated = inner.state.contributions.get(&id).cloned().ok_or_else(|| Error::NotFound(format!("contribution {id}")))?;
            let vote = ValidationVote { voter, verdict, cast_at: now };
            let status = updated.apply_vote(vote.clone(), rules.rejection_threshold)?;
            inner.commit(vec![Event::VoteCast { contribution_id: id, vote, status }])?;
            Ok(VoteOutcome {
                contribution_id: id,
                status,
                approvals: updated.approvals(),
                rejections: updated.rejections(),
                decided: status.is_decided(),
            })
        })
    }

    /// Adds the new sentences of a seed document. Returns how many were new.
    pub fn ingest_seeds(&self, document: &str, default_source: &str, default_license: &str) -> Result<usize> {
        let lines = parse_seed_file(document, default_source, default_license)?;
        self.write(|inner| {
            let seeds = inner.state.seeds.plan_ingest(lines);
            let accepted = seeds.len();
            if accepted > 0 {
                inner.commit(vec![Event::SeedsAdded { seeds }])?;
            }
            Ok(accepted)
        })
    }

    /// Loads exported records as-is. Fails without changes if any id is
    /// already present.
    pub fn import_records(&self, records: Vec<ExportRecord>) -> Result<usize> {
        self.write(|inner| {
            let mut batch = HashSet::new();
            for r in &records {
                if inner.state.id_taken(r.id) || !batch.insert(r.id) {
                    return Err(Error::DuplicateRecord(r.id));
                }
            }
            let count = records.len();
            if count > 0 {
                inner.commit(vec![Event::RecordsImported { records }])?;
            }
            Ok(count)
        })
    }
}
