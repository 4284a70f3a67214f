//! Service configuration, read from `AWAL_*` environment variables.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::time::Duration;

use awal_core::pretranslate::PostEditMode;
use awal_core::scoring::ScoringPolicy;
use awal_core::Rules;

use crate::store::SyncMode;

pub const DEFAULT_BIND: &str = "127.0.0.1:8080";
pub const DEFAULT_STORE: &str = "awal-store.jsonl";
pub const DEFAULT_MT_TIMEOUT_MS: u64 = 5000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub bind: SocketAddr,
    pub store_path: PathBuf,
    pub store_sync: SyncMode,
    /// Remote MT endpoint; the offline stub backend is used when unset.
    pub mt_url: Option<String>,
    pub mt_timeout: Duration,
    pub rules: Rules,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bind: DEFAULT_BIND.parse().expect("valid default address"),
            store_path: PathBuf::from(DEFAULT_STORE),
            store_sync: SyncMode::Fsync,
            mt_url: None,
            mt_timeout: Duration::from_millis(DEFAULT_MT_TIMEOUT_MS),
            rules: Rules::default(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{var}: {reason}")]
pub struct ConfigError {
    pub var: &'static str,
    pub reason: String,
}

fn parse_bool(var: &'static str, raw: &str) -> Result<bool, ConfigError> {
    match raw.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(ConfigError { var, reason: format!("expected a boolean, got {raw:?}") }),
    }
}

impl Config {
    pub fn from_env() -> Result<Config, ConfigError> {
        Config::from_lookup(|k| std::env::var(k).ok())
    }

    /// Builds a config from an arbitrary variable source; unset or empty
    /// variables keep their defaults.
    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Config, ConfigError> {
        let get = |k: &str| lookup(k).filter(|v| !v.trim().is_empty());
        let mut cfg = Config::default();

        if let Some(v) = get("AWAL_BIND") {
            cfg.bind = v.parse().map_err(|e| ConfigError { var: "AWAL_BIND", reason: format!("{e}") })?;
        }
        if let Some(v) = get("AWAL_STORE") {
            cfg.store_path = PathBuf::from(v);
        }
        if let Some(v) = get("AWAL_STORE_SYNC") {
            cfg.store_sync = if parse_bool("AWAL_STORE_SYNC", &v)? { SyncMode::Fsync } else { SyncMode::NoSync };
        }
        cfg.mt_url = get("AWAL_MT_URL");
        if let Some(v) = get("AWAL_MT_TIMEOUT_MS") {
            let ms: u64 = v.parse().map_err(|e| ConfigError { var: "AWAL_MT_TIMEOUT_MS", reason: format!("{e}") })?;
            cfg.mt_timeout = Duration::from_millis(ms);
        }
        if let Some(v) = get("AWAL_REJECTION_THRESHOLD") {
            let n: u32 = v.parse().map_err(|e| ConfigError { var: "AWAL_REJECTION_THRESHOLD", reason: format!("{e}") })?;
            if n == 0 {
                return Err(ConfigError { var: "AWAL_REJECTION_THRESHOLD", reason: "must be at least 1".into() });
            }
            cfg.rules.rejection_threshold = n;
        }
        if let Some(v) = get("AWAL_POSTEDIT_MODE") {
            cfg.rules.postedit = match v.as_str() {
                "enforce" => PostEditMode::Enforce,
                "warn" => PostEditMode::Warn,
                other => return Err(ConfigError { var: "AWAL_POSTEDIT_MODE", reason: format!("expected enforce or warn, got {other:?}") }),
            };
        }
        if let Some(v) = get("AWAL_SCORING") {
            cfg.rules.scoring = match v.as_str() {
                "input_only" => ScoringPolicy::InputOnly,
                "literal" => ScoringPolicy::Literal,
                other => return Err(ConfigError { var: "AWAL_SCORING", reason: format!("expected input_only or literal, got {other:?}") }),
            };
        }
        if let Some(v) = get("AWAL_REQUIRE_TAMAZIGHT") {
            cfg.rules.require_tamazight = parse_bool("AWAL_REQUIRE_TAMAZIGHT", &v)?;
        }
        Ok(cfg)
    }
}
