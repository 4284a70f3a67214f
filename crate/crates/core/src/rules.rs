use serde::{Deserialize, Serialize};

use crate::pretranslate::PostEditMode;
use crate::scoring::ScoringPolicy;

/// Rejections needed to close a contribution as rejected, unless configured.
pub const DEFAULT_REJECTION_THRESHOLD: u32 = 2;

/// Tunable platform policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rules {
    /// When false, pairs without a Tamazight side are also accepted.
    pub require_tamazight: bool,
    pub scoring: ScoringPolicy,
    pub postedit: PostEditMode,
    pub rejection_threshold: u32,
}

impl Default for Rules {
    fn default() -> Self {
        Rules {
            require_tamazight: true,
            scoring: ScoringPolicy::default(),
            postedit: PostEditMode::default(),
            rejection_threshold: DEFAULT_REJECTION_THRESHOLD,
        }
    }
}
