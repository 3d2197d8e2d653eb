//! Knobs shared by every distance computation.

use serde::{Deserialize, Serialize};

use crate::codes::enumerate::WitnessBudget;

/// Default enumeration threshold: 2^26 span elements.
pub const DEFAULT_THRESHOLD: u64 = 1 << 26;
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// Exhaustive when the span fits under the threshold, witness search otherwise.
    #[default]
    Exact,
    Witness,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub threshold: u64,
    pub workers: usize,
    pub seed: u64,
    pub distance: DistanceMode,
    pub info_set_rounds: usize,
    pub combination_depth: usize,
    pub random_samples: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            threshold: DEFAULT_THRESHOLD,
            workers: 1,
            seed: DEFAULT_SEED,
            distance: DistanceMode::Exact,
            info_set_rounds: 64,
            combination_depth: 3,
            random_samples: 1_000_000,
        }
    }
}

impl AnalysisConfig {
    pub fn with_threshold(mut self, threshold: u64) -> Self {
        self.threshold = threshold.max(1);
        self
    }

    pub fn with_mode(mut self, mode: DistanceMode) -> Self {
        self.distance = mode;
        self
    }

    pub(crate) fn witness_budget(&self) -> WitnessBudget {
        WitnessBudget {
            info_set_rounds: self.info_set_rounds,
            combination_depth: self.combination_depth,
            random_samples: self.random_samples,
            seed: self.seed,
        }
    }
}
