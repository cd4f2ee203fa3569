//! Paraphrase-pair dataset construction: filtering, level attachment,
//! bucketing into task datasets and seeded splitting.

mod bucket;
mod build;
mod filter;
pub mod io;
mod label;
mod pipeline;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::readability::ComplexityLevel;
use crate::text::normalize;

pub use bucket::{bucket, bucket_with_gap, default_gap};
pub use build::{build_datasets, split, split_sizes, Splits, TaskDatasets, TaskSizes, DEFAULT_RATIOS};
pub use filter::{filter_pair, lexical_similarity, ContainmentMode, FilterConfig};
pub use label::{attach_levels, text_sha256, Labeler, Predictions};
pub use pipeline::{
    DatasetManifest, InputDigest, Pipeline, PipelineConfig, PipelineResult, PipelineStats, SimilaritySource,
};

/// A source/target paraphrase pair. Text is NFC-normalized on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ParaphrasePair {
    pub id: String,
    pub source: String,
    pub target: String,
    pub similarity: Option<f64>,
    pub source_level: Option<ComplexityLevel>,
    pub target_level: Option<ComplexityLevel>,
}

impl ParaphrasePair {
    pub fn new(id: impl Into<String>, source: &str, target: &str, similarity: Option<f64>) -> Result<Self> {
        let id = id.into();
        if source.trim().is_empty() || target.trim().is_empty() {
            return Err(Error::Data(format!("pair {id}: source and target must be non-empty")));
        }
        if let Some(s) = similarity {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::Data(format!("pair {id}: similarity {s} outside [0, 1]")));
            }
        }
        Ok(ParaphrasePair {
            id,
            source: normalize(source),
            target: normalize(target),
            similarity,
            source_level: None,
            target_level: None,
        })
    }

    pub fn with_levels(mut self, source: ComplexityLevel, target: ComplexityLevel) -> Result<Self> {
        if source.scheme() != target.scheme() {
            return Err(Error::SchemeMismatch { left: source.scheme(), right: target.scheme() });
        }
        self.source_level = Some(source);
        self.target_level = Some(target);
        Ok(self)
    }

    /// Identity used for deduplication and canonical ordering.
    pub fn key(&self) -> PairKey {
        pair_key(&self.source, &self.target)
    }

    /// Swaps source and target along with their levels.
    pub fn reversed(self) -> Self {
        ParaphrasePair {
            id: self.id,
            source: self.target,
            target: self.source,
            similarity: self.similarity,
            source_level: self.target_level,
            target_level: self.source_level,
        }
    }
}

pub type PairKey = [u8; 32];

/// SHA-256 over the length-prefixed NFC source and target.
pub fn pair_key(source: &str, target: &str) -> PairKey {
    let mut h = Sha256::new();
    for part in [source, target] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    h.finalize().into()
}

/// Direction of a task dataset line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TaskLabel {
    /// Simplification.
    Down,
    /// Complexification.
    Up,
    Same,
}

impl TaskLabel {
    pub const ALL: [TaskLabel; 3] = [TaskLabel::Down, TaskLabel::Up, TaskLabel::Same];

    pub fn code(self) -> &'static str {
        match self {
            TaskLabel::Down => "d",
            TaskLabel::Up => "u",
            TaskLabel::Same => "s",
        }
    }

    /// Name of the task dataset this label populates.
    pub fn dataset_name(self) -> &'static str {
        match self {
            TaskLabel::Down => "simplification",
            TaskLabel::Up => "complexification",
            TaskLabel::Same => "same_level",
        }
    }
}

impl fmt::Display for TaskLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for TaskLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "d" | "down" | "simplification" => Ok(TaskLabel::Down),
            "u" | "up" | "complexification" => Ok(TaskLabel::Up),
            "s" | "same" | "same_level" => Ok(TaskLabel::Same),
            _ => Err(Error::Data(format!("unknown task label {s:?}"))),
        }
    }
}

impl Serialize for TaskLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for TaskLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Why a pair left the pipeline. Each dropped pair carries exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DropReason {
    Duplicate,
    TooShort,
    Containment,
    SimMissing,
    SimLow,
    SimHigh,
    LevelMissing,
    NearLevel,
}

impl DropReason {
    pub const ALL: [DropReason; 8] = [
        DropReason::Duplicate,
        DropReason::TooShort,
        DropReason::Containment,
        DropReason::SimMissing,
        DropReason::SimLow,
        DropReason::SimHigh,
        DropReason::LevelMissing,
        DropReason::NearLevel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DropReason::Duplicate => "DUPLICATE",
            DropReason::TooShort => "TOO_SHORT",
            DropReason::Containment => "CONTAINMENT",
            DropReason::SimMissing => "SIM_MISSING",
            DropReason::SimLow => "SIM_LOW",
            DropReason::SimHigh => "SIM_HIGH",
            DropReason::LevelMissing => "LEVEL_MISSING",
            DropReason::NearLevel => "NEAR_LEVEL",
        }
    }
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
