use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::build::{rng, split_with_rng, STREAM_SPLIT};
use super::io::{write_dataset_line, Format};
use super::{
    attach_levels, bucket_with_gap, build_datasets, default_gap, filter_pair, lexical_similarity, DropReason,
    FilterConfig, Labeler, ParaphrasePair, Splits, TaskLabel, TaskSizes, DEFAULT_RATIOS,
};
use crate::error::{Error, Result};
use crate::readability::Scheme;

/// Pairs handed to the worker pool at a time.
const CHUNK: usize = 16 * 1024;

/// Where the similarity score used by the band filter comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimilaritySource {
    /// The pair's own `similarity` field.
    #[default]
    Column,
    /// A side file, merged into the pairs before they reach the pipeline.
    File,
    /// Character-trigram cosine, filled in where a pair has no score.
    Lexical,
    /// Skip the similarity band entirely.
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub scheme: Scheme,
    pub filter: FilterConfig,
    pub similarity: SimilaritySource,
    pub seed: u64,
    pub task_sizes: TaskSizes,
    pub ratios: [f64; 3],
    /// Overrides the scheme's default different-level gap.
    pub level_gap: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            scheme: Scheme::Cefr6,
            filter: FilterConfig::default(),
            similarity: SimilaritySource::Column,
            seed: 0,
            task_sizes: TaskSizes::default(),
            ratios: DEFAULT_RATIOS,
            level_gap: None,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.filter.validate()?;
        super::split_sizes(0, self.ratios)?;
        if let Some(g) = self.level_gap {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::Config(format!("level gap must be positive, got {g}")));
            }
        }
        Ok(())
    }

    pub fn gap(&self) -> f64 {
        self.level_gap.unwrap_or_else(|| default_gap(self.scheme))
    }

    /// SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(json))
    }

    fn effective_filter(&self) -> FilterConfig {
        let mut f = self.filter.clone();
        if self.similarity == SimilaritySource::None {
            f.require_similarity = false;
        }
        f
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCounts {
    pub train: usize,
    pub valid: usize,
    pub test: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub input_pairs: usize,
    /// Count per drop reason; every reason is listed, zeros included.
    pub dropped: BTreeMap<DropReason, usize>,
    /// Pairs per bucket (`d`, `u`, `s`) before task sampling.
    pub buckets: BTreeMap<String, usize>,
    pub tasks: BTreeMap<String, SplitCounts>,
}

impl PipelineStats {
    fn new() -> Self {
        PipelineStats {
            dropped: DropReason::ALL.iter().map(|r| (*r, 0)).collect(),
            buckets: TaskLabel::ALL.iter().map(|t| (t.code().to_owned(), 0)).collect(),
            ..Default::default()
        }
    }

    pub fn total_dropped(&self) -> usize {
        self.dropped.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult {
    pub simplification: Splits<ParaphrasePair>,
    pub complexification: Splits<ParaphrasePair>,
    pub same_level: Splits<ParaphrasePair>,
    pub stats: PipelineStats,
}

impl PipelineResult {
    pub fn tasks(&self) -> [(TaskLabel, &Splits<ParaphrasePair>); 3] {
        [
            (TaskLabel::Down, &self.simplification),
            (TaskLabel::Up, &self.complexification),
            (TaskLabel::Same, &self.same_level),
        ]
    }

    /// Writes `<dir>/<task>/<split>.<ext>`, `<dir>/drops.json` and
    /// `<dir>/manifest.json`.
    pub fn write(&self, dir: &Path, format: Format, manifest: &DatasetManifest) -> Result<()> {
        for (task, splits) in self.tasks() {
            let task_dir = dir.join(task.dataset_name());
            fs::create_dir_all(&task_dir).map_err(|e| Error::io(&task_dir, e))?;
            for (name, items) in splits.parts() {
                let path = task_dir.join(format!("{name}.{}", format.extension()));
                let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
                let mut w = BufWriter::new(file);
                for p in items {
                    write_dataset_line(&mut w, p, task, format)?;
                }
                w.flush().map_err(|e| Error::io(&path, e))?;
            }
        }
        write_json(&dir.join("drops.json"), &self.stats.dropped)?;
        write_json(&dir.join("manifest.json"), manifest)
    }
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("serializable");
    bytes.push(b'\n');
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    /// File name without directories, so the manifest does not depend on
    /// where the corpus lives.
    pub name: String,
    pub sha256: String,
}

/// Reproducibility record for one pipeline run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub tool: String,
    pub version: String,
    pub config_sha256: String,
    pub config: PipelineConfig,
    pub level_gap: f64,
    /// Stage order; deduplication runs before any filter.
    pub stages: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub counts: PipelineStats,
}

impl DatasetManifest {
    pub fn new(config: &PipelineConfig, inputs: Vec<InputDigest>, stats: &PipelineStats) -> Self {
        DatasetManifest {
            tool: "levelforge".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config_sha256: config.digest(),
            config: config.clone(),
            level_gap: config.gap(),
            stages: ["dedup", "filter", "label", "bucket", "build", "split"].map(String::from).to_vec(),
            inputs,
            counts: stats.clone(),
        }
    }
}

enum Outcome {
    Drop(DropReason),
    Keep(ParaphrasePair, TaskLabel),
}

/// Dedup, filter, label, bucket, build and split in one pass over the input.
///
/// Per-pair work runs on the rayon pool in fixed-size chunks whose results
/// are consumed in input order, so the output never depends on the number
/// of workers.
pub struct Pipeline {
    config: PipelineConfig,
    filter: FilterConfig,
    labeler: Labeler,
}

impl Pipeline {
    pub fn new(config: PipelineConfig, labeler: Labeler) -> Result<Self> {
        config.validate()?;
        if labeler.scheme() != config.scheme {
            return Err(Error::Config(format!(
                "labeler produces {} levels but the pipeline scheme is {}",
                labeler.scheme(),
                config.scheme
            )));
        }
        Ok(Pipeline { filter: config.effective_filter(), config, labeler })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    fn process(&self, mut pair: ParaphrasePair) -> Result<Outcome> {
        if self.config.similarity == SimilaritySource::Lexical && pair.similarity.is_none() {
            pair.similarity = Some(lexical_similarity(&pair.source, &pair.target));
        }
        if let Some(r) = filter_pair(&pair, &self.filter) {
            return Ok(Outcome::Drop(r));
        }
        if let Some(r) = attach_levels(&mut pair, &self.labeler) {
            return Ok(Outcome::Drop(r));
        }
        Ok(match bucket_with_gap(&pair, self.config.gap())? {
            Some(task) => Outcome::Keep(pair, task),
            None => Outcome::Drop(DropReason::NearLevel),
        })
    }

    /// Runs the whole pipeline on the current rayon pool.
    pub fn run<I>(&self, pairs: I) -> Result<PipelineResult>
    where
        I: IntoIterator<Item = Result<ParaphrasePair>>,
    {
        let mut stats = PipelineStats::new();
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        let mut iter = pairs.into_iter();
        loop {
            let chunk: Vec<ParaphrasePair> = iter.by_ref().take(CHUNK).collect::<Result<_>>()?;
            if chunk.is_empty() {
                break;
            }
            stats.input_pairs += chunk.len();
            let outcomes: Vec<Result<([u8; 32], Outcome)>> = chunk
                .into_par_iter()
                .map(|p| {
                    let key = p.key();
                    self.process(p).map(|o| (key, o))
                })
                .collect();
            for outcome in outcomes {
                let (key, outcome) = outcome?;
                let outcome = if seen.insert(key) { outcome } else { Outcome::Drop(DropReason::Duplicate) };
                match outcome {
                    Outcome::Drop(r) => *stats.dropped.entry(r).or_default() += 1,
                    Outcome::Keep(p, t) => {
                        *stats.buckets.entry(t.code().to_owned()).or_default() += 1;
                        kept.push((p, t));
                    }
                }
            }
        }
        drop(seen);

        let datasets = build_datasets(kept, &self.config.task_sizes, self.config.seed)?;
        let mut split_task = |task: TaskLabel, items: Vec<ParaphrasePair>, stream: u64| {
            let s = split_with_rng(items, self.config.ratios, &mut rng(self.config.seed, STREAM_SPLIT + stream))?;
            stats.tasks.insert(
                task.dataset_name().to_owned(),
                SplitCounts { train: s.train.len(), valid: s.valid.len(), test: s.test.len() },
            );
            Ok::<_, Error>(s)
        };
        let simplification = split_task(TaskLabel::Down, datasets.simplification, 0)?;
        let complexification = split_task(TaskLabel::Up, datasets.complexification, 1)?;
        let same_level = split_task(TaskLabel::Same, datasets.same_level, 2)?;
        Ok(PipelineResult { simplification, complexification, same_level, stats })
    }
}
