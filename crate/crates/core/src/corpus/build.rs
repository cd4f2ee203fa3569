use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ParaphrasePair, TaskLabel};
use crate::error::{Error, Result};

pub const DEFAULT_RATIOS: [f64; 3] = [0.8, 0.1, 0.1];

/// RNG streams, so that each random step is independent of the others.
pub(crate) const STREAM_DIFFERENT: u64 = 0;
pub(crate) const STREAM_SAME: u64 = 1;
pub(crate) const STREAM_SPLIT: u64 = 2;

/// Requested pairs per task dataset; `None` means "as many as all three can share".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TaskSizes {
    pub simplification: Option<usize>,
    pub complexification: Option<usize>,
    pub same_level: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TaskDatasets {
    pub simplification: Vec<ParaphrasePair>,
    pub complexification: Vec<ParaphrasePair>,
    pub same_level: Vec<ParaphrasePair>,
}

impl TaskDatasets {
    pub fn get(&self, task: TaskLabel) -> &[ParaphrasePair] {
        match task {
            TaskLabel::Down => &self.simplification,
            TaskLabel::Up => &self.complexification,
            TaskLabel::Same => &self.same_level,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Splits<T> {
    pub train: Vec<T>,
    pub valid: Vec<T>,
    pub test: Vec<T>,
}

impl<T> Splits<T> {
    pub fn len(&self) -> usize {
        self.train.len() + self.valid.len() + self.test.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parts(&self) -> [(&'static str, &[T]); 3] {
        [("train", &self.train), ("valid", &self.valid), ("test", &self.test)]
    }
}

pub(crate) fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn canonical_sort(pairs: &mut [ParaphrasePair]) {
    pairs.sort_by_cached_key(|p| (p.key(), p.id.clone()));
}

/// Builds the three task datasets from bucketed pairs.
///
/// The shuffled different-level pool is halved: the first half becomes
/// simplification, the second complexification, each reoriented so the pair
/// points in its task's direction. Same-level pairs are then sampled without
/// replacement. Input order does not matter: pairs are put in canonical order
/// before any random step, and each output set is returned in canonical order.
pub fn build_datasets(pairs: Vec<(ParaphrasePair, TaskLabel)>, sizes: &TaskSizes, seed: u64) -> Result<TaskDatasets> {
    let mut different = Vec::new();
    let mut same = Vec::new();
    for (p, t) in pairs {
        match t {
            TaskLabel::Same => same.push(p),
            TaskLabel::Down => different.push(p),
            TaskLabel::Up => different.push(p.reversed()),
        }
    }
    if different.is_empty() {
        return Err(Error::EmptyBucket("different-level"));
    }
    if same.is_empty() {
        return Err(Error::EmptyBucket("same-level"));
    }
    // every different-level pair now reads complex -> simple
    canonical_sort(&mut different);
    canonical_sort(&mut same);
    different.shuffle(&mut rng(seed, STREAM_DIFFERENT));
    same.shuffle(&mut rng(seed, STREAM_SAME));

    let half = different.len() / 2;
    let shared = half.min(same.len());
    if shared == 0 && sizes == &TaskSizes::default() {
        return Err(Error::EmptyBucket("different-level"));
    }
    let want = |requested: Option<usize>, bucket: &'static str, available: usize| match requested {
        Some(n) if n > available => Err(Error::BucketTooSmall { bucket, requested: n, available }),
        Some(n) => Ok(n),
        None => Ok(shared),
    };
    let n_down = want(sizes.simplification, "simplification", half)?;
    let n_up = want(sizes.complexification, "complexification", half)?;
    let n_same = want(sizes.same_level, "same_level", same.len())?;

    let second = different.split_off(half);
    let mut simplification: Vec<_> = different.into_iter().take(n_down).collect();
    let mut complexification: Vec<_> = second.into_iter().take(n_up).map(ParaphrasePair::reversed).collect();
    same.truncate(n_same);
    canonical_sort(&mut simplification);
    canonical_sort(&mut complexification);
    canonical_sort(&mut same);
    Ok(TaskDatasets { simplification, complexification, same_level: same })
}

/// Split sizes for `n` items: valid and test get the floor of their share,
/// train takes the remainder.
pub fn split_sizes(n: usize, ratios: [f64; 3]) -> Result<(usize, usize, usize)> {
    let sum: f64 = ratios.iter().sum();
    if ratios.iter().any(|r| !r.is_finite() || *r < 0.0) || (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidRatios(ratios));
    }
    let share = |r: f64| ((n as f64 * r) + 1e-9).floor() as usize;
    let valid = share(ratios[1]);
    let test = share(ratios[2]).min(n - valid);
    Ok((n - valid - test, valid, test))
}

/// Seeded shuffle followed by a train/valid/test cut.
pub fn split<T>(items: Vec<T>, ratios: [f64; 3], seed: u64) -> Result<Splits<T>> {
    split_with_rng(items, ratios, &mut rng(seed, STREAM_SPLIT))
}

pub(crate) fn split_with_rng<T>(mut items: Vec<T>, ratios: [f64; 3], rng: &mut ChaCha8Rng) -> Result<Splits<T>> {
    let (train, valid, _) = split_sizes(items.len(), ratios)?;
    items.shuffle(rng);
    let test = items.split_off(train + valid);
    let valid = items.split_off(train);
    Ok(Splits { train: items, valid, test })
}
