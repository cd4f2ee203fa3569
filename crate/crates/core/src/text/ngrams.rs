use std::collections::HashMap;
use std::hash::Hash;

/// Multiset of contiguous n-grams, keyed by slices of the source token list.
#[derive(Debug, Clone)]
pub struct NgramCounts<'a, T> {
    n: usize,
    counts: HashMap<&'a [T], usize>,
    total: usize,
}

impl<'a, T: Hash + Eq> NgramCounts<'a, T> {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of n-gram occurrences, `max(0, len - n + 1)`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn get(&self, gram: &[T]) -> usize {
        self.counts.get(gram).copied().unwrap_or(0)
    }

    pub fn contains(&self, gram: &[T]) -> bool {
        self.counts.contains_key(gram)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'a [T], usize)> + '_ {
        self.counts.iter().map(|(k, v)| (*k, *v))
    }
}

/// Counts the contiguous `n`-grams of `tokens`. Case is taken as given;
/// callers fold case beforehand where a metric requires it.
///
/// # Panics
///
/// If `n == 0`.
pub fn ngrams<T: Hash + Eq>(tokens: &[T], n: usize) -> NgramCounts<'_, T> {
    assert!(n >= 1, "n-gram order must be at least 1");
    let mut counts = HashMap::new();
    let mut total = 0;
    if tokens.len() >= n {
        for window in tokens.windows(n) {
            *counts.entry(window).or_insert(0) += 1;
            total += 1;
        }
    }
    NgramCounts { n, counts, total }
}
