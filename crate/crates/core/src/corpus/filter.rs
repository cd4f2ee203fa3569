use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{DropReason, ParaphrasePair};
use crate::error::{Error, Result};
use crate::text::{is_word, tokenize};

/// How "one sentence is contained in the other" is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContainmentMode {
    /// Contiguous run of lowercase word tokens.
    #[default]
    Tokens,
    /// Raw lowercase substring.
    Substring,
    Off,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterConfig {
    pub min_words: usize,
    pub sim_low: f64,
    pub sim_high: f64,
    /// Drop pairs that carry no similarity score.
    pub require_similarity: bool,
    pub containment: ContainmentMode,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            min_words: 3,
            sim_low: 0.60,
            sim_high: 0.80,
            require_similarity: true,
            containment: ContainmentMode::Tokens,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        if !in_unit(self.sim_low) || !in_unit(self.sim_high) {
            return Err(Error::Config("similarity thresholds must lie in [0, 1]".into()));
        }
        if self.sim_low > self.sim_high {
            return Err(Error::Config(format!("sim_low {} exceeds sim_high {}", self.sim_low, self.sim_high)));
        }
        Ok(())
    }
}

/// Applies the filter rules in fixed order (too short, containment, missing
/// similarity, low, high) and returns the first that fails. The similarity
/// band is inclusive at both ends.
pub fn filter_pair(pair: &ParaphrasePair, cfg: &FilterConfig) -> Option<DropReason> {
    let src = lower_words(&pair.source);
    let tgt = lower_words(&pair.target);
    if src.len() < cfg.min_words || tgt.len() < cfg.min_words {
        return Some(DropReason::TooShort);
    }
    let contained = match cfg.containment {
        ContainmentMode::Tokens => contains_run(&src, &tgt) || contains_run(&tgt, &src),
        ContainmentMode::Substring => {
            let (a, b) = (pair.source.to_lowercase(), pair.target.to_lowercase());
            a.contains(&b) || b.contains(&a)
        }
        ContainmentMode::Off => false,
    };
    if contained {
        return Some(DropReason::Containment);
    }
    match pair.similarity {
        None if cfg.require_similarity => Some(DropReason::SimMissing),
        None => None,
        Some(s) if s < cfg.sim_low => Some(DropReason::SimLow),
        Some(s) if s > cfg.sim_high => Some(DropReason::SimHigh),
        Some(_) => None,
    }
}

fn lower_words(text: &str) -> Vec<String> {
    tokenize(text).into_iter().filter(|t| is_word(t)).map(|t| t.to_lowercase()).collect()
}

fn contains_run(haystack: &[String], needle: &[String]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

fn trigrams(text: &str) -> HashMap<[char; 3], u64> {
    let chars: Vec<char> = text.chars().collect();
    let mut counts = HashMap::new();
    for w in chars.windows(3) {
        *counts.entry([w[0], w[1], w[2]]).or_insert(0) += 1;
    }
    counts
}

/// Cosine similarity of character-trigram count vectors, in `[0, 1]`.
///
/// Texts too short to hold a trigram score 1 when equal and 0 otherwise.
pub fn lexical_similarity(a: &str, b: &str) -> f64 {
    let (ta, tb) = (trigrams(a), trigrams(b));
    if ta.is_empty() || tb.is_empty() {
        return if a == b { 1.0 } else { 0.0 };
    }
    let (small, large) = if ta.len() <= tb.len() { (&ta, &tb) } else { (&tb, &ta) };
    let dot: u64 = small.iter().map(|(g, &n)| n * large.get(g).copied().unwrap_or(0)).sum();
    let norm = |m: &HashMap<[char; 3], u64>| m.values().map(|&n| n * n).sum::<u64>() as f64;
    (dot as f64 / (norm(&ta) * norm(&tb)).sqrt()).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(s: &str, t: &str, sim: Option<f64>) -> ParaphrasePair {
        ParaphrasePair::new("x", s, t, sim).unwrap()
    }

    #[test]
    fn containment() {
        let cfg = FilterConfig::default();
        let p = pair("the big red dog ran", "the big red dog", Some(0.7));
        assert_eq!(filter_pair(&p, &cfg), Some(DropReason::Containment));
        let p = pair("The big red dog ran.", "the BIG red dog", Some(0.7));
        assert_eq!(filter_pair(&p, &cfg), Some(DropReason::Containment));
        let off = FilterConfig { containment: ContainmentMode::Off, ..cfg };
        assert_eq!(filter_pair(&p, &off), None);
    }

    #[test]
    fn too_short_comes_first() {
        let p = pair("go now", "leave immediately please", Some(0.1));
        assert_eq!(filter_pair(&p, &FilterConfig::default()), Some(DropReason::TooShort));
    }

    #[test]
    fn similarity_band_is_inclusive() {
        let cfg = FilterConfig::default();
        let check = |s| filter_pair(&pair("a cat sat here", "one dog lay there", Some(s)), &cfg);
        assert_eq!(check(0.59), Some(DropReason::SimLow));
        assert_eq!(check(0.5999), Some(DropReason::SimLow));
        assert_eq!(check(0.60), None);
        assert_eq!(check(0.80), None);
        assert_eq!(check(0.8001), Some(DropReason::SimHigh));
        assert_eq!(check(0.81), Some(DropReason::SimHigh));
        let missing = pair("a cat sat here", "one dog lay there", None);
        assert_eq!(filter_pair(&missing, &cfg), Some(DropReason::SimMissing));
    }

    #[test]
    fn config_validation() {
        let bad = FilterConfig { sim_low: 0.9, ..FilterConfig::default() };
        assert!(matches!(bad.validate(), Err(Error::Config(_))));
        assert!(FilterConfig::default().validate().is_ok());
    }

    #[test]
    fn trigram_cosine() {
        assert_eq!(lexical_similarity("the cat", "the cat"), 1.0);
        assert_eq!(lexical_similarity("aaa", "zzz"), 0.0);
        assert_eq!(lexical_similarity("ab", "ab"), 1.0);
        let s = lexical_similarity("the cat sat", "the cat ran");
        assert!(s > 0.0 && s < 1.0);
        assert_eq!(s, lexical_similarity("the cat ran", "the cat sat"));
    }
}
