//! Output scoring: SARI, repetition diagnostics, copy rate and a
//! repetition-penalized SARI.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::readability::corpus_fkgl;
use crate::text::{ngrams, tokenize, tokenize_lower};

pub const MAX_ORDER: usize = 4;

/// One system output with its source and references.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalInstance {
    pub source: String,
    pub output: String,
    pub references: Vec<String>,
}

impl EvalInstance {
    pub fn new(source: impl Into<String>, output: impl Into<String>, references: Vec<String>) -> Result<Self> {
        if references.is_empty() {
            return Err(Error::EmptyInput("references"));
        }
        Ok(EvalInstance { source: source.into(), output: output.into(), references })
    }
}

/// Component scores, each on a 0-100 scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SariBreakdown {
    pub sari: f64,
    pub add: f64,
    pub keep: f64,
    pub del: f64,
    pub add_n: [f64; MAX_ORDER],
    pub keep_n: [f64; MAX_ORDER],
    pub del_n: [f64; MAX_ORDER],
}

/// Lowercased 13a tokens. An empty text yields a single empty token, as the
/// reference scorer's `split(" ")` does.
fn sari_tokens(text: &str) -> Vec<String> {
    let toks = tokenize_lower(text);
    if toks.is_empty() {
        vec![String::new()]
    } else {
        toks
    }
}

fn counts(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    ngrams(tokens, n).iter().collect()
}

fn ratio(num: f64, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num / den as f64
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p > 0.0 || r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

/// Keep, delete and add scores for one n-gram order. Keep is F1 and add is
/// F1 over n-gram sets; delete is precision only. Source and output counts are
/// scaled by the number of references before they meet the pooled reference
/// counts.
fn sari_order(s: &[String], c: &[String], refs: &[Vec<String>], n: usize) -> (f64, f64, f64) {
    let numref = refs.len();
    let sg = counts(s, n);
    let cg = counts(c, n);
    let mut rg: HashMap<&[String], usize> = HashMap::new();
    for r in refs {
        for (g, k) in ngrams(r, n).iter() {
            *rg.entry(g).or_default() += k;
        }
    }
    let r_of = |g: &[String]| rg.get(g).copied().unwrap_or(0);
    let c_of = |g: &[String]| cg.get(g).copied().unwrap_or(0) * numref;

    // keep
    let (mut keep_len, mut keep_all_len) = (0usize, 0usize);
    let (mut keep_p, mut keep_r) = (0.0, 0.0);
    // delete
    let (mut del_len, mut del_p) = (0usize, 0.0);
    for (g, &sc) in &sg {
        let s_rep = sc * numref;
        let keep = s_rep.min(c_of(g));
        let all = s_rep.min(r_of(g));
        if keep > 0 {
            keep_len += 1;
            let good = keep.min(r_of(g));
            if good > 0 {
                keep_p += good as f64 / keep as f64;
                keep_r += good as f64 / all as f64;
            }
        }
        if all > 0 {
            keep_all_len += 1;
        }
        let del = s_rep.saturating_sub(c_of(g));
        if del > 0 {
            del_len += 1;
            let good = del.saturating_sub(r_of(g));
            if good > 0 {
                del_p += good as f64 / del as f64;
            }
        }
    }
    let keep_score = f1(ratio(keep_p, keep_len), ratio(keep_r, keep_all_len));
    let del_score = ratio(del_p, del_len);

    // add, on sets
    let added = cg.keys().filter(|g| !sg.contains_key(*g)).count();
    let added_good = cg.keys().filter(|g| !sg.contains_key(*g) && rg.contains_key(*g)).count();
    let addable = rg.keys().filter(|g| !sg.contains_key(*g)).count();
    let add_score = f1(ratio(added_good as f64, added), ratio(added_good as f64, addable));

    (keep_score, del_score, add_score)
}

pub fn sari(instance: &EvalInstance) -> Result<SariBreakdown> {
    if instance.references.is_empty() {
        return Err(Error::EmptyInput("references"));
    }
    let s = sari_tokens(&instance.source);
    let c = sari_tokens(&instance.output);
    let refs: Vec<Vec<String>> = instance.references.iter().map(|r| sari_tokens(r)).collect();
    let mut b = SariBreakdown {
        sari: 0.0,
        add: 0.0,
        keep: 0.0,
        del: 0.0,
        add_n: [0.0; MAX_ORDER],
        keep_n: [0.0; MAX_ORDER],
        del_n: [0.0; MAX_ORDER],
    };
    for n in 1..=MAX_ORDER {
        let (k, d, a) = sari_order(&s, &c, &refs, n);
        b.keep_n[n - 1] = 100.0 * k;
        b.del_n[n - 1] = 100.0 * d;
        b.add_n[n - 1] = 100.0 * a;
    }
    let mean = |xs: &[f64; MAX_ORDER]| xs.iter().sum::<f64>() / MAX_ORDER as f64;
    b.keep = mean(&b.keep_n);
    b.del = mean(&b.del_n);
    b.add = mean(&b.add_n);
    b.sari = (b.keep + b.del + b.add) / 3.0;
    Ok(b)
}

/// Mean of per-instance SARI.
pub fn corpus_sari(instances: &[EvalInstance]) -> Result<f64> {
    if instances.is_empty() {
        return Err(Error::EmptyInput("corpus_sari"));
    }
    let scores: Vec<f64> = instances.par_iter().map(|i| sari(i).map(|b| b.sari)).collect::<Result<_>>()?;
    Ok(scores.iter().sum::<f64>() / scores.len() as f64)
}

/// SARI of human references: each reference is scored as the output against
/// the remaining ones, averaged per instance and then over instances.
/// Instances with fewer than two references are skipped.
pub fn reference_sari(instances: &[EvalInstance]) -> Result<f64> {
    let per_instance: Vec<f64> = instances
        .par_iter()
        .filter(|i| i.references.len() >= 2)
        .map(|inst| {
            let mut total = 0.0;
            for (k, r) in inst.references.iter().enumerate() {
                let others: Vec<String> =
                    inst.references.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect();
                total +=
                    sari(&EvalInstance { source: inst.source.clone(), output: r.clone(), references: others })?.sari;
            }
            Ok(total / inst.references.len() as f64)
        })
        .collect::<Result<_>>()?;
    if per_instance.is_empty() {
        return Err(Error::EmptyInput("reference_sari (needs instances with two or more references)"));
    }
    Ok(per_instance.iter().sum::<f64>() / per_instance.len() as f64)
}

/// Fraction of instances whose tokenized output equals the tokenized source.
pub fn copy_rate(instances: &[EvalInstance]) -> Result<f64> {
    if instances.is_empty() {
        return Err(Error::EmptyInput("copy_rate"));
    }
    let copies = instances.par_iter().filter(|i| is_copy(i)).count();
    Ok(copies as f64 / instances.len() as f64)
}

pub fn is_copy(instance: &EvalInstance) -> bool {
    tokenize(&instance.output) == tokenize(&instance.source)
}

/// `(distinct, total)` n-grams over the lowercased tokens of `text`.
fn ngram_diversity(text: &str, n: usize) -> (usize, usize) {
    let toks = tokenize_lower(text);
    let g = ngrams(&toks, n);
    (g.distinct(), g.total())
}

/// `1 - distinct/total` over the text's n-grams; 0 when there is at most one.
pub fn repetition_score(text: &str, n: usize) -> f64 {
    let (distinct, total) = ngram_diversity(text, n);
    if total <= 1 {
        0.0
    } else {
        1.0 - distinct as f64 / total as f64
    }
}

/// SARI scaled by the share of distinct n-grams in the output. Outputs without
/// any n-gram of order `n` keep their plain SARI.
pub fn sari_r(instance: &EvalInstance, n: usize) -> Result<f64> {
    let base = sari(instance)?.sari;
    let (distinct, total) = ngram_diversity(&instance.output, n);
    Ok(if total == 0 { base } else { base * distinct as f64 / total as f64 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceScore {
    pub sari: f64,
    pub add: f64,
    pub keep: f64,
    pub del: f64,
    pub sari_r: f64,
    pub repetition: f64,
    pub copied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub instances: usize,
    pub sari: f64,
    pub sari_r: f64,
    /// Corpus FKGL of the outputs over pooled counts; absent when the outputs
    /// hold no words.
    pub fkgl: Option<f64>,
    pub copy_rate: f64,
    pub mean_repetition: f64,
    pub repetition_order: usize,
    /// How the corpus figures were aggregated.
    pub conventions: Conventions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub sari: String,
    pub fkgl: String,
    pub tokenizer: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            sari: "mean of sentence-level SARI; keep F1, delete precision, add F1".into(),
            fkgl: "pooled word, sentence and syllable counts".into(),
            tokenizer: "13a, lowercased".into(),
        }
    }
}

/// Scores every instance and aggregates; per-instance rows keep input order.
pub fn score(instances: &[EvalInstance], n: usize) -> Result<(ScoreReport, Vec<InstanceScore>)> {
    if instances.is_empty() {
        return Err(Error::EmptyInput("score"));
    }
    let rows: Vec<InstanceScore> = instances
        .par_iter()
        .map(|inst| {
            let b = sari(inst)?;
            let (distinct, total) = ngram_diversity(&inst.output, n);
            let factor = if total == 0 { 1.0 } else { distinct as f64 / total as f64 };
            Ok(InstanceScore {
                sari: b.sari,
                add: b.add,
                keep: b.keep,
                del: b.del,
                sari_r: b.sari * factor,
                repetition: repetition_score(&inst.output, n),
                copied: is_copy(inst),
            })
        })
        .collect::<Result<_>>()?;
    let m = rows.len() as f64;
    let mean = |f: fn(&InstanceScore) -> f64| rows.iter().map(f).sum::<f64>() / m;
    let outputs: Vec<&str> = instances.iter().map(|i| i.output.as_str()).collect();
    let report = ScoreReport {
        instances: rows.len(),
        sari: mean(|r| r.sari),
        sari_r: mean(|r| r.sari_r),
        fkgl: corpus_fkgl(&outputs).ok(),
        copy_rate: rows.iter().filter(|r| r.copied).count() as f64 / m,
        mean_repetition: mean(|r| r.repetition),
        repetition_order: n,
        conventions: Conventions::default(),
    };
    Ok((report, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(s: &str, o: &str, refs: &[&str]) -> EvalInstance {
        EvalInstance::new(s, o, refs.iter().map(|r| r.to_string()).collect()).unwrap()
    }

    #[test]
    fn identity_triple() {
        let b = sari(&inst("About 95 species.", "About 95 species.", &["About 95 species."])).unwrap();
        assert!((b.keep - 100.0).abs() < 1e-9);
        assert_eq!(b.add, 0.0);
        assert_eq!(b.del, 0.0);
        assert!((b.sari - 100.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn breakdown_mean() {
        let b = sari(&inst("He left.", "He left the room quietly.", &["He left the room.", "He went away."])).unwrap();
        assert!((b.sari - (b.add + b.keep + b.del) / 3.0).abs() < 1e-9);
    }

    #[test]
    fn empty_output_is_scored() {
        let b = sari(&inst("The committee met.", "", &["The committee met."])).unwrap();
        assert!(b.sari >= 0.0);
    }

    #[test]
    fn repetition() {
        assert!((repetition_score("a a a a a a", 1) - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(repetition_score("one two three four five six", 4), 0.0);
        assert_eq!(repetition_score("one", 1), 0.0);
        let loop_text = "the capital of the state is the capital of the state of the state of";
        assert!((repetition_score(loop_text, 4) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn sari_r_multiplier() {
        let clean = inst("The dog ran.", "The dog ran fast.", &["The dog ran quickly."]);
        assert_eq!(sari_r(&clean, 4).unwrap(), sari(&clean).unwrap().sari);
        let looped = inst("The dog ran.", "the dog the dog the dog the dog", &["The dog ran."]);
        assert!(sari_r(&looped, 2).unwrap() < sari(&looped).unwrap().sari);
    }

    #[test]
    fn copies() {
        let a = inst("The cat sat.", "The cat sat .", &["x"]);
        let b = inst("The cat sat.", "A cat sat.", &["x"]);
        assert_eq!(copy_rate(&[a.clone(), b.clone()]).unwrap(), 0.5);
        assert_eq!(copy_rate(&[a]).unwrap(), 1.0);
        assert_eq!(copy_rate(&[b]).unwrap(), 0.0);
        assert!(copy_rate(&[]).is_err());
    }

    #[test]
    fn leave_one_out() {
        let i = inst("The cat sat.", "x", &["The cat sat.", "The cat sat."]);
        let r = reference_sari(&[i]).unwrap();
        assert!((r - 100.0 / 3.0).abs() < 1e-9);
        assert!(reference_sari(&[inst("a", "b", &["c"])]).is_err());
    }
}
