//! Classifier evaluation against gold levels, Krippendorff's alpha, rater
//! majority labels and Likert summaries.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::readability::{cefr6_to_cefr3, ComplexityLevel, Scheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledPrediction {
    pub gold: ComplexityLevel,
    pub predicted: ComplexityLevel,
}

impl LabeledPrediction {
    pub fn new(gold: ComplexityLevel, predicted: ComplexityLevel) -> Result<Self> {
        for l in [gold, predicted] {
            if l.scheme() != Scheme::Cefr6 {
                return Err(Error::SchemeMismatch { left: l.scheme(), right: Scheme::Cefr6 });
            }
        }
        Ok(LabeledPrediction { gold, predicted })
    }

    fn gap(&self) -> u64 {
        self.gold.raw().abs_diff(self.predicted.raw())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Collapse {
    /// A1..C2.
    Six,
    /// A, B, C.
    Three,
}

fn non_empty(preds: &[LabeledPrediction], what: &'static str) -> Result<()> {
    if preds.is_empty() {
        Err(Error::EmptyInput(what))
    } else {
        Ok(())
    }
}

/// Per-class F1 averaged with gold-support weights, on a 0-100 scale. Classes
/// that are only predicted carry zero weight; a class with no true positives
/// has F1 0.
pub fn weighted_f1(preds: &[LabeledPrediction], collapse: Collapse) -> Result<f64> {
    non_empty(preds, "weighted_f1")?;
    let key = |l: ComplexityLevel| match collapse {
        Collapse::Six => l.raw(),
        Collapse::Three => cefr6_to_cefr3(l).expect("cefr6 by construction").raw(),
    };
    let mut tp: HashMap<i64, usize> = HashMap::new();
    let mut gold_n: HashMap<i64, usize> = HashMap::new();
    let mut pred_n: HashMap<i64, usize> = HashMap::new();
    for p in preds {
        let (g, q) = (key(p.gold), key(p.predicted));
        *gold_n.entry(g).or_default() += 1;
        *pred_n.entry(q).or_default() += 1;
        if g == q {
            *tp.entry(g).or_default() += 1;
        }
    }
    let mut classes: Vec<i64> = gold_n.keys().copied().collect();
    classes.sort_unstable();
    let total = preds.len() as f64;
    let score: f64 = classes
        .iter()
        .map(|c| {
            let t = tp.get(c).copied().unwrap_or(0) as f64;
            let support = gold_n[c] as f64;
            let predicted = pred_n.get(c).copied().unwrap_or(0) as f64;
            // 2PR/(P+R) reduces to 2TP/(support + predicted)
            let f1 = if t == 0.0 { 0.0 } else { 2.0 * t / (support + predicted) };
            support / total * f1
        })
        .sum();
    Ok(100.0 * score)
}

/// Fraction of predictions within one level of gold.
pub fn adjacent_accuracy(preds: &[LabeledPrediction]) -> Result<f64> {
    non_empty(preds, "adjacent_accuracy")?;
    Ok(preds.iter().filter(|p| p.gap() <= 1).count() as f64 / preds.len() as f64)
}

pub fn exact_accuracy(preds: &[LabeledPrediction], collapse: Collapse) -> Result<f64> {
    non_empty(preds, "exact_accuracy")?;
    let same = |p: &LabeledPrediction| match collapse {
        Collapse::Six => p.gold == p.predicted,
        Collapse::Three => p.gold.raw() / 2 == p.predicted.raw() / 2,
    };
    Ok(preds.iter().filter(|p| same(p)).count() as f64 / preds.len() as f64)
}

/// Mean absolute level difference.
pub fn mae(preds: &[LabeledPrediction]) -> Result<f64> {
    non_empty(preds, "mae")?;
    Ok(preds.iter().map(|p| p.gap() as f64).sum::<f64>() / preds.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifierReport {
    pub f1_6: f64,
    pub f1_3: f64,
    pub adjacent_accuracy: f64,
    pub mae: f64,
    pub items: usize,
}

pub fn classifier_report(preds: &[LabeledPrediction]) -> Result<ClassifierReport> {
    Ok(ClassifierReport {
        f1_6: weighted_f1(preds, Collapse::Six)?,
        f1_3: weighted_f1(preds, Collapse::Three)?,
        adjacent_accuracy: adjacent_accuracy(preds)?,
        mae: mae(preds)?,
        items: preds.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Nominal,
    Ordinal,
    Interval,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nominal" => Ok(Metric::Nominal),
            "ordinal" => Ok(Metric::Ordinal),
            "interval" => Ok(Metric::Interval),
            _ => Err(Error::Config(format!("unknown alpha metric {s:?}"))),
        }
    }
}

/// Ratings by `raters` × `items`, with missing cells. Values are numeric;
/// textual category labels are coded by their sorted position and kept in
/// `labels`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingMatrix {
    pub raters: Vec<String>,
    pub items: Vec<String>,
    cells: Vec<Vec<Option<f64>>>,
    pub labels: Option<Vec<String>>,
}

impl RatingMatrix {
    /// One row per rater, one column per item.
    pub fn from_rows(rows: Vec<Vec<Option<f64>>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::Data("rating rows differ in length".into()));
        }
        if rows.iter().flatten().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Data("ratings must be finite numbers".into()));
        }
        Ok(RatingMatrix {
            raters: (1..=rows.len()).map(|i| i.to_string()).collect(),
            items: (1..=width).map(|i| i.to_string()).collect(),
            cells: rows,
            labels: None,
        })
    }

    pub fn rater_count(&self) -> usize {
        self.cells.len()
    }

    pub fn item_count(&self) -> usize {
        self.items.len()
    }

    pub fn item(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.cells.iter().filter_map(move |row| row[j])
    }

    /// Human-readable form of a value: its label if coded, else the number.
    pub fn display_value(&self, v: f64) -> String {
        match &self.labels {
            Some(l) => l[v as usize].clone(),
            None => v.to_string(),
        }
    }
}

/// Krippendorff's alpha from the coincidence matrix. Items with fewer than
/// two ratings are ignored. With no observed disagreement the result is 1.
pub fn krippendorff_alpha(matrix: &RatingMatrix, metric: Metric) -> Result<f64> {
    let mut values: Vec<f64> = matrix.cells.iter().flatten().flatten().copied().collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let index = |v: f64| values.binary_search_by(|x| x.total_cmp(&v)).expect("value present");
    let k = values.len();

    let mut o = vec![vec![0.0f64; k]; k];
    let mut unit = Vec::new();
    for j in 0..matrix.item_count() {
        unit.clear();
        unit.extend(matrix.item(j).map(index));
        let m = unit.len();
        if m < 2 {
            continue;
        }
        let w = 1.0 / (m - 1) as f64;
        for (a, &ca) in unit.iter().enumerate() {
            for (b, &cb) in unit.iter().enumerate() {
                if a != b {
                    o[ca][cb] += w;
                }
            }
        }
    }
    let marg: Vec<f64> = o.iter().map(|row| row.iter().sum()).collect();
    let n: f64 = marg.iter().sum();
    if n == 0.0 {
        return Err(Error::UndefinedAlpha("no item has two or more ratings"));
    }

    let delta = distance(metric, &values, &marg);
    let mut d_o = 0.0;
    let mut d_e = 0.0;
    for c in 0..k {
        for j in 0..k {
            d_o += o[c][j] * delta[c][j];
            d_e += marg[c] * marg[j] * delta[c][j];
        }
    }
    if d_o == 0.0 {
        return Ok(1.0);
    }
    if d_e == 0.0 {
        return Err(Error::UndefinedAlpha("no expected disagreement"));
    }
    Ok(1.0 - (n - 1.0) * d_o / d_e)
}

fn distance(metric: Metric, values: &[f64], marg: &[f64]) -> Vec<Vec<f64>> {
    let k = values.len();
    let mut d = vec![vec![0.0; k]; k];
    for c in 0..k {
        for j in 0..k {
            d[c][j] = match metric {
                Metric::Nominal => f64::from(u8::from(c != j)),
                Metric::Interval => (values[c] - values[j]).powi(2),
                Metric::Ordinal => {
                    let (lo, hi) = (c.min(j), c.max(j));
                    let span: f64 = marg[lo..=hi].iter().sum();
                    (span - (marg[c] + marg[j]) / 2.0).powi(2)
                }
            };
        }
    }
    d
}

/// Per-item label chosen by at least `threshold` raters, `None` if no value
/// reaches it. `threshold` must be a strict majority so that at most one
/// value can qualify.
pub fn majority_gold(matrix: &RatingMatrix, threshold: usize) -> Result<Vec<Option<f64>>> {
    let r = matrix.rater_count();
    if threshold > r || 2 * threshold <= r {
        return Err(Error::Config(format!(
            "threshold {threshold} must exceed half of the {r} raters and not exceed their count"
        )));
    }
    Ok((0..matrix.item_count())
        .map(|j| {
            let mut counts: Vec<(f64, usize)> = Vec::new();
            for v in matrix.item(j) {
                match counts.iter_mut().find(|(x, _)| *x == v) {
                    Some((_, n)) => *n += 1,
                    None => counts.push((v, 1)),
                }
            }
            counts.into_iter().find(|&(_, n)| n >= threshold).map(|(v, _)| v)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LikertGroup {
    pub group: String,
    pub items: usize,
    pub mean: f64,
    /// Half width of the normal-approximation 95% interval over item means;
    /// absent for single-item groups.
    pub ci_half_width: Option<f64>,
    /// Ordinal alpha on the raw ratings; absent when undefined.
    pub ordinal_alpha: Option<f64>,
}

pub const CI_METHOD: &str = "normal approximation, mean ± 1.96·sd/√n over per-item rater means";

/// Rater ratings are averaged per item first; the group mean and interval are
/// taken over those item means.
pub fn likert_report(groups: &BTreeMap<String, RatingMatrix>) -> Result<Vec<LikertGroup>> {
    groups
        .iter()
        .map(|(name, m)| {
            let means: Vec<f64> = (0..m.item_count())
                .filter_map(|j| {
                    let vals: Vec<f64> = m.item(j).collect();
                    (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
                })
                .collect();
            if means.is_empty() {
                return Err(Error::Data(format!("group {name} has no ratings")));
            }
            let n = means.len() as f64;
            let mean = means.iter().sum::<f64>() / n;
            let ci = (means.len() > 1).then(|| {
                let var = means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
                1.96 * var.sqrt() / n.sqrt()
            });
            Ok(LikertGroup {
                group: name.clone(),
                items: means.len(),
                mean,
                ci_half_width: ci,
                ordinal_alpha: krippendorff_alpha(m, Metric::Ordinal).ok(),
            })
        })
        .collect()
}

/// Aligned text table, one row per group.
pub fn likert_table(rows: &[LikertGroup]) -> String {
    let width = rows.iter().map(|r| r.group.len()).max().unwrap_or(5).max(5);
    let mut out = format!("{:<width$}  {:>5}  {:>13}  {:>6}\n", "group", "items", "mean ± 95% CI", "alpha");
    for r in rows {
        let ci = r.ci_half_width.map_or("n/a".to_owned(), |h| format!("{h:.2}"));
        let alpha = r.ordinal_alpha.map_or("n/a".to_owned(), |a| format!("{a:.2}"));
        let _ =
            writeln!(out, "{:<width$}  {:>5}  {:>13}  {:>6}", r.group, r.items, format!("{:.2} ± {ci}", r.mean), alpha);
    }
    out
}

/// Ratings read from `item_id, rater_id, group, value` TSV lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Ratings {
    /// Every item, keyed `group/item`.
    pub all: RatingMatrix,
    pub groups: BTreeMap<String, RatingMatrix>,
}

/// item, rater, group, value
type RatingLine = (String, String, String, Option<String>);

/// Reads ratings TSV. A header line starting with `item_id` is skipped;
/// empty or `NA` values are missing. Values that are all numeric are kept as
/// numbers, otherwise they are coded as sorted labels.
pub fn read_ratings<R: BufRead>(reader: R, path: &Path) -> Result<Ratings> {
    let mut rows: Vec<RatingLine> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() || (i == 0 && line.starts_with("item_id")) {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 4 {
            return Err(Error::parse(path, i + 1, format!("expected 4 columns, found {}", cols.len())));
        }
        let v = cols[3].trim();
        let value = (!v.is_empty() && !v.eq_ignore_ascii_case("na")).then(|| v.to_owned());
        rows.push((cols[0].to_owned(), cols[1].to_owned(), cols[2].to_owned(), value));
    }
    let numeric = rows.iter().filter_map(|r| r.3.as_deref()).all(|v| v.parse::<f64>().is_ok_and(f64::is_finite));
    let labels: Option<Vec<String>> = (!numeric).then(|| {
        let mut l: Vec<String> = rows.iter().filter_map(|r| r.3.clone()).collect();
        l.sort();
        l.dedup();
        l
    });
    let code = |v: &str| match &labels {
        Some(l) => l.binary_search_by(|x| x.as_str().cmp(v)).expect("label present") as f64,
        None => v.parse().expect("checked numeric"),
    };

    let mut raters: Vec<String> = rows.iter().map(|r| r.1.clone()).collect();
    raters.sort();
    raters.dedup();
    let build = |keys: Vec<(String, &RatingLine)>| -> Result<RatingMatrix> {
        let mut items: Vec<String> = Vec::new();
        let mut pos: HashMap<String, usize> = HashMap::new();
        for (k, _) in &keys {
            if !pos.contains_key(k) {
                pos.insert(k.clone(), items.len());
                items.push(k.clone());
            }
        }
        let mut cells = vec![vec![None; items.len()]; raters.len()];
        for (k, r) in keys {
            let ri = raters.binary_search(&r.1).expect("rater present");
            let cell = &mut cells[ri][pos[&k]];
            if cell.is_some() {
                return Err(Error::Data(format!("rater {} rated item {k} twice", r.1)));
            }
            *cell = r.3.as_deref().map(code);
        }
        Ok(RatingMatrix { raters: raters.clone(), items, cells, labels: labels.clone() })
    };

    let all = build(rows.iter().map(|r| (format!("{}/{}", r.2, r.0), r)).collect())?;
    let mut grouped: BTreeMap<String, Vec<(String, &RatingLine)>> = BTreeMap::new();
    for r in &rows {
        grouped.entry(r.2.clone()).or_default().push((r.0.clone(), r));
    }
    let groups = grouped.into_iter().map(|(g, keys)| build(keys).map(|m| (g, m))).collect::<Result<_>>()?;
    Ok(Ratings { all, groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(g: &str, p: &str) -> LabeledPrediction {
        let c = |s| ComplexityLevel::parse(Scheme::Cefr6, s).unwrap();
        LabeledPrediction::new(c(g), c(p)).unwrap()
    }

    fn matrix(rows: &[&[i32]]) -> RatingMatrix {
        RatingMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| (v >= 0).then_some(v as f64)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn adjacency_and_distance_cases() {
        assert_eq!(adjacent_accuracy(&[lp("A1", "A2")]).unwrap(), 1.0);
        assert_eq!(adjacent_accuracy(&[lp("B2", "A1")]).unwrap(), 0.0);
        assert_eq!(mae(&[lp("A2", "A1")]).unwrap(), 1.0);
        assert_eq!(mae(&[lp("C2", "A2")]).unwrap(), 4.0);
    }

    #[test]
    fn imbalance_example() {
        let mut preds = vec![lp("A1", "A1"); 9];
        preds.push(lp("C2", "A1"));
        let f = weighted_f1(&preds, Collapse::Six).unwrap();
        assert!((f - 0.9 * (2.0 * 0.9 / 1.9) * 100.0).abs() < 1e-9);
        assert_eq!(weighted_f1(&[lp("B1", "B1")], Collapse::Six).unwrap(), 100.0);
        assert!(weighted_f1(&[], Collapse::Six).is_err());
    }

    #[test]
    fn alpha_edge_cases() {
        assert_eq!(krippendorff_alpha(&matrix(&[&[1, 2, 3], &[1, 2, 3]]), Metric::Nominal).unwrap(), 1.0);
        assert_eq!(krippendorff_alpha(&matrix(&[&[5, 5], &[5, 5]]), Metric::Ordinal).unwrap(), 1.0);
        assert!(krippendorff_alpha(&matrix(&[&[1, 2, 1], &[2, 1, 2]]), Metric::Nominal).unwrap() < 0.0);
        assert!(krippendorff_alpha(&matrix(&[&[1, -1], &[-1, 2]]), Metric::Nominal).is_err());
    }

    #[test]
    fn majority() {
        let m = matrix(&[&[0, 0], &[0, 0], &[0, 1], &[1, 1]]);
        assert_eq!(majority_gold(&m, 3).unwrap(), [Some(0.0), None]);
        assert!(majority_gold(&m, 2).is_err());
        assert!(majority_gold(&m, 5).is_err());
    }

    #[test]
    fn likert_all_fives() {
        let mut groups = BTreeMap::new();
        groups.insert("g".to_owned(), matrix(&[&[5, 5, 5], &[5, 5, 5], &[5, 5, 5]]));
        let r = likert_report(&groups).unwrap();
        assert_eq!(r[0].mean, 5.0);
        assert_eq!(r[0].ci_half_width, Some(0.0));
        assert_eq!(r[0].ordinal_alpha, Some(1.0));
        assert!(likert_table(&r).contains("5.00 ± 0.00"));
    }

    #[test]
    fn ratings_tsv() {
        let tsv =
            "item_id\trater_id\tgroup\tvalue\n1\ta\tg\tsimpler\n1\tb\tg\tsimpler\n2\ta\tg\tneither\n2\tb\tg\tNA\n";
        let r = read_ratings(tsv.as_bytes(), Path::new("r.tsv")).unwrap();
        assert_eq!(r.all.labels.as_deref().unwrap(), ["neither", "simpler"]);
        assert_eq!(r.all.item_count(), 2);
        assert_eq!(r.groups["g"].item(1).count(), 1);
        let bad = "1\ta\tg\n";
        assert!(matches!(read_ratings(bad.as_bytes(), Path::new("r.tsv")), Err(Error::Parse { line: 1, .. })));
    }
}
