use std::io::Write;
use std::path::Path;

use levelforge::readability::{fkgl, round_hundredths};
use levelforge::{ComplexityLevel, Sentence};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::io::{create, lines, write_side_json};
use crate::AnalyzeArgs;

#[derive(Serialize)]
struct Row {
    line: usize,
    word_count: usize,
    syllable_count: usize,
    sentence_count: usize,
    fkgl: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    level: Option<ComplexityLevel>,
}

#[derive(Serialize)]
struct LevelSummary {
    level: ComplexityLevel,
    count: usize,
    mean_word_count: f64,
    /// Over texts with a defined grade.
    mean_fkgl: Option<f64>,
}

fn text_of(path: &Path, lineno: usize, line: &str) -> Result<String, CliError> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
    match ext.as_str() {
        "jsonl" | "json" => {
            let v: serde_json::Value =
                serde_json::from_str(line).map_err(|e| CliError::data(format!("{}:{lineno}: {e}", path.display())))?;
            v.get("text")
                .or_else(|| v.get("source"))
                .and_then(|t| t.as_str())
                .map(str::to_owned)
                .ok_or_else(|| CliError::data(format!("{}:{lineno}: no \"text\" field", path.display())))
        }
        "tsv" => Ok(line.split('\t').next().unwrap_or("").to_owned()),
        _ => Ok(line.to_owned()),
    }
}

pub fn run(args: AnalyzeArgs) -> Result<(), CliError> {
    let input = lines(&args.input)?;
    let texts: Vec<(usize, String)> =
        input.iter().map(|(n, l)| text_of(&args.input, *n, l).map(|t| (*n, t))).collect::<Result<_, _>>()?;
    let levels = match &args.levels {
        Some(p) => {
            let ls = lines(p)?;
            if ls.len() != texts.len() {
                return Err(CliError::data(format!(
                    "{} holds {} levels but {} holds {} texts",
                    p.display(),
                    ls.len(),
                    args.input.display(),
                    texts.len()
                )));
            }
            let parsed = ls
                .iter()
                .map(|(n, l)| {
                    ComplexityLevel::parse(args.scheme, l)
                        .map_err(|e| CliError::data(format!("{}:{n}: {e}", p.display())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(parsed)
        }
        None => None,
    };

    let rows: Vec<Row> = texts
        .par_iter()
        .enumerate()
        .map(|(i, (line, text))| {
            let s = Sentence::new(text);
            Row {
                line: *line,
                word_count: s.word_count,
                syllable_count: s.syllable_count,
                sentence_count: s.sentence_count,
                fkgl: fkgl(s.stats()).ok().map(|g| round_hundredths(g) as f64 / 100.0),
                level: levels.as_ref().map(|l| l[i]),
            }
        })
        .collect();

    let mut out = create(args.output.as_deref())?;
    for r in &rows {
        serde_json::to_writer(&mut out, r).map_err(CliError::data)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;

    if let Some(levels) = levels {
        let mut distinct: Vec<ComplexityLevel> = levels.clone();
        distinct.sort_by_key(|l| l.raw());
        distinct.dedup();
        distinct.sort_by(|a, b| a.try_cmp(b).expect("single scheme"));
        let summary: Vec<LevelSummary> = distinct
            .into_iter()
            .map(|level| {
                let group: Vec<&Row> = rows.iter().filter(|r| r.level == Some(level)).collect();
                let n = group.len() as f64;
                let grades: Vec<f64> = group.iter().filter_map(|r| r.fkgl).collect();
                LevelSummary {
                    level,
                    count: group.len(),
                    mean_word_count: group.iter().map(|r| r.word_count as f64).sum::<f64>() / n,
                    mean_fkgl: (!grades.is_empty()).then(|| grades.iter().sum::<f64>() / grades.len() as f64),
                }
            })
            .collect();
        write_side_json(args.summary.as_deref(), &summary)?;
    }
    Ok(())
}
