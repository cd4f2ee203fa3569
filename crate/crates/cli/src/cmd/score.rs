use std::io::{BufRead, Write};

use levelforge::corpus_fkgl;
use levelforge::genmetrics::{reference_sari, score, EvalInstance};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::{create, lines, open, write_json};
use crate::ScoreArgs;

#[derive(Deserialize)]
struct EvalLine {
    source: String,
    #[serde(default)]
    output: Option<String>,
    references: Vec<String>,
}

#[derive(Serialize)]
struct ReferenceScores {
    leave_one_out_sari: f64,
    fkgl: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    #[serde(flatten)]
    scores: levelforge::genmetrics::ScoreReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    references: Option<ReferenceScores>,
}

pub fn run(args: ScoreArgs) -> Result<(), CliError> {
    if args.ngram == 0 {
        return Err(CliError::usage("--ngram must be at least 1"));
    }
    let eval = lines(&args.eval)?;
    let outputs: Option<Vec<String>> = match &args.outputs {
        Some(p) => Some(
            open(p)?.lines().collect::<Result<_, _>>().map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?,
        ),
        None => None,
    };
    if let Some(o) = &outputs {
        if o.len() != eval.len() {
            return Err(CliError::data(format!(
                "line count mismatch: {} outputs but {} evaluation instances",
                o.len(),
                eval.len()
            )));
        }
    }

    let mut instances = Vec::with_capacity(eval.len());
    for (i, (lineno, text)) in eval.iter().enumerate() {
        let at = |m: String| CliError::data(format!("{}:{lineno}: {m}", args.eval.display()));
        let e: EvalLine = serde_json::from_str(text).map_err(|e| at(e.to_string()))?;
        let output = match &outputs {
            Some(o) => o[i].clone(),
            None => e.output.ok_or_else(|| at("no \"output\" field and no --outputs file".into()))?,
        };
        instances.push(EvalInstance::new(e.source, output, e.references).map_err(|e| at(e.to_string()))?);
    }
    let (scores, rows) = score(&instances, args.ngram)?;

    let references = if args.reference_sari {
        let refs: Vec<&str> = instances.iter().flat_map(|i| i.references.iter().map(String::as_str)).collect();
        Some(ReferenceScores { leave_one_out_sari: reference_sari(&instances)?, fkgl: corpus_fkgl(&refs).ok() })
    } else {
        None
    };

    if let Some(p) = &args.per_instance {
        let mut out = create(Some(p))?;
        writeln!(out, "index\tsari\tadd\tkeep\tdel\tsari_r\trepetition\tcopied")?;
        for (i, r) in rows.iter().enumerate() {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                i + 1,
                r.sari,
                r.add,
                r.keep,
                r.del,
                r.sari_r,
                r.repetition,
                r.copied
            )?;
        }
        out.flush()?;
    }
    write_json(args.output.as_deref(), &Report { scores, references })
}
