use std::io::Write;

use levelforge::agreement::{krippendorff_alpha, likert_report, likert_table, majority_gold, read_ratings, CI_METHOD};
use serde::Serialize;

use crate::error::CliError;
use crate::io::{create, open, write_json};
use crate::AgreeArgs;

#[derive(Serialize)]
struct AlphaReport {
    metric: levelforge::agreement::Metric,
    alpha: f64,
    items: usize,
    raters: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resolved: Option<usize>,
}

#[derive(Serialize)]
struct LikertOut {
    ci_method: &'static str,
    groups: Vec<levelforge::agreement::LikertGroup>,
}

pub fn run(args: AgreeArgs) -> Result<(), CliError> {
    let ratings = read_ratings(open(&args.ratings)?, &args.ratings)?;

    if args.likert {
        let rows = likert_report(&ratings.groups)?;
        if args.table {
            let mut out = create(args.output.as_deref())?;
            out.write_all(likert_table(&rows).as_bytes())?;
            out.flush()?;
            return Ok(());
        }
        return write_json(args.output.as_deref(), &LikertOut { ci_method: CI_METHOD, groups: rows });
    }

    let m = &ratings.all;
    let alpha = krippendorff_alpha(m, args.metric)?;
    let mut resolved = None;
    if let Some(t) = args.threshold {
        let gold = majority_gold(m, t)?;
        resolved = Some(gold.iter().flatten().count());
        if let Some(path) = &args.gold_out {
            let mut out = create(Some(path))?;
            for (item, label) in m.items.iter().zip(&gold) {
                if let Some(v) = label {
                    writeln!(out, "{item}\t{}", m.display_value(*v))?;
                }
            }
            out.flush()?;
        }
    }
    write_json(
        args.output.as_deref(),
        &AlphaReport {
            metric: args.metric,
            alpha,
            items: m.item_count(),
            raters: m.rater_count(),
            threshold: args.threshold,
            resolved,
        },
    )
}
