use std::collections::BTreeMap;
use std::path::Path;

use levelforge::agreement::{classifier_report, LabeledPrediction};
use levelforge::{ComplexityLevel, Scheme};

use crate::error::CliError;
use crate::io::{lines, write_json};
use crate::ClassifierArgs;

/// `id<TAB>level` lines, or JSON lines with "id" and "level".
fn read_levels(path: &Path) -> Result<BTreeMap<String, ComplexityLevel>, CliError> {
    let mut out = BTreeMap::new();
    for (lineno, line) in lines(path)? {
        let at = |m: String| CliError::data(format!("{}:{lineno}: {m}", path.display()));
        let (id, level) = if line.trim_start().starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(&line).map_err(|e| at(e.to_string()))?;
            let id = match &v["id"] {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                _ => return Err(at("missing \"id\"".into())),
            };
            (id, ComplexityLevel::from_json(Scheme::Cefr6, &v["level"]).map_err(|e| at(e.to_string()))?)
        } else {
            let (id, lv) = line.split_once('\t').ok_or_else(|| at("expected id<TAB>level".into()))?;
            (id.to_owned(), ComplexityLevel::parse(Scheme::Cefr6, lv).map_err(|e| at(e.to_string()))?)
        };
        if out.insert(id.clone(), level).is_some() {
            return Err(at(format!("duplicate id {id}")));
        }
    }
    Ok(out)
}

pub fn run(args: ClassifierArgs) -> Result<(), CliError> {
    let gold = read_levels(&args.gold)?;
    let pred = read_levels(&args.pred)?;
    if let Some(id) = gold.keys().find(|k| !pred.contains_key(*k)) {
        return Err(CliError::data(format!("id {id} has a gold level but no prediction")));
    }
    if let Some(id) = pred.keys().find(|k| !gold.contains_key(*k)) {
        return Err(CliError::data(format!("id {id} has a prediction but no gold level")));
    }
    let preds: Vec<LabeledPrediction> =
        gold.iter().map(|(id, g)| LabeledPrediction::new(*g, pred[id])).collect::<levelforge::Result<_>>()?;
    write_json(args.output.as_deref(), &classifier_report(&preds)?)
}
