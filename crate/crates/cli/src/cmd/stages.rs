//! Single pipeline stages over record files.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use levelforge::corpus::io::{write_dataset_line, write_record, Format, Record};
use levelforge::corpus::{
    attach_levels, bucket_with_gap, build_datasets, default_gap, filter_pair, lexical_similarity, split as split_items,
    DropReason, FilterConfig, SimilaritySource, TaskLabel, TaskSizes, DEFAULT_RATIOS,
};

use super::pipeline::{apply_filter_flags, labeler, pair_stream};
use crate::error::CliError;
use crate::io::{create, par_chunks, records, write_side_json};
use crate::{BucketArgs, BuildArgs, FilterArgs, LabelArgs, SplitArgs};

fn histogram() -> BTreeMap<DropReason, usize> {
    BTreeMap::new()
}

fn ratios(r: &Option<Vec<f64>>) -> Result<[f64; 3], CliError> {
    match r {
        None => Ok(DEFAULT_RATIOS),
        Some(v) => <[f64; 3]>::try_from(v.as_slice()).map_err(|_| CliError::usage("--ratios takes three values")),
    }
}

pub fn filter(args: FilterArgs) -> Result<(), CliError> {
    let mut cfg = FilterConfig::default();
    let mut source = SimilaritySource::Column;
    apply_filter_flags(&mut cfg, &mut source, &args.filter);
    if source == SimilaritySource::None {
        cfg.require_similarity = false;
    }
    cfg.validate()?;
    let format = args.format.map(Format::from).unwrap_or_default();
    let pairs = pair_stream(&args.input, None, args.scheme, args.filter.similarity_file.as_deref())?;
    let mut out = create(args.output.as_deref())?;
    let mut seen = HashSet::new();
    let mut drops = histogram();
    par_chunks(
        pairs,
        |mut p| {
            if source == SimilaritySource::Lexical && p.similarity.is_none() {
                p.similarity = Some(lexical_similarity(&p.source, &p.target));
            }
            let verdict = filter_pair(&p, &cfg);
            (p.key(), p, verdict)
        },
        |(key, p, verdict)| {
            let verdict = if seen.insert(key) { verdict } else { Some(DropReason::Duplicate) };
            match verdict {
                Some(r) => *drops.entry(r).or_default() += 1,
                None => write_record(&mut out, &p, None, format)?,
            }
            Ok(())
        },
    )?;
    out.flush()?;
    write_side_json(args.drops.as_deref(), &drops)
}

pub fn label(args: LabelArgs) -> Result<(), CliError> {
    let labeler = labeler(args.scheme, args.predictions.as_deref())?;
    let format = args.format.map(Format::from).unwrap_or_default();
    let recs = records(&args.input, None, Some(args.scheme))?;
    let mut out = create(args.output.as_deref())?;
    let mut drops = histogram();
    par_chunks(
        recs,
        |mut r: Record| {
            let verdict = attach_levels(&mut r.pair, &labeler);
            (r, verdict)
        },
        |(r, verdict)| {
            match verdict {
                Some(reason) => *drops.entry(reason).or_default() += 1,
                None => write_record(&mut out, &r.pair, r.task, format)?,
            }
            Ok(())
        },
    )?;
    out.flush()?;
    write_side_json(args.drops.as_deref(), &drops)
}

pub fn bucket(args: BucketArgs) -> Result<(), CliError> {
    let gap = args.level_gap.unwrap_or_else(|| default_gap(args.scheme));
    if !(gap.is_finite() && gap > 0.0) {
        return Err(CliError::usage(format!("level gap must be positive, got {gap}")));
    }
    let format = args.format.map(Format::from).unwrap_or_default();
    let recs = records(&args.input, None, Some(args.scheme))?;
    let mut out = create(args.output.as_deref())?;
    let mut drops = histogram();
    par_chunks(
        recs,
        |r: Record| {
            let task = bucket_with_gap(&r.pair, gap).map_err(|e| (r.line, e));
            (r, task)
        },
        |(r, task)| {
            match task {
                Ok(Some(t)) => write_record(&mut out, &r.pair, Some(t), format)?,
                Ok(None) => *drops.entry(DropReason::NearLevel).or_default() += 1,
                Err((line, e)) => {
                    return Err(CliError::data(format!("{}:{line}: {e}", args.input.display())));
                }
            }
            Ok(())
        },
    )?;
    out.flush()?;
    write_side_json(args.drops.as_deref(), &drops)
}

pub fn build(args: BuildArgs) -> Result<(), CliError> {
    let ratios = ratios(&args.ratios)?;
    levelforge::corpus::split_sizes(0, ratios)?;
    let format = args.format.map(Format::from).unwrap_or_default();
    let mut pairs = Vec::new();
    for r in records(&args.input, None, Some(args.scheme))? {
        let r = r?;
        let task =
            r.task.ok_or_else(|| CliError::data(format!("{}:{}: line has no task", args.input.display(), r.line)))?;
        pairs.push((r.pair, task));
    }
    let sizes = TaskSizes { simplification: args.size, complexification: args.size, same_level: args.size };
    let datasets = build_datasets(pairs, &sizes, args.seed)?;
    for (i, task) in TaskLabel::ALL.into_iter().enumerate() {
        let items = datasets.get(task).to_vec();
        let splits = split_items(items, ratios, args.seed.wrapping_add(i as u64))?;
        let dir = args.output.join(task.dataset_name());
        for (name, part) in splits.parts() {
            let path = dir.join(format!("{name}.{}", format.extension()));
            let mut out = create(Some(&path))?;
            for p in part {
                write_dataset_line(&mut out, p, task, format)?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

pub fn split(args: SplitArgs) -> Result<(), CliError> {
    let ratios = ratios(&args.ratios)?;
    let format = args.format.map(Format::from).unwrap_or_default();
    let recs: Vec<Record> = records(&args.input, None, Some(args.scheme))?.collect::<levelforge::Result<_>>()?;
    let splits = split_items(recs, ratios, args.seed)?;
    for (name, part) in splits.parts() {
        let path = args.output.join(format!("{name}.{}", format.extension()));
        let mut out = create(Some(&path))?;
        for r in part {
            write_record(&mut out, &r.pair, r.task, format)?;
        }
        out.flush()?;
    }
    Ok(())
}
