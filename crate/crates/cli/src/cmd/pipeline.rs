use std::path::{Path, PathBuf};

use levelforge::corpus::io::{sha256_file, Format};
use levelforge::corpus::{
    DatasetManifest, FilterConfig, InputDigest, Labeler, ParaphrasePair, Pipeline, PipelineConfig, Predictions,
    SimilaritySource, TaskSizes,
};
use levelforge::Scheme;
use serde::Deserialize;

use crate::error::CliError;
use crate::io::{open, records};
use crate::{FilterFlags, PipelineArgs};

/// On-disk pipeline configuration. Relative paths resolve against the
/// config file's directory.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    predictions: Option<PathBuf>,
    similarity_file: Option<PathBuf>,
    input_format: Option<Format>,
    format: Option<Format>,
    scheme: Option<Scheme>,
    seed: Option<u64>,
    filter: Option<FilterConfig>,
    similarity: Option<SimilaritySource>,
    task_sizes: Option<TaskSizes>,
    ratios: Option<[f64; 3]>,
    level_gap: Option<f64>,
}

fn load_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let mut cfg: ConfigFile =
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new(""));
    for p in [&mut cfg.input, &mut cfg.output, &mut cfg.predictions, &mut cfg.similarity_file].into_iter().flatten() {
        if p.is_relative() {
            *p = base.join(&*p);
        }
    }
    Ok(cfg)
}

/// Applies command-line filter flags on top of `filter`.
pub fn apply_filter_flags(filter: &mut FilterConfig, similarity: &mut SimilaritySource, flags: &FilterFlags) {
    if let Some(v) = flags.sim_low {
        filter.sim_low = v;
    }
    if let Some(v) = flags.sim_high {
        filter.sim_high = v;
    }
    if let Some(v) = flags.min_words {
        filter.min_words = v;
    }
    if let Some(c) = flags.containment {
        filter.containment = c.into();
    }
    if let Some(s) = flags.similarity {
        *similarity = s.into();
    } else if flags.similarity_file.is_some() {
        *similarity = SimilaritySource::File;
    }
}

pub fn labeler(scheme: Scheme, predictions: Option<&Path>) -> Result<Labeler, CliError> {
    Ok(match (scheme, predictions) {
        (Scheme::Fkgl, _) => Labeler::Fkgl,
        (_, Some(p)) => {
            let preds = Predictions::read(open(p)?, p)?;
            if preds.scheme() != scheme {
                return Err(CliError::usage(format!(
                    "{} declares scheme {} but {scheme} was requested",
                    p.display(),
                    preds.scheme()
                )));
            }
            Labeler::Predictions(preds)
        }
        (s, None) => Labeler::Existing(s),
    })
}

/// Pairs from `input`, with scores from `similarity_file` merged in when given.
pub fn pair_stream<'a>(
    input: &Path,
    format: Option<Format>,
    scheme: Option<Scheme>,
    similarity_file: Option<&'a Path>,
) -> Result<Box<dyn Iterator<Item = levelforge::Result<ParaphrasePair>> + 'a>, CliError> {
    let recs = records(input, format, scheme)?.map(|r| r.map(|r| r.pair));
    let Some(sim_path) = similarity_file else {
        return Ok(Box::new(recs));
    };
    let scores = crate::io::lines(sim_path)?;
    let sim_path = sim_path.to_path_buf();
    let mut scores = scores.into_iter();
    let merged = recs.map(move |pair| {
        let mut pair = pair?;
        let (lineno, text) = scores.next().ok_or_else(|| {
            levelforge::Error::Data(format!("{} has fewer scores than there are pairs", sim_path.display()))
        })?;
        let s: f64 = text.trim().parse().map_err(|_| {
            levelforge::Error::Data(format!("{}:{lineno}: invalid similarity {text:?}", sim_path.display()))
        })?;
        if !(0.0..=1.0).contains(&s) {
            return Err(levelforge::Error::Data(format!(
                "{}:{lineno}: similarity {s} outside [0, 1]",
                sim_path.display()
            )));
        }
        pair.similarity = Some(s);
        Ok(pair)
    });
    Ok(Box::new(merged))
}

fn digest(path: &Path) -> Result<InputDigest, CliError> {
    Ok(InputDigest {
        name: path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
        sha256: sha256_file(path)?,
    })
}

pub fn run(args: PipelineArgs) -> Result<(), CliError> {
    let file = match &args.config {
        Some(p) => load_config(p)?,
        None => ConfigFile::default(),
    };
    let mut cfg = PipelineConfig {
        scheme: args.scheme.or(file.scheme).unwrap_or(Scheme::Cefr6),
        filter: file.filter.unwrap_or_default(),
        similarity: file.similarity.unwrap_or_default(),
        seed: args.seed.or(file.seed).unwrap_or(0),
        task_sizes: file.task_sizes.unwrap_or_default(),
        ratios: file.ratios.unwrap_or(levelforge::corpus::DEFAULT_RATIOS),
        level_gap: file.level_gap,
    };
    apply_filter_flags(&mut cfg.filter, &mut cfg.similarity, &args.filter);
    cfg.validate().map_err(|e| CliError::usage(e).context("config"))?;

    let input = args
        .input
        .or(file.input)
        .ok_or_else(|| CliError::usage("no input given (--input or \"input\" in the config)"))?;
    let output = args
        .output
        .or(file.output)
        .ok_or_else(|| CliError::usage("no output directory given (--output or \"output\" in the config)"))?;
    let predictions = args.predictions.or(file.predictions);
    let similarity_file = args.filter.similarity_file.or(file.similarity_file);
    let format: Format = args.format.map(Into::into).or(file.format).unwrap_or_default();
    for p in [Some(&input), predictions.as_ref(), similarity_file.as_ref()].into_iter().flatten() {
        if !p.is_file() {
            return Err(CliError::usage(format!("config: {} does not exist", p.display())));
        }
    }
    if cfg.similarity == SimilaritySource::File && similarity_file.is_none() {
        return Err(CliError::usage("config: similarity source \"file\" needs a similarity file"));
    }

    let labeler = labeler(cfg.scheme, predictions.as_deref()).map_err(|e| e.context("label"))?;
    let mut inputs = vec![digest(&input)?];
    for p in [&predictions, &similarity_file].into_iter().flatten() {
        inputs.push(digest(p)?);
    }
    let pipeline = Pipeline::new(cfg.clone(), labeler).map_err(|e| CliError::from(e).context("config"))?;
    let pairs = pair_stream(&input, file.input_format, Some(cfg.scheme), similarity_file.as_deref())?;
    let result = pipeline.run(pairs).map_err(|e| CliError::from(e).context("pipeline"))?;
    let manifest = DatasetManifest::new(&cfg, inputs, &result.stats);
    result.write(&output, format, &manifest).map_err(|e| CliError::from(e).context("write"))?;

    let s = &result.stats;
    eprintln!(
        "levelforge: {} pairs read, {} dropped; simplification {}, complexification {}, same-level {}",
        s.input_pairs,
        s.total_dropped(),
        result.simplification.len(),
        result.complexification.len(),
        result.same_level.len()
    );
    Ok(())
}
