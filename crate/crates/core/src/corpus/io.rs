//! JSON-lines and TSV readers and writers for pair records.

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{ParaphrasePair, TaskLabel};
use crate::error::{Error, Result};
use crate::readability::{ComplexityLevel, Scheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Jsonl,
    Tsv,
}

impl Format {
    /// `.tsv` files are TSV; everything else is JSON lines.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("tsv") => Format::Tsv,
            _ => Format::Jsonl,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Jsonl => "jsonl",
            Format::Tsv => "tsv",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" | "json" => Ok(Format::Jsonl),
            "tsv" => Ok(Format::Tsv),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

/// A pair plus the optional task label it was assigned.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    /// 1-based line in the input file.
    pub line: usize,
    pub pair: ParaphrasePair,
    pub task: Option<TaskLabel>,
}

#[derive(Deserialize)]
struct RawRecord {
    id: Option<serde_json::Value>,
    source: String,
    target: String,
    similarity: Option<f64>,
    source_level: Option<serde_json::Value>,
    target_level: Option<serde_json::Value>,
    task: Option<String>,
}

#[derive(Serialize)]
struct OutRecord<'a> {
    id: &'a str,
    source: &'a str,
    target: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    similarity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_level: Option<ComplexityLevel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target_level: Option<ComplexityLevel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    task: Option<TaskLabel>,
}

/// Streams records from `reader`. JSON lines carry `id`, `source`, `target`
/// and optionally `similarity`, `source_level`, `target_level` and `task`;
/// levels are read under `scheme` and ignored without one. TSV lines are
/// `source<TAB>target[<TAB>similarity]` with ids taken from line numbers.
/// Blank lines are skipped; ids default to the 1-based line number.
pub fn read_records<R: BufRead>(
    reader: R,
    format: Format,
    scheme: Option<Scheme>,
    path: impl Into<PathBuf>,
) -> impl Iterator<Item = Result<Record>> {
    let path = path.into();
    reader.lines().enumerate().filter_map(move |(i, line)| {
        let lineno = i + 1;
        let line = match line {
            Ok(l) => l,
            Err(e) => return Some(Err(Error::io(&path, e))),
        };
        if line.trim().is_empty() {
            return None;
        }
        let parsed = match format {
            Format::Jsonl => parse_json(&line, lineno, scheme),
            Format::Tsv => parse_tsv(&line, lineno),
        };
        Some(parsed.map_err(|e| match e {
            Error::Parse { .. } | Error::Io { .. } => e,
            other => Error::parse(&path, lineno, other.to_string()),
        }))
    })
}

fn parse_json(line: &str, lineno: usize, scheme: Option<Scheme>) -> Result<Record> {
    let raw: RawRecord = serde_json::from_str(line).map_err(|e| Error::Data(e.to_string()))?;
    let id = match raw.id {
        None | Some(serde_json::Value::Null) => lineno.to_string(),
        Some(serde_json::Value::String(s)) => s,
        Some(serde_json::Value::Number(n)) => n.to_string(),
        Some(other) => return Err(Error::Data(format!("invalid id {other}"))),
    };
    let mut pair = ParaphrasePair::new(id, &raw.source, &raw.target, raw.similarity)?;
    if let Some(scheme) = scheme {
        let level = |v: Option<serde_json::Value>| v.map(|v| ComplexityLevel::from_json(scheme, &v)).transpose();
        pair.source_level = level(raw.source_level)?;
        pair.target_level = level(raw.target_level)?;
    }
    let task = raw.task.map(|t| t.parse()).transpose()?;
    Ok(Record { line: lineno, pair, task })
}

fn parse_tsv(line: &str, lineno: usize) -> Result<Record> {
    let cols: Vec<&str> = line.split('\t').collect();
    let similarity = match cols.len() {
        2 => None,
        3 => Some(cols[2].trim().parse::<f64>().map_err(|_| Error::Data(format!("invalid similarity {:?}", cols[2])))?),
        n => return Err(Error::Data(format!("expected 2 or 3 tab-separated columns, found {n}"))),
    };
    let pair = ParaphrasePair::new(lineno.to_string(), cols[0], cols[1], similarity)?;
    Ok(Record { line: lineno, pair, task: None })
}

/// Writes one record. JSON output keeps field order `id, source, target,
/// similarity, source_level, target_level, task`, omitting absent fields;
/// TSV writes the same columns with empty cells for absent values.
pub fn write_record<W: Write>(
    out: &mut W,
    pair: &ParaphrasePair,
    task: Option<TaskLabel>,
    format: Format,
) -> Result<()> {
    write_record_inner(out, pair, task, format).map_err(|e| Error::io("<output>", e))
}

/// Dataset lines: like [`write_record`] but without the similarity column.
pub fn write_dataset_line<W: Write>(out: &mut W, pair: &ParaphrasePair, task: TaskLabel, format: Format) -> Result<()> {
    let stripped = ParaphrasePair { similarity: None, ..pair.clone() };
    write_record(out, &stripped, Some(task), format)
}

fn write_record_inner<W: Write>(
    out: &mut W,
    pair: &ParaphrasePair,
    task: Option<TaskLabel>,
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Jsonl => {
            let rec = OutRecord {
                id: &pair.id,
                source: &pair.source,
                target: &pair.target,
                similarity: pair.similarity,
                source_level: pair.source_level,
                target_level: pair.target_level,
                task,
            };
            serde_json::to_writer(&mut *out, &rec)?;
            out.write_all(b"\n")
        }
        Format::Tsv => {
            let opt = |v: Option<String>| v.unwrap_or_default();
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                pair.id,
                tsv_cell(&pair.source),
                tsv_cell(&pair.target),
                opt(pair.similarity.map(|s| s.to_string())),
                opt(pair.source_level.map(|l| l.to_string())),
                opt(pair.target_level.map(|l| l.to_string())),
                opt(task.map(|t| t.to_string())),
            )
        }
    }
}

/// Tabs and newlines would break the column layout.
pub fn tsv_cell(text: &str) -> std::borrow::Cow<'_, str> {
    if text.contains(['\t', '\n', '\r']) {
        text.replace(['\t', '\n', '\r'], " ").into()
    } else {
        text.into()
    }
}

/// Lowercase hex SHA-256 of a file's bytes, streamed.
pub fn sha256_file(path: &Path) -> Result<String> {
    let mut file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut h = Sha256::new();
    std::io::copy(&mut file, &mut h).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(h.finalize()))
}
