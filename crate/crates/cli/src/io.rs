use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use levelforge::corpus::io::{read_records, Format, Record};
use levelforge::Scheme;
use serde::Serialize;

use crate::error::CliError;

pub fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(|f| BufReader::with_capacity(1 << 16, f))
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// A file, or stdout when no path is given.
pub fn create(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::usage(format!("{}: {e}", dir.display())))?;
            }
            let f = File::create(p).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::with_capacity(1 << 16, f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn records(
    path: &Path,
    format: Option<Format>,
    scheme: Option<Scheme>,
) -> Result<impl Iterator<Item = levelforge::Result<Record>> + use<>, CliError> {
    let format = format.unwrap_or_else(|| Format::from_path(path));
    Ok(read_records(open(path)?, format, scheme, path.to_path_buf()))
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, value).map_err(CliError::data)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// Writes JSON to `path`, or to stderr when absent.
pub fn write_side_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    match path {
        Some(_) => write_json(path, value),
        None => {
            eprintln!("{}", serde_json::to_string_pretty(value).map_err(CliError::data)?);
            Ok(())
        }
    }
}

/// Non-blank lines of a file with their 1-based line numbers.
pub fn lines(path: &Path) -> Result<Vec<(usize, String)>, CliError> {
    let mut out = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        if !line.trim().is_empty() {
            out.push((i + 1, line));
        }
    }
    Ok(out)
}

/// Maps `f` over `items` on the worker pool in fixed-size chunks and feeds
/// the results to `sink` in input order.
pub fn par_chunks<T, U, F, S>(
    items: impl Iterator<Item = levelforge::Result<T>>,
    f: F,
    mut sink: S,
) -> Result<(), CliError>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync,
    S: FnMut(U) -> Result<(), CliError>,
{
    use rayon::prelude::*;
    const CHUNK: usize = 16 * 1024;
    let mut items = items;
    loop {
        let chunk: Vec<T> = items.by_ref().take(CHUNK).collect::<levelforge::Result<_>>()?;
        if chunk.is_empty() {
            return Ok(());
        }
        let mapped: Vec<U> = chunk.into_par_iter().map(&f).collect();
        for u in mapped {
            sink(u)?;
        }
    }
}
