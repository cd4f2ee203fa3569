use std::io::Write;
use std::path::PathBuf;

use levelforge::corpus::io::{tsv_cell, Format};
use levelforge::prompts::{parse_fixed_level, render_dataset};

use crate::error::CliError;
use crate::io::{create, records, write_json};
use crate::PromptArgs;

pub fn run(args: PromptArgs) -> Result<(), CliError> {
    let fixed =
        args.fixed_level.as_deref().map(|l| parse_fixed_level(args.scheme, l)).transpose().map_err(CliError::usage)?;
    let recs = records(&args.input, None, Some(args.scheme))?;
    let (lines, meta) = render_dataset(recs, args.strategy, args.scheme, fixed)?;

    let format = args.format.map(Format::from).unwrap_or_default();
    let mut out = create(args.output.as_deref())?;
    for l in &lines {
        match format {
            Format::Jsonl => {
                serde_json::to_writer(&mut out, l).map_err(CliError::data)?;
                out.write_all(b"\n")?;
            }
            Format::Tsv => writeln!(out, "{}\t{}", tsv_cell(&l.input_prompted), tsv_cell(&l.output))?,
        }
    }
    out.flush()?;

    let sidecar = args.metadata.or_else(|| {
        args.output.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".meta.json");
            PathBuf::from(s)
        })
    });
    if let Some(path) = sidecar {
        write_json(Some(&path), &meta)?;
    }
    Ok(())
}
