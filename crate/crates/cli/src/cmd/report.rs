use std::fmt::Write as _;
use std::io::Write;

use levelforge::corpus::DatasetManifest;

use crate::error::CliError;
use crate::io::create;
use crate::ReportArgs;

pub fn run(args: ReportArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.manifest)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.manifest.display())))?;
    let m: DatasetManifest =
        serde_json::from_str(&text).map_err(|e| CliError::data(format!("{}: {e}", args.manifest.display())))?;

    let c = &m.counts;
    let mut s = String::new();
    let _ = writeln!(s, "scheme {}  seed {}  config {}", m.config.scheme, m.config.seed, &m.config_sha256[..12]);
    let _ = writeln!(s, "input pairs {}  dropped {}", c.input_pairs, c.total_dropped());
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<18} {:>10} {:>10} {:>10} {:>10}", "dataset", "train", "valid", "test", "total");
    for (name, sc) in &c.tasks {
        let total = sc.train + sc.valid + sc.test;
        let _ = writeln!(s, "{name:<18} {:>10} {:>10} {:>10} {total:>10}", sc.train, sc.valid, sc.test);
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<18} {:>10}", "drop reason", "pairs");
    for (reason, n) in &c.dropped {
        let _ = writeln!(s, "{:<18} {n:>10}", reason.as_str());
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<18} {:>10}", "bucket", "pairs");
    for (b, n) in &c.buckets {
        let _ = writeln!(s, "{b:<18} {n:>10}");
    }
    let mut out = create(args.output.as_deref())?;
    out.write_all(s.as_bytes())?;
    out.flush()?;
    Ok(())
}
