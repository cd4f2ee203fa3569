use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::{DropReason, ParaphrasePair};
use crate::error::{Error, Result};
use crate::readability::{level_of, ComplexityLevel, Scheme};

/// Lowercase hex SHA-256 of the text's UTF-8 bytes (after NFC normalization).
pub fn text_sha256(text: &str) -> String {
    hex::encode(Sha256::digest(crate::text::normalize(text).as_bytes()))
}

/// Sentence-level predictions keyed by `<pair_id>:source` / `<pair_id>:target`
/// or by the sentence's [`text_sha256`].
#[derive(Debug, Clone)]
pub struct Predictions {
    scheme: Scheme,
    by_id: HashMap<String, ComplexityLevel>,
    by_hash: HashMap<String, ComplexityLevel>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    scheme: Scheme,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    id: Option<String>,
    text_sha256: Option<String>,
    level: serde_json::Value,
}

impl Predictions {
    pub fn new(scheme: Scheme) -> Self {
        Predictions { scheme, by_id: HashMap::new(), by_hash: HashMap::new() }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn len(&self) -> usize {
        self.by_id.len() + self.by_hash.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert_id(&mut self, id: impl Into<String>, level: ComplexityLevel) -> Result<()> {
        self.check(level)?;
        self.by_id.insert(id.into(), level);
        Ok(())
    }

    pub fn insert_text(&mut self, text: &str, level: ComplexityLevel) -> Result<()> {
        self.check(level)?;
        self.by_hash.insert(text_sha256(text), level);
        Ok(())
    }

    fn check(&self, level: ComplexityLevel) -> Result<()> {
        if level.scheme() != self.scheme {
            return Err(Error::SchemeMismatch { left: self.scheme, right: level.scheme() });
        }
        Ok(())
    }

    /// Reads the JSON-lines format: a `{"scheme": ...}` header, then one
    /// `{"id" | "text_sha256", "level"}` object per line. Blank lines are skipped.
    pub fn read<R: BufRead>(reader: R, path: &Path) -> Result<Self> {
        let mut preds: Option<Predictions> = None;
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| Error::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let Some(p) = preds.as_mut() else {
                let h: Header = serde_json::from_str(&line)
                    .map_err(|e| Error::parse(path, lineno, format!("expected scheme header: {e}")))?;
                preds = Some(Predictions::new(h.scheme));
                continue;
            };
            let e: Entry = serde_json::from_str(&line).map_err(|e| Error::parse(path, lineno, e.to_string()))?;
            let level = ComplexityLevel::from_json(p.scheme, &e.level)
                .map_err(|err| Error::parse(path, lineno, err.to_string()))?;
            match (e.id, e.text_sha256) {
                (Some(id), None) => p.by_id.insert(id, level),
                (None, Some(h)) => p.by_hash.insert(h.to_ascii_lowercase(), level),
                _ => return Err(Error::parse(path, lineno, "expected exactly one of \"id\" or \"text_sha256\"")),
            };
        }
        preds.ok_or_else(|| Error::parse(path, 1, "missing scheme header"))
    }

    fn lookup(&self, id: &str, text: &str) -> Option<ComplexityLevel> {
        self.by_id.get(id).copied().or_else(|| {
            if self.by_hash.is_empty() {
                None
            } else {
                self.by_hash.get(&text_sha256(text)).copied()
            }
        })
    }
}

/// Where sentence levels come from.
#[derive(Debug, Clone)]
pub enum Labeler {
    /// Levels already present on the pairs.
    Existing(Scheme),
    /// Computed from text.
    Fkgl,
    Predictions(Predictions),
}

impl Labeler {
    pub fn scheme(&self) -> Scheme {
        match self {
            Labeler::Existing(s) => *s,
            Labeler::Fkgl => Scheme::Fkgl,
            Labeler::Predictions(p) => p.scheme(),
        }
    }
}

/// Fills in both levels of `pair`. Returns `LEVEL_MISSING` when either side
/// cannot be labeled.
pub fn attach_levels(pair: &mut ParaphrasePair, labeler: &Labeler) -> Option<DropReason> {
    let (src, tgt) = match labeler {
        Labeler::Existing(scheme) => {
            (pair.source_level.filter(|l| l.scheme() == *scheme), pair.target_level.filter(|l| l.scheme() == *scheme))
        }
        Labeler::Fkgl => (level_of(&pair.source, Scheme::Fkgl).ok(), level_of(&pair.target, Scheme::Fkgl).ok()),
        Labeler::Predictions(p) => (
            p.lookup(&format!("{}:source", pair.id), &pair.source),
            p.lookup(&format!("{}:target", pair.id), &pair.target),
        ),
    };
    match (src, tgt) {
        (Some(s), Some(t)) => {
            pair.source_level = Some(s);
            pair.target_level = Some(t);
            None
        }
        _ => Some(DropReason::LevelMissing),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn preds(text: &str) -> Result<Predictions> {
        Predictions::read(text.as_bytes(), Path::new("preds.jsonl"))
    }

    #[test]
    fn reads_ids_and_hashes() {
        let hash = text_sha256("A small dog.");
        let file = format!(
            "{{\"scheme\":\"cefr6\"}}\n{{\"id\":\"p1:source\",\"level\":\"B2\"}}\n\n{{\"text_sha256\":\"{hash}\",\"level\":\"A1\"}}\n"
        );
        let p = preds(&file).unwrap();
        assert_eq!(p.len(), 2);
        let mut pair = ParaphrasePair::new("p1", "The canine was diminutive.", "A small dog.", None).unwrap();
        assert_eq!(attach_levels(&mut pair, &Labeler::Predictions(p.clone())), None);
        assert_eq!(pair.source_level.unwrap().to_string(), "B2");
        assert_eq!(pair.target_level.unwrap().to_string(), "A1");

        let mut other = ParaphrasePair::new("p2", "The canine was diminutive.", "Tiny dog.", None).unwrap();
        assert_eq!(attach_levels(&mut other, &Labeler::Predictions(p)), Some(DropReason::LevelMissing));
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        let err = preds("{\"scheme\":\"cefr6\"}\n{\"id\":\"a\",\"level\":\"Z9\"}\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = preds("{\"id\":\"a\",\"level\":\"A1\"}\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = preds("{\"scheme\":\"cefr6\"}\nnot json\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn fkgl_needs_no_file() {
        let mut pair = ParaphrasePair::new("p", "I am here.", "The cat sat on the mat.", None).unwrap();
        assert_eq!(attach_levels(&mut pair, &Labeler::Fkgl), None);
        assert_eq!(pair.source_level.unwrap().raw(), -262);
    }
}
