//! Flesch-Kincaid grade level and complexity-level schemes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::text::{Sentence, TextCounts};

/// Lowest grade the formula can produce (one word, one syllable, one sentence).
pub const FKGL_FLOOR: f64 = -3.40;

/// `0.39 * words/sentences + 11.8 * syllables/words - 15.59`
pub fn fkgl(counts: TextCounts) -> Result<f64> {
    if counts.words == 0 || counts.sentences == 0 {
        return Err(Error::UndefinedReadability { words: counts.words, sentences: counts.sentences });
    }
    let words = counts.words as f64;
    Ok(0.39 * (words / counts.sentences as f64) + 11.8 * (counts.syllables as f64 / words) - 15.59)
}

pub fn fkgl_text(text: &str) -> Result<f64> {
    fkgl(Sentence::new(text).stats())
}

/// FKGL over counts pooled across all texts (not a mean of per-text grades).
pub fn corpus_fkgl<S: AsRef<str>>(texts: &[S]) -> Result<f64> {
    if texts.is_empty() {
        return Err(Error::EmptyInput("corpus_fkgl"));
    }
    fkgl(texts.iter().map(|t| Sentence::new(t.as_ref()).stats()).sum())
}

/// Rounds half up to two decimals, returned in hundredths.
pub fn round_hundredths(x: f64) -> i64 {
    (x * 100.0 + 0.5 + 1e-9).floor() as i64
}

/// The only scheme computable from raw text is FKGL; the others are ingested.
pub fn level_of(text: &str, scheme: Scheme) -> Result<ComplexityLevel> {
    match scheme {
        Scheme::Fkgl => Ok(ComplexityLevel::from_fkgl(fkgl_text(text)?)),
        other => Err(Error::UnsupportedScheme(other)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Cefr6,
    Cefr3,
    Newsela,
    Fkgl,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Cefr6 => "cefr6",
            Scheme::Cefr3 => "cefr3",
            Scheme::Newsela => "newsela",
            Scheme::Fkgl => "fkgl",
        }
    }

    fn max_index(self) -> Option<i64> {
        match self {
            Scheme::Cefr6 => Some(5),
            Scheme::Cefr3 => Some(2),
            Scheme::Newsela => Some(4),
            Scheme::Fkgl => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cefr6" | "cefr" => Ok(Scheme::Cefr6),
            "cefr3" => Ok(Scheme::Cefr3),
            "newsela" => Ok(Scheme::Newsela),
            "fkgl" => Ok(Scheme::Fkgl),
            _ => Err(Error::Config(format!("unknown scheme {s:?}"))),
        }
    }
}

const CEFR6_NAMES: [&str; 6] = ["A1", "A2", "B1", "B2", "C1", "C2"];
const CEFR3_NAMES: [&str; 3] = ["A", "B", "C"];

/// A level under one scheme. Ordinal schemes store an index (CEFR A1..C2 as
/// 0..5, A..C as 0..2, Newsela 0..4); FKGL stores hundredths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComplexityLevel {
    scheme: Scheme,
    value: i64,
}

impl ComplexityLevel {
    fn ordinal(scheme: Scheme, index: i64) -> Result<Self> {
        let max = scheme.max_index().expect("ordinal scheme");
        if !(0..=max).contains(&index) {
            return Err(Error::InvalidLevel { scheme, value: index.to_string() });
        }
        Ok(ComplexityLevel { scheme, value: index })
    }

    pub fn cefr6(index: u8) -> Result<Self> {
        Self::ordinal(Scheme::Cefr6, index.into())
    }

    pub fn cefr3(index: u8) -> Result<Self> {
        Self::ordinal(Scheme::Cefr3, index.into())
    }

    /// Newsela level: 0 is the original article, 4 the simplest rewrite.
    pub fn newsela(level: u8) -> Result<Self> {
        Self::ordinal(Scheme::Newsela, level.into())
    }

    /// FKGL level, rounded half up to two decimals.
    pub fn from_fkgl(grade: f64) -> Self {
        ComplexityLevel { scheme: Scheme::Fkgl, value: round_hundredths(grade) }
    }

    pub fn fkgl_hundredths(hundredths: i64) -> Self {
        ComplexityLevel { scheme: Scheme::Fkgl, value: hundredths }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Ordinal index, or hundredths for FKGL.
    pub fn raw(&self) -> i64 {
        self.value
    }

    pub fn fkgl(&self) -> Option<f64> {
        (self.scheme == Scheme::Fkgl).then(|| self.value as f64 / 100.0)
    }

    /// Position on a common "more complex is larger" axis.
    fn complexity(&self) -> i64 {
        match self.scheme {
            Scheme::Newsela => -self.value,
            _ => self.value,
        }
    }

    pub fn parse(scheme: Scheme, s: &str) -> Result<Self> {
        let s = s.trim();
        let invalid = || Error::InvalidLevel { scheme, value: s.to_owned() };
        match scheme {
            Scheme::Cefr6 => CEFR6_NAMES
                .iter()
                .position(|n| n.eq_ignore_ascii_case(s))
                .map(|i| ComplexityLevel { scheme, value: i as i64 })
                .ok_or_else(invalid),
            Scheme::Cefr3 => CEFR3_NAMES
                .iter()
                .position(|n| n.eq_ignore_ascii_case(s))
                .map(|i| ComplexityLevel { scheme, value: i as i64 })
                .ok_or_else(invalid),
            Scheme::Newsela => {
                let v: i64 = s.parse().map_err(|_| invalid())?;
                Self::ordinal(scheme, v).map_err(|_| invalid())
            }
            Scheme::Fkgl => {
                let v: f64 = s.parse().map_err(|_| invalid())?;
                if !v.is_finite() {
                    return Err(invalid());
                }
                Ok(Self::from_fkgl(v))
            }
        }
    }

    /// Reads a level from JSON: a string for any scheme, or a number for
    /// Newsela and FKGL.
    pub fn from_json(scheme: Scheme, value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::String(s) => Self::parse(scheme, s),
            serde_json::Value::Number(n) => Self::parse(scheme, &n.to_string()),
            other => Err(Error::InvalidLevel { scheme, value: other.to_string() }),
        }
    }

    /// Compares two levels of the same scheme by complexity.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.check_scheme(other)?;
        Ok(self.complexity().cmp(&other.complexity()))
    }

    fn check_scheme(&self, other: &Self) -> Result<()> {
        if self.scheme != other.scheme {
            return Err(Error::SchemeMismatch { left: self.scheme, right: other.scheme });
        }
        Ok(())
    }
}

impl PartialOrd for ComplexityLevel {
    /// `None` across schemes.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for ComplexityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scheme {
            Scheme::Cefr6 => f.write_str(CEFR6_NAMES[self.value as usize]),
            Scheme::Cefr3 => f.write_str(CEFR3_NAMES[self.value as usize]),
            Scheme::Newsela => write!(f, "{}", self.value),
            Scheme::Fkgl => {
                let sign = if self.value < 0 { "-" } else { "" };
                let abs = self.value.unsigned_abs();
                write!(f, "{sign}{}.{:02}", abs / 100, abs % 100)
            }
        }
    }
}

impl Serialize for ComplexityLevel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.scheme {
            Scheme::Cefr6 | Scheme::Cefr3 => serializer.collect_str(self),
            Scheme::Newsela => serializer.serialize_i64(self.value),
            Scheme::Fkgl => serializer.serialize_f64(self.value as f64 / 100.0),
        }
    }
}

/// A1, A2 -> A; B1, B2 -> B; C1, C2 -> C.
pub fn cefr6_to_cefr3(level: ComplexityLevel) -> Result<ComplexityLevel> {
    if level.scheme != Scheme::Cefr6 {
        return Err(Error::SchemeMismatch { left: level.scheme, right: Scheme::Cefr6 });
    }
    Ok(ComplexityLevel { scheme: Scheme::Cefr3, value: level.value / 2 })
}

/// Signed complexity difference `a - b`: positive when `a` is the more complex
/// level. Ordinal schemes give whole steps; FKGL gives grade points. Newsela is
/// inverted internally so that level 0 counts as the most complex.
pub fn level_delta(a: ComplexityLevel, b: ComplexityLevel) -> Result<f64> {
    a.check_scheme(&b)?;
    let steps = (a.complexity() - b.complexity()) as f64;
    Ok(match a.scheme {
        Scheme::Fkgl => steps / 100.0,
        _ => steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6(s: &str) -> ComplexityLevel {
        ComplexityLevel::parse(Scheme::Cefr6, s).unwrap()
    }

    fn counts(words: usize, syllables: usize, sentences: usize) -> TextCounts {
        TextCounts { sentences, words, syllables }
    }

    #[test]
    fn fkgl_floor() {
        assert!((fkgl(counts(1, 1, 1)).unwrap() - FKGL_FLOOR).abs() < 1e-9);
    }

    #[test]
    fn fkgl_substitution() {
        assert!((fkgl(counts(10, 10, 1)).unwrap() - 0.11).abs() < 1e-9);
    }

    #[test]
    fn fkgl_undefined() {
        assert!(matches!(fkgl(counts(0, 0, 1)), Err(Error::UndefinedReadability { .. })));
        assert!(fkgl(counts(3, 3, 0)).is_err());
    }

    #[test]
    fn level_of_text() {
        let l = level_of("I am here.", Scheme::Fkgl).unwrap();
        assert_eq!(l.raw(), -262);
        assert_eq!(l.to_string(), "-2.62");
        assert!(level_of("", Scheme::Fkgl).is_err());
        assert!(matches!(level_of("I am here.", Scheme::Cefr6), Err(Error::UnsupportedScheme(_))));
    }

    #[test]
    fn corpus_pooling() {
        let one = corpus_fkgl(&["The cat sat on the mat."]).unwrap();
        assert!((one - fkgl_text("The cat sat on the mat.").unwrap()).abs() < 1e-12);
        let two = corpus_fkgl(&["The cat sat on the mat.", "The cat sat on the mat."]).unwrap();
        assert!((one - two).abs() < 1e-12);
        assert!(corpus_fkgl::<&str>(&[]).is_err());
    }

    #[test]
    fn cefr_collapse() {
        assert_eq!(cefr6_to_cefr3(c6("A2")).unwrap().to_string(), "A");
        assert_eq!(cefr6_to_cefr3(c6("B1")).unwrap().to_string(), "B");
        assert_eq!(cefr6_to_cefr3(c6("C2")).unwrap().to_string(), "C");
        let b = ComplexityLevel::cefr3(1).unwrap();
        assert!(cefr6_to_cefr3(b).is_err());
    }

    #[test]
    fn deltas() {
        assert_eq!(level_delta(c6("A1"), c6("B1")).unwrap(), -2.0);
        assert_eq!(level_delta(c6("B2"), c6("B2")).unwrap(), 0.0);
        let f = ComplexityLevel::from_fkgl(7.25);
        assert_eq!(level_delta(f, f).unwrap(), 0.0);
        let n0 = ComplexityLevel::newsela(0).unwrap();
        let n3 = ComplexityLevel::newsela(3).unwrap();
        assert_eq!(level_delta(n0, n3).unwrap(), 3.0);
        assert!(level_delta(c6("A1"), n0).is_err());
    }

    #[test]
    fn cross_scheme_is_incomparable() {
        let a = c6("A1");
        let b = ComplexityLevel::cefr3(0).unwrap();
        assert_eq!(a.partial_cmp(&b), None);
        assert!(a.try_cmp(&b).is_err());
    }

    #[test]
    fn rounding_half_up() {
        assert_eq!(round_hundredths(7.245), 725);
        assert_eq!(round_hundredths(7.2449), 724);
        assert_eq!(round_hundredths(-2.625), -262);
        assert_eq!(ComplexityLevel::from_fkgl(-0.05).to_string(), "-0.05");
        assert_eq!(ComplexityLevel::from_fkgl(0.004).to_string(), "0.00");
    }

    #[test]
    fn parse_and_validate() {
        assert!(ComplexityLevel::parse(Scheme::Cefr6, "D1").is_err());
        assert!(ComplexityLevel::newsela(5).is_err());
        assert_eq!(ComplexityLevel::parse(Scheme::Newsela, "3").unwrap().raw(), 3);
        let v = serde_json::json!(7.25);
        assert_eq!(ComplexityLevel::from_json(Scheme::Fkgl, &v).unwrap().raw(), 725);
        assert_eq!(serde_json::to_string(&ComplexityLevel::from_fkgl(7.25)).unwrap(), "7.25");
        assert_eq!(serde_json::to_string(&c6("B2")).unwrap(), "\"B2\"");
    }
}
