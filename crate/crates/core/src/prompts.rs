//! Task prompts prepended to model inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::io::Record;
use crate::corpus::{bucket, TaskLabel};
use crate::error::{Error, Result};
use crate::readability::{cefr6_to_cefr3, ComplexityLevel, Scheme};

pub const LEVEL_DOWN: &str = "level down: ";
pub const LEVEL_UP: &str = "level up: ";
pub const SAME_LEVEL: &str = "same level: ";
pub const PARAPHRASE: &str = "paraphrase: ";
const CHANGE_TO_LEVEL: (&str, &str) = ("change to level ", ": ");

const LLM_LESS: &str = "Please rewrite the following text to a less advanced English level: ";
const LLM_MORE: &str = "Please rewrite the following text to a more advanced English level: ";
const LLM_SAME: &str = "Please rewrite the following text to the same English level: ";
const LLM_ABS: (&str, &str) = ("Please rewrite the following text so that its ", " level is ");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Direction prompt: "level down: ", "level up: ", "same level: ".
    Relative,
    /// Target-level prompt: "change to level X: ".
    Absolute,
    /// "paraphrase: " for every line.
    Baseline,
    LlmRelative,
    LlmAbsolute,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Relative => "rel",
            Strategy::Absolute => "abs",
            Strategy::Baseline => "baseline",
            Strategy::LlmRelative => "llm-rel",
            Strategy::LlmAbsolute => "llm-abs",
        }
    }

    fn needs_level(self) -> bool {
        matches!(self, Strategy::Absolute | Strategy::LlmAbsolute)
    }

    fn needs_task(self) -> bool {
        matches!(self, Strategy::Relative | Strategy::LlmRelative)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "rel" | "relative" => Ok(Strategy::Relative),
            "abs" | "absolute" => Ok(Strategy::Absolute),
            "baseline" | "para" | "paraphrase" => Ok(Strategy::Baseline),
            "llm-rel" | "llm-relative" => Ok(Strategy::LlmRelative),
            "llm-abs" | "llm-absolute" => Ok(Strategy::LlmAbsolute),
            _ => Err(Error::Config(format!("unknown prompt strategy {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PromptSpec {
    pub strategy: Strategy,
    pub task: Option<TaskLabel>,
    pub target_level: Option<ComplexityLevel>,
}

impl PromptSpec {
    pub fn relative(task: TaskLabel) -> Self {
        PromptSpec { strategy: Strategy::Relative, task: Some(task), target_level: None }
    }

    pub fn absolute(level: ComplexityLevel) -> Self {
        PromptSpec { strategy: Strategy::Absolute, task: None, target_level: Some(level) }
    }

    pub fn baseline() -> Self {
        PromptSpec { strategy: Strategy::Baseline, task: None, target_level: None }
    }

    /// The prompt prefix, byte-exact with its trailing space.
    pub fn prefix(&self) -> Result<String> {
        let task = || self.task.ok_or_else(|| Error::InvalidPrompt(format!("{} prompts need a task", self.strategy)));
        let level = || {
            self.target_level
                .ok_or_else(|| Error::InvalidPrompt(format!("{} prompts need a target level", self.strategy)))
        };
        if self.strategy.needs_level() && self.task == Some(TaskLabel::Same) {
            return Err(Error::InvalidPrompt(
                "absolute prompts are not defined for single-task same-level paraphrasing".into(),
            ));
        }
        Ok(match self.strategy {
            Strategy::Baseline => PARAPHRASE.to_owned(),
            Strategy::Relative => match task()? {
                TaskLabel::Down => LEVEL_DOWN,
                TaskLabel::Up => LEVEL_UP,
                TaskLabel::Same => SAME_LEVEL,
            }
            .to_owned(),
            Strategy::LlmRelative => match task()? {
                TaskLabel::Down => LLM_LESS,
                TaskLabel::Up => LLM_MORE,
                TaskLabel::Same => LLM_SAME,
            }
            .to_owned(),
            Strategy::Absolute => {
                let x = level_slot(level()?)?;
                format!("{}{x}{}", CHANGE_TO_LEVEL.0, CHANGE_TO_LEVEL.1)
            }
            Strategy::LlmAbsolute => {
                let l = level()?;
                let name = match l.scheme() {
                    Scheme::Cefr6 | Scheme::Cefr3 => "CEFR",
                    Scheme::Fkgl => "FKGL",
                    Scheme::Newsela => {
                        return Err(Error::InvalidPrompt("LLM absolute prompts take CEFR or FKGL levels".into()))
                    }
                };
                format!("{}{name}{}{}: ", LLM_ABS.0, LLM_ABS.1, level_slot(l)?)
            }
        })
    }
}

/// The X in "change to level X: ": CEFR collapses to A/B/C, FKGL prints two
/// decimals, Newsela prints its integer level.
pub fn level_slot(level: ComplexityLevel) -> Result<String> {
    Ok(match level.scheme() {
        Scheme::Cefr6 => cefr6_to_cefr3(level)?.to_string(),
        _ => level.to_string(),
    })
}

/// Parses a level given on the command line. Under CEFR-6, A/B/C are also
/// accepted since absolute prompts use the collapsed form.
pub fn parse_fixed_level(scheme: Scheme, s: &str) -> Result<ComplexityLevel> {
    ComplexityLevel::parse(scheme, s).or_else(|e| match scheme {
        Scheme::Cefr6 => ComplexityLevel::parse(Scheme::Cefr3, s).map_err(|_| e),
        _ => Err(e),
    })
}

pub fn render(spec: &PromptSpec, input: &str) -> Result<String> {
    let mut out = spec.prefix()?;
    out.push_str(input);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptedLine {
    pub input_prompted: String,
    pub output: String,
}

/// Sidecar describing a rendered file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderMetadata {
    pub strategy: Strategy,
    pub scheme: Scheme,
    pub fixed_level: Option<String>,
    pub lines: usize,
    /// Distinct prefixes and how often each was used.
    pub prefixes: BTreeMap<String, usize>,
    /// Same-level lines given an absolute prompt with X set to their output
    /// level; only possible in multi-task files.
    pub absolute_same_level_lines: usize,
}

/// Prompts every record's source; the target becomes the output.
///
/// Absolute prompts use each line's own target level, or `fixed_level` for
/// every line when given (inference mode). Relative prompts use the line's
/// task, falling back to its levels.
pub fn render_dataset<I>(
    records: I,
    strategy: Strategy,
    scheme: Scheme,
    fixed_level: Option<ComplexityLevel>,
) -> Result<(Vec<PromptedLine>, RenderMetadata)>
where
    I: IntoIterator<Item = Result<Record>>,
{
    let mut lines = Vec::new();
    let mut prefixes: BTreeMap<String, usize> = BTreeMap::new();
    let mut same = 0;
    let mut all_same = true;
    for rec in records {
        let rec = rec?;
        let at = |msg: String| Error::parse("<dataset>", rec.line, msg);
        let task = match rec.task {
            Some(t) => Some(t),
            None if rec.pair.source_level.is_some() && rec.pair.target_level.is_some() => {
                bucket(&rec.pair).map_err(|e| at(e.to_string()))?
            }
            None => None,
        };
        all_same &= task == Some(TaskLabel::Same);
        let spec = PromptSpec {
            strategy,
            task: if strategy.needs_level() { None } else { task },
            target_level: if strategy.needs_level() {
                let level = fixed_level.or(rec.pair.target_level);
                Some(level.ok_or_else(|| at(format!("{strategy} prompts need a target level")))?)
            } else {
                None
            },
        };
        if strategy.needs_task() && task.is_none() {
            return Err(at(format!("{strategy} prompts need a task or both levels")));
        }
        if let Some(l) = spec.target_level {
            let compatible = l.scheme() == scheme || (scheme == Scheme::Cefr6 && l.scheme() == Scheme::Cefr3);
            if !compatible {
                return Err(at(format!("level {l} is not a {scheme} level")));
            }
        }
        let prefix = spec.prefix().map_err(|e| at(e.to_string()))?;
        if strategy.needs_level() && task == Some(TaskLabel::Same) {
            same += 1;
        }
        let mut input = prefix.clone();
        input.push_str(&rec.pair.source);
        *prefixes.entry(prefix).or_default() += 1;
        lines.push(PromptedLine { input_prompted: input, output: rec.pair.target });
    }
    if strategy.needs_level() && all_same && !lines.is_empty() {
        return Err(Error::InvalidPrompt(
            "absolute prompts are not defined for single-task same-level paraphrasing".into(),
        ));
    }
    let meta = RenderMetadata {
        strategy,
        scheme,
        fixed_level: fixed_level.map(|l| level_slot(l).unwrap_or_else(|_| l.to_string())),
        lines: lines.len(),
        prefixes,
        absolute_same_level_lines: same,
    };
    Ok((lines, meta))
}
