//! Level-aware paraphrase corpus construction and evaluation.

pub mod agreement;
pub mod corpus;
pub mod error;
pub mod genmetrics;
pub mod prompts;
pub mod readability;
pub mod text;

pub use corpus::{ParaphrasePair, TaskLabel};
pub use error::{Error, Result};
pub use readability::{cefr6_to_cefr3, corpus_fkgl, fkgl, level_delta, level_of, ComplexityLevel, Scheme};
pub use text::{Sentence, TextCounts};
