use super::{ParaphrasePair, TaskLabel};
use crate::error::{Error, Result};
use crate::readability::{level_delta, Scheme};

/// Smallest level difference that makes a different-level pair. CEFR-6 needs
/// two steps (A1-B1 qualifies, A2-B1 does not); FKGL needs any difference at
/// two decimals.
pub fn default_gap(scheme: Scheme) -> f64 {
    match scheme {
        Scheme::Cefr6 => 2.0,
        Scheme::Cefr3 | Scheme::Newsela => 1.0,
        Scheme::Fkgl => 0.01,
    }
}

/// Assigns a task to a leveled pair using the scheme's default gap.
/// `Ok(None)` means the pair sits between "same" and "different" and is
/// rejected as near-level.
pub fn bucket(pair: &ParaphrasePair) -> Result<Option<TaskLabel>> {
    let scheme =
        pair.source_level.ok_or_else(|| Error::Data(format!("pair {} has no source level", pair.id)))?.scheme();
    bucket_with_gap(pair, default_gap(scheme))
}

pub fn bucket_with_gap(pair: &ParaphrasePair, gap: f64) -> Result<Option<TaskLabel>> {
    let (Some(src), Some(tgt)) = (pair.source_level, pair.target_level) else {
        return Err(Error::Data(format!("pair {} is missing a level", pair.id)));
    };
    let delta = level_delta(src, tgt)?;
    // FKGL deltas are multiples of 0.01 up to float noise
    let eps = 1e-9;
    Ok(if delta.abs() < eps {
        Some(TaskLabel::Same)
    } else if delta >= gap - eps {
        Some(TaskLabel::Down)
    } else if delta <= -gap + eps {
        Some(TaskLabel::Up)
    } else {
        None
    })
}
