pub mod agree;
pub mod analyze;
pub mod classify;
pub mod pipeline;
pub mod prompt;
pub mod report;
pub mod score;
pub mod stages;
