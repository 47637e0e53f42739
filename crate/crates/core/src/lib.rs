//! Synthesis and evaluation toolkit for chart comprehension data.
//!
//! The crate generates (chart image, instruction, response) records across
//! five chart tasks and nine chart types, represents numerical answers as
//! executable function-call programs, and scores predictions with fuzzy
//! table matching, relaxed correctness and BLEU.

pub mod cot;
pub mod dataset;
pub mod lang;
pub mod metrics;
pub mod qa;
pub mod render;
pub mod synth;
pub mod table;

pub use table::{Cell, DataTable, MalformedTable, TableError};
