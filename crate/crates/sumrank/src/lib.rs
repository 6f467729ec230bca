//! File formats, a parallel distance oracle and the command-line interface
//! for cyclic-skew-cyclic sum-rank codes. The algebra lives in
//! [`sumrank_core`], re-exported as [`core`].

pub use sumrank_core as core;

pub mod cli;
pub mod json;
pub mod lemmas;
pub mod oracle;
pub mod report;
pub mod spec;
pub mod text;
