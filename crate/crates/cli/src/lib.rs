//! Verification front end for `exactcat`: JSON specs, commands and reports.

pub mod commands;
pub mod report;
pub mod spec;

pub use commands::{run, run_with_jobs, Command, Options};
pub use report::{Report, Section, Verdict};
pub use spec::{parse_spec, parse_spec_file, SpecDocument, SpecError};
