pub mod autfile;
pub mod catkit;
pub mod config;
pub mod error;
pub mod groupalg;
pub mod ncpoly;
pub mod parse;
pub mod report;
pub mod reps;
pub mod sample;
pub mod scalars;
pub mod solver;
pub mod suites;
pub mod words;

pub use config::SessionConfig;
pub use error::{Error, Result};
pub use report::{Report, Verdict};
pub use suites::{run_suite, SUITES};
