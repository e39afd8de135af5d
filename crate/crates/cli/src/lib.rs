//! Command-line front end for `lefschetz-core`: polynomial parsing,
//! instance files, reports and seeded suites.

pub mod cli;
pub mod instance;
pub mod parse;
pub mod report;
pub mod suite;

pub use cli::run;
