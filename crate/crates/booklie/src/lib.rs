//! Command-line workflows, file formats and reports on top of `booklie-core`.

pub mod chart;
pub mod config;
pub mod params;
pub mod report;
pub mod simulate;
pub mod suite;

/// Exit codes shared by every subcommand.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
}
