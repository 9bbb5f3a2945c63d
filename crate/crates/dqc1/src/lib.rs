//! Standard-library companion to `dqc1-core`: text file formats, thread-pool
//! drivers, Catalan counting and the `dqc1` command-line tool.

pub mod catalan;
pub mod cli;
pub mod formats;
pub mod parallel;

pub use catalan::catalan_counts;
