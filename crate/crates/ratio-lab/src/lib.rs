//! JSON formats, golden catalogs, a threaded shard runner and the command line for
//! `ratio-lab-core`.

pub mod catalogs;
pub mod cli;
pub mod json;
pub mod runner;

pub use runner::Threaded;
