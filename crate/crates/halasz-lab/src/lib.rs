//! IO, CLI and verification layer over `halasz-core`: run configuration,
//! CSV/JSON report emission, the spf cache file, the custom-function file
//! format, named verification suites, and deterministic parallel drivers.

pub mod cache;
pub mod cli;
pub mod config;
pub mod funcfile;
pub mod parallel;
pub mod report;
pub mod verify;

pub use config::RunConfig;
