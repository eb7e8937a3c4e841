//! Report and input plumbing shared by the `cellgap` binary and the fuzz targets.

pub mod inputs;
pub mod report;
