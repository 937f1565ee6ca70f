//! File formats, bundled grids, the result cache and the command line for
//! `gridlab-core`.

pub mod cache;
pub mod catalog;
pub mod cert;
pub mod cli;
pub mod report;

pub use cli::run;
