//! Forum ingest, file formats, pipeline orchestration and the `netpos`
//! command line on top of `netpos-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod ingest;
pub mod pipeline;

pub use error::{Error, Result};
