//! File formats, reports and command implementations for the `kres`
//! binary. The mathematics lives in `kres_core`.

pub mod commands;
pub mod io;
pub mod report;

pub use report::{Report, Status};
