//! File formats, command-line plumbing and cross-checks around
//! `minorvc-core`.

pub mod args;
pub mod commands;
pub mod io;
pub mod oracle;
pub mod params;
pub mod verify;
