//! Command implementations behind the `exrec` binary.

pub mod analysis;
pub mod campaign;
pub mod commands;
pub mod config;
pub mod io;
