//! Command-line companion to `slopelab-core`: file formats, parallel
//! helpers, SVG rendering, and the `slopelab` binary's subcommands.

pub mod commands;
pub mod io;
pub mod svg;
pub mod threads;
