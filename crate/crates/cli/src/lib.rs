//! Command-line plumbing for the Mertens laboratory: configuration
//! resolution with file/environment/flag precedence, output rendering with
//! atomic writes, and assembly of the full audit report. The binary in
//! `main.rs` is a thin dispatcher over these pieces.

pub mod config;
pub mod output;
pub mod report;
