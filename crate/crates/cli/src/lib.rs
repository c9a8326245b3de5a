//! Companion crate to the flow library: text file formats and graph
//! generators, shared between the `nzflow` binary and its tests.

#![forbid(unsafe_code)]

pub mod format;
pub mod gens;
