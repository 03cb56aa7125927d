//! Command-line front end for paradox-forge.

pub mod cli;
pub mod commands;
pub mod json;
pub mod render;
