//! Scenario plumbing around `phaselock-core`: TOML configs, named built-in
//! experiments, CSV trajectories, and standalone SVG line plots.

pub mod builtins;
pub mod config;
pub mod scenario;
pub mod svg;
pub mod trajectory;
