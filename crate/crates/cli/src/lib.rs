//! Experiment runner around the solver library: named presets, JSON
//! configs with validation, engine orchestration, and CSV/JSON artifacts.

pub mod config;
pub mod runner;
