//! Experiment runner and figure generator for Chabauty spaces of `R` and `C*`.

pub mod config;
pub mod experiment;
pub mod figures;
pub mod golden;
pub mod output;
pub mod svg;
