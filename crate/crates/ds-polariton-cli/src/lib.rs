//! Std companion to the `ds-polariton` core: run configuration, figure
//! presets, parameter sweeps and deterministic CSV/JSON emission. The
//! `ds-polariton` binary is a thin CLI over these modules.

pub mod config;
pub mod output;
pub mod presets;
pub mod scans;
