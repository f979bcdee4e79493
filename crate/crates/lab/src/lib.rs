//! File formats, parallel experiment runners and the command line for the
//! noisy hidden-hypermatching laboratory. The computation itself lives in
//! `bhm_core`.

pub mod cli;
pub mod experiments;
pub mod streamio;
