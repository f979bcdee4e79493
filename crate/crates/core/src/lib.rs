//! Noisy Boolean Hidden (Hyper)Matching laboratory core.
//!
//! Everything here is pure computation over owned values: instance types,
//! seeded samplers for each input distribution, the plain-text one-way
//! protocol, the four graph-gadget stream reductions and the exact
//! per-component oracles that certify them. Files, CLI and parallel trial
//! runners live in the `noisy-bhm-lab` companion crate.
//!
//! Coordinates and vertices are 0-based throughout.
#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

mod bits;
mod error;
mod hypermatching;
mod instance;
mod params;
mod seed;
mod stream;

pub mod oracles;
pub mod protocol;
pub mod reductions;
pub mod samplers;

pub use bits::BitVector;
pub use error::{Error, Result};
pub use hypermatching::Hypermatching;
pub use instance::{flip_count, parities, BhhInstance, BobView, CaseTag, Variant, VbhhInstance};
pub use params::{Params, Ratio};
pub use seed::Seed;
pub use stream::GraphStream;
