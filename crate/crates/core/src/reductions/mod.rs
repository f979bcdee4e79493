//! Gadget reductions from hidden-hypermatching instances to edge streams.
//!
//! Every reduction emits Alice's edges (which depend only on `x`) first, in
//! coordinate order, followed by Bob's edges (which depend only on the
//! hypermatching and labels), in hyperedge order. Each output carries the
//! exact optimum implied by the instance's flip count.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;

use crate::error::{invalid, Error, Result};
use crate::{GraphStream, Seed};

mod mas;
mod matching;
mod maxcut;
mod tree;

pub use mas::reduce_mas;
pub use matching::reduce_matching;
pub use maxcut::reduce_maxcut;
pub use tree::reduce_tree;

/// Which closed form produced `predicted_optimum`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    MaxcutYes,
    MaxcutNo,
    MatchingYes,
    MatchingNo,
    MasYes,
    MasNo,
    TreeIso,
    TreeFar,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::MaxcutYes => "MAXCUT_YES",
            Formula::MaxcutNo => "MAXCUT_NO",
            Formula::MatchingYes => "MATCHING_YES",
            Formula::MatchingNo => "MATCHING_NO",
            Formula::MasYes => "MAS_YES",
            Formula::MasNo => "MAS_NO",
            Formula::TreeIso => "TREE_ISO",
            Formula::TreeFar => "TREE_FAR",
        })
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "MAXCUT_YES" => Formula::MaxcutYes,
            "MAXCUT_NO" => Formula::MaxcutNo,
            "MATCHING_YES" => Formula::MatchingYes,
            "MATCHING_NO" => Formula::MatchingNo,
            "MAS_YES" => Formula::MasYes,
            "MAS_NO" => Formula::MasNo,
            "TREE_ISO" => Formula::TreeIso,
            "TREE_FAR" => Formula::TreeFar,
            other => return Err(invalid!("unknown formula {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub stream: GraphStream,
    /// Exact optimum of the target problem: max cut, maximum matching,
    /// maximum acyclic subgraph, or (for trees) the cycle-space dimension.
    pub predicted_optimum: u64,
    pub predicted_by_formula: Formula,
    pub flip_count: usize,
    /// Number of leading stream edges inserted by Alice.
    pub alice_edges: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OrderPolicy {
    /// Native order: all of Alice's edges, then all of Bob's.
    #[default]
    AliceThenBob,
    UniformShuffle,
}

impl fmt::Display for OrderPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderPolicy::AliceThenBob => "ALICE_THEN_BOB",
            OrderPolicy::UniformShuffle => "UNIFORM_SHUFFLE",
        })
    }
}

impl FromStr for OrderPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ALICE_THEN_BOB" | "alice-then-bob" => Ok(OrderPolicy::AliceThenBob),
            "UNIFORM_SHUFFLE" | "uniform-shuffle" => Ok(OrderPolicy::UniformShuffle),
            other => Err(invalid!("unknown order policy {other:?}")),
        }
    }
}

/// Reorders a stream. The edge multiset never changes.
pub fn shuffle_stream(s: &GraphStream, policy: OrderPolicy, seed: Seed) -> GraphStream {
    match policy {
        OrderPolicy::AliceThenBob => s.clone(),
        OrderPolicy::UniformShuffle => {
            let mut edges: Vec<(usize, usize)> = s.edges().to_vec();
            edges.shuffle(&mut seed.rng());
            s.with_edges(edges)
        }
    }
}
