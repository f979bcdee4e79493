use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// Disjoint `t`-element hyperedges over the universe `0..n`.
///
/// Stored canonically: each hyperedge strictly increasing, hyperedges ordered
/// by their first element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypermatching {
    n: usize,
    t: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypermatching {
    /// Validates disjointness, arity and range, then canonicalizes.
    pub fn new(n: usize, t: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_order(n, t, edges).map(|(m, _)| m)
    }

    /// Like [`Hypermatching::new`], also returning for each canonical
    /// hyperedge its position in the input, so labels can be permuted along.
    pub fn with_order(n: usize, t: usize, mut edges: Vec<Vec<usize>>) -> Result<(Self, Vec<usize>)> {
        if t < 2 {
            return Err(invalid!("hyperedge arity t = {t} must be at least 2"));
        }
        let mut seen = alloc::vec![false; n];
        for edge in &mut edges {
            if edge.len() != t {
                return Err(invalid!("hyperedge {edge:?} does not have {t} vertices"));
            }
            edge.sort_unstable();
            for &v in edge.iter() {
                if v >= n {
                    return Err(invalid!("vertex {v} outside universe of size {n}"));
                }
                if seen[v] {
                    return Err(invalid!("vertex {v} appears in two hyperedges or twice in one"));
                }
                seen[v] = true;
            }
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_unstable_by_key(|&i| edges[i][0]);
        let mut slots: Vec<Option<Vec<usize>>> = edges.into_iter().map(Some).collect();
        let edges = order
            .iter()
            .map(|&i| slots[i].take().expect("each index taken once"))
            .collect();
        Ok((Self { n, t, edges }, order))
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.t
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_perfect(&self) -> bool {
        self.edges.len() * self.t == self.n
    }

    /// For every coordinate, the hyperedge containing it, if any.
    pub fn incidence(&self) -> Vec<Option<usize>> {
        let mut owner = alloc::vec![None; self.n];
        for (i, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                owner[v] = Some(i);
            }
        }
        owner
    }
}
