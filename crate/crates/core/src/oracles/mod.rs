//! Exact solvers and recognizers, used as ground truth for the reductions.
//!
//! The optimisation oracles split the graph into connected components and
//! solve each one exhaustively. Gadget components are small by construction,
//! so exponential work per component stays linear overall; a component over
//! the configured limit is an error, never an approximation.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::GraphStream;

mod mas;
mod matching;
mod maxcut;
mod tree;

pub use mas::exact_mas;
pub use matching::exact_max_matching;
pub use maxcut::exact_maxcut;
pub use tree::is_complete_binary_tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_component_vertices: usize,
}

impl OracleLimits {
    /// Default for max-cut and matching.
    pub const fn new(max_component_vertices: usize) -> Self {
        Self {
            max_component_vertices,
        }
    }

    /// Default for maximum acyclic subgraph.
    pub const fn mas() -> Self {
        Self::new(16)
    }
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self::new(22)
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Components of the undirected support, each sorted, ordered by smallest
/// vertex.
pub fn connected_components(g: &GraphStream) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    for &(u, v) in g.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut slot = alloc::vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        if slot[root] == usize::MAX {
            slot[root] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[root]].push(v);
    }
    comps
}

/// `|E| - |V| + #components`: the number of independent cycles.
pub fn cycle_space_dimension(g: &GraphStream) -> usize {
    g.num_edges() + connected_components(g).len() - g.num_vertices()
}

/// `cycle_space_dimension / |V|`. Every independent cycle needs at least one
/// edge edit before the graph can be a tree, so the graph is at least this
/// far from any tree.
pub fn epsilon_far_lower_bound(g: &GraphStream) -> f64 {
    if g.num_vertices() == 0 {
        return 0.0;
    }
    cycle_space_dimension(g) as f64 / g.num_vertices() as f64
}

/// A component relabelled to `0..len`, with its edges in stream order.
pub(crate) struct Component {
    pub size: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Splits `g` into components that carry at least one edge, enforcing the
/// size limit on each.
pub(crate) fn components_with_edges(g: &GraphStream, limits: &OracleLimits) -> Result<Vec<Component>> {
    let comps = connected_components(g);
    let mut which = alloc::vec![0usize; g.num_vertices()];
    let mut local = alloc::vec![0usize; g.num_vertices()];
    for (ci, comp) in comps.iter().enumerate() {
        for (li, &v) in comp.iter().enumerate() {
            which[v] = ci;
            local[v] = li;
        }
    }
    let mut edges: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); comps.len()];
    for &(u, v) in g.edges() {
        edges[which[u]].push((local[u], local[v]));
    }
    comps
        .iter()
        .zip(edges)
        .filter(|(_, e)| !e.is_empty())
        .map(|(comp, edges)| {
            if comp.len() > limits.max_component_vertices {
                return Err(Error::Capacity {
                    vertex: comp[0],
                    size: comp.len(),
                    limit: limits.max_component_vertices,
                });
            }
            Ok(Component {
                size: comp.len(),
                edges,
            })
        })
        .collect()
}

/// Neighbour bitmasks of an undirected component; parallel edges collapse.
pub(crate) fn adjacency_masks(comp: &Component) -> Vec<u32> {
    let mut adj = alloc::vec![0u32; comp.size];
    for &(u, v) in &comp.edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn components_basic() {
        let empty = GraphStream::new(5, false);
        assert_eq!(connected_components(&empty).len(), 5);
        let tri = GraphStream::from_edges(4, false, [(0, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(connected_components(&tri), vec![vec![0, 1, 3], vec![2]]);
    }

    #[test]
    fn cycle_dimension_examples() {
        let path = GraphStream::from_edges(4, false, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(cycle_space_dimension(&path), 0);
        assert_eq!(epsilon_far_lower_bound(&path), 0.0);
        let g = GraphStream::from_edges(7, false, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        assert_eq!(cycle_space_dimension(&g), 2);
        assert!((epsilon_far_lower_bound(&g) - 2.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn capacity_error_names_component() {
        let g = GraphStream::from_edges(6, false, [(0, 1), (2, 3), (3, 4), (4, 5)]).unwrap();
        let err = components_with_edges(&g, &OracleLimits::new(3)).err().unwrap();
        assert_eq!(err, Error::Capacity { vertex: 2, size: 4, limit: 3 });
    }
}
