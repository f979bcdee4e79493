use alloc::vec;

use super::{components_with_edges, OracleLimits};
use crate::error::{invalid, Result};
use crate::GraphStream;

/// Exact maximum acyclic subgraph (edge count, with multiplicity), summed
/// over weakly connected components.
///
/// An acyclic subgraph is the set of forward arcs of some vertex ordering, so
/// `best[S]` is the most arcs kept by an ordering that places `S` first; the
/// next vertex `v` gains every arc from `S` into `v`.
pub fn exact_mas(g: &GraphStream, limits: &OracleLimits) -> Result<u64> {
    if !g.is_directed() {
        return Err(invalid!("acyclic subgraph expects a directed stream"));
    }
    let limits = OracleLimits::new(limits.max_component_vertices.min(24));
    let mut total = 0;
    for comp in components_with_edges(g, &limits)? {
        let n = comp.size;
        let mut weight = vec![vec![0u32; n]; n];
        for &(u, v) in &comp.edges {
            weight[u][v] += 1;
        }
        let mut best = vec![0u32; 1 << n];
        for set in 0..(1usize << n) {
            let here = best[set];
            for v in 0..n {
                if set & (1 << v) != 0 {
                    continue;
                }
                let mut gain = 0;
                let mut rest = set;
                while rest != 0 {
                    let u = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    gain += weight[u][v];
                }
                let next = set | (1 << v);
                best[next] = best[next].max(here + gain);
            }
        }
        total += best[(1 << n) - 1] as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mas(n: usize, edges: &[(usize, usize)]) -> u64 {
        let g = GraphStream::from_edges(n, true, edges.iter().copied()).unwrap();
        exact_mas(&g, &OracleLimits::mas()).unwrap()
    }

    #[test]
    fn small_graphs() {
        assert_eq!(mas(2, &[(0, 1), (1, 0)]), 1);
        assert_eq!(mas(3, &[(0, 1), (1, 2), (2, 0)]), 2);
        // 4-cycle with a chord
        assert_eq!(mas(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]), 4);
        assert_eq!(mas(3, &[(0, 1), (0, 1), (1, 0)]), 2);
        assert_eq!(mas(3, &[]), 0);
    }

    #[test]
    fn rejects_undirected() {
        let g = GraphStream::from_edges(2, false, [(0, 1)]).unwrap();
        assert!(exact_mas(&g, &OracleLimits::mas()).is_err());
    }
}
