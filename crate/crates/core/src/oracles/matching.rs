use alloc::collections::BTreeMap;

use super::{adjacency_masks, components_with_edges, OracleLimits};
use crate::error::{invalid, Result};
use crate::GraphStream;

fn best(mask: u32, adj: &[u32], memo: &mut BTreeMap<u32, u32>) -> u32 {
    if mask == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let v = mask.trailing_zeros();
    let rest = mask & !(1 << v);
    // either v stays unmatched, or it pairs with a remaining neighbour
    let mut value = best(rest, adj, memo);
    let mut nbrs = adj[v as usize] & rest;
    while nbrs != 0 {
        let u = nbrs.trailing_zeros();
        nbrs &= nbrs - 1;
        value = value.max(1 + best(rest & !(1 << u), adj, memo));
    }
    memo.insert(mask, value);
    value
}

/// Exact maximum matching size, summed over components.
pub fn exact_max_matching(g: &GraphStream, limits: &OracleLimits) -> Result<u64> {
    if g.is_directed() {
        return Err(invalid!("matching expects an undirected stream"));
    }
    let limits = OracleLimits::new(limits.max_component_vertices.min(32));
    let mut total = 0;
    for comp in components_with_edges(g, &limits)? {
        let adj = adjacency_masks(&comp);
        let full = if comp.size == 32 { u32::MAX } else { (1u32 << comp.size) - 1 };
        total += best(full, &adj, &mut BTreeMap::new()) as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(n: usize, edges: &[(usize, usize)]) -> u64 {
        let g = GraphStream::from_edges(n, false, edges.iter().copied()).unwrap();
        exact_max_matching(&g, &OracleLimits::default()).unwrap()
    }

    #[test]
    fn small_graphs() {
        let mut k5 = alloc::vec::Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                k5.push((u, v));
            }
        }
        assert_eq!(mm(5, &k5), 2);
        assert_eq!(mm(4, &[(0, 1), (1, 2), (2, 3)]), 2);
        assert_eq!(mm(4, &[(0, 1), (0, 2), (0, 3)]), 1);
        assert_eq!(mm(6, &[]), 0);
    }
}
