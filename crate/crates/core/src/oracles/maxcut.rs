use super::{adjacency_masks, components_with_edges, OracleLimits};
use crate::error::{invalid, Result};
use crate::GraphStream;

/// Exact maximum cut, summed over components.
///
/// Each component's bipartitions are walked in Gray-code order with its first
/// vertex pinned to one side (`2^(|C|-1)` cuts), updating the cut value by the
/// flipped vertex's same-side minus other-side degree.
pub fn exact_maxcut(g: &GraphStream, limits: &OracleLimits) -> Result<u64> {
    if g.is_directed() {
        return Err(invalid!("max cut expects an undirected stream"));
    }
    let limits = OracleLimits::new(limits.max_component_vertices.min(31));
    let mut total = 0;
    for comp in components_with_edges(g, &limits)? {
        let adj = adjacency_masks(&comp);
        let free = comp.size - 1;
        // side bit i belongs to local vertex i + 1; vertex 0 stays on side 0
        let mut side: u32 = 0;
        let mut cut: i64 = 0;
        let mut best = 0;
        for step in 1u64..(1u64 << free) {
            let v = step.trailing_zeros() as usize + 1;
            let same = if side & (1 << v) != 0 { side } else { !side };
            let same_deg = (adj[v] & same).count_ones() as i64;
            let other_deg = adj[v].count_ones() as i64 - same_deg;
            cut += same_deg - other_deg;
            side ^= 1 << v;
            best = best.max(cut);
        }
        total += best as u64;
    }
    Ok(total)
}
