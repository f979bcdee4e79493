use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::connected_components;
use crate::GraphStream;

/// Whether the undirected graph is a complete binary tree: `2^(h+1) - 1`
/// vertices, every internal vertex with two children, all leaves at depth `h`.
pub fn is_complete_binary_tree(g: &GraphStream) -> bool {
    let n = g.num_vertices();
    if g.is_directed() || n == 0 || !(n + 1).is_power_of_two() {
        return false;
    }
    if g.num_edges() != n - 1 || connected_components(g).len() != 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    // the root is the only vertex of degree 2 (for n = 3 the leaves have degree 1)
    let mut roots = (0..n).filter(|&v| adj[v].len() == 2);
    let (Some(root), None) = (roots.next(), roots.next()) else {
        return false;
    };
    let height = (n + 1).trailing_zeros() as usize - 1;
    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let children: Vec<usize> = adj[v].iter().copied().filter(|&u| depth[u] == usize::MAX).collect();
        let expected = if depth[v] == height { 0 } else { 2 };
        if children.len() != expected {
            return false;
        }
        for u in children {
            depth[u] = depth[v] + 1;
            queue.push_back(u);
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> GraphStream {
        GraphStream::from_edges(n, false, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn heap(levels: u32) -> GraphStream {
        let n = (1usize << levels) - 1;
        GraphStream::from_edges(n, false, (1..n).map(|i| ((i - 1) / 2, i))).unwrap()
    }

    #[test]
    fn examples() {
        assert!(is_complete_binary_tree(&path(1)));
        assert!(is_complete_binary_tree(&path(3)));
        assert!(!is_complete_binary_tree(&path(7)));
        for levels in 1..8 {
            assert!(is_complete_binary_tree(&heap(levels)));
        }
        let mut bad = GraphStream::new(3, false);
        bad.push(0, 1).unwrap();
        assert!(!is_complete_binary_tree(&bad));
        let directed = GraphStream::from_edges(3, true, [(1, 0), (1, 2)]).unwrap();
        assert!(!is_complete_binary_tree(&directed));
    }
}
