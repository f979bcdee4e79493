use super::{Formula, ReductionOutput};
use crate::error::{invalid, Result};
use crate::{flip_count, BhhInstance, GraphStream};

/// Complete-binary-tree gadget for a perfect matching of `U = 2n` coordinates,
/// `n` a power of two.
///
/// Coordinate `i` owns `v_i = 3i`, `v_{i,0} = 3i + 1`, `v_{i,1} = 3i + 2`.
/// Alice builds a complete binary tree whose leaves, left to right, are
/// `v_{i, x_i}`; its `U - 1` internal vertices are numbered `3U + h` in heap
/// order. She also adds `v_i - v_{i, x_i}`. For each pair `y < z` with label
/// `w`, Bob adds `v_{y,0} - v_{z, w^1}` and `v_{y,1} - v_{z, w}`.
///
/// A correct label hangs two length-2 paths below the two leaves; a wrong one
/// joins the two leaves (closing a cycle through the tree) and leaves a
/// detached edge. The result has `8n - 1` vertices, is a complete binary tree
/// iff there are no flips, and otherwise has cycle-space dimension equal to
/// the flip count. `predicted_optimum` is that dimension.
pub fn reduce_tree(inst: &BhhInstance) -> Result<ReductionOutput> {
    let params = inst.params();
    let universe = params.n;
    if params.t != 2 {
        return Err(invalid!("tree gadget needs a matching (t = 2), got t = {}", params.t));
    }
    if !inst.m().is_perfect() {
        return Err(invalid!("tree gadget needs a perfect matching"));
    }
    if universe < 2 || !(universe / 2).is_power_of_two() {
        return Err(invalid!("tree gadget needs 2n coordinates with n a power of two, got {universe}"));
    }
    let x = inst.x();
    let v = |i: usize| 3 * i;
    let leaf = |i: usize, bit: bool| 3 * i + 1 + bit as usize;
    let internal = universe - 1;
    let node = |h: usize| {
        if h < internal {
            3 * universe + h
        } else {
            let i = h - internal;
            leaf(i, x[i])
        }
    };
    let mut stream = GraphStream::new(3 * universe + internal, false);
    for h in 0..internal {
        stream.push(node(h), node(2 * h + 1))?;
        stream.push(node(h), node(2 * h + 2))?;
    }
    for (i, bit) in x.iter().enumerate() {
        stream.push(v(i), leaf(i, bit))?;
    }
    let alice_edges = stream.num_edges();
    for (edge, label) in inst.m().edges().iter().zip(inst.w().iter()) {
        let (y, z) = (edge[0], edge[1]);
        stream.push(leaf(y, false), leaf(z, !label))?;
        stream.push(leaf(y, true), leaf(z, label))?;
    }
    let flips = flip_count(inst);
    Ok(ReductionOutput {
        stream,
        predicted_optimum: flips as u64,
        predicted_by_formula: if flips == 0 { Formula::TreeIso } else { Formula::TreeFar },
        flip_count: flips,
        alice_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{cycle_space_dimension, epsilon_far_lower_bound, is_complete_binary_tree};
    use crate::samplers::{sample_noisy_bhh, sample_pbhh};
    use crate::{CaseTag, Params, Ratio, Seed};

    #[test]
    fn yes_gives_complete_binary_tree() {
        for s in 0..10 {
            let inst = sample_pbhh(4, 2, Ratio::HALF, CaseTag::Yes, Seed(s)).unwrap();
            let out = reduce_tree(&inst).unwrap();
            assert_eq!(out.stream.num_vertices(), 15);
            assert!(is_complete_binary_tree(&out.stream));
            assert_eq!(out.predicted_by_formula, Formula::TreeIso);
        }
    }

    #[test]
    fn flips_become_cycles() {
        let mut seen_flips = 0;
        for s in 0..60 {
            let inst = sample_pbhh(32, 2, Ratio::HALF, CaseTag::No, Seed(s)).unwrap();
            let out = reduce_tree(&inst).unwrap();
            let g = &out.stream;
            assert_eq!(g.num_vertices(), 8 * 16 - 1);
            assert_eq!(g.num_edges(), g.num_vertices() - 1);
            assert_eq!(cycle_space_dimension(g), out.flip_count);
            assert_eq!(is_complete_binary_tree(g), out.flip_count == 0);
            let eps = epsilon_far_lower_bound(g);
            assert!((eps - out.flip_count as f64 / 127.0).abs() < 1e-12);
            if out.flip_count >= 2 {
                seen_flips += 1;
            }
        }
        assert!(seen_flips > 0);
    }

    #[test]
    fn preconditions() {
        let p = Params::new(24, 2, Ratio::HALF, Ratio::ONE).unwrap();
        let not_pow2 = sample_noisy_bhh(p, CaseTag::Yes, Seed(0)).unwrap();
        assert!(reduce_tree(&not_pow2).is_err());
        let p = Params::new(16, 2, Ratio::HALF, Ratio::HALF).unwrap();
        let partial = sample_noisy_bhh(p, CaseTag::Yes, Seed(0)).unwrap();
        assert!(reduce_tree(&partial).is_err());
        let triples = sample_pbhh(12, 3, Ratio::HALF, CaseTag::Yes, Seed(0)).unwrap();
        assert!(reduce_tree(&triples).is_err());
    }
}
