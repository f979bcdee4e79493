use alloc::vec::Vec;

use super::{Formula, ReductionOutput};
use crate::error::Result;
use crate::{flip_count, BhhInstance, GraphStream};

fn clique(stream: &mut GraphStream, vertices: &[usize]) -> Result<()> {
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            stream.push(u, v)?;
        }
    }
    Ok(())
}

/// Maximum-matching gadget.
///
/// Coordinate `i` owns `a, b, c, d = 4i..4i+4`; Alice adds `a-b` when the
/// bit is 0 and `c-d` otherwise. Each hyperedge gets one extra vertex `e`
/// (odd `t`) or two, `e` and `f` (even `t`), numbered after the `4n`
/// coordinate vertices. Bob adds a clique on the hyperedge's `b`s and one on
/// its `d`s; `e` joins the `d` clique on label 0 and the `b` clique on label 1,
/// and `f` always joins the `d` clique.
///
/// A correctly labelled hyperedge contributes `(3t+1)/2` (odd `t`) or
/// `(3t+2)/2` (even `t`), a flipped one exactly one less, and each uncovered
/// coordinate 1.
pub fn reduce_matching(inst: &BhhInstance) -> Result<ReductionOutput> {
    let params = inst.params();
    let (n, t) = (params.n, params.t);
    let k = inst.m().len();
    let extra = if t % 2 == 1 { 1 } else { 2 };
    let mut stream = GraphStream::new(4 * n + extra * k, false);
    for (i, bit) in inst.x().iter().enumerate() {
        if bit {
            stream.push(4 * i + 2, 4 * i + 3)?;
        } else {
            stream.push(4 * i, 4 * i + 1)?;
        }
    }
    let alice_edges = stream.num_edges();
    for (idx, (edge, label)) in inst.m().edges().iter().zip(inst.w().iter()).enumerate() {
        let e = 4 * n + extra * idx;
        let mut b_side: Vec<usize> = edge.iter().map(|&j| 4 * j + 1).collect();
        let mut d_side: Vec<usize> = edge.iter().map(|&j| 4 * j + 3).collect();
        if label {
            b_side.push(e);
        } else {
            d_side.push(e);
        }
        if extra == 2 {
            d_side.push(e + 1);
        }
        clique(&mut stream, &b_side)?;
        clique(&mut stream, &d_side)?;
    }
    let flips = flip_count(inst);
    let per_edge = (3 * t + extra) / 2;
    let yes_total = (per_edge * k + (n - t * k)) as u64;
    Ok(ReductionOutput {
        stream,
        predicted_optimum: yes_total - flips as u64,
        predicted_by_formula: if flips == 0 { Formula::MatchingYes } else { Formula::MatchingNo },
        flip_count: flips,
        alice_edges,
    })
}
