use super::{Formula, ReductionOutput};
use crate::error::Result;
use crate::{flip_count, BhhInstance, GraphStream};

// Coordinate i owns vertices a = 4i, b = 4i + 1, c = 4i + 2, d = 4i + 3.
fn a(i: usize) -> usize {
    4 * i
}
fn b(i: usize) -> usize {
    4 * i + 1
}
fn c(i: usize) -> usize {
    4 * i + 2
}
fn d(i: usize) -> usize {
    4 * i + 3
}

/// MAX-CUT gadget on `4n` vertices.
///
/// Each coordinate is a 3-edge path (`a-b`, `c-d`, and `a-d` or `a-c` by the
/// bit). Each hyperedge `j_1 < ... < j_t` chains `d_{j_s} - a_{j_{s+1}}` and
/// closes with `d_{j_t} - a_{j_1}` (label 0) or `d_{j_t} - b_{j_1}` (label 1),
/// giving a unicyclic component of `4t` vertices whose cycle is odd exactly
/// when the label is wrong. Hence
/// `OPT = 4t*k + 3*(n - t*k) - flips`, which is `7n/2 - flips` at `alpha = 1/2`.
pub fn reduce_maxcut(inst: &BhhInstance) -> Result<ReductionOutput> {
    let params = inst.params();
    let (n, t) = (params.n, params.t);
    let k = inst.m().len();
    let mut stream = GraphStream::new(4 * n, false);
    for (i, bit) in inst.x().iter().enumerate() {
        stream.push(a(i), b(i))?;
        stream.push(c(i), d(i))?;
        stream.push(a(i), if bit { c(i) } else { d(i) })?;
    }
    let alice_edges = stream.num_edges();
    for (edge, label) in inst.m().edges().iter().zip(inst.w().iter()) {
        for pair in edge.windows(2) {
            stream.push(d(pair[0]), a(pair[1]))?;
        }
        let (first, last) = (edge[0], edge[t - 1]);
        stream.push(d(last), if label { b(first) } else { a(first) })?;
    }
    let flips = flip_count(inst);
    let yes_total = (4 * t * k + 3 * (n - t * k)) as u64;
    Ok(ReductionOutput {
        stream,
        predicted_optimum: yes_total - flips as u64,
        predicted_by_formula: if flips == 0 { Formula::MaxcutYes } else { Formula::MaxcutNo },
        flip_count: flips,
        alice_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{connected_components, exact_maxcut, OracleLimits};
    use crate::samplers::sample_noisy_bhh;
    use crate::{parities, BitVector, CaseTag, Hypermatching, Params, Ratio, Seed, Variant};
    use alloc::vec;
    use alloc::vec::Vec;

    fn params(n: usize, t: usize) -> Params {
        Params::new(n, t, Ratio::HALF, Ratio::HALF).unwrap()
    }

    #[test]
    fn yes_total_is_seven_halves_n() {
        let inst = sample_noisy_bhh(params(8, 2), CaseTag::Yes, Seed(1)).unwrap();
        let out = reduce_maxcut(&inst).unwrap();
        assert_eq!(out.predicted_optimum, 28);
        assert_eq!(out.predicted_by_formula, Formula::MaxcutYes);
        assert_eq!(exact_maxcut(&out.stream, &OracleLimits::default()).unwrap(), 28);
    }

    #[test]
    fn component_sizes_at_n8() {
        let inst = sample_noisy_bhh(params(8, 2), CaseTag::Yes, Seed(3)).unwrap();
        let out = reduce_maxcut(&inst).unwrap();
        let mut sizes: Vec<usize> = connected_components(&out.stream).iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sizes, vec![8, 8, 4, 4, 4, 4]);
    }

    #[test]
    fn single_flip_loses_one_cut_edge() {
        // Hand-built NO instance with exactly one wrong label.
        let p = params(8, 2);
        let x = BitVector::parse01("01101001").unwrap();
        let m = Hypermatching::new(8, 2, vec![vec![0, 5], vec![2, 7]]).unwrap();
        let mut w: Vec<bool> = parities(&m, &x).unwrap().iter().collect();
        w[1] = !w[1];
        let inst = BhhInstance::new(p, Variant::NoisyBhh, CaseTag::No, x, m, BitVector::from_bools(w)).unwrap();
        let out = reduce_maxcut(&inst).unwrap();
        assert_eq!(out.flip_count, 1);
        assert_eq!(out.predicted_optimum, 27);
        assert_eq!(exact_maxcut(&out.stream, &OracleLimits::default()).unwrap(), 27);
    }

    #[test]
    fn single_even_component_cuts_all_4t_edges() {
        let p = Params::new(2, 2, Ratio::HALF, Ratio::ONE).unwrap();
        for xs in ["00", "01", "10", "11"] {
            let x = BitVector::parse01(xs).unwrap();
            let m = Hypermatching::new(2, 2, vec![vec![0, 1]]).unwrap();
            let w = parities(&m, &x).unwrap();
            let inst = BhhInstance::new(p, Variant::NoisyBhh, CaseTag::Yes, x, m, w).unwrap();
            let out = reduce_maxcut(&inst).unwrap();
            assert_eq!(out.stream.num_edges(), 8);
            assert_eq!(exact_maxcut(&out.stream, &OracleLimits::default()).unwrap(), 8);
        }
    }

    #[test]
    fn components_bipartite_iff_label_correct() {
        for s in 0..40 {
            let inst = sample_noisy_bhh(params(24, 3), CaseTag::No, Seed(s)).unwrap();
            let out = reduce_maxcut(&inst).unwrap();
            let owner = inst.m().incidence();
            for comp in connected_components(&out.stream) {
                let coord = comp[0] / 4;
                let bipartite = two_colorable(&out.stream, &comp);
                match owner[coord] {
                    Some(e) => assert_eq!(bipartite, !inst.z()[e]),
                    None => assert!(bipartite),
                }
            }
        }
    }

    fn two_colorable(g: &GraphStream, comp: &[usize]) -> bool {
        let mut color = vec![None; g.num_vertices()];
        color[comp[0]] = Some(false);
        // Edges within a component are few; relax until stable.
        let mut changed = true;
        while changed {
            changed = false;
            for &(u, v) in g.edges() {
                match (color[u], color[v]) {
                    (Some(cu), Some(cv)) if cu == cv => return false,
                    (Some(cu), None) => {
                        color[v] = Some(!cu);
                        changed = true;
                    }
                    (None, Some(cv)) => {
                        color[u] = Some(!cv);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        true
    }
}
