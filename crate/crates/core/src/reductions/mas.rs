use alloc::format;

use super::{Formula, ReductionOutput};
use crate::error::{Error, Result};
use crate::{flip_count, BhhInstance, GraphStream};

/// Maximum-acyclic-subgraph gadget for matchings (`t = 2`), on `4N` vertices
/// for a universe of `N` coordinates.
///
/// Alice orients `a -> b, d -> c` on bit 0 and `b -> a, c -> d` on bit 1.
/// For a pair `y < z`, Bob adds `b_y -> a_z, b_z -> a_y, d_y -> c_z, d_z -> c_y`
/// on label 0 and `b_y -> b_z, a_z -> a_y, d_y -> d_z, c_z -> c_y` on label 1.
/// The pair's 8 edges contain exactly one directed cycle when the label is
/// correct and none otherwise, so with 2 acyclic edges per uncovered
/// coordinate, `OPT = 7k + 2(N - 2k) + flips`.
pub fn reduce_mas(inst: &BhhInstance) -> Result<ReductionOutput> {
    let params = inst.params();
    if params.t != 2 {
        return Err(Error::Unsupported(format!(
            "the acyclic-subgraph gadget needs a matching (t = 2), got t = {}",
            params.t
        )));
    }
    let n = params.n;
    let k = inst.m().len();
    let (a, b, c, d) = (|i: usize| 4 * i, |i: usize| 4 * i + 1, |i: usize| 4 * i + 2, |i: usize| 4 * i + 3);
    let mut stream = GraphStream::new(4 * n, true);
    for (i, bit) in inst.x().iter().enumerate() {
        if bit {
            stream.push(b(i), a(i))?;
            stream.push(c(i), d(i))?;
        } else {
            stream.push(a(i), b(i))?;
            stream.push(d(i), c(i))?;
        }
    }
    let alice_edges = stream.num_edges();
    for (edge, label) in inst.m().edges().iter().zip(inst.w().iter()) {
        let (y, z) = (edge[0], edge[1]);
        let arcs = if label {
            [(b(y), b(z)), (a(z), a(y)), (d(y), d(z)), (c(z), c(y))]
        } else {
            [(b(y), a(z)), (b(z), a(y)), (d(y), c(z)), (d(z), c(y))]
        };
        for (u, v) in arcs {
            stream.push(u, v)?;
        }
    }
    let flips = flip_count(inst);
    let yes_total = (7 * k + 2 * (n - 2 * k)) as u64;
    Ok(ReductionOutput {
        stream,
        predicted_optimum: yes_total + flips as u64,
        predicted_by_formula: if flips == 0 { Formula::MasYes } else { Formula::MasNo },
        flip_count: flips,
        alice_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{exact_mas, OracleLimits};
    use crate::samplers::sample_noisy_bhh;
    use crate::{parities, BitVector, CaseTag, Hypermatching, Params, Ratio, Seed, Variant};
    use alloc::vec;

    fn pair(xs: &str, label: bool) -> BhhInstance {
        let p = Params::new(2, 2, Ratio::HALF, Ratio::ONE).unwrap();
        let x = BitVector::parse01(xs).unwrap();
        let m = Hypermatching::new(2, 2, vec![vec![0, 1]]).unwrap();
        let case = if parities(&m, &x).unwrap()[0] == label { CaseTag::Yes } else { CaseTag::No };
        BhhInstance::new(p, Variant::NoisyBhh, case, x, m, BitVector::from_bools(vec![label])).unwrap()
    }

    #[test]
    fn pair_gadget_values() {
        for xs in ["00", "01", "10", "11"] {
            for label in [false, true] {
                let inst = pair(xs, label);
                let out = reduce_mas(&inst).unwrap();
                assert_eq!(out.stream.num_edges(), 8);
                let expected = if inst.z()[0] { 8 } else { 7 };
                assert_eq!(out.predicted_optimum, expected);
                assert_eq!(exact_mas(&out.stream, &OracleLimits::mas()).unwrap(), expected);
            }
        }
    }

    #[test]
    fn universe_eight_yes_gives_22() {
        let p = Params::new(8, 2, Ratio::HALF, Ratio::HALF).unwrap();
        let inst = sample_noisy_bhh(p, CaseTag::Yes, Seed(6)).unwrap();
        let out = reduce_mas(&inst).unwrap();
        assert_eq!(out.predicted_optimum, 22);
        assert_eq!(exact_mas(&out.stream, &OracleLimits::mas()).unwrap(), 22);
    }

    #[test]
    fn rejects_hyperedges() {
        let p = Params::new(12, 3, Ratio::HALF, Ratio::HALF).unwrap();
        let inst = sample_noisy_bhh(p, CaseTag::Yes, Seed(6)).unwrap();
        assert!(matches!(reduce_mas(&inst), Err(Error::Unsupported(_))));
    }
}
