//! Seeded samplers for every input distribution, plus the embedding of a
//! multi-copy instance into a single perfect-hypermatching instance.
//!
//! Each public sampler is a pure function of its parameters and [`Seed`].
//! Independent parts of an instance (the string, the hypermatching, the
//! noise) are drawn from separately derived child seeds, so a YES and a NO
//! instance drawn with the same seed share `x` and `m`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::{parities, BhhInstance, BitVector, CaseTag, Hypermatching, Params, Ratio, Seed, Variant, VbhhInstance};

fn uniform_bits<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitVector {
    (0..n).map(|_| rng.gen::<bool>()).collect()
}

fn bernoulli_bits<R: Rng + ?Sized>(n: usize, p: Ratio, rng: &mut R) -> BitVector {
    (0..n).map(|_| p.bernoulli(rng)).collect()
}

fn check_noise_rate(p: Ratio) -> Result<()> {
    if !p.is_at_most(Ratio::HALF) {
        return Err(invalid!("p = {p} must lie in [0, 1/2]"));
    }
    Ok(())
}

/// `n` independent fair bits.
pub fn sample_uniform_bits(n: usize, seed: Seed) -> Result<BitVector> {
    if n == 0 {
        return Err(invalid!("cannot sample an empty bit string"));
    }
    Ok(uniform_bits(n, &mut seed.rng()))
}

/// Chunks a prefix of a permutation into `k` hyperedges of size `t`.
fn chunk_hyperedges(n: usize, t: usize, k: usize, perm: &[usize]) -> Hypermatching {
    let edges = perm.chunks_exact(t).take(k).map(<[usize]>::to_vec).collect();
    Hypermatching::new(n, t, edges).expect("disjoint chunks of a permutation")
}

/// Uniform `k`-edge `t`-hypermatching of `0..n`: shuffle the universe and cut
/// the first `k * t` entries into consecutive groups.
pub fn sample_hypermatching(n: usize, t: usize, k: usize, seed: Seed) -> Result<Hypermatching> {
    if t < 2 {
        return Err(invalid!("hyperedge arity t = {t} must be at least 2"));
    }
    if k.checked_mul(t).is_none_or(|covered| covered > n) {
        return Err(invalid!("{k} hyperedges of size {t} do not fit in {n} coordinates"));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut seed.rng());
    Ok(chunk_hyperedges(n, t, k, &perm))
}

fn zpn<R: Rng + ?Sized>(n: usize, p: Ratio, rng: &mut R) -> BitVector {
    // The even-weight event has probability (1 + (1-2p)^n) / 2 >= 1/2.
    loop {
        let v = bernoulli_bits(n, p, rng);
        if v.weight().is_multiple_of(2) {
            return v;
        }
    }
}

/// Ber(p)^n conditioned on even Hamming weight, by rejection.
pub fn sample_zpn(n: usize, p: Ratio, seed: Seed) -> Result<BitVector> {
    check_noise_rate(p)?;
    Ok(zpn(n, p, &mut seed.rng()))
}

fn assemble(
    params: Params,
    variant: Variant,
    case: CaseTag,
    x: BitVector,
    m: Hypermatching,
    z: &BitVector,
) -> Result<BhhInstance> {
    let w = parities(&m, &x)?.xor(z)?;
    BhhInstance::new(params, variant, case, x, m, w)
}

fn draw_x_and_m(params: &Params, seed: Seed) -> Result<(BitVector, Hypermatching)> {
    let x = uniform_bits(params.n, &mut seed.child("x").rng());
    let m = sample_hypermatching(params.n, params.t, params.k(), seed.child("matching"))?;
    Ok((x, m))
}

/// p-noisy BHH: NO labels are true parities XOR iid Ber(p) noise.
pub fn sample_noisy_bhh(params: Params, case: CaseTag, seed: Seed) -> Result<BhhInstance> {
    params.validate()?;
    if params.n == 0 {
        return Err(invalid!("empty universe"));
    }
    let (x, m) = draw_x_and_m(&params, seed)?;
    let z = match case {
        CaseTag::Yes => BitVector::zeros(m.len()),
        CaseTag::No => bernoulli_bits(m.len(), params.p, &mut seed.child("noise").rng()),
    };
    assemble(params, Variant::NoisyBhh, case, x, m, &z)
}

fn perfect_params(n: usize, t: usize, p: Ratio) -> Result<Params> {
    if t < 2 {
        return Err(invalid!("hyperedge arity t = {t} must be at least 2"));
    }
    if !n.is_multiple_of(t) {
        return Err(invalid!("t = {t} does not divide n = {n}"));
    }
    Params::new(n, t, p, Ratio::ONE)
}

/// Perfect hypermatching with even-weight `Z_p^{n/t}` noise in the NO case.
pub fn sample_pbhh(n: usize, t: usize, p: Ratio, case: CaseTag, seed: Seed) -> Result<BhhInstance> {
    check_noise_rate(p)?;
    let params = perfect_params(n, t, p)?;
    if n == 0 {
        return Err(invalid!("empty universe"));
    }
    let (x, m) = draw_x_and_m(&params, seed)?;
    let z = match case {
        CaseTag::Yes => BitVector::zeros(m.len()),
        CaseTag::No => zpn(m.len(), p, &mut seed.child("noise").rng()),
    };
    assemble(params, Variant::Pbhh, case, x, m, &z)
}

/// Classic BHH: perfect hypermatching, NO flips every label. Recorded with
/// `p = 1`. An empty universe yields the empty instance.
pub fn sample_classic_bhh(n: usize, t: usize, case: CaseTag, seed: Seed) -> Result<BhhInstance> {
    let params = perfect_params(n, t, Ratio::ONE)?;
    if !n.is_multiple_of(2) {
        return Err(invalid!("classic BHH requires an even universe, got n = {n}"));
    }
    let (x, m) = draw_x_and_m(&params, seed)?;
    let z = match case {
        CaseTag::Yes => BitVector::zeros(m.len()),
        CaseTag::No => BitVector::ones(m.len()),
    };
    assemble(params, Variant::ClassicBhh, case, x, m, &z)
}

/// `Q = 1/(2p)` when it is a positive integer.
pub fn copies_for(p: Ratio) -> Result<usize> {
    let twice = p.num().checked_mul(2).filter(|&d| d != 0 && p.den().is_multiple_of(d));
    twice
        .map(|d| (p.den() / d) as usize)
        .ok_or_else(|| invalid!("1/(2p) is not a positive integer for p = {p}"))
}

/// Variable-size `Q`-copy BHH. Sizes are Hamming weights of independent
/// `Z_p^{n/t}` draws; in the NO case copy `r` (uniform) is a NO instance.
pub fn sample_vbhh(n: usize, t: usize, p: Ratio, case: CaseTag, seed: Seed) -> Result<VbhhInstance> {
    let q = copies_for(p)?;
    if t < 2 || !n.is_multiple_of(t) {
        return Err(invalid!("t = {t} must be at least 2 and divide n = {n}"));
    }
    let sizes: Vec<usize> = (0..q)
        .map(|i| zpn(n / t, p, &mut seed.derive(i as u64, "size").rng()).weight())
        .collect();
    let r = seed.child("flipped").rng().gen_range(0..q);
    let flipped = (case == CaseTag::No).then_some(r);
    let subinstances = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let sub_case = if flipped == Some(i) { CaseTag::No } else { CaseTag::Yes };
            sample_classic_bhh(t * s, t, sub_case, seed.derive(i as u64, "subinstance"))
        })
        .collect::<Result<Vec<_>>>()?;
    VbhhInstance::new(t, p, sizes, flipped, subinstances)
}

/// Result of embedding a multi-copy instance into `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    Embedded(BhhInstance),
    /// The copies need more coordinates than are available; the reduction
    /// gives up on this draw.
    Overflow { required: usize, available: usize },
}

/// Places every copy of `v` into `0..n` through a uniformly random injection,
/// then pads the uncovered coordinates with uniform bits and a uniformly
/// random perfect hypermatching whose labels are the true parities.
///
/// The output is a perfect-hypermatching instance with the case of `v`,
/// tagged `PBHH` when its flip count is even and `NOISY_BHH` otherwise.
pub fn embed_vbhh_to_pbhh(v: &VbhhInstance, n: usize, seed: Seed) -> Result<Embedding> {
    let t = v.t();
    if !n.is_multiple_of(t) {
        return Err(invalid!("t = {t} does not divide n = {n}"));
    }
    let required = v.total_coordinates();
    if required > n {
        return Ok(Embedding::Overflow {
            required,
            available: n,
        });
    }
    let mut rng = seed.rng();
    let mut phi: Vec<usize> = (0..n).collect();
    phi.shuffle(&mut rng);

    let mut x = alloc::vec![false; n];
    let mut edges = Vec::with_capacity(n / t);
    let mut labels = Vec::with_capacity(n / t);
    let mut offset = 0;
    for sub in v.subinstances() {
        let image = &phi[offset..offset + sub.params().n];
        for (j, bit) in sub.x().iter().enumerate() {
            x[image[j]] = bit;
        }
        for (edge, label) in sub.m().edges().iter().zip(sub.w().iter()) {
            edges.push(edge.iter().map(|&j| image[j]).collect::<Vec<_>>());
            labels.push(label);
        }
        offset += sub.params().n;
    }
    // Uncovered part: phi is uniform, so chunking its tail in order is a
    // uniform perfect hypermatching of the remainder.
    let rest = &phi[required..];
    for &i in rest {
        x[i] = rng.gen::<bool>();
    }
    for chunk in rest.chunks_exact(t) {
        labels.push(chunk.iter().fold(false, |acc, &i| acc ^ x[i]));
        edges.push(chunk.to_vec());
    }

    let (m, order) = Hypermatching::with_order(n, t, edges)?;
    let w: BitVector = order.iter().map(|&i| labels[i]).collect();
    let x = BitVector::from_bools(x);
    let flips = parities(&m, &x)?.xor(&w)?.weight();
    let variant = if flips % 2 == 0 { Variant::Pbhh } else { Variant::NoisyBhh };
    let params = Params::new(n, t, v.p(), Ratio::ONE)?;
    BhhInstance::new(params, variant, v.case(), x, m, w).map(Embedding::Embedded)
}
