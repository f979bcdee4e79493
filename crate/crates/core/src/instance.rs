use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::{BitVector, Hypermatching, Params, Ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Yes,
    No,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Yes => "YES",
            CaseTag::No => "NO",
        })
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "YES" | "yes" => Ok(CaseTag::Yes),
            "NO" | "no" => Ok(CaseTag::No),
            other => Err(invalid!("unknown case {other:?}")),
        }
    }
}

/// Which input distribution an instance was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Independent Ber(p) label noise, `alpha * n / t` hyperedges.
    NoisyBhh,
    /// Perfect hypermatching, even-weight label noise.
    Pbhh,
    /// Perfect hypermatching, every label flipped in the NO case.
    ClassicBhh,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::NoisyBhh => "NOISY_BHH",
            Variant::Pbhh => "PBHH",
            Variant::ClassicBhh => "CLASSIC_BHH",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "NOISY_BHH" => Ok(Variant::NoisyBhh),
            "PBHH" => Ok(Variant::Pbhh),
            "CLASSIC_BHH" => Ok(Variant::ClassicBhh),
            other => Err(invalid!("unknown variant {other:?}")),
        }
    }
}

/// XOR of `x` over each hyperedge of `m`, in edge order.
pub fn parities(m: &Hypermatching, x: &BitVector) -> Result<BitVector> {
    if x.len() != m.universe_size() {
        return Err(invalid!(
            "bit string has length {} but the universe has size {}",
            x.len(),
            m.universe_size()
        ));
    }
    Ok(m.edges()
        .iter()
        .map(|edge| edge.iter().fold(false, |acc, &v| acc ^ x[v]))
        .collect())
}

/// Number of labels that disagree with the true parity.
pub fn flip_count(inst: &BhhInstance) -> usize {
    inst.z.weight()
}

/// One sampled instance, including the ground-truth noise vector.
///
/// The noise `z` is derived as `w XOR parities(m, x)` at construction, so the
/// labelling identity holds by construction. Distinguishers should only ever
/// see [`BhhInstance::bob_view`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhhInstance {
    params: Params,
    variant: Variant,
    case: CaseTag,
    x: BitVector,
    m: Hypermatching,
    w: BitVector,
    z: BitVector,
}

/// What Bob holds: the hypermatching and its labels, nothing else.
#[derive(Debug, Clone, Copy)]
pub struct BobView<'a> {
    pub m: &'a Hypermatching,
    pub w: &'a BitVector,
}

impl BhhInstance {
    pub fn new(
        params: Params,
        variant: Variant,
        case: CaseTag,
        x: BitVector,
        m: Hypermatching,
        w: BitVector,
    ) -> Result<Self> {
        params.validate()?;
        if m.universe_size() != params.n || m.arity() != params.t {
            return Err(invalid!(
                "hypermatching over ({}, t={}) does not fit params (n={}, t={})",
                m.universe_size(),
                m.arity(),
                params.n,
                params.t
            ));
        }
        if m.len() != params.k() {
            return Err(invalid!(
                "hypermatching has {} hyperedges, params require {}",
                m.len(),
                params.k()
            ));
        }
        if w.len() != m.len() {
            return Err(invalid!("{} labels for {} hyperedges", w.len(), m.len()));
        }
        let z = parities(&m, &x)?.xor(&w)?;
        if case == CaseTag::Yes && !z.is_zero() {
            return Err(invalid!("YES instance has {} mislabeled hyperedges", z.weight()));
        }
        match variant {
            Variant::NoisyBhh => {}
            Variant::Pbhh => {
                if !m.is_perfect() {
                    return Err(invalid!("PBHH instance requires a perfect hypermatching"));
                }
                if z.weight() % 2 != 0 {
                    return Err(invalid!("PBHH noise has odd weight {}", z.weight()));
                }
            }
            Variant::ClassicBhh => {
                if !m.is_perfect() {
                    return Err(invalid!("classic BHH instance requires a perfect hypermatching"));
                }
                if case == CaseTag::No && z.weight() != z.len() {
                    return Err(invalid!("classic BHH NO instance must flip every label"));
                }
            }
        }
        Ok(Self {
            params,
            variant,
            case,
            x,
            m,
            w,
            z,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn m(&self) -> &Hypermatching {
        &self.m
    }

    pub fn w(&self) -> &BitVector {
        &self.w
    }

    /// Ground-truth noise; for verification only.
    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn bob_view(&self) -> BobView<'_> {
        BobView {
            m: &self.m,
            w: &self.w,
        }
    }
}

/// A bundle of `Q = 1/(2p)` classic BHH instances of random sizes, at most one
/// of which is a NO instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VbhhInstance {
    t: usize,
    p: Ratio,
    sizes: Vec<usize>,
    flipped: Option<usize>,
    subinstances: Vec<BhhInstance>,
    case: CaseTag,
}

impl VbhhInstance {
    /// `sizes[i]` is the hyperedge count of `subinstances[i]`.
    pub fn new(
        t: usize,
        p: Ratio,
        sizes: Vec<usize>,
        flipped: Option<usize>,
        subinstances: Vec<BhhInstance>,
    ) -> Result<Self> {
        if sizes.len() != subinstances.len() {
            return Err(invalid!("{} sizes for {} subinstances", sizes.len(), subinstances.len()));
        }
        if let Some(r) = flipped {
            if r >= sizes.len() {
                return Err(invalid!("flipped index {r} out of range"));
            }
        }
        for (i, (sub, &size)) in subinstances.iter().zip(&sizes).enumerate() {
            if sub.params().t != t || sub.m().len() != size || !sub.m().is_perfect() {
                return Err(invalid!("subinstance {i} does not have {size} hyperedges of arity {t}"));
            }
            let expected = if flipped == Some(i) { CaseTag::No } else { CaseTag::Yes };
            if sub.case() != expected {
                return Err(invalid!("subinstance {i} is {} but should be {expected}", sub.case()));
            }
        }
        let case = if flipped.is_some() { CaseTag::No } else { CaseTag::Yes };
        Ok(Self {
            t,
            p,
            sizes,
            flipped,
            subinstances,
            case,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn p(&self) -> Ratio {
        self.p
    }

    pub fn q(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn flipped_index(&self) -> Option<usize> {
        self.flipped
    }

    pub fn subinstances(&self) -> &[BhhInstance] {
        &self.subinstances
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    /// Total number of coordinates, `sum(t * S_i)`.
    pub fn total_coordinates(&self) -> usize {
        self.sizes.iter().map(|s| s * self.t).sum()
    }
}
