use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Master or derived seed. Identical seed and parameters give bit-identical
/// output from every sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Seed(pub u64);

// splitmix64 finalizer
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

// FNV-1a over the label bytes
fn label_hash(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

impl Seed {
    /// Child seed for `(index, label)`.
    ///
    /// `mix(mix(seed ^ mix(label_hash)) ^ index)` where `mix` is the
    /// splitmix64 finalizer and `label_hash` is 64-bit FNV-1a. Depends only on
    /// its inputs, so trials can be scheduled on any worker in any order.
    pub fn derive(self, index: u64, label: &str) -> Seed {
        Seed(mix(mix(self.0 ^ mix(label_hash(label))) ^ index))
    }

    pub fn child(self, label: &str) -> Seed {
        self.derive(0, label)
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}
