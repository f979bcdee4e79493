//! The plain-text one-way protocol: Alice reveals `c` random coordinates of
//! her string, Bob checks every hyperedge that is fully revealed.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::samplers::sample_noisy_bhh;
use crate::{BitVector, CaseTag, Hypermatching, Params, Seed};

/// Alice's message: the revealed positions (strictly increasing) and the
/// bits of `x` at those positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolMessage {
    pub indices: Vec<usize>,
    pub bits: BitVector,
}

/// Reveals a uniform `c`-subset of coordinates.
///
/// The subset is the first `c` entries of a seeded uniform permutation, so
/// for a fixed seed the revealed sets are nested in `c`.
pub fn alice_message(x: &BitVector, c: usize, seed: Seed) -> Result<ProtocolMessage> {
    let n = x.len();
    if c > n {
        return Err(invalid!("cannot reveal {c} of {n} coordinates"));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut seed.rng());
    let mut indices = perm[..c].to_vec();
    indices.sort_unstable();
    let bits = indices.iter().map(|&i| x[i]).collect();
    Ok(ProtocolMessage { indices, bits })
}

/// Bob says NO iff some fully revealed hyperedge's label disagrees with the
/// revealed parity. No supported hyperedge means YES.
pub fn bob_decide(m: &Hypermatching, w: &BitVector, msg: &ProtocolMessage) -> Result<CaseTag> {
    if w.len() != m.len() {
        return Err(invalid!("{} labels for {} hyperedges", w.len(), m.len()));
    }
    if msg.indices.len() != msg.bits.len() {
        return Err(invalid!("message has {} indices but {} bits", msg.indices.len(), msg.bits.len()));
    }
    let mut revealed = alloc::vec![None; m.universe_size()];
    for (&i, bit) in msg.indices.iter().zip(msg.bits.iter()) {
        let slot = revealed
            .get_mut(i)
            .ok_or_else(|| invalid!("revealed index {i} outside universe"))?;
        *slot = Some(bit);
    }
    for (edge, label) in m.edges().iter().zip(w.iter()) {
        let parity = edge
            .iter()
            .try_fold(false, |acc, &v| revealed[v].map(|bit| acc ^ bit));
        if parity.is_some_and(|p| p != label) {
            return Ok(CaseTag::No);
        }
    }
    Ok(CaseTag::Yes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub case: CaseTag,
    pub decision: CaseTag,
}

impl TrialOutcome {
    pub fn correct(&self) -> bool {
        self.case == self.decision
    }
}

/// One end-to-end run on a p-noisy BHH instance with a uniform case prior.
///
/// Case, instance and revealed permutation depend only on `seed`, never on
/// `c`, so trials with a shared seed are coupled across message sizes.
pub fn run_trial_detailed(params: Params, c: usize, seed: Seed) -> Result<TrialOutcome> {
    if c > params.n {
        return Err(invalid!("cannot reveal {c} of {} coordinates", params.n));
    }
    let case = if seed.child("case").rng().gen::<bool>() {
        CaseTag::Yes
    } else {
        CaseTag::No
    };
    let inst = sample_noisy_bhh(params, case, seed.child("instance"))?;
    let msg = alice_message(inst.x(), c, seed.child("alice"))?;
    let bob = inst.bob_view();
    let decision = bob_decide(bob.m, bob.w, &msg)?;
    Ok(TrialOutcome { case, decision })
}

/// Whether one trial's decision matched its case.
pub fn run_trial(params: Params, c: usize, seed: Seed) -> Result<bool> {
    run_trial_detailed(params, c, seed).map(|o| o.correct())
}

/// `1 - exp(-(p * alpha * n / t) * (c / (e * n))^t)`, a lower bound on the
/// probability that Bob catches a NO instance. Zero when `c < t`.
///
/// Derivation: a hyperedge is fully revealed with probability
/// `C(c,t)/C(n,t) >= (c/(e n))^t`, which is asserted only for `t <= c <= n`.
pub fn analytic_detection_bound(params: &Params, c: usize) -> f64 {
    let (n, t) = (params.n as f64, params.t as i32);
    if c < params.t || params.n == 0 {
        return 0.0;
    }
    let edges = params.p.as_f64() * params.alpha.as_f64() * n / t as f64;
    let reveal = libm::pow(c as f64 / (core::f64::consts::E * n), t as f64);
    1.0 - libm::exp(-edges * reveal)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub c: usize,
    pub trials: usize,
    pub yes_trials: usize,
    /// Overall fraction of correct decisions.
    pub success: f64,
    /// Success conditioned on YES; NaN when no YES trial was drawn.
    pub success_yes: f64,
    /// Success conditioned on NO (the detection rate); NaN without NO trials.
    pub success_no: f64,
    pub analytic_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepReport {
    /// Sorted by `c`.
    pub rows: Vec<SweepRow>,
}

/// Tallies outcomes for one message size into a report row.
pub fn summarize(params: &Params, c: usize, outcomes: &[TrialOutcome]) -> SweepRow {
    let rate = |num: usize, den: usize| if den == 0 { f64::NAN } else { num as f64 / den as f64 };
    let yes = outcomes.iter().filter(|o| o.case == CaseTag::Yes);
    let yes_trials = yes.clone().count();
    let yes_correct = yes.filter(|o| o.correct()).count();
    let correct = outcomes.iter().filter(|o| o.correct()).count();
    let no_trials = outcomes.len() - yes_trials;
    SweepRow {
        c,
        trials: outcomes.len(),
        yes_trials,
        success: rate(correct, outcomes.len()),
        success_yes: rate(yes_correct, yes_trials),
        success_no: rate(correct - yes_correct, no_trials),
        analytic_bound: analytic_detection_bound(params, c),
    }
}

/// Runs `trials` coupled trials for every `c`. Trial `i` uses seed
/// `seed.derive(i, "trial")` regardless of `c`.
pub fn success_sweep(params: Params, c_values: &[usize], trials: usize, seed: Seed) -> Result<SweepReport> {
    if trials == 0 {
        return Err(invalid!("a sweep needs at least one trial"));
    }
    let mut cs = c_values.to_vec();
    cs.sort_unstable();
    cs.dedup();
    let rows = cs
        .into_iter()
        .map(|c| {
            let outcomes = (0..trials)
                .map(|i| run_trial_detailed(params, c, trial_seed(seed, i)))
                .collect::<Result<Vec<_>>>()?;
            Ok(summarize(&params, c, &outcomes))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { rows })
}

pub fn trial_seed(seed: Seed, trial: usize) -> Seed {
    seed.derive(trial as u64, "trial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::{sample_noisy_bhh, sample_uniform_bits};
    use crate::flip_count;
    use alloc::vec;

    fn params(n: usize, t: usize, p: &str, alpha: &str) -> Params {
        Params::new(n, t, p.parse().unwrap(), alpha.parse().unwrap()).unwrap()
    }

    #[test]
    fn message_edge_cases() {
        let x = sample_uniform_bits(10, Seed(1)).unwrap();
        let full = alice_message(&x, 10, Seed(2)).unwrap();
        assert_eq!(full.indices, (0..10).collect::<Vec<_>>());
        assert_eq!(full.bits, x);
        let empty = alice_message(&x, 0, Seed(2)).unwrap();
        assert!(empty.indices.is_empty() && empty.bits.is_empty());
        assert!(alice_message(&x, 11, Seed(2)).is_err());
        let part = alice_message(&x, 4, Seed(3)).unwrap();
        for (&i, b) in part.indices.iter().zip(part.bits.iter()) {
            assert_eq!(x[i], b);
        }
    }

    #[test]
    fn revealed_sets_are_nested_in_c() {
        let x = sample_uniform_bits(50, Seed(1)).unwrap();
        let small = alice_message(&x, 10, Seed(4)).unwrap();
        let large = alice_message(&x, 30, Seed(4)).unwrap();
        assert!(small.indices.iter().all(|i| large.indices.contains(i)));
    }

    #[test]
    fn bob_on_full_reveal() {
        let p = params(40, 2, "1/2", "1/2");
        for s in 0..30 {
            let yes = sample_noisy_bhh(p, CaseTag::Yes, Seed(s)).unwrap();
            let msg = alice_message(yes.x(), 40, Seed(s)).unwrap();
            assert_eq!(bob_decide(yes.m(), yes.w(), &msg).unwrap(), CaseTag::Yes);
            let no = sample_noisy_bhh(p, CaseTag::No, Seed(s)).unwrap();
            let msg = alice_message(no.x(), 40, Seed(s)).unwrap();
            let expected = if flip_count(&no) > 0 { CaseTag::No } else { CaseTag::Yes };
            assert_eq!(bob_decide(no.m(), no.w(), &msg).unwrap(), expected);
        }
    }

    #[test]
    fn bob_is_vacuous_below_arity() {
        let p = params(30, 3, "1", "1");
        let no = sample_noisy_bhh(p, CaseTag::No, Seed(8)).unwrap();
        let msg = alice_message(no.x(), 2, Seed(8)).unwrap();
        assert_eq!(bob_decide(no.m(), no.w(), &msg).unwrap(), CaseTag::Yes);
        assert!(bob_decide(no.m(), &BitVector::zeros(3), &msg).is_err());
    }

    #[test]
    fn analytic_bound_shape() {
        let p = params(2048, 2, "1/4", "1/2");
        assert!(analytic_detection_bound(&p, 2) < 1e-4);
        assert_eq!(analytic_detection_bound(&p, 1), 0.0);
        let mut last = 0.0;
        for c in 2..=2048 {
            let b = analytic_detection_bound(&p, c);
            assert!(b >= last);
            last = b;
        }
        assert!(analytic_detection_bound(&p, 852) >= 0.93);
    }

    #[test]
    fn zero_noise_gives_coin_flip_success() {
        let p = params(64, 2, "0", "1/2");
        let report = success_sweep(p, &[64], 4000, Seed(3)).unwrap();
        let row = &report.rows[0];
        assert_eq!(row.success_yes, 1.0);
        assert_eq!(row.success_no, 0.0);
        // 3 sigma of Binomial(4000, 1/2)
        assert!((row.success - 0.5).abs() <= 3.0 * (0.25f64 / 4000.0).sqrt());
    }

    #[test]
    fn full_reveal_with_certain_noise_always_wins() {
        let p = params(32, 2, "1", "1/2");
        for s in 0..200 {
            assert!(run_trial(p, 32, Seed(s)).unwrap());
        }
        assert!(run_trial(p, 33, Seed(0)).is_err());
    }

    #[test]
    fn sweep_rows_sorted_and_monotone_under_coupling() {
        let p = params(256, 2, "1/4", "1/2");
        let report = success_sweep(p, &[128, 16, 64, 256, 64], 300, Seed(21)).unwrap();
        let cs: Vec<usize> = report.rows.iter().map(|r| r.c).collect();
        assert_eq!(cs, vec![16, 64, 128, 256]);
        for pair in report.rows.windows(2) {
            assert!(pair[0].success <= pair[1].success);
        }
        assert!(success_sweep(p, &[4], 0, Seed(0)).is_err());
    }
}
