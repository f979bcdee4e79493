//! Monte-Carlo checks of the samplers against exact enumeration.

use std::collections::HashMap;

use bhm_core::samplers::{
    embed_vbhh_to_pbhh, sample_hypermatching, sample_noisy_bhh, sample_pbhh, sample_uniform_bits, sample_vbhh,
    sample_zpn, Embedding,
};
use bhm_core::{flip_count, CaseTag, Params, Ratio, Seed};
use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, Discrete};

fn r(s: &str) -> Ratio {
    s.parse().unwrap()
}

/// Exact weight distribution of Ber(p)^n conditioned on even weight, by
/// walking all 2^n strings.
fn zpn_weight_pmf(n: usize, p: f64) -> Vec<f64> {
    let mut pmf = vec![0.0; n + 1];
    for s in 0u32..(1 << n) {
        let w = s.count_ones() as usize;
        if w.is_multiple_of(2) {
            pmf[w] += p.powi(w as i32) * (1.0 - p).powi((n - w) as i32);
        }
    }
    let total: f64 = pmf.iter().sum();
    pmf.iter().map(|q| q / total).collect()
}

fn within_3_sigma(count: usize, draws: usize, prob: f64) -> bool {
    let mean = draws as f64 * prob;
    let sd = (draws as f64 * prob * (1.0 - prob)).sqrt();
    (count as f64 - mean).abs() <= 3.0 * sd + 1e-9
}

#[test]
fn single_bit_mean_is_half() {
    let draws = 100_000;
    let ones = (0..draws).filter(|&i| sample_uniform_bits(1, Seed(i)).unwrap()[0]).count();
    assert!((ones as f64 / draws as f64 - 0.5).abs() <= 0.01);
}

#[test]
fn k4_perfect_matchings_are_equally_likely() {
    let mut counts: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
    for i in 0..30_000 {
        let m = sample_hypermatching(4, 2, 2, Seed(i)).unwrap();
        *counts.entry(m.edges().to_vec()).or_default() += 1;
    }
    assert_eq!(counts.len(), 3);
    for &c in counts.values() {
        assert!((c as f64 / 30_000.0 - 1.0 / 3.0).abs() <= 0.01, "{counts:?}");
    }
}

#[test]
fn triples_of_six_are_equally_likely() {
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    for i in 0..100_000 {
        let m = sample_hypermatching(6, 3, 1, Seed(i)).unwrap();
        *counts.entry(m.edges()[0].clone()).or_default() += 1;
    }
    assert_eq!(counts.len(), 20);
    for &c in counts.values() {
        assert!((c as f64 / 100_000.0 - 0.05).abs() <= 0.005);
    }
}

#[test]
fn zpn_mean_weight_matches_enumeration() {
    let draws = 100_000;
    let pmf = zpn_weight_pmf(8, 0.25);
    let mean: f64 = pmf.iter().enumerate().map(|(w, q)| w as f64 * q).sum();
    let var: f64 = pmf.iter().enumerate().map(|(w, q)| (w as f64 - mean).powi(2) * q).sum();
    let mut total = 0usize;
    for i in 0..draws {
        let z = sample_zpn(8, r("1/4"), Seed(i)).unwrap();
        assert_eq!(z.weight() % 2, 0);
        total += z.weight();
    }
    let empirical = total as f64 / draws as f64;
    assert!((empirical - mean).abs() <= 3.0 * (var / draws as f64).sqrt(), "{empirical} vs {mean}");
}

#[test]
fn zpn_with_zero_p_is_all_zero() {
    for i in 0..50 {
        assert!(sample_zpn(13, Ratio::ZERO, Seed(i)).unwrap().is_zero());
    }
    assert!(sample_zpn(4, r("3/4"), Seed(0)).is_err());
}

#[test]
fn pbhh_flip_distribution_matches_enumeration() {
    let draws = 100_000;
    let pmf = zpn_weight_pmf(8, 0.25);
    let mut hist = [0usize; 9];
    for i in 0..draws {
        let inst = sample_pbhh(16, 2, r("1/4"), CaseTag::No, Seed(i as u64)).unwrap();
        hist[flip_count(&inst)] += 1;
    }
    for (w, &count) in hist.iter().enumerate() {
        assert!(within_3_sigma(count, draws, pmf[w]), "weight {w}: {count} vs {}", pmf[w] * draws as f64);
    }
}

#[test]
fn noisy_flip_mean_is_kp() {
    let params = Params::new(64, 2, r("1/4"), r("1/2")).unwrap();
    let draws = 10_000;
    let total: usize = (0..draws)
        .map(|i| flip_count(&sample_noisy_bhh(params, CaseTag::No, Seed(i)).unwrap()))
        .sum();
    let mean = total as f64 / draws as f64;
    let sd_of_mean = (16.0f64 * 0.25 * 0.75 / draws as f64).sqrt();
    assert!((mean - 4.0).abs() <= 3.0 * sd_of_mean, "mean flips {mean}");
}

/// Chi-square goodness of fit against Binomial(k, p), merging adjacent bins
/// until each expects at least 5 draws.
fn chi_square_binomial(params: Params, draws: u64) -> (f64, f64) {
    let k = params.k();
    let mut hist = vec![0u64; k + 1];
    for i in 0..draws {
        hist[flip_count(&sample_noisy_bhh(params, CaseTag::No, Seed(i)).unwrap())] += 1;
    }
    let binom = Binomial::new(params.p.as_f64(), k as u64).unwrap();
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut exp_acc, mut obs_acc) = (0.0, 0.0);
    for (w, &obs) in hist.iter().enumerate() {
        exp_acc += binom.pmf(w as u64) * draws as f64;
        obs_acc += obs as f64;
        if exp_acc >= 5.0 {
            bins.push((obs_acc, exp_acc));
            exp_acc = 0.0;
            obs_acc = 0.0;
        }
    }
    if let Some(last) = bins.last_mut() {
        last.0 += obs_acc;
        last.1 += exp_acc;
    }
    let stat: f64 = bins.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let critical = ChiSquared::new((bins.len() - 1) as f64).unwrap().inverse_cdf(0.999);
    (stat, critical)
}

#[test]
fn flip_counts_fit_binomial() {
    for (n, alpha, p) in [(64, "1/2", "1/4"), (64, "1", "1/2")] {
        let params = Params::new(n, 2, r(p), r(alpha)).unwrap();
        let (stat, critical) = chi_square_binomial(params, 10_000);
        assert!(stat < critical, "k = {}, p = {p}: chi2 {stat} >= {critical}", params.k());
    }
}

#[test]
fn embedding_preserves_labels() {
    let mut embedded = 0;
    for i in 0..300 {
        let case = if i % 2 == 0 { CaseTag::Yes } else { CaseTag::No };
        let v = sample_vbhh(64, 2, r("1/4"), case, Seed(i)).unwrap();
        let expected_flips: usize = v.subinstances().iter().map(flip_count).sum();
        match embed_vbhh_to_pbhh(&v, 64, Seed(1000 + i)).unwrap() {
            Embedding::Embedded(inst) => {
                embedded += 1;
                assert_eq!(inst.case(), v.case());
                assert!(inst.m().is_perfect());
                assert_eq!(flip_count(&inst), expected_flips);
            }
            Embedding::Overflow { required, available } => assert!(required > available),
        }
    }
    assert!(embedded > 200);
}

#[test]
fn vbhh_has_at_most_one_no_copy() {
    let mut empty_flipped = 0;
    for i in 0..500 {
        let v = sample_vbhh(32, 2, r("1/8"), CaseTag::No, Seed(i)).unwrap();
        assert_eq!(v.q(), 4);
        let r_idx = v.flipped_index().unwrap();
        for (j, sub) in v.subinstances().iter().enumerate() {
            assert_eq!(v.sizes()[j] % 2, 0);
            if j != r_idx {
                assert_eq!(flip_count(sub), 0);
            }
        }
        let flips = flip_count(&v.subinstances()[r_idx]);
        assert_eq!(flips, v.sizes()[r_idx]);
        if flips == 0 {
            empty_flipped += 1;
        }
    }
    // an empty flipped copy is legal, and not rare at this size
    println!("empty flipped copies: {empty_flipped}/500");
}
