//! Parallel trial runners: protocol sweeps and reduction gap experiments.
//!
//! Every trial draws its randomness from a seed derived from the master seed
//! and the trial index, so results do not depend on the worker count.

use std::fmt;
use std::str::FromStr;

use bhm_core::oracles::{
    cycle_space_dimension, epsilon_far_lower_bound, exact_mas, exact_max_matching, exact_maxcut,
    is_complete_binary_tree, OracleLimits,
};
use bhm_core::protocol::{run_trial_detailed, summarize, trial_seed, SweepReport};
use bhm_core::reductions::{reduce_mas, reduce_matching, reduce_maxcut, reduce_tree, ReductionOutput};
use bhm_core::samplers::{sample_noisy_bhh, sample_pbhh};
use bhm_core::{BhhInstance, CaseTag, GraphStream, Params, Seed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Maxcut,
    Matching,
    Mas,
    Tree,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Maxcut => "maxcut",
            Problem::Matching => "matching",
            Problem::Mas => "mas",
            Problem::Tree => "tree",
        })
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "maxcut" => Ok(Problem::Maxcut),
            "matching" => Ok(Problem::Matching),
            "mas" => Ok(Problem::Mas),
            "tree" => Ok(Problem::Tree),
            other => Err(format!("unknown problem {other:?}")),
        }
    }
}

impl Problem {
    /// The distribution each reduction is fed: PBHH for trees, p-noisy BHH
    /// otherwise.
    pub fn sample(self, params: Params, case: CaseTag, seed: Seed) -> bhm_core::Result<BhhInstance> {
        match self {
            Problem::Tree => sample_pbhh(params.n, params.t, params.p, case, seed),
            _ => sample_noisy_bhh(params, case, seed),
        }
    }

    pub fn reduce(self, inst: &BhhInstance) -> bhm_core::Result<ReductionOutput> {
        match self {
            Problem::Maxcut => reduce_maxcut(inst),
            Problem::Matching => reduce_matching(inst),
            Problem::Mas => reduce_mas(inst),
            Problem::Tree => reduce_tree(inst),
        }
    }

    pub fn limits(self) -> OracleLimits {
        match self {
            Problem::Mas => OracleLimits::mas(),
            _ => OracleLimits::default(),
        }
    }

    /// Exact oracle value; for trees, the cycle-space dimension together with
    /// the complete-binary-tree verdict.
    pub fn solve(self, g: &GraphStream) -> bhm_core::Result<Solution> {
        let limits = self.limits();
        Ok(match self {
            Problem::Maxcut => Solution::value(exact_maxcut(g, &limits)?),
            Problem::Matching => Solution::value(exact_max_matching(g, &limits)?),
            Problem::Mas => Solution::value(exact_mas(g, &limits)?),
            Problem::Tree => Solution {
                value: cycle_space_dimension(g) as u64,
                iso: Some(is_complete_binary_tree(g)),
                epsilon: Some(epsilon_far_lower_bound(g)),
            },
        })
    }

    /// Ratio the theorems guarantee between the YES and NO optima, or for
    /// trees the distance `epsilon / 16` with `epsilon = p`.
    pub fn threshold(self, params: &Params) -> f64 {
        let (p, t) = (params.p.as_f64(), params.t as f64);
        match self {
            Problem::Maxcut => 1.0 + p / (14.0 * t),
            Problem::Matching => 1.0 + p / (6.0 * t),
            Problem::Mas => 1.0 + p / 22.0,
            Problem::Tree => p / 16.0,
        }
    }

    /// Whether `p` lies in the range the threshold is proved for.
    pub fn in_regime(self, params: &Params) -> bool {
        let p = params.p;
        let (n, t) = (params.n as u64, params.t as u64);
        let half = p.num() * 2 <= p.den();
        half && match self {
            Problem::Maxcut | Problem::Matching => p.num() * n >= 128 * t * p.den(),
            // n here counts matching vertices, half the universe
            Problem::Mas => p.num() * n >= 256 * p.den(),
            Problem::Tree => p.num() * n >= 1024 * p.den(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution {
    pub value: u64,
    pub iso: Option<bool>,
    pub epsilon: Option<f64>,
}

impl Solution {
    fn value(value: u64) -> Self {
        Self {
            value,
            iso: None,
            epsilon: None,
        }
    }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

/// Parallel version of [`bhm_core::protocol::success_sweep`] with identical
/// output.
pub fn run_sweep(params: Params, c_values: &[usize], trials: usize, seed: Seed, jobs: usize) -> bhm_core::Result<SweepReport> {
    if trials == 0 {
        return Err(bhm_core::Error::InvalidArgument("a sweep needs at least one trial".into()));
    }
    let mut cs = c_values.to_vec();
    cs.sort_unstable();
    cs.dedup();
    let rows = pool(jobs).install(|| {
        cs.iter()
            .map(|&c| {
                let outcomes = (0..trials)
                    .into_par_iter()
                    .map(|i| run_trial_detailed(params, c, trial_seed(seed, i)))
                    .collect::<bhm_core::Result<Vec<_>>>()?;
                Ok(summarize(&params, c, &outcomes))
            })
            .collect::<bhm_core::Result<Vec<_>>>()
    })?;
    Ok(SweepReport { rows })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub trial: usize,
    pub case: String,
    pub flip_count: usize,
    pub predicted_optimum: u64,
    pub oracle_optimum: u64,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Whether this NO trial clears the threshold; always false for YES rows.
    pub meets_threshold: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSummary {
    pub problem: String,
    pub trials: usize,
    pub yes_mean: f64,
    pub no_mean: f64,
    /// YES/NO mean optimum (NO/YES for MAS); mean distance for trees.
    pub ratio: f64,
    pub theorem_threshold: f64,
    /// Fraction of NO trials clearing the threshold.
    pub no_pass_fraction: f64,
    pub all_match: bool,
    pub in_regime: bool,
    pub pass: bool,
}

impl fmt::Display for GapSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} trials={} yes_mean={:.4} no_mean={:.4} ratio={:.6} threshold={:.6} no_pass={:.3} all_match={} in_regime={} {}",
            self.problem,
            self.trials,
            self.yes_mean,
            self.no_mean,
            self.ratio,
            self.theorem_threshold,
            self.no_pass_fraction,
            self.all_match,
            self.in_regime,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    /// YES and NO row of trial 0, then trial 1, and so on.
    pub rows: Vec<GapRow>,
    pub summary: GapSummary,
}

struct Solved {
    out: ReductionOutput,
    sol: Solution,
}

fn solve_case(problem: Problem, params: Params, case: CaseTag, seed: Seed) -> bhm_core::Result<Solved> {
    let inst = problem.sample(params, case, seed)?;
    let out = problem.reduce(&inst)?;
    let sol = problem.solve(&out.stream)?;
    Ok(Solved { out, sol })
}

fn row(trial: usize, case: CaseTag, s: &Solved, meets_threshold: bool) -> GapRow {
    let iso_ok = s.sol.iso.is_none_or(|iso| iso == (s.out.flip_count == 0));
    GapRow {
        trial,
        case: case.to_string(),
        flip_count: s.out.flip_count,
        predicted_optimum: s.out.predicted_optimum,
        oracle_optimum: s.sol.value,
        matches: s.sol.value == s.out.predicted_optimum && iso_ok,
        meets_threshold,
    }
}

/// Runs `trials` paired YES/NO trials. A NO trial clears the threshold when
/// its optimum, compared with the paired YES optimum, shows the theorem's
/// gap (for trees: when its certified distance reaches `p/16`). The run
/// passes when every oracle value equals its prediction and at least 95% of
/// NO trials clear the threshold.
pub fn run_gap(problem: Problem, params: Params, trials: usize, seed: Seed, jobs: usize) -> bhm_core::Result<GapReport> {
    if trials == 0 {
        return Err(bhm_core::Error::InvalidArgument("a gap run needs at least one trial".into()));
    }
    let threshold = problem.threshold(&params);
    let pairs = pool(jobs).install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let s = trial_seed(seed, i);
                let yes = solve_case(problem, params, CaseTag::Yes, s.child("yes"))?;
                let no = solve_case(problem, params, CaseTag::No, s.child("no"))?;
                let (y, n) = (yes.sol.value as f64, no.sol.value as f64);
                let meets = match problem {
                    Problem::Maxcut | Problem::Matching => y >= threshold * n,
                    Problem::Mas => n >= threshold * y,
                    Problem::Tree => no.sol.epsilon.unwrap_or(0.0) >= threshold,
                };
                Ok((row(i, CaseTag::Yes, &yes, false), row(i, CaseTag::No, &no, meets), no.sol.epsilon))
            })
            .collect::<bhm_core::Result<Vec<_>>>()
    })?;

    let mean = |xs: &mut dyn Iterator<Item = f64>| xs.sum::<f64>() / trials as f64;
    let yes_mean = mean(&mut pairs.iter().map(|(y, _, _)| y.oracle_optimum as f64));
    let no_mean = mean(&mut pairs.iter().map(|(_, n, _)| n.oracle_optimum as f64));
    let ratio = match problem {
        Problem::Maxcut | Problem::Matching => yes_mean / no_mean,
        Problem::Mas => no_mean / yes_mean,
        Problem::Tree => mean(&mut pairs.iter().map(|(_, _, e)| e.unwrap_or(0.0))),
    };
    let no_pass_fraction = pairs.iter().filter(|(_, n, _)| n.meets_threshold).count() as f64 / trials as f64;
    let rows: Vec<GapRow> = pairs.into_iter().flat_map(|(y, n, _)| [y, n]).collect();
    let all_match = rows.iter().all(|r| r.matches);
    let summary = GapSummary {
        problem: problem.to_string(),
        trials,
        yes_mean,
        no_mean,
        ratio,
        theorem_threshold: threshold,
        no_pass_fraction,
        all_match,
        in_regime: problem.in_regime(&params),
        pass: all_match && no_pass_fraction >= 0.95,
    };
    Ok(GapReport { rows, summary })
}

pub fn write_gap_csv<W: std::io::Write>(report: &GapReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in &report.rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
