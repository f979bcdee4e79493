//! `noisy-bhm-lab` command line.
//!
//! Exit status: 0 pass, 1 verification mismatch (or a failed gap run or an
//! embedding overflow), 2 usage, parse or precondition error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use bhm_core::reductions::{shuffle_stream, OrderPolicy};
use bhm_core::samplers::{embed_vbhh_to_pbhh, sample_classic_bhh, sample_noisy_bhh, sample_pbhh, sample_vbhh, Embedding};
use bhm_core::{flip_count, BhhInstance, CaseTag, Params, Ratio, Seed};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::experiments::{run_gap, run_sweep, write_gap_csv, Problem};
use crate::streamio::{parse_instance, parse_stream, serialize_instance, serialize_stream, write_sweep_csv, StreamMetadata};

#[derive(Debug, Parser)]
#[command(
    name = "noisy-bhm-lab",
    version,
    about = "Noisy Boolean hidden hypermatching laboratory",
    args_conflicts_with_subcommands = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Replay a run from a `<out>.config.toml` file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// One run; also the on-disk experiment config.
#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Sample an instance file.
    Sample(SampleArgs),
    /// Protocol success sweep over message sizes.
    Sweep(SweepArgs),
    /// Compile an instance into a gadget edge stream.
    Reduce(ReduceArgs),
    /// Solve a stream exactly and compare with an expected optimum.
    Verify(VerifyArgs),
    /// Paired YES/NO gap experiment.
    Gap(GapArgs),
    /// Sample a multi-copy instance and embed it into a perfect one.
    Embed(EmbedArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Bhh,
    Pbhh,
    Classic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseArg {
    Yes,
    No,
}

impl From<CaseArg> for CaseTag {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Yes => CaseTag::Yes,
            CaseArg::No => CaseTag::No,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderArg {
    AliceThenBob,
    UniformShuffle,
}

impl From<OrderArg> for OrderPolicy {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::AliceThenBob => OrderPolicy::AliceThenBob,
            OrderArg::UniformShuffle => OrderPolicy::UniformShuffle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    /// Noise rate as `num/den`.
    #[arg(long, default_value = "1/2")]
    pub p: String,
    /// Covered fraction as `num/den`.
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
}

impl ParamArgs {
    fn ratios(&self) -> anyhow::Result<(Ratio, Ratio)> {
        Ok((self.p.parse()?, self.alpha.parse()?))
    }

    fn params(&self) -> anyhow::Result<Params> {
        let (p, alpha) = self.ratios()?;
        Ok(Params::new(self.n, self.t, p, alpha)?)
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SampleArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value = "yes")]
    pub case: CaseArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 0)]
    pub c_min: usize,
    /// Defaults to n.
    #[arg(long)]
    pub c_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub step: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    /// Instance file; without it an instance is sampled from the flags below.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long, default_value = "1/2")]
    pub p: String,
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
    #[arg(long, value_enum, default_value = "yes")]
    pub case: CaseArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "alice-then-bob")]
    pub order: OrderArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    pub stream: PathBuf,
    #[arg(long)]
    pub expected: Option<u64>,
    /// Take the expected value from a reduction metadata file.
    #[arg(long, conflicts_with = "expected")]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GapArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EmbedArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long, default_value = "1/4")]
    pub p: String,
    #[arg(long, value_enum, default_value = "yes")]
    pub case: CaseArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Mismatch,
}

impl Command {
    fn out(&self) -> Option<&Path> {
        match self {
            Command::Sample(a) => a.out.as_deref(),
            Command::Sweep(a) => a.out.as_deref(),
            Command::Reduce(a) => a.out.as_deref(),
            Command::Gap(a) => a.out.as_deref(),
            Command::Embed(a) => a.out.as_deref(),
            Command::Verify(_) => None,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is plain data")
    }

    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        Ok(toml::from_str(text)?)
    }
}

fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Executes one command, writing human output to `stdout`.
pub fn execute(cmd: &Command, stdout: &mut dyn Write) -> anyhow::Result<Status> {
    if let Some(out) = cmd.out() {
        let path = sidecar(out, ".config.toml");
        fs::write(&path, cmd.to_toml()).with_context(|| format!("writing {}", path.display()))?;
    }
    match cmd {
        Command::Sample(a) => sample(a, stdout),
        Command::Sweep(a) => sweep(a, stdout),
        Command::Reduce(a) => reduce(a, stdout),
        Command::Verify(a) => verify(a, stdout),
        Command::Gap(a) => gap(a, stdout),
        Command::Embed(a) => embed(a, stdout),
    }
}

fn sample(a: &SampleArgs, stdout: &mut dyn Write) -> anyhow::Result<Status> {
    let case = a.case.into();
    let seed = Seed(a.seed);
    let (p, _) = a.params.ratios()?;
    let inst = match a.kind {
        Kind::Bhh => sample_noisy_bhh(a.params.params()?, case, seed)?,
        Kind::Pbhh => sample_pbhh(a.params.n, a.params.t, p, case, seed)?,
        Kind::Classic => sample_classic_bhh(a.params.n, a.params.t, case, seed)?,
    };
    emit(a.out.as_deref(), &serialize_instance(&inst), stdout)?;
    if a.out.is_some() {
        writeln!(stdout, "k {} flip_count {}", inst.m().len(), flip_count(&inst))?;
    }
    Ok(Status::Pass)
}

fn sweep(a: &SweepArgs, stdout: &mut dyn Write) -> anyhow::Result<Status> {
    let params = a.params.params()?;
    let c_max = a.c_max.unwrap_or(params.n);
    if a.step == 0 || a.c_min > c_max || c_max > params.n {
        bail!("need 0 <= c-min <= c-max <= n and step >= 1");
    }
    let cs: Vec<usize> = (a.c_min..=c_max).step_by(a.step).collect();
    let report = run_sweep(params, &cs, a.trials, Seed(a.seed), a.jobs.max(1))?;
    let mut csv = Vec::new();
    write_sweep_csv(&report, &mut csv)?;
    emit(a.out.as_deref(), std::str::from_utf8(&csv)?, stdout)?;
    if let Some(last) = report.rows.last() {
        writeln!(
            stdout,
            "sweep rows {} final c {} success {:.4} bound {:.4}",
            report.rows.len(),
            last.c,
            last.success,
            last.analytic_bound
        )?;
    }
    Ok(Status::Pass)
}

fn reduce(a: &ReduceArgs, stdout: &mut dyn Write) -> anyhow::Result<Status> {
    let (inst, seed): (BhhInstance, Option<u64>) = match &a.instance {
        Some(path) => (parse_instance(&read(path)?).with_context(|| path.display().to_string())?, None),
        None => {
            let Some(n) = a.n else {
                bail!("give --instance or --n");
            };
            let params = Params::new(n, a.t, a.p.parse()?, a.alpha.parse()?)?;
            (a.problem.sample(params, a.case.into(), Seed(a.seed))?, Some(a.seed))
        }
    };
    let out = a.problem.reduce(&inst)?;
    let order: OrderPolicy = a.order.into();
    let stream = shuffle_stream(&out.stream, order, Seed(a.seed).child("order"));
    let meta = StreamMetadata::new(&a.problem.to_string(), &inst, &out, &order.to_string(), seed);
    emit(a.out.as_deref(), &serialize_stream(&stream), stdout)?;
    if let Some(path) = &a.out {
        fs::write(sidecar(path, ".meta.toml"), meta.to_toml())?;
        writeln!(
            stdout,
            "{} predicted {} flip_count {}",
            meta.formula, meta.predicted_optimum, meta.flip_count
        )?;
    }
    Ok(Status::Pass)
}

fn verify(a: &VerifyArgs, stdout: &mut dyn Write) -> anyhow::Result<Status> {
    let stream = parse_stream(&read(&a.stream)?).with_context(|| a.stream.display().to_string())?;
    let expected = match (&a.meta, a.expected) {
        (Some(path), _) => Some(StreamMetadata::from_toml(&read(path)?)?.predicted_optimum),
        (None, e) => e,
    };
    let sol = a.problem.solve(&stream)?;
    let mut ok = expected.is_none_or(|e| e == sol.value);
    match sol.iso {
        Some(iso) => {
            write!(stdout, "ISO {iso}, cycles {}", sol.value)?;
            ok &= iso == (sol.value == 0);
        }
        None => write!(stdout, "OPT {}", sol.value)?,
    }
    if let Some(e) = expected {
        write!(stdout, " expected {e}")?;
    }
    writeln!(stdout, " {}", if ok { "match" } else { "MISMATCH" })?;
    Ok(if ok { Status::Pass } else { Status::Mismatch })
}

fn gap(a: &GapArgs, stdout: &mut dyn Write) -> anyhow::Result<Status> {
    let params = a.params.params()?;
    let report = run_gap(a.problem, params, a.trials, Seed(a.seed), a.jobs.max(1))?;
    let mut csv = Vec::new();
    write_gap_csv(&report, &mut csv)?;
    emit(a.out.as_deref(), std::str::from_utf8(&csv)?, stdout)?;
    if let Some(out) = &a.out {
        fs::write(sidecar(out, ".summary.toml"), toml::to_string(&report.summary)?)?;
    }
    writeln!(stdout, "{}", report.summary)?;
    Ok(if report.summary.pass { Status::Pass } else { Status::Mismatch })
}

fn embed(a: &EmbedArgs, stdout: &mut dyn Write) -> anyhow::Result<Status> {
    let seed = Seed(a.seed);
    let v = sample_vbhh(a.n, a.t, a.p.parse()?, a.case.into(), seed.child("bundle"))?;
    match embed_vbhh_to_pbhh(&v, a.n, seed.child("embed"))? {
        Embedding::Embedded(inst) => {
            emit(a.out.as_deref(), &serialize_instance(&inst), stdout)?;
            if a.out.is_some() {
                writeln!(
                    stdout,
                    "copies {} sizes {:?} variant {} flip_count {}",
                    v.q(),
                    v.sizes(),
                    inst.variant(),
                    flip_count(&inst)
                )?;
            }
            Ok(Status::Pass)
        }
        Embedding::Overflow { required, available } => {
            writeln!(stdout, "OVERFLOW required {required} available {available}")?;
            Ok(Status::Mismatch)
        }
    }
}

/// Parses arguments, runs, and maps the outcome to an exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let cmd = match (cli.command, cli.config) {
        (Some(cmd), None) => Ok(cmd),
        (None, Some(path)) => read(&path).and_then(|text| Command::from_toml(&text)),
        _ => {
            let _ = writeln!(stderr, "error: give a subcommand or --config");
            return 2;
        }
    };
    match cmd.and_then(|cmd| execute(&cmd, stdout)) {
        Ok(Status::Pass) => 0,
        Ok(Status::Mismatch) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}
