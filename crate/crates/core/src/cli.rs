//! The `lorenz` command line: JSON in, JSON out.
//!
//! Inputs are inline JSON when the argument starts with `{` or `[`, and file
//! paths otherwise. Exit codes: 0 success or PASS, 1 verification failure,
//! 2 invalid input, 3 a check skipped for size.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::braid::expand_tlink;
use crate::invariant::{
    equivalence_evidence, satellite_alexander_check, Caps, CheckVerdict, EquivalenceReport,
    Evidence, SatelliteCheck,
};
use crate::satellite::{
    classify_augmented, classify_spec, counterexample_family, match_full_twist, match_no_twist,
    FamilyMember, SatelliteCertificate,
};
use crate::suite::{self, Family, Ranges};
use crate::tlink::{AugmentedSpec, TLinkSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Failure = 1,
    Invalid = 2,
    Skipped = 3,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }

    fn worst(self, other: Exit) -> Exit {
        let rank = |e: Exit| match e {
            Exit::Success => 0,
            Exit::Skipped => 1,
            Exit::Failure => 2,
            Exit::Invalid => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lorenz", version, about = "T-links, satellite certificates and invariant checks")]
pub struct Cli {
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest crossing count for the bracket state sum.
    #[arg(long, global = true)]
    pub cap_crossings: Option<usize>,
    /// Largest strand count for Alexander polynomials.
    #[arg(long, global = true)]
    pub cap_strands: Option<usize>,
    /// Worker threads for batch verification.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a spec into its braid word, e.g. `s1 s2 s1`.
    Expand { spec: String },
    /// Merge equal neighbours, then absorb a pair with r = q when that is allowed.
    Normalize { spec: String },
    /// Swap the final pair of a spec whose interior is full twists.
    Dual { spec: String },
    /// Find a satellite certificate.
    Decompose { spec: String },
    /// Classify a spec or an augmented spec.
    Classify { input: String },
    /// Check a certificate, or compare two specs.
    Verify { input: String, second: Option<String> },
    /// Stream certificates for a parameter range, one JSON object per line.
    Enumerate {
        ranges: String,
        /// Run the Alexander check on each certificate.
        #[arg(long)]
        verify: bool,
    },
    /// The family T((2,2c),(6,12),(9,18),(11,3)).
    Family { c: u64 },
    /// Run a seeded random suite, one JSON object per instance.
    Suite {
        kind: SuiteKind,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteKind {
    Duality,
    Reduction,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub caps: Caps,
    pub parallelism: usize,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Self {
        let mut caps = Caps::default();
        if let Some(c) = cli.cap_crossings {
            caps.bracket_crossings = c;
        }
        if let Some(s) = cli.cap_strands {
            caps.alexander_strands = s;
        }
        Self {
            seed: cli.seed,
            caps,
            parallelism: cli.jobs.unwrap_or_else(rayon::current_num_threads).max(1),
            output_path: cli.out.clone(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { Exit::Invalid } else { Exit::Success };
        }
    };
    let config = RunConfig::from_cli(&cli);
    let result = match &config.output_path {
        Some(path) => fs::File::create(path)
            .with_context(|| format!("cannot create {}", path.display()))
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                let exit = execute(&cli.command, &config, &mut w, stderr)?;
                w.flush()?;
                Ok(exit)
            }),
        None => execute(&cli.command, &config, stdout, stderr),
    };
    match result {
        Ok(exit) => exit,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            Exit::Invalid
        }
    }
}

fn read_json(arg: &str) -> anyhow::Result<Value> {
    let text = if arg.starts_with('{') || arg.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("invalid JSON in {arg}"))
}

fn parse_spec_value(v: Value) -> anyhow::Result<TLinkSpec> {
    let raw: TLinkSpec = serde_json::from_value(v).context("expected {\"pairs\": [[r,s],...]}")?;
    Ok(TLinkSpec::new(raw.pairs().to_vec())?)
}

fn parse_spec(arg: &str) -> anyhow::Result<TLinkSpec> {
    parse_spec_value(read_json(arg)?)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn check_exit(verdict: CheckVerdict) -> Exit {
    match verdict {
        CheckVerdict::Pass => Exit::Success,
        CheckVerdict::Fail => Exit::Failure,
        CheckVerdict::Skipped => Exit::Skipped,
    }
}

fn evidence_exit(report: &EquivalenceReport) -> Exit {
    match report.verdict {
        Evidence::Inconsistent => Exit::Failure,
        Evidence::Consistent if report.alexander.iter().any(Option::is_none) => Exit::Skipped,
        Evidence::Consistent => Exit::Success,
    }
}

fn execute(
    command: &Command,
    config: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<Exit> {
    match command {
        Command::Expand { spec } => {
            let raw: TLinkSpec = serde_json::from_value(read_json(spec)?)
                .context("expected {\"pairs\": [[r,s],...]}")?;
            let word = expand_tlink(raw.pairs())?;
            writeln!(out, "{}", word.tokens())?;
            Ok(Exit::Success)
        }
        Command::Normalize { spec } => {
            let merged = parse_spec(spec)?;
            let normalized = match merged.omit_rq() {
                Ok(reduced) => reduced,
                Err(e) => {
                    writeln!(err, "note: r = q pair kept ({e})")?;
                    merged
                }
            };
            emit(out, &normalized)?;
            Ok(Exit::Success)
        }
        Command::Dual { spec } => {
            emit(out, &parse_spec(spec)?.bk_dual()?)?;
            Ok(Exit::Success)
        }
        Command::Decompose { spec } => {
            let spec = parse_spec(spec)?;
            let reduced = spec.omit_rq().unwrap_or_else(|_| spec.clone());
            let full_twist = match_full_twist(&spec).or_else(|e| match_full_twist(&reduced).map_err(|_| e));
            let cert = match full_twist {
                Ok(params) => Ok(params.certificate()?),
                Err(reason) => match match_no_twist(&spec) {
                    Ok(params) => Ok(params.certificate()?),
                    Err(_) => Err(reason),
                },
            };
            match cert {
                Ok(cert) => emit(out, &cert)?,
                Err(reason) => writeln!(out, "no match: {reason}")?,
            }
            Ok(Exit::Success)
        }
        Command::Classify { input } => {
            let v = read_json(input)?;
            let classification = if v.get("circles").is_some() {
                let aug: AugmentedSpec = serde_json::from_value(v)
                    .context("expected {\"p\":..,\"q\":..,\"circles\":[[a,b],...]}")?;
                classify_augmented(&aug)?
            } else {
                classify_spec(&parse_spec_value(v)?)?
            };
            emit(out, &classification)?;
            Ok(Exit::Success)
        }
        Command::Verify { input, second } => {
            let first = read_json(input)?;
            let specs = match (second, first) {
                (Some(b), a) => [parse_spec_value(a)?, parse_spec(b)?],
                (None, Value::Array(items)) => {
                    let [a, b]: [Value; 2] = items
                        .try_into()
                        .map_err(|_| anyhow!("expected an array of exactly two specs"))?;
                    [parse_spec_value(a)?, parse_spec_value(b)?]
                }
                (None, v) if v.get("companion").is_some() => {
                    let cert: SatelliteCertificate =
                        serde_json::from_value(v).context("malformed certificate")?;
                    let check = satellite_alexander_check(&cert, &config.caps);
                    emit(out, &check)?;
                    return Ok(check_exit(check.verdict));
                }
                (None, _) => bail!("expected a certificate, an array of two specs, or two specs"),
            };
            let report = equivalence_evidence(&specs[0], &specs[1], &config.caps);
            emit(out, &report)?;
            Ok(evidence_exit(&report))
        }
        Command::Enumerate { ranges, verify } => {
            let ranges: Ranges =
                serde_json::from_value(read_json(ranges)?).context("malformed ranges")?;
            enumerate(&ranges, *verify, config, out)
        }
        Command::Family { c } => {
            let record = family_record(*c, &config.caps)?;
            emit(out, &record)?;
            Ok(record.exit())
        }
        Command::Suite { kind, count } => run_suite(*kind, *count, config, out),
    }
}

#[derive(Serialize)]
struct EnumeratedLine<'a> {
    family: Family,
    index: usize,
    certificate: &'a SatelliteCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<&'a SatelliteCheck>,
    /// Verdict with the winding replaced by `winding + 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    control: Option<CheckVerdict>,
}

fn thread_pool(jobs: usize) -> anyhow::Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?)
}

fn enumerate(
    ranges: &Ranges,
    verify: bool,
    config: &RunConfig,
    out: &mut dyn Write,
) -> anyhow::Result<Exit> {
    let family = ranges.family();
    let certificates = ranges.certificates()?;
    let pool = thread_pool(config.parallelism)?;
    let chunk = config.parallelism * 4;
    let mut exit = Exit::Success;
    for (c, batch) in certificates.chunks(chunk).enumerate() {
        let checks: Vec<Option<SatelliteCheck>> = if verify {
            pool.install(|| {
                batch
                    .par_iter()
                    .map(|cert| Some(satellite_alexander_check(cert, &config.caps)))
                    .collect()
            })
        } else {
            vec![None; batch.len()]
        };
        for (i, (cert, check)) in batch.iter().zip(&checks).enumerate() {
            if let Some(check) = check {
                exit = exit.worst(check_exit(check.verdict));
            }
            let line = EnumeratedLine {
                family,
                index: c * chunk + i,
                certificate: cert,
                check: check.as_ref(),
                control: check.as_ref().map(|k| k.with_winding(k.winding + 1).verdict),
            };
            serde_json::to_writer(&mut *out, &line)?;
            writeln!(out)?;
        }
        out.flush()?;
    }
    Ok(exit)
}

/// Component counts of the three links in a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Components {
    pub source: usize,
    pub companion: usize,
    pub pattern: usize,
}

/// The family member, its component counts, a parameter-level check of
/// companion and pattern, and the Alexander factorization when in range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub c: u64,
    #[serde(flatten)]
    pub member: FamilyMember,
    pub components: Components,
    /// Companion is `T((2,4),(3,7))` and pattern is `T((2,2c),(89,3))`,
    /// recomputed from the twist parameters.
    pub symbolic: CheckVerdict,
    pub alexander: SatelliteCheck,
}

impl FamilyRecord {
    pub fn exit(&self) -> Exit {
        let components_ok =
            self.components.source == 1 && self.components.companion == 1 && self.components.pattern == 1;
        if self.symbolic != CheckVerdict::Pass || !components_ok {
            return Exit::Failure;
        }
        match self.alexander.verdict {
            CheckVerdict::Fail => Exit::Failure,
            _ => Exit::Success,
        }
    }
}

pub fn family_record(c: u64, caps: &Caps) -> anyhow::Result<FamilyRecord> {
    let member = counterexample_family(c)?;
    let cert = &member.certificate;
    let count = |s: &TLinkSpec| -> anyhow::Result<usize> {
        Ok(s.to_braid()?.closure_summary().component_count)
    };
    let components = Components {
        source: count(&member.spec)?,
        companion: count(&cert.companion)?,
        pattern: count(&cert.pattern_s3)?,
    };
    // (6,12),(9,18) over (11,3): s = (2,3), t = (2,2), so p̃ = 11 + 4·3·2 + 9·3·2.
    let (q, s, t) = (3u64, [2u64, 3], [2u64, 2]);
    let twist = 11 + s.iter().zip(&t).map(|(s, t)| s * s * q * t).sum::<u64>();
    let companion = TLinkSpec::new(vec![(s[0], s[0] * t[0]), (s[1], s[1] * t[1] + 1)])?;
    let pattern = TLinkSpec::new(vec![(2, 2 * c), (twist, q)])?;
    let symbolic = if cert.companion == companion && cert.pattern_s3 == pattern && cert.winding == q {
        CheckVerdict::Pass
    } else {
        CheckVerdict::Fail
    };
    let alexander = satellite_alexander_check(cert, caps);
    Ok(FamilyRecord {
        c,
        member,
        components,
        symbolic,
        alexander,
    })
}

#[derive(Serialize)]
struct SuiteLine<T: Serialize> {
    index: usize,
    passed: bool,
    #[serde(flatten)]
    outcome: T,
}

fn write_line<T: Serialize>(out: &mut dyn Write, index: usize, passed: bool, outcome: T) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *out, &SuiteLine { index, passed, outcome })?;
    writeln!(out)?;
    Ok(())
}

fn run_suite(kind: SuiteKind, count: usize, config: &RunConfig, out: &mut dyn Write) -> anyhow::Result<Exit> {
    let pool = thread_pool(config.parallelism)?;
    let caps = &config.caps;
    let mut failed = false;
    match kind {
        SuiteKind::Duality => {
            let specs = suite::duality_instances(config.seed, count);
            let results: Vec<_> = pool.install(|| specs.par_iter().map(|s| suite::check_duality(s, caps)).collect());
            for (i, r) in results.into_iter().enumerate() {
                let r = r?;
                failed |= !r.passed();
                write_line(out, i, r.passed(), r)?;
            }
        }
        SuiteKind::Reduction => {
            let cases = suite::reduction_instances(config.seed, count);
            let results: Vec<_> = pool.install(|| cases.par_iter().map(|p| suite::check_reduction(p, caps)).collect());
            for (i, r) in results.into_iter().enumerate() {
                let r = r?;
                failed |= !r.passed();
                write_line(out, i, r.passed(), r)?;
            }
        }
        SuiteKind::Oracle => {
            let words = suite::random_words(config.seed, count, 6, 14, true);
            let results: Vec<_> = pool.install(|| words.par_iter().map(|w| suite::check_jones_oracles(w, caps)).collect());
            for (i, r) in results.into_iter().enumerate() {
                failed |= !r.passed();
                write_line(out, i, r.passed(), r)?;
            }
        }
    }
    Ok(if failed { Exit::Failure } else { Exit::Success })
}

/// Entry point for the binary.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> u8 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run(args, &mut out, &mut err).code()
}
