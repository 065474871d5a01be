//! Batch sweeps: JSON config ingestion, gate-aware parameter enumeration,
//! parallel checker execution, and deterministic report persistence.
//!
//! The enumeration phase is strictly serial and deterministic (a single
//! seeded RNG drawn in a fixed order), so two runs with the same config
//! produce byte-identical reports apart from the timestamp. Only the
//! checker invocations run in parallel; verdicts are re-sorted afterwards.

use crate::arith::Valuation;
use crate::checks::{
    find_check, run_check, CheckDef, CheckParams, Claim, Mode, Observed, Status, Verdict,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

/// How the sweep picks the residue-class index a for each (p, r).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum APolicy {
    /// Every a passing the check's own gate.
    #[default]
    AllValid,
    /// A fixed list, still filtered through the gate.
    Explicit(Vec<u64>),
}

/// How the sweep picks lift indices s (α = 2a + s·p).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftPolicy {
    /// All lifts 0 <= s < p.
    #[default]
    All,
    /// A deterministic random sample per tuple.
    Sample(SampleSpec),
}

/// Sample size and mandatory seed for [`LiftPolicy::Sample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub n: u64,
    pub seed: u64,
}

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    #[default]
    Json,
    /// Lossy one-row-per-verdict export.
    Csv,
}

/// Where and how the report is written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub format: ReportFormat,
}

/// A sweep request, deserialized verbatim from a JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Registered check ids to run.
    pub checks: Vec<String>,
    pub p_min: u64,
    pub p_max: u64,
    /// Depth values r (the np-fold check reads these as n).
    #[serde(default = "default_r_set")]
    pub r_set: Vec<u32>,
    #[serde(default)]
    pub a_policy: APolicy,
    #[serde(default)]
    pub lift_policy: LiftPolicy,
    #[serde(default)]
    pub mode: Mode,
    pub output: OutputSpec,
    /// Claimed-exponent overrides by check id. Claimed exponents are data:
    /// pointing an existing checker at a sharper (or weaker) claim is a
    /// config-level decision, not a code change.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub claim_overrides: BTreeMap<String, i64>,
}

fn default_r_set() -> Vec<u32> {
    vec![1]
}

/// Per-check tallies for the report summary.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub data: usize,
    /// Minimum observed valuation lower bound across this check's verdicts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_observed_valuation: Option<Valuation>,
}

/// A finished sweep: config echo, ordered verdicts, and summary tallies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    /// RFC 3339 timestamp — the only field that varies between identical runs.
    pub generated_at: String,
    pub config: SweepConfig,
    pub verdicts: Vec<Verdict>,
    pub summary: BTreeMap<String, CheckSummary>,
}

impl Report {
    /// True when no verdict failed (the exit-code-0 condition).
    pub fn all_clear(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }
}

/// Sweep failure: a bad config or an unwritable output.
#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("config error: {0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

fn config_err(msg: impl Into<String>) -> SweepError {
    SweepError::Config(msg.into())
}

/// Validate the config invariants before any work starts.
pub fn validate_config(config: &SweepConfig) -> Result<(), SweepError> {
    if config.checks.is_empty() {
        return Err(config_err("checks must not be empty"));
    }
    let mut seen = BTreeSet::new();
    for id in &config.checks {
        if find_check(id).is_none() {
            return Err(config_err(format!("unknown check id: {id}")));
        }
        if !seen.insert(id) {
            return Err(config_err(format!("duplicate check id: {id}")));
        }
    }
    if config.p_min < 3 {
        return Err(config_err(format!("p_min must be at least 3, got {}", config.p_min)));
    }
    if config.p_min > config.p_max {
        return Err(config_err(format!(
            "empty prime range: p_min = {} > p_max = {}",
            config.p_min, config.p_max
        )));
    }
    if config.r_set.is_empty() {
        return Err(config_err("r_set must not be empty"));
    }
    if let APolicy::Explicit(list) = &config.a_policy {
        if list.is_empty() {
            return Err(config_err("explicit a_policy must list at least one a"));
        }
    }
    if let LiftPolicy::Sample(spec) = &config.lift_policy {
        if spec.n == 0 {
            return Err(config_err("sample size must be at least 1"));
        }
    }
    for id in config.claim_overrides.keys() {
        let Some(def) = find_check(id) else {
            return Err(config_err(format!("claim override for unknown check: {id}")));
        };
        if !config.checks.iter().any(|c| c == id) {
            return Err(config_err(format!(
                "claim override for {id}, which is not in checks"
            )));
        }
        if matches!(def.claim, Claim::ExactZero) {
            return Err(config_err(format!(
                "{id} claims an exact zero; its claim is not a tunable exponent"
            )));
        }
    }
    Ok(())
}

/// a-values in `[lo, hi]` admitted by the policy.
fn a_values(policy: &APolicy, lo: u64, hi: u64) -> Vec<u64> {
    match policy {
        APolicy::AllValid => (lo..=hi).collect(),
        APolicy::Explicit(list) => {
            let mut out: Vec<u64> = list.iter().copied().filter(|a| (lo..=hi).contains(a)).collect();
            out.sort_unstable();
            out.dedup();
            out
        }
    }
}

/// Lift indices for one tuple: everything, or a seeded sample without
/// replacement (the whole range when the sample would cover it).
fn lift_values(p: u64, policy: &LiftPolicy, rng: &mut ChaCha8Rng) -> Vec<u64> {
    match policy {
        LiftPolicy::All => (0..p).collect(),
        LiftPolicy::Sample(spec) => {
            if spec.n >= p {
                return (0..p).collect();
            }
            let mut picked = BTreeSet::new();
            while (picked.len() as u64) < spec.n {
                picked.insert(rng.random_range(0..p));
            }
            picked.into_iter().collect()
        }
    }
}

/// All m-tuples of the given length with entries 0..=max_m.
fn m_tuples(len: usize, max_m: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=max_m).map(move |m| {
                    let mut next = prefix.clone();
                    next.push(m);
                    next
                })
            })
            .collect();
    }
    out
}

/// Largest a with `a(2r+1) < p + r`, or 0 when none exists.
fn theorem_a_max(p: u64, r: u32) -> u64 {
    (p + r as u64 - 1) / (2 * r as u64 + 1)
}

/// Enumerate every job for the config, in a deterministic order.
fn enumerate_jobs(config: &SweepConfig) -> Vec<(&'static CheckDef, CheckParams)> {
    let seed = match &config.lift_policy {
        LiftPolicy::Sample(spec) => spec.seed,
        LiftPolicy::All => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes: Vec<u64> = (config.p_min..=config.p_max)
        .filter(|&p| crate::arith::is_prime(p) && p > 2)
        .collect();
    let mut jobs: Vec<(&'static CheckDef, CheckParams)> = Vec::new();

    for id in &config.checks {
        let def = find_check(id).expect("config already validated");
        match def.id {
            "main_theorem" => {
                for &p in &primes {
                    for &r in &config.r_set {
                        if r < 1 {
                            continue;
                        }
                        for a in a_values(&config.a_policy, 1, theorem_a_max(p, r)) {
                            for s in lift_values(p, &config.lift_policy, &mut rng) {
                                jobs.push((def, CheckParams::pras(p, r, a, s)));
                            }
                        }
                    }
                }
            }
            "sun_conjecture" => {
                for &p in &primes {
                    for &r in &config.r_set {
                        if r < 2 {
                            continue;
                        }
                        let hi = (p + 1) / (2 * r as u64 + 1);
                        for a in a_values(&config.a_policy, 1, hi) {
                            for s in lift_values(p, &config.lift_policy, &mut rng) {
                                jobs.push((def, CheckParams::pras(p, r, a, s)));
                            }
                        }
                    }
                }
            }
            "binomial_cube" => {
                for &p in &primes {
                    for a in a_values(&config.a_policy, 1, (p - 1) / 3) {
                        for s in lift_values(p, &config.lift_policy, &mut rng) {
                            jobs.push((def, CheckParams::pras(p, 0, a, s)));
                        }
                    }
                }
            }
            "catalan_mod_p2" | "3f2_half" => {
                for &p in &primes {
                    if p % 4 == 1 {
                        jobs.push((def, CheckParams::pras(p, 0, 0, 0)));
                    }
                }
            }
            "karlsson_minton" => {
                let a_list = a_values(&config.a_policy, 1, 10);
                for a in a_list {
                    for &r in &config.r_set {
                        if r > 4 {
                            continue;
                        }
                        for m_list in m_tuples(r as usize, 3) {
                            if m_list.iter().sum::<u64>() >= a {
                                continue;
                            }
                            let mut params = CheckParams::pras(0, r, a, 0);
                            params.m_list = Some(m_list);
                            jobs.push((def, params));
                        }
                    }
                }
            }
            "sign_symmetry" => {
                for m in (1..=15u64).step_by(2) {
                    for &r in &config.r_set {
                        if r % 2 != 0 {
                            continue;
                        }
                        let mut params = CheckParams::pras(0, r, 0, 0);
                        params.m = Some(m);
                        jobs.push((def, params));
                    }
                }
            }
            "harmonic_weighted" => {
                for &p in &primes {
                    for &r in &config.r_set {
                        for a in a_values(&config.a_policy, 0, (p - 1) / 2) {
                            jobs.push((def, CheckParams::pras(p, r, a, 0)));
                        }
                    }
                }
            }
            "shifted_congruence" => {
                for &p in &primes {
                    for &r in &config.r_set {
                        let slots = 2 * r as usize + 1;
                        for a in a_values(&config.a_policy, 1, (p - 1) / 2) {
                            let mut vecs: Vec<(Vec<i64>, Vec<i64>)> = vec![
                                (vec![1; slots], vec![0; slots - 1]),
                                (vec![0; slots], vec![0; slots - 1]),
                            ];
                            if let LiftPolicy::Sample(spec) = &config.lift_policy {
                                for _ in 0..spec.n {
                                    let s_vec = (0..slots).map(|_| rng.random_range(-3..=3)).collect();
                                    let t_vec =
                                        (0..slots - 1).map(|_| rng.random_range(-3..=3)).collect();
                                    vecs.push((s_vec, t_vec));
                                }
                            }
                            vecs.sort();
                            vecs.dedup();
                            for (s_vec, t_vec) in vecs {
                                let mut params = CheckParams::pras(p, r, a, 0);
                                params.s_vec = Some(s_vec);
                                params.t_vec = Some(t_vec);
                                jobs.push((def, params));
                            }
                        }
                    }
                }
            }
            "derivative_identity" => {
                for m in 1..=10u64 {
                    for k in 0..=10u64 {
                        let params = CheckParams {
                            m: Some(m),
                            k: Some(k),
                            ..CheckParams::default()
                        };
                        jobs.push((def, params));
                    }
                }
            }
            "phi_prime_chain" => {
                for &p in &primes {
                    for &r in &config.r_set {
                        if r < 1 || (2 * r as u64 + 1).is_multiple_of(p) {
                            continue;
                        }
                        for a in a_values(&config.a_policy, 1, theorem_a_max(p, r)) {
                            jobs.push((def, CheckParams::pras(p, r, a, 0)));
                        }
                    }
                }
            }
            "taylor_step" => {
                for &p in &primes {
                    for &r in &config.r_set {
                        if r < 1 {
                            continue;
                        }
                        for a in a_values(&config.a_policy, 1, theorem_a_max(p, r)) {
                            for s in lift_values(p, &config.lift_policy, &mut rng) {
                                jobs.push((def, CheckParams::pras(p, r, a, s)));
                            }
                        }
                    }
                }
            }
            "np_series" => {
                for &p in &primes {
                    for &n in &config.r_set {
                        if n % 2 == 0 {
                            continue;
                        }
                        for a in a_values(&config.a_policy, 1, (p - 1) / 2) {
                            for s in lift_values(p, &config.lift_policy, &mut rng) {
                                let mut params = CheckParams::pras(p, n, a, s);
                                params.n = Some(n as u64);
                                jobs.push((def, params));
                            }
                        }
                    }
                }
            }
            "exponent_reduction" => {
                for &p in &primes {
                    let h = (p - 1) / 2;
                    for &r in &config.r_set {
                        let r64 = r as u64;
                        if r64 <= h || r64.is_multiple_of(h) {
                            continue;
                        }
                        let rstar = (r64 % h) as u32;
                        for a in a_values(&config.a_policy, 1, theorem_a_max(p, rstar)) {
                            for s in lift_values(p, &config.lift_policy, &mut rng) {
                                jobs.push((def, CheckParams::pras(p, r, a, s)));
                            }
                        }
                    }
                }
            }
            other => unreachable!("unhandled registered check: {other}"),
        }
    }
    jobs
}

/// Tally statuses and observed-valuation lower bounds per check id.
fn summarize(verdicts: &[Verdict]) -> BTreeMap<String, CheckSummary> {
    let mut map: BTreeMap<String, CheckSummary> = BTreeMap::new();
    for v in verdicts {
        let entry = map.entry(v.check_id.clone()).or_default();
        match v.status {
            Status::Pass => entry.pass += 1,
            Status::Fail => entry.fail += 1,
            Status::Skip => entry.skip += 1,
            Status::Data => entry.data += 1,
        }
        let candidate = match &v.observed {
            Some(Observed::Valuation(val)) => Some(*val),
            Some(Observed::AtLeast(e)) => Some(Valuation::Finite(*e)),
            Some(Observed::Value(q)) if q.is_zero() => Some(Valuation::Infinite),
            _ => None,
        };
        if let Some(c) = candidate {
            entry.min_observed_valuation = Some(match entry.min_observed_valuation {
                None => c,
                Some(cur) => {
                    if c < cur {
                        c
                    } else {
                        cur
                    }
                }
            });
        }
    }
    map
}

/// One CSV row per verdict: check_id,p,r,a,s,claimed,observed_valuation,residual,status.
pub fn verdicts_to_csv(verdicts: &[Verdict]) -> String {
    let mut out = String::from("check_id,p,r,a,s,claimed,observed_valuation,residual,status\n");
    for v in verdicts {
        let claimed = match v.claimed {
            Claim::ExactZero => "EXACT_ZERO".to_owned(),
            Claim::MinValuation(e) => e.to_string(),
        };
        let observed = match &v.observed {
            None => String::new(),
            Some(Observed::Valuation(Valuation::Finite(x))) => x.to_string(),
            Some(Observed::Valuation(Valuation::Infinite)) => "inf".to_owned(),
            Some(Observed::AtLeast(e)) => format!(">={e}"),
            Some(Observed::Value(q)) if q.is_zero() => "inf".to_owned(),
            Some(Observed::Value(_)) => String::new(),
        };
        let residual = v.residual.as_ref().map(|q| q.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            v.check_id, v.params.p, v.params.r, v.params.a, v.params.s, claimed, observed, residual,
            v.status
        ));
    }
    out
}

/// Write bytes to `path` atomically: temp file in the same directory, then
/// rename. Parent directories are created as needed.
fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let name = path
        .file_name()
        .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "output path has no file name"))?
        .to_string_lossy()
        .into_owned();
    let tmp = path.with_file_name(format!("{name}.tmp.{}", std::process::id()));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

/// Serialize and persist a finished report per its output spec.
pub fn write_report(report: &Report, output: &OutputSpec) -> Result<(), SweepError> {
    let payload = match output.format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        ReportFormat::Csv => verdicts_to_csv(&report.verdicts),
    };
    atomic_write(&output.path, payload.as_bytes()).map_err(|source| SweepError::Io {
        path: output.path.clone(),
        source,
    })
}

/// Run a full sweep: validate, enumerate, execute in parallel, sort, tally,
/// and write the report atomically. The report is returned as well.
pub fn run_sweep(config: &SweepConfig) -> Result<Report, SweepError> {
    validate_config(config)?;
    let jobs = enumerate_jobs(config);
    let mut verdicts: Vec<Verdict> = jobs
        .par_iter()
        .map(|(def, params)| {
            run_check(
                def,
                params,
                config.mode,
                config.claim_overrides.get(def.id).copied(),
            )
        })
        .collect();
    verdicts.sort_by_key(|v| v.sort_key());
    let summary = summarize(&verdicts);
    let report = Report {
        schema_version: "1".to_owned(),
        generated_at: chrono::Utc::now().to_rfc3339(),
        config: config.clone(),
        verdicts,
        summary,
    };
    write_report(&report, &config.output)?;
    Ok(report)
}
