//! Solver dispatch, result rows, the benchmark runner, and the agreeability
//! audit.
//!
//! Every set a solver emits is re-checked through the agreeability module
//! before it is reported; the solvers are never trusted. `bench` exits
//! nonzero when any audit fails.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use agreeable_core::additive::{solve_bruteforce_with, solve_dp_with, solve_greedy_cip};
use agreeable_core::agreeability::{is_agreeable_additive, is_agreeable_oracle, is_necessarily_agreeable};
use agreeable_core::oracle::{query_report, solve_oracle_with};
use agreeable_core::ordinal::{solve_deterministic, solve_randomized_with};
use agreeable_core::ItemSet;

use crate::caps::Caps;
use crate::formats::{parse_instance, Instance, InstanceFile};

pub const DEFAULT_EPSILON: f64 = 1.0;
pub const DEFAULT_SEED: u64 = 0;

/// Algorithm identifiers as they appear on the command line and in bench
/// configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AlgorithmId {
    /// Randomized ordinal solver (resampling).
    OrdinalRand,
    /// Deterministic ordinal solver (common monotone chunks).
    OrdinalDet,
    /// Covering-design search under the value-oracle model.
    OracleCover,
    /// Pseudo-polynomial exact solver for integer additive utilities.
    AdditiveDp,
    /// Greedy covering approximation for additive utilities.
    AdditiveGreedy,
    /// Exhaustive minimum-size search for additive utilities.
    Brute,
}

impl AlgorithmId {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgorithmId::OrdinalRand => "ordinal-rand",
            AlgorithmId::OrdinalDet => "ordinal-det",
            AlgorithmId::OracleCover => "oracle-cover",
            AlgorithmId::AdditiveDp => "additive-dp",
            AlgorithmId::AdditiveGreedy => "additive-greedy",
            AlgorithmId::Brute => "brute",
        }
    }

    pub fn parse(id: &str) -> Result<Self> {
        Ok(match id {
            "ordinal-rand" => AlgorithmId::OrdinalRand,
            "ordinal-det" => AlgorithmId::OrdinalDet,
            "oracle-cover" => AlgorithmId::OracleCover,
            "additive-dp" => AlgorithmId::AdditiveDp,
            "additive-greedy" => AlgorithmId::AdditiveGreedy,
            "brute" => AlgorithmId::Brute,
            other => bail!("unknown algorithm id {other:?}"),
        })
    }

    /// The instance kind this algorithm consumes.
    pub fn expected_kind(&self) -> &'static str {
        match self {
            AlgorithmId::OrdinalRand | AlgorithmId::OrdinalDet => "ordinal",
            AlgorithmId::OracleCover => "oracle-planted",
            AlgorithmId::AdditiveDp | AlgorithmId::AdditiveGreedy | AlgorithmId::Brute => {
                "additive"
            }
        }
    }

    pub fn compatible_with(&self, instance: &Instance) -> bool {
        self.expected_kind() == instance.kind()
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One solver run, ready for CSV rendering.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub instance: String,
    pub algorithm: String,
    pub set: ItemSet,
    pub size: u32,
    pub optimum: Option<u32>,
    pub ratio: Option<f64>,
    pub queries: Option<u64>,
    pub wall_ms: f64,
    pub seed: Option<u64>,
}

pub const CSV_HEADER: &str = "instance,algorithm,set,size,optimum,ratio,queries,wall_ms,seed";

fn optional<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

/// Stable one-line CSV rendering; absent fields are empty cells, sets render
/// as space-separated indices.
pub fn emit_result(result: &SolveResult) -> String {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    writer
        .write_record([
            result.instance.as_str(),
            result.algorithm.as_str(),
            &result.set.to_string(),
            &result.size.to_string(),
            &optional(&result.optimum),
            &optional(&result.ratio),
            &optional(&result.queries),
            &format!("{:.3}", result.wall_ms),
            &optional(&result.seed),
        ])
        .expect("in-memory CSV writes succeed");
    let bytes = writer.into_inner().expect("in-memory CSV flushes");
    String::from_utf8(bytes).expect("CSV output is UTF-8")
}

/// Runs one algorithm on one instance. The returned result carries the query
/// count for oracle runs and the seed for randomized runs.
pub fn run_algorithm(
    algo: AlgorithmId,
    instance: &Instance,
    instance_id: &str,
    caps: &Caps,
    seed: Option<u64>,
    epsilon: Option<f64>,
) -> Result<SolveResult> {
    if !algo.compatible_with(instance) {
        bail!(
            "algorithm `{algo}` expects kind \"{}\" but instance {instance_id:?} has kind \"{}\"",
            algo.expected_kind(),
            instance.kind()
        );
    }
    let started = Instant::now();
    let mut queries = None;
    let mut used_seed = None;
    let set = match (algo, instance) {
        (AlgorithmId::OrdinalRand, Instance::Ordinal(profile)) => {
            let seed = seed.unwrap_or(DEFAULT_SEED);
            used_seed = Some(seed);
            solve_randomized_with(profile, seed, caps.resample)?.set
        }
        (AlgorithmId::OrdinalDet, Instance::Ordinal(profile)) => solve_deterministic(profile),
        (AlgorithmId::OracleCover, Instance::OraclePlanted(planted)) => {
            let oracle = planted.oracle();
            let set = solve_oracle_with(&oracle, epsilon.unwrap_or(DEFAULT_EPSILON), caps.blocks)?;
            queries = Some(query_report(&oracle).total);
            set
        }
        (AlgorithmId::AdditiveDp, Instance::Additive(profile)) => {
            solve_dp_with(profile, caps.dp_agents, caps.dp_memory)?
        }
        (AlgorithmId::AdditiveGreedy, Instance::Additive(profile)) => solve_greedy_cip(profile),
        (AlgorithmId::Brute, Instance::Additive(profile)) => {
            solve_bruteforce_with(profile, caps.brute_items)?
        }
        _ => unreachable!("compatibility checked above"),
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1000.0;
    Ok(SolveResult {
        instance: instance_id.to_string(),
        algorithm: algo.as_str().to_string(),
        size: set.len(),
        set,
        optimum: None,
        ratio: None,
        queries,
        wall_ms,
        seed: used_seed,
    })
}

/// Re-checks a reported set through the agreeability module.
pub fn audit_set(instance: &Instance, set: &ItemSet) -> Result<bool> {
    Ok(match instance {
        Instance::Ordinal(profile) => profile
            .agents()
            .ids()
            .all(|j| is_necessarily_agreeable(profile.ranking(j), set)),
        Instance::Additive(profile) => is_agreeable_additive(profile, set)?,
        Instance::OraclePlanted(planted) => {
            // fresh accountant so the audit does not inflate reported counts
            let oracle = planted.oracle();
            is_agreeable_oracle(&oracle, set)?
        }
    })
}

/// Benchmark configuration file (JSON).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    /// Instance file paths, resolved relative to the config file.
    pub instances: Vec<PathBuf>,
    /// Algorithm ids to run on every instance.
    pub algorithms: Vec<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    /// CSV output path (stdout when absent), resolved relative to the config.
    #[serde(default)]
    pub out: Option<PathBuf>,
}

/// Outcome of a bench run.
pub struct BenchOutcome {
    pub rows: Vec<SolveResult>,
    /// (instance, algorithm) pairs whose output failed the audit.
    pub audit_failures: Vec<(String, String)>,
    pub out: Option<PathBuf>,
}

fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

/// Runs the full (instance x algorithm) matrix of a bench config.
///
/// Rows are ordered by (instance, algorithm) in config order regardless of
/// runtime. The whole matrix is validated for unknown algorithm ids and
/// kind mismatches before anything runs.
pub fn run_bench(config_path: &Path, caps: &Caps) -> Result<BenchOutcome> {
    let text = std::fs::read_to_string(config_path)
        .with_context(|| format!("cannot read bench config {}", config_path.display()))?;
    let config: BenchConfig = serde_json::from_str(&text)
        .with_context(|| format!("bad bench config {}", config_path.display()))?;
    let base = config_path.parent().unwrap_or(Path::new(".")).to_path_buf();

    let algorithms: Vec<AlgorithmId> = config
        .algorithms
        .iter()
        .map(|id| AlgorithmId::parse(id))
        .collect::<Result<_>>()?;
    if algorithms.is_empty() {
        bail!("bench config lists no algorithms");
    }
    if config.instances.is_empty() {
        bail!("bench config lists no instances");
    }

    let mut instances: Vec<(String, InstanceFile)> = Vec::new();
    for path in &config.instances {
        let resolved = resolve(&base, path);
        let text = std::fs::read_to_string(&resolved)
            .with_context(|| format!("cannot read instance {}", resolved.display()))?;
        let file = parse_instance(&text)
            .with_context(|| format!("cannot parse instance {}", resolved.display()))?;
        instances.push((path.display().to_string(), file));
    }

    // validate the whole matrix before running anything
    for (id, file) in &instances {
        for algo in &algorithms {
            if !algo.compatible_with(&file.instance) {
                bail!(
                    "algorithm `{algo}` expects kind \"{}\" but instance {id:?} has kind \"{}\"",
                    algo.expected_kind(),
                    file.instance.kind()
                );
            }
        }
    }

    let mut rows = Vec::new();
    let mut audit_failures = Vec::new();
    for (id, file) in &instances {
        let optimum = known_optimum(&file.instance, &algorithms, caps)?;
        for algo in &algorithms {
            let mut row = run_algorithm(
                *algo,
                &file.instance,
                id,
                caps,
                config.seed,
                config.epsilon,
            )?;
            if let Some(optimum) = optimum {
                row.optimum = Some(optimum);
                if optimum > 0 {
                    row.ratio = Some(row.size as f64 / optimum as f64);
                } else if row.size == 0 {
                    row.ratio = Some(1.0);
                }
            }
            if !audit_set(&file.instance, &row.set)? {
                audit_failures.push((id.clone(), algo.as_str().to_string()));
            }
            rows.push(row);
        }
    }

    if self_test_requested() {
        let (id, file) = &instances[0];
        let candidate = ItemSet::empty(file.instance.items());
        let ok = audit_set(&file.instance, &candidate)?;
        if !ok {
            audit_failures.push((id.clone(), "audit-self-test".to_string()));
        }
        rows.push(SolveResult {
            instance: id.clone(),
            algorithm: "audit-self-test".to_string(),
            size: candidate.len(),
            set: candidate,
            optimum: None,
            ratio: None,
            queries: None,
            wall_ms: 0.0,
            seed: None,
        });
    }

    Ok(BenchOutcome {
        rows,
        audit_failures,
        out: config.out.map(|p| resolve(&base, &p)),
    })
}

/// The audit self-test knob: `AGREEABLE_BENCH_SELF_TEST=fail` appends one
/// deliberately poor candidate (the empty set) so the audit path can be
/// exercised end to end.
fn self_test_requested() -> bool {
    std::env::var("AGREEABLE_BENCH_SELF_TEST").is_ok_and(|v| v == "fail")
}

/// Exact optimum when it is cheaply known: the brute-force size for additive
/// instances whenever `brute` is part of the run, and the closed form for
/// planted oracles.
fn known_optimum(
    instance: &Instance,
    algorithms: &[AlgorithmId],
    caps: &Caps,
) -> Result<Option<u32>> {
    Ok(match instance {
        Instance::Additive(profile) => {
            if algorithms.contains(&AlgorithmId::Brute)
                && profile.items().count() <= caps.brute_items
            {
                Some(solve_bruteforce_with(profile, caps.brute_items)?.len())
            } else {
                None
            }
        }
        Instance::OraclePlanted(planted) => Some(planted.optimum_size()),
        Instance::Ordinal(_) => None,
    })
}

/// Renders rows as a CSV table with the fixed header.
pub fn render_csv(rows: &[SolveResult]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&emit_result(row));
    }
    out
}

pub fn read_instance(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read instance {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("cannot parse instance {}", path.display()))
}
