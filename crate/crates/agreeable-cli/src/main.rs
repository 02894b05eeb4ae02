//! `agreeable` — batch CLI for computing and benchmarking agreeable item
//! sets.
//!
//! Subcommands: `solve` runs one algorithm on one instance file, `check`
//! tests a specific set, `gen` produces instance files (random or via the
//! hardness reductions), and `bench` runs an (instances x algorithms)
//! matrix and emits a CSV table. Every emitted set is re-checked through
//! the agreeability module; a failed audit makes the process exit nonzero.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use agreeable_core::agreeability::{necessary_agreeability_deficits, PrefixCounts};
use agreeable_core::gen::random_additive_profile;
use agreeable_core::oracle::make_planted_oracle;
use agreeable_core::reductions::{from_3sat, from_partition, from_setcover};
use agreeable_core::Items;

use agreeable_cli::caps::Caps;
use agreeable_cli::formats::{
    display_rational, emit_instance, parse_dimacs, parse_partition, parse_set_argument,
    parse_setcover, Instance, InstanceFile, Metadata,
};
use agreeable_cli::runner::{
    audit_set, read_instance, render_csv, run_algorithm, run_bench, AlgorithmId,
};

#[derive(Parser)]
#[command(name = "agreeable", version, about = "Compute small agreeable item sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one instance file and print a result row
    Solve {
        /// Algorithm to run
        #[arg(long, value_enum)]
        algo: AlgorithmId,
        /// Instance file (JSON)
        #[arg(long)]
        input: PathBuf,
        /// Seed for the randomized solver (default 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Epsilon for the oracle solver (default 1)
        #[arg(long)]
        epsilon: Option<f64>,
        /// Write the CSV row (with header) to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a given set is agreeable for an instance
    Check {
        /// Instance file (JSON)
        #[arg(long)]
        input: PathBuf,
        /// Item indices, e.g. "1 3 4" (empty for the empty set)
        #[arg(long)]
        set: String,
        /// Check necessary agreeability (ordinal instances only)
        #[arg(long)]
        necessary: bool,
    },
    /// Generate instance files
    Gen {
        #[command(subcommand)]
        gen: GenCommand,
    },
    /// Run an (instances x algorithms) benchmark matrix from a JSON config
    Bench {
        /// Config file: {"instances": [...], "algorithms": [...], ...}
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Additive profile with i.i.d. uniform integer utilities
    RandomAdditive {
        #[arg(long)]
        items: u32,
        #[arg(long)]
        agents: u32,
        /// Inclusive upper bound on utilities
        #[arg(long = "max-u")]
        max_u: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Planted threshold oracle instance
    Planted {
        #[arg(long)]
        items: u32,
        /// Planted set, e.g. "1 2"; empty for the pure threshold function
        #[arg(long = "t-star", default_value = "")]
        t_star: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Additive instance from a balanced-partition multiset (one integer per line)
    FromPartition {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Additive instance from a DIMACS CNF formula (unit clauses are expanded)
    #[command(name = "from-3sat")]
    From3sat {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Additive instance from a set cover collection (one subset per line)
    FromSetcover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { algo, input, seed, epsilon, out } => {
            solve(algo, &input, seed, epsilon, out.as_deref())
        }
        Command::Check { input, set, necessary } => check(&input, &set, necessary),
        Command::Gen { gen } => generate(gen),
        Command::Bench { config } => bench(&config),
    }
}

fn solve(
    algo: AlgorithmId,
    input: &std::path::Path,
    seed: Option<u64>,
    epsilon: Option<f64>,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let caps = Caps::from_env()?;
    let file = read_instance(input)?;
    let id = input.display().to_string();
    let mut row = run_algorithm(algo, &file.instance, &id, &caps, seed, epsilon)?;
    if let Instance::OraclePlanted(planted) = &file.instance {
        let optimum = planted.optimum_size();
        row.optimum = Some(optimum);
        if optimum > 0 {
            row.ratio = Some(row.size as f64 / optimum as f64);
        }
    } else if algo == AlgorithmId::Brute {
        row.optimum = Some(row.size);
        if row.size > 0 {
            row.ratio = Some(1.0);
        }
    }
    let audit_ok = audit_set(&file.instance, &row.set)?;
    let table = render_csv(std::slice::from_ref(&row));
    match out {
        Some(path) => std::fs::write(path, &table)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{table}"),
    }
    if !audit_ok {
        eprintln!("audit: output of `{algo}` on {id} is NOT agreeable");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn check(input: &std::path::Path, set_arg: &str, necessary: bool) -> Result<ExitCode> {
    let file = read_instance(input)?;
    let items = file.instance.items();
    let set = parse_set_argument(items, set_arg)?;
    if necessary && !matches!(file.instance, Instance::Ordinal(_)) {
        bail!("--necessary applies to ordinal instances only");
    }
    let mut all_ok = true;
    match &file.instance {
        Instance::Ordinal(profile) => {
            for agent in profile.agents().ids() {
                let ranking = profile.ranking(agent);
                let ok = PrefixCounts::new(ranking, &set).satisfies_majority();
                if ok {
                    println!("agent {agent}: necessarily agreeable");
                } else {
                    all_ok = false;
                    let deficits = necessary_agreeability_deficits(ranking, &set);
                    let rendered: Vec<String> = deficits
                        .iter()
                        .map(|(k, d)| format!("k={k} short {d}"))
                        .collect();
                    println!(
                        "agent {agent}: NOT necessarily agreeable ({})",
                        rendered.join(", ")
                    );
                }
            }
        }
        Instance::Additive(profile) => {
            for agent in profile.agents().ids() {
                let own = profile.set_utility(agent, &set);
                let total = profile.total(agent);
                let other = total - &own;
                let ok = own >= other;
                if !ok {
                    all_ok = false;
                }
                println!(
                    "agent {agent}: u(T) = {} vs u(complement) = {} -> {}",
                    display_rational(&own),
                    display_rational(&other),
                    if ok { "agreeable" } else { "NOT agreeable" }
                );
            }
        }
        Instance::OraclePlanted(planted) => {
            let own = planted.value(&set);
            let other = planted.value(&set.complement());
            let ok = own >= other;
            if !ok {
                all_ok = false;
            }
            println!(
                "agent 1: u(T) = {own} vs u(complement) = {other} -> {}",
                if ok { "agreeable" } else { "NOT agreeable" }
            );
        }
    }
    if all_ok {
        println!("set {{{set}}} is agreeable for all agents");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("set {{{set}}} is NOT agreeable for all agents");
        Ok(ExitCode::FAILURE)
    }
}

fn generate(gen: GenCommand) -> Result<ExitCode> {
    let (file, out) = match gen {
        GenCommand::RandomAdditive { items, agents, max_u, seed, out } => {
            let profile = random_additive_profile(items, agents, max_u, seed)?;
            let meta = Metadata {
                name: Some(format!("random-additive-m{items}-n{agents}-u{max_u}-s{seed}")),
                provenance: Some(format!(
                    "gen random-additive --items {items} --agents {agents} --max-u {max_u} --seed {seed}"
                )),
            };
            (
                InstanceFile { instance: Instance::Additive(profile), metadata: Some(meta) },
                out,
            )
        }
        GenCommand::Planted { items, t_star, out } => {
            let set = parse_set_argument(Items::new(items)?, &t_star)?;
            let planted = make_planted_oracle(items, set)?;
            let meta = Metadata {
                name: Some(format!("planted-m{items}-k{}", planted.planted_set().len())),
                provenance: Some(format!(
                    "gen planted --items {items} --t-star \"{}\"",
                    planted.planted_set()
                )),
            };
            (
                InstanceFile { instance: Instance::OraclePlanted(planted), metadata: Some(meta) },
                out,
            )
        }
        GenCommand::FromPartition { input, out } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("cannot read {}", input.display()))?;
            let partition = parse_partition(&text)?;
            let profile = from_partition(&partition)?;
            let meta = Metadata {
                name: Some(format!("partition-{}", stem(&input))),
                provenance: Some(format!("gen from-partition --input {}", input.display())),
            };
            (
                InstanceFile { instance: Instance::Additive(profile), metadata: Some(meta) },
                out,
            )
        }
        GenCommand::From3sat { input, out } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("cannot read {}", input.display()))?;
            let formula = parse_dimacs(&text)?.preprocess();
            let profile = from_3sat(&formula)?;
            let meta = Metadata {
                name: Some(format!("3sat-{}", stem(&input))),
                provenance: Some(format!("gen from-3sat --input {}", input.display())),
            };
            (
                InstanceFile { instance: Instance::Additive(profile), metadata: Some(meta) },
                out,
            )
        }
        GenCommand::FromSetcover { input, out } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("cannot read {}", input.display()))?;
            let cover = parse_setcover(&text)?;
            let profile = from_setcover(&cover)?;
            let meta = Metadata {
                name: Some(format!("setcover-{}", stem(&input))),
                provenance: Some(format!("gen from-setcover --input {}", input.display())),
            };
            (
                InstanceFile { instance: Instance::Additive(profile), metadata: Some(meta) },
                out,
            )
        }
    };
    let rendered = emit_instance(&file);
    match out {
        Some(path) => std::fs::write(&path, rendered)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn stem(path: &std::path::Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".to_string())
}

fn bench(config: &std::path::Path) -> Result<ExitCode> {
    let caps = Caps::from_env()?;
    let outcome = run_bench(config, &caps)?;
    let table = render_csv(&outcome.rows);
    match &outcome.out {
        Some(path) => std::fs::write(path, &table)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{table}"),
    }
    if !outcome.audit_failures.is_empty() {
        for (instance, algo) in &outcome.audit_failures {
            eprintln!("audit: output of `{algo}` on {instance} is NOT agreeable");
        }
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
