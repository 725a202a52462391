use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tap_core::automaton::DEFAULT_STAGE_CAP;
use tap_core::dot::{graph_to_dot, tree_to_dot};
use tap_core::pipeline::equivalent_with;
use tap_core::reduce::reduce_traced;
use tap_core::treeify::DEFAULT_MAX_UNFOLD;
use tap_core::{
    cb_invariant, confluence_check, develop, gen_appendix, run_pipeline, serialize, BitVector,
    Config, Invariants, Orientability, TopologicalAutomaton,
};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "tap", version, about = "Classify open surfaces generated by topological 2-automata")]
struct Cli {
    /// Largest unfolded tree to build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_UNFOLD)]
    max_unfold: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two automata generate homeomorphic surfaces.
    /// Exit status 0: homeomorphic, 1: not, 2: error.
    Check {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Orientability, genus and reduced tree of one automaton.
    Invariants {
        a: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the pipeline and write every stage as a DOT file.
    Reduce {
        a: PathBuf,
        #[arg(long)]
        dot: PathBuf,
        /// Also write one DOT file per applied move.
        #[arg(long)]
        trace: bool,
    },
    /// Bookkeeping of the finite stage M_s.
    Develop {
        a: PathBuf,
        #[arg(short, long)]
        stage: u64,
        #[arg(long, default_value_t = DEFAULT_STAGE_CAP)]
        stage_cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generate automata.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Independent checks.
    Oracle {
        #[command(subcommand)]
        check: OracleCheck,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The bit-vector family of pairwise distinct planar surfaces.
    Appendix {
        #[arg(long)]
        bits: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCheck {
    /// Cantor–Bendixson rank and degree of the end space (plain one-loop trees only).
    Cb { a: PathBuf },
    /// Compare random maximal move sequences with the deterministic reduction.
    Confluence {
        a: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(path: &Path) -> Result<TopologicalAutomaton> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    tap_core::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}

fn print_invariants(inv: &Invariants) {
    let o = match inv.orientability {
        Orientability::Orientable => "orientable",
        Orientability::Nonorientable => "nonorientable",
    };
    println!("orientability: {o}");
    println!("genus_or_crosscaps: {}", inv.genus_or_crosscaps);
    println!("planar: {}", inv.planar);
    println!("compact: {}", inv.compact);
    println!("reduced_code: {}", inv.reduced_code);
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = Config {
        max_unfold: cli.max_unfold,
    };
    match cli.command {
        Command::Check { a, b, json } => {
            let verdict = equivalent_with(&load(&a)?, &load(&b)?, &config)?;
            if json {
                println!("{}", with_schema(serde_json::to_value(&verdict)?));
            } else {
                let word = if verdict.homeomorphic { "homeomorphic" } else { "not homeomorphic" };
                println!("{word}");
                println!("  {}: {}", a.display(), verdict.left.reduced_code);
                println!("  {}: {}", b.display(), verdict.right.reduced_code);
            }
            Ok(ExitCode::from(if verdict.homeomorphic { 0 } else { 1 }))
        }
        Command::Invariants { a, json } => {
            let inv = tap_core::pipeline::invariants_with(&load(&a)?, &config)?;
            if json {
                println!("{}", with_schema(serde_json::to_value(&inv)?));
            } else {
                print_invariants(&inv);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { a, dot, trace } => {
            let stages = run_pipeline(&load(&a)?, &config)?;
            fs::create_dir_all(&dot).with_context(|| format!("creating {}", dot.display()))?;
            let write = |name: &str, text: String| {
                let path = dot.join(name);
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
            };
            write("graph.dot", graph_to_dot(&stages.graph))?;
            write("propagated.dot", graph_to_dot(&stages.propagated))?;
            write("unfolded.dot", tree_to_dot(&stages.unfolded))?;
            write("admissible.dot", tree_to_dot(stages.admissible.tree()))?;
            write("reduced.dot", tree_to_dot(stages.reduction.reduced.tree()))?;
            if trace {
                let mut steps = Vec::new();
                reduce_traced(stages.admissible.clone(), |m, t| {
                    steps.push((m.to_string(), tree_to_dot(t)));
                });
                for (i, (m, text)) in steps.into_iter().enumerate() {
                    write(&format!("move-{:04}.dot", i + 1), text)?;
                    eprintln!("move {}: {m}", i + 1);
                }
            }
            println!("{}", stages.reduction.reduced.code());
            Ok(ExitCode::SUCCESS)
        }
        Command::Develop {
            a,
            stage,
            stage_cap,
            json,
        } => {
            let d = develop(&load(&a)?, stage, stage_cap)?;
            let genus_key = if d.orientable { "genus" } else { "crosscaps" };
            if json {
                let copies: serde_json::Map<String, Value> = d
                    .copy_counts
                    .iter()
                    .map(|(k, c)| (k.to_string(), json!(c.to_string())))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "stage": d.stage,
                        "copy_counts": copies,
                        "euler_characteristic": d.euler_characteristic.to_string(),
                        "boundary_count": d.boundary_count.to_string(),
                        "orientable": d.orientable,
                        "genus_or_crosscaps": d.genus_or_crosscaps.to_string(),
                    })
                );
            } else {
                println!("stage: {}", d.stage);
                for (k, c) in &d.copy_counts {
                    println!("copies of X{k}: {c}");
                }
                println!("euler_characteristic: {}", d.euler_characteristic);
                println!("boundary_count: {}", d.boundary_count);
                println!("orientable: {}", d.orientable);
                println!("{genus_key}: {}", d.genus_or_crosscaps);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            family: Family::Appendix { bits, output },
        } => {
            let bits: BitVector = bits.parse()?;
            let text = serialize(&gen_appendix(&bits));
            fs::write(&output, text).with_context(|| format!("writing {}", output.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            check: OracleCheck::Cb { a },
        } => {
            let stages = run_pipeline(&load(&a)?, &config)?;
            let cb = cb_invariant(&stages.admissible)?;
            println!("rank {} multiplicity {}", cb.rank, cb.multiplicity);
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            check: OracleCheck::Confluence { a, trials, seed },
        } => {
            if trials == 0 {
                bail!("--trials must be positive");
            }
            let stages = run_pipeline(&load(&a)?, &config)?;
            let report = confluence_check(&stages.admissible, trials, seed);
            println!("seed {} trials {}", report.seed, report.trials);
            println!("expected {}", report.expected);
            for code in &report.divergent {
                println!("divergent {code}");
            }
            println!("{}", if report.confluent() { "confluent" } else { "NOT confluent" });
            Ok(ExitCode::from(if report.confluent() { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
