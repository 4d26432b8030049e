use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use colorful::bench::{run_bench, BenchPlan};
use colorful::combinatorics::Census;
use colorful::games::{
    clp_decide, clp_oracle, find_another_colorful, solve_bimatrix, BimatrixGame, ClpOptions,
    EquilibriumRecord, FacsInstance, DEFAULT_NODE_BUDGET,
};
use colorful::generators::{generate, GeneratedInstance, GeneratorKind, GeneratorSpec};
use colorful::geometry::{enumerate_pdcs, DEFAULT_ENUMERATION_BUDGET};
use colorful::io::{budget_from_env, read_json, to_json, write_json};
use colorful::pivot::{solve_classic_bo, solve_simplexlike, Backend, PivotRule, SolveOptions, SolveRecord};
use colorful::rational::format;
use colorful::{Error, Result};

#[derive(Parser)]
#[command(name = "colorful", version, about = "Colorful linear programming solvers and tools")]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Simplex,
    Classic,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a seeded instance.
    Generate {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find a positively dependent colorful set.
    Solve {
        #[arg(long, value_enum, default_value = "simplex")]
        algo: Algo,
        #[arg(long, default_value = "dantzig")]
        rule: PivotRule,
        #[arg(long, default_value = "exact")]
        backend: Backend,
        file: PathBuf,
        /// Write the result, with the instance embedded, here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-verify stored solve results.
    Check { file: PathBuf },
    /// List every positively dependent colorful set.
    Enumerate { file: PathBuf },
    /// Decide whether a positively dependent colorful set exists.
    Decide { file: PathBuf },
    /// Find a colorful set other than the given one.
    Facs { file: PathBuf },
    /// Compute a Nash equilibrium of a bimatrix game.
    Nash { file: PathBuf },
    /// Run a benchmark plan.
    Bench {
        #[arg(long)]
        plan: PathBuf,
        /// CSV destination, overriding the plan.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(json: bool, value: serde_json::Value, human: impl FnOnce() -> String) {
    if json {
        print!("{}", to_json(&value));
    } else {
        println!("{}", human());
    }
}

fn join(values: &[colorful::rational::Rational]) -> String {
    values.iter().map(format).collect::<Vec<_>>().join(", ")
}

fn clp_options() -> Result<ClpOptions> {
    Ok(ClpOptions {
        budget: budget_from_env(DEFAULT_NODE_BUDGET)?,
        ..Default::default()
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Records {
    Many(Vec<SolveRecord>),
    One(Box<SolveRecord>),
}

fn run(cli: &Cli) -> Result<u8> {
    let json = cli.json;
    match &cli.command {
        Command::Generate {
            kind,
            dim,
            seed,
            output,
        } => {
            let inst = generate(&GeneratorSpec::new(*kind, *dim, *seed))?;
            match output {
                Some(path) => write_json(path, &inst)?,
                None => print!("{}", to_json(&inst)),
            }
        }
        Command::Solve {
            algo,
            rule,
            backend,
            file,
            output,
        } => {
            let inst: GeneratedInstance = read_json(file)?;
            let opts = SolveOptions {
                rule: *rule,
                backend: *backend,
                ..Default::default()
            };
            let sol = match algo {
                Algo::Simplex => solve_simplexlike(&inst.config, &opts)?,
                Algo::Classic => solve_classic_bo(&inst.config, &opts)?,
            };
            let record = sol.record(Some(&inst.config));
            if sol.verified {
                record.verify(&inst.config)?;
            }
            if let Some(path) = output {
                write_json(path, &record)?;
            }
            emit(json, serde_json::to_value(&record).expect("record"), || {
                format!(
                    "selection {:?}\nweights [{}]\npivots {} ({} rule, {} backend, {:.3} ms){}",
                    record.selection.picks().iter().flatten().collect::<Vec<_>>(),
                    join(&record.weights.weights),
                    record.pivots,
                    record.rule,
                    record.backend,
                    record.time_ms,
                    if record.verified { "" } else { "\nholds for the perturbed instance only" }
                )
            });
            if !sol.verified {
                return Ok(2);
            }
        }
        Command::Check { file } => return check(json, file),
        Command::Enumerate { file } => {
            let inst: GeneratedInstance = read_json(file)?;
            let found = enumerate_pdcs(&inst.config, budget_from_env(DEFAULT_ENUMERATION_BUDGET)?)?;
            let census = Census::new(found.len());
            emit(json, json!({ "census": census, "selections": found }), || {
                let mut out = format!("{} positively dependent colorful sets ({:?})", census.count, census.parity);
                for s in &found {
                    out.push_str(&format!("\n  {:?}", s.picks().iter().flatten().collect::<Vec<_>>()));
                }
                out
            });
        }
        Command::Decide { file } => {
            let inst: GeneratedInstance = read_json(file)?;
            let ans = clp_decide(&inst.config, &clp_options()?)?;
            let witness = ans.witness.as_ref().map(|(s, w)| {
                json!({ "selection": s, "weights": w.iter().map(format).collect::<Vec<_>>() })
            });
            emit(
                json,
                json!({ "answer": ans.is_yes(), "witness": witness, "nodes": ans.nodes, "pruned": ans.pruned }),
                || match &ans.witness {
                    Some((s, w)) => format!(
                        "yes: {:?} with weights [{}] ({} nodes)",
                        s.picks().iter().flatten().collect::<Vec<_>>(),
                        join(w),
                        ans.nodes
                    ),
                    None => format!("no ({} nodes)", ans.nodes),
                },
            );
        }
        Command::Facs { file } => {
            let inst: FacsInstance = read_json(file)?;
            let other = find_another_colorful(&inst, clp_oracle(clp_options()?))?;
            emit(
                json,
                json!({
                    "selection": other.selection,
                    "weights": other.weights.iter().map(format).collect::<Vec<_>>(),
                    "oracle_calls": other.oracle_calls,
                }),
                || {
                    format!(
                        "selection {:?}\nweights [{}]\noracle calls {}",
                        other.selection.picks().iter().flatten().collect::<Vec<_>>(),
                        join(&other.weights),
                        other.oracle_calls
                    )
                },
            );
        }
        Command::Nash { file } => {
            let game: BimatrixGame = read_json(file)?;
            let profile = solve_bimatrix(&game, &clp_options()?)?;
            let verified = game.is_equilibrium(&profile);
            let record = EquilibriumRecord {
                profile: profile.clone(),
                verified,
            };
            emit(json, serde_json::to_value(&record).expect("record"), || {
                format!("y = ({})\nz = ({})", join(&profile.y), join(&profile.z))
            });
            if !verified {
                return Err(Error::NotAnEquilibrium);
            }
        }
        Command::Bench { plan, output } => {
            let mut plan: BenchPlan = read_json(plan)?;
            if output.is_some() {
                plan.output = output.clone();
            }
            let rows = run_bench(&plan)?;
            emit(json, serde_json::to_value(&rows).expect("rows"), || {
                let mut out = format!(
                    "{:<12} {:>4} {:>9} {:>13} {:>10} {:>8}",
                    "generator", "d", "instances", "avg_time_ms", "avg_pivots", "failures"
                );
                for r in &rows {
                    out.push_str(&format!(
                        "\n{:<12} {:>4} {:>9} {:>13.4} {:>10.2} {:>8}",
                        r.generator.name(), r.dimension, r.instances, r.avg_time_ms, r.avg_pivots, r.failures
                    ));
                }
                out
            });
            if rows.iter().any(|r| r.failures > 0) {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn check(json: bool, file: &Path) -> Result<u8> {
    let records = match read_json::<Records>(file)? {
        Records::Many(v) => v,
        Records::One(r) => vec![*r],
    };
    let mut results = Vec::new();
    for (i, r) in records.iter().enumerate() {
        let outcome = match &r.instance {
            None => Err(Error::InvalidInput(format!("record {i} has no embedded instance"))),
            Some(cfg) if !r.verified => {
                Err(Error::VerificationFailed(format!("record {i} on {} colors was not verified", cfg.num_colors())))
            }
            Some(cfg) => r.verify(cfg),
        };
        results.push(outcome);
    }
    let passed = results.iter().filter(|r| r.is_ok()).count();
    emit(
        json,
        json!({
            "records": records.len(),
            "passed": passed,
            "failures": results.iter().filter_map(|r| r.as_ref().err().map(|e| e.to_string())).collect::<Vec<_>>(),
        }),
        || {
            let mut out = format!("{passed}/{} records verified", records.len());
            for (i, r) in results.iter().enumerate() {
                if let Err(e) = r {
                    out.push_str(&format!("\n  record {i}: {e}"));
                }
            }
            out
        },
    );
    if let Some(e) = results.into_iter().find_map(|r| r.err()) {
        if e.exit_code() == 1 {
            return Err(e);
        }
        return Ok(2);
    }
    Ok(0)
}
