//! Benchmark grid over generator families and dimensions.
//!
//! Each cell solves `instances` generated configurations with seeds
//! `base_seed + index`, re-verifies every answer exactly and reports the
//! mean solve time and pivot count. Generation and verification are not
//! timed.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{generate, GeneratorKind, GeneratorSpec};
use crate::pivot::{solve_simplexlike, Backend, PivotRule, SolveOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchPlan {
    pub kinds: Vec<GeneratorKind>,
    pub dimensions: Vec<usize>,
    pub instances: usize,
    pub rule: PivotRule,
    pub backend: Backend,
    pub base_seed: u64,
    /// CSV destination; nothing is written when absent.
    pub output: Option<PathBuf>,
    /// Solve the instances of a cell on the rayon pool.
    pub parallel: bool,
}

impl Default for BenchPlan {
    fn default() -> Self {
        BenchPlan {
            kinds: GeneratorKind::ALL.to_vec(),
            dimensions: vec![3, 6, 12, 24],
            instances: 50,
            rule: PivotRule::Dantzig,
            backend: Backend::Exact,
            base_seed: 0,
            output: None,
            parallel: true,
        }
    }
}

impl BenchPlan {
    pub fn validate(&self) -> Result<()> {
        if self.instances == 0 {
            return Err(Error::InvalidInput("instances must be at least 1".into()));
        }
        if self.dimensions.iter().any(|&d| d == 0) {
            return Err(Error::InvalidInput("dimensions must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub generator: GeneratorKind,
    pub dimension: usize,
    pub instances: usize,
    pub avg_time_ms: f64,
    pub avg_pivots: f64,
    pub failures: usize,
}

/// Outcome of one instance: pivots and solve time, or the failure message.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRun {
    pub seed: u64,
    pub result: std::result::Result<(usize, f64), String>,
}

/// Generates, solves and verifies one instance.
pub fn run_instance(kind: GeneratorKind, d: usize, seed: u64, opts: &SolveOptions) -> InstanceRun {
    let attempt = || -> Result<(usize, f64)> {
        let inst = generate(&GeneratorSpec::new(kind, d, seed))?;
        let sol = solve_simplexlike(&inst.config, opts)?;
        if !sol.verified {
            return Err(Error::VerificationFailed("answer holds only after perturbation".into()));
        }
        sol.record(None).verify(&inst.config)?;
        Ok((sol.report.pivots, sol.report.wall_time.as_secs_f64() * 1e3))
    };
    InstanceRun {
        seed,
        result: attempt().map_err(|e| e.to_string()),
    }
}

/// Means over the successful runs; failures are counted, never fatal.
pub fn aggregate(kind: GeneratorKind, d: usize, runs: &[InstanceRun]) -> BenchRow {
    let ok: Vec<(usize, f64)> = runs.iter().filter_map(|r| r.result.clone().ok()).collect();
    let n = ok.len().max(1) as f64;
    BenchRow {
        generator: kind,
        dimension: d,
        instances: runs.len(),
        avg_time_ms: ok.iter().map(|r| r.1).sum::<f64>() / n,
        avg_pivots: ok.iter().map(|r| r.0 as f64).sum::<f64>() / n,
        failures: runs.len() - ok.len(),
    }
}

/// Runs every `(kind, dimension)` cell of the plan and writes the CSV when
/// an output path is set.
pub fn run_bench(plan: &BenchPlan) -> Result<Vec<BenchRow>> {
    plan.validate()?;
    let opts = SolveOptions {
        rule: plan.rule,
        backend: plan.backend,
        ..Default::default()
    };
    let mut rows = Vec::new();
    for &kind in &plan.kinds {
        for &d in &plan.dimensions {
            let seeds: Vec<u64> = (0..plan.instances as u64).map(|i| plan.base_seed + i).collect();
            let runs: Vec<InstanceRun> = if plan.parallel {
                seeds.par_iter().map(|&s| run_instance(kind, d, s, &opts)).collect()
            } else {
                seeds.iter().map(|&s| run_instance(kind, d, s, &opts)).collect()
            };
            rows.push(aggregate(kind, d, &runs));
        }
    }
    if let Some(path) = &plan.output {
        write_csv(path, &rows)?;
    }
    Ok(rows)
}

/// Columns `generator,dimension,instances,avg_time_ms,avg_pivots,failures`.
pub fn write_csv(path: &Path, rows: &[BenchRow]) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidInput(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}
