//! Random instances, multistart orchestration and the numerical experiments.
//!
//! All randomness flows from a single seeded [`ChaCha8Rng`]; starts are drawn
//! sequentially before any solve runs, so parallel execution and the serial
//! loop produce identical reports.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{sig17, sig17_opt, sig17_vec, status_str};

use teicp_core::solver::{certify, solve};
use teicp_core::{
    BOperator, GeneralTensor, Iterate, NcpKind, Problem, SolveReport, SolveStatus, SolverConfig, SymmetricTensor,
    TensorOperator,
};

/// Name of the generator behind every random stream, recorded in reports.
pub const GENERATOR: &str = "ChaCha8";

/// Clustering thresholds for distinct solutions: `|Δλ|` and `‖Δx‖∞`.
pub const DEDUP_LAMBDA: f64 = 1e-4;
pub const DEDUP_X: f64 = 1e-3;

/// Tolerance of the certification attached to every reported solution.
pub const CERTIFY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RngConfig {
    pub seed: u64,
    pub generator: &'static str,
}

impl RngConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            generator: GENERATOR,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Entries uniform on `[−1, 1]`, symmetrized, then `a_{1…1} = 0.5`.
pub fn random_symmetric_instance(m: usize, n: usize, rng: &mut ChaCha8Rng) -> SymmetricTensor {
    let len = n.pow(m as u32);
    let data = (0..len).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let mut sym = GeneralTensor::from_data(m, n, data)
        .expect("valid order and dimension")
        .symmetrize();
    sym.set(&vec![0; m], 0.5).expect("in range");
    sym
}

/// Uniform on the open interval `(0, 1)`.
fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let v: f64 = rng.random();
        if v > 0.0 {
            return v;
        }
    }
}

/// Entries i.i.d. uniform on `(0, 1)`, not symmetrized.
pub fn random_nonneg_instance(m: usize, n: usize, rng: &mut ChaCha8Rng) -> GeneralTensor {
    let len = n.pow(m as u32);
    let data = (0..len).map(|_| open_unit(rng)).collect();
    GeneralTensor::from_data(m, n, data).expect("valid order and dimension")
}

/// `x⁰` uniform on `(0, 1)ⁿ` then normalized, `t⁰ ~ N(0, 1)` (never exactly 0).
pub fn random_start(n: usize, rng: &mut ChaCha8Rng) -> Iterate {
    let x: Vec<f64> = (0..n).map(|_| open_unit(rng)).collect();
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let t = loop {
        let t: f64 = rng.sample(StandardNormal);
        if t != 0.0 {
            break t;
        }
    };
    Iterate::new(x.into_iter().map(|v| v / norm).collect(), t)
}

/// `x⁰ = e/‖e‖`, `t⁰ = √(Ax⁰ᵐ / Bx⁰ᵐ)`, clamped to 0 when the quotient is
/// negative.
pub fn canonical_start(p: &Problem) -> Iterate {
    let n = p.dim();
    let x = vec![1.0 / (n as f64).sqrt(); n];
    let q = p.a().scalar(&x) / p.b().scalar(&x);
    Iterate::new(x, q.max(0.0).sqrt())
}

/// Execution knobs that do not affect the numbers in a report.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    /// Solve starts on the rayon pool.
    pub parallel: bool,
    /// Record wall-clock times (makes reports non-reproducible).
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistinctSolution {
    #[serde(serialize_with = "sig17")]
    pub lambda: f64,
    #[serde(serialize_with = "sig17_vec")]
    pub x: Vec<f64>,
    #[serde(serialize_with = "sig17_vec")]
    pub w: Vec<f64>,
    pub hit_count: usize,
    #[serde(serialize_with = "sig17")]
    pub mean_iterations: f64,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "sig17_opt")]
    pub mean_time: Option<f64>,
    /// Index of the start that produced the representative.
    pub first_start: usize,
    pub certified: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FailureCounts {
    pub stationary_not_solution: usize,
    pub max_iterations: usize,
    pub degenerate_t: usize,
}

impl FailureCounts {
    pub fn total(&self) -> usize {
        self.stationary_not_solution + self.max_iterations + self.degenerate_t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultistartReport {
    pub distinct_solutions: Vec<DistinctSolution>,
    /// All non-solution outcomes together, counted as failures.
    pub failure_count: usize,
    pub failures: FailureCounts,
    pub total_starts: usize,
}

impl MultistartReport {
    pub fn solution_count(&self) -> usize {
        self.distinct_solutions.iter().map(|s| s.hit_count).sum()
    }
}

/// One solve with its optional wall time.
pub struct TimedRun {
    pub report: SolveReport,
    pub seconds: Option<f64>,
}

fn timed_solve(p: &Problem, z0: &Iterate, cfg: &SolverConfig, timing: bool) -> TimedRun {
    let clock = timing.then(Instant::now);
    let report = solve(p, z0, cfg).expect("problem and start dimensions agree");
    TimedRun {
        report,
        seconds: clock.map(|c| c.elapsed().as_secs_f64()),
    }
}

/// Solves from every start, preserving start order in the output.
pub fn run_starts(p: &Problem, starts: &[Iterate], cfg: &SolverConfig, opts: RunOptions) -> Vec<TimedRun> {
    if opts.parallel {
        starts.par_iter().map(|z| timed_solve(p, z, cfg, opts.timing)).collect()
    } else {
        starts.iter().map(|z| timed_solve(p, z, cfg, opts.timing)).collect()
    }
}

struct Cluster {
    solution: DistinctSolution,
    iterations: usize,
    seconds: f64,
}

/// Groups outcomes into distinct solutions and failure counts. A solution
/// joins the first cluster whose representative is within the dedup
/// thresholds; otherwise it founds a new cluster.
pub fn summarize(p: &Problem, runs: &[TimedRun]) -> MultistartReport {
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut failures = FailureCounts::default();
    for (k, run) in runs.iter().enumerate() {
        let r = &run.report;
        match r.status {
            SolveStatus::Solution => {}
            SolveStatus::StationaryNotSolution => {
                failures.stationary_not_solution += 1;
                continue;
            }
            SolveStatus::MaxIterations => {
                failures.max_iterations += 1;
                continue;
            }
            SolveStatus::DegenerateT => {
                failures.degenerate_t += 1;
                continue;
            }
        }
        let near = clusters.iter_mut().find(|c| {
            (c.solution.lambda - r.lambda).abs() <= DEDUP_LAMBDA
                && c.solution.x.iter().zip(&r.x).all(|(a, b)| (a - b).abs() <= DEDUP_X)
        });
        match near {
            Some(c) => {
                c.solution.hit_count += 1;
                c.iterations += r.iterations;
                c.seconds += run.seconds.unwrap_or(0.0);
            }
            None => {
                let certified = certify(p, r.lambda, &r.x, CERTIFY_TOL)
                    .map(|c| c.passed)
                    .unwrap_or(false);
                clusters.push(Cluster {
                    solution: DistinctSolution {
                        lambda: r.lambda,
                        x: r.x.clone(),
                        w: r.w.clone(),
                        hit_count: 1,
                        mean_iterations: 0.0,
                        mean_time: None,
                        first_start: k,
                        certified,
                    },
                    iterations: r.iterations,
                    seconds: run.seconds.unwrap_or(0.0),
                });
            }
        }
    }
    let timed = runs.iter().any(|r| r.seconds.is_some());
    let mut distinct_solutions: Vec<DistinctSolution> = clusters
        .into_iter()
        .map(|c| {
            let hits = c.solution.hit_count as f64;
            DistinctSolution {
                mean_iterations: c.iterations as f64 / hits,
                mean_time: timed.then(|| c.seconds / hits),
                ..c.solution
            }
        })
        .collect();
    distinct_solutions.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.first_start.cmp(&b.first_start)));
    MultistartReport {
        distinct_solutions,
        failure_count: failures.total(),
        failures,
        total_starts: runs.len(),
    }
}

/// Solves `p` from `starts` random initial points.
pub fn multistart(
    p: &Problem,
    starts: usize,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
    opts: RunOptions,
) -> MultistartReport {
    let initial: Vec<Iterate> = (0..starts).map(|_| random_start(p.dim(), rng)).collect();
    summarize(p, &run_starts(p, &initial, cfg, opts))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuccessRow {
    pub m: usize,
    pub n: usize,
    pub instances: usize,
    pub budgets: Vec<usize>,
    /// Percentage of instances with at least one solution per budget.
    #[serde(serialize_with = "sig17_vec")]
    pub success_percent: Vec<f64>,
}

/// Success rates per start budget. Each instance draws `max(budgets)` starts
/// once; budget `b` succeeds when any of the first `b` does, which makes the
/// rates monotone in the budget.
pub fn success_rate_experiment(
    m: usize,
    n: usize,
    budgets: &[usize],
    instances: usize,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
    opts: RunOptions,
) -> SuccessRow {
    let most = budgets.iter().copied().max().unwrap_or(0);
    let b_op = if m % 2 == 0 {
        BOperator::sphere_identity(m, n)
    } else {
        BOperator::diag_identity(m, n)
    }
    .expect("valid order and dimension");
    let mut hits = vec![0usize; budgets.len()];
    for _ in 0..instances {
        let a = random_symmetric_instance(m, n, rng);
        let p = Problem::from_symmetric(&a, b_op.clone(), cfg.ncp()).expect("consistent instance");
        let starts: Vec<Iterate> = (0..most).map(|_| random_start(n, rng)).collect();
        let runs = run_starts(&p, &starts, cfg, opts);
        let first_success = runs.iter().position(|r| r.report.status == SolveStatus::Solution);
        for (h, &b) in hits.iter_mut().zip(budgets) {
            if first_success.is_some_and(|k| k < b) {
                *h += 1;
            }
        }
    }
    SuccessRow {
        m,
        n,
        instances,
        budgets: budgets.to_vec(),
        success_percent: hits.iter().map(|&h| 100.0 * h as f64 / instances.max(1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonnegSample {
    #[serde(serialize_with = "status_str")]
    pub status: SolveStatus,
    #[serde(serialize_with = "sig17")]
    pub lambda: f64,
    pub iterations: usize,
    /// Solution with a strictly positive eigenvector.
    pub success: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "sig17_opt")]
    pub seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonnegSummary {
    pub m: usize,
    pub n: usize,
    pub samples: Vec<NonnegSample>,
    pub success_count: usize,
    #[serde(serialize_with = "sig17")]
    pub mean_iterations: f64,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "sig17_opt")]
    pub mean_time: Option<f64>,
    #[serde(serialize_with = "sig17")]
    pub mean_lambda: f64,
}

/// The `samples` random nonnegative instances used by [`nonneg_experiment`],
/// in order.
pub fn nonneg_instances(m: usize, n: usize, samples: usize, rng: &mut ChaCha8Rng) -> Vec<GeneralTensor> {
    (0..samples).map(|_| random_nonneg_instance(m, n, rng)).collect()
}

/// `B = I` (diagonal identity) problem for a nonnegative tensor.
pub fn nonneg_problem(a: &GeneralTensor, ncp: NcpKind) -> Problem {
    let b = BOperator::diag_identity(a.order(), a.dim()).expect("valid order and dimension");
    Problem::from_general(a, b, ncp).expect("consistent instance")
}

/// Solves each nonnegative instance from the canonical start.
pub fn nonneg_experiment(
    m: usize,
    n: usize,
    samples: usize,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
    opts: RunOptions,
) -> NonnegSummary {
    let instances = nonneg_instances(m, n, samples, rng);
    let run = |a: &GeneralTensor| {
        let p = nonneg_problem(a, cfg.ncp());
        let run = timed_solve(&p, &canonical_start(&p), cfg, opts.timing);
        let r = &run.report;
        NonnegSample {
            status: r.status,
            lambda: r.lambda,
            iterations: r.iterations,
            success: r.status == SolveStatus::Solution && r.x.iter().all(|v| *v > 0.0),
            seconds: run.seconds,
        }
    };
    let results: Vec<NonnegSample> = if opts.parallel {
        instances.par_iter().map(run).collect()
    } else {
        instances.iter().map(run).collect()
    };
    let count = results.len().max(1) as f64;
    NonnegSummary {
        m,
        n,
        success_count: results.iter().filter(|s| s.success).count(),
        mean_iterations: results.iter().map(|s| s.iterations as f64).sum::<f64>() / count,
        mean_time: opts
            .timing
            .then(|| results.iter().filter_map(|s| s.seconds).sum::<f64>() / count),
        mean_lambda: results.iter().map(|s| s.lambda).sum::<f64>() / count,
        samples: results,
    }
}
