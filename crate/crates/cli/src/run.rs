use std::time::{Duration, Instant};

use num_bigint::BigUint;
use padic::oracle::{brute_force_roots, lift_digit_by_digit, OracleReport, Verification};
use padic::{
    convergence_order, solve, Error, Method, OrderEstimate, RootResult, Seed, SolveTrace,
    StopReason,
};
use rayon::prelude::*;

use crate::config::RunConfig;

#[derive(Clone, Debug)]
pub enum Outcome {
    Converged {
        result: Box<RootResult>,
        order: Option<OrderEstimate>,
        verification: Option<Verification>,
    },
    NotConverged {
        reason: StopReason,
        trace: SolveTrace,
    },
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct Run {
    pub seed: Seed,
    pub method: Method,
    pub outcome: Outcome,
}

impl Run {
    pub fn verification_failed(&self) -> bool {
        matches!(&self.outcome, Outcome::Converged { verification: Some(v), .. } if !v.ok())
    }
}

#[derive(Debug)]
pub struct Report {
    pub runs: Vec<Run>,
    pub oracle: Option<OracleReport>,
    pub elapsed: Duration,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        let bad = self
            .runs
            .iter()
            .any(|r| !matches!(r.outcome, Outcome::Converged { .. }) || r.verification_failed());
        if bad {
            3
        } else {
            0
        }
    }
}

/// Solves every (seed, method) pair. Runs are ordered by seed, then method name.
pub fn execute(cfg: &RunConfig) -> Result<Report, String> {
    let start = Instant::now();
    let oracle = match cfg.args.verify {
        Some(m) => Some(
            brute_force_roots(&cfg.poly, cfg.ctx.prime(), m, cfg.args.budget)
                .map_err(|e| e.to_string())?,
        ),
        None => None,
    };

    let mut jobs: Vec<(&Seed, Method)> = Vec::new();
    let mut seeds: Vec<&Seed> = cfg.seeds.iter().collect();
    seeds.sort_by(|a, b| a.x0.cmp(&b.x0));
    for seed in seeds {
        let mut methods = cfg.methods.clone();
        methods.sort_by_key(|m| m.name());
        methods.dedup();
        for method in methods {
            jobs.push((seed, method));
        }
    }

    let runs = jobs
        .par_iter()
        .map(|&(seed, method)| Run {
            seed: seed.clone(),
            method,
            outcome: run_one(cfg, seed, method, oracle.as_ref()),
        })
        .collect();

    Ok(Report {
        runs,
        oracle,
        elapsed: start.elapsed(),
    })
}

fn run_one(cfg: &RunConfig, seed: &Seed, method: Method, oracle: Option<&OracleReport>) -> Outcome {
    match solve(&cfg.poly, seed, &cfg.ctx, method) {
        Ok(result) => {
            let order = convergence_order(&result.trace).ok();
            let verification = match oracle {
                Some(report) => match verify(cfg, seed, &result, report) {
                    Ok(v) => Some(v),
                    Err(e) => return Outcome::Failed(format!("oracle: {e}")),
                },
                None => None,
            };
            Outcome::Converged {
                result: Box::new(result),
                order,
                verification,
            }
        }
        Err(Error::NotConverged { reason, trace, .. }) => Outcome::NotConverged {
            reason,
            trace: *trace,
        },
        Err(e) => Outcome::Failed(e.to_string()),
    }
}

fn verify(
    cfg: &RunConfig,
    seed: &Seed,
    result: &RootResult,
    report: &OracleReport,
) -> padic::Result<Verification> {
    let m = report.m;
    let lifted = lift_digit_by_digit(&cfg.poly, seed, &cfg.ctx, m)?;
    let brute_force: Vec<BigUint> = report.roots_above(&seed.x0).into_iter().cloned().collect();
    Ok(Verification {
        m,
        root: result.root.truncate(m),
        brute_force,
        lifted,
    })
}
