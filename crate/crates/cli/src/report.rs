use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use padic::oracle::Verification;
use padic::{render_digits, SolveTrace, StopReason, Valuation};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::run::{Outcome, Report, Run};

pub const SCHEMA_VERSION: u64 = 1;

/// Key holding wall-clock time; the only nondeterministic field in the JSON output.
pub const ELAPSED_KEY: &str = "elapsed_ms";

pub const DEFECT_BANNER: &str = "DEFECT: solver root disagrees with the oracle";

fn valuation_text(v: Valuation, working: u32) -> String {
    match v {
        Valuation::Finite(k) => k.to_string(),
        Valuation::Infinite => format!(">= {working}"),
    }
}

fn header(cfg: &RunConfig) -> String {
    format!(
        "f(x) = {} over Z_{}, {} digits (guard {})\n",
        cfg.poly,
        cfg.ctx.prime(),
        cfg.ctx.target_precision(),
        cfg.ctx.guard_digits()
    )
}

fn verification_text(v: &Verification, p: &BigUint) -> String {
    if v.ok() {
        return format!(
            "OK mod {p}^{} (exhaustive search and digit lifting agree)",
            v.m
        );
    }
    let found: Vec<String> = v.brute_force.iter().map(ToString::to_string).collect();
    format!(
        "MISMATCH mod {p}^{}: solver {}, exhaustive [{}], lifted {}",
        v.m,
        v.root,
        found.join(", "),
        v.lifted
    )
}

fn stop_text(reason: StopReason, trace: &SolveTrace, working: u32) -> String {
    let vals: Vec<String> = trace
        .valuations()
        .into_iter()
        .map(|v| valuation_text(v, working))
        .collect();
    format!("not converged ({reason}); v(f(x_n)) = {}", vals.join(", "))
}

/// The `solve` table: one block per run.
pub fn solve_table(cfg: &RunConfig, report: &Report) -> String {
    let p = cfg.ctx.prime();
    let k = cfg.ctx.working_precision();
    let mut out = header(cfg);
    for run in &report.runs {
        let _ = writeln!(out, "\nseed {} ({})", run.seed.x0, run.method);
        match &run.outcome {
            Outcome::Converged {
                result,
                verification,
                ..
            } => {
                let digits =
                    render_digits(&result.digits, p, cfg.style).expect("digits are reduced");
                let _ = writeln!(out, "  root        {digits}");
                let _ = writeln!(
                    out,
                    "  v(f(root))  {}",
                    valuation_text(result.achieved_valuation, k)
                );
                let _ = writeln!(out, "  iterations  {}", result.iterations);
                if let Some(v) = verification {
                    let _ = writeln!(out, "  oracle      {}", verification_text(v, p));
                }
            }
            Outcome::NotConverged { reason, trace } => {
                let _ = writeln!(out, "  {}", stop_text(*reason, trace, k));
            }
            Outcome::Failed(msg) => {
                let _ = writeln!(out, "  error: {msg}");
            }
        }
    }
    push_footer(cfg, report, &mut out);
    out
}

/// The `compare` table: one row per (seed, method).
pub fn compare_table(cfg: &RunConfig, report: &Report) -> String {
    let k = cfg.ctx.working_precision();
    let verify = cfg.args.verify.is_some();
    let mut rows: Vec<Vec<String>> = vec![["seed", "method", "iterations", "v(f(root))", "order"]
        .iter()
        .map(|s| s.to_string())
        .collect()];
    if verify {
        rows[0].push("oracle".into());
    }
    for run in &report.runs {
        let mut row = vec![run.seed.x0.to_string(), run.method.to_string()];
        match &run.outcome {
            Outcome::Converged {
                result,
                order,
                verification,
            } => {
                row.push(result.iterations.to_string());
                row.push(valuation_text(result.achieved_valuation, k));
                row.push(
                    order
                        .as_ref()
                        .map_or("-".into(), |o| format!("{:.3}", o.as_f64())),
                );
                if verify {
                    row.push(match verification {
                        Some(v) if v.ok() => "ok".into(),
                        Some(_) => "MISMATCH".into(),
                        None => "-".into(),
                    });
                }
            }
            Outcome::NotConverged { reason, trace } => {
                row.push(format!("{}+", trace.len().saturating_sub(1)));
                row.push(
                    trace
                        .entries
                        .last()
                        .map_or("-".into(), |e| valuation_text(e.fval_valuation, k)),
                );
                row.push(format!("({reason})"));
            }
            Outcome::Failed(msg) => {
                row.push(format!("error: {msg}"));
            }
        }
        rows.push(row);
    }

    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = header(cfg);
    out.push('\n');
    for row in &rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{cell:<width$}  ", width = widths[c]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    push_footer(cfg, report, &mut out);
    out
}

fn push_footer(cfg: &RunConfig, report: &Report, out: &mut String) {
    if !cfg.singular.is_empty() {
        let list: Vec<String> = cfg.singular.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "\nsingular residues (not lifted): {}", list.join(", "));
    }
    if report.runs.iter().any(Run::verification_failed) {
        let _ = writeln!(out, "\n{DEFECT_BANNER}");
    }
}

fn big(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn valuation_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(k) => json!(k),
        Valuation::Infinite => json!("inf"),
    }
}

fn trace_json(trace: &SolveTrace) -> Value {
    trace
        .entries
        .iter()
        .map(|e| {
            json!({
                "n": e.n,
                "fval_valuation": valuation_json(e.fval_valuation),
                "step_valuation": e.step_valuation.map(valuation_json),
            })
        })
        .collect()
}

fn run_json(run: &Run) -> Value {
    let mut obj = json!({
        "seed": big(&run.seed.x0),
        "method": run.method.name(),
    });
    let fields = obj.as_object_mut().expect("object literal");
    match &run.outcome {
        Outcome::Converged {
            result,
            order,
            verification,
        } => {
            fields.insert("status".into(), json!("converged"));
            fields.insert("digits".into(), result.digits.iter().map(big).collect());
            fields.insert(
                "valuation".into(),
                valuation_json(result.achieved_valuation),
            );
            fields.insert("iterations".into(), json!(result.iterations));
            fields.insert(
                "order_estimate".into(),
                order.as_ref().map_or(Value::Null, |o| json!(o.as_f64())),
            );
            fields.insert("trace".into(), trace_json(&result.trace));
            fields.insert(
                "verified".into(),
                verification.as_ref().map_or(Value::Null, |v| json!(v.ok())),
            );
            if let Some(v) = verification {
                fields.insert(
                    "verification".into(),
                    json!({
                        "m": v.m,
                        "root": big(&v.root),
                        "exhaustive": v.brute_force.iter().map(big).collect::<Value>(),
                        "lifted": big(&v.lifted),
                    }),
                );
            }
        }
        Outcome::NotConverged { reason, trace } => {
            let status = match reason {
                StopReason::IterationCap => "iteration_cap",
                StopReason::PrecisionExhausted => "precision_exhausted",
            };
            fields.insert("status".into(), json!(status));
            fields.insert("trace".into(), trace_json(trace));
        }
        Outcome::Failed(msg) => {
            fields.insert("status".into(), json!("error"));
            fields.insert("error".into(), json!(msg));
        }
    }
    obj
}

pub fn json_report(cfg: &RunConfig, report: &Report, command: &str) -> Value {
    let a = &cfg.args;
    json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "config": {
            "poly": cfg.poly.to_string(),
            "prime": big(cfg.ctx.prime()),
            "digits": a.digits,
            "guard": a.guard,
            "working_precision": cfg.ctx.working_precision(),
            "methods": cfg.methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
            "seed": a.seed.as_ref().map(|s| s.to_string()),
            "verify": a.verify,
            "budget": a.budget,
        },
        "singular_residues": cfg.singular.iter().map(big).collect::<Value>(),
        "oracle": report.oracle.as_ref().map(|o| json!({
            "m": o.m,
            "roots": o.roots.iter().map(big).collect::<Value>(),
        })),
        "runs": report.runs.iter().map(run_json).collect::<Value>(),
        ELAPSED_KEY: report.elapsed.as_secs_f64() * 1000.0,
    })
}
