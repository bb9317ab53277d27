//! JSON and CSV report writers.
//!
//! Every floating-point number in a JSON report is written with 17
//! significant digits (`{:.16e}`), which round-trips `f64` exactly.
//! Non-finite values become `null`.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use teicp_core::{Iterate, SolveReport, SolveStatus, SolverConfig};

use crate::harness::{NonnegSummary, SuccessRow};

fn raw(v: f64) -> Option<Box<RawValue>> {
    v.is_finite()
        .then(|| RawValue::from_string(format!("{v:.16e}")).expect("exponent notation is valid JSON"))
}

pub fn sig17<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*v).serialize(s)
}

pub fn sig17_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    v.and_then(raw).serialize(s)
}

pub fn sig17_vec<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&raw(*x))?;
    }
    seq.end()
}

pub fn status_str<S: Serializer>(v: &SolveStatus, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(v.as_str())
}

/// Formats a number for CSV and text output with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigJson {
    #[serde(serialize_with = "sig17")]
    pub eps: f64,
    #[serde(serialize_with = "sig17")]
    pub rho: f64,
    #[serde(serialize_with = "sig17")]
    pub p: f64,
    #[serde(serialize_with = "sig17")]
    pub beta: f64,
    #[serde(serialize_with = "sig17")]
    pub tau: f64,
    pub ncp: &'static str,
    pub max_iter: usize,
    #[serde(serialize_with = "sig17")]
    pub kappa_max: f64,
    #[serde(serialize_with = "sig17")]
    pub min_step: f64,
    #[serde(serialize_with = "sig17")]
    pub tol_zero: f64,
}

impl From<&SolverConfig> for ConfigJson {
    fn from(c: &SolverConfig) -> Self {
        Self {
            eps: c.eps,
            rho: c.rho,
            p: c.p,
            beta: c.beta,
            tau: c.tau,
            ncp: if c.tau >= 1.0 { "fb" } else { "pfb" },
            max_iter: c.max_iter,
            kappa_max: c.kappa_max,
            min_step: c.min_step,
            tol_zero: c.tol_zero,
        }
    }
}

/// Seed and generator of the random stream behind a report, if any.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeedInfo {
    pub seed: u64,
    pub generator: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveJson {
    #[serde(serialize_with = "status_str")]
    pub status: SolveStatus,
    #[serde(serialize_with = "sig17")]
    pub lambda: f64,
    #[serde(serialize_with = "sig17_vec")]
    pub x: Vec<f64>,
    #[serde(serialize_with = "sig17_vec")]
    pub w: Vec<f64>,
    pub iterations: usize,
    #[serde(serialize_with = "sig17_vec")]
    pub residual_history: Vec<f64>,
    #[serde(serialize_with = "sig17_vec")]
    pub step_history: Vec<f64>,
    pub fallback_count: usize,
    pub s3_degeneracy_events: usize,
    pub config: ConfigJson,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "sig17_opt")]
    pub elapsed_seconds: Option<f64>,
}

impl SolveJson {
    pub fn new(r: &SolveReport, cfg: &SolverConfig, seed: Option<SeedInfo>, elapsed: Option<f64>) -> Self {
        Self {
            status: r.status,
            lambda: r.lambda,
            x: r.x.clone(),
            w: r.w.clone(),
            iterations: r.iterations,
            residual_history: r.residual_history.clone(),
            step_history: r.step_history.clone(),
            fallback_count: r.fallback_count,
            s3_degeneracy_events: r.s3_degeneracy_events,
            config: cfg.into(),
            seed: seed.map(|s| s.seed),
            generator: seed.map(|s| s.generator),
            elapsed_seconds: elapsed,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Iteration table: `k, lambda, x1..xn, residual, alpha`, where `alpha` is
/// the step that produced iterate `k` (empty for the start).
pub fn iteration_csv(r: &SolveReport) -> String {
    let n = r.x.len();
    let mut out = String::from("k,lambda");
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    out.push_str(",residual,alpha\n");
    for (k, (z, res)) in r.trace.iter().zip(&r.residual_history).enumerate() {
        let z: &Iterate = z;
        let mut row = vec![k.to_string(), fmt17(z.lambda())];
        row.extend(z.x.iter().map(|v| fmt17(*v)));
        row.push(fmt17(*res));
        row.push(k.checked_sub(1).map(|j| fmt17(r.step_history[j])).unwrap_or_default());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Nonnegative-tensor summary: `m, n, success, mean_iter, mean_time, mean_lambda`.
pub fn nonneg_csv(rows: &[NonnegSummary]) -> String {
    let mut out = String::from("m,n,success,mean_iter,mean_time,mean_lambda\n");
    for r in rows {
        let time = r.mean_time.map(fmt17).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.m,
            r.n,
            r.success_count,
            fmt17(r.mean_iterations),
            time,
            fmt17(r.mean_lambda)
        ));
    }
    out
}

/// Success rates: `m, n, starts_<b>...` with one percentage column per budget.
pub fn success_csv(rows: &[SuccessRow]) -> String {
    let mut out = String::from("m,n");
    if let Some(first) = rows.first() {
        for b in &first.budgets {
            out.push_str(&format!(",starts_{b}"));
        }
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{}", r.m, r.n));
        for p in &r.success_percent {
            out.push_str(&format!(",{p}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_use_seventeen_digits() {
        #[derive(Serialize)]
        struct T {
            #[serde(serialize_with = "sig17")]
            a: f64,
            #[serde(serialize_with = "sig17_vec")]
            b: Vec<f64>,
        }
        let s = serde_json::to_string(&T {
            a: 0.1,
            b: vec![515.418136880985, f64::NAN],
        })
        .unwrap();
        assert_eq!(s, r#"{"a":1.0000000000000001e-1,"b":[5.1541813688098500e2,null]}"#);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["a"].as_f64(), Some(0.1));
        assert_eq!(v["b"][0].as_f64(), Some(515.418136880985));
    }
}
