//! Parameter sweeps with deterministic output.
//!
//! A sweep spec is an ordinary config file plus three keys:
//! `sweep_key` (which parameter to vary), `sweep_values` (comma- or
//! space-separated list), and optionally `sweep_l` (half-width used for the
//! interval eigenvalue column, default `s0`). Rows execute on a bounded
//! worker pool and are emitted in input order, so the CSV is byte-identical
//! for every parallelism level; per-row failures land in the error column
//! and the run continues.

use anyhow::{bail, Context};
use rayon::prelude::*;
use seasonfront::classify;
use seasonfront::config::{fmt_f64, parse_config, Config};
use seasonfront::eigen;
use seasonfront::params::ModelParams;
use seasonfront::presets::impulse_with_slope;

/// Parsed sweep specification.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub base: Config,
    pub key: String,
    pub values: Vec<f64>,
    pub half_width: f64,
}

/// Extracts the sweep keys from the raw text, then parses the remainder as a
/// plain config.
pub fn parse_spec(text: &str) -> anyhow::Result<SweepSpec> {
    let mut key = None;
    let mut values: Option<Vec<f64>> = None;
    let mut half_width = None;
    let mut rest = String::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let Some((k, v)) = line.split_once('=') else {
            rest.push_str(raw);
            rest.push('\n');
            continue;
        };
        match k.trim() {
            "sweep_key" => key = Some(v.trim().to_string()),
            "sweep_values" => {
                let parsed: Result<Vec<f64>, _> = v
                    .trim()
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect();
                values = Some(parsed.context("sweep_values must be a list of numbers")?);
            }
            "sweep_l" => half_width = Some(v.trim().parse().context("sweep_l must be a number")?),
            _ => {
                rest.push_str(raw);
                rest.push('\n');
            }
        }
    }
    let key = key.context("missing sweep_key")?;
    let values = values.context("missing sweep_values")?;
    for v in &values {
        if !v.is_finite() {
            bail!("sweep value {v} is not finite");
        }
    }
    let base = parse_config(&rest)?;
    let half_width = half_width.unwrap_or(base.params.s0);
    Ok(SweepSpec {
        base,
        key,
        values,
        half_width,
    })
}

/// Applies one sweep value to a parameter set.
pub fn apply_axis(params: &mut ModelParams, key: &str, value: f64) -> anyhow::Result<f64> {
    let mut half_width_override = None;
    match key {
        "d1" => params.d1 = value,
        "d2" => params.d2 = value,
        "a11" => params.a11 = value,
        "a12" => params.a12 = value,
        "a22" => params.a22 = value,
        "delta1" => params.delta1 = value,
        "delta2" => params.delta2 = value,
        "mu1" => params.mu1 = value,
        "mu2" => params.mu2 = value,
        "tau" => params.tau = value,
        "period" => params.period = value,
        "s0" => params.s0 = value,
        "impulse_slope" => params.impulse = impulse_with_slope(value),
        "l" => half_width_override = Some(value),
        other => bail!("unknown sweep key {other:?}"),
    }
    Ok(half_width_override.unwrap_or(f64::NAN))
}

fn row(spec: &SweepSpec, value: f64) -> String {
    let mut params = spec.base.params.clone();
    let mut half_width = spec.half_width;
    match apply_axis(&mut params, &spec.key, value) {
        Ok(l) => {
            if l.is_finite() {
                half_width = l;
            }
        }
        Err(e) => return format!("{},,,,{e}", fmt_f64(value)),
    }
    let lambda = eigen::lambda1_interval(&params, -half_width, half_width);
    let nu = eigen::nu1(&params);
    let verdict = classify::classify(&params, &spec.base.init).map(|o| o.verdict);
    match (lambda, nu, verdict) {
        (Ok(lam), Ok(nu), Ok(verdict)) => format!(
            "{},{},{},{},",
            fmt_f64(value),
            fmt_f64(lam.lambda1),
            fmt_f64(nu.lambda1),
            verdict
        ),
        (lambda, nu, verdict) => {
            let err = lambda
                .err()
                .map(|e| e.to_string())
                .or_else(|| nu.err().map(|e| e.to_string()))
                .or_else(|| verdict.err().map(|e| e.to_string()))
                .unwrap_or_default();
            format!("{},,,,{}", fmt_f64(value), err)
        }
    }
}

/// Runs the sweep on a pool of `parallel` workers; the output is independent
/// of the worker count.
pub fn run_sweep(spec: &SweepSpec, parallel: usize) -> anyhow::Result<String> {
    let mut out = format!("{},lambda1,nu1,verdict,error\n", spec.key);
    let rows: Vec<String> = if parallel <= 1 {
        spec.values.iter().map(|&v| row(spec, v)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallel)
            .build()
            .context("building worker pool")?;
        pool.install(|| spec.values.par_iter().map(|&v| row(spec, v)).collect())
    };
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}
