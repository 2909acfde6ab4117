//! Flat `key = value` configuration files.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Unknown keys are rejected with their line number. The same format is
//! emitted by [`write_config`], and a written config re-reads to an
//! identical run setup.
//!
//! Recognized keys (see the CLI help for semantics):
//! `d1 d2 a11 a12 a22 delta1 delta2 mu1 mu2 tau period s0` — model rates
//! (`T` is accepted as an alias for `period`);
//! `growth growth_m growth_a` — growth function (`beverton-holt`);
//! `impulse impulse_c impulse_d` — impulse map (`identity` or `saturating`);
//! `u0_amp v0_amp` — cosine initial-data amplitudes;
//! `n dt horizon vanish_eps spread_width snap_every impulse_at_start
//! early_stop` — simulation grid and outcome thresholds.

use crate::error::{Error, Result};
use crate::params::{GrowthFunction, ImpulseFunction, InitialData, ModelParams};
use crate::sim::SimConfig;
use std::collections::BTreeMap;

/// Parsed configuration: model parameters, cosine initial data, simulation
/// settings.
#[derive(Clone, Debug)]
pub struct Config {
    pub params: ModelParams,
    pub init: InitialData,
    pub sim: SimConfig,
    /// Cosine amplitudes, kept for round-trip emission.
    pub u0_amp: f64,
    pub v0_amp: f64,
}

fn parse_pairs(text: &str) -> Result<BTreeMap<String, (usize, String)>> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config {
                line: idx + 1,
                msg: format!("expected `key = value`, got {raw:?}"),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if value.is_empty() {
            return Err(Error::Config {
                line: idx + 1,
                msg: format!("empty value for key {key:?}"),
            });
        }
        if map.insert(key.clone(), (idx + 1, value)).is_some() {
            return Err(Error::Config {
                line: idx + 1,
                msg: format!("duplicate key {key:?}"),
            });
        }
    }
    Ok(map)
}

struct Fields {
    map: BTreeMap<String, (usize, String)>,
}

impl Fields {
    fn float(&mut self, key: &str) -> Result<Option<f64>> {
        match self.map.remove(key) {
            None => Ok(None),
            Some((line, value)) => value.parse::<f64>().map(Some).map_err(|_| Error::Config {
                line,
                msg: format!("key {key:?}: cannot parse {value:?} as a number"),
            }),
        }
    }

    fn float_required(&mut self, key: &str) -> Result<f64> {
        self.float(key)?.ok_or_else(|| Error::Config {
            line: 0,
            msg: format!("missing required key {key:?}"),
        })
    }

    fn usize_opt(&mut self, key: &str) -> Result<Option<usize>> {
        match self.map.remove(key) {
            None => Ok(None),
            Some((line, value)) => value.parse::<usize>().map(Some).map_err(|_| Error::Config {
                line,
                msg: format!("key {key:?}: cannot parse {value:?} as an integer"),
            }),
        }
    }

    fn bool_opt(&mut self, key: &str) -> Result<Option<bool>> {
        match self.map.remove(key) {
            None => Ok(None),
            Some((line, value)) => match value.as_str() {
                "true" | "1" | "yes" => Ok(Some(true)),
                "false" | "0" | "no" => Ok(Some(false)),
                _ => Err(Error::Config {
                    line,
                    msg: format!("key {key:?}: cannot parse {value:?} as a boolean"),
                }),
            },
        }
    }

    fn string_opt(&mut self, key: &str) -> Option<(usize, String)> {
        self.map.remove(key)
    }
}

/// Parses a configuration text into a run setup.
pub fn parse_config(text: &str) -> Result<Config> {
    let mut f = Fields {
        map: parse_pairs(text)?,
    };

    let d1 = f.float_required("d1")?;
    let d2 = f.float_required("d2")?;
    let a11 = f.float_required("a11")?;
    let a12 = f.float_required("a12")?;
    let a22 = f.float_required("a22")?;
    let delta1 = f.float_required("delta1")?;
    let delta2 = f.float_required("delta2")?;
    let mu1 = f.float_required("mu1")?;
    let mu2 = f.float_required("mu2")?;
    let tau = f.float_required("tau")?;
    let period = match f.float("period")? {
        Some(v) => v,
        None => f.float_required("T")?,
    };
    let s0 = f.float_required("s0")?;

    let growth = match f.string_opt("growth") {
        None => GrowthFunction::BevertonHolt {
            m: f.float_required("growth_m")?,
            a: f.float_required("growth_a")?,
        },
        Some((line, kind)) => match kind.as_str() {
            "beverton-holt" => GrowthFunction::BevertonHolt {
                m: f.float_required("growth_m")?,
                a: f.float_required("growth_a")?,
            },
            other => {
                return Err(Error::Config {
                    line,
                    msg: format!("unknown growth kind {other:?} (expected beverton-holt)"),
                })
            }
        },
    };
    let impulse = match f.string_opt("impulse") {
        None => ImpulseFunction::Identity,
        Some((line, kind)) => match kind.as_str() {
            "identity" => ImpulseFunction::Identity,
            "saturating" => ImpulseFunction::Saturating {
                c: f.float_required("impulse_c")?,
                d: f.float_required("impulse_d")?,
            },
            other => {
                return Err(Error::Config {
                    line,
                    msg: format!("unknown impulse kind {other:?} (expected identity or saturating)"),
                })
            }
        },
    };

    let params = ModelParams {
        d1,
        d2,
        a11,
        a12,
        a22,
        delta1,
        delta2,
        mu1,
        mu2,
        tau,
        period,
        s0,
        growth,
        impulse,
    };

    let u0_amp = f.float("u0_amp")?.unwrap_or(0.4);
    let v0_amp = f.float("v0_amp")?.unwrap_or(0.1);
    let init = InitialData::cosine(s0, u0_amp, v0_amp);

    let mut sim = SimConfig::defaults(&params);
    if let Some(n) = f.usize_opt("n")? {
        sim.n = n;
    }
    if let Some(dt) = f.float("dt")? {
        sim.dt = dt;
    }
    if let Some(h) = f.float("horizon")? {
        sim.horizon = h;
    }
    if let Some(e) = f.float("vanish_eps")? {
        sim.vanish_eps = e;
    }
    if let Some(w) = f.float("spread_width")? {
        sim.spread_width = w;
    }
    if let Some(k) = f.usize_opt("snap_every")? {
        sim.snap_every = k;
    }
    if let Some(b) = f.bool_opt("impulse_at_start")? {
        sim.impulse_at_start = b;
    }
    if let Some(b) = f.bool_opt("early_stop")? {
        sim.early_stop = b;
    }

    if let Some((key, (line, _))) = f.map.into_iter().next() {
        return Err(Error::Config {
            line,
            msg: format!("unknown key {key:?}"),
        });
    }
    Ok(Config {
        params,
        init,
        sim,
        u0_amp,
        v0_amp,
    })
}

/// Full-precision float formatting (17 significant digits) shared by config
/// emission and CSV export; round-trips exactly through `f64` parsing.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serializes the effective configuration; re-parsing reproduces an
/// identical run setup bit for bit.
pub fn write_config(cfg: &Config) -> String {
    let p = &cfg.params;
    let mut out = String::new();
    let mut kv = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
    kv("d1", fmt_f64(p.d1));
    kv("d2", fmt_f64(p.d2));
    kv("a11", fmt_f64(p.a11));
    kv("a12", fmt_f64(p.a12));
    kv("a22", fmt_f64(p.a22));
    kv("delta1", fmt_f64(p.delta1));
    kv("delta2", fmt_f64(p.delta2));
    kv("mu1", fmt_f64(p.mu1));
    kv("mu2", fmt_f64(p.mu2));
    kv("tau", fmt_f64(p.tau));
    kv("period", fmt_f64(p.period));
    kv("s0", fmt_f64(p.s0));
    match &p.growth {
        GrowthFunction::BevertonHolt { m, a } => {
            kv("growth", "beverton-holt".into());
            kv("growth_m", fmt_f64(*m));
            kv("growth_a", fmt_f64(*a));
        }
        GrowthFunction::Custom { .. } => {
            // custom evaluators are not expressible in a flat config
            kv("growth", "beverton-holt".into());
            kv("growth_m", fmt_f64(p.growth_slope()));
            kv("growth_a", fmt_f64(1.0));
        }
    }
    match &p.impulse {
        ImpulseFunction::Identity => kv("impulse", "identity".into()),
        ImpulseFunction::Saturating { c, d } => {
            kv("impulse", "saturating".into());
            kv("impulse_c", fmt_f64(*c));
            kv("impulse_d", fmt_f64(*d));
        }
        ImpulseFunction::Custom { .. } => kv("impulse", "identity".into()),
    }
    kv("u0_amp", fmt_f64(cfg.u0_amp));
    kv("v0_amp", fmt_f64(cfg.v0_amp));
    kv("n", cfg.sim.n.to_string());
    kv("dt", fmt_f64(cfg.sim.dt));
    kv("horizon", fmt_f64(cfg.sim.horizon));
    kv("vanish_eps", fmt_f64(cfg.sim.vanish_eps));
    kv("spread_width", fmt_f64(cfg.sim.spread_width));
    kv("snap_every", cfg.sim.snap_every.to_string());
    kv("impulse_at_start", cfg.sim.impulse_at_start.to_string());
    kv("early_stop", cfg.sim.early_stop.to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# impulse-intensity study, saturating intervention
d1 = 0.5
d2 = 0.5
a11 = 0.8
a12 = 1.67
a22 = 0.8
delta1 = 1.5
delta2 = 1.5
mu1 = 6
mu2 = 8
tau = 6
T = 20          # alias for period
s0 = 2
growth = beverton-holt
growth_m = 1.7
growth_a = 1
impulse = saturating
impulse_c = 4
impulse_d = 10
u0_amp = 0.4
v0_amp = 0.1
n = 64
dt = 0.01
horizon = 40
";

    #[test]
    fn parses_sample() {
        let cfg = parse_config(SAMPLE).unwrap();
        assert_eq!(cfg.params.period, 20.0);
        assert_eq!(cfg.params.impulse_slope(), 0.4);
        assert_eq!(cfg.sim.n, 64);
        assert_eq!(cfg.sim.horizon, 40.0);
        assert!(!cfg.sim.impulse_at_start);
    }

    #[test]
    fn round_trip_is_identical() {
        let cfg = parse_config(SAMPLE).unwrap();
        let text = write_config(&cfg);
        let cfg2 = parse_config(&text).unwrap();
        let text2 = write_config(&cfg2);
        assert_eq!(text, text2);
    }

    #[test]
    fn unknown_key_reports_line_number() {
        let bad = format!("{SAMPLE}\nbogus_key = 3\n");
        let err = parse_config(&bad).unwrap_err();
        match err {
            Error::Config { line, msg } => {
                assert!(msg.contains("bogus_key"));
                assert!(line > 20, "line {line}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn bad_number_reports_line_number() {
        let bad = SAMPLE.replace("mu1 = 6", "mu1 = six");
        let err = parse_config(&bad).unwrap_err();
        match err {
            Error::Config { line, msg } => {
                assert!(msg.contains("mu1"));
                assert_eq!(line, 9);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn missing_key_is_an_error() {
        let bad = SAMPLE.replace("a22 = 0.8\n", "");
        assert!(parse_config(&bad).is_err());
    }
}
