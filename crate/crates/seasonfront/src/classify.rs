//! Spreading-vanishing classification and the sharp expansion-capacity
//! threshold.
//!
//! The criteria use two eigenvalues only: the large-interval limit `nu1` and
//! the initial-interval value `lambda1(s0)`. Nonnegative `nu1` forces
//! vanishing; negative `nu1` with nonpositive `lambda1(s0)` forces spreading;
//! between the two the outcome depends on the expansion capacities through a
//! sharp threshold `mu*`, estimated here by bisection on forward simulations.

use crate::eigen;
use crate::error::{Error, Result};
use crate::params::{InitialData, ModelParams};
use crate::sim::{self, SimConfig};

/// Classification verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Spreading,
    Vanishing,
    /// Negative limit eigenvalue but positive initial-interval eigenvalue:
    /// the outcome depends on the expansion capacities.
    ThresholdRegime,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Spreading => "spreading",
            Verdict::Vanishing => "vanishing",
            Verdict::ThresholdRegime => "threshold-regime",
            Verdict::Undecided => "undecided",
        };
        write!(f, "{s}")
    }
}

/// Verdict with the evidence that produced it.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    /// Large-interval limit eigenvalue, when computed.
    pub nu1: Option<f64>,
    /// Eigenvalue on the initial interval, when computed.
    pub lambda1_s0: Option<f64>,
    /// Eigenvalue on the trajectory's final interval, when computed.
    pub lambda1_current: Option<f64>,
    pub final_width: Option<f64>,
    pub final_sup: Option<(f64, f64)>,
    pub front_move_last_period: Option<f64>,
    pub mu_star: Option<MuStarEstimate>,
    /// Provenance notes: which case fired, tolerances involved.
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn undecided() -> Self {
        Outcome {
            verdict: Verdict::Undecided,
            nu1: None,
            lambda1_s0: None,
            lambda1_current: None,
            final_width: None,
            final_sup: None,
            front_move_last_period: None,
            mu_star: None,
            notes: Vec::new(),
        }
    }

    /// Flat `key = value` report of the verdict and its evidence.
    pub fn report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("verdict = {}\n", self.verdict));
        let scalars = [
            ("nu1", self.nu1),
            ("lambda1_s0", self.lambda1_s0),
            ("lambda1_current", self.lambda1_current),
            ("final_width", self.final_width),
        ];
        for (key, val) in scalars {
            if let Some(v) = val {
                out.push_str(&format!("{key} = {v:.12e}\n"));
            }
        }
        if let Some((u, v)) = self.final_sup {
            out.push_str(&format!("final_sup_u = {u:.12e}\nfinal_sup_v = {v:.12e}\n"));
        }
        if let Some(v) = self.front_move_last_period {
            out.push_str(&format!("front_move_last_period = {v:.12e}\n"));
        }
        if let Some(ms) = &self.mu_star {
            out.push_str(&format!(
                "mu_star_lo = {:.12e}\nmu_star_hi = {:.12e}\n",
                ms.bracket.0, ms.bracket.1
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note = {n}\n"));
        }
        out
    }
}

/// `nu1` within this distance of zero is treated as nonnegative, invoking
/// the high-risk-at-infinity reading of the borderline case.
pub const NU1_ZERO_TOL: f64 = 1e-8;

/// Eigenvalue-only classification of the model instance.
pub fn classify(params: &ModelParams, init: &InitialData) -> Result<Outcome> {
    let nu = eigen::nu1(params)?.lambda1;
    let s0 = init.s0();
    let lam_s0 = eigen::lambda1_interval(params, -s0, s0)?.lambda1;
    let mut outcome = Outcome::undecided();
    outcome.nu1 = Some(nu);
    outcome.lambda1_s0 = Some(lam_s0);
    if nu >= -NU1_ZERO_TOL {
        outcome.verdict = Verdict::Vanishing;
        if nu < NU1_ZERO_TOL {
            outcome.notes.push(format!(
                "nu1 = {nu:.3e} within {NU1_ZERO_TOL:.0e} of zero; treated as nonnegative under the high-risk-at-infinity assumption"
            ));
        } else {
            outcome
                .notes
                .push(format!("nu1 = {nu:.6} >= 0: vanishing for every expansion capacity"));
        }
    } else if lam_s0 <= 0.0 {
        outcome.verdict = Verdict::Spreading;
        outcome.notes.push(format!(
            "nu1 = {nu:.6} < 0 and lambda1(s0) = {lam_s0:.6} <= 0: spreading for every expansion capacity"
        ));
    } else {
        outcome.verdict = Verdict::ThresholdRegime;
        outcome.notes.push(format!(
            "nu1 = {nu:.6} < 0 < lambda1(s0) = {lam_s0:.6}: outcome decided by the expansion capacities"
        ));
    }
    Ok(outcome)
}

/// Status of a threshold search.
#[derive(Clone, Debug, PartialEq)]
pub enum MuStarStatus {
    Resolved,
    /// A probe came back undecided at the simulation horizon; the bisection
    /// pauses rather than guesses.
    PausedUndecided { mu1: f64 },
}

/// Bisection estimate of the expansion-capacity threshold.
#[derive(Clone, Debug)]
pub struct MuStarEstimate {
    /// Final bracket `(mu_lo, mu_hi)`: vanishing at the low end, spreading
    /// at the high end.
    pub bracket: (f64, f64),
    /// Probe history in execution order.
    pub history: Vec<(f64, Verdict)>,
    /// Whether the verdicts along increasing `mu1` were monotone
    /// (vanishing below, spreading above). A violation is reported as a
    /// resolution diagnostic, never silently dropped.
    pub monotone: bool,
    pub status: MuStarStatus,
}

fn probe(
    params: &ModelParams,
    init: &InitialData,
    rho: f64,
    mu1: f64,
    cfg: &SimConfig,
) -> Result<Verdict> {
    let mut p = params.clone();
    p.mu1 = mu1;
    p.mu2 = rho * mu1;
    let traj = sim::run(&p, init, cfg)?;
    Ok(sim::detect_outcome(&traj, cfg, &p).verdict)
}

/// Bisection for the sharp threshold `mu*` along the ray `mu2 = rho * mu1`.
///
/// Both bracket endpoints are probed first and must disagree (vanishing low,
/// spreading high). The search narrows until the bracket width drops below
/// `resolution`. Finite-horizon probe verdicts are a heuristic stand-in for
/// the true asymptotics; an undecided probe pauses the search.
pub fn find_mu_star(
    params: &ModelParams,
    init: &InitialData,
    rho: f64,
    bracket: (f64, f64),
    resolution: f64,
    cfg: &SimConfig,
) -> Result<MuStarEstimate> {
    let (mut lo, mut hi) = bracket;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "mu bracket must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )));
    }
    let mut history = Vec::new();
    let v_lo = probe(params, init, rho, lo, cfg)?;
    history.push((lo, v_lo));
    let v_hi = probe(params, init, rho, hi, cfg)?;
    history.push((hi, v_hi));
    for (mu, v) in [(lo, v_lo), (hi, v_hi)] {
        if v == Verdict::Undecided {
            return Ok(MuStarEstimate {
                bracket: (lo, hi),
                history,
                monotone: true,
                status: MuStarStatus::PausedUndecided { mu1: mu },
            });
        }
    }
    if v_lo != Verdict::Vanishing || v_hi != Verdict::Spreading {
        return Err(Error::BracketNotStraddling {
            lo,
            hi,
            verdict: format!("low: {v_lo}, high: {v_hi}"),
        });
    }
    let mut status = MuStarStatus::Resolved;
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        let v = probe(params, init, rho, mid, cfg)?;
        history.push((mid, v));
        match v {
            Verdict::Vanishing => lo = mid,
            Verdict::Spreading => hi = mid,
            _ => {
                status = MuStarStatus::PausedUndecided { mu1: mid };
                break;
            }
        }
    }
    // monotonicity audit over the probes sorted by mu1
    let mut sorted = history.clone();
    sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut seen_spreading = false;
    let mut monotone = true;
    for (_, v) in &sorted {
        match v {
            Verdict::Spreading => seen_spreading = true,
            Verdict::Vanishing if seen_spreading => {
                monotone = false;
            }
            _ => {}
        }
    }
    Ok(MuStarEstimate {
        bracket: (lo, hi),
        history,
        monotone,
        status,
    })
}
