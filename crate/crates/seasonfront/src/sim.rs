//! Nonlinear forward solver: frozen-domain dry season, Stefan free-boundary
//! wet season, impulse at each period wrap.
//!
//! The densities live on a front-fixed grid `xi in [0, 1]` mapped to the
//! physical interval by `x = r + xi (s - r)`. On that grid the wet-season
//! equations pick up an advection term `(r' + xi (s' - r'))/(s - r) * u_xi`.
//! Diffusion is integrated implicitly (Crank-Nicolson); advection and
//! reaction are explicit; the fronts advance explicitly one step behind the
//! densities, driven by second-order one-sided boundary gradients.

use crate::classify::{Outcome, Verdict};
use crate::eigen;
use crate::error::{Error, Result};
use crate::params::{InitialData, ModelParams};
use crate::tridiag;

/// Season marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Dry,
    Wet,
}

/// Instantaneous solver state. Densities are sampled on the `n + 2` nodes of
/// the normalized grid, boundary nodes pinned at zero.
#[derive(Clone, Debug)]
pub struct SimState {
    pub t: f64,
    pub phase: Phase,
    pub r: f64,
    pub s: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub period_index: usize,
}

impl SimState {
    /// Samples the initial data onto the normalized grid.
    pub fn new(params: &ModelParams, init: &InitialData, n: usize) -> Self {
        let s0 = params.s0;
        let mut u = vec![0.0; n + 2];
        let mut v = vec![0.0; n + 2];
        for i in 1..=n {
            let x = -s0 + 2.0 * s0 * i as f64 / (n + 1) as f64;
            u[i] = init.u0(x);
            v[i] = init.v0(x);
        }
        SimState {
            t: 0.0,
            phase: Phase::Dry,
            r: -s0,
            s: s0,
            u,
            v,
            period_index: 0,
        }
    }

    pub fn n_interior(&self) -> usize {
        self.u.len() - 2
    }

    pub fn width(&self) -> f64 {
        self.s - self.r
    }

    pub fn sup_u(&self) -> f64 {
        self.u.iter().fold(0.0_f64, |m, &x| m.max(x))
    }

    pub fn sup_v(&self) -> f64 {
        self.v.iter().fold(0.0_f64, |m, &x| m.max(x))
    }

    /// Physical position of grid node `i`.
    pub fn x_of(&self, i: usize) -> f64 {
        self.r + (self.s - self.r) * i as f64 / (self.u.len() - 1) as f64
    }

    /// Density pair at physical position `x` by linear interpolation; zero
    /// outside the current interval.
    pub fn at_x(&self, x: f64) -> (f64, f64) {
        if x <= self.r || x >= self.s {
            return (0.0, 0.0);
        }
        let xi = (x - self.r) / (self.s - self.r) * (self.u.len() - 1) as f64;
        let i = (xi.floor() as usize).min(self.u.len() - 2);
        let frac = xi - i as f64;
        (
            self.u[i] * (1.0 - frac) + self.u[i + 1] * frac,
            self.v[i] * (1.0 - frac) + self.v[i + 1] * frac,
        )
    }
}

/// Grid, stepping, and outcome-detection settings.
#[derive(Clone, Debug)]
pub struct SimConfig {
    /// Interior grid nodes.
    pub n: usize,
    /// Nominal time step; each season uses the nearest exact divisor.
    pub dt: f64,
    /// Final simulated time.
    pub horizon: f64,
    /// Sup-norm threshold below which the state counts as extinct.
    pub vanish_eps: f64,
    /// Width that, together with a negative eigenvalue, certifies spreading.
    pub spread_width: f64,
    /// Snapshot cadence in accepted steps; 0 disables snapshots.
    pub snap_every: usize,
    /// Apply the impulse to the initial data (the period-0 wrap reading).
    pub impulse_at_start: bool,
    /// Stop as soon as the outcome is decided at a period end.
    pub early_stop: bool,
}

impl SimConfig {
    /// Defaults: 400 nodes, `dt = min(tau, T - tau)/2000`, horizon `10 T`,
    /// vanish threshold `1e-4`, spread width `8 s0`.
    pub fn defaults(params: &ModelParams) -> Self {
        SimConfig {
            n: 400,
            dt: params.tau.min(params.wet_len()) / 2000.0,
            horizon: 10.0 * params.period,
            vanish_eps: 1e-4,
            spread_width: 8.0 * params.s0,
            snap_every: 0,
            impulse_at_start: false,
            early_stop: true,
        }
    }
}

/// Stored density snapshot.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub t: f64,
    pub r: f64,
    pub s: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Per-step front and sup-norm history plus snapshots at the configured
/// cadence.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub sup_u: Vec<f64>,
    pub sup_v: Vec<f64>,
    /// Densities at the domain midpoint `x = 0`, for orbit comparisons.
    pub center_u: Vec<f64>,
    pub center_v: Vec<f64>,
    pub snapshots: Vec<Snapshot>,
    pub final_state: SimState,
}

impl Trajectory {
    fn record(&mut self, state: &SimState) {
        self.times.push(state.t);
        self.r.push(state.r);
        self.s.push(state.s);
        self.sup_u.push(state.sup_u());
        self.sup_v.push(state.sup_v());
        let (cu, cv) = state.at_x(0.0);
        self.center_u.push(cu);
        self.center_v.push(cv);
    }

    /// Total movement of both fronts over the trailing window `[t_end - T, t_end]`.
    pub fn front_movement_over(&self, window: f64) -> f64 {
        let t_end = *self.times.last().unwrap();
        let cut = t_end - window;
        let idx = self.times.partition_point(|&t| t < cut);
        let idx = idx.min(self.times.len() - 1);
        (self.s.last().unwrap() - self.s[idx]) + (self.r[idx] - self.r.last().unwrap())
    }
}

/// Undershoot below this absolute level rejects the step; milder negatives
/// are clamped to zero.
const NEG_TOL: f64 = 1e-12;

/// A step is halved at most this many times before aborting.
const MAX_HALVINGS: u32 = 24;

struct Scratch {
    rhs: Vec<f64>,
    aux: Vec<f64>,
    u_try: Vec<f64>,
    v_try: Vec<f64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            rhs: vec![0.0; n],
            aux: vec![0.0; n],
            u_try: vec![0.0; n + 2],
            v_try: vec![0.0; n + 2],
        }
    }
}

/// Crank-Nicolson update of the interior of `w` for
/// `w_t = dcoef w_xixi / len^2 - decay w + extra(xi)` with zero ends.
#[allow(clippy::too_many_arguments)]
fn cn_interior(
    w: &mut [f64],
    dcoef: f64,
    len: f64,
    decay: f64,
    dt: f64,
    extra: Option<&[f64]>,
    rhs: &mut [f64],
    aux: &mut [f64],
) {
    let n = w.len() - 2;
    let h = 1.0 / (n + 1) as f64;
    let nu = dcoef * dt / (len * len * h * h);
    let diag_l = 1.0 + nu + 0.5 * dt * decay;
    let off_l = -0.5 * nu;
    let diag_r = 1.0 - nu - 0.5 * dt * decay;
    let off_r = 0.5 * nu;
    for i in 1..=n {
        rhs[i - 1] = diag_r * w[i] + off_r * (w[i - 1] + w[i + 1]);
        if let Some(e) = extra {
            rhs[i - 1] += dt * e[i - 1];
        }
    }
    tridiag::solve_const(off_l, diag_l, off_l, &mut rhs[..n], &mut aux[..n]);
    w[1..=n].copy_from_slice(&rhs[..n]);
}

/// One dry-season step: the agent density decays exactly by
/// `exp(-delta1 dt)`, the human density takes a Crank-Nicolson step of
/// `v_t = d2 v_xx - delta2 v` on the frozen interval.
pub fn step_dry(state: &mut SimState, params: &ModelParams, dt: f64) {
    let mut scratch = Scratch::new(state.n_interior());
    step_dry_with(state, params, dt, &mut scratch);
}

fn step_dry_with(state: &mut SimState, params: &ModelParams, dt: f64, scratch: &mut Scratch) {
    debug_assert_eq!(state.phase, Phase::Dry);
    let factor = (-params.delta1 * dt).exp();
    for x in state.u.iter_mut() {
        *x *= factor;
    }
    let width = state.width();
    cn_interior(
        &mut state.v,
        params.d2,
        width,
        params.delta2,
        dt,
        None,
        &mut scratch.rhs,
        &mut scratch.aux,
    );
    state.t += dt;
}

/// Second-order one-sided boundary gradients of a grid function in physical
/// coordinates; returns (left-end slope, right-end slope).
fn boundary_gradients(w: &[f64], h_phys: f64) -> (f64, f64) {
    let n = w.len() - 2;
    let left = (4.0 * w[1] - w[2]) / (2.0 * h_phys);
    let right = (w[n - 1] - 4.0 * w[n]) / (2.0 * h_phys);
    (left, right)
}

/// One wet-season step. On density undershoot below `-1e-12` or a front
/// reversal the step is rejected and retried as two half steps; persistent
/// rejection aborts with diagnostics.
pub fn step_wet(state: &mut SimState, params: &ModelParams, dt: f64) -> Result<()> {
    let mut scratch = Scratch::new(state.n_interior());
    step_wet_with(state, params, dt, 0, &mut scratch)
}

fn step_wet_with(
    state: &mut SimState,
    params: &ModelParams,
    dt: f64,
    depth: u32,
    scratch: &mut Scratch,
) -> Result<()> {
    debug_assert_eq!(state.phase, Phase::Wet);
    match try_wet_step(state, params, dt, scratch) {
        Ok(()) => Ok(()),
        Err(reason) => {
            if depth >= MAX_HALVINGS {
                return Err(Error::StepRejection {
                    t: state.t,
                    reason,
                });
            }
            step_wet_with(state, params, 0.5 * dt, depth + 1, scratch)?;
            step_wet_with(state, params, 0.5 * dt, depth + 1, scratch)
        }
    }
}

/// Attempts a single wet step; `Err(reason)` requests a halved retry.
fn try_wet_step(
    state: &mut SimState,
    params: &ModelParams,
    dt: f64,
    scratch: &mut Scratch,
) -> std::result::Result<(), String> {
    let n = state.n_interior();
    let h = 1.0 / (n + 1) as f64;
    let width = state.width();
    let h_phys = width * h;

    let (ux_l, ux_r) = boundary_gradients(&state.u, h_phys);
    let (vx_l, vx_r) = boundary_gradients(&state.v, h_phys);
    let mut s_dot = -params.mu1 * ux_r - params.mu2 * vx_r;
    let mut r_dot = -params.mu1 * ux_l - params.mu2 * vx_l;
    // Hopf-consistent gradients keep s_dot >= 0 >= r_dot; round-off on a
    // nearly extinct profile may flip the sign at negligible magnitude.
    if s_dot < 0.0 {
        if s_dot * dt >= -1e-13 * width {
            s_dot = 0.0;
        } else {
            return Err(format!("right front would reverse (s_dot = {s_dot:e})"));
        }
    }
    if r_dot > 0.0 {
        if r_dot * dt <= 1e-13 * width {
            r_dot = 0.0;
        } else {
            return Err(format!("left front would reverse (r_dot = {r_dot:e})"));
        }
    }
    // keep each front under half a cell per step: the explicit advection of
    // the front-fixed transform is unstable past that, and once the profile
    // oscillates no amount of halving recovers it
    let cfl = s_dot.max(-r_dot) * dt * (n as f64 + 1.0) / width;
    if cfl > 0.5 {
        return Err(format!("front sweeps {cfl:.2} cells per step"));
    }
    let s_new = state.s + dt * s_dot;
    let r_new = state.r + dt * r_dot;
    let w_new = s_new - r_new;

    let Scratch {
        rhs,
        aux,
        u_try,
        v_try,
    } = scratch;
    u_try.copy_from_slice(&state.u);
    v_try.copy_from_slice(&state.v);
    let fp = |u: f64| params.growth.eval(u);
    // explicit advection + reaction terms, then implicit diffusion
    let mut extra_u = vec![0.0; n];
    let mut extra_v = vec![0.0; n];
    for i in 1..=n {
        let xi = i as f64 * h;
        let adv = (r_dot + xi * (s_dot - r_dot)) / w_new;
        let du = (state.u[i + 1] - state.u[i - 1]) / (2.0 * h);
        let dv = (state.v[i + 1] - state.v[i - 1]) / (2.0 * h);
        extra_u[i - 1] = adv * du - params.a11 * state.u[i] + params.a12 * state.v[i];
        extra_v[i - 1] = adv * dv - params.a22 * state.v[i] + fp(state.u[i]);
    }
    cn_interior(u_try, params.d1, w_new, 0.0, dt, Some(&extra_u), rhs, aux);
    cn_interior(v_try, params.d2, w_new, 0.0, dt, Some(&extra_v), rhs, aux);

    let min_u = u_try.iter().cloned().fold(f64::INFINITY, f64::min);
    let min_v = v_try.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_u < -NEG_TOL || min_v < -NEG_TOL {
        return Err(format!("density undershoot ({:e})", min_u.min(min_v)));
    }
    for x in u_try.iter_mut().chain(v_try.iter_mut()) {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    state.u.copy_from_slice(u_try);
    state.v.copy_from_slice(v_try);
    state.s = s_new;
    state.r = r_new;
    state.t += dt;
    Ok(())
}

/// Applies the impulse map to the agent density nodewise; the human density,
/// fronts, and grid are untouched.
pub fn apply_impulse(state: &mut SimState, params: &ModelParams) {
    for x in state.u.iter_mut() {
        *x = params.impulse.eval(*x);
    }
}

/// Runs the model forward: per period an impulse at the wrap (from the first
/// wrap at `t = T` unless `impulse_at_start` is set), a dry season on the
/// frozen interval, then a wet season with moving fronts.
pub fn run(params: &ModelParams, init: &InitialData, cfg: &SimConfig) -> Result<Trajectory> {
    if cfg.n < 32 {
        return Err(Error::InvalidParameter(format!(
            "simulation grid needs at least 32 interior nodes, got {}",
            cfg.n
        )));
    }
    if !(cfg.dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {}", cfg.dt)));
    }
    let mut state = SimState::new(params, init, cfg.n);
    let mut scratch = Scratch::new(cfg.n);
    let mut traj = Trajectory {
        times: Vec::new(),
        r: Vec::new(),
        s: Vec::new(),
        sup_u: Vec::new(),
        sup_v: Vec::new(),
        center_u: Vec::new(),
        center_v: Vec::new(),
        snapshots: Vec::new(),
        final_state: state.clone(),
    };
    traj.record(&state);
    let mut steps_done = 0usize;
    let snap = |traj: &mut Trajectory, state: &SimState, steps: usize| {
        if cfg.snap_every > 0 && steps % cfg.snap_every == 0 {
            traj.snapshots.push(Snapshot {
                t: state.t,
                r: state.r,
                s: state.s,
                u: state.u.clone(),
                v: state.v.clone(),
            });
        }
    };
    snap(&mut traj, &state, 0);

    let horizon = cfg.horizon;
    'outer: for m in 0.. {
        if state.t >= horizon - 1e-12 {
            break;
        }
        state.period_index = m;
        if m > 0 || cfg.impulse_at_start {
            apply_impulse(&mut state, params);
        }

        state.phase = Phase::Dry;
        let n_dry = (params.tau / cfg.dt).round().max(1.0) as usize;
        let dtd = params.tau / n_dry as f64;
        for _ in 0..n_dry {
            let dt = dtd.min(horizon - state.t);
            if dt <= 1e-14 {
                break 'outer;
            }
            step_dry_with(&mut state, params, dt, &mut scratch);
            steps_done += 1;
            traj.record(&state);
            snap(&mut traj, &state, steps_done);
            if dt < dtd {
                break 'outer;
            }
        }

        state.phase = Phase::Wet;
        let n_wet = (params.wet_len() / cfg.dt).round().max(1.0) as usize;
        let dtw = params.wet_len() / n_wet as f64;
        for _ in 0..n_wet {
            let dt = dtw.min(horizon - state.t);
            if dt <= 1e-14 {
                break 'outer;
            }
            step_wet_with(&mut state, params, dt, 0, &mut scratch)?;
            steps_done += 1;
            traj.record(&state);
            snap(&mut traj, &state, steps_done);
            if dt < dtw {
                break 'outer;
            }
        }

        if cfg.early_stop && state.t >= params.period {
            traj.final_state = state.clone();
            let outcome = detect_outcome(&traj, cfg, params);
            if outcome.verdict != Verdict::Undecided {
                break;
            }
        }
    }
    traj.final_state = state;
    Ok(traj)
}

/// Classifies a finished (or in-progress) trajectory.
///
/// Spreading: the eigenvalue on the current interval is negative and the
/// width exceeds the configured threshold, so the width cannot stay bounded.
/// Vanishing: both sup norms are below the threshold and neither front moved
/// more than a grid spacing over the last full period. Anything else is
/// undecided at the horizon.
pub fn detect_outcome(traj: &Trajectory, cfg: &SimConfig, params: &ModelParams) -> Outcome {
    let mut outcome = Outcome::undecided();
    if traj.times.is_empty() {
        return outcome;
    }
    let (r_end, s_end) = (*traj.r.last().unwrap(), *traj.s.last().unwrap());
    let width = s_end - r_end;
    outcome.final_width = Some(width);
    outcome.final_sup = Some((*traj.sup_u.last().unwrap(), *traj.sup_v.last().unwrap()));

    let lambda_here = eigen::lambda1_interval(params, r_end, s_end)
        .map(|sol| sol.lambda1)
        .ok();
    outcome.lambda1_current = lambda_here;

    if let Some(lam) = lambda_here {
        if lam < 0.0 && width > cfg.spread_width {
            outcome.verdict = Verdict::Spreading;
            outcome.notes.push(format!(
                "eigenvalue {lam:.6} < 0 on the current interval ({r_end:.3}, {s_end:.3}) with width {width:.3} > {}",
                cfg.spread_width
            ));
            return outcome;
        }
    }

    let t_end = *traj.times.last().unwrap();
    if t_end >= params.period {
        let moved = traj.front_movement_over(params.period);
        outcome.front_move_last_period = Some(moved);
        let spacing = width / (cfg.n + 1) as f64;
        let sup_total = traj.sup_u.last().unwrap() + traj.sup_v.last().unwrap();
        if sup_total < cfg.vanish_eps && moved < spacing {
            outcome.verdict = Verdict::Vanishing;
            outcome.notes.push(format!(
                "sup_u + sup_v = {sup_total:.3e} < {} and fronts moved {moved:.3e} < grid spacing {spacing:.3e} over the last period",
                cfg.vanish_eps
            ));
            return outcome;
        }
    }
    outcome
}
