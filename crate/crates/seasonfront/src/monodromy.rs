//! Discrete oracle for the principal eigenvalue: power iteration on the
//! one-period monodromy operator of the linearized system.
//!
//! The operator advances a paired grid function over one full period of the
//! lambda-free linearization — impulse factor first, then the dry season,
//! then the wet season — on a fixed interval with zero Dirichlet ends and
//! the standard second-order central Laplacian. Its spectral radius `rho`
//! recovers the eigenvalue through `lambda1 = -ln(rho)/T`.

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::tridiag;

/// One-period linearized evolution on a fixed grid.
///
/// Positivity preserving and linear; both properties are exercised by tests
/// rather than assumed.
#[derive(Clone, Debug)]
pub struct MonodromyOperator {
    pub l1: f64,
    pub l2: f64,
    pub n: usize,
    pub dt: f64,
    pub impulse_slope: f64,
    period: f64,
    dry_steps: usize,
    dt_dry: f64,
    wet_steps: usize,
    dt_wet: f64,
    h: f64,
    d1: f64,
    d2: f64,
    delta1: f64,
    delta2: f64,
    /// Half-step wet reaction propagator `I + hR + h^2 R^2 / 2` (explicit
    /// second-order update of the coupling), row-major 2x2.
    react_half: [f64; 4],
}

/// Builds the period map for the interval `(l1, l2)` with `n` interior nodes
/// and nominal step `dt` (adjusted per season so steps divide exactly).
pub fn build_monodromy(
    params: &ModelParams,
    l1: f64,
    l2: f64,
    n: usize,
    dt: f64,
) -> Result<MonodromyOperator> {
    if n < 16 {
        return Err(Error::InvalidParameter(format!(
            "monodromy grid needs at least 16 interior nodes, got {n}"
        )));
    }
    if !(l1 < l2) {
        return Err(Error::InvalidParameter(format!(
            "interval endpoints must satisfy l1 < l2, got ({l1}, {l2})"
        )));
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    let fp0 = params.growth_slope();
    if dt * params.a12.max(fp0) >= 1.0 {
        return Err(Error::Stability(format!(
            "explicit coupling requires dt * max(a12, f'(0)) < 1, got {}",
            dt * params.a12.max(fp0)
        )));
    }
    let dry_steps = (params.tau / dt).round().max(1.0) as usize;
    let wet_steps = (params.wet_len() / dt).round().max(1.0) as usize;
    let dt_wet = params.wet_len() / wet_steps as f64;
    let hh = 0.5 * dt_wet;
    // R = [[-a11, a12], [f'(0), -a22]]
    let r = [-params.a11, params.a12, fp0, -params.a22];
    let r2 = [
        r[0] * r[0] + r[1] * r[2],
        r[0] * r[1] + r[1] * r[3],
        r[2] * r[0] + r[3] * r[2],
        r[2] * r[1] + r[3] * r[3],
    ];
    let mut react_half = [0.0; 4];
    for i in 0..4 {
        let ident = if i == 0 || i == 3 { 1.0 } else { 0.0 };
        react_half[i] = ident + hh * r[i] + 0.5 * hh * hh * r2[i];
    }
    Ok(MonodromyOperator {
        l1,
        l2,
        n,
        dt,
        impulse_slope: params.impulse_slope(),
        period: params.period,
        dry_steps,
        dt_dry: params.tau / dry_steps as f64,
        wet_steps,
        dt_wet,
        h: (l2 - l1) / (n + 1) as f64,
        d1: params.d1,
        d2: params.d2,
        delta1: params.delta1,
        delta2: params.delta2,
        react_half,
    })
}

impl MonodromyOperator {
    pub fn period(&self) -> f64 {
        self.period
    }

    /// Crank-Nicolson step for `w_t = d w_xx - c w` on the interior nodes.
    fn cn_step(&self, w: &mut [f64], d: f64, c: f64, dt: f64, rhs: &mut [f64], scratch: &mut [f64]) {
        let nu = d * dt / (self.h * self.h);
        let diag_l = 1.0 + nu + 0.5 * dt * c;
        let off_l = -0.5 * nu;
        let diag_r = 1.0 - nu - 0.5 * dt * c;
        let off_r = 0.5 * nu;
        let n = self.n;
        for i in 0..n {
            let left = if i > 0 { w[i - 1] } else { 0.0 };
            let right = if i + 1 < n { w[i + 1] } else { 0.0 };
            rhs[i] = diag_r * w[i] + off_r * (left + right);
        }
        tridiag::solve_const(off_l, diag_l, off_l, rhs, scratch);
        w.copy_from_slice(rhs);
    }

    /// Applies the period map in place: impulse, dry season, wet season.
    pub fn apply(&self, phi: &mut [f64], psi: &mut [f64]) {
        assert_eq!(phi.len(), self.n);
        assert_eq!(psi.len(), self.n);
        let mut rhs = vec![0.0; self.n];
        let mut scratch = vec![0.0; self.n];

        for p in phi.iter_mut() {
            *p *= self.impulse_slope;
        }

        // dry: agents decay exactly, humans diffuse and decay
        let agent_factor = (-self.delta1 * self.dry_steps as f64 * self.dt_dry).exp();
        for p in phi.iter_mut() {
            *p *= agent_factor;
        }
        for _ in 0..self.dry_steps {
            self.cn_step(psi, self.d2, self.delta2, self.dt_dry, &mut rhs, &mut scratch);
        }

        // wet: explicit coupling half-step, implicit diffusion, half-step
        let e = &self.react_half;
        for _ in 0..self.wet_steps {
            for i in 0..self.n {
                let (p, q) = (phi[i], psi[i]);
                phi[i] = e[0] * p + e[1] * q;
                psi[i] = e[2] * p + e[3] * q;
            }
            self.cn_step(phi, self.d1, 0.0, self.dt_wet, &mut rhs, &mut scratch);
            self.cn_step(psi, self.d2, 0.0, self.dt_wet, &mut rhs, &mut scratch);
            for i in 0..self.n {
                let (p, q) = (phi[i], psi[i]);
                phi[i] = e[0] * p + e[1] * q;
                psi[i] = e[2] * p + e[3] * q;
            }
        }
    }

    /// Positive interior sine mode, the default power-iteration start.
    pub fn sine_start(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mode: Vec<f64> = (1..=n)
            .map(|i| (std::f64::consts::PI * i as f64 / (n + 1) as f64).sin())
            .collect();
        (mode.clone(), mode)
    }
}

/// Dominant-eigenvalue power iteration on the period map; returns
/// `lambda1 = -ln(rho)/T`.
///
/// Convergence is declared when successive Rayleigh quotients agree to the
/// relative tolerance; the iterate is checked to stay componentwise positive.
pub fn lambda1_discrete(op: &MonodromyOperator, tol: f64, max_iter: usize) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let (mut phi, mut psi) = op.sine_start();
    let mut rho_prev: Option<f64> = None;
    let mut last_two = (f64::NAN, f64::NAN);
    for iter in 0..max_iter {
        let (phi_old, psi_old) = (phi.clone(), psi.clone());
        op.apply(&mut phi, &mut psi);
        let floor = -1e-12
            * phi
                .iter()
                .chain(psi.iter())
                .fold(0.0_f64, |m, &x| m.max(x.abs()));
        if phi.iter().chain(psi.iter()).any(|&x| x < floor) {
            return Err(Error::EigenSolve(format!(
                "power iterate lost positivity at iteration {iter}"
            )));
        }
        let num: f64 = phi.iter().zip(&phi_old).map(|(a, b)| a * b).sum::<f64>()
            + psi.iter().zip(&psi_old).map(|(a, b)| a * b).sum::<f64>();
        let den: f64 = phi_old.iter().map(|a| a * a).sum::<f64>()
            + psi_old.iter().map(|a| a * a).sum::<f64>();
        let rho = num / den;
        last_two = (last_two.1, rho);
        let norm = (phi.iter().map(|a| a * a).sum::<f64>()
            + psi.iter().map(|a| a * a).sum::<f64>())
        .sqrt();
        for x in phi.iter_mut().chain(psi.iter_mut()) {
            *x /= norm;
        }
        if let Some(prev) = rho_prev {
            if (rho - prev).abs() <= tol * rho.abs() {
                if !(rho > 0.0) {
                    return Err(Error::EigenSolve(format!(
                        "spectral radius estimate {rho} is not positive"
                    )));
                }
                return Ok(-rho.ln() / op.period());
            }
        }
        rho_prev = Some(rho);
    }
    Err(Error::NonConvergence {
        what: "power iteration",
        iterations: max_iter,
        detail: format!("last two Rayleigh quotients {:?}", last_two),
    })
}
