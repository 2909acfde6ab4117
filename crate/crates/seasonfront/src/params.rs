//! Model parameters, growth/impulse function contracts, assumption checks,
//! and the a-priori solution bounds.
//!
//! The model couples an infectious-agent density `u` and an infective-human
//! density `v` on a symmetric interval with moving endpoints. Each period of
//! length `T` starts with a dry season of length `tau` (no agent diffusion,
//! no cross-infection, frozen fronts) followed by a wet season with the full
//! coupled dynamics and Stefan front motion. At each period wrap the agent
//! density is hit by the impulse map `u -> H(u)`; the human density is left
//! continuous.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Human infection-rate function `f`. Required to satisfy: `f(0) = 0`,
/// `f' > 0`, `f(u)/u` strictly decreasing, and `lim f(u)/u < a11*a22/a12`.
#[derive(Clone)]
pub enum GrowthFunction {
    /// `f(u) = m*u / (a + u)`, the saturating form used in the experiments.
    BevertonHolt { m: f64, a: f64 },
    /// User-supplied evaluator together with its derivative at zero.
    Custom {
        eval: Evaluator,
        slope_at_zero: f64,
    },
}

impl GrowthFunction {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            GrowthFunction::BevertonHolt { m, a } => m * u / (a + u),
            GrowthFunction::Custom { eval, .. } => eval(u),
        }
    }

    /// `f'(0)`, the linearization coefficient entering every eigenproblem.
    pub fn slope_at_zero(&self) -> f64 {
        match self {
            GrowthFunction::BevertonHolt { m, a } => m / a,
            GrowthFunction::Custom { slope_at_zero, .. } => *slope_at_zero,
        }
    }
}

impl fmt::Debug for GrowthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthFunction::BevertonHolt { m, a } => {
                write!(f, "BevertonHolt {{ m: {m}, a: {a} }}")
            }
            GrowthFunction::Custom { slope_at_zero, .. } => {
                write!(f, "Custom {{ slope_at_zero: {slope_at_zero} }}")
            }
        }
    }
}

/// Impulse (disinfection) map `H` applied to the agent density at period
/// wraps. Required to satisfy `H(0) = 0`, `H' > 0`, and `0 < H(u)/u <= 1`
/// with `H(u)/u` strictly decreasing; the identity is the allowed boundary
/// case `H(u)/u = 1`.
#[derive(Clone)]
pub enum ImpulseFunction {
    /// No intervention.
    Identity,
    /// `H(u) = c*u / (d + u)` with `c, d > 0`; `H'(0) = c/d`.
    Saturating { c: f64, d: f64 },
    /// User-supplied evaluator together with its derivative at zero.
    Custom {
        eval: Evaluator,
        slope_at_zero: f64,
    },
}

impl ImpulseFunction {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            ImpulseFunction::Identity => u,
            ImpulseFunction::Saturating { c, d } => c * u / (d + u),
            ImpulseFunction::Custom { eval, .. } => eval(u),
        }
    }

    /// `H'(0)`, the impulse factor entering the linearized period map.
    pub fn slope_at_zero(&self) -> f64 {
        match self {
            ImpulseFunction::Identity => 1.0,
            ImpulseFunction::Saturating { c, d } => c / d,
            ImpulseFunction::Custom { slope_at_zero, .. } => *slope_at_zero,
        }
    }
}

impl fmt::Debug for ImpulseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImpulseFunction::Identity => write!(f, "Identity"),
            ImpulseFunction::Saturating { c, d } => write!(f, "Saturating {{ c: {c}, d: {d} }}"),
            ImpulseFunction::Custom { slope_at_zero, .. } => {
                write!(f, "Custom {{ slope_at_zero: {slope_at_zero} }}")
            }
        }
    }
}

/// All coefficients of the two-season model.
///
/// Rates are per unit time, diffusivities are length^2 per unit time, and the
/// expansion capacities `mu1`, `mu2` convert boundary density gradients into
/// front speeds.
#[derive(Clone, Debug)]
pub struct ModelParams {
    /// Agent diffusion rate (wet season only).
    pub d1: f64,
    /// Human diffusion rate (both seasons).
    pub d2: f64,
    /// Agent death rate in the wet season.
    pub a11: f64,
    /// Agent growth coefficient sourced from infective humans.
    pub a12: f64,
    /// Human fatality rate in the wet season.
    pub a22: f64,
    /// Agent death rate in the dry season.
    pub delta1: f64,
    /// Human fatality rate in the dry season.
    pub delta2: f64,
    /// Agent expansion capacity (front response to the agent gradient).
    pub mu1: f64,
    /// Human expansion capacity.
    pub mu2: f64,
    /// Dry-season duration, `0 < tau < period`.
    pub tau: f64,
    /// Full period `T`.
    pub period: f64,
    /// Initial half-width of the infected region.
    pub s0: f64,
    pub growth: GrowthFunction,
    pub impulse: ImpulseFunction,
}

impl ModelParams {
    /// Wet-season duration `T - tau`.
    pub fn wet_len(&self) -> f64 {
        self.period - self.tau
    }

    /// `f'(0)` of the growth function.
    pub fn growth_slope(&self) -> f64 {
        self.growth.slope_at_zero()
    }

    /// `H'(0)` of the impulse function.
    pub fn impulse_slope(&self) -> f64 {
        self.impulse.slope_at_zero()
    }
}

/// Initial densities on `[-s0, s0]`, both vanishing at the endpoints and
/// positive inside.
#[derive(Clone)]
pub struct InitialData {
    u0: Evaluator,
    v0: Evaluator,
    s0: f64,
    sup_u0: f64,
    sup_v0: f64,
}

impl InitialData {
    /// Wrap arbitrary evaluators. The sup norms are taken over a 4097-point
    /// sample of `[-s0, s0]`.
    pub fn new(
        u0: impl Fn(f64) -> f64 + Send + Sync + 'static,
        v0: impl Fn(f64) -> f64 + Send + Sync + 'static,
        s0: f64,
    ) -> Self {
        let u0: Evaluator = Arc::new(u0);
        let v0: Evaluator = Arc::new(v0);
        let sup = |g: &Evaluator| {
            let n = 4096;
            (0..=n)
                .map(|i| g(-s0 + 2.0 * s0 * i as f64 / n as f64))
                .fold(0.0_f64, f64::max)
        };
        let sup_u0 = sup(&u0);
        let sup_v0 = sup(&v0);
        InitialData {
            u0,
            v0,
            s0,
            sup_u0,
            sup_v0,
        }
    }

    /// The cosine family `amp * cos(pi x / (2 s0))` used by the experiments.
    pub fn cosine(s0: f64, amp_u: f64, amp_v: f64) -> Self {
        let u0 = move |x: f64| amp_u * (std::f64::consts::FRAC_PI_2 * x / s0).cos();
        let v0 = move |x: f64| amp_v * (std::f64::consts::FRAC_PI_2 * x / s0).cos();
        let mut init = InitialData::new(u0, v0, s0);
        // exact sup at x = 0
        init.sup_u0 = amp_u;
        init.sup_v0 = amp_v;
        init
    }

    pub fn u0(&self, x: f64) -> f64 {
        (self.u0)(x)
    }

    pub fn v0(&self, x: f64) -> f64 {
        (self.v0)(x)
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn sup_u0(&self) -> f64 {
        self.sup_u0
    }

    pub fn sup_v0(&self) -> f64 {
        self.sup_v0
    }

    /// Endpoint and interior-positivity checks on a sampled grid.
    pub fn validate(&self, samples: usize) -> ValidationReport {
        let mut report = ValidationReport::default();
        let tol = 1e-12 * (1.0 + self.sup_u0.max(self.sup_v0));
        report.check(
            "u0(+-s0) = 0 and v0(+-s0) = 0",
            [self.u0(-self.s0), self.u0(self.s0), self.v0(-self.s0), self.v0(self.s0)]
                .iter()
                .all(|e| e.abs() <= tol),
            || "endpoint value exceeds tolerance".to_string(),
        );
        let n = samples.max(2);
        let mut first_bad = None;
        for i in 1..n {
            let x = -self.s0 + 2.0 * self.s0 * i as f64 / n as f64;
            if self.u0(x) <= 0.0 || self.v0(x) <= 0.0 {
                first_bad = Some(x);
                break;
            }
        }
        report.check(
            "u0, v0 > 0 on the open interval",
            first_bad.is_none(),
            || format!("non-positive value at x = {}", first_bad.unwrap()),
        );
        report
    }
}

impl fmt::Debug for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "InitialData {{ s0: {}, sup_u0: {}, sup_v0: {} }}",
            self.s0, self.sup_u0, self.sup_v0
        )
    }
}

/// One named assumption check.
#[derive(Clone, Debug)]
pub struct ValidationEntry {
    pub name: String,
    pub passed: bool,
    /// First violating sample point or a short reason, when failed.
    pub detail: Option<String>,
}

/// Result of running all assumption checks; violations are reported, never
/// thrown.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    fn check(&mut self, name: &str, passed: bool, detail: impl FnOnce() -> String) {
        self.entries.push(ValidationEntry {
            name: name.to_string(),
            passed,
            detail: if passed { None } else { Some(detail()) },
        });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "[{}] {}{}",
                if e.passed { "pass" } else { "FAIL" },
                e.name,
                e.detail
                    .as_deref()
                    .map(|d| format!(" ({d})"))
                    .unwrap_or_default()
            )?;
        }
        Ok(())
    }
}

/// Log-spaced grid over `[1e-6, 1e6]` used to sample the function
/// assumptions. They are stated for all `u >= 0`; the sampled surrogate is
/// the testable finite stand-in.
fn log_grid(samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    (0..n)
        .map(|i| 10f64.powf(-6.0 + 12.0 * i as f64 / (n - 1) as f64))
        .collect()
}

/// Checks the positivity of every coefficient, the season split, and the
/// sampled growth/impulse assumptions. `samples >= 2` is the grid size.
pub fn validate_assumptions(params: &ModelParams, samples: usize) -> ValidationReport {
    let mut report = ValidationReport::default();
    let p = params;

    let rates = [
        ("d1", p.d1),
        ("d2", p.d2),
        ("a11", p.a11),
        ("a12", p.a12),
        ("a22", p.a22),
        ("delta1", p.delta1),
        ("delta2", p.delta2),
        ("mu1", p.mu1),
        ("mu2", p.mu2),
        ("s0", p.s0),
    ];
    let bad: Vec<&str> = rates
        .iter()
        .filter(|(_, v)| !(*v > 0.0) || !v.is_finite())
        .map(|(n, _)| *n)
        .collect();
    report.check("all rates and capacities strictly positive", bad.is_empty(), || {
        format!("non-positive: {}", bad.join(", "))
    });
    report.check(
        "0 < tau < T",
        p.tau > 0.0 && p.tau < p.period && p.period.is_finite(),
        || format!("tau = {}, T = {}", p.tau, p.period),
    );

    let grid = log_grid(samples);
    let fd_slope = |g: &dyn Fn(f64) -> f64, u: f64| {
        let h = (u * 1e-6).max(1e-9);
        (g(u + h) - g((u - h).max(0.0))) / (h + h.min(u))
    };

    // growth assumptions
    let f = |u: f64| p.growth.eval(u);
    report.check("f(0) = 0", f(0.0).abs() <= 1e-12, || format!("f(0) = {}", f(0.0)));
    let mut bad_at = None;
    for &u in &grid {
        if fd_slope(&f, u) <= 0.0 {
            bad_at = Some(u);
            break;
        }
    }
    report.check("f'(u) > 0 on sampled grid", bad_at.is_none(), || {
        format!("non-increasing near u = {}", bad_at.unwrap())
    });
    let mut bad_at = None;
    for w in grid.windows(2) {
        if f(w[1]) / w[1] >= f(w[0]) / w[0] {
            bad_at = Some(w[1]);
            break;
        }
    }
    report.check("f(u)/u strictly decreasing on sampled grid", bad_at.is_none(), || {
        format!("ratio non-decreasing near u = {}", bad_at.unwrap())
    });
    let u_hi = *grid.last().unwrap();
    let limit_bound = p.a11 * p.a22 / p.a12;
    report.check(
        "lim f(u)/u < a11*a22/a12 (sampled at the grid top)",
        f(u_hi) / u_hi < limit_bound,
        || format!("f(u)/u = {} at u = {}, bound {}", f(u_hi) / u_hi, u_hi, limit_bound),
    );

    // impulse assumptions
    let h_fn = |u: f64| p.impulse.eval(u);
    report.check("H(0) = 0", h_fn(0.0).abs() <= 1e-12, || format!("H(0) = {}", h_fn(0.0)));
    let mut bad_at = None;
    for &u in &grid {
        if fd_slope(&h_fn, u) <= 0.0 {
            bad_at = Some(u);
            break;
        }
    }
    report.check("H'(u) > 0 on sampled grid", bad_at.is_none(), || {
        format!("non-increasing near u = {}", bad_at.unwrap())
    });
    let is_identity_ratio = grid.iter().all(|&u| (h_fn(u) / u - 1.0).abs() <= 1e-12);
    let mut bad_at = None;
    if !is_identity_ratio {
        for w in grid.windows(2) {
            if h_fn(w[1]) / w[1] >= h_fn(w[0]) / w[0] {
                bad_at = Some(w[1]);
                break;
            }
        }
    }
    report.check(
        "H(u)/u strictly decreasing on sampled grid (identity boundary case allowed)",
        bad_at.is_none(),
        || format!("ratio non-decreasing near u = {}", bad_at.unwrap()),
    );
    let mut bad_at = None;
    for &u in &grid {
        let ratio = h_fn(u) / u;
        if !(ratio > 0.0 && ratio <= 1.0 + 1e-12) {
            bad_at = Some(u);
            break;
        }
    }
    report.check("0 < H(u)/u <= 1 on sampled grid", bad_at.is_none(), || {
        format!("ratio out of (0, 1] at u = {}", bad_at.unwrap())
    });

    report
}

/// The carrying constants of the a-priori estimate: `u < C2`, `v < C3`.
#[derive(Clone, Copy, Debug)]
pub struct AprioriBounds {
    /// Carrying density: zero when `a12 f'(0) / (a11 a22) <= 1`, otherwise
    /// the unique root of `f(u)/u = a11 a22 / a12`.
    pub u_star: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Root of `f(u)/u = a11 a22 / a12` for a growth function with
/// `a12 f'(0)/(a11 a22) > 1`. Bisection is safe: `f(u)/u` is monotone.
fn u_star_root(params: &ModelParams) -> Result<f64> {
    let target = params.a11 * params.a22 / params.a12;
    if let GrowthFunction::BevertonHolt { m, a } = params.growth {
        // closed form: m/(a+u) = target
        return Ok(m / target - a);
    }
    let g = |u: f64| params.growth.eval(u) / u - target;
    let lo0 = 1e-12;
    if g(lo0) <= 0.0 {
        return Err(Error::RootFind(format!(
            "f(u)/u already below a11*a22/a12 = {target} at u = {lo0}"
        )));
    }
    let mut hi = 1.0;
    let mut tries = 0;
    while g(hi) > 0.0 {
        hi *= 10.0;
        tries += 1;
        if tries > 15 {
            return Err(Error::RootFind(format!(
                "no sign change for f(u)/u - {target} up to u = {hi}"
            )));
        }
    }
    let (mut lo, mut hi) = (hi / 10.0, hi);
    if g(lo) <= 0.0 {
        lo = lo0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi.max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Computes `u*`, `C2 = max{u*, sup u0, (a12/a11) sup v0}`, and
/// `C3 = max{sup v0, f(C2)/a22}`.
pub fn compute_bounds(params: &ModelParams, init: &InitialData) -> Result<AprioriBounds> {
    let threshold = params.a12 * params.growth_slope() / (params.a11 * params.a22);
    let u_star = if threshold <= 1.0 { 0.0 } else { u_star_root(params)? };
    let c2 = u_star
        .max(init.sup_u0())
        .max(params.a12 / params.a11 * init.sup_v0());
    let c3 = init.sup_v0().max(params.growth.eval(c2) / params.a22);
    Ok(AprioriBounds { u_star, c2, c3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use approx::assert_relative_eq;

    #[test]
    fn sec52_saturating_passes_all_checks() {
        let params = presets::sec52_params(ImpulseFunction::Saturating { c: 4.0, d: 10.0 });
        let report = validate_assumptions(&params, 64);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn identity_impulse_boundary_case_passes() {
        let params = presets::sec52_params(ImpulseFunction::Identity);
        let report = validate_assumptions(&params, 64);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn quadratic_growth_fails_ratio_check() {
        let mut params = presets::sec52_params(ImpulseFunction::Identity);
        params.growth = GrowthFunction::Custom {
            eval: Arc::new(|u| u * u),
            slope_at_zero: 0.0,
        };
        let report = validate_assumptions(&params, 64);
        assert!(!report.passed());
        assert!(report
            .failures()
            .any(|e| e.name.contains("f(u)/u strictly decreasing")));
    }

    #[test]
    fn negative_rate_is_reported_not_thrown() {
        let mut params = presets::sec52_params(ImpulseFunction::Identity);
        params.d1 = -0.5;
        let report = validate_assumptions(&params, 16);
        assert!(!report.passed());
        assert!(report.failures().any(|e| e.detail.as_deref() == Some("non-positive: d1")));
    }

    #[test]
    fn bounds_match_closed_form_for_sec52() {
        let params = presets::sec52_params(ImpulseFunction::Saturating { c: 4.0, d: 10.0 });
        let init = InitialData::cosine(2.0, 0.4, 0.1);
        let b = compute_bounds(&params, &init).unwrap();
        // u* = a12*m/(a11*a22) - a for the saturating growth
        assert_relative_eq!(b.u_star, 1.67 * 1.7 / (0.8 * 0.8) - 1.0, max_relative = 1e-12);
        assert_relative_eq!(b.c2, b.u_star, max_relative = 1e-12);
        assert_relative_eq!(b.c3, params.growth.eval(b.c2) / 0.8, max_relative = 1e-12);

        // the defining inequalities of the bound pair
        assert!(-params.a11 * b.c2 + params.a12 * b.c3 <= 1e-12);
        assert!(-params.a22 * b.c3 + params.growth.eval(b.c2) <= 1e-12);
    }

    #[test]
    fn u_star_zero_when_subcritical() {
        let mut params = presets::sec52_params(ImpulseFunction::Identity);
        // a12 f'(0) / (a11 a22) = a12 * 1.7 <= 0.64 requires tiny a12
        params.a12 = 0.3;
        params.growth = GrowthFunction::BevertonHolt { m: 0.8, a: 1.0 };
        // threshold = 0.3*0.8/0.64 = 0.375 <= 1
        let init = InitialData::cosine(2.0, 0.4, 0.1);
        let b = compute_bounds(&params, &init).unwrap();
        assert_eq!(b.u_star, 0.0);
        assert_relative_eq!(b.c2, 0.4, max_relative = 1e-12);
    }

    #[test]
    fn c2_dominated_by_u_star_for_tiny_initial_data() {
        let params = presets::sec52_params(ImpulseFunction::Identity);
        let init = InitialData::cosine(2.0, 1e-4, 1e-4);
        let b = compute_bounds(&params, &init).unwrap();
        assert_relative_eq!(b.c2, b.u_star, max_relative = 1e-12);
    }

    #[test]
    fn custom_growth_root_matches_beverton_holt() {
        let mut params = presets::sec52_params(ImpulseFunction::Identity);
        params.growth = GrowthFunction::Custom {
            eval: Arc::new(|u| 1.7 * u / (1.0 + u)),
            slope_at_zero: 1.7,
        };
        let init = InitialData::cosine(2.0, 0.4, 0.1);
        let b = compute_bounds(&params, &init).unwrap();
        assert_relative_eq!(b.u_star, 1.67 * 1.7 / 0.64 - 1.0, epsilon = 1e-9);
    }

    #[test]
    fn initial_data_validation() {
        let good = InitialData::cosine(2.0, 0.4, 0.1);
        assert!(good.validate(128).passed());
        let bad = InitialData::new(|x| 0.4 * (1.0 - x * x / 4.0) + 0.1, |x| 0.1 * (1.0 - x * x / 4.0), 2.0);
        assert!(!bad.validate(128).passed());
    }
}
