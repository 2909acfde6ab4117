//! Semi-analytic principal eigenvalue of the periodic impulsive
//! linearization, by separation of variables.
//!
//! Writing the eigenfunction pair as `(chi(x) Phi(t), chi(x) Psi(t))` with
//! `chi` the principal Dirichlet mode of `-d^2/dx^2` on the interval, the
//! spatial part contributes only its eigenvalue `kappa1 = (pi/L)^2` and the
//! time profiles satisfy a piecewise-linear ODE system: exponential decay
//! over the dry season, a constant 2x2 cooperative system over the wet
//! season, and the wrap conditions `Phi(0) = H'(0) Phi(T)`, `Psi(0) = Psi(T)`.
//!
//! Diagonalizing the wet-season matrix turns the wrap conditions into two
//! rational equations for the mixing coordinate `k` and the period
//! multiplier `y = exp(lambda1 T)`. On the interval of `k` where the
//! reconstructed profiles stay positive, one equation is strictly decreasing
//! and the other strictly increasing, so the admissible root is unique and a
//! bracketed bisection finds it to near machine precision.

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Case split of the root geometry, decided by the slope ratio comparison of
/// the two rational maps at infinity. `EqualRatio` admits the closed-form
/// eigenvalue and `k = 0`; the other two place the root on the positive or
/// negative side of `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseId {
    EqualRatio,
    Greater,
    Less,
}

/// Derived spectral algebra for one interval length: wet-season eigenrates
/// `c1 > c2`, the exponential mixtures `b..`, and the dry-season transfer
/// factors `theta1 = H'(0) exp(-delta1 tau)`, `theta2 = exp(-(delta2 + d2
/// kappa1) tau)`. All `b` coefficients are positive; the sign carried by the
/// second wet-season eigenvector component is folded into the second
/// rational map.
#[derive(Clone, Copy, Debug)]
pub struct SpectralCoeffs {
    pub kappa1: f64,
    pub c1: f64,
    pub c2: f64,
    pub b11: f64,
    pub b12: f64,
    pub b13: f64,
    pub b14: f64,
    pub b21: f64,
    pub b22: f64,
    pub b23: f64,
    pub b24: f64,
    pub theta1: f64,
    pub theta2: f64,
    /// `a11 + d1 kappa1 + c1 = -(a22 + d2 kappa1 + c2) > 0`.
    pub pivot: f64,
    /// Normalization `a12 f'(0) + pivot^2` of the wet-season profile.
    pub det_b: f64,
}

/// Relative tolerance deciding the `EqualRatio` tie-break. Exact equality is
/// measure-zero; the closed form is a tie-break, not a separate regime.
const CASE_TOL: f64 = 1e-9;

/// Bisection tolerance for the mixing coordinate `k`.
const K_TOL: f64 = 1e-12;

/// Sample count of the positivity filter applied to every candidate root.
const POSITIVITY_SAMPLES: usize = 512;

/// Principal Dirichlet eigenvalue `(pi/L)^2` of `-d^2/dx^2` on an interval
/// of length `L`; for a symmetric half-width `l` this is `pi^2/(4 l^2)`.
pub fn kappa1(length: f64) -> Result<f64> {
    if !(length > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "interval length must be positive, got {length}"
        )));
    }
    let k = std::f64::consts::PI / length;
    Ok(k * k)
}

/// Assembles the spectral algebra for the given spatial eigenvalue
/// (`kappa1 = 0` gives the spatially homogeneous limit problem).
pub fn spectral_coeffs(params: &ModelParams, kappa1: f64) -> Result<SpectralCoeffs> {
    if kappa1 < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "kappa1 must be nonnegative, got {kappa1}"
        )));
    }
    let p = params;
    let fp0 = p.growth_slope();
    let hp0 = p.impulse_slope();
    let s = p.a22 + (p.d2 - p.d1) * kappa1 - p.a11;
    let disc = (s * s + 4.0 * p.a12 * fp0).sqrt();
    let trace = -(p.d1 + p.d2) * kappa1 - p.a11 - p.a22;
    let c1 = 0.5 * (trace + disc);
    let c2 = 0.5 * (trace - disc);
    let pivot = 0.5 * (disc - s);
    let tau = p.tau;
    let t_end = p.period;
    Ok(SpectralCoeffs {
        kappa1,
        c1,
        c2,
        b11: p.a12 * (c1 * tau).exp(),
        b12: pivot * (c2 * tau).exp(),
        b13: p.a12 * (c1 * t_end).exp(),
        b14: pivot * (c2 * t_end).exp(),
        b21: fp0 * (c2 * tau).exp(),
        b22: pivot * (c1 * tau).exp(),
        b23: fp0 * (c2 * t_end).exp(),
        b24: pivot * (c1 * t_end).exp(),
        theta1: hp0 * (-p.delta1 * tau).exp(),
        theta2: (-(p.delta2 + p.d2 * kappa1) * tau).exp(),
        pivot,
        det_b: p.a12 * fp0 + pivot * pivot,
    })
}

/// Solved eigenpair: the eigenvalue, the mixing coordinate of the wet-season
/// profile, the period multiplier `y = exp(lambda1 T)`, and the case taken.
///
/// The mixing coordinate is also carried as its distances to the endpoints
/// of the positivity interval `(-b22/b21, b11/b12)`: the root can sit within
/// round-off of an endpoint (strongly separated dry-season scales push it
/// there), and the distances admit cancellation-free profile evaluation
/// where plain `k` does not.
#[derive(Clone, Copy, Debug)]
pub struct EigenSolution {
    pub lambda1: f64,
    pub k: f64,
    pub y: f64,
    pub case_id: CaseId,
    /// `k + b22/b21 > 0`, the margin to the human-positivity endpoint.
    pub dk_low: f64,
    /// `b11/b12 - k > 0`, the margin to the agent-positivity endpoint.
    pub dk_high: f64,
}

impl EigenSolution {
    /// Time profile `(Phi(t), Psi(t))` of the eigenfunction, positive on
    /// `[0, T]` and normalized by the wet-season eigenvector determinant.
    pub fn profile(&self, params: &ModelParams, coeffs: &SpectralCoeffs, t: f64) -> Result<(f64, f64)> {
        eigen_profile(self, params, coeffs, t)
    }
}

/// First rational map as a function of the margin `dk_high = b11/b12 - k`:
/// the agent wrap condition. All terms are positive for admissible margins,
/// so the evaluation is cancellation-free arbitrarily close to the endpoint.
fn map_agent_margin(c: &SpectralCoeffs, dk_high: f64) -> f64 {
    // denominator: b13 - b14 k = (b12 b13 - b11 b14)/b12 + b14 dk_high,
    // and b12 b13 / (b11 b14) = exp((c1 - c2)(T - tau)) >> 1
    let denom = (c.b13 - c.b14 * c.b11 / c.b12) + c.b14 * dk_high;
    c.b12 * dk_high / (c.theta1 * denom)
}

/// Second rational map as a function of the margin `dk_low = k + b22/b21`:
/// the human wrap condition, cancellation-free near its endpoint.
fn map_human_margin(c: &SpectralCoeffs, dk_low: f64) -> f64 {
    // denominator: b23 k + b24 = (b24 - b23 b22/b21) + b23 dk_low > 0
    let denom = (c.b24 - c.b23 * c.b22 / c.b21) + c.b23 * dk_low;
    c.b21 * dk_low / (c.theta2 * denom)
}

/// Wet-season profile at time `t` in `[tau, T]` written through the margins;
/// every term is nonnegative, so positivity is not lost to cancellation.
fn wet_profile(
    p: &ModelParams,
    c: &SpectralCoeffs,
    lam: f64,
    dk_low: f64,
    dk_high: f64,
    t: f64,
) -> (f64, f64) {
    let gap = ((c.c1 - c.c2) * t).exp() - ((c.c1 - c.c2) * p.tau).exp();
    let e2 = ((lam + c.c2) * t).exp();
    let phi = e2 * (p.a12 * gap + c.pivot * dk_high) / c.det_b;
    let psi = e2 * (c.pivot * gap + p.growth_slope() * dk_low) / c.det_b;
    (phi, psi)
}

fn positivity_filter(p: &ModelParams, c: &SpectralCoeffs, sol: &EigenSolution) -> bool {
    // Positivity on the dry season follows from positivity at t = tau since
    // the dry profiles are pure exponentials; sampling covers the wet span.
    for i in 0..=POSITIVITY_SAMPLES {
        let t = p.tau + (p.period - p.tau) * i as f64 / POSITIVITY_SAMPLES as f64;
        let (phi, psi) = wet_profile(p, c, sol.lambda1, sol.dk_low, sol.dk_high, t);
        if !(phi > 0.0 && psi > 0.0) {
            return false;
        }
    }
    true
}

/// Solves the two wrap equations for the unique `(k, y)` whose reconstructed
/// profile is strictly positive, and recovers `lambda1 = ln(y)/T`.
///
/// The difference of the two rational maps is strictly decreasing across the
/// positivity interval and changes sign inside it, so a geometric endpoint
/// scan followed by bisection isolates the unique admissible root. The
/// search runs in the margin coordinate of the endpoint it approaches,
/// keeping the root resolvable when it lies within round-off of that
/// endpoint.
pub fn solve_ky(coeffs: &SpectralCoeffs, params: &ModelParams) -> Result<EigenSolution> {
    let c = coeffs;
    let p = params;
    let k_hi = c.b11 / c.b12;
    let k_neg = c.b22 / c.b21; // |lower endpoint|
    let ratio_agent = c.b12 / (c.theta1 * c.b14);
    let ratio_human = c.b21 / (c.theta2 * c.b23);

    let (case_id, k, dk_low, dk_high) = if (ratio_agent - ratio_human).abs()
        <= CASE_TOL * ratio_agent.abs().max(ratio_human.abs())
    {
        (CaseId::EqualRatio, 0.0, k_neg, k_hi)
    } else if map_agent_margin(c, k_hi) > map_human_margin(c, k_neg) {
        // root in (0, b11/b12); bisect the margin to the upper endpoint
        let diff = |eps: f64| {
            map_agent_margin(c, eps) - map_human_margin(c, k_neg + (k_hi - eps))
        };
        let eps = bisect_margin(k_hi, &|e| diff(e)).ok_or_else(|| {
            Error::EigenSolve(format!(
                "no admissible root in (0, {k_hi:.6e}) (ratios {ratio_agent:.6e} vs {ratio_human:.6e})"
            ))
        })?;
        (CaseId::Greater, k_hi - eps, k_neg + (k_hi - eps), eps)
    } else {
        // root in (-b22/b21, 0); bisect the margin to the lower endpoint
        let diff = |del: f64| {
            map_agent_margin(c, k_hi + (k_neg - del)) - map_human_margin(c, del)
        };
        let del = bisect_margin(k_neg, &|d| -diff(d)).ok_or_else(|| {
            Error::EigenSolve(format!(
                "no admissible root in (-{k_neg:.6e}, 0) (ratios {ratio_agent:.6e} vs {ratio_human:.6e})"
            ))
        })?;
        (CaseId::Less, del - k_neg, del, k_hi + (k_neg - del))
    };

    let y = if case_id == CaseId::EqualRatio {
        c.b11 / (c.theta1 * c.b13)
    } else {
        map_agent_margin(c, dk_high)
    };
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::EigenSolve(format!(
            "period multiplier y = {y} rejected (case {case_id:?}, k = {k})"
        )));
    }
    let lambda1 = y.ln() / p.period;
    let sol = EigenSolution {
        lambda1,
        k,
        y,
        case_id,
        dk_low,
        dk_high,
    };
    if !positivity_filter(p, c, &sol) {
        return Err(Error::EigenSolve(format!(
            "root k = {k} failed the profile positivity filter (case {case_id:?})"
        )));
    }
    Ok(sol)
}

/// Finds the zero of a function on the margin interval `(0, width)` that is
/// negative at `0+` and positive at `width` (after the sign fix applied by
/// the caller): geometric scan from the endpoint toward zero to bracket the
/// sign change, then bisection to relative precision `K_TOL`.
fn bisect_margin(width: f64, f: &dyn Fn(f64) -> f64) -> Option<f64> {
    let mut hi = width * (1.0 - 1e-12);
    if !(f(hi) > 0.0) {
        return None;
    }
    let mut lo = 0.0;
    let mut found = false;
    for j in 1..=120 {
        let probe = width * 0.5_f64.powi(j);
        let val = f(probe);
        if val.is_finite() && val <= 0.0 {
            lo = probe;
            found = true;
            break;
        }
        hi = probe;
    }
    if !found {
        // the root margin is below 2^-120 * width: indistinguishable from
        // the endpoint itself at f64 resolution
        return Some(hi);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= K_TOL * hi {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Principal eigenvalue of the problem on `(l1, l2)`. Depends on the
/// interval only through its length.
pub fn lambda1_interval(params: &ModelParams, l1: f64, l2: f64) -> Result<EigenSolution> {
    if !(l1 < l2) {
        return Err(Error::InvalidParameter(format!(
            "interval endpoints must satisfy l1 < l2, got ({l1}, {l2})"
        )));
    }
    let kap = kappa1(l2 - l1)?;
    let coeffs = spectral_coeffs(params, kap)?;
    solve_ky(&coeffs, params)
}

/// The large-interval limit eigenvalue: the spatially homogeneous problem,
/// reached by the same machinery at `kappa1 = 0` (the dry-season human
/// equation loses its diffusion term, consistent with that substitution).
pub fn nu1(params: &ModelParams) -> Result<EigenSolution> {
    let coeffs = spectral_coeffs(params, 0.0)?;
    solve_ky(&coeffs, params)
}

/// Eigenfunction time profile at `t` in `[0, T]`: the diagonalized form on
/// the wet span, pure exponentials matched continuously at `t = tau` on the
/// dry span.
pub fn eigen_profile(
    sol: &EigenSolution,
    params: &ModelParams,
    coeffs: &SpectralCoeffs,
    t: f64,
) -> Result<(f64, f64)> {
    let p = params;
    if !(0.0..=p.period).contains(&t) {
        return Err(Error::InvalidParameter(format!(
            "profile time {t} outside [0, {}]",
            p.period
        )));
    }
    if t >= p.tau {
        Ok(wet_profile(p, coeffs, sol.lambda1, sol.dk_low, sol.dk_high, t))
    } else {
        let (phi_tau, psi_tau) = wet_profile(p, coeffs, sol.lambda1, sol.dk_low, sol.dk_high, p.tau);
        let phi0 = phi_tau * (-(sol.lambda1 - p.delta1) * p.tau).exp();
        let psi0 = psi_tau * (-(sol.lambda1 - p.delta2 - p.d2 * coeffs.kappa1) * p.tau).exp();
        Ok((
            phi0 * ((sol.lambda1 - p.delta1) * t).exp(),
            psi0 * ((sol.lambda1 - p.delta2 - p.d2 * coeffs.kappa1) * t).exp(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ImpulseFunction;
    use crate::presets;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn kappa1_formula() {
        assert_relative_eq!(kappa1(PI).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(kappa1(90.0).unwrap(), PI * PI / 8100.0, max_relative = 1e-15);
        assert_relative_eq!(kappa1(4.0).unwrap(), PI * PI / 16.0, max_relative = 1e-15);
        assert!(kappa1(0.0).is_err());
    }

    #[test]
    fn wet_rates_at_zero_kappa_for_sec52() {
        // 2x2 eigenrates: roots of the wet-season characteristic polynomial
        let params = presets::sec52_params(ImpulseFunction::Identity);
        let c = spectral_coeffs(&params, 0.0).unwrap();
        let disc = (4.0_f64 * 1.67 * 1.7).sqrt();
        assert_relative_eq!(c.c1, 0.5 * (-1.6 + disc), max_relative = 1e-14);
        assert_relative_eq!(c.c2, 0.5 * (-1.6 - disc), max_relative = 1e-14);
        assert!((c.c1 - 0.88494).abs() < 1e-4);
        assert!((c.c2 + 2.48494).abs() < 1e-4);
    }

    #[test]
    fn symmetric_rates_collapse_discriminant() {
        // d1 = d2 and a11 = a22 make c1 - c2 = 2 sqrt(a12 f'(0)) for any kappa
        let params = presets::sec52_params(ImpulseFunction::Identity);
        for kap in [0.0, 0.3, 2.0] {
            let c = spectral_coeffs(&params, kap).unwrap();
            assert_relative_eq!(
                c.c1 - c.c2,
                2.0 * (params.a12 * params.growth_slope()).sqrt(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn coeff_invariants_hold_for_sec51() {
        let params = presets::sec51_params(0.9, 5.0);
        let kap = kappa1(20.0).unwrap();
        let c = spectral_coeffs(&params, kap).unwrap();
        let fp0 = params.growth_slope();
        let gap = params.a22 + (params.d2 - params.d1) * kap - params.a11;
        let lo = (2.0 * (params.a12 * fp0).sqrt()).min(gap.abs());
        let hi = 2.0 * (params.a12 * fp0).sqrt() + gap.abs();
        assert!(c.c1 - c.c2 >= lo - 1e-12 && c.c1 - c.c2 <= hi + 1e-12);
        // pivot identity a11 + d1 k + c1 = -(a22 + d2 k + c2) > 0
        assert_relative_eq!(
            params.a11 + params.d1 * kap + c.c1,
            -(params.a22 + params.d2 * kap + c.c2),
            max_relative = 1e-12
        );
        assert!(c.pivot > 0.0);
        for b in [c.b11, c.b12, c.b13, c.b14, c.b21, c.b22, c.b23, c.b24] {
            assert!(b > 0.0);
        }
        assert!(c.theta1 > 0.0 && c.theta1 <= (-params.delta1 * params.tau).exp());
        assert!(c.theta2 > 0.0 && c.theta2 < 1.0);
    }

    #[test]
    fn paper_quoted_eigenvalues() {
        let p52 = presets::sec52_params(ImpulseFunction::Identity);
        let sol = lambda1_interval(&p52, -45.0, 45.0).unwrap();
        assert!((sol.lambda1 + 0.169).abs() < 0.01, "lambda1 = {}", sol.lambda1);

        let p52s = presets::sec52_params(ImpulseFunction::Saturating { c: 4.0, d: 10.0 });
        let sol = lambda1_interval(&p52s, -2.65, 2.65).unwrap();
        assert!((sol.lambda1 - 0.003).abs() < 0.01, "lambda1 = {}", sol.lambda1);

        let p53 = presets::sec53_params(3.0);
        let sol = lambda1_interval(&p53, -50.0, 50.0).unwrap();
        assert!((sol.lambda1 + 0.360).abs() < 0.01, "lambda1 = {}", sol.lambda1);

        let p53 = presets::sec53_params(4.7);
        let sol = lambda1_interval(&p53, -3.1, 3.1).unwrap();
        assert!((sol.lambda1 - 0.040).abs() < 0.01, "lambda1 = {}", sol.lambda1);
    }

    #[test]
    fn translation_invariance() {
        let params = presets::sec53_params(3.0);
        let a = lambda1_interval(&params, 0.0, 4.0).unwrap().lambda1;
        let b = lambda1_interval(&params, -2.0, 2.0).unwrap().lambda1;
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn equal_ratio_case_closed_form() {
        // theta1 = theta2 forces the tie-break; engineer H'(0) accordingly
        let mut params = presets::sec52_params(ImpulseFunction::Identity);
        params.delta1 = 0.9;
        params.delta2 = 1.2;
        let kap = kappa1(20.0).unwrap();
        let slope =
            ((params.delta1 - params.delta2 - params.d2 * kap) * params.tau).exp();
        assert!(slope > 0.0 && slope <= 1.0);
        params.impulse = presets::impulse_with_slope(slope);
        let c = spectral_coeffs(&params, kap).unwrap();
        let sol = solve_ky(&c, &params).unwrap();
        assert_eq!(sol.case_id, CaseId::EqualRatio);
        assert_eq!(sol.k, 0.0);
        let closed = (c.c1 * (params.tau - params.period)
            + (params.delta2 + params.d2 * kap) * params.tau)
            / params.period;
        assert!((sol.lambda1 - closed).abs() < 1e-10);
    }

    #[test]
    fn nu1_bounds_lambda1_from_below() {
        let params = presets::sec52_params(ImpulseFunction::Identity);
        let limit = nu1(&params).unwrap().lambda1;
        for l in [3.0, 10.0, 45.0, 200.0] {
            let lam = lambda1_interval(&params, -l, l).unwrap().lambda1;
            assert!(lam > limit, "lambda1({l}) = {lam} vs nu1 = {limit}");
        }
        let lam_big = lambda1_interval(&params, -1e4, 1e4).unwrap().lambda1;
        assert!((lam_big - limit).abs() < 1e-3);
    }

    #[test]
    fn nu1_decouples_to_scalar_floquet_rates() {
        // a12, f'(0) -> 0+ splits the system; nu1 approaches the smaller of
        // the two scalar period exponents
        let mut params = presets::sec52_params(presets::impulse_with_slope(0.7));
        params.a12 = 1e-9;
        params.growth = crate::params::GrowthFunction::Custom {
            eval: std::sync::Arc::new(|u| 1e-9 * u),
            slope_at_zero: 1e-9,
        };
        let tau = params.tau;
        let t_end = params.period;
        let agent = (params.delta1 * tau + params.a11 * (t_end - tau)
            - params.impulse_slope().ln())
            / t_end;
        let human = (params.delta2 * tau + params.a22 * (t_end - tau)) / t_end;
        let sol = nu1(&params).unwrap();
        assert!((sol.lambda1 - agent.min(human)).abs() < 1e-4);
    }

    #[test]
    fn profile_wrap_and_positivity() {
        for (params, l) in [
            (presets::sec52_params(ImpulseFunction::Identity), 45.0),
            (presets::sec52_params(ImpulseFunction::Saturating { c: 4.0, d: 10.0 }), 2.65),
            (presets::sec51_params(0.9, 5.0), 10.0),
        ] {
            let kap = kappa1(2.0 * l).unwrap();
            let c = spectral_coeffs(&params, kap).unwrap();
            let sol = solve_ky(&c, &params).unwrap();
            let (phi0, psi0) = sol.profile(&params, &c, 0.0).unwrap();
            let (phi_t, psi_t) = sol.profile(&params, &c, params.period).unwrap();
            assert_relative_eq!(phi0, params.impulse_slope() * phi_t, max_relative = 1e-9);
            assert_relative_eq!(psi0, psi_t, max_relative = 1e-9);
            for i in 0..=200 {
                let t = params.period * i as f64 / 200.0;
                let (phi, psi) = sol.profile(&params, &c, t).unwrap();
                assert!(phi > 0.0 && psi > 0.0, "at t = {t}");
            }
            assert_relative_eq!(sol.y, (sol.lambda1 * params.period).exp(), max_relative = 1e-12);
        }
    }

    #[test]
    fn profile_satisfies_the_four_odes() {
        // central-difference residual against the piecewise ODE system
        let params = presets::sec52_params(ImpulseFunction::Saturating { c: 4.0, d: 10.0 });
        let kap = kappa1(5.3).unwrap();
        let c = spectral_coeffs(&params, kap).unwrap();
        let sol = solve_ky(&c, &params).unwrap();
        let residual = profile_ode_residual(&sol, &params, &c);
        assert!(residual < 1e-8, "relative residual {residual}");
    }

    /// Max relative residual of the four-profile ODE system on a fine grid,
    /// via central differences that avoid the season switch.
    pub(crate) fn profile_ode_residual(
        sol: &EigenSolution,
        params: &ModelParams,
        c: &SpectralCoeffs,
    ) -> f64 {
        let p = params;
        let lam = sol.lambda1;
        let fp0 = p.growth_slope();
        let h = 2e-5;
        let mut worst: f64 = 0.0;
        let eval = |t: f64| sol.profile(p, c, t).unwrap();
        for i in 0..=2000 {
            let t = p.period * i as f64 / 2000.0;
            if t < h || t > p.period - h || (t - p.tau).abs() < 2.0 * h {
                continue;
            }
            let (phi_m, psi_m) = eval(t - h);
            let (phi, psi) = eval(t);
            let (phi_p, psi_p) = eval(t + h);
            let dphi = (phi_p - phi_m) / (2.0 * h);
            let dpsi = (psi_p - psi_m) / (2.0 * h);
            let (rhs_phi, rhs_psi) = if t <= p.tau {
                ((lam - p.delta1) * phi, (lam - p.delta2 - p.d2 * c.kappa1) * psi)
            } else {
                (
                    (lam - p.d1 * c.kappa1 - p.a11) * phi + p.a12 * psi,
                    (lam - p.d2 * c.kappa1 - p.a22) * psi + fp0 * phi,
                )
            };
            let scale = dphi.abs().max(rhs_phi.abs()).max(phi.abs()).max(1e-300);
            worst = worst.max((dphi - rhs_phi).abs() / scale);
            let scale = dpsi.abs().max(rhs_psi.abs()).max(psi.abs()).max(1e-300);
            worst = worst.max((dpsi - rhs_psi).abs() / scale);
        }
        worst
    }

    #[test]
    fn half_width_ladder_is_strictly_decreasing() {
        let params = presets::sec51_params(0.9, 5.0);
        let mut prev = f64::INFINITY;
        for l in [5.0, 10.0, 15.0, 20.0, 25.0, 30.0] {
            let lam = lambda1_interval(&params, -l, l).unwrap().lambda1;
            assert!(lam < prev - 1e-6, "not decreasing at l = {l}");
            prev = lam;
        }
    }

    #[test]
    fn impulse_slope_ladder_is_strictly_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 0..10 {
            let theta = 0.01 + 0.1 * i as f64;
            let params = presets::sec51_params(theta, 5.0);
            let lam = lambda1_interval(&params, -10.0, 10.0).unwrap().lambda1;
            assert!(lam < prev - 1e-6, "not decreasing at theta = {theta}");
            prev = lam;
        }
    }

    #[test]
    fn dry_duration_ladder_is_strictly_increasing_under_hypothesis() {
        // requires delta1 >= a11 + d1 pi^2/(4 l^2) and delta2 >= a22
        let check = presets::sec51_params(0.9, 5.0);
        let l = 10.0_f64;
        assert!(check.delta1 >= check.a11 + check.d1 * PI * PI / (4.0 * l * l));
        assert!(check.delta2 >= check.a22);
        let mut prev = f64::NEG_INFINITY;
        for tau in [2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0] {
            let params = presets::sec51_params(0.9, tau);
            let lam = lambda1_interval(&params, -l, l).unwrap().lambda1;
            assert!(lam > prev + 1e-6, "not increasing at tau = {tau}");
            prev = lam;
        }
    }
}
