//! Structural property suite: randomized comparison-principle, bound, and
//! impulse checks on small instances, plus proptest invariants that need no
//! reference numbers.

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seasonfront::config;
use seasonfront::eigen;
use seasonfront::params::{compute_bounds, GrowthFunction, ImpulseFunction, InitialData, ModelParams};
use seasonfront::presets;
use seasonfront::sim::{self, SimConfig};

/// Random admissible parameter set for the small-instance suite.
fn random_params(rng: &mut ChaCha8Rng) -> ModelParams {
    let period = rng.gen_range(2.0..6.0);
    let tau = period * rng.gen_range(0.3..0.7);
    let impulse = if rng.gen_bool(0.5) {
        ImpulseFunction::Identity
    } else {
        let theta = rng.gen_range(0.3..0.95);
        ImpulseFunction::Saturating {
            c: 10.0 * theta,
            d: 10.0,
        }
    };
    ModelParams {
        d1: rng.gen_range(0.2..2.0),
        d2: rng.gen_range(0.2..2.0),
        a11: rng.gen_range(0.3..1.0),
        a12: rng.gen_range(0.5..2.0),
        a22: rng.gen_range(0.3..1.0),
        delta1: rng.gen_range(0.5..2.0),
        delta2: rng.gen_range(0.5..2.0),
        mu1: rng.gen_range(0.5..4.0),
        mu2: rng.gen_range(0.5..4.0),
        tau,
        period,
        s0: 1.0,
        growth: GrowthFunction::BevertonHolt {
            m: rng.gen_range(0.5..2.0),
            a: rng.gen_range(0.5..2.0),
        },
        impulse,
    }
}

fn small_cfg(params: &ModelParams) -> SimConfig {
    SimConfig {
        n: 64,
        dt: params.tau.min(params.wet_len()) / 300.0,
        horizon: 3.0 * params.period,
        early_stop: false,
        snap_every: 0,
        ..SimConfig::defaults(params)
    }
}

#[test]
fn comparison_principle_and_bounds_on_randomized_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EA50);
    for instance in 0..8 {
        let params = random_params(&mut rng);
        let amp_u = rng.gen_range(0.1..0.4);
        let amp_v = rng.gen_range(0.05..0.2);
        let boost = rng.gen_range(1.1..1.5);
        let small = InitialData::cosine(1.0, amp_u, amp_v);
        let large = InitialData::cosine(1.0, amp_u * boost, amp_v * boost);
        let cfg = small_cfg(&params);

        let traj_a = sim::run(&params, &small, &cfg).unwrap();
        let traj_b = sim::run(&params, &large, &cfg).unwrap();

        // ordered fronts over the whole trajectory
        assert_eq!(traj_a.times.len(), traj_b.times.len());
        for i in 0..traj_a.times.len() {
            assert!(
                traj_b.s[i] >= traj_a.s[i] - 1e-10,
                "instance {instance}: right fronts out of order at t = {}",
                traj_a.times[i]
            );
            assert!(
                traj_b.r[i] <= traj_a.r[i] + 1e-10,
                "instance {instance}: left fronts out of order at t = {}",
                traj_a.times[i]
            );
        }

        // ordered densities on the common (smaller) domain at the end
        let fa = &traj_a.final_state;
        let fb = &traj_b.final_state;
        let scale = fb.sup_u().max(fb.sup_v()).max(1e-12);
        for i in 0..200 {
            let x = fa.r + (fa.s - fa.r) * i as f64 / 199.0;
            let (ua, va) = fa.at_x(x);
            let (ub, vb) = fb.at_x(x);
            assert!(
                ua <= ub + 1e-3 * scale,
                "instance {instance}: u out of order at x = {x}"
            );
            assert!(
                va <= vb + 1e-3 * scale,
                "instance {instance}: v out of order at x = {x}"
            );
        }

        // a-priori bounds along the larger run
        let bounds = compute_bounds(&params, &large).unwrap();
        for i in 0..traj_b.times.len() {
            assert!(
                traj_b.sup_u[i] < bounds.c2 + 1e-8,
                "instance {instance}: u bound violated at t = {}",
                traj_b.times[i]
            );
            assert!(
                traj_b.sup_v[i] < bounds.c3 + 1e-8,
                "instance {instance}: v bound violated at t = {}",
                traj_b.times[i]
            );
        }
    }
}

#[test]
fn impulse_wrap_semantics_on_randomized_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD15EA5E);
    for _ in 0..4 {
        let params = random_params(&mut rng);
        let init = InitialData::cosine(1.0, 0.3, 0.1);
        let n = 64;
        let mut state = sim::SimState::new(&params, &init, n);

        // advance one full period by the public single-step API
        state.phase = sim::Phase::Dry;
        let dtd = params.tau / 150.0;
        for _ in 0..150 {
            sim::step_dry(&mut state, &params, dtd);
        }
        state.phase = sim::Phase::Wet;
        let dtw = params.wet_len() / 300.0;
        for _ in 0..300 {
            sim::step_wet(&mut state, &params, dtw).unwrap();
        }

        let u_pre = state.u.clone();
        let v_pre = state.v.clone();
        sim::apply_impulse(&mut state, &params);
        for i in 0..u_pre.len() {
            // v continuous at the wrap, u jumps by exactly u - H(u)
            assert!((state.v[i] - v_pre[i]).abs() < 1e-12);
            let jump = u_pre[i] - state.u[i];
            assert_eq!(jump, u_pre[i] - params.impulse.eval(u_pre[i]));
        }
    }
}

proptest! {
    /// The interval eigenvalue depends on the interval only through its
    /// length.
    #[test]
    fn lambda1_translation_invariant(shift in -50.0..50.0f64, length in 1.0..40.0f64) {
        let params = presets::sec53_params(3.0);
        let a = eigen::lambda1_interval(&params, shift, shift + length).unwrap().lambda1;
        let b = eigen::lambda1_interval(&params, -length / 2.0, length / 2.0).unwrap().lambda1;
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
    }

    /// The period multiplier and the eigenvalue stay consistent, and the
    /// profile wrap conditions hold, across a parameter band.
    #[test]
    fn eigen_wrap_conditions(theta in 0.05..1.0f64, l in 2.0..30.0f64, tau_frac in 0.2..0.8f64) {
        let mut params = presets::sec51_params(theta, 5.0);
        params.tau = params.period * tau_frac;
        let kap = eigen::kappa1(2.0 * l).unwrap();
        let coeffs = eigen::spectral_coeffs(&params, kap).unwrap();
        let sol = eigen::solve_ky(&coeffs, &params).unwrap();
        prop_assert!((sol.y - (sol.lambda1 * params.period).exp()).abs() <= 1e-9 * sol.y);
        let (phi0, psi0) = sol.profile(&params, &coeffs, 0.0).unwrap();
        let (phit, psit) = sol.profile(&params, &coeffs, params.period).unwrap();
        prop_assert!((phi0 - theta * phit).abs() <= 1e-7 * phi0.abs().max(theta * phit.abs()));
        prop_assert!((psi0 - psit).abs() <= 1e-7 * psi0.abs().max(psit.abs()));
    }

    /// Saturating impulses satisfy the ratio contract on any sample.
    #[test]
    fn saturating_impulse_ratio_contract(c in 0.1..10.0f64, extra in 0.0..20.0f64, u in 1e-6..1e6f64) {
        let d = c + extra;
        let imp = ImpulseFunction::Saturating { c, d };
        let ratio = imp.eval(u) / u;
        prop_assert!(ratio > 0.0 && ratio <= 1.0 + 1e-12);
        // strictly decreasing in u
        let ratio2 = imp.eval(u * 1.5) / (u * 1.5);
        prop_assert!(ratio2 < ratio);
    }

    /// Config serialization round-trips bit for bit.
    #[test]
    fn config_round_trip(
        d1 in 0.1..10.0f64,
        a12 in 0.1..5.0f64,
        tau_frac in 0.1..0.9f64,
        period in 1.0..50.0f64,
        m in 0.1..5.0f64,
    ) {
        let mut params = presets::sec52_params(ImpulseFunction::Saturating { c: 4.0, d: 10.0 });
        params.d1 = d1;
        params.a12 = a12;
        params.period = period;
        params.tau = period * tau_frac;
        params.growth = GrowthFunction::BevertonHolt { m, a: 1.0 };
        let cfg = config::Config {
            sim: SimConfig::defaults(&params),
            init: InitialData::cosine(params.s0, 0.4, 0.1),
            params,
            u0_amp: 0.4,
            v0_amp: 0.1,
        };
        let text = config::write_config(&cfg);
        let reparsed = config::parse_config(&text).unwrap();
        let text2 = config::write_config(&reparsed);
        prop_assert_eq!(text, text2);
    }

    /// Full-precision float formatting survives a parse round trip.
    #[test]
    fn fmt_f64_round_trips(x in prop::num::f64::NORMAL) {
        let s = config::fmt_f64(x);
        let back: f64 = s.parse().unwrap();
        prop_assert_eq!(x, back);
    }
}
