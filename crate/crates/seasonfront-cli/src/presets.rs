//! Named experiment presets carrying exactly the reference parameter sets.

use seasonfront::config::Config;
use seasonfront::params::{ImpulseFunction, InitialData, ModelParams};
use seasonfront::presets as base;
use seasonfront::sim::SimConfig;

/// Eigenvalue-ladder preset: base parameters plus the swept axis.
#[derive(Clone, Debug)]
pub struct EigenLadder {
    pub name: &'static str,
    pub description: &'static str,
    /// Column header of the swept quantity.
    pub axis: &'static str,
    pub values: Vec<f64>,
    /// Builds the parameter set and the half-width for one axis value.
    pub build: fn(f64) -> (ModelParams, f64),
}

/// Simulation preset.
#[derive(Clone, Debug)]
pub struct SimPreset {
    pub name: &'static str,
    pub description: &'static str,
    pub params: ModelParams,
    pub init: InitialData,
    pub sim: SimConfig,
}

fn ladder(lo: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| lo + step * i as f64).collect()
}

/// The three eigenvalue-monotonicity ladders.
pub fn eigen_ladders() -> Vec<EigenLadder> {
    vec![
        EigenLadder {
            name: "fig2a",
            description: "lambda1 vs half-width l (5..30), H'(0)=0.9, tau=5",
            axis: "l",
            values: ladder(5.0, 5.0, 6.0 as usize),
            build: |l| (base::sec51_params(0.9, 5.0), l),
        },
        EigenLadder {
            name: "fig2b",
            description: "lambda1 vs impulse slope H'(0) (0.01..0.91), tau=5, length 20",
            axis: "hprime0",
            values: ladder(0.01, 0.1, 10),
            build: |theta| (base::sec51_params(theta, 5.0), 10.0),
        },
        EigenLadder {
            name: "fig2c",
            description: "lambda1 vs dry-season duration tau (2..8), H'(0)=0.9, length 20",
            axis: "tau",
            values: ladder(2.0, 1.0, 7),
            build: |tau| (base::sec51_params(0.9, tau), 10.0),
        },
    ]
}

/// The four forward-simulation presets.
pub fn sim_presets() -> Vec<SimPreset> {
    let mk = |name, description, params: ModelParams| {
        let init = base::reference_initial_data();
        let mut sim = SimConfig::defaults(&params);
        sim.horizon = 10.0 * params.period;
        sim.snap_every = 2000;
        SimPreset {
            name,
            description,
            params,
            init,
            sim,
        }
    };
    vec![
        mk(
            "fig3-left",
            "impulse-intensity study, no intervention (spreading)",
            base::sec52_params(ImpulseFunction::Identity),
        ),
        mk(
            "fig3-right",
            "impulse-intensity study, saturating intervention 4u/(10+u)",
            base::sec52_params(ImpulseFunction::Saturating { c: 4.0, d: 10.0 }),
        ),
        mk(
            "fig4-left",
            "dry-season study, tau = 3 (spreading)",
            base::sec53_params(3.0),
        ),
        mk(
            "fig4-right",
            "dry-season study, tau = 4.7",
            base::sec53_params(4.7),
        ),
    ]
}

pub fn find_sim_preset(name: &str) -> Option<SimPreset> {
    sim_presets().into_iter().find(|p| p.name == name)
}

pub fn find_eigen_ladder(name: &str) -> Option<EigenLadder> {
    eigen_ladders().into_iter().find(|p| p.name == name)
}

/// Effective config of a simulation preset, for reproducible re-runs.
pub fn preset_config(p: &SimPreset) -> Config {
    Config {
        params: p.params.clone(),
        init: p.init.clone(),
        sim: p.sim.clone(),
        u0_amp: 0.4,
        v0_amp: 0.1,
    }
}
