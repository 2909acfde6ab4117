//! Parameter sets of the three reference experiments. The CLI exposes these
//! as named presets; library tests use them directly.

use crate::params::{GrowthFunction, ImpulseFunction, InitialData, ModelParams};

/// Eigenvalue-monotonicity study parameters: slow agents, fast humans,
/// `T = 10`. The impulse derivative and `tau` vary per figure panel.
pub fn sec51_params(impulse_slope: f64, tau: f64) -> ModelParams {
    ModelParams {
        d1: 5.0,
        d2: 40.0,
        a11: 0.2,
        a12: 0.8,
        a22: 0.3,
        delta1: 0.6,
        delta2: 0.9,
        mu1: 6.0,
        mu2: 8.0,
        tau,
        period: 10.0,
        s0: 2.0,
        growth: GrowthFunction::BevertonHolt { m: 1.5, a: 1.0 },
        impulse: impulse_with_slope(impulse_slope),
    }
}

/// Impulse-intensity study parameters: symmetric diffusion and decay,
/// `tau = 6`, `T = 20`.
pub fn sec52_params(impulse: ImpulseFunction) -> ModelParams {
    ModelParams {
        d1: 0.5,
        d2: 0.5,
        a11: 0.8,
        a12: 1.67,
        a22: 0.8,
        delta1: 1.5,
        delta2: 1.5,
        mu1: 6.0,
        mu2: 8.0,
        tau: 6.0,
        period: 20.0,
        s0: 2.0,
        growth: GrowthFunction::BevertonHolt { m: 1.7, a: 1.0 },
        impulse,
    }
}

/// Dry-season-duration study parameters: identity impulse, `T = 10`, `tau`
/// chosen per panel.
pub fn sec53_params(tau: f64) -> ModelParams {
    ModelParams {
        d1: 0.5,
        d2: 0.5,
        a11: 0.8,
        a12: 1.7,
        a22: 0.8,
        delta1: 0.9,
        delta2: 0.9,
        mu1: 6.0,
        mu2: 8.0,
        tau,
        period: 10.0,
        s0: 2.0,
        growth: GrowthFunction::BevertonHolt { m: 1.7, a: 1.0 },
        impulse: ImpulseFunction::Identity,
    }
}

/// Initial densities shared by all reference experiments.
pub fn reference_initial_data() -> InitialData {
    InitialData::cosine(2.0, 0.4, 0.1)
}

/// An impulse with prescribed derivative at zero that still satisfies the
/// strict ratio-decrease assumption: identity for slope 1, otherwise the
/// saturating map `10*slope*u / (10 + u)`.
pub fn impulse_with_slope(slope: f64) -> ImpulseFunction {
    if (slope - 1.0).abs() < 1e-15 {
        ImpulseFunction::Identity
    } else {
        ImpulseFunction::Saturating {
            c: 10.0 * slope,
            d: 10.0,
        }
    }
}
