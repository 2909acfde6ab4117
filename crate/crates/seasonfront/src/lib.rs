//! Two-season impulsive faecal-oral epidemic model with free boundaries.
//!
//! The model tracks an infectious-agent density `u` and an infective-human
//! density `v` on an expanding interval. Each period starts with a dry
//! season (no agent diffusion, no cross-infection, frozen fronts), followed
//! by a wet season where the full cooperative dynamics run and the interval
//! endpoints move by a Stefan law; at every period wrap a disinfection
//! impulse `u -> H(u)` is applied.
//!
//! The crate provides:
//!
//! * [`params`] — parameter containers, assumption checks, a-priori bounds;
//! * [`eigen`] — the semi-analytic principal eigenvalue of the periodic
//!   impulsive linearization, by separation of variables;
//! * [`monodromy`] — an independent discrete eigenvalue oracle (power
//!   iteration on the one-period monodromy operator);
//! * [`sim`] — the nonlinear forward solver with moving fronts;
//! * [`periodic`] — periodic steady states by monotone iteration and the
//!   scalar limit orbit;
//! * [`classify`] — the spreading/vanishing criteria and the
//!   expansion-capacity threshold search;
//! * [`config`] / [`export`] — flat key-value configs and full-precision
//!   CSV emission.
//!
//! A narrative guide with runnable examples lives in `book/`; its code
//! blocks are compiled as doctests through the hidden [`guide`] module.

pub mod classify;
pub mod config;
pub mod eigen;
pub mod error;
pub mod export;
pub mod monodromy;
pub mod params;
pub mod periodic;
pub mod presets;
pub mod sim;
mod tridiag;

pub use error::{Error, Result};

#[cfg(doctest)]
mod guide;
