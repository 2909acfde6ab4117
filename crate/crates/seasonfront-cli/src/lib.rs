//! Library surface of the command-line driver; the binary in `main.rs` is a
//! thin argument-parsing shell over these modules so integration tests can
//! exercise the same code paths.

pub mod plot;
pub mod presets;
pub mod sweep;
