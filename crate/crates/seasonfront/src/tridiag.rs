//! Thomas solver for the constant-coefficient tridiagonal systems produced by
//! the Crank-Nicolson discretizations in this crate.

/// Solves the system with constant bands `sub * x[i-1] + diag * x[i] + sup * x[i+1] = rhs[i]`.
///
/// `rhs` is consumed as the solution buffer. `scratch` must have the same
/// length; it only holds forward-elimination coefficients between calls, so a
/// single buffer can be reused across many solves.
pub fn solve_const(sub: f64, diag: f64, sup: f64, rhs: &mut [f64], scratch: &mut [f64]) {
    let n = rhs.len();
    debug_assert!(scratch.len() >= n);
    debug_assert!(n > 0);
    let mut beta = diag;
    scratch[0] = sup / beta;
    rhs[0] /= beta;
    for i in 1..n {
        beta = diag - sub * scratch[i - 1];
        scratch[i] = sup / beta;
        rhs[i] = (rhs[i] - sub * rhs[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= scratch[i] * rhs[i + 1];
    }
}
