//! CSV emission for trajectories, density snapshots, and periodic orbits.
//!
//! All floats are written with 17 significant digits so determinism checks
//! can compare outputs byte for byte.

use crate::config::fmt_f64;
use crate::periodic::{OdeOrbit, PeriodicOrbit};
use crate::sim::Trajectory;

/// Front and sup-norm history: columns `t, r, s, sup_u, sup_v`.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,r,s,sup_u,sup_v\n");
    for i in 0..traj.times.len() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_f64(traj.times[i]),
            fmt_f64(traj.r[i]),
            fmt_f64(traj.s[i]),
            fmt_f64(traj.sup_u[i]),
            fmt_f64(traj.sup_v[i]),
        ));
    }
    out
}

/// Snapshot matrix for one density component: rows are snapshot times,
/// columns the normalized grid. `component` selects `u` or `v`.
pub fn snapshot_csv(traj: &Trajectory, component: char) -> String {
    let mut out = String::new();
    if traj.snapshots.is_empty() {
        return out;
    }
    let n = traj.snapshots[0].u.len();
    out.push_str("t");
    for i in 0..n {
        out.push_str(&format!(",xi_{i}"));
    }
    out.push('\n');
    for snap in &traj.snapshots {
        out.push_str(&fmt_f64(snap.t));
        let field = if component == 'u' { &snap.u } else { &snap.v };
        for value in field {
            out.push(',');
            out.push_str(&fmt_f64(*value));
        }
        out.push('\n');
    }
    out
}

/// Sidecar for the snapshot matrices: the physical mapping
/// `x = r + xi (s - r)` per snapshot row.
pub fn snapshot_metadata(traj: &Trajectory) -> String {
    let mut out = String::from("t,r,s,n_nodes\n");
    for snap in &traj.snapshots {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(snap.t),
            fmt_f64(snap.r),
            fmt_f64(snap.s),
            snap.u.len()
        ));
    }
    out
}

/// One-period space-time grid of the fixed-domain orbit; rows are time
/// levels, columns the spatial nodes, first column the time.
pub fn orbit_csv(orbit: &PeriodicOrbit, component: char) -> String {
    let mut out = String::from("t");
    for x in &orbit.x {
        out.push_str(&format!(",{}", fmt_f64(*x)));
    }
    out.push('\n');
    let field = if component == 'w' { &orbit.w } else { &orbit.z };
    for (lvl, t) in orbit.times.iter().enumerate() {
        out.push_str(&fmt_f64(*t));
        for value in &field[lvl] {
            out.push(',');
            out.push_str(&fmt_f64(*value));
        }
        out.push('\n');
    }
    out
}

/// Scalar orbit samples: columns `t, w, z`.
pub fn ode_orbit_csv(orbit: &OdeOrbit) -> String {
    let mut out = String::from("t,w,z\n");
    for i in 0..orbit.times.len() {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(orbit.times[i]),
            fmt_f64(orbit.w[i]),
            fmt_f64(orbit.z[i])
        ));
    }
    out
}
