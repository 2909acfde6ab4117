//! Gnuplot script emission: four panels per simulation run (density
//! surface, profile snapshots, sup-norm history, boundary history), matching
//! the reference figure layout. The scripts consume the CSVs written next to
//! them; no images are rendered here.

/// Script for one simulation run directory containing `trajectory.csv`,
/// `snapshots_u.csv`, and `snapshots_meta.csv`. `n_snapshots` is the number
/// of data rows in the snapshot matrix.
pub fn simulation_script(title: &str, n_snapshots: usize) -> String {
    // four profile rows spread over the run (1-based data rows; row 0 is the
    // header line skipped by `every`)
    let picks: Vec<usize> = if n_snapshots == 0 {
        vec![]
    } else {
        (1..=4)
            .map(|i| ((n_snapshots - 1) * i / 4 + 1).min(n_snapshots))
            .collect()
    };
    let profile_lines = picks
        .iter()
        .map(|r| {
            format!(
                "     'snapshots_u.csv' matrix every ::1:{r}::{r} using 1:3 with lines title 'snapshot {r}'"
            )
        })
        .collect::<Vec<_>>()
        .join(", \\\n");
    format!(
        r#"# gnuplot script; run from the output directory:  gnuplot plot.gp
set datafile separator ','
set terminal pngcairo size 1400,1000
set output 'panels.png'
set multiplot layout 2,2 title '{title}'

# (a) agent density surface on the normalized grid
set title 'u on the front-fixed grid'
set xlabel 'xi index'
set ylabel 'snapshot row'
set view map
splot 'snapshots_u.csv' matrix every ::1:1 with image notitle
unset view

# (b) agent density profiles at selected snapshot rows
set title 'u profiles'
set xlabel 'xi index'
set ylabel 'u'
plot \
{profile_lines}

# (c) sup norms over time
set title 'sup norms'
set xlabel 't'
set ylabel 'density'
set logscale y
plot 'trajectory.csv' using 1:4 with lines title 'sup u', \
     'trajectory.csv' using 1:5 with lines title 'sup v'
unset logscale y

# (d) boundary history
set title 'infection fronts'
set xlabel 't'
set ylabel 'x'
plot 'trajectory.csv' using 1:2 with lines title 'r(t)', \
     'trajectory.csv' using 1:3 with lines title 's(t)'

unset multiplot
"#
    )
}

/// Script for an eigenvalue-ladder CSV with the swept axis in column 1 and
/// `lambda1` in column 2.
pub fn ladder_script(axis: &str, csv_name: &str) -> String {
    format!(
        r#"# gnuplot script; run next to {csv_name}
set datafile separator ','
set terminal pngcairo size 800,600
set output 'ladder.png'
set xlabel '{axis}'
set ylabel 'lambda1'
set grid
plot '{csv_name}' using 1:2 with linespoints title 'lambda1'
"#
    )
}
