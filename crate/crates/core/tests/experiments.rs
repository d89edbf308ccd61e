use oligosim_core::experiments::{default_gamma_grid, ensemble};
use oligosim_core::rng::replicate_seed;
use oligosim_core::{run, sweep, SimConfig, SweepSpec};
use statrs::distribution::{ContinuousCDF, StudentsT};

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for k in i..=j {
            out[idx[k]] = avg;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation and its one-sided p-value (t approximation).
fn spearman(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = xs.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let cov: f64 = rx
        .iter()
        .zip(&ry)
        .map(|(a, b)| (a - mean) * (b - mean))
        .sum();
    let vx: f64 = rx.iter().map(|a| (a - mean).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - mean).powi(2)).sum();
    let rho = cov / (vx * vy).sqrt();
    if rho >= 1.0 {
        return (1.0, 0.0);
    }
    let t = rho * ((n - 2.0) / (1.0 - rho * rho)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, n - 2.0).unwrap();
    (rho, 1.0 - dist.cdf(t))
}

#[test]
fn zero_grid_never_oversupplies() {
    let spec = SweepSpec::new(SimConfig::paper(5), vec![0.0], vec![0.0], 50);
    let r = sweep(&spec).unwrap();
    assert_eq!(r.cells.len(), 1);
    let s = r.cells[0].stats;
    assert_eq!(
        (s.mean, s.median, s.stddev, s.fraction_positive),
        (0.0, 0.0, 0.0, 0.0)
    );
}

#[test]
fn single_cell_single_seed_is_that_run() {
    let base = SimConfig::paper(11);
    let spec = SweepSpec::new(base.clone(), vec![0.45], vec![0.15], 1);
    let s = sweep(&spec).unwrap().cells[0].stats;
    let direct = run(&base
        .with_gammas(0.45, 0.15)
        .unwrap()
        .with_seed(replicate_seed(11, 0)))
    .unwrap()
    .global_excess;
    assert_eq!(s.runs, 1);
    assert_eq!((s.mean, s.median, s.stddev), (direct, direct, 0.0));
}

#[test]
fn sweep_is_reproducible_and_cells_are_stable() {
    let base = SimConfig::paper(3);
    let small = SweepSpec::new(base.clone(), vec![0.2, 0.6], vec![0.1], 40);
    let a = sweep(&small).unwrap();
    assert_eq!(a, sweep(&small).unwrap());

    // Adding grid values leaves existing cells untouched.
    let big = SweepSpec::new(base, vec![0.0, 0.2, 0.4, 0.6], vec![0.1, 0.3], 40);
    let b = sweep(&big).unwrap();
    for cell in &a.cells {
        let twin = b
            .cells
            .iter()
            .find(|c| c.gamma_one == cell.gamma_one && c.gamma_two == cell.gamma_two)
            .unwrap();
        assert_eq!(twin, cell);
    }
}

#[test]
fn aggressive_cells_almost_always_oversupply() {
    let spec = SweepSpec::new(
        SimConfig::paper(0),
        vec![0.4, 0.7, 1.0],
        vec![0.1, 0.3],
        200,
    );
    for cell in sweep(&spec).unwrap().cells {
        assert!(cell.stats.fraction_positive >= 0.99, "{cell:?}");
        assert!(cell.stats.stddev >= 0.0);
    }
}

#[test]
fn median_excess_rises_with_expansion_sensitivity() {
    let spec = SweepSpec::new(SimConfig::paper(0), default_gamma_grid(), vec![0.0], 300);
    let cells = sweep(&spec).unwrap().cells;
    let g: Vec<f64> = cells.iter().map(|c| c.gamma_one).collect();
    let med: Vec<f64> = cells.iter().map(|c| c.stats.median).collect();
    for w in med.windows(2) {
        assert!(w[1] >= w[0], "{med:?}");
    }
    let (rho, p) = spearman(&g, &med);
    assert!(rho > 0.0 && p < 0.01, "rho={rho} p={p}");
}

#[test]
fn ensemble_matches_individual_runs() {
    let cfg = SimConfig::paper(0);
    let seeds = [1, 2, 3, 99];
    let xs = ensemble(&cfg, &seeds).unwrap();
    for (x, s) in xs.iter().zip(seeds) {
        assert_eq!(*x, run(&cfg.with_seed(s)).unwrap().global_excess);
    }
}
