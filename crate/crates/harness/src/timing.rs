//! Per-iteration cost of the modified method relative to the classical one.

use std::path::Path;
use std::time::Instant;

use fvweno::timeint::{compute_dt, step_in_place, RkWorkspace};
use fvweno::{MethodKind, WenoOrder};

use crate::error::{HarnessError, Result};
use crate::problems::ProblemKind;
use crate::run::RunSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub grid: [usize; 3],
    pub classical: f64,
    pub modified: f64,
    pub ratio: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingTable {
    pub weno: WenoOrder,
    pub rows: Vec<TimingRow>,
    /// Mean of the per-grid ratios.
    pub average_ratio: f64,
}

/// Mean wall time of one full time step, after one untimed warm-up step.
pub fn time_steps(spec: &RunSpec, steps: usize) -> Result<f64> {
    let mut solver = spec.solver()?;
    let mut field = spec.initial_field()?;
    let mut ws = RkWorkspace::new(&field, &spec.rk);
    let mut one = |field: &mut fvweno::ConservedField| -> Result<()> {
        let dt = compute_dt(field, solver.eqsys(), spec.cfl)?;
        step_in_place(field, &mut solver, dt, &spec.rk, &mut ws)?;
        Ok(())
    };
    one(&mut field)?;
    let start = Instant::now();
    for _ in 0..steps {
        one(&mut field)?;
    }
    Ok(start.elapsed().as_secs_f64() / steps as f64)
}

/// Both methods on each grid, back to back, with the same number of steps.
pub fn run_timing(problem: ProblemKind, ladder: &[[usize; 3]], weno: WenoOrder, steps: usize) -> Result<TimingTable> {
    if steps == 0 || ladder.is_empty() {
        return Err(HarnessError::Config("timing needs at least one grid and one step".into()));
    }
    let mut rows = Vec::new();
    for &n in ladder {
        let classical = time_steps(&RunSpec::new(problem, MethodKind::Classical, weno, n), steps)?;
        let modified = time_steps(&RunSpec::new(problem, MethodKind::modified(), weno, n), steps)?;
        rows.push(TimingRow { grid: n, classical, modified, ratio: modified / classical, steps });
    }
    let average_ratio = rows.iter().map(|r| r.ratio).sum::<f64>() / rows.len() as f64;
    Ok(TimingTable { weno, rows, average_ratio })
}

pub fn write_timing_csv(path: &Path, table: &TimingTable) -> Result<()> {
    let wrap = |e: csv::Error| HarnessError::Csv { path: path.to_path_buf(), source: e };
    let mut w = csv::Writer::from_path(path).map_err(wrap)?;
    w.write_record(["grid", "classical_seconds", "classical_ratio", "modified_seconds", "modified_ratio", "steps"])
        .map_err(wrap)?;
    for r in &table.rows {
        let [a, b, c] = r.grid;
        w.write_record([
            format!("{a}x{b}x{c}"),
            format!("{:.6e}", r.classical),
            "1.00".into(),
            format!("{:.6e}", r.modified),
            format!("{:.2}", r.ratio),
            r.steps.to_string(),
        ])
        .map_err(wrap)?;
    }
    w.write_record(["average".into(), String::new(), "1.00".into(), String::new(), format!("{:.2}", table.average_ratio), String::new()])
        .map_err(wrap)?;
    w.flush().map_err(|e| HarnessError::io(path, e))
}
