//! L1 errors, experimental orders of convergence and grid-refinement studies.

use std::path::Path;

use fvweno::{ConservedField, RkScheme, SchemeConfig};

use crate::error::{HarnessError, Result};
use crate::problems::ProblemKind;
use crate::run::{simulate, RunSpec};

/// `sum |u - u_exact| * dV` over interior cells in storage order.
pub fn l1_error(numerical: &ConservedField, exact: &ConservedField, component: usize) -> Result<f64> {
    if numerical.grid() != exact.grid() || numerical.components() != exact.components() {
        return Err(fvweno::Error::ShapeMismatch("error norm needs fields on identical grids".into()).into());
    }
    if component >= numerical.components() {
        return Err(HarnessError::Config(format!("component {component} out of range")));
    }
    let mut sum = 0.0;
    numerical.for_each_interior(|i, j, k, u| sum += (u[component] - exact.get(component, i, j, k)).abs());
    Ok(sum * numerical.grid().cell_volume())
}

/// `log2(coarse / fine)`.
pub fn eoc(err_coarse: f64, err_fine: f64) -> Result<f64> {
    if !(err_coarse > 0.0 && err_fine > 0.0) {
        return Err(HarnessError::NonPositiveError { coarse: err_coarse, fine: err_fine });
    }
    Ok((err_coarse / err_fine).log2())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub grid: [usize; 3],
    pub l1: f64,
    /// `l1` divided by the domain volume, i.e. the mean absolute cell error.
    /// Published error tables are on this scale.
    pub l1_per_volume: f64,
    /// Against the previous (coarser) entry.
    pub eoc: Option<f64>,
    pub seconds_per_step: f64,
    pub steps: usize,
    pub fallbacks: u64,
}

impl ErrorReport {
    pub fn label(&self) -> String {
        let [a, b, c] = self.grid;
        if a == b && b == c {
            format!("{a}^3")
        } else {
            format!("{a}x{b}x{c}")
        }
    }
}

/// Run `problem` on each grid of `ladder`, reporting errors against the
/// exact cell averages at the final time. `sink` sees each row as soon as it
/// is available, so a failure on a fine grid still leaves the coarse rows.
pub fn run_convergence(
    problem: ProblemKind,
    scheme: SchemeConfig,
    rk: &RkScheme,
    ladder: &[[usize; 3]],
    cfl: f64,
    mut sink: impl FnMut(&ErrorReport) -> Result<()>,
) -> Result<Vec<ErrorReport>> {
    let mut reports: Vec<ErrorReport> = Vec::new();
    for &n in ladder {
        let mut spec = RunSpec::new(problem, scheme.method, scheme.weno, n);
        spec.scheme = scheme;
        spec.rk = rk.clone();
        spec.cfl = cfl;
        if !spec.problem.has_exact() {
            return Err(HarnessError::NoExactSolution(problem.name().into()));
        }
        let out = simulate(&spec, |_| {})?;
        let exact = spec.problem.exact_field(*out.field.grid(), spec.t_final)?;
        let l1 = l1_error(&out.field, &exact, spec.problem.error_component)?;
        let eoc = match reports.last() {
            Some(prev) => Some(eoc(prev.l1, l1)?),
            None => None,
        };
        let volume = out.field.grid().cell_volume() * out.field.grid().interior_cells() as f64;
        let report = ErrorReport {
            grid: n,
            l1,
            l1_per_volume: l1 / volume,
            eoc,
            seconds_per_step: out.stats.mean_step_seconds(),
            steps: out.stats.steps,
            fallbacks: out.stats.fallbacks,
        };
        sink(&report)?;
        reports.push(report);
    }
    Ok(reports)
}

pub fn write_convergence_csv(path: &Path, scheme: &SchemeConfig, rk: &RkScheme, reports: &[ErrorReport]) -> Result<()> {
    let wrap = |e: csv::Error| HarnessError::Csv { path: path.to_path_buf(), source: e };
    let mut w = csv::Writer::from_path(path).map_err(wrap)?;
    w.write_record(["grid", "method", "weno", "rk", "l1_error", "l1_per_volume", "eoc", "seconds_per_step", "steps", "fallbacks"])
        .map_err(wrap)?;
    for r in reports {
        w.write_record([
            r.label(),
            scheme.method.name().to_string(),
            scheme.weno.as_int().to_string(),
            rk.order().to_string(),
            format!("{:.6e}", r.l1),
            format!("{:.6e}", r.l1_per_volume),
            r.eoc.map(|e| format!("{e:.2}")).unwrap_or_default(),
            format!("{:.6e}", r.seconds_per_step),
            r.steps.to_string(),
            r.fallbacks.to_string(),
        ])
        .map_err(wrap)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}
