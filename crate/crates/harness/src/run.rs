//! Driving one simulation from a problem and scheme choice.

use fvweno::{advance_to_time, AdvanceOptions, AdvanceStats, ConservedField, Euler, RkScheme, SchemeConfig, Solver, StepInfo, WenoOrder};

use crate::config::RunConfig;
use crate::error::Result;
use crate::problems::{Problem, ProblemKind};
use crate::system::AnySystem;

#[derive(Debug, Clone)]
pub struct RunSpec {
    pub problem: Problem,
    pub scheme: SchemeConfig,
    pub rk: RkScheme,
    pub n: [usize; 3],
    pub cfl: f64,
    pub t_final: f64,
    pub max_steps: usize,
}

impl RunSpec {
    /// Defaults: problem flux and final time, RK order matching WENO, CFL 0.5.
    pub fn new(kind: ProblemKind, method: fvweno::MethodKind, weno: WenoOrder, n: [usize; 3]) -> Self {
        let problem = Problem::new(kind);
        let rk = RkScheme::of_order(weno.as_int()).expect("WENO orders are valid RK orders");
        Self {
            scheme: SchemeConfig { method, weno, flux: problem.flux },
            t_final: problem.t_final,
            problem,
            rk,
            n,
            cfl: 0.5,
            max_steps: 1_000_000,
        }
    }

    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            problem: cfg.problem(),
            scheme: cfg.scheme()?,
            rk: cfg.rk_scheme()?,
            n: cfg.grid_counts(),
            cfl: cfg.cfl,
            t_final: cfg.final_time(),
            max_steps: cfg.max_steps,
        })
    }

    pub fn solver(&self) -> Result<Solver<AnySystem>> {
        Ok(Solver::new(self.problem.system, self.problem.bc, self.scheme)?)
    }

    pub fn initial_field(&self) -> Result<ConservedField> {
        self.problem.initial_field(self.problem.grid(self.n, self.scheme.ghost_width())?)
    }
}

/// Smallest density and pressure seen (Euler problems).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Positivity {
    pub min_density: f64,
    pub min_pressure: f64,
}

impl Positivity {
    fn of(field: &ConservedField, e: &Euler) -> Self {
        let mut p = Positivity { min_density: f64::INFINITY, min_pressure: f64::INFINITY };
        field.for_each_interior(|_, _, _, u| {
            p.min_density = p.min_density.min(u[0]);
            p.min_pressure = p.min_pressure.min(e.pressure(u));
        });
        p
    }

    fn merge(self, o: Self) -> Self {
        Self { min_density: self.min_density.min(o.min_density), min_pressure: self.min_pressure.min(o.min_pressure) }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub field: ConservedField,
    pub stats: AdvanceStats,
    /// Over the initial field and every completed step.
    pub positivity: Option<Positivity>,
}

/// Run `spec` to its final time, calling `progress` after each step.
pub fn simulate(spec: &RunSpec, mut progress: impl FnMut(&StepInfo)) -> Result<RunOutcome> {
    let mut solver = spec.solver()?;
    let mut field = spec.initial_field()?;
    let euler = match spec.problem.system {
        AnySystem::Euler(e) => Some(e),
        _ => None,
    };
    let mut positivity = euler.map(|e| Positivity::of(&field, &e));
    let opts = AdvanceOptions { t_final: spec.t_final, cfl: spec.cfl, max_steps: spec.max_steps };
    let stats = advance_to_time(&mut solver, &spec.rk, &mut field, &opts, |info, f| {
        if let (Some(e), Some(p)) = (euler, positivity.as_mut()) {
            *p = p.merge(Positivity::of(f, &e));
        }
        progress(info);
        Ok(())
    })?;
    Ok(RunOutcome { field, stats, positivity })
}
