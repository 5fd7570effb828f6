//! Test problems: initial data, boundary conditions and exact solutions.

use std::cell::Cell;
use std::f64::consts::PI;

use fvweno::{
    fill_from_function, Axis, BoundaryKind, BoundarySpec, Burgers, CellAveraging, ConservedField, Euler, EulerState,
    FluxKind, Grid3, LinearAdvection, Side, GAMMA,
};

use crate::error::{HarnessError, Result};
use crate::system::AnySystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Advect3d,
    Burgers3d,
    EulerWave,
    SphericalRiemann,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] =
        [ProblemKind::Advect3d, ProblemKind::Burgers3d, ProblemKind::EulerWave, ProblemKind::SphericalRiemann];

    pub fn name(self) -> &'static str {
        match self {
            Self::Advect3d => "advect3d",
            Self::Burgers3d => "burgers3d",
            Self::EulerWave => "euler_wave",
            Self::SphericalRiemann => "spherical_riemann",
        }
    }
}

impl std::str::FromStr for ProblemKind {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown problem '{s}'")))
    }
}

/// A fully specified test case.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub kind: ProblemKind,
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub t_final: f64,
    pub flux: FluxKind,
    pub bc: BoundarySpec,
    pub system: AnySystem,
    pub default_grid: [usize; 3],
    /// Component compared against the exact solution.
    pub error_component: usize,
    pub averaging: CellAveraging,
}

const K_BURGERS: f64 = PI / 3.0;

impl Problem {
    pub fn new(kind: ProblemKind) -> Self {
        match kind {
            ProblemKind::Advect3d => Self {
                kind,
                lo: [-2.0; 3],
                hi: [2.0; 3],
                t_final: 1.0,
                flux: FluxKind::LaxFriedrichs,
                bc: BoundarySpec::periodic(),
                system: AnySystem::Advection(LinearAdvection::default()),
                default_grid: [20; 3],
                error_component: 0,
                averaging: CellAveraging::Gauss9,
            },
            ProblemKind::Burgers3d => Self {
                kind,
                lo: [-3.0; 3],
                hi: [3.0; 3],
                t_final: 0.1,
                flux: FluxKind::LaxFriedrichs,
                bc: BoundarySpec::periodic(),
                system: AnySystem::Burgers(Burgers),
                default_grid: [20; 3],
                error_component: 0,
                averaging: CellAveraging::Gauss9,
            },
            ProblemKind::EulerWave => Self {
                kind,
                lo: [-3.0; 3],
                hi: [3.0; 3],
                t_final: 1.0,
                flux: FluxKind::Hllc,
                bc: BoundarySpec::periodic(),
                system: AnySystem::Euler(Euler::default()),
                default_grid: [20; 3],
                error_component: 0,
                averaging: CellAveraging::Gauss9,
            },
            ProblemKind::SphericalRiemann => Self {
                kind,
                lo: [0.0; 3],
                hi: [1.5, 1.5, 1.0],
                t_final: 0.7,
                flux: FluxKind::Hllc,
                bc: BoundarySpec::new()
                    .with(Axis::X, Side::Low, BoundaryKind::Symmetry)
                    .with(Axis::Y, Side::Low, BoundaryKind::Symmetry)
                    .with(Axis::X, Side::High, BoundaryKind::Outflow)
                    .with(Axis::Y, Side::High, BoundaryKind::Outflow)
                    .with(Axis::Z, Side::Low, BoundaryKind::ReflectiveWall)
                    .with(Axis::Z, Side::High, BoundaryKind::ReflectiveWall),
                system: AnySystem::Euler(Euler::default()),
                default_grid: [75, 75, 50],
                error_component: 0,
                averaging: CellAveraging::PointSample,
            },
        }
    }

    pub fn has_exact(&self) -> bool {
        self.kind != ProblemKind::SphericalRiemann
    }

    pub fn grid(&self, n: [usize; 3], ghost: usize) -> Result<Grid3> {
        Ok(Grid3::new(self.lo, self.hi, n, ghost)?)
    }

    /// Pointwise initial state in conserved variables.
    pub fn initial(&self, p: [f64; 3], out: &mut [f64]) {
        match self.kind {
            ProblemKind::SphericalRiemann => {
                let r = (p[0] * p[0] + p[1] * p[1] + (p[2] - 0.4) * (p[2] - 0.4)).sqrt();
                let pressure = if r > 0.2 { 1.0 } else { 5.0 };
                out.copy_from_slice(&EulerState { rho: 1.0, vel: [0.0; 3], p: pressure }.to_conserved(GAMMA));
            }
            _ => self.exact(p, 0.0, out).expect("smooth problems are defined at t = 0"),
        }
    }

    /// Pointwise exact solution at time `t`.
    pub fn exact(&self, p: [f64; 3], t: f64, out: &mut [f64]) -> Result<()> {
        let s = p[0] + p[1] + p[2];
        match self.kind {
            ProblemKind::Advect3d => out[0] = (0.5 * PI * (s - 3.0 * t)).sin(),
            ProblemKind::Burgers3d => out[0] = exact_burgers(p[0], p[1], p[2], t)?,
            ProblemKind::EulerWave => {
                let rho = 1.0 + 0.2 * (K_BURGERS * (s - 3.0 * t)).sin();
                out.copy_from_slice(&EulerState { rho, vel: [1.0; 3], p: 1.0 }.to_conserved(GAMMA));
            }
            ProblemKind::SphericalRiemann => return Err(HarnessError::NoExactSolution(self.kind.name().into())),
        }
        Ok(())
    }

    pub fn initial_field(&self, grid: Grid3) -> Result<ConservedField> {
        let m = fvweno::EquationSystem::components(&self.system);
        Ok(fill_from_function(grid, m, self.averaging, |p, o| self.initial(p, o))?)
    }

    /// Gauss9 cell averages of the exact solution at `t`.
    pub fn exact_field(&self, grid: Grid3, t: f64) -> Result<ConservedField> {
        if !self.has_exact() {
            return Err(HarnessError::NoExactSolution(self.kind.name().into()));
        }
        let m = fvweno::EquationSystem::components(&self.system);
        let failure = Cell::new(None);
        let field = fill_from_function(grid, m, CellAveraging::Gauss9, |p, o| {
            if let Err(HarnessError::Newton { s, t, residual }) = self.exact(p, t, o) {
                failure.set(Some((s, t, residual)));
                o.iter_mut().for_each(|v| *v = 0.0);
            }
        })?;
        match failure.get() {
            Some((s, t, residual)) => Err(HarnessError::Newton { s, t, residual }),
            None => Ok(field),
        }
    }
}

/// Solution of `u_t + sum_d (u^2/2)_d = 0` with `u0 = 0.5 + sin(pi/3 (x+y+z))`,
/// from the implicit relation `u = 0.5 + sin(pi/3 (s - 3 u t))`.
pub fn exact_burgers(x: f64, y: f64, z: f64, t: f64) -> Result<f64> {
    let s = x + y + z;
    let mut u = 0.5 + (K_BURGERS * s).sin();
    if t == 0.0 {
        return Ok(u);
    }
    let residual = |u: f64| u - 0.5 - (K_BURGERS * (s - 3.0 * u * t)).sin();
    let mut r = residual(u);
    for _ in 0..100 {
        if r.abs() <= 1e-13 {
            return Ok(u);
        }
        let slope = 1.0 + 3.0 * K_BURGERS * t * (K_BURGERS * (s - 3.0 * u * t)).cos();
        u -= r / slope;
        r = residual(u);
    }
    if r.abs() <= 1e-13 {
        Ok(u)
    } else {
        Err(HarnessError::Newton { s, t, residual: r })
    }
}
