//! Semi-discrete right-hand side for the classical and modified methods, and
//! the time-advance loop.
//!
//! Per direction the classical method reconstructs face-averaged traces on the
//! interior faces and evaluates one flux per face. The modified method
//! reconstructs on a tangential halo of four face rows, converts the traces to
//! face-center point values, evaluates the flux pointwise on a halo of two and
//! converts the point fluxes back to face averages on the interior faces.
//!
//! All directional work runs in the face-normal frame of the system, so the
//! x and y sweeps perform the identical floating-point operations on
//! transposed data.

use std::time::Instant;

use rayon::prelude::*;

use crate::boundary::{fill_ghosts, BoundarySpec};
use crate::conversion::{ConversionOrder, ConversionStencil, Sense};
use crate::error::{Error, Result};
use crate::grid::{Axis, ConservedField, FaceArray, FaceTraces, Grid3};
use crate::physics::{EquationSystem, FluxKind, MAX_COMPONENTS};
use crate::timeint::{clip_dt, compute_dt, step_in_place, Rhs, RkScheme, RkWorkspace};
use crate::weno::{PencilReconstructor, WenoOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodKind {
    Classical,
    Modified { conversion: ConversionOrder },
}

impl MethodKind {
    pub fn modified() -> Self {
        Self::Modified { conversion: ConversionOrder::Six }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Classical => "classical",
            Self::Modified { .. } => "modified",
        }
    }

    /// Tangential face halo needed for the reconstructed traces.
    pub fn trace_halo(self) -> usize {
        match self {
            Self::Classical => 0,
            Self::Modified { .. } => 2 * ConversionStencil::REACH,
        }
    }
}

/// Spatial discretization choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeConfig {
    pub method: MethodKind,
    pub weno: WenoOrder,
    pub flux: FluxKind,
}

impl SchemeConfig {
    /// Ghost layers required: stencil reach plus two.
    pub fn ghost_width(&self) -> usize {
        self.weno.reach() + 2
    }
}

struct AxisScratch {
    traces: FaceTraces,
    points: Option<FaceTraces>,
    point_flux: Option<FaceArray>,
    flux: FaceArray,
}

impl AxisScratch {
    fn new(grid: &Grid3, axis: Axis, m: usize, method: MethodKind) -> Self {
        let h = method.trace_halo();
        let traces = FaceTraces::zeros(grid, axis, m, h);
        let (points, point_flux) = match method {
            MethodKind::Classical => (None, None),
            MethodKind::Modified { .. } => {
                let hp = h - ConversionStencil::REACH;
                (Some(FaceTraces::zeros(grid, axis, m, hp)), Some(FaceArray::zeros(grid, axis, m, hp)))
            }
        };
        Self { traces, points, point_flux, flux: FaceArray::zeros(grid, axis, m, 0) }
    }
}

/// Right-hand side operator with reusable face buffers.
pub struct Solver<S: EquationSystem> {
    eqsys: S,
    bc: BoundarySpec,
    config: SchemeConfig,
    grid: Option<Grid3>,
    scratch: Vec<AxisScratch>,
    fallbacks: u64,
    evaluations: u64,
}

impl<S: EquationSystem> Solver<S> {
    pub fn new(eqsys: S, bc: BoundarySpec, config: SchemeConfig) -> Result<Self> {
        bc.validate()?;
        if config.flux == FluxKind::Hllc {
            // probe with a quiescent state (admissible for every system)
            let m = eqsys.components();
            let rest = [1.0, 0.0, 0.0, 0.0, 2.5];
            let mut f = [0.0; MAX_COMPONENTS];
            eqsys.hllc_normal(&rest[..m], &rest[..m], &mut f[..m])?;
        }
        Ok(Self { eqsys, bc, config, grid: None, scratch: Vec::new(), fallbacks: 0, evaluations: 0 })
    }

    pub fn eqsys(&self) -> &S {
        &self.eqsys
    }
    pub fn config(&self) -> &SchemeConfig {
        &self.config
    }
    pub fn boundary(&self) -> &BoundarySpec {
        &self.bc
    }

    /// Faces where the converted point state was inadmissible and the
    /// face-averaged trace was used instead, summed over all evaluations.
    pub fn fallback_count(&self) -> u64 {
        self.fallbacks
    }

    pub fn rhs_evaluations(&self) -> u64 {
        self.evaluations
    }

    fn prepare(&mut self, grid: &Grid3, m: usize) -> Result<()> {
        if m != self.eqsys.components() {
            return Err(Error::ShapeMismatch(format!(
                "field has {m} components, {} expects {}",
                self.eqsys.name(),
                self.eqsys.components()
            )));
        }
        let need = self.config.ghost_width();
        if grid.ghost() < need {
            return Err(Error::InvalidGrid(format!(
                "WENO-Z{} needs {need} ghost layers, grid has {}",
                self.config.weno.as_int(),
                grid.ghost()
            )));
        }
        if self.grid.as_ref() != Some(grid) {
            self.scratch = Axis::ALL.iter().map(|&a| AxisScratch::new(grid, a, m, self.config.method)).collect();
            self.grid = Some(*grid);
        }
        Ok(())
    }

    /// Fill ghosts of `state` and write `-sum_d (F_{d,+} - F_{d,-}) / dx_d`
    /// into the interior of `out`.
    pub fn tendency(&mut self, state: &mut ConservedField, out: &mut ConservedField) -> Result<()> {
        let grid = *state.grid();
        let m = state.components();
        if out.grid() != &grid || out.components() != m {
            return Err(Error::ShapeMismatch("tendency field does not match the state".into()));
        }
        self.prepare(&grid, m)?;
        fill_ghosts(state, &self.bc, &self.eqsys)?;
        let alpha = interior_wavespeeds(state, &self.eqsys)?;
        let eqsys = &self.eqsys;
        let config = self.config;
        for axis in Axis::ALL {
            let sc = &mut self.scratch[axis.index()];
            reconstruct_axis(state, eqsys, axis, config.weno, &mut sc.traces)?;
            match config.method {
                MethodKind::Classical => {
                    face_fluxes(eqsys, config.flux, axis, alpha[axis.index()], &sc.traces, &mut sc.flux)?;
                }
                MethodKind::Modified { conversion } => {
                    let points = sc.points.as_mut().expect("modified scratch");
                    let point_flux = sc.point_flux.as_mut().expect("modified scratch");
                    let a2p = ConversionStencil::new(conversion, Sense::AverageToPoint);
                    a2p.apply_into(&sc.traces.minus, &mut points.minus)?;
                    a2p.apply_into(&sc.traces.plus, &mut points.plus)?;
                    self.fallbacks += repair_points(eqsys, &sc.traces, points);
                    face_fluxes(eqsys, config.flux, axis, alpha[axis.index()], points, point_flux)?;
                    ConversionStencil::new(conversion, Sense::PointToAverage).apply_into(point_flux, &mut sc.flux)?;
                }
            }
        }
        let [fx, fy, fz] = [&self.scratch[0].flux, &self.scratch[1].flux, &self.scratch[2].flux];
        difference(eqsys, &grid, [fx, fy, fz], out);
        self.evaluations += 1;
        Ok(())
    }
}

impl<S: EquationSystem> Rhs for Solver<S> {
    fn eval(&mut self, state: &mut ConservedField, out: &mut ConservedField) -> Result<()> {
        self.tendency(state, out)
    }
}

/// Largest normal wave speed per direction over interior cells; rejects
/// inadmissible cells.
fn interior_wavespeeds<S: EquationSystem + ?Sized>(field: &ConservedField, eqsys: &S) -> Result<[f64; 3]> {
    let n = field.grid().n();
    let planes: Vec<Result<[f64; 3]>> = (0..n[2] as isize)
        .into_par_iter()
        .map(|k| {
            let mut lam = [0.0f64; 3];
            for j in 0..n[1] as isize {
                for i in 0..n[0] as isize {
                    let u = field.cell(i, j, k);
                    if let Err(e) = eqsys.validate(u) {
                        return Err(Error::InvalidState(format!("cell ({i}, {j}, {k}): {e}")));
                    }
                    for axis in Axis::ALL {
                        let d = axis.index();
                        lam[d] = lam[d].max(eqsys.max_wavespeed(u, axis));
                    }
                }
            }
            Ok(lam)
        })
        .collect();
    let mut lam = [0.0f64; 3];
    for p in planes {
        let p = p?;
        for d in 0..3 {
            lam[d] = lam[d].max(p[d]);
        }
    }
    Ok(lam)
}

/// Reconstruct face-normal-frame traces on every pencil of `traces`.
fn reconstruct_axis<S: EquationSystem + ?Sized>(
    field: &ConservedField,
    eqsys: &S,
    axis: Axis,
    order: WenoOrder,
    traces: &mut FaceTraces,
) -> Result<()> {
    let grid = field.grid();
    let m = field.components();
    let d = axis.index();
    let (ta, tb) = axis.tangential();
    let nd = grid.n()[d];
    let pad = order.reach();
    let h = traces.halo() as isize;
    let stride = field.strides()[d];
    let perm = eqsys.frame(axis);
    let row_len = traces.minus.row_len();
    let pt = traces.minus.padded_tangential();
    let slab = row_len * pt[0];
    let data = field.data();

    let results: Vec<Result<()>> = traces
        .minus
        .data_mut()
        .par_chunks_mut(slab)
        .zip(traces.plus.data_mut().par_chunks_mut(slab))
        .enumerate()
        .map(|(sb, (minus, plus))| {
            let b = sb as isize - h;
            let mut rec = PencilReconstructor::new(eqsys, order);
            let mut line = vec![0.0; (nd + 2 * pad) * m];
            for sa in 0..pt[0] {
                let a = sa as isize - h;
                let mut idx = [0isize; 3];
                idx[d] = -(pad as isize);
                idx[ta.index()] = a;
                idx[tb.index()] = b;
                let base = field.offset(idx[0], idx[1], idx[2]);
                for (s, dst) in line.chunks_exact_mut(m).enumerate() {
                    let o = base + s * stride;
                    crate::physics::to_frame(&perm, &data[o..o + m], dst);
                }
                let r = sa * row_len;
                rec.reconstruct(eqsys, &line, pad, nd, &mut minus[r..r + row_len], &mut plus[r..r + row_len])
                    .map_err(|(face, reason)| Error::Eigensystem { axis, face, t1: a, t2: b, reason })?;
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect()
}

/// Replace converted point values by the face-averaged traces on faces where
/// either converted state is inadmissible. Returns the number of such faces.
fn repair_points<S: EquationSystem + ?Sized>(eqsys: &S, averages: &FaceTraces, points: &mut FaceTraces) -> u64 {
    let m = points.components();
    let h = points.halo() as isize;
    let nt = points.minus.tangential_counts();
    let mut count = 0;
    for b in -h..nt[1] as isize + h {
        for a in -h..nt[0] as isize + h {
            let (am, ap) = (averages.minus.row(a, b), averages.plus.row(a, b));
            let bad: Vec<usize> = {
                let (pm, pp) = (points.minus.row(a, b), points.plus.row(a, b));
                (0..points.minus.faces())
                    .filter(|&f| {
                        let s = f * m..(f + 1) * m;
                        eqsys.validate(&pm[s.clone()]).is_err() || eqsys.validate(&pp[s]).is_err()
                    })
                    .collect()
            };
            if bad.is_empty() {
                continue;
            }
            count += bad.len() as u64;
            let am = am.to_vec();
            let ap = ap.to_vec();
            for f in bad {
                let s = f * m..(f + 1) * m;
                points.minus.row_mut(a, b)[s.clone()].copy_from_slice(&am[s.clone()]);
                points.plus.row_mut(a, b)[s.clone()].copy_from_slice(&ap[s]);
            }
        }
    }
    count
}

/// One numerical flux per face of `traces` (face-normal frame) into `out`.
fn face_fluxes<S: EquationSystem + ?Sized>(
    eqsys: &S,
    kind: FluxKind,
    axis: Axis,
    alpha: f64,
    traces: &FaceTraces,
    out: &mut FaceArray,
) -> Result<()> {
    let m = traces.components();
    let row_len = out.row_len();
    let pt = out.padded_tangential();
    let slab = row_len * pt[0];
    let (um, up) = (traces.minus.data(), traces.plus.data());
    let results: Vec<Result<()>> = out
        .data_mut()
        .par_chunks_mut(slab)
        .enumerate()
        .map(|(sb, dst)| {
            let src = sb * slab;
            let mut fm = [0.0; MAX_COMPONENTS];
            let mut fp = [0.0; MAX_COMPONENTS];
            for (f, o) in dst.chunks_exact_mut(m).enumerate() {
                let s = src + f * m;
                let (l, r) = (&um[s..s + m], &up[s..s + m]);
                match kind {
                    FluxKind::LaxFriedrichs => {
                        eqsys.normal_flux(l, axis, &mut fm[..m]);
                        eqsys.normal_flux(r, axis, &mut fp[..m]);
                        for c in 0..m {
                            o[c] = 0.5 * (fm[c] + fp[c]) - 0.5 * alpha * (r[c] - l[c]);
                        }
                    }
                    FluxKind::Hllc => eqsys.hllc_normal(l, r, o)?,
                }
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect()
}

/// Flux differencing into the interior of `out`, accumulating x, y, z in order.
fn difference<S: EquationSystem + ?Sized>(eqsys: &S, grid: &Grid3, flux: [&FaceArray; 3], out: &mut ConservedField) {
    let n = grid.n();
    let g = grid.ghost();
    let m = out.components();
    let dx = grid.dx();
    let inv = [1.0 / dx[0], 1.0 / dx[1], 1.0 / dx[2]];
    let perms = Axis::ALL.map(|a| eqsys.frame(a));
    let p = grid.padded();
    let plane = p[0] * p[1] * m;
    out.data_mut()
        .par_chunks_mut(plane)
        .enumerate()
        .filter(|(pk, _)| *pk >= g && *pk < g + n[2])
        .for_each(|(pk, dst)| {
            let k = (pk - g) as isize;
            for j in 0..n[1] as isize {
                let rx = flux[0].row(j, k);
                for i in 0..n[0] as isize {
                    let rows = [(rx, i as usize), (flux[1].row(i, k), j as usize), (flux[2].row(i, j), k as usize)];
                    let mut acc = [0.0; MAX_COMPONENTS];
                    for (d, (row, f)) in rows.iter().enumerate() {
                        for c in 0..m {
                            let diff = row[(f + 1) * m + c] - row[f * m + c];
                            acc[perms[d][c]] -= diff * inv[d];
                        }
                    }
                    let o = (((j + g as isize) as usize) * p[0] + i as usize + g) * m;
                    dst[o..o + m].copy_from_slice(&acc[..m]);
                }
            }
        });
}

/// Tendency of the classical method on a copy of `field`.
pub fn rhs_classical<S: EquationSystem + Clone>(
    field: &ConservedField,
    eqsys: &S,
    spec: &BoundarySpec,
    order: WenoOrder,
    flux: FluxKind,
) -> Result<ConservedField> {
    let config = SchemeConfig { method: MethodKind::Classical, weno: order, flux };
    one_tendency(field, eqsys, spec, config).map(|(t, _)| t)
}

/// Tendency of the modified method on a copy of `field`, with the number of
/// conversion fallbacks.
pub fn rhs_modified<S: EquationSystem + Clone>(
    field: &ConservedField,
    eqsys: &S,
    spec: &BoundarySpec,
    order: WenoOrder,
    flux: FluxKind,
    conversion: ConversionOrder,
) -> Result<(ConservedField, u64)> {
    let config = SchemeConfig { method: MethodKind::Modified { conversion }, weno: order, flux };
    one_tendency(field, eqsys, spec, config)
}

fn one_tendency<S: EquationSystem + Clone>(
    field: &ConservedField,
    eqsys: &S,
    spec: &BoundarySpec,
    config: SchemeConfig,
) -> Result<(ConservedField, u64)> {
    let mut solver = Solver::new(eqsys.clone(), *spec, config)?;
    let mut state = field.clone();
    let mut out = ConservedField::zeros(*field.grid(), field.components());
    solver.tendency(&mut state, &mut out)?;
    Ok((out, solver.fallback_count()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvanceOptions {
    pub t_final: f64,
    pub cfl: f64,
    pub max_steps: usize,
}

impl Default for AdvanceOptions {
    fn default() -> Self {
        Self { t_final: 0.0, cfl: 0.5, max_steps: 1_000_000 }
    }
}

/// What the observer sees after each step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AdvanceStats {
    pub steps: usize,
    pub time: f64,
    pub step_seconds: Vec<f64>,
    pub fallbacks: u64,
}

impl AdvanceStats {
    pub fn total_seconds(&self) -> f64 {
        self.step_seconds.iter().sum()
    }

    pub fn mean_step_seconds(&self) -> f64 {
        if self.step_seconds.is_empty() {
            0.0
        } else {
            self.total_seconds() / self.step_seconds.len() as f64
        }
    }
}

/// Advance `field` from `t = 0` to `opts.t_final`, landing on it exactly.
pub fn advance_to_time<S, F>(
    solver: &mut Solver<S>,
    scheme: &RkScheme,
    field: &mut ConservedField,
    opts: &AdvanceOptions,
    mut observer: F,
) -> Result<AdvanceStats>
where
    S: EquationSystem,
    F: FnMut(&StepInfo, &ConservedField) -> Result<()>,
{
    if !(opts.t_final >= 0.0 && opts.t_final.is_finite()) {
        return Err(Error::Config(format!("final time must be finite and non-negative, got {}", opts.t_final)));
    }
    field.check_finite()?;
    let fallbacks0 = solver.fallback_count();
    let mut stats = AdvanceStats::default();
    let mut ws = RkWorkspace::new(field, scheme);
    let mut t = 0.0;
    while t < opts.t_final {
        if stats.steps >= opts.max_steps {
            return Err(Error::TimeStep(format!("step cap {} reached at t = {t}", opts.max_steps)));
        }
        let start = Instant::now();
        let dt = compute_dt(field, solver.eqsys(), opts.cfl)?;
        let dt = clip_dt(dt, opts.t_final - t);
        match step_in_place(field, solver, dt, scheme, &mut ws) {
            Ok(()) => {}
            Err(Error::NonFiniteStage { .. }) => return Err(Error::BlowUp { time: t, step: stats.steps }),
            Err(e) => return Err(e),
        }
        if field.check_finite().is_err() {
            return Err(Error::BlowUp { time: t, step: stats.steps });
        }
        let seconds = start.elapsed().as_secs_f64();
        stats.steps += 1;
        t = if opts.t_final - (t + dt) <= 0.0 { opts.t_final } else { t + dt };
        stats.step_seconds.push(seconds);
        observer(&StepInfo { step: stats.steps, time: t, dt, seconds }, field)?;
    }
    stats.time = t;
    stats.fallbacks = solver.fallback_count() - fallbacks0;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryKind;
    use crate::grid::{fill_from_function, CellAveraging};
    use crate::physics::{Burgers, Euler, EulerState, LinearAdvection, GAMMA};

    fn configs() -> Vec<SchemeConfig> {
        let mut v = Vec::new();
        for weno in [WenoOrder::Five, WenoOrder::Seven] {
            for method in [MethodKind::Classical, MethodKind::modified(), MethodKind::Modified { conversion: ConversionOrder::Four }] {
                v.push(SchemeConfig { method, weno, flux: FluxKind::LaxFriedrichs });
            }
        }
        v
    }

    #[test]
    fn constant_field_has_zero_tendency() {
        for cfg in configs() {
            let grid = Grid3::new([0.0; 3], [1.0; 3], [6, 5, 4], cfg.ghost_width()).unwrap();
            let s = EulerState { rho: 1.3, vel: [0.2, -0.4, 0.1], p: 0.8 }.to_conserved(GAMMA);
            let f = fill_from_function(grid, 5, CellAveraging::PointSample, |_, o| o.copy_from_slice(&s)).unwrap();
            for flux in [FluxKind::LaxFriedrichs, FluxKind::Hllc] {
                let cfg = SchemeConfig { flux, ..cfg };
                let mut solver = Solver::new(Euler::default(), BoundarySpec::periodic(), cfg).unwrap();
                let mut state = f.clone();
                let mut out = ConservedField::zeros(grid, 5);
                solver.tendency(&mut state, &mut out).unwrap();
                out.for_each_interior(|_, _, _, t| assert!(t.iter().all(|v| v.abs() < 1e-13), "{t:?}"));
            }
        }
    }

    #[test]
    fn too_few_ghosts_rejected() {
        let grid = Grid3::new([0.0; 3], [1.0; 3], [4; 3], 3).unwrap();
        let f = ConservedField::zeros(grid, 1);
        let err = rhs_classical(&f, &Burgers, &BoundarySpec::periodic(), WenoOrder::Five, FluxKind::LaxFriedrichs);
        assert!(matches!(err, Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn hllc_requires_euler() {
        let cfg = SchemeConfig { method: MethodKind::Classical, weno: WenoOrder::Five, flux: FluxKind::Hllc };
        assert!(Solver::new(Burgers, BoundarySpec::periodic(), cfg).is_err());
    }

    #[test]
    fn x_advection_matches_one_dimensional_derivative() {
        // u = sin(2 pi x) advected along x only: tendency ~ -u_x averaged
        let cfg = SchemeConfig { method: MethodKind::modified(), weno: WenoOrder::Five, flux: FluxKind::LaxFriedrichs };
        let n = 32;
        let grid = Grid3::new([0.0; 3], [1.0; 3], [n, 4, 4], cfg.ghost_width()).unwrap();
        let tau = std::f64::consts::TAU;
        let f = fill_from_function(grid, 1, CellAveraging::Gauss9, |p, o| o[0] = (tau * p[0]).sin()).unwrap();
        let adv = LinearAdvection { velocity: [1.0, 0.0, 0.0] };
        let (t, fallbacks) =
            rhs_modified(&f, &adv, &BoundarySpec::periodic(), cfg.weno, cfg.flux, ConversionOrder::Six).unwrap();
        assert_eq!(fallbacks, 0);
        let h = 1.0 / n as f64;
        t.for_each_interior(|i, _, _, v| {
            let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
            let exact = -((tau * b).sin() - (tau * a).sin()) / h;
            assert!((v[0] - exact).abs() < 5e-5, "{} vs {exact}", v[0]);
        });
    }

    #[test]
    fn advance_zero_time_is_identity() {
        let cfg = SchemeConfig { method: MethodKind::Classical, weno: WenoOrder::Five, flux: FluxKind::LaxFriedrichs };
        let grid = Grid3::new([0.0; 3], [1.0; 3], [4; 3], cfg.ghost_width()).unwrap();
        let mut f = fill_from_function(grid, 1, CellAveraging::PointSample, |p, o| o[0] = p[0]).unwrap();
        let before = f.clone();
        let mut solver = Solver::new(LinearAdvection::default(), BoundarySpec::periodic(), cfg).unwrap();
        let opts = AdvanceOptions { t_final: 0.0, ..Default::default() };
        let stats = advance_to_time(&mut solver, &RkScheme::rk5(), &mut f, &opts, |_, _| Ok(())).unwrap();
        assert_eq!(stats.steps, 0);
        assert_eq!(f, before);
    }

    #[test]
    fn final_step_lands_on_end_time() {
        let cfg = SchemeConfig { method: MethodKind::modified(), weno: WenoOrder::Five, flux: FluxKind::LaxFriedrichs };
        let grid = Grid3::new([0.0; 3], [1.0; 3], [6; 3], cfg.ghost_width()).unwrap();
        let mut f = fill_from_function(grid, 1, CellAveraging::PointSample, |p, o| o[0] = 1.0 + 0.1 * p[1]).unwrap();
        let spec = BoundarySpec::uniform(BoundaryKind::Outflow);
        let mut solver = Solver::new(Burgers, spec, cfg).unwrap();
        let opts = AdvanceOptions { t_final: 0.123, cfl: 0.5, max_steps: 100 };
        let mut last = 0.0;
        let stats = advance_to_time(&mut solver, &RkScheme::rk5(), &mut f, &opts, |s, _| {
            last = s.time;
            Ok(())
        })
        .unwrap();
        assert_eq!(stats.time, 0.123);
        assert_eq!(last, 0.123);
        assert_eq!(stats.step_seconds.len(), stats.steps);
    }
}
