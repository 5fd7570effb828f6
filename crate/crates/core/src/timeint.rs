//! Explicit Runge-Kutta integration of the semi-discrete system.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::conversion::Ratio;
use crate::error::{Error, Result};
use crate::grid::{Axis, ConservedField};
use crate::physics::EquationSystem;

#[derive(Debug, Clone, PartialEq)]
pub struct RkScheme {
    order: usize,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    c: Vec<f64>,
}

const fn r(num: i64, den: i64) -> Ratio {
    Ratio::new(num, den)
}
const Z: Ratio = Ratio::new(0, 1);

/// Butcher's six-stage fifth-order method.
const RK5_A: [[Ratio; 5]; 6] = [
    [Z, Z, Z, Z, Z],
    [r(1, 4), Z, Z, Z, Z],
    [r(1, 8), r(1, 8), Z, Z, Z],
    [Z, r(-1, 2), r(1, 1), Z, Z],
    [r(3, 16), Z, Z, r(9, 16), Z],
    [r(-3, 7), r(2, 7), r(12, 7), r(-12, 7), r(8, 7)],
];
const RK5_B: [Ratio; 6] = [r(7, 90), Z, r(32, 90), r(12, 90), r(32, 90), r(7, 90)];

/// Seventh-order member of Fehlberg's 7(8) pair (stages 1..=11).
const RK7_A: [[Ratio; 10]; 11] = [
    [Z, Z, Z, Z, Z, Z, Z, Z, Z, Z],
    [r(2, 27), Z, Z, Z, Z, Z, Z, Z, Z, Z],
    [r(1, 36), r(1, 12), Z, Z, Z, Z, Z, Z, Z, Z],
    [r(1, 24), Z, r(1, 8), Z, Z, Z, Z, Z, Z, Z],
    [r(5, 12), Z, r(-25, 16), r(25, 16), Z, Z, Z, Z, Z, Z],
    [r(1, 20), Z, Z, r(1, 4), r(1, 5), Z, Z, Z, Z, Z],
    [r(-25, 108), Z, Z, r(125, 108), r(-65, 27), r(125, 54), Z, Z, Z, Z],
    [r(31, 300), Z, Z, Z, r(61, 225), r(-2, 9), r(13, 900), Z, Z, Z],
    [r(2, 1), Z, Z, r(-53, 6), r(704, 45), r(-107, 9), r(67, 90), r(3, 1), Z, Z],
    [r(-91, 108), Z, Z, r(23, 108), r(-976, 135), r(311, 54), r(-19, 60), r(17, 6), r(-1, 12), Z],
    [r(2383, 4100), Z, Z, r(-341, 164), r(4496, 1025), r(-301, 82), r(2133, 4100), r(45, 82), r(45, 164), r(18, 41)],
];
const RK7_B: [Ratio; 11] = [r(41, 840), Z, Z, Z, Z, r(34, 105), r(9, 35), r(9, 35), r(9, 280), r(9, 280), r(41, 840)];

impl RkScheme {
    fn from_ratios<const S: usize, const W: usize>(order: usize, a: &[[Ratio; W]; S], b: &[Ratio; S]) -> Self {
        let a: Vec<Vec<f64>> = a.iter().enumerate().map(|(i, row)| row[..i].iter().map(|q| q.to_f64()).collect()).collect();
        let c = a.iter().map(|row| row.iter().sum()).collect();
        Self { order, a, b: b.iter().map(|q| q.to_f64()).collect(), c }
    }

    /// Build from an explicit tableau (strictly lower-triangular `a`, row `i`
    /// holding `i` entries). Nodes are the row sums.
    pub fn from_tableau(order: usize, a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() || a.iter().enumerate().any(|(i, row)| row.len() != i) {
            return Err(Error::TimeStep("tableau must be explicit with one weight per stage".into()));
        }
        let c = a.iter().map(|row| row.iter().sum()).collect();
        Ok(Self { order, a, b, c })
    }

    pub fn rk5() -> Self {
        static S: OnceLock<RkScheme> = OnceLock::new();
        S.get_or_init(|| Self::verified(Self::from_ratios(5, &RK5_A, &RK5_B))).clone()
    }

    pub fn rk7() -> Self {
        static S: OnceLock<RkScheme> = OnceLock::new();
        S.get_or_init(|| Self::verified(Self::from_ratios(7, &RK7_A, &RK7_B))).clone()
    }

    pub fn of_order(order: usize) -> Result<Self> {
        match order {
            5 => Ok(Self::rk5()),
            7 => Ok(Self::rk7()),
            o => Err(Error::Config(format!("Runge-Kutta order must be 5 or 7, got {o}"))),
        }
    }

    fn verified(s: Self) -> Self {
        let worst = s.order_condition_residual(s.order);
        assert!(worst <= 1e-12, "stored RK{} tableau violates its order conditions by {worst:e}", s.order);
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn stages(&self) -> usize {
        self.b.len()
    }
    pub fn a(&self) -> &[Vec<f64>] {
        &self.a
    }
    pub fn b(&self) -> &[f64] {
        &self.b
    }
    pub fn c(&self) -> &[f64] {
        &self.c
    }

    /// Largest `|b . Phi(t) - 1/gamma(t)|` over rooted trees with at most `order` nodes.
    pub fn order_condition_residual(&self, order: usize) -> f64 {
        rooted_trees(order)
            .iter()
            .flatten()
            .map(|t| {
                let phi = self.elementary_weights(t);
                let lhs: f64 = self.b.iter().zip(&phi).map(|(b, p)| b * p).sum();
                (lhs - 1.0 / t.density() as f64).abs()
            })
            .fold(0.0, f64::max)
    }

    fn elementary_weights(&self, t: &Tree) -> Vec<f64> {
        let s = self.stages();
        let mut g = vec![1.0; s];
        for child in &t.0 {
            let inner = self.elementary_weights(child);
            for i in 0..s {
                let ai: f64 = self.a[i].iter().zip(&inner).map(|(a, v)| a * v).sum();
                g[i] *= ai;
            }
        }
        g
    }
}

/// A rooted tree as the sorted list of its root's subtrees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tree(pub Vec<Tree>);

impl Tree {
    pub fn nodes(&self) -> usize {
        1 + self.0.iter().map(Tree::nodes).sum::<usize>()
    }

    /// `gamma(t) = |t| * prod gamma(children)`.
    pub fn density(&self) -> u64 {
        self.nodes() as u64 * self.0.iter().map(Tree::density).product::<u64>()
    }

    fn grown(&self) -> Vec<Tree> {
        let mut out = Vec::new();
        let mut leaf = self.0.clone();
        leaf.push(Tree(Vec::new()));
        leaf.sort();
        out.push(Tree(leaf));
        for (i, child) in self.0.iter().enumerate() {
            for g in child.grown() {
                let mut kids = self.0.clone();
                kids[i] = g;
                kids.sort();
                out.push(Tree(kids));
            }
        }
        out
    }
}

/// Rooted trees grouped by node count `1..=order`.
pub fn rooted_trees(order: usize) -> Vec<Vec<Tree>> {
    let mut levels: Vec<Vec<Tree>> = Vec::new();
    if order == 0 {
        return levels;
    }
    levels.push(vec![Tree(Vec::new())]);
    for _ in 1..order {
        let next: BTreeSet<Tree> = levels.last().unwrap().iter().flat_map(Tree::grown).collect();
        levels.push(next.into_iter().collect());
    }
    levels
}

/// Semi-discrete operator: fills ghosts of `state` and writes the interior
/// tendency into `out`.
pub trait Rhs {
    fn eval(&mut self, state: &mut ConservedField, out: &mut ConservedField) -> Result<()>;
}

impl<F> Rhs for F
where
    F: FnMut(&mut ConservedField, &mut ConservedField) -> Result<()>,
{
    fn eval(&mut self, state: &mut ConservedField, out: &mut ConservedField) -> Result<()> {
        self(state, out)
    }
}

/// Stage storage reused across steps.
pub struct RkWorkspace {
    stage: ConservedField,
    k: Vec<ConservedField>,
}

impl RkWorkspace {
    pub fn new(template: &ConservedField, scheme: &RkScheme) -> Self {
        let zero = ConservedField::zeros(*template.grid(), template.components());
        Self { stage: template.clone(), k: vec![zero; scheme.stages()] }
    }

    fn fits(&self, state: &ConservedField, scheme: &RkScheme) -> bool {
        self.k.len() == scheme.stages()
            && self.stage.grid() == state.grid()
            && self.stage.components() == state.components()
    }
}

/// One explicit step, returning the new field.
pub fn step<R: Rhs + ?Sized>(state: &ConservedField, rhs: &mut R, dt: f64, scheme: &RkScheme) -> Result<ConservedField> {
    let mut out = state.clone();
    let mut ws = RkWorkspace::new(state, scheme);
    step_in_place(&mut out, rhs, dt, scheme, &mut ws)?;
    Ok(out)
}

/// One explicit step updating `state` (interior cells) in place.
pub fn step_in_place<R: Rhs + ?Sized>(
    state: &mut ConservedField,
    rhs: &mut R,
    dt: f64,
    scheme: &RkScheme,
    ws: &mut RkWorkspace,
) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::TimeStep(format!("time step must be positive and finite, got {dt}")));
    }
    if !ws.fits(state, scheme) {
        *ws = RkWorkspace::new(state, scheme);
    }
    let rows: Vec<usize> = state.interior_rows().collect();
    let len = state.grid().n()[0] * state.components();
    for s in 0..scheme.stages() {
        ws.stage.data_mut().copy_from_slice(state.data());
        {
            let stage = ws.stage.data_mut();
            for (j, a) in scheme.a[s].iter().enumerate() {
                if *a == 0.0 {
                    continue;
                }
                let w = dt * a;
                let kj = ws.k[j].data();
                for &o in &rows {
                    for e in o..o + len {
                        stage[e] += w * kj[e];
                    }
                }
            }
        }
        let (stage, k) = (&mut ws.stage, &mut ws.k[s]);
        rhs.eval(stage, k)?;
        let kd = k.data();
        if rows.iter().any(|&o| kd[o..o + len].iter().any(|v| !v.is_finite())) {
            return Err(Error::NonFiniteStage { stage: s });
        }
    }
    let u = state.data_mut();
    for (s, b) in scheme.b.iter().enumerate() {
        if *b == 0.0 {
            continue;
        }
        let w = dt * b;
        let ks = ws.k[s].data();
        for &o in &rows {
            for e in o..o + len {
                u[e] += w * ks[e];
            }
        }
    }
    Ok(())
}

/// Largest directional wave speed over the interior cells.
pub fn max_wavespeeds<S: EquationSystem + ?Sized>(field: &ConservedField, eqsys: &S) -> [f64; 3] {
    let mut lam = [0.0f64; 3];
    field.for_each_interior(|_, _, _, u| {
        for axis in Axis::ALL {
            lam[axis.index()] = lam[axis.index()].max(eqsys.max_wavespeed(u, axis));
        }
    });
    lam
}

/// `dt = cfl / (lx/dx + ly/dy + lz/dz)`.
pub fn compute_dt<S: EquationSystem + ?Sized>(field: &ConservedField, eqsys: &S, cfl: f64) -> Result<f64> {
    if !(cfl > 0.0) {
        return Err(Error::TimeStep(format!("CFL number must be positive, got {cfl}")));
    }
    let lam = max_wavespeeds(field, eqsys);
    let dx = field.grid().dx();
    let rate = lam[0] / dx[0] + lam[1] / dx[1] + lam[2] / dx[2];
    if !rate.is_finite() {
        return Err(Error::TimeStep("non-finite wave speed".into()));
    }
    if rate <= 0.0 {
        return Err(Error::TimeStep("all wave speeds are zero".into()));
    }
    Ok(cfl / rate)
}

/// Shorten `dt` so the step lands exactly on the remaining time.
pub fn clip_dt(dt: f64, remaining: f64) -> f64 {
    if remaining < dt {
        remaining
    } else {
        dt
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid3;
    use crate::physics::{Euler, EulerState, LinearAdvection, GAMMA};

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = rooted_trees(7).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn tableaux_are_consistent() {
        for s in [RkScheme::rk5(), RkScheme::rk7()] {
            for (i, row) in s.a().iter().enumerate() {
                let sum: f64 = row.iter().sum();
                assert!((sum - s.c()[i]).abs() < 1e-14);
            }
            assert!(s.order_condition_residual(s.order()) < 1e-12);
        }
        assert_eq!(RkScheme::rk5().stages(), 6);
        assert_eq!(RkScheme::rk7().stages(), 11);
    }

    #[test]
    fn rk5_is_not_sixth_order() {
        assert!(RkScheme::rk5().order_condition_residual(6) > 1e-6);
    }

    fn scalar_cell(v: f64) -> ConservedField {
        let g = Grid3::new([0.0; 3], [1.0; 3], [1; 3], 0).unwrap();
        let mut f = ConservedField::zeros(g, 1);
        f.set(0, 0, 0, 0, v);
        f
    }

    #[test]
    fn zero_rhs_leaves_state() {
        let u = scalar_cell(1.25);
        let mut rhs = |_: &mut ConservedField, out: &mut ConservedField| {
            out.data_mut().fill(0.0);
            Ok(())
        };
        let v = step(&u, &mut rhs, 0.1, &RkScheme::rk7()).unwrap();
        assert_eq!(v, u);
    }

    #[test]
    fn exponential_decay_one_step() {
        let u = scalar_cell(1.0);
        let mut rhs = |s: &mut ConservedField, out: &mut ConservedField| {
            out.set(0, 0, 0, 0, -s.get(0, 0, 0, 0));
            Ok(())
        };
        let v = step(&u, &mut rhs, 0.1, &RkScheme::rk5()).unwrap();
        assert!((v.get(0, 0, 0, 0) - (-0.1f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn non_finite_stage_aborts() {
        let u = scalar_cell(1.0);
        let mut rhs = |_: &mut ConservedField, out: &mut ConservedField| {
            out.set(0, 0, 0, 0, f64::NAN);
            Ok(())
        };
        assert_eq!(step(&u, &mut rhs, 0.1, &RkScheme::rk5()).unwrap_err(), Error::NonFiniteStage { stage: 0 });
    }

    #[test]
    fn cfl_time_steps() {
        let g = Grid3::new([-2.0; 3], [2.0; 3], [10; 3], 5).unwrap();
        let f = ConservedField::zeros(g, 1);
        let dt = compute_dt(&f, &LinearAdvection::default(), 0.5).unwrap();
        assert!((dt - 0.5 / (3.0 / 0.4)).abs() < 1e-15);

        let g = Grid3::new([0.0; 3], [0.6; 3], [10; 3], 0).unwrap();
        let mut f = ConservedField::zeros(g, 5);
        let rest = EulerState { rho: 1.0, vel: [0.0; 3], p: 1.0 }.to_conserved(GAMMA);
        for k in 0..10 {
            for j in 0..10 {
                for i in 0..10 {
                    f.cell_mut(i, j, k).copy_from_slice(&rest);
                }
            }
        }
        let dt = compute_dt(&f, &Euler::default(), 0.5).unwrap();
        let expect = 0.5 * 0.06 / (3.0 * 1.4f64.sqrt());
        assert!((dt - expect).abs() < 1e-15);
        assert_eq!(clip_dt(0.05, 0.01), 0.01);
        assert_eq!(clip_dt(dt, 1.0), dt);
    }

    #[test]
    fn no_dynamics_is_an_error() {
        let g = Grid3::new([0.0; 3], [1.0; 3], [2; 3], 0).unwrap();
        let f = ConservedField::zeros(g, 1);
        assert!(compute_dt(&f, &LinearAdvection { velocity: [0.0; 3] }, 0.5).is_err());
    }
}
