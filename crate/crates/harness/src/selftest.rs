//! Fast invariant checks run by `fvweno selftest`.

use fvweno::conversion::{ConversionOrder, ConversionStencil, Sense};
use fvweno::physics::{hllc_flux, lax_friedrichs_flux, MAX_COMPONENTS};
use fvweno::weno::{reconstruct_traces, WenoOrder};
use fvweno::timeint::{step_in_place, RkWorkspace};
use fvweno::{
    Axis, Burgers, ConservedField, EquationSystem, Euler, EulerState, FaceArray, Grid3, LinearAdvection, MethodKind,
    RkScheme, GAMMA,
};

use crate::problems::ProblemKind;
use crate::run::{simulate, RunSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, tol: f64) -> Check {
    Check { name, passed: worst <= tol, detail: format!("worst {worst:.3e} (limit {tol:.0e})") }
}

fn check_rate(name: &'static str, rate: f64, min: f64) -> Check {
    Check { name, passed: rate >= min, detail: format!("observed {rate:.3} (need >= {min})") }
}

/// Exact average of `x^a` over `[c - h/2, c + h/2]`.
pub fn monomial_average(c: f64, h: f64, a: i32) -> f64 {
    ((c + 0.5 * h).powi(a + 1) - (c - 0.5 * h).powi(a + 1)) / ((a + 1) as f64 * h)
}

/// Largest conversion error over tangential monomials `y^a z^b`, `a + b <= 5`.
pub fn conversion_monomial_error(order: ConversionOrder) -> f64 {
    let (n, h, halo) = (4usize, 0.25, 2usize);
    let mut worst = 0.0f64;
    for a in 0..=5 {
        for b in 0..=5 - a {
            let mut avg = FaceArray::with_shape(Axis::X, 1, 1, [n, n], halo);
            let mut pt = avg.clone();
            for t2 in -(halo as isize)..(n + halo) as isize {
                for t1 in -(halo as isize)..(n + halo) as isize {
                    let (y, z) = ((t1 as f64 + 0.5) * h - 0.5, (t2 as f64 + 0.5) * h - 0.5);
                    avg.set(0, 0, t1, t2, monomial_average(y, h, a) * monomial_average(z, h, b));
                    pt.set(0, 0, t1, t2, y.powi(a) * z.powi(b));
                }
            }
            let to_pt = ConversionStencil::new(order, Sense::AverageToPoint).apply(&avg).unwrap();
            let to_avg = ConversionStencil::new(order, Sense::PointToAverage).apply(&pt).unwrap();
            for t2 in 0..n as isize {
                for t1 in 0..n as isize {
                    worst = worst.max((to_pt.get(0, 0, t1, t2) - pt.get(0, 0, t1, t2)).abs());
                    worst = worst.max((to_avg.get(0, 0, t1, t2) - avg.get(0, 0, t1, t2)).abs());
                }
            }
        }
    }
    worst
}

/// Fixed admissible Euler states spanning slow, fast and supersonic flow.
pub fn sample_euler_states() -> Vec<[f64; 5]> {
    let mut v = Vec::new();
    for (i, rho) in [0.125, 1.0, 3.7].into_iter().enumerate() {
        for (j, p) in [0.1, 1.0, 9.0].into_iter().enumerate() {
            let s = (i * 3 + j) as f64;
            let vel = [(0.7 * s).sin() * 2.0, (1.3 * s).cos() - 0.2, 0.5 * (0.4 * s).sin()];
            v.push(EulerState { rho, vel, p }.to_conserved(GAMMA));
        }
    }
    v
}

pub fn euler_eigen_identity_error() -> f64 {
    let e = Euler::default();
    let mut worst = 0.0f64;
    for u in sample_euler_states() {
        for axis in Axis::ALL {
            let es = e.eigensystem(&u, axis).unwrap();
            for r in 0..5 {
                for c in 0..5 {
                    let lr: f64 = (0..5).map(|k| es.left[r][k] * es.right[k][c]).sum();
                    worst = worst.max((lr - if r == c { 1.0 } else { 0.0 }).abs());
                }
            }
        }
    }
    worst
}

/// Largest entry of `R diag(lambda) L` minus a central-difference flux Jacobian.
pub fn euler_jacobian_error() -> f64 {
    let e = Euler::default();
    let mut worst = 0.0f64;
    let flux = |u: &[f64; 5], axis: Axis| {
        let mut f = [0.0; 5];
        e.flux(u, axis, &mut f);
        f
    };
    for u in sample_euler_states() {
        for axis in Axis::ALL {
            let es = e.eigensystem(&u, axis).unwrap();
            for c in 0..5 {
                let h = 1e-6 * u[c].abs().max(1.0);
                let (mut up, mut dn) = (u, u);
                up[c] += h;
                dn[c] -= h;
                let (fp, fm) = (flux(&up, axis), flux(&dn, axis));
                for r in 0..5 {
                    let a: f64 = (0..5).map(|k| es.right[r][k] * es.values[k] * es.left[k][c]).sum();
                    worst = worst.max((a - (fp[r] - fm[r]) / (2.0 * h)).abs());
                }
            }
        }
    }
    worst
}

pub fn flux_consistency_error() -> f64 {
    let mut worst = 0.0f64;
    let mut f = [0.0; MAX_COMPONENTS];
    let mut g = [0.0; MAX_COMPONENTS];
    let e = Euler::default();
    for u in sample_euler_states() {
        for axis in Axis::ALL {
            e.flux(&u, axis, &mut g);
            for use_hllc in [false, true] {
                if use_hllc {
                    hllc_flux(&e, &u, &u, axis, &mut f).unwrap();
                } else {
                    lax_friedrichs_flux(&e, &u, &u, axis, 3.0, &mut f).unwrap();
                }
                for c in 0..5 {
                    worst = worst.max((f[c] - g[c]).abs() / (1.0 + g[c].abs()));
                }
            }
        }
    }
    for u in [-1.3, 0.0, 0.4, 2.0] {
        for axis in Axis::ALL {
            for sys in [&Burgers as &dyn EquationSystem, &LinearAdvection::default()] {
                sys.flux(&[u], axis, &mut g[..1]);
                lax_friedrichs_flux(sys, &[u], &[u], axis, 2.0, &mut f[..1]).unwrap();
                worst = worst.max((f[0] - g[0]).abs());
            }
        }
    }
    worst
}

/// Observed order of conversion on `sin(y) cos(z)` between face spacings
/// `1/n` and `1/(2n)`, worst of the two directions.
pub fn conversion_refinement_rate(order: ConversionOrder, n: usize) -> f64 {
    let error = |n: usize, sense: Sense| {
        let (h, halo) = (1.0 / n as f64, ConversionStencil::REACH);
        let s = (0.5 * h).sin() / (0.5 * h);
        let mut point = FaceArray::with_shape(Axis::X, 1, 1, [n, n], halo);
        let mut average = point.clone();
        for t2 in -(halo as isize)..(n + halo) as isize {
            for t1 in -(halo as isize)..(n + halo) as isize {
                let (y, z) = (0.3 + (t1 as f64 + 0.5) * h, 0.3 + (t2 as f64 + 0.5) * h);
                point.set(0, 0, t1, t2, y.sin() * z.cos());
                average.set(0, 0, t1, t2, y.sin() * z.cos() * s * s);
            }
        }
        let (input, exact) = match sense {
            Sense::AverageToPoint => (&average, &point),
            Sense::PointToAverage => (&point, &average),
        };
        let out = ConversionStencil::new(order, sense).apply(input).unwrap();
        let mut worst = 0.0f64;
        for t2 in 0..n as isize {
            for t1 in 0..n as isize {
                worst = worst.max((out.get(0, 0, t1, t2) - exact.get(0, 0, t1, t2)).abs());
            }
        }
        worst
    };
    [Sense::AverageToPoint, Sense::PointToAverage]
        .into_iter()
        .map(|sense| (error(n, sense) / error(2 * n, sense)).log2())
        .fold(f64::INFINITY, f64::min)
}

/// Observed order of `scheme` on `u' = -u^3`, `u(0) = 1`, at `t = 1`
/// (exact `1/sqrt(1 + 2t)`), from `steps` and `2 steps` uniform steps.
pub fn rk_observed_order(scheme: &RkScheme, steps: usize) -> f64 {
    let error = |steps: usize| {
        let grid = Grid3::new([0.0; 3], [1.0; 3], [1; 3], 0).expect("unit cell");
        let mut u = ConservedField::zeros(grid, 1);
        u.set(0, 0, 0, 0, 1.0);
        let mut rhs = |s: &mut ConservedField, out: &mut ConservedField| {
            let v = s.get(0, 0, 0, 0);
            out.set(0, 0, 0, 0, -v * v * v);
            Ok(())
        };
        let mut ws = RkWorkspace::new(&u, scheme);
        for _ in 0..steps {
            step_in_place(&mut u, &mut rhs, 1.0 / steps as f64, scheme, &mut ws).expect("smooth ODE");
        }
        (u.get(0, 0, 0, 0) - 1.0 / 3.0f64.sqrt()).abs()
    };
    (error(steps) / error(2 * steps)).log2()
}

/// Trace error on exact averages of polynomials each candidate stencil
/// reproduces (degree `< (order + 1) / 2`), at unit scale.
pub fn weno_reproduction_error() -> f64 {
    let mut worst = 0.0f64;
    for order in [WenoOrder::Five, WenoOrder::Seven] {
        let w = order.as_int();
        let r = order.half_width() as i32;
        for deg in 0..=r {
            for shift in [-0.7, 0.0, 1.9] {
                let q = |x: f64| (x + shift).powi(deg);
                let avg = |c: f64| monomial_average(c + shift, 1.0, deg);
                let window: Vec<f64> = (0..w as i32).map(|i| avg((i - r) as f64)).collect();
                let t = reconstruct_traces(&window, order).unwrap();
                worst = worst.max((t.right_face - q(0.5)).abs()).max((t.left_face - q(-0.5)).abs());
            }
        }
    }
    worst
}

/// Relative drift of the integral over a few periodic Burgers steps.
pub fn conservation_drift(n: usize, steps: usize) -> crate::Result<f64> {
    let mut worst = 0.0f64;
    for method in [MethodKind::Classical, MethodKind::modified()] {
        let mut spec = RunSpec::new(ProblemKind::Burgers3d, method, WenoOrder::Five, [n; 3]);
        spec.max_steps = steps;
        let initial = spec.initial_field()?.integral(0);
        spec.t_final = 1.0;
        let mut solver = spec.solver()?;
        let mut field = spec.initial_field()?;
        let mut ws = fvweno::timeint::RkWorkspace::new(&field, &spec.rk);
        for _ in 0..steps {
            let dt = fvweno::compute_dt(&field, solver.eqsys(), spec.cfl)?;
            fvweno::timeint::step_in_place(&mut field, &mut solver, dt, &spec.rk, &mut ws)?;
        }
        worst = worst.max(((field.integral(0) - initial) / initial).abs());
    }
    Ok(worst)
}

/// Whether a short spherical Riemann run is exactly x/y symmetric.
pub fn spherical_symmetry(n: [usize; 3], t_final: f64, weno: WenoOrder) -> crate::Result<bool> {
    let mut spec = RunSpec::new(ProblemKind::SphericalRiemann, MethodKind::modified(), weno, n);
    spec.t_final = t_final;
    let out = simulate(&spec, |_| {})?;
    let swapped = out.field.transposed_xy(Some((1, 2)))?;
    Ok(swapped.data() == out.field.data())
}

pub fn run_all() -> Vec<Check> {
    let mut out = vec![
        check("conversion order 6 monomials (degree <= 5)", conversion_monomial_error(ConversionOrder::Six), 1e-12),
        check_rate("conversion order 6 rate on sin(y)cos(z)", conversion_refinement_rate(ConversionOrder::Six, 16), 5.7),
        check_rate("conversion order 4 rate on sin(y)cos(z)", conversion_refinement_rate(ConversionOrder::Four, 16), 3.7),
        check("RK5 order conditions", RkScheme::rk5().order_condition_residual(5), 1e-12),
        check("RK7 order conditions", RkScheme::rk7().order_condition_residual(7), 1e-12),
        check_rate("RK5 observed order on u' = -u^3", rk_observed_order(&RkScheme::rk5(), 32), 4.8),
        check_rate("RK7 observed order on u' = -u^3", rk_observed_order(&RkScheme::rk7(), 4), 6.7),
        check("Euler eigensystem L.R = I", euler_eigen_identity_error(), 1e-12),
        check("Euler eigensystem reproduces the flux Jacobian", euler_jacobian_error(), 1e-7),
        check("numerical flux consistency", flux_consistency_error(), 1e-14),
        check("WENO-Z polynomial reproduction", weno_reproduction_error(), 1e-11),
    ];
    out.push(match conservation_drift(12, 5) {
        Ok(d) => check("periodic Burgers conservation", d, 1e-12),
        Err(e) => Check { name: "periodic Burgers conservation", passed: false, detail: e.to_string() },
    });
    out.push(match spherical_symmetry([12, 12, 8], 0.05, WenoOrder::Five) {
        Ok(s) => Check { name: "spherical Riemann x/y symmetry", passed: s, detail: format!("bitwise equal: {s}") },
        Err(e) => Check { name: "spherical Riemann x/y symmetry", passed: false, detail: e.to_string() },
    });
    out
}
