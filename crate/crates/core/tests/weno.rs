use fvweno::weno::{nonlinear_weights, reconstruct_line_characteristic, reconstruct_traces, smoothness_indicators, WenoOrder};
use fvweno::{Axis, Burgers, Euler, EulerState, LinearAdvection, GAMMA};
use proptest::prelude::*;
use std::f64::consts::PI;

fn mono_avg(c: f64, a: usize) -> f64 {
    let a = a as i32;
    ((c + 0.5).powi(a + 1) - (c - 0.5).powi(a + 1)) / (a + 1) as f64
}

/// Solve a small dense system by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, p);
        b.swap(col, p);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Smoothness indicators from their definition: the substencil polynomial
/// matching `r` cell averages, with `sum_l int (d^l p / dx^l)^2` over the
/// target cell (unit spacing, target cell centered at 0).
fn indicator_oracle(window: &[f64]) -> Vec<f64> {
    let r = (window.len() + 1) / 2;
    let target = r - 1;
    (0..r)
        .map(|k| {
            let cells: Vec<f64> = (k..k + r).map(|i| i as f64 - target as f64).collect();
            let a = cells.iter().map(|&c| (0..r).map(|j| mono_avg(c, j)).collect()).collect();
            let mut coef = solve(a, window[k..k + r].to_vec());
            let mut beta = 0.0;
            for _ in 1..r {
                coef = coef.iter().enumerate().skip(1).map(|(j, c)| j as f64 * c).collect();
                let mut sq = vec![0.0; 2 * coef.len()];
                for (i, a) in coef.iter().enumerate() {
                    for (j, b) in coef.iter().enumerate() {
                        sq[i + j] += a * b;
                    }
                }
                beta += sq.iter().enumerate().map(|(p, c)| c * mono_avg(0.0, p)).sum::<f64>();
            }
            beta
        })
        .collect()
}

fn traces(order: WenoOrder, w: &[f64]) -> (f64, f64) {
    let t = reconstruct_traces(w, order).unwrap();
    (t.right_face, t.left_face)
}

#[test]
fn examples() {
    for order in [WenoOrder::Five, WenoOrder::Seven] {
        let n = order.as_int();
        let (r, l) = traces(order, &vec![-1.25; n]);
        assert!((r + 1.25).abs() <= 1e-15 && (l + 1.25).abs() <= 1e-15);
        let lin: Vec<f64> = (0..n).map(|i| i as f64 - (n / 2) as f64).collect();
        let (r, l) = traces(order, &lin);
        assert!((r - 0.5).abs() <= 1e-12 && (l + 0.5).abs() <= 1e-12);
    }
    let (r, _) = traces(WenoOrder::Five, &[0.0, 0.0, 0.0, 1.0, 1.0]);
    assert!((-1e-6..=1e-2).contains(&r), "{r}");
    assert!(reconstruct_traces(&[1.0; 6], WenoOrder::Five).is_err());
    assert!(reconstruct_traces(&[1.0, 2.0, f64::INFINITY, 1.0, 0.0, 1.0, 1.0], WenoOrder::Seven).is_err());
}

#[test]
fn ideal_weights_are_a_partition_of_unity() {
    assert_eq!(WenoOrder::Five.ideal_weights(), &[0.1, 0.6, 0.3]);
    let d7 = WenoOrder::Seven.ideal_weights();
    for (d, e) in d7.iter().zip([1.0, 12.0, 18.0, 4.0]) {
        assert!((d - e / 35.0).abs() < 1e-17);
    }
    for o in [WenoOrder::Five, WenoOrder::Seven] {
        assert!((o.ideal_weights().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn weights_approach_ideal_on_smooth_data() {
    // fine sampling of a smooth function drives the Z weights to the ideal ones
    for order in [WenoOrder::Five, WenoOrder::Seven] {
        let h = 1e-2;
        let w: Vec<f64> = (0..order.as_int()).map(|i| (0.3 + i as f64 * h).sin()).collect();
        for (a, d) in nonlinear_weights(&w).unwrap().iter().zip(order.ideal_weights()) {
            assert!((a - d).abs() < 1e-6, "{order:?}: {a} vs {d}");
        }
    }
}

/// Trace error of the exact cell averages of `sin(x + phase)` at spacing `h`.
fn smooth_trace_error(order: WenoOrder, h: f64) -> f64 {
    let n = order.as_int();
    let s = (0.5 * h).sin() / (0.5 * h);
    let mut worst = 0.0f64;
    for phase in [0.0, 0.7, 1.9, 2.6] {
        let w: Vec<f64> = (0..n).map(|i| (phase + (i as f64 - (n / 2) as f64) * h).sin() * s).collect();
        let (r, l) = traces(order, &w);
        worst = worst.max((r - (phase + 0.5 * h).sin()).abs()).max((l - (phase - 0.5 * h).sin()).abs());
    }
    worst
}

#[test]
fn smooth_data_converges_at_design_order() {
    for (order, min_rate) in [(WenoOrder::Five, 4.7), (WenoOrder::Seven, 6.5)] {
        let (e1, e2) = (smooth_trace_error(order, 0.2), smooth_trace_error(order, 0.1));
        let rate = (e1 / e2).log2();
        assert!(rate >= min_rate, "{order:?}: rate {rate}");
    }
}

#[test]
fn uniform_euler_line_is_preserved() {
    let e = Euler::default();
    let u = EulerState { rho: 1.3, vel: [0.2, -0.4, 0.9], p: 2.1 }.to_conserved(GAMMA);
    for order in [WenoOrder::Five, WenoOrder::Seven] {
        for axis in Axis::ALL {
            let pad = order.reach();
            let line: Vec<f64> = (0..6 + 2 * pad).flat_map(|_| u).collect();
            let t = reconstruct_line_characteristic(&line, pad, &e, axis, order).unwrap();
            for side in [&t.minus, &t.plus] {
                for f in 0..=6 {
                    for c in 0..5 {
                        let v = side.get(c, f, 0, 0);
                        assert!((v - u[c]).abs() <= 1e-14 * (1.0 + u[c].abs()), "{axis:?} face {f}");
                    }
                }
            }
        }
    }
}

#[test]
fn scalar_line_matches_componentwise() {
    let vals: Vec<f64> = (0..18).map(|i| (0.4 * i as f64).cos() + if i > 9 { 1.0 } else { 0.0 }).collect();
    for order in [WenoOrder::Five, WenoOrder::Seven] {
        let pad = order.reach();
        let n = vals.len() - 2 * pad;
        let r = order.half_width();
        for sys in [&Burgers as &dyn fvweno::EquationSystem, &LinearAdvection::default()] {
            let t = reconstruct_line_characteristic(&vals, pad, sys, Axis::Y, order).unwrap();
            for f in 0..=n {
                // face f sits between cells f - 1 and f (line index f + pad - 1 and f + pad)
                let left = f + pad - 1;
                let (minus, _) = traces(order, &vals[left - r..=left + r]);
                let (_, plus) = traces(order, &vals[left + 1 - r..=left + 1 + r]);
                assert_eq!(t.minus.get(0, f, 0, 0), minus);
                assert_eq!(t.plus.get(0, f, 0, 0), plus);
            }
        }
    }
}

/// Max trace error over all faces for the density wave sampled along x.
fn density_wave_line_error(n: usize, order: WenoOrder) -> f64 {
    let h = 6.0 / n as f64;
    let pad = order.reach();
    let k = PI / 3.0;
    let s = (0.5 * k * h).sin() / (0.5 * k * h);
    let state = |rho: f64| EulerState { rho, vel: [1.0, 1.0, 1.0], p: 1.0 }.to_conserved(GAMMA);
    let line: Vec<f64> = (0..n + 2 * pad)
        .flat_map(|i| {
            let x = -3.0 + (i as f64 - pad as f64 + 0.5) * h;
            state(1.0 + 0.2 * (k * x).sin() * s)
        })
        .collect();
    let t = reconstruct_line_characteristic(&line, pad, &Euler::default(), Axis::X, order).unwrap();
    let mut worst = 0.0f64;
    for f in 0..=n {
        let exact = state(1.0 + 0.2 * (k * (-3.0 + f as f64 * h)).sin());
        for c in 0..5 {
            worst = worst.max((t.minus.get(c, f, 0, 0) - exact[c]).abs());
            worst = worst.max((t.plus.get(c, f, 0, 0) - exact[c]).abs());
        }
    }
    worst
}

#[test]
fn characteristic_traces_converge_on_density_wave() {
    let rate = (density_wave_line_error(20, WenoOrder::Five) / density_wave_line_error(40, WenoOrder::Five)).log2();
    assert!(rate >= 4.7, "Z5 characteristic rate {rate}");
}

#[test]
fn non_physical_averaging_state_names_the_face() {
    let e = Euler::default();
    let good = EulerState { rho: 1.0, vel: [0.0; 3], p: 1.0 }.to_conserved(GAMMA);
    let mut line: Vec<f64> = (0..12).flat_map(|_| good).collect();
    // padded cell 5 is interior cell 2; face 2 averages it with a good cell to rho = 0
    line[25] = -1.0;
    let err = reconstruct_line_characteristic(&line, 3, &e, Axis::Z, WenoOrder::Five).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("face 2"), "{msg}");
}

proptest! {
    #[test]
    fn indicators_match_definition(w in prop::collection::vec(-2.0f64..2.0, 7), seven in any::<bool>()) {
        let w = if seven { &w[..] } else { &w[..5] };
        let got = smoothness_indicators(w).unwrap();
        let want = indicator_oracle(w);
        for (g, e) in got.iter().zip(&want) {
            prop_assert!((g - e).abs() <= 1e-11 * (1.0 + e.abs()), "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn nonlinear_weights_are_normalized(w in prop::collection::vec(-1e3f64..1e3, 7), seven in any::<bool>()) {
        let w = if seven { &w[..] } else { &w[..5] };
        let omega = nonlinear_weights(w).unwrap();
        prop_assert!(omega.iter().all(|o| *o > 0.0));
        prop_assert!((omega.iter().sum::<f64>() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn reproduces_low_degree_polynomials(
        coef in prop::collection::vec(-1.0f64..1.0, 4),
        shift in -1.0f64..1.0,
        seven in any::<bool>(),
    ) {
        // degree <= r - 1: every candidate stencil is exact, whatever the weights
        let order = if seven { WenoOrder::Seven } else { WenoOrder::Five };
        let r = order.half_width();
        let deg = r.min(coef.len() - 1);
        let q = |x: f64| (0..=deg).map(|j| coef[j] * (x + shift).powi(j as i32)).sum::<f64>();
        let avg = |c: f64| (0..=deg).map(|j| coef[j] * mono_avg(c + shift, j)).sum::<f64>();
        let w: Vec<f64> = (0..order.as_int()).map(|i| avg(i as f64 - r as f64)).collect();
        let (right, left) = traces(order, &w);
        prop_assert!((right - q(0.5)).abs() <= 1e-11 && (left - q(-0.5)).abs() <= 1e-11);
    }

    #[test]
    fn traces_scale_with_data(w in prop::collection::vec(-1.0f64..1.0, 7), s in 0.1f64..10.0, seven in any::<bool>()) {
        let (order, w) = if seven { (WenoOrder::Seven, &w[..]) } else { (WenoOrder::Five, &w[..5]) };
        let scaled: Vec<f64> = w.iter().map(|v| v * s).collect();
        let (r0, l0) = traces(order, w);
        let (r1, l1) = traces(order, &scaled);
        prop_assert!((r1 - s * r0).abs() <= 1e-10 * s.max(1.0));
        prop_assert!((l1 - s * l0).abs() <= 1e-10 * s.max(1.0));
    }

    #[test]
    fn traces_lie_near_the_window_range(w in prop::collection::vec(-1.0f64..1.0, 5)) {
        // essentially non-oscillatory: no trace far outside the local data range
        let (lo, hi) = w.iter().fold((f64::MAX, f64::MIN), |(a, b), v| (a.min(*v), b.max(*v)));
        let (r, l) = traces(WenoOrder::Five, &w);
        let span = hi - lo;
        prop_assert!(r >= lo - span && r <= hi + span && l >= lo - span && l <= hi + span);
    }
}
