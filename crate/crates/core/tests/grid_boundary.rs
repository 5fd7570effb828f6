use fvweno::{
    fill_from_function, fill_ghosts, Axis, BoundaryKind, BoundarySpec, Burgers, CellAveraging, ConservedField, Error, Euler,
    EulerState, Grid3, LinearAdvection, Side, GAMMA,
};
use proptest::prelude::*;

/// Exact average of x^p over [a, b].
fn mono_avg(p: i32, a: f64, b: f64) -> f64 {
    (b.powi(p + 1) - a.powi(p + 1)) / ((p + 1) as f64 * (b - a))
}

fn all_kinds() -> [BoundaryKind; 4] {
    [BoundaryKind::Periodic, BoundaryKind::ReflectiveWall, BoundaryKind::Symmetry, BoundaryKind::Outflow]
}

fn euler_field(n: [usize; 3], g: usize, f: impl Fn([f64; 3]) -> EulerState) -> ConservedField {
    let grid = Grid3::new([0.0; 3], [1.0; 3], n, g).unwrap();
    fill_from_function(grid, 5, CellAveraging::PointSample, |x, out| out.copy_from_slice(&f(x).to_conserved(GAMMA))).unwrap()
}

#[test]
fn gauss_average_is_exact_through_degree_nine() {
    let grid = Grid3::new([-0.3, 0.1, 0.5], [0.9, 1.3, 1.1], [3, 4, 2], 0).unwrap();
    for (a, b, c) in [(0, 0, 0), (9, 0, 0), (0, 9, 0), (0, 0, 9), (3, 5, 7), (9, 9, 9), (2, 8, 4)] {
        let f = fill_from_function(grid, 1, CellAveraging::Gauss9, |x, out| {
            out[0] = x[0].powi(a) * x[1].powi(b) * x[2].powi(c);
        })
        .unwrap();
        let dx = grid.dx();
        f.for_each_interior(|i, j, k, u| {
            let lo = [grid.face_coord(0, i), grid.face_coord(1, j), grid.face_coord(2, k)];
            let want = mono_avg(a, lo[0], lo[0] + dx[0]) * mono_avg(b, lo[1], lo[1] + dx[1]) * mono_avg(c, lo[2], lo[2] + dx[2]);
            assert!((u[0] - want).abs() <= 1e-13 * want.abs().max(1e-300), "{a} {b} {c}: {} vs {want}", u[0]);
        });
    }
}

#[test]
fn averaging_examples() {
    let h = 0.2;
    let centered = Grid3::new([-h / 2.0; 3], [h / 2.0; 3], [1; 3], 0).unwrap();
    let sq = fill_from_function(centered, 1, CellAveraging::Gauss9, |x, out| out[0] = x[0] * x[0]).unwrap();
    assert!((sq.get(0, 0, 0, 0) - h * h / 12.0).abs() <= 1e-15);
    let pt = fill_from_function(centered, 1, CellAveraging::PointSample, |x, out| out[0] = x[0] * x[0]).unwrap();
    assert_eq!(pt.get(0, 0, 0, 0), 0.0);

    let corner = Grid3::new([0.0; 3], [h; 3], [1; 3], 0).unwrap();
    let n9 = fill_from_function(corner, 1, CellAveraging::Gauss9, |x, out| out[0] = x[0].powi(9)).unwrap();
    let want = h.powi(9) / 10.0;
    assert!((n9.get(0, 0, 0, 0) - want).abs() <= 1e-13 * want);
    let n10 = fill_from_function(corner, 1, CellAveraging::Gauss9, |x, out| out[0] = x[0].powi(10)).unwrap();
    assert!((n10.get(0, 0, 0, 0) - h.powi(10) / 11.0).abs() > 1e-6 * h.powi(10));
}

#[test]
fn grid_validation() {
    assert!(matches!(Grid3::new([0.0; 3], [1.0; 3], [4, 0, 4], 2), Err(Error::InvalidGrid(_))));
    assert!(matches!(Grid3::new([0.0; 3], [1.0, 0.0, 1.0], [4; 3], 2), Err(Error::InvalidGrid(_))));
    assert!(matches!(Grid3::new([f64::NAN, 0.0, 0.0], [1.0; 3], [4; 3], 2), Err(Error::InvalidGrid(_))));
    let g = Grid3::new([-2.0; 3], [2.0; 3], [10; 3], 5).unwrap();
    assert_eq!(g.padded(), [20; 3]);
    assert!((g.dx()[1] - 0.4).abs() <= 1e-15);
    assert!((g.cell_center(0, 0, 0)[0] + 1.8).abs() <= 1e-15);
}

#[test]
fn non_finite_initial_data_names_the_cell() {
    let g = Grid3::new([0.0; 3], [1.0; 3], [4; 3], 0).unwrap();
    let err = fill_from_function(g, 2, CellAveraging::Gauss9, |x, out| {
        out[0] = 1.0;
        out[1] = if x[0] > 0.75 && x[1] < 0.25 && x[2] < 0.25 { f64::NAN } else { 0.0 };
    })
    .unwrap_err();
    assert_eq!(err, Error::NonFiniteCell { component: 1, i: 3, j: 0, k: 0 });
}

#[test]
fn storage_layout_is_dense_and_component_fastest() {
    let grid = Grid3::new([0.0; 3], [1.0; 3], [3, 2, 4], 2).unwrap();
    let f = ConservedField::zeros(grid, 5);
    let p = grid.padded();
    assert_eq!(f.data().len(), p[0] * p[1] * p[2] * 5);
    let mut seen = vec![false; p[0] * p[1] * p[2]];
    for k in -2..6 {
        for j in -2..4 {
            for i in -2..5 {
                let o = f.offset(i, j, k);
                assert_eq!(o % 5, 0);
                assert!(!seen[o / 5]);
                seen[o / 5] = true;
                let c = grid.cell_center(i, j, k);
                assert_eq!(grid.locate(c), Some((i, j, k)));
            }
        }
    }
    assert!(seen.iter().all(|s| *s));
    assert_eq!(f.offset(1, 0, 0) - f.offset(0, 0, 0), 5);
    assert_eq!(grid.locate([10.0, 0.5, 0.5]), None);
}

#[test]
fn periodic_ghost_example() {
    let grid = Grid3::new([0.0; 3], [1.0; 3], [4, 1, 1], 2).unwrap();
    let mut f = ConservedField::zeros(grid, 1);
    for i in 0..4 {
        f.set(0, i, 0, 0, i as f64);
    }
    fill_ghosts(&mut f, &BoundarySpec::periodic(), &Burgers).unwrap();
    let got: Vec<f64> = (-2..6).map(|i| f.get(0, i, 0, 0)).collect();
    assert_eq!(got, vec![2.0, 3.0, 0.0, 1.0, 2.0, 3.0, 0.0, 1.0]);
}

#[test]
fn walls_mirror_and_negate_normal_momentum() {
    let mut f = euler_field([6, 5, 4], 3, |x| EulerState { rho: 1.0 + x[0], vel: [0.3, -0.2, 0.1], p: 1.0 + x[1] });
    let interior = f.clone();
    let spec = BoundarySpec::uniform(BoundaryKind::ReflectiveWall);
    fill_ghosts(&mut f, &spec, &Euler::default()).unwrap();
    for l in 1..=3isize {
        let ghost = f.cell(-l, 2, 1);
        let src = interior.cell(l - 1, 2, 1);
        assert_eq!(ghost[0], src[0]);
        assert_eq!(ghost[1], -src[1]);
        assert_eq!(&ghost[2..], &src[2..]);
        let ghost = f.cell(3, 4 + l, 1);
        let src = interior.cell(3, 5 - l, 1);
        assert_eq!(ghost[2], -src[2]);
        assert_eq!(ghost[1], src[1]);
    }
    // a scalar has no momentum to flip
    let mut s = fill_from_function(*interior.grid(), 1, CellAveraging::PointSample, |x, o| o[0] = x[0]).unwrap();
    fill_ghosts(&mut s, &spec, &LinearAdvection::default()).unwrap();
    assert_eq!(s.get(0, -1, 0, 0), s.get(0, 0, 0, 0));
}

#[test]
fn boundary_spec_errors() {
    let half = BoundarySpec::periodic().with(Axis::Y, Side::High, BoundaryKind::Outflow);
    assert!(matches!(half.validate(), Err(Error::Boundary(_))));
    assert!(matches!(BoundarySpec::new().validate(), Err(Error::Boundary(_))));
    let grid = Grid3::new([0.0; 3], [1.0; 3], [2, 4, 4], 3).unwrap();
    let mut f = ConservedField::zeros(grid, 1);
    let wall = BoundarySpec::uniform(BoundaryKind::ReflectiveWall);
    assert!(matches!(fill_ghosts(&mut f, &wall, &Burgers), Err(Error::Boundary(_))));
    assert_eq!("wall".parse::<BoundaryKind>().unwrap(), BoundaryKind::ReflectiveWall);
    assert!("sticky".parse::<BoundaryKind>().is_err());
}

fn ghost_values(f: &ConservedField) -> Vec<f64> {
    f.data().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constant_states_survive_every_boundary(
        rho in 0.1f64..3.0, p in 0.1f64..3.0,
        kinds in prop::array::uniform3(0usize..4),
    ) {
        // at rest, so mirrors leave the state unchanged too
        let state = EulerState { rho, vel: [0.0; 3], p }.to_conserved(GAMMA);
        let mut f = euler_field([5, 4, 6], 3, |_| EulerState { rho, vel: [0.0; 3], p });
        let mut spec = BoundarySpec::new();
        for (d, k) in kinds.iter().enumerate() {
            for side in [Side::Low, Side::High] {
                spec = spec.with(Axis::from_index(d), side, all_kinds()[*k]);
            }
        }
        fill_ghosts(&mut f, &spec, &Euler::default()).unwrap();
        for cell in f.data().chunks(5) {
            prop_assert_eq!(cell, &state[..]);
        }
    }

    #[test]
    fn periodic_fill_is_idempotent(seed in prop::collection::vec(-5.0f64..5.0, 5 * 4 * 3)) {
        let grid = Grid3::new([0.0; 3], [1.0; 3], [5, 4, 3], 3).unwrap();
        let mut f = ConservedField::zeros(grid, 1);
        for (n, v) in seed.iter().enumerate() {
            f.set(0, (n % 5) as isize, ((n / 5) % 4) as isize, (n / 20) as isize, *v);
        }
        fill_ghosts(&mut f, &BoundarySpec::periodic(), &Burgers).unwrap();
        let once = ghost_values(&f);
        fill_ghosts(&mut f, &BoundarySpec::periodic(), &Burgers).unwrap();
        prop_assert_eq!(once, ghost_values(&f));
        // every padded cell equals its wrapped interior cell
        for k in -3..6isize {
            for j in -3..7isize {
                for i in -3..8isize {
                    prop_assert_eq!(f.get(0, i, j, k), f.get(0, i.rem_euclid(5), j.rem_euclid(4), k.rem_euclid(3)));
                }
            }
        }
    }

    #[test]
    fn mirrors_keep_density_and_pressure_positive(
        vals in prop::collection::vec((0.01f64..5.0, -4.0f64..4.0, 0.01f64..5.0), 4 * 4 * 4),
        symmetry in any::<bool>(),
    ) {
        let kind = if symmetry { BoundaryKind::Symmetry } else { BoundaryKind::ReflectiveWall };
        let grid = Grid3::new([0.0; 3], [1.0; 3], [4; 3], 3).unwrap();
        let mut f = ConservedField::zeros(grid, 5);
        for (n, (rho, u, p)) in vals.iter().enumerate() {
            let s = EulerState { rho: *rho, vel: [*u, -u / 2.0, u / 3.0], p: *p };
            f.cell_mut((n % 4) as isize, ((n / 4) % 4) as isize, (n / 16) as isize).copy_from_slice(&s.to_conserved(GAMMA));
        }
        fill_ghosts(&mut f, &BoundarySpec::uniform(kind), &Euler::default()).unwrap();
        for cell in f.data().chunks(5) {
            let s = EulerState::from_conserved(cell, GAMMA);
            prop_assert!(s.rho > 0.0 && s.p > 0.0);
        }
    }
}
