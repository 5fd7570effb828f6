//! One-dimensional WENO-Z reconstruction of orders 5 and 7.
//!
//! All kernels return the value at the *right* face of the middle cell of a
//! window; the value at the left face is obtained by reversing the window.
//! Weights follow the Z form `alpha_k = d_k (1 + (tau / (beta_k + eps))^2)`,
//! with `tau5 = |beta0 - beta2|` and `tau7 = |beta0 + 3 beta1 - 3 beta2 - beta3|`.

use crate::error::{Error, Result};
use crate::grid::{Axis, FaceTraces};
use crate::physics::{EquationSystem, MAX_COMPONENTS};

pub const EPSILON: f64 = 1e-14;
/// Exponent applied to `tau / (beta + eps)`.
pub const Q_POWER: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WenoOrder {
    Five,
    Seven,
}

impl WenoOrder {
    pub fn from_int(order: usize) -> Result<Self> {
        match order {
            5 => Ok(Self::Five),
            7 => Ok(Self::Seven),
            o => Err(Error::Config(format!("WENO order must be 5 or 7, got {o}"))),
        }
    }

    pub fn as_int(self) -> usize {
        match self {
            Self::Five => 5,
            Self::Seven => 7,
        }
    }

    /// Cells on each side of the target cell used by one trace.
    pub fn half_width(self) -> usize {
        match self {
            Self::Five => 2,
            Self::Seven => 3,
        }
    }

    /// Farthest cell offset, relative to a face, touched when reconstructing
    /// both traces of that face (`r` in `g = r + 2`).
    pub fn reach(self) -> usize {
        self.half_width() + 1
    }

    pub fn ideal_weights(self) -> &'static [f64] {
        match self {
            Self::Five => &D5,
            Self::Seven => &D7,
        }
    }
}

const D5: [f64; 3] = [0.1, 0.6, 0.3];
const D7: [f64; 4] = [1.0 / 35.0, 12.0 / 35.0, 18.0 / 35.0, 4.0 / 35.0];

#[inline(always)]
fn z_alpha(d: f64, tau: f64, beta: f64) -> f64 {
    let r = tau / (beta + EPSILON);
    d * (1.0 + r * r)
}

#[inline(always)]
fn betas5(v: &[f64; 5]) -> [f64; 3] {
    const C13: f64 = 13.0 / 12.0;
    let a0 = v[0] - 2.0 * v[1] + v[2];
    let b0 = v[0] - 4.0 * v[1] + 3.0 * v[2];
    let a1 = v[1] - 2.0 * v[2] + v[3];
    let b1 = v[1] - v[3];
    let a2 = v[2] - 2.0 * v[3] + v[4];
    let b2 = 3.0 * v[2] - 4.0 * v[3] + v[4];
    [
        C13 * a0 * a0 + 0.25 * b0 * b0,
        C13 * a1 * a1 + 0.25 * b1 * b1,
        C13 * a2 * a2 + 0.25 * b2 * b2,
    ]
}

#[inline(always)]
fn betas7(v: &[f64; 7]) -> [f64; 4] {
    let [a, b, c, d, e, f, g] = *v;
    const S: f64 = 1.0 / 240.0;
    let beta0 = a * (547.0 * a - 3882.0 * b + 4642.0 * c - 1854.0 * d)
        + b * (7043.0 * b - 17246.0 * c + 7042.0 * d)
        + c * (11003.0 * c - 9402.0 * d)
        + 2107.0 * d * d;
    let beta1 = b * (267.0 * b - 1642.0 * c + 1602.0 * d - 494.0 * e)
        + c * (2843.0 * c - 5966.0 * d + 1922.0 * e)
        + d * (3443.0 * d - 2522.0 * e)
        + 547.0 * e * e;
    let beta2 = c * (547.0 * c - 2522.0 * d + 1922.0 * e - 494.0 * f)
        + d * (3443.0 * d - 5966.0 * e + 1602.0 * f)
        + e * (2843.0 * e - 1642.0 * f)
        + 267.0 * f * f;
    let beta3 = d * (2107.0 * d - 9402.0 * e + 7042.0 * f - 1854.0 * g)
        + e * (11003.0 * e - 17246.0 * f + 4642.0 * g)
        + f * (7043.0 * f - 3882.0 * g)
        + 547.0 * g * g;
    [beta0 * S, beta1 * S, beta2 * S, beta3 * S]
}

/// Smoothness indicators of a window (3 for order 5, 4 for order 7).
pub fn smoothness_indicators(window: &[f64]) -> Result<Vec<f64>> {
    match window.len() {
        5 => Ok(betas5(window.try_into().unwrap()).to_vec()),
        7 => Ok(betas7(window.try_into().unwrap()).to_vec()),
        n => Err(Error::InvalidWindow(format!("window of {n} cells (expected 5 or 7)"))),
    }
}

/// Normalized nonlinear weights for the right-face value of a window.
pub fn nonlinear_weights(window: &[f64]) -> Result<Vec<f64>> {
    let (d, beta, tau): (&[f64], Vec<f64>, f64) = match window.len() {
        5 => {
            let b = betas5(window.try_into().unwrap());
            (&D5, b.to_vec(), (b[0] - b[2]).abs())
        }
        7 => {
            let b = betas7(window.try_into().unwrap());
            (&D7, b.to_vec(), (b[0] + 3.0 * b[1] - 3.0 * b[2] - b[3]).abs())
        }
        n => return Err(Error::InvalidWindow(format!("window of {n} cells (expected 5 or 7)"))),
    };
    let alpha: Vec<f64> = d.iter().zip(&beta).map(|(d, b)| z_alpha(*d, tau, *b)).collect();
    let s: f64 = alpha.iter().sum();
    Ok(alpha.iter().map(|a| a / s).collect())
}

/// WENO-Z5 value at the right face of `v[2]`.
#[inline(always)]
pub fn z5_right(v: &[f64; 5]) -> f64 {
    let beta = betas5(v);
    let tau = (beta[0] - beta[2]).abs();
    let a0 = z_alpha(D5[0], tau, beta[0]);
    let a1 = z_alpha(D5[1], tau, beta[1]);
    let a2 = z_alpha(D5[2], tau, beta[2]);
    // candidate stencils scaled by 6; the factor joins the normalization
    let q0 = 2.0 * v[0] - 7.0 * v[1] + 11.0 * v[2];
    let q1 = -v[1] + 5.0 * v[2] + 2.0 * v[3];
    let q2 = 2.0 * v[2] + 5.0 * v[3] - v[4];
    (a0 * q0 + a1 * q1 + a2 * q2) / (6.0 * (a0 + a1 + a2))
}

/// WENO-Z7 value at the right face of `v[3]`.
#[inline(always)]
pub fn z7_right(v: &[f64; 7]) -> f64 {
    let beta = betas7(v);
    let tau = (beta[0] + 3.0 * beta[1] - 3.0 * beta[2] - beta[3]).abs();
    let a0 = z_alpha(D7[0], tau, beta[0]);
    let a1 = z_alpha(D7[1], tau, beta[1]);
    let a2 = z_alpha(D7[2], tau, beta[2]);
    let a3 = z_alpha(D7[3], tau, beta[3]);
    let q0 = -3.0 * v[0] + 13.0 * v[1] - 23.0 * v[2] + 25.0 * v[3];
    let q1 = v[1] - 5.0 * v[2] + 13.0 * v[3] + 3.0 * v[4];
    let q2 = -v[2] + 7.0 * v[3] + 7.0 * v[4] - v[5];
    let q3 = 3.0 * v[3] + 13.0 * v[4] - 5.0 * v[5] + v[6];
    (a0 * q0 + a1 * q1 + a2 * q2 + a3 * q3) / (12.0 * (a0 + a1 + a2 + a3))
}

/// Both interface values of the middle cell of a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellTraces {
    /// Left trace `U^-` at the cell's right face `i + 1/2`.
    pub right_face: f64,
    /// Right trace `U^+` at the cell's left face `i - 1/2`.
    pub left_face: f64,
}

/// Reconstruct both traces of the middle cell of a `order`-cell window.
pub fn reconstruct_traces(window: &[f64], order: WenoOrder) -> Result<CellTraces> {
    if window.len() != order.as_int() {
        return Err(Error::InvalidWindow(format!(
            "WENO-Z{} needs {} cells, got {}",
            order.as_int(),
            order.as_int(),
            window.len()
        )));
    }
    if let Some(i) = window.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidWindow(format!("cell {i} of the window is not finite")));
    }
    Ok(match order {
        WenoOrder::Five => {
            let v: [f64; 5] = window.try_into().unwrap();
            let mut r = v;
            r.reverse();
            CellTraces { right_face: z5_right(&v), left_face: z5_right(&r) }
        }
        WenoOrder::Seven => {
            let v: [f64; 7] = window.try_into().unwrap();
            let mut r = v;
            r.reverse();
            CellTraces { right_face: z7_right(&v), left_face: z7_right(&r) }
        }
    })
}

/// Faces processed together. Every per-face quantity is stored lane-major so
/// the kernels below compile to packed arithmetic; each lane performs the same
/// operations in the same order as the scalar kernels.
const LANES: usize = 8;
type Lane = [f64; LANES];
type LaneVec = [Lane; MAX_COMPONENTS];
const MAX_WINDOW: usize = 8;

/// Reconstructs the face traces of one pencil of cells in the face-normal
/// frame. Reused across pencils.
pub struct PencilReconstructor {
    order: WenoOrder,
    m: usize,
    characteristic: bool,
    scratch: Box<Scratch>,
}

#[derive(Default)]
struct Scratch {
    window: [LaneVec; MAX_WINDOW],
    proj: [LaneVec; MAX_WINDOW],
    left: [LaneVec; MAX_COMPONENTS],
    right: [LaneVec; MAX_COMPONENTS],
}

impl PencilReconstructor {
    pub fn new<S: EquationSystem + ?Sized>(eqsys: &S, order: WenoOrder) -> Self {
        Self { order, m: eqsys.components(), characteristic: eqsys.has_eigensystem(), scratch: Box::default() }
    }

    /// `cells` holds `n + 2 * pad` states (`m` values each, face-normal frame),
    /// cell `-pad` first. Writes the traces of faces `0..=n` into `minus` and
    /// `plus` (`(n + 1) * m` values each). On eigensystem failure returns the
    /// failing face index and reason.
    pub fn reconstruct<S: EquationSystem + ?Sized>(
        &mut self,
        eqsys: &S,
        cells: &[f64],
        pad: usize,
        n: usize,
        minus: &mut [f64],
        plus: &mut [f64],
    ) -> std::result::Result<(), (usize, String)> {
        let m = self.m;
        let r = self.order.reach();
        let w = 2 * r;
        debug_assert!(pad >= r);
        debug_assert_eq!(cells.len(), (n + 2 * pad) * m);
        let value = |i: isize, c: usize| cells[(i + pad as isize) as usize * m + c];

        let Scratch { window, proj, left, right } = &mut *self.scratch;
        let mut wm = [[0.0; LANES]; MAX_COMPONENTS];
        let mut wp = [[0.0; LANES]; MAX_COMPONENTS];
        let mut avg = [0.0; MAX_COMPONENTS];

        for f0 in (0..=n).step_by(LANES) {
            // trailing lanes repeat the last face
            let face = |l: usize| (f0 + l).min(n) as isize;
            for l in 0..LANES {
                let base = (face(l) + (pad - r) as isize) as usize * m;
                let src = &cells[base..base + w * m];
                for (slot, u) in window[..w].iter_mut().zip(src.chunks_exact(m)) {
                    for (c, v) in u.iter().enumerate() {
                        slot[c][l] = *v;
                    }
                }
            }
            if self.characteristic {
                for l in 0..LANES {
                    let f = face(l);
                    for (c, a) in avg[..m].iter_mut().enumerate() {
                        *a = 0.5 * (value(f - 1, c) + value(f, c));
                    }
                    let es = eqsys.normal_eigensystem(&avg[..m]).map_err(|e| (f as usize, e.to_string()))?;
                    for i in 0..m {
                        for j in 0..m {
                            left[i][j][l] = es.left[i][j];
                            right[i][j][l] = es.right[i][j];
                        }
                    }
                }
                for s in 0..w {
                    for k in 0..m {
                        proj[s][k] = dot_lanes(&left[k], &window[s], m);
                    }
                }
            } else {
                proj[..w].copy_from_slice(&window[..w]);
            }

            let p = &*proj;
            for k in 0..m {
                match self.order {
                    WenoOrder::Five => {
                        wm[k] = lanes(|l| z5_right(&[p[0][k][l], p[1][k][l], p[2][k][l], p[3][k][l], p[4][k][l]]));
                        wp[k] = lanes(|l| z5_right(&[p[5][k][l], p[4][k][l], p[3][k][l], p[2][k][l], p[1][k][l]]));
                    }
                    WenoOrder::Seven => {
                        wm[k] = lanes(|l| {
                            z7_right(&[
                                p[0][k][l], p[1][k][l], p[2][k][l], p[3][k][l], p[4][k][l], p[5][k][l], p[6][k][l],
                            ])
                        });
                        wp[k] = lanes(|l| {
                            z7_right(&[
                                p[7][k][l], p[6][k][l], p[5][k][l], p[4][k][l], p[3][k][l], p[2][k][l], p[1][k][l],
                            ])
                        });
                    }
                }
            }

            let count = LANES.min(n + 1 - f0);
            for c in 0..m {
                let (vm, vp) = if self.characteristic {
                    (dot_lanes(&right[c], &wm, m), dot_lanes(&right[c], &wp, m))
                } else {
                    (wm[c], wp[c])
                };
                for l in 0..count {
                    minus[(f0 + l) * m + c] = vm[l];
                    plus[(f0 + l) * m + c] = vp[l];
                }
            }
        }
        Ok(())
    }
}

#[inline(always)]
fn lanes(f: impl Fn(usize) -> f64) -> Lane {
    let mut out = [0.0; LANES];
    for (l, o) in out.iter_mut().enumerate() {
        *o = f(l);
    }
    out
}

/// Lane-wise [`dot_fn`].
#[inline(always)]
fn dot_lanes(row: &LaneVec, v: &LaneVec, m: usize) -> Lane {
    let mut out = [0.0; LANES];
    if m == MAX_COMPONENTS {
        for (l, o) in out.iter_mut().enumerate() {
            *o = (row[0][l] * v[0][l] + row[1][l] * v[1][l]) + (row[2][l] * v[2][l] + row[3][l] * v[3][l])
                + row[4][l] * v[4][l];
        }
    } else {
        for (l, o) in out.iter_mut().enumerate() {
            *o = dot_fn(|c| row[c][l], |c| v[c][l], m);
        }
    }
    out
}

/// `sum_c row[c] * v(c)`. For five components the two tangential terms are
/// added first, which keeps the result exactly invariant under swapping them.
#[inline(always)]
fn dot_fn(row: impl Fn(usize) -> f64, v: impl Fn(usize) -> f64, m: usize) -> f64 {
    if m == MAX_COMPONENTS {
        (row(0) * v(0) + row(1) * v(1)) + (row(2) * v(2) + row(3) * v(3)) + row(4) * v(4)
    } else {
        (0..m).map(|c| row(c) * v(c)).sum()
    }
}

/// Reconstruct `U^-`/`U^+` on the faces of a single line of cells in global
/// component order (characteristic projection where the system provides an
/// eigensystem). `line` holds `n + 2 * pad` cells, `pad >= order.reach()`.
pub fn reconstruct_line_characteristic<S: EquationSystem + ?Sized>(
    line: &[f64],
    pad: usize,
    eqsys: &S,
    axis: Axis,
    order: WenoOrder,
) -> Result<FaceTraces> {
    let m = eqsys.components();
    if line.len() % m != 0 || line.len() / m < 2 * pad + 1 {
        return Err(Error::InvalidWindow(format!("line of {} values does not hold n + 2*{pad} cells", line.len())));
    }
    if pad < order.reach() {
        return Err(Error::InvalidWindow(format!("halo {pad} is smaller than the stencil reach {}", order.reach())));
    }
    if line.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidWindow("line contains non-finite values".into()));
    }
    let n = line.len() / m - 2 * pad;
    let perm = eqsys.frame(axis);
    let mut local = vec![0.0; line.len()];
    for (src, dst) in line.chunks_exact(m).zip(local.chunks_exact_mut(m)) {
        crate::physics::to_frame(&perm, src, dst);
    }
    let mut minus = vec![0.0; (n + 1) * m];
    let mut plus = vec![0.0; (n + 1) * m];
    PencilReconstructor::new(eqsys, order)
        .reconstruct(eqsys, &local, pad, n, &mut minus, &mut plus)
        .map_err(|(face, reason)| Error::Eigensystem { axis, face, t1: 0, t2: 0, reason })?;
    let mut out = FaceTraces {
        minus: crate::grid::FaceArray::with_shape(axis, m, n + 1, [1, 1], 0),
        plus: crate::grid::FaceArray::with_shape(axis, m, n + 1, [1, 1], 0),
    };
    for (src, dst) in [(&minus, &mut out.minus), (&plus, &mut out.plus)] {
        let row = dst.row_mut(0, 0);
        for (s, d) in src.chunks_exact(m).zip(row.chunks_exact_mut(m)) {
            crate::physics::from_frame(&perm, s, d);
        }
    }
    Ok(out)
}
