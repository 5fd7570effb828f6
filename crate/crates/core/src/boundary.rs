//! Ghost-cell filling.
//!
//! Ghost layers are filled by three sequential sweeps, x then y then z. Each
//! sweep covers the full padded extent of the other two axes, so edge and
//! corner ghosts are defined by the last sweep that touches them.

use crate::error::{Error, Result};
use crate::grid::{Axis, ConservedField};
use crate::physics::EquationSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    Periodic,
    ReflectiveWall,
    Symmetry,
    /// Zero-gradient extrapolation.
    Outflow,
}

impl std::str::FromStr for BoundaryKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" => Ok(Self::Periodic),
            "wall" | "reflective" | "reflective_wall" => Ok(Self::ReflectiveWall),
            "symmetry" => Ok(Self::Symmetry),
            "outflow" => Ok(Self::Outflow),
            other => Err(Error::Boundary(format!("unknown boundary kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Low,
    High,
}

/// Boundary kind per grid face, `faces[axis][side]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoundarySpec {
    faces: [[Option<BoundaryKind>; 2]; 3],
}

impl BoundarySpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn periodic() -> Self {
        Self::uniform(BoundaryKind::Periodic)
    }

    pub fn uniform(kind: BoundaryKind) -> Self {
        Self { faces: [[Some(kind); 2]; 3] }
    }

    pub fn with(mut self, axis: Axis, side: Side, kind: BoundaryKind) -> Self {
        self.faces[axis.index()][side as usize] = Some(kind);
        self
    }

    pub fn get(&self, axis: Axis, side: Side) -> Option<BoundaryKind> {
        self.faces[axis.index()][side as usize]
    }

    pub fn validate(&self) -> Result<()> {
        for axis in Axis::ALL {
            let [lo, hi] = self.faces[axis.index()];
            let (Some(lo), Some(hi)) = (lo, hi) else {
                return Err(Error::Boundary(format!("no boundary condition on a {} face", axis.name())));
            };
            if (lo == BoundaryKind::Periodic) != (hi == BoundaryKind::Periodic) {
                return Err(Error::Boundary(format!(
                    "periodic boundary along {} must be set on both faces",
                    axis.name()
                )));
            }
        }
        Ok(())
    }
}

/// Fill all ghost layers of `field`.
pub fn fill_ghosts<S: EquationSystem + ?Sized>(field: &mut ConservedField, spec: &BoundarySpec, eqsys: &S) -> Result<()> {
    spec.validate()?;
    let grid = *field.grid();
    let g = grid.ghost() as isize;
    if g == 0 {
        return Ok(());
    }
    let n = grid.n();
    let m = field.components();
    for axis in Axis::ALL {
        let d = axis.index();
        let nd = n[d] as isize;
        let (a, b) = match axis {
            Axis::X => (1, 2),
            Axis::Y => (0, 2),
            Axis::Z => (0, 1),
        };
        let flip = eqsys.momentum_component(axis);
        for side in [Side::Low, Side::High] {
            let kind = spec.get(axis, side).expect("validated");
            if matches!(kind, BoundaryKind::ReflectiveWall | BoundaryKind::Symmetry) && nd < g {
                return Err(Error::Boundary(format!(
                    "mirror boundary along {} needs at least {g} interior cells, grid has {nd}",
                    axis.name()
                )));
            }
            for l in 1..=g {
                // ghost index and its source
                let (dst, src) = match (side, kind) {
                    (Side::Low, BoundaryKind::Periodic) => (-l, (nd - l).rem_euclid(nd)),
                    (Side::High, BoundaryKind::Periodic) => (nd - 1 + l, (l - 1).rem_euclid(nd)),
                    (Side::Low, BoundaryKind::Outflow) => (-l, 0),
                    (Side::High, BoundaryKind::Outflow) => (nd - 1 + l, nd - 1),
                    (Side::Low, _) => (-l, l - 1),
                    (Side::High, _) => (nd - 1 + l, nd - l),
                };
                let mirror = matches!(kind, BoundaryKind::ReflectiveWall | BoundaryKind::Symmetry);
                let flip = if mirror { flip } else { None };
                let stride_a = field.strides()[a];
                let count_a = n[a] + 2 * g as usize;
                for ib in -g..n[b] as isize + g {
                    let mut idx_dst = [0isize; 3];
                    idx_dst[d] = dst;
                    idx_dst[a] = -g;
                    idx_dst[b] = ib;
                    let mut idx_src = idx_dst;
                    idx_src[d] = src;
                    let od = field.offset(idx_dst[0], idx_dst[1], idx_dst[2]);
                    let os = field.offset(idx_src[0], idx_src[1], idx_src[2]);
                    let data = field.data_mut();
                    for t in 0..count_a {
                        let (od, os) = (od + t * stride_a, os + t * stride_a);
                        data.copy_within(os..os + m, od);
                        if let Some(c) = flip {
                            data[od + c] = -data[od + c];
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
