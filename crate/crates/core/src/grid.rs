//! Uniform Cartesian grid geometry, ghost-padded cell storage and face storage.
//!
//! Cell `(i, j, k)` with `0 <= i < n[0]` etc. is an interior cell; ghost cells
//! carry indices in `[-ghost, 0)` and `[n, n + ghost)`. Face `f` along an axis
//! is the interface at `lo + f * dx`, i.e. between cells `f - 1` and `f`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(d: usize) -> Axis {
        match d {
            0 => Axis::X,
            1 => Axis::Y,
            2 => Axis::Z,
            _ => panic!("axis index {d} out of range"),
        }
    }

    /// The two axes spanning a face with this normal, in a fixed order:
    /// x -> (y, z), y -> (x, z), z -> (x, y).
    #[inline]
    pub fn tangential(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid3 {
    lo: [f64; 3],
    hi: [f64; 3],
    n: [usize; 3],
    ghost: usize,
    dx: [f64; 3],
}

impl Grid3 {
    pub fn new(lo: [f64; 3], hi: [f64; 3], n: [usize; 3], ghost: usize) -> Result<Self> {
        let mut dx = [0.0; 3];
        for d in 0..3 {
            if !(lo[d].is_finite() && hi[d].is_finite()) {
                return Err(Error::InvalidGrid(format!("non-finite bounds along {}", Axis::from_index(d).name())));
            }
            if hi[d] <= lo[d] {
                return Err(Error::InvalidGrid(format!(
                    "extent along {} is not positive: [{}, {}]",
                    Axis::from_index(d).name(),
                    lo[d],
                    hi[d]
                )));
            }
            if n[d] == 0 {
                return Err(Error::InvalidGrid(format!("zero cells along {}", Axis::from_index(d).name())));
            }
            dx[d] = (hi[d] - lo[d]) / n[d] as f64;
        }
        Ok(Self { lo, hi, n, ghost, dx })
    }

    #[inline]
    pub fn lo(&self) -> [f64; 3] {
        self.lo
    }
    #[inline]
    pub fn hi(&self) -> [f64; 3] {
        self.hi
    }
    #[inline]
    pub fn n(&self) -> [usize; 3] {
        self.n
    }
    #[inline]
    pub fn ghost(&self) -> usize {
        self.ghost
    }
    #[inline]
    pub fn dx(&self) -> [f64; 3] {
        self.dx
    }

    /// Cell counts including ghost layers.
    #[inline]
    pub fn padded(&self) -> [usize; 3] {
        [self.n[0] + 2 * self.ghost, self.n[1] + 2 * self.ghost, self.n[2] + 2 * self.ghost]
    }

    pub fn interior_cells(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn cell_volume(&self) -> f64 {
        self.dx[0] * self.dx[1] * self.dx[2]
    }

    /// Center of cell `index` along axis `d` (valid for ghost indices too).
    #[inline]
    pub fn center_1d(&self, d: usize, index: isize) -> f64 {
        self.lo[d] + (index as f64 + 0.5) * self.dx[d]
    }

    pub fn cell_center(&self, i: isize, j: isize, k: isize) -> [f64; 3] {
        [self.center_1d(0, i), self.center_1d(1, j), self.center_1d(2, k)]
    }

    /// Coordinate of face `f` along axis `d`.
    pub fn face_coord(&self, d: usize, f: isize) -> f64 {
        self.lo[d] + f as f64 * self.dx[d]
    }

    /// Index of the cell containing `p`, if `p` lies in the padded domain.
    pub fn locate(&self, p: [f64; 3]) -> Option<(isize, isize, isize)> {
        let g = self.ghost as isize;
        let mut idx = [0isize; 3];
        for d in 0..3 {
            let s = ((p[d] - self.lo[d]) / self.dx[d]).floor();
            if !s.is_finite() {
                return None;
            }
            let s = s as isize;
            if s < -g || s >= self.n[d] as isize + g {
                return None;
            }
            idx[d] = s;
        }
        Some((idx[0], idx[1], idx[2]))
    }

    pub fn same_shape(&self, other: &Grid3) -> bool {
        self == other
    }
}

/// How initial data is turned into cell values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellAveraging {
    /// Sample the function at the cell center.
    PointSample,
    /// Tensor-product 5-point Gauss-Legendre average, exact for degree <= 9 per direction.
    Gauss9,
}

/// 5-point Gauss-Legendre rule on [-1/2, 1/2] (nodes, weights summing to 1).
pub const GAUSS5_NODES: [f64; 5] = [
    -0.453_089_922_969_331_99,
    -0.269_234_655_052_841_6,
    0.0,
    0.269_234_655_052_841_6,
    0.453_089_922_969_331_99,
];
pub const GAUSS5_WEIGHTS: [f64; 5] = [
    0.118_463_442_528_094_54,
    0.239_314_335_249_683_23,
    0.284_444_444_444_444_44,
    0.239_314_335_249_683_23,
    0.118_463_442_528_094_54,
];

/// Cell-averaged conserved variables over interior and ghost cells.
///
/// Storage is one dense `Vec<f64>` with the component index fastest, then
/// `i`, `j`, `k`:
/// `offset = (((k + g) * ny_pad + (j + g)) * nx_pad + (i + g)) * m + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedField {
    grid: Grid3,
    m: usize,
    data: Vec<f64>,
}

impl ConservedField {
    pub fn zeros(grid: Grid3, m: usize) -> Self {
        let p = grid.padded();
        Self { grid, m, data: vec![0.0; p[0] * p[1] * p[2] * m] }
    }

    #[inline]
    pub fn grid(&self) -> &Grid3 {
        &self.grid
    }
    #[inline]
    pub fn components(&self) -> usize {
        self.m
    }
    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }
    #[inline]
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Element strides (in `f64`s) along x, y, z.
    #[inline]
    pub fn strides(&self) -> [usize; 3] {
        let p = self.grid.padded();
        [self.m, p[0] * self.m, p[0] * p[1] * self.m]
    }

    #[inline]
    pub fn offset(&self, i: isize, j: isize, k: isize) -> usize {
        let g = self.grid.ghost as isize;
        let p = self.grid.padded();
        debug_assert!(i >= -g && j >= -g && k >= -g);
        (((k + g) as usize * p[1] + (j + g) as usize) * p[0] + (i + g) as usize) * self.m
    }

    #[inline]
    pub fn get(&self, c: usize, i: isize, j: isize, k: isize) -> f64 {
        self.data[self.offset(i, j, k) + c]
    }

    #[inline]
    pub fn set(&mut self, c: usize, i: isize, j: isize, k: isize, v: f64) {
        let o = self.offset(i, j, k);
        self.data[o + c] = v;
    }

    #[inline]
    pub fn cell(&self, i: isize, j: isize, k: isize) -> &[f64] {
        let o = self.offset(i, j, k);
        &self.data[o..o + self.m]
    }

    #[inline]
    pub fn cell_mut(&mut self, i: isize, j: isize, k: isize) -> &mut [f64] {
        let o = self.offset(i, j, k);
        let m = self.m;
        &mut self.data[o..o + m]
    }

    /// Visit every interior cell in `k`, `j`, `i` order.
    pub fn for_each_interior<F: FnMut(isize, isize, isize, &[f64])>(&self, mut f: F) {
        let n = self.grid.n;
        for k in 0..n[2] as isize {
            for j in 0..n[1] as isize {
                for i in 0..n[0] as isize {
                    f(i, j, k, self.cell(i, j, k));
                }
            }
        }
    }

    /// Start offsets of each contiguous interior `x` run (length `n[0] * m`).
    pub fn interior_rows(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.grid.n;
        (0..n[2] as isize).flat_map(move |k| (0..n[1] as isize).map(move |j| self.offset(0, j, k)))
    }

    pub fn check_finite(&self) -> Result<()> {
        let n = self.grid.n;
        for k in 0..n[2] as isize {
            for j in 0..n[1] as isize {
                for i in 0..n[0] as isize {
                    if let Some(c) = self.cell(i, j, k).iter().position(|v| !v.is_finite()) {
                        return Err(Error::NonFiniteCell { component: c, i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Sum of a component over interior cells times the cell volume, in fixed order.
    pub fn integral(&self, c: usize) -> f64 {
        let mut s = 0.0;
        self.for_each_interior(|_, _, _, u| s += u[c]);
        s * self.grid.cell_volume()
    }

    /// Copy of the field with x and y indices (and the given vector components) swapped.
    pub fn transposed_xy(&self, swap_components: Option<(usize, usize)>) -> Result<Self> {
        let n = self.grid.n;
        if n[0] != n[1] {
            return Err(Error::ShapeMismatch("x/y transposition needs nx == ny".into()));
        }
        let lo = self.grid.lo;
        let hi = self.grid.hi;
        let grid = Grid3::new([lo[1], lo[0], lo[2]], [hi[1], hi[0], hi[2]], [n[1], n[0], n[2]], self.grid.ghost)?;
        let mut out = ConservedField::zeros(grid, self.m);
        let g = self.grid.ghost as isize;
        for k in -g..n[2] as isize + g {
            for j in -g..n[1] as isize + g {
                for i in -g..n[0] as isize + g {
                    let src = self.cell(i, j, k);
                    let dst = out.cell_mut(j, i, k);
                    dst.copy_from_slice(src);
                    if let Some((a, b)) = swap_components {
                        dst.swap(a, b);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Build a field from a pointwise state function `f(point, out)`.
///
/// Ghost cells are left at zero; the boundary module fills them.
pub fn fill_from_function<F>(grid: Grid3, m: usize, averaging: CellAveraging, f: F) -> Result<ConservedField>
where
    F: Fn([f64; 3], &mut [f64]),
{
    let mut field = ConservedField::zeros(grid, m);
    let n = grid.n;
    let dx = grid.dx;
    let mut value = vec![0.0; m];
    let mut acc = vec![0.0; m];
    for k in 0..n[2] as isize {
        for j in 0..n[1] as isize {
            for i in 0..n[0] as isize {
                let center = grid.cell_center(i, j, k);
                match averaging {
                    CellAveraging::PointSample => {
                        f(center, &mut acc);
                    }
                    CellAveraging::Gauss9 => {
                        acc.iter_mut().for_each(|a| *a = 0.0);
                        for (c, wz) in GAUSS5_NODES.iter().zip(GAUSS5_WEIGHTS) {
                            let z = center[2] + c * dx[2];
                            for (b, wy) in GAUSS5_NODES.iter().zip(GAUSS5_WEIGHTS) {
                                let y = center[1] + b * dx[1];
                                let wyz = wy * wz;
                                for (a, wx) in GAUSS5_NODES.iter().zip(GAUSS5_WEIGHTS) {
                                    let x = center[0] + a * dx[0];
                                    f([x, y, z], &mut value);
                                    let w = wx * wyz;
                                    for (s, v) in acc.iter_mut().zip(&value) {
                                        *s += w * v;
                                    }
                                }
                            }
                        }
                    }
                }
                if let Some(c) = acc.iter().position(|v| !v.is_finite()) {
                    return Err(Error::NonFiniteCell { component: c, i, j, k });
                }
                field.cell_mut(i, j, k).copy_from_slice(&acc);
            }
        }
    }
    Ok(field)
}

/// Values on the faces of one normal direction, over all normal faces
/// `0..=n_normal` and a tangential halo of `halo` ghost faces on each side.
///
/// Layout: component fastest, then normal face index, then first and second
/// tangential index. A "row" is the contiguous run of all normal faces at one
/// tangential position.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceArray {
    axis: Axis,
    m: usize,
    faces: usize,
    nt: [usize; 2],
    halo: usize,
    data: Vec<f64>,
}

impl FaceArray {
    pub fn zeros(grid: &Grid3, axis: Axis, m: usize, halo: usize) -> Self {
        let n = grid.n();
        let (t1, t2) = axis.tangential();
        Self::with_shape(axis, m, n[axis.index()] + 1, [n[t1.index()], n[t2.index()]], halo)
    }

    /// Explicit shape: `faces` normal faces and `nt` interior tangential counts.
    pub fn with_shape(axis: Axis, m: usize, faces: usize, nt: [usize; 2], halo: usize) -> Self {
        let len = (nt[0] + 2 * halo) * (nt[1] + 2 * halo) * faces * m;
        Self { axis, m, faces, nt, halo, data: vec![0.0; len] }
    }

    #[inline]
    pub fn axis(&self) -> Axis {
        self.axis
    }
    #[inline]
    pub fn components(&self) -> usize {
        self.m
    }
    #[inline]
    pub fn faces(&self) -> usize {
        self.faces
    }
    #[inline]
    pub fn tangential_counts(&self) -> [usize; 2] {
        self.nt
    }
    #[inline]
    pub fn halo(&self) -> usize {
        self.halo
    }
    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }
    #[inline]
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
    #[inline]
    pub fn row_len(&self) -> usize {
        self.faces * self.m
    }
    /// Padded tangential extents.
    #[inline]
    pub fn padded_tangential(&self) -> [usize; 2] {
        [self.nt[0] + 2 * self.halo, self.nt[1] + 2 * self.halo]
    }

    #[inline]
    pub fn row_index(&self, t1: isize, t2: isize) -> usize {
        let h = self.halo as isize;
        debug_assert!(t1 >= -h && t2 >= -h);
        let p = self.padded_tangential();
        (t2 + h) as usize * p[0] + (t1 + h) as usize
    }

    #[inline]
    pub fn row(&self, t1: isize, t2: isize) -> &[f64] {
        let r = self.row_index(t1, t2) * self.row_len();
        &self.data[r..r + self.row_len()]
    }

    #[inline]
    pub fn row_mut(&mut self, t1: isize, t2: isize) -> &mut [f64] {
        let len = self.row_len();
        let r = self.row_index(t1, t2) * len;
        &mut self.data[r..r + len]
    }

    #[inline]
    pub fn get(&self, c: usize, f: usize, t1: isize, t2: isize) -> f64 {
        self.row(t1, t2)[f * self.m + c]
    }

    #[inline]
    pub fn set(&mut self, c: usize, f: usize, t1: isize, t2: isize, v: f64) {
        let m = self.m;
        self.row_mut(t1, t2)[f * m + c] = v;
    }

    pub fn same_shape(&self, other: &FaceArray) -> bool {
        self.axis == other.axis
            && self.m == other.m
            && self.faces == other.faces
            && self.nt == other.nt
            && self.halo == other.halo
    }
}

/// Left (`minus`) and right (`plus`) traces on one family of faces.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceTraces {
    pub minus: FaceArray,
    pub plus: FaceArray,
}

impl FaceTraces {
    pub fn zeros(grid: &Grid3, axis: Axis, m: usize, halo: usize) -> Self {
        let minus = FaceArray::zeros(grid, axis, m, halo);
        Self { plus: minus.clone(), minus }
    }

    #[inline]
    pub fn axis(&self) -> Axis {
        self.minus.axis
    }
    #[inline]
    pub fn halo(&self) -> usize {
        self.minus.halo
    }
    #[inline]
    pub fn components(&self) -> usize {
        self.minus.m
    }
}
