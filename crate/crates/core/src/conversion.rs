//! Conversions between face-averaged values and face-center point values on
//! the tangential plane of a face family.
//!
//! With `Q` the face average and `q` the point value at the face center, both
//! conversions have the form
//!
//! ```text
//! out = in + A(in; t1) + A(in; t2) + cross * D2(D2(in; t1); t2)
//! ```
//!
//! where `A` is a five-point axial correction along one tangential axis and
//! `D2` the `(1, -2, 1)` second difference. The weights carry no grid spacing:
//! the `h^2` factors of the Taylor transformation cancel against the finite
//! difference denominators.

use crate::error::{Error, Result};
use crate::grid::{FaceArray, FaceTraces};

/// An exact rational weight, rendered to `f64` once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub const fn new(num: i64, den: i64) -> Self {
        Self { num, den }
    }
    pub const fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

const fn scaled(scale: Ratio, ints: [i64; 5]) -> [Ratio; 5] {
    [
        Ratio::new(scale.num * ints[0], scale.den),
        Ratio::new(scale.num * ints[1], scale.den),
        Ratio::new(scale.num * ints[2], scale.den),
        Ratio::new(scale.num * ints[3], scale.den),
        Ratio::new(scale.num * ints[4], scale.den),
    ]
}

/// Sixth-order average-to-point axial weights: `-(1/1920) (-9, 116, -214, 116, -9)`.
pub const A2P6_AXIAL: [Ratio; 5] = scaled(Ratio::new(-1, 1920), [-9, 116, -214, 116, -9]);
/// Sixth-order point-to-average axial weights: `(1/5760) (-17, 308, -582, 308, -17)`.
pub const P2A6_AXIAL: [Ratio; 5] = scaled(Ratio::new(1, 5760), [-17, 308, -582, 308, -17]);
/// Weight of the `(1,-2,1) x (1,-2,1)` cross term in both sixth-order conversions.
pub const CROSS6: Ratio = Ratio::new(1, 576);
/// Fourth-order axial weights: `-(1/24) (1, -2, 1)` and `+(1/24) (1, -2, 1)`.
pub const A2P4_AXIAL: [Ratio; 5] = scaled(Ratio::new(-1, 24), [0, 1, -2, 1, 0]);
pub const P2A4_AXIAL: [Ratio; 5] = scaled(Ratio::new(1, 24), [0, 1, -2, 1, 0]);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConversionOrder {
    Four,
    Six,
}

impl ConversionOrder {
    pub fn from_int(order: usize) -> Result<Self> {
        match order {
            4 => Ok(Self::Four),
            6 => Ok(Self::Six),
            o => Err(Error::Config(format!("conversion order must be 4 or 6, got {o}"))),
        }
    }
    pub fn as_int(self) -> usize {
        match self {
            Self::Four => 4,
            Self::Six => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    AverageToPoint,
    PointToAverage,
}

/// Tangential conversion stencil of a given order and sense.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConversionStencil {
    pub order: ConversionOrder,
    pub sense: Sense,
    pub axial: [f64; 5],
    pub cross: f64,
}

impl ConversionStencil {
    pub const REACH: usize = 2;

    pub fn new(order: ConversionOrder, sense: Sense) -> Self {
        let (axial, cross) = Self::exact(order, sense);
        Self { order, sense, axial: axial.map(Ratio::to_f64), cross: cross.to_f64() }
    }

    pub fn exact(order: ConversionOrder, sense: Sense) -> ([Ratio; 5], Ratio) {
        match (order, sense) {
            (ConversionOrder::Six, Sense::AverageToPoint) => (A2P6_AXIAL, CROSS6),
            (ConversionOrder::Six, Sense::PointToAverage) => (P2A6_AXIAL, CROSS6),
            (ConversionOrder::Four, Sense::AverageToPoint) => (A2P4_AXIAL, Ratio::new(0, 1)),
            (ConversionOrder::Four, Sense::PointToAverage) => (P2A4_AXIAL, Ratio::new(0, 1)),
        }
    }

    /// Apply the stencil to a face array, producing values on a tangential
    /// halo two faces narrower than the input.
    pub fn apply(&self, input: &FaceArray) -> Result<FaceArray> {
        if input.halo() < Self::REACH {
            return Err(Error::StencilOutOfBounds(format!(
                "conversion on {} faces needs a tangential halo of {}, input has {}",
                input.axis().name(),
                Self::REACH,
                input.halo()
            )));
        }
        let mut out = FaceArray::with_shape(
            input.axis(),
            input.components(),
            input.faces(),
            input.tangential_counts(),
            input.halo() - Self::REACH,
        );
        self.apply_into(input, &mut out)?;
        Ok(out)
    }

    /// Like [`apply`](Self::apply) but writing into an existing array whose
    /// halo must be at most `input.halo() - 2`.
    pub fn apply_into(&self, input: &FaceArray, out: &mut FaceArray) -> Result<()> {
        if out.axis() != input.axis()
            || out.components() != input.components()
            || out.faces() != input.faces()
            || out.tangential_counts() != input.tangential_counts()
        {
            return Err(Error::ShapeMismatch("conversion output does not match input".into()));
        }
        if out.halo() + Self::REACH > input.halo() {
            return Err(Error::StencilOutOfBounds(format!(
                "output halo {} needs input halo {}, input has {}",
                out.halo(),
                out.halo() + Self::REACH,
                input.halo()
            )));
        }
        let h = out.halo() as isize;
        let nt = out.tangential_counts();
        let a = self.axial;
        let cross = self.cross;
        let len = out.row_len();
        for t2 in -h..nt[1] as isize + h {
            for t1 in -h..nt[0] as isize + h {
                let c = input.row(t1, t2);
                let (ym2, ym1, yp1, yp2) =
                    (input.row(t1 - 2, t2), input.row(t1 - 1, t2), input.row(t1 + 1, t2), input.row(t1 + 2, t2));
                let (zm2, zm1, zp1, zp2) =
                    (input.row(t1, t2 - 2), input.row(t1, t2 - 1), input.row(t1, t2 + 1), input.row(t1, t2 + 2));
                let (mm, pm, mp, pp) = (
                    input.row(t1 - 1, t2 - 1),
                    input.row(t1 + 1, t2 - 1),
                    input.row(t1 - 1, t2 + 1),
                    input.row(t1 + 1, t2 + 1),
                );
                let dst = out.row_mut(t1, t2);
                for e in 0..len {
                    let ax1 = a[0] * ym2[e] + a[1] * ym1[e] + a[2] * c[e] + a[3] * yp1[e] + a[4] * yp2[e];
                    let ax2 = a[0] * zm2[e] + a[1] * zm1[e] + a[2] * c[e] + a[3] * zp1[e] + a[4] * zp2[e];
                    // written symmetrically in the two tangential axes
                    let corners = (mm[e] + pp[e]) + (pm[e] + mp[e]);
                    let edges = (ym1[e] + yp1[e]) + (zm1[e] + zp1[e]);
                    let xd = (corners - 2.0 * edges) + 4.0 * c[e];
                    dst[e] = c[e] + (ax1 + ax2) + cross * xd;
                }
            }
        }
        Ok(())
    }
}

/// Face-averaged traces to face-center point values (both `minus` and `plus`).
pub fn average_to_point(faces: &FaceTraces, order: ConversionOrder) -> Result<FaceTraces> {
    let s = ConversionStencil::new(order, Sense::AverageToPoint);
    Ok(FaceTraces { minus: s.apply(&faces.minus)?, plus: s.apply(&faces.plus)? })
}

/// Face-center point fluxes to face-averaged fluxes.
pub fn point_to_average(points: &FaceArray, order: ConversionOrder) -> Result<FaceArray> {
    ConversionStencil::new(order, Sense::PointToAverage).apply(points)
}

/// Which derivative a stencil approximates, in patch axes `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivative {
    Qaa,
    Qbb,
    Qaaaa,
    Qbbbb,
    Qaabb,
}

/// A 2D patch of values with spacings `ha`, `hb`; `values[ib * na + ia]`.
#[derive(Debug, Clone, Copy)]
pub struct Patch<'a> {
    pub values: &'a [f64],
    pub na: usize,
    pub nb: usize,
    pub ha: f64,
    pub hb: f64,
}

impl Patch<'_> {
    fn at(&self, ia: usize, ib: usize) -> f64 {
        self.values[ib * self.na + ia]
    }

    fn check(&self, ca: usize, cb: usize) -> Result<()> {
        if self.values.len() != self.na * self.nb {
            return Err(Error::ShapeMismatch(format!(
                "patch has {} values for {}x{}",
                self.values.len(),
                self.na,
                self.nb
            )));
        }
        if ca < 2 || cb < 2 || ca + 2 >= self.na || cb + 2 >= self.nb {
            return Err(Error::StencilOutOfBounds(format!(
                "derivative at ({ca}, {cb}) needs a +-2 neighbourhood in a {}x{} patch",
                self.na, self.nb
            )));
        }
        Ok(())
    }

    fn line(&self, ca: usize, cb: usize, along_a: bool, w: [f64; 5]) -> f64 {
        (0..5)
            .map(|o| {
                let v = if along_a { self.at(ca + o - 2, cb) } else { self.at(ca, cb + o - 2) };
                w[o] * v
            })
            .sum()
    }

    /// `(1,-2,1)` in `a` applied to `(1,-2,1)` in `b`, without spacing.
    fn cross(&self, ca: usize, cb: usize) -> f64 {
        let d2a = |ib: usize| self.at(ca - 1, ib) + self.at(ca + 1, ib) - 2.0 * self.at(ca, ib);
        d2a(cb - 1) + d2a(cb + 1) - 2.0 * d2a(cb)
    }
}

const FD4_SECOND: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
const FD2_FOURTH: [f64; 5] = [1.0, -4.0, 6.0, -4.0, 1.0];
const AVG4_SECOND: [f64; 5] = [-1.0 / 8.0, 12.0 / 8.0, -22.0 / 8.0, 12.0 / 8.0, -1.0 / 8.0];

/// Derivative at patch cell `(ca, cb)` from point values: fourth-order
/// five-point second derivatives, second-order fourth and mixed derivatives.
pub fn derivative_from_points(p: &Patch<'_>, ca: usize, cb: usize, which: Derivative) -> Result<f64> {
    p.check(ca, cb)?;
    let (ha2, hb2) = (p.ha * p.ha, p.hb * p.hb);
    Ok(match which {
        Derivative::Qaa => p.line(ca, cb, true, FD4_SECOND) / ha2,
        Derivative::Qbb => p.line(ca, cb, false, FD4_SECOND) / hb2,
        Derivative::Qaaaa => p.line(ca, cb, true, FD2_FOURTH) / (ha2 * ha2),
        Derivative::Qbbbb => p.line(ca, cb, false, FD2_FOURTH) / (hb2 * hb2),
        Derivative::Qaabb => p.cross(ca, cb) / (ha2 * hb2),
    })
}

/// Point derivative at the center of patch cell `(ca, cb)` from cell
/// averages. Second derivatives use the combined fourth-order stencils that
/// remove the averaging error; fourth and mixed derivatives are the direct
/// second-order differences of the averages.
pub fn derivative_from_averages(p: &Patch<'_>, ca: usize, cb: usize, which: Derivative) -> Result<f64> {
    p.check(ca, cb)?;
    let (ha2, hb2) = (p.ha * p.ha, p.hb * p.hb);
    Ok(match which {
        Derivative::Qaa => (p.line(ca, cb, true, AVG4_SECOND) - p.cross(ca, cb) / 24.0) / ha2,
        Derivative::Qbb => (p.line(ca, cb, false, AVG4_SECOND) - p.cross(ca, cb) / 24.0) / hb2,
        Derivative::Qaaaa => p.line(ca, cb, true, FD2_FOURTH) / (ha2 * ha2),
        Derivative::Qbbbb => p.line(ca, cb, false, FD2_FOURTH) / (hb2 * hb2),
        Derivative::Qaabb => p.cross(ca, cb) / (ha2 * hb2),
    })
}
