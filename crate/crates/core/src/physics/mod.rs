//! Conservation-law systems and numerical fluxes.
//!
//! Every system exposes its directional physics in a *face-normal frame*: a
//! component permutation per axis after which the face normal plays the role
//! of `x`. For scalar laws the permutation is the identity; for Euler it maps
//! `(rho, m_x, m_y, m_z, E)` to `(rho, m_n, m_t1, m_t2, E)`.

mod euler;
mod flux;
mod scalar;

pub use euler::{Euler, EulerState, GAMMA};
pub use flux::{hllc_flux, lax_friedrichs_flux, FluxKind};
pub use scalar::{Burgers, LinearAdvection};

use crate::error::{Error, Result};
use crate::grid::Axis;

pub const MAX_COMPONENTS: usize = 5;

/// Eigen-decomposition of the normal flux Jacobian in the face-normal frame:
/// `A = R diag(values) L`, `L R = I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigensystem {
    pub values: [f64; MAX_COMPONENTS],
    pub left: [[f64; MAX_COMPONENTS]; MAX_COMPONENTS],
    pub right: [[f64; MAX_COMPONENTS]; MAX_COMPONENTS],
}

pub trait EquationSystem: Send + Sync {
    fn name(&self) -> &'static str;

    fn components(&self) -> usize;

    fn component_names(&self) -> Vec<String>;

    /// Permutation `p` with `local[c] = global[p[c]]` for faces normal to `axis`.
    fn frame(&self, _axis: Axis) -> [usize; MAX_COMPONENTS] {
        [0, 1, 2, 3, 4]
    }

    /// Normal flux of a face-normal-frame state (result in the same frame).
    fn normal_flux(&self, u: &[f64], axis: Axis, out: &mut [f64]);

    /// Largest characteristic speed magnitude of a face-normal-frame state.
    fn normal_wavespeed(&self, u: &[f64], axis: Axis) -> f64;

    /// Whether reconstruction should run in characteristic variables.
    fn has_eigensystem(&self) -> bool {
        false
    }

    fn normal_eigensystem(&self, _u: &[f64]) -> Result<Eigensystem> {
        Err(Error::InvalidState(format!("{} has no eigensystem (componentwise)", self.name())))
    }

    /// Three-wave Riemann flux in the face-normal frame, where supported.
    fn hllc_normal(&self, _um: &[f64], _up: &[f64], _out: &mut [f64]) -> Result<()> {
        Err(Error::Config(format!("HLLC flux is not defined for {}", self.name())))
    }

    /// Component holding the momentum along `axis` (negated by mirror boundaries).
    fn momentum_component(&self, _axis: Axis) -> Option<usize> {
        None
    }

    /// Admissibility check; the error names the offending quantity.
    fn validate(&self, u: &[f64]) -> Result<()>;

    /// Physical flux in global component order.
    fn flux(&self, u: &[f64], axis: Axis, out: &mut [f64]) {
        let m = self.components();
        let p = self.frame(axis);
        let mut local = [0.0; MAX_COMPONENTS];
        let mut f = [0.0; MAX_COMPONENTS];
        to_frame(&p, u, &mut local[..m]);
        self.normal_flux(&local[..m], axis, &mut f[..m]);
        from_frame(&p, &f[..m], out);
    }

    fn max_wavespeed(&self, u: &[f64], axis: Axis) -> f64 {
        let m = self.components();
        let mut local = [0.0; MAX_COMPONENTS];
        to_frame(&self.frame(axis), u, &mut local[..m]);
        self.normal_wavespeed(&local[..m], axis)
    }

    /// Eigensystem of the flux Jacobian along `axis` in global component order.
    fn eigensystem(&self, u: &[f64], axis: Axis) -> Result<Eigensystem> {
        let m = self.components();
        let p = self.frame(axis);
        let mut local = [0.0; MAX_COMPONENTS];
        to_frame(&p, u, &mut local[..m]);
        let e = self.normal_eigensystem(&local[..m])?;
        let mut g = Eigensystem { values: e.values, left: [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS], right: [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS] };
        for s in 0..m {
            for c in 0..m {
                g.left[s][p[c]] = e.left[s][c];
                g.right[p[c]][s] = e.right[c][s];
            }
        }
        Ok(g)
    }
}

#[inline]
pub fn to_frame(p: &[usize; MAX_COMPONENTS], global: &[f64], local: &mut [f64]) {
    for (c, l) in local.iter_mut().enumerate() {
        *l = global[p[c]];
    }
}

#[inline]
pub fn from_frame(p: &[usize; MAX_COMPONENTS], local: &[f64], global: &mut [f64]) {
    for (c, l) in local.iter().enumerate() {
        global[p[c]] = *l;
    }
}

/// `physical_flux` with the admissibility precondition checked.
pub fn physical_flux<S: EquationSystem + ?Sized>(eqsys: &S, u: &[f64], axis: Axis) -> Result<Vec<f64>> {
    eqsys.validate(u)?;
    let mut out = vec![0.0; eqsys.components()];
    eqsys.flux(u, axis, &mut out);
    Ok(out)
}
