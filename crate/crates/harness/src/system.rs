//! One equation-system type covering every problem, so a single `Solver`
//! instantiation serves the whole harness.

use fvweno::physics::{Eigensystem, MAX_COMPONENTS};
use fvweno::{Axis, Burgers, EquationSystem, Euler, LinearAdvection, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnySystem {
    Advection(LinearAdvection),
    Burgers(Burgers),
    Euler(Euler),
}

macro_rules! delegate {
    ($self:ident, $s:ident => $e:expr) => {
        match $self {
            AnySystem::Advection($s) => $e,
            AnySystem::Burgers($s) => $e,
            AnySystem::Euler($s) => $e,
        }
    };
}

impl EquationSystem for AnySystem {
    fn name(&self) -> &'static str {
        delegate!(self, s => s.name())
    }
    fn components(&self) -> usize {
        delegate!(self, s => s.components())
    }
    fn component_names(&self) -> Vec<String> {
        delegate!(self, s => s.component_names())
    }
    #[inline]
    fn frame(&self, axis: Axis) -> [usize; MAX_COMPONENTS] {
        delegate!(self, s => s.frame(axis))
    }
    #[inline]
    fn normal_flux(&self, u: &[f64], axis: Axis, out: &mut [f64]) {
        delegate!(self, s => s.normal_flux(u, axis, out))
    }
    #[inline]
    fn normal_wavespeed(&self, u: &[f64], axis: Axis) -> f64 {
        delegate!(self, s => s.normal_wavespeed(u, axis))
    }
    fn has_eigensystem(&self) -> bool {
        delegate!(self, s => s.has_eigensystem())
    }
    #[inline]
    fn normal_eigensystem(&self, u: &[f64]) -> Result<Eigensystem> {
        delegate!(self, s => s.normal_eigensystem(u))
    }
    #[inline]
    fn hllc_normal(&self, um: &[f64], up: &[f64], out: &mut [f64]) -> Result<()> {
        delegate!(self, s => s.hllc_normal(um, up, out))
    }
    fn momentum_component(&self, axis: Axis) -> Option<usize> {
        delegate!(self, s => s.momentum_component(axis))
    }
    #[inline]
    fn validate(&self, u: &[f64]) -> Result<()> {
        delegate!(self, s => s.validate(u))
    }
}
