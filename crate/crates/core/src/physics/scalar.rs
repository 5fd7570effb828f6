use super::EquationSystem;
use crate::error::{Error, Result};
use crate::grid::Axis;

/// `u_t + a . grad(u) = 0` with constant velocity `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearAdvection {
    pub velocity: [f64; 3],
}

impl Default for LinearAdvection {
    fn default() -> Self {
        Self { velocity: [1.0; 3] }
    }
}

/// `u_t + (u^2/2)_x + (u^2/2)_y + (u^2/2)_z = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Burgers;

fn check_scalar(u: &[f64]) -> Result<()> {
    match u {
        [v] if v.is_finite() => Ok(()),
        [v] => Err(Error::InvalidState(format!("scalar value {v} is not finite"))),
        _ => Err(Error::InvalidState(format!("scalar state needs 1 component, got {}", u.len()))),
    }
}

impl EquationSystem for LinearAdvection {
    fn name(&self) -> &'static str {
        "advection"
    }
    #[inline]
    fn components(&self) -> usize {
        1
    }
    fn component_names(&self) -> Vec<String> {
        vec!["u".into()]
    }
    #[inline]
    fn normal_flux(&self, u: &[f64], axis: Axis, out: &mut [f64]) {
        out[0] = self.velocity[axis.index()] * u[0];
    }
    #[inline]
    fn normal_wavespeed(&self, _u: &[f64], axis: Axis) -> f64 {
        self.velocity[axis.index()].abs()
    }
    #[inline]
    fn validate(&self, u: &[f64]) -> Result<()> {
        check_scalar(u)
    }
}

impl EquationSystem for Burgers {
    fn name(&self) -> &'static str {
        "burgers"
    }
    #[inline]
    fn components(&self) -> usize {
        1
    }
    fn component_names(&self) -> Vec<String> {
        vec!["u".into()]
    }
    #[inline]
    fn normal_flux(&self, u: &[f64], _axis: Axis, out: &mut [f64]) {
        out[0] = 0.5 * u[0] * u[0];
    }
    #[inline]
    fn normal_wavespeed(&self, u: &[f64], _axis: Axis) -> f64 {
        u[0].abs()
    }
    #[inline]
    fn validate(&self, u: &[f64]) -> Result<()> {
        check_scalar(u)
    }
}
