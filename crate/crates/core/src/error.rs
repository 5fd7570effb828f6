use thiserror::Error;

use crate::grid::Axis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite value in component {component} of cell ({i}, {j}, {k})")]
    NonFiniteCell {
        component: usize,
        i: isize,
        j: isize,
        k: isize,
    },

    #[error("stencil out of bounds: {0}")]
    StencilOutOfBounds(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("eigensystem failure at {axis:?} face {face} of line ({t1}, {t2}): {reason}")]
    Eigensystem {
        axis: Axis,
        face: usize,
        t1: isize,
        t2: isize,
        reason: String,
    },

    #[error("numerical flux failure: {0}")]
    Flux(String),

    #[error("boundary: {0}")]
    Boundary(String),

    #[error("time integration: {0}")]
    TimeStep(String),

    #[error("non-finite value in Runge-Kutta stage {stage}")]
    NonFiniteStage { stage: usize },

    #[error("solution blew up at t = {time} (step {step})")]
    BlowUp { time: f64, step: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("configuration: {0}")]
    Config(String),
}
