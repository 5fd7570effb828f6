//! Experiments for the `fvweno` solver: test problems with exact solutions,
//! convergence and timing studies, field output and the command-line driver.

pub mod cli;
pub mod config;
pub mod convergence;
pub mod error;
pub mod output;
pub mod problems;
pub mod riemann;
pub mod run;
pub mod selftest;
pub mod system;
pub mod timing;

pub use config::RunConfig;
pub use error::{HarnessError, Result};
pub use problems::{exact_burgers, Problem, ProblemKind};
pub use run::{simulate, Positivity, RunOutcome, RunSpec};
pub use system::AnySystem;
