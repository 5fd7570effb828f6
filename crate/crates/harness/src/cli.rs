//! Command-line interface.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fvweno::{Axis, WenoOrder};

use crate::config::RunConfig;
use crate::convergence::{run_convergence, write_convergence_csv};
use crate::error::{HarnessError, Result};
use crate::output::{field_scalars, write_slice_csv, write_vtk};
use crate::problems::ProblemKind;
use crate::run::{simulate, RunSpec};
use crate::system::AnySystem;
use crate::timing::{run_timing, write_timing_csv};

#[derive(Debug, Parser)]
#[command(name = "fvweno", version, about = "Finite-volume WENO-Z solver: runs, convergence studies and timing")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one problem to its final time and write VTK and slice output.
    Run(Options),
    /// Grid-refinement study against the exact solution.
    Convergence(Options),
    /// Per-iteration cost of the modified method relative to the classical one.
    Bench {
        #[command(flatten)]
        options: Options,
        /// Timed steps per method and grid (after one warm-up step).
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// Run the fast invariant checks.
    Selftest,
}

#[derive(Debug, Args, Default)]
pub struct Options {
    /// advect3d, burgers3d, euler_wave or spherical_riemann
    #[arg(long)]
    pub problem: Option<String>,
    /// classical or modified
    #[arg(long)]
    pub method: Option<String>,
    /// WENO-Z order (5 or 7)
    #[arg(long)]
    pub weno: Option<String>,
    /// Runge-Kutta order (5 or 7); defaults to the WENO order
    #[arg(long)]
    pub rk: Option<String>,
    /// lf or hllc; defaults to the problem's flux
    #[arg(long)]
    pub flux: Option<String>,
    /// NX,NY,NZ (or a single N)
    #[arg(long)]
    pub grid: Option<String>,
    /// Comma-separated grids, each N or NXxNYxNZ
    #[arg(long)]
    pub grid_ladder: Option<String>,
    #[arg(long)]
    pub cfl: Option<String>,
    #[arg(long)]
    pub tfinal: Option<String>,
    /// Conversion order of the modified method (4 or 6)
    #[arg(long)]
    pub conv_order: Option<String>,
    /// Output directory
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub threads: Option<String>,
    #[arg(long)]
    pub max_steps: Option<String>,
    /// key = value file; flags override its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Options {
    pub fn to_config(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        let flags = [
            ("problem", &self.problem),
            ("method", &self.method),
            ("weno", &self.weno),
            ("rk", &self.rk),
            ("flux", &self.flux),
            ("grid", &self.grid),
            ("grid_ladder", &self.grid_ladder),
            ("cfl", &self.cfl),
            ("tfinal", &self.tfinal),
            ("conv_order", &self.conv_order),
            ("out", &self.out),
            ("threads", &self.threads),
            ("max_steps", &self.max_steps),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.apply(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn set_threads(cfg: &RunConfig) {
    if let Some(n) = cfg.threads {
        // fails only if a pool already exists, in which case it is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))
}

fn cmd_run(cfg: &RunConfig) -> Result<()> {
    let spec = RunSpec::from_config(cfg)?;
    ensure_dir(&cfg.out)?;
    let name = spec.problem.kind.name();
    eprintln!(
        "{name}: {} WENO-Z{} RK{} {:?} on {:?}, T = {}",
        spec.scheme.method.name(),
        spec.scheme.weno.as_int(),
        spec.rk.order(),
        spec.scheme.flux,
        spec.n,
        spec.t_final
    );
    let out = simulate(&spec, |s| {
        if s.step % 20 == 0 {
            eprintln!("  step {:6}  t = {:.6}  dt = {:.3e}  {:.3} s/step", s.step, s.time, s.dt, s.seconds);
        }
    })?;
    let stem = format!("{name}_{}_z{}", spec.scheme.method.name(), spec.scheme.weno.as_int());
    let vtk = cfg.out.join(format!("{stem}.vtk"));
    write_vtk(&vtk, out.field.grid(), &field_scalars(&out.field, &spec.problem.system))?;
    let slice = cfg.out.join(format!("{stem}_xz.csv"));
    match spec.problem.system {
        AnySystem::Euler(e) => write_slice_csv(&slice, &out.field, Axis::Y, 0, "pressure", |u| e.pressure(u))?,
        _ => write_slice_csv(&slice, &out.field, Axis::Y, spec.n[1] / 2, "u", |u| u[0])?,
    }
    println!("steps: {}", out.stats.steps);
    println!("time: {}", out.stats.time);
    println!("mean seconds per step: {:.6e}", out.stats.mean_step_seconds());
    println!("conversion fallbacks: {}", out.stats.fallbacks);
    if let Some(p) = out.positivity {
        println!("min density: {:.6e}", p.min_density);
        println!("min pressure: {:.6e}", p.min_pressure);
    }
    if spec.problem.has_exact() {
        let exact = spec.problem.exact_field(*out.field.grid(), out.stats.time)?;
        let l1 = crate::convergence::l1_error(&out.field, &exact, spec.problem.error_component)?;
        println!("L1 error: {l1:.6e}");
    }
    println!("wrote {} and {}", vtk.display(), slice.display());
    Ok(())
}

fn cmd_convergence(cfg: &RunConfig) -> Result<()> {
    let spec = RunSpec::from_config(cfg)?;
    ensure_dir(&cfg.out)?;
    let path = cfg.out.join(format!(
        "convergence_{}_{}_z{}.csv",
        spec.problem.kind.name(),
        spec.scheme.method.name(),
        spec.scheme.weno.as_int()
    ));
    println!(
        "{:>12} {:>14} {:>14} {:>6} {:>14} {:>7} {:>9}",
        "grid", "L1 error", "per volume", "EOC", "s/step", "steps", "fallbacks"
    );
    let mut rows = Vec::new();
    let result = run_convergence(spec.problem.kind, spec.scheme, &spec.rk, &cfg.grid_ladder, cfg.cfl, |r| {
        println!(
            "{:>12} {:>14.4e} {:>14.4e} {:>6} {:>14.4e} {:>7} {:>9}",
            r.label(),
            r.l1,
            r.l1_per_volume,
            r.eoc.map(|e| format!("{e:.2}")).unwrap_or_else(|| "-".into()),
            r.seconds_per_step,
            r.steps,
            r.fallbacks
        );
        rows.push(r.clone());
        write_convergence_csv(&path, &spec.scheme, &spec.rk, &rows)
    });
    println!("wrote {}", path.display());
    result.map(|_| ())
}

fn cmd_bench(cfg: &RunConfig, steps: usize) -> Result<()> {
    let weno = WenoOrder::from_int(cfg.weno)?;
    ensure_dir(&cfg.out)?;
    let table = run_timing(cfg.problem, &cfg.grid_ladder, weno, steps)?;
    println!("{:>14} {:>14} {:>14} {:>7}", "grid", "classical s", "modified s", "ratio");
    for r in &table.rows {
        let [a, b, c] = r.grid;
        println!("{:>14} {:>14.4e} {:>14.4e} {:>7.2}", format!("{a}x{b}x{c}"), r.classical, r.modified, r.ratio);
    }
    println!("{:>14} {:>14} {:>14} {:>7.2}", "average", "", "", table.average_ratio);
    let path = cfg.out.join(format!("timing_{}_z{}.csv", cfg.problem.name(), weno.as_int()));
    write_timing_csv(&path, &table)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_selftest() -> bool {
    let checks = crate::selftest::run_all();
    for c in &checks {
        println!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    checks.iter().all(|c| c.passed)
}

/// Exit codes: 0 success, 1 run failure, 2 usage error.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let (options, bench_steps) = match &cli.command {
        Command::Selftest => return if cmd_selftest() { ExitCode::SUCCESS } else { ExitCode::from(1) },
        Command::Run(o) | Command::Convergence(o) => (o, None),
        Command::Bench { options, steps } => (options, Some(*steps)),
    };
    let mut cfg = match options.to_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Command::Bench { options, .. } = &cli.command {
        if options.problem.is_none() && options.config.is_none() {
            cfg.problem = ProblemKind::SphericalRiemann;
        }
        if options.grid_ladder.is_none() && options.config.is_none() {
            cfg.grid_ladder = vec![[19, 19, 13], [37, 37, 25], [75, 75, 50]];
        }
    }
    set_threads(&cfg);
    let result = match &cli.command {
        Command::Run(_) => cmd_run(&cfg),
        Command::Convergence(_) => cmd_convergence(&cfg),
        Command::Bench { .. } => cmd_bench(&cfg, bench_steps.unwrap_or(3)),
        Command::Selftest => unreachable!(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(HarnessError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
