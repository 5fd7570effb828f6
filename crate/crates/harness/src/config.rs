//! Run configuration and the plain-text `key = value` config format.

use std::path::{Path, PathBuf};

use fvweno::{ConversionOrder, EquationSystem, FluxKind, MethodKind, RkScheme, SchemeConfig, WenoOrder};

use crate::error::{HarnessError, Result};
use crate::problems::{Problem, ProblemKind};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemKind,
    pub method: String,
    pub weno: usize,
    /// Defaults to the WENO order.
    pub rk: Option<usize>,
    /// Defaults to the problem's flux.
    pub flux: Option<FluxKind>,
    /// Defaults to the problem's grid.
    pub grid: Option<[usize; 3]>,
    /// Entries are `N` (cube) or `NXxNYxNZ`.
    pub grid_ladder: Vec<[usize; 3]>,
    pub cfl: f64,
    pub t_final: Option<f64>,
    /// Modified method only; defaults to 6.
    pub conv_order: Option<usize>,
    pub out: PathBuf,
    pub threads: Option<usize>,
    pub max_steps: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: ProblemKind::Advect3d,
            method: "modified".into(),
            weno: 5,
            rk: None,
            flux: None,
            grid: None,
            grid_ladder: vec![[10; 3], [20; 3], [40; 3]],
            cfl: 0.5,
            t_final: None,
            conv_order: None,
            out: PathBuf::from("out"),
            threads: None,
            max_steps: 1_000_000,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| HarnessError::Config(format!("{key}: cannot parse '{v}'")))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<usize>> {
    v.split(',').map(|s| parse_num(key, s)).collect()
}

fn parse_ladder(key: &str, v: &str) -> Result<Vec<[usize; 3]>> {
    v.split(',')
        .map(|item| {
            let dims: Vec<usize> = item.split('x').map(|s| parse_num(key, s)).collect::<Result<_>>()?;
            match dims.as_slice() {
                [n] => Ok([*n; 3]),
                [a, b, c] => Ok([*a, *b, *c]),
                _ => Err(HarnessError::Config(format!("{key}: bad grid '{item}'"))),
            }
        })
        .collect()
}

impl RunConfig {
    /// Set one option from its textual form (shared by the config file and flags).
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "problem" => self.problem = v.parse()?,
            "method" => self.method = v.to_string(),
            "weno" => self.weno = parse_num(key, v)?,
            "rk" => self.rk = Some(parse_num(key, v)?),
            "flux" => self.flux = Some(v.parse()?),
            "grid" => {
                // "N", "AxBxC" or "A,B,C"
                let dims = if v.contains('x') { parse_ladder(key, v)? } else { vec![] };
                let g = match (dims.as_slice(), parse_list(key, v).ok().as_deref()) {
                    ([g], _) => *g,
                    (_, Some([n])) => [*n; 3],
                    (_, Some([a, b, c])) => [*a, *b, *c],
                    _ => return Err(HarnessError::Config(format!("grid needs 1 or 3 counts, got '{v}'"))),
                };
                self.grid = Some(g);
            }
            "grid_ladder" => self.grid_ladder = parse_ladder(key, v)?,
            "cfl" => self.cfl = parse_num(key, v)?,
            "tfinal" | "t_final" => self.t_final = Some(parse_num(key, v)?),
            "conv_order" => self.conv_order = Some(parse_num(key, v)?),
            "out" => self.out = PathBuf::from(v),
            "threads" => self.threads = Some(parse_num(key, v)?),
            "max_steps" => self.max_steps = parse_num(key, v)?,
            other => return Err(HarnessError::Config(format!("unknown option '{other}'"))),
        }
        Ok(())
    }

    /// Apply every `key = value` line of a config text. `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| HarnessError::Config(format!("line {}: expected key = value", ln + 1)))?;
            self.apply(k, v).map_err(|e| HarnessError::Config(format!("line {}: {e}", ln + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        self.apply_text(&text)
    }

    pub fn problem(&self) -> Problem {
        Problem::new(self.problem)
    }

    pub fn method_kind(&self) -> Result<MethodKind> {
        match self.method.as_str() {
            "classical" => match self.conv_order {
                None => Ok(MethodKind::Classical),
                Some(_) => Err(HarnessError::Config("--conv-order applies to the modified method only".into())),
            },
            "modified" => {
                let conversion = ConversionOrder::from_int(self.conv_order.unwrap_or(6))?;
                Ok(MethodKind::Modified { conversion })
            }
            other => Err(HarnessError::Config(format!("unknown method '{other}' (expected classical or modified)"))),
        }
    }

    pub fn scheme(&self) -> Result<SchemeConfig> {
        let problem = self.problem();
        let flux = self.flux.unwrap_or(problem.flux);
        if flux == FluxKind::Hllc && !problem.system.has_eigensystem() {
            return Err(HarnessError::Config(format!("HLLC flux is not defined for {}", problem.kind.name())));
        }
        Ok(SchemeConfig { method: self.method_kind()?, weno: WenoOrder::from_int(self.weno)?, flux })
    }

    pub fn rk_scheme(&self) -> Result<RkScheme> {
        Ok(RkScheme::of_order(self.rk.unwrap_or(self.weno))?)
    }

    pub fn grid_counts(&self) -> [usize; 3] {
        self.grid.unwrap_or(self.problem().default_grid)
    }

    pub fn final_time(&self) -> f64 {
        self.t_final.unwrap_or(self.problem().t_final)
    }

    pub fn validate(&self) -> Result<()> {
        self.scheme()?;
        self.rk_scheme()?;
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(HarnessError::Config(format!("cfl must be positive, got {}", self.cfl)));
        }
        if let Some(t) = self.t_final {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(HarnessError::Config(format!("tfinal must be non-negative, got {t}")));
            }
        }
        if self.grid_counts().contains(&0) || self.grid_ladder.iter().any(|g| g.contains(&0)) {
            return Err(HarnessError::Config("grid counts must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(HarnessError::Config("threads must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_then_flags() {
        let mut c = RunConfig::default();
        c.apply_text("# comment\nproblem = burgers3d\nweno = 7 # trailing\ngrid = 8,9,10\n\ncfl=0.4\n").unwrap();
        assert_eq!(c.problem, ProblemKind::Burgers3d);
        assert_eq!(c.grid, Some([8, 9, 10]));
        assert_eq!(c.rk_scheme().unwrap().order(), 7);
        c.apply("weno", "5").unwrap();
        assert_eq!(c.weno, 5);
        assert_eq!(c.cfl, 0.4);
        c.apply("grid-ladder", "10,37x37x25").unwrap();
        assert_eq!(c.grid_ladder, vec![[10; 3], [37, 37, 25]]);
        c.validate().unwrap();
    }

    #[test]
    fn bad_combinations_rejected() {
        let mut c = RunConfig::default();
        c.apply("flux", "hllc").unwrap();
        assert!(c.validate().is_err());
        let mut c = RunConfig { method: "classical".into(), ..Default::default() };
        c.apply("conv-order", "4").unwrap();
        assert!(c.validate().is_err());
        assert!(RunConfig::default().apply_text("weno 5").is_err());
        assert!(RunConfig::default().apply("colour", "red").is_err());
    }
}
