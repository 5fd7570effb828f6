use super::{EquationSystem, Eigensystem, MAX_COMPONENTS};
use crate::error::{Error, Result};
use crate::grid::Axis;

pub const GAMMA: f64 = 1.4;

/// Ideal-gas Euler equations, conserved variables `(rho, rho u, rho v, rho w, E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler {
    pub gamma: f64,
}

impl Default for Euler {
    fn default() -> Self {
        Self { gamma: GAMMA }
    }
}

/// Primitive view of an Euler state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerState {
    pub rho: f64,
    pub vel: [f64; 3],
    pub p: f64,
}

impl EulerState {
    pub fn from_conserved(u: &[f64], gamma: f64) -> Self {
        let rho = u[0];
        let vel = [u[1] / rho, u[2] / rho, u[3] / rho];
        let ke = 0.5 * (u[1] * vel[0] + u[2] * vel[1] + u[3] * vel[2]);
        Self { rho, vel, p: (gamma - 1.0) * (u[4] - ke) }
    }

    pub fn to_conserved(&self, gamma: f64) -> [f64; 5] {
        let [u, v, w] = self.vel;
        let e = self.p / (gamma - 1.0) + 0.5 * self.rho * (u * u + v * v + w * w);
        [self.rho, self.rho * u, self.rho * v, self.rho * w, e]
    }

    pub fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }
}

impl Euler {
    #[inline]
    pub fn pressure(&self, u: &[f64]) -> f64 {
        // the last two momenta are grouped so swapping them is exact
        let ke = 0.5 * (u[1] * u[1] + (u[2] * u[2] + u[3] * u[3])) / u[0];
        (self.gamma - 1.0) * (u[4] - ke)
    }

    #[inline]
    pub fn is_admissible(&self, u: &[f64]) -> bool {
        u.iter().all(|v| v.is_finite()) && u[0] > 0.0 && self.pressure(u) > 0.0
    }
}

impl EquationSystem for Euler {
    fn name(&self) -> &'static str {
        "euler"
    }

    #[inline]
    fn components(&self) -> usize {
        5
    }

    fn component_names(&self) -> Vec<String> {
        ["rho", "mom_x", "mom_y", "mom_z", "energy"].map(String::from).to_vec()
    }

    #[inline]
    fn frame(&self, axis: Axis) -> [usize; MAX_COMPONENTS] {
        match axis {
            Axis::X => [0, 1, 2, 3, 4],
            Axis::Y => [0, 2, 1, 3, 4],
            Axis::Z => [0, 3, 1, 2, 4],
        }
    }

    #[inline]
    fn normal_flux(&self, u: &[f64], _axis: Axis, out: &mut [f64]) {
        let un = u[1] / u[0];
        let p = self.pressure(u);
        out[0] = u[1];
        out[1] = u[1] * un + p;
        out[2] = u[2] * un;
        out[3] = u[3] * un;
        out[4] = un * (u[4] + p);
    }

    #[inline]
    fn normal_wavespeed(&self, u: &[f64], _axis: Axis) -> f64 {
        let un = u[1] / u[0];
        let c = (self.gamma * self.pressure(u) / u[0]).sqrt();
        un.abs() + c
    }

    #[inline]
    fn has_eigensystem(&self) -> bool {
        true
    }

    #[inline]
    fn normal_eigensystem(&self, s: &[f64]) -> Result<Eigensystem> {
        let rho = s[0];
        let p = self.pressure(s);
        if !(rho > 0.0 && p > 0.0) {
            return Err(Error::InvalidState(format!("averaging state has rho = {rho:e}, p = {p:e}")));
        }
        let gm1 = self.gamma - 1.0;
        let (u, v, w) = (s[1] / rho, s[2] / rho, s[3] / rho);
        let q2 = u * u + (v * v + w * w);
        let c2 = self.gamma * p / rho;
        let c = c2.sqrt();
        let h = (s[4] + p) / rho;
        let b1 = gm1 / c2;
        let b2 = 0.5 * b1 * q2;
        let ic = 1.0 / c;
        let right = [
            [1.0, 1.0, 0.0, 0.0, 1.0],
            [u - c, u, 0.0, 0.0, u + c],
            [v, v, 1.0, 0.0, v],
            [w, w, 0.0, 1.0, w],
            [h - u * c, 0.5 * q2, v, w, h + u * c],
        ];
        let left = [
            [0.5 * (b2 + u * ic), -0.5 * (b1 * u + ic), -0.5 * b1 * v, -0.5 * b1 * w, 0.5 * b1],
            [1.0 - b2, b1 * u, b1 * v, b1 * w, -b1],
            [-v, 0.0, 1.0, 0.0, 0.0],
            [-w, 0.0, 0.0, 1.0, 0.0],
            [0.5 * (b2 - u * ic), -0.5 * (b1 * u - ic), -0.5 * b1 * v, -0.5 * b1 * w, 0.5 * b1],
        ];
        Ok(Eigensystem { values: [u - c, u, u, u, u + c], left, right })
    }

    #[inline]
    fn hllc_normal(&self, um: &[f64], up: &[f64], out: &mut [f64]) -> Result<()> {
        for (side, s) in [("left", um), ("right", up)] {
            if !self.is_admissible(s) {
                return Err(Error::Flux(format!(
                    "HLLC {side} state inadmissible: rho = {:e}, p = {:e}",
                    s[0],
                    self.pressure(s)
                )));
            }
        }
        let g = self.gamma;
        let (rl, rr) = (um[0], up[0]);
        let (ul, ur) = (um[1] / rl, up[1] / rr);
        let (pl, pr) = (self.pressure(um), self.pressure(up));
        let (cl, cr) = ((g * pl / rl).sqrt(), (g * pr / rr).sqrt());
        let sl = (ul - cl).min(ur - cr);
        let sr = (ul + cl).max(ur + cr);
        if !(sl < sr) {
            return Err(Error::Flux(format!("degenerate HLLC wave speeds S_L = {sl:e}, S_R = {sr:e}")));
        }
        let ml = rl * (sl - ul);
        let mr = rr * (sr - ur);
        let s_star = (pr - pl + ul * ml - ur * mr) / (ml - mr);
        if !s_star.is_finite() {
            return Err(Error::Flux("non-finite HLLC contact speed".into()));
        }
        if sl >= 0.0 {
            self.normal_flux(um, Axis::X, out);
        } else if sr <= 0.0 {
            self.normal_flux(up, Axis::X, out);
        } else {
            let (u, speed, un, p, m) = if s_star >= 0.0 { (um, sl, ul, pl, ml) } else { (up, sr, ur, pr, mr) };
            self.normal_flux(u, Axis::X, out);
            let scale = m / (speed - s_star);
            let rho = u[0];
            let star = [
                scale,
                scale * s_star,
                scale * u[2] / rho,
                scale * u[3] / rho,
                scale * (u[4] / rho + (s_star - un) * (s_star + p / m)),
            ];
            for c in 0..5 {
                out[c] += speed * (star[c] - u[c]);
            }
        }
        Ok(())
    }

    #[inline]
    fn momentum_component(&self, axis: Axis) -> Option<usize> {
        Some(1 + axis.index())
    }

    #[inline]
    fn validate(&self, u: &[f64]) -> Result<()> {
        if u.len() != 5 {
            return Err(Error::InvalidState(format!("Euler state needs 5 components, got {}", u.len())));
        }
        if let Some(c) = u.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidState(format!("component {c} is not finite")));
        }
        if u[0] <= 0.0 {
            return Err(Error::InvalidState(format!("density {:e} is not positive", u[0])));
        }
        let p = self.pressure(u);
        if p <= 0.0 {
            return Err(Error::InvalidState(format!("pressure {p:e} is not positive")));
        }
        Ok(())
    }
}
