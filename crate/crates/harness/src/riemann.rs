//! Exact solution of the one-dimensional Euler Riemann problem (ideal gas),
//! used as a reference for approximate Riemann fluxes.

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive1 {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl Primitive1 {
    pub fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }

    /// Mass, momentum and energy flux.
    pub fn flux(&self, gamma: f64) -> [f64; 3] {
        let e = self.p / (gamma - 1.0) + 0.5 * self.rho * self.u * self.u;
        [self.rho * self.u, self.rho * self.u * self.u + self.p, self.u * (e + self.p)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactRiemann {
    pub left: Primitive1,
    pub right: Primitive1,
    pub gamma: f64,
    pub p_star: f64,
    pub u_star: f64,
}

impl ExactRiemann {
    pub fn solve(left: Primitive1, right: Primitive1, gamma: f64) -> Result<Self> {
        for s in [left, right] {
            if !(s.rho > 0.0 && s.p > 0.0) {
                return Err(HarnessError::Config(format!("Riemann data must have rho, p > 0, got {s:?}")));
            }
        }
        let (cl, cr) = (left.sound_speed(gamma), right.sound_speed(gamma));
        if 2.0 * (cl + cr) / (gamma - 1.0) <= right.u - left.u {
            return Err(HarnessError::Config("Riemann data generate vacuum".into()));
        }
        let side = |p: f64, s: Primitive1, c: f64| -> (f64, f64) {
            if p > s.p {
                let a = 2.0 / ((gamma + 1.0) * s.rho);
                let b = (gamma - 1.0) / (gamma + 1.0) * s.p;
                let q = (a / (p + b)).sqrt();
                ((p - s.p) * q, q * (1.0 - 0.5 * (p - s.p) / (b + p)))
            } else {
                let r = p / s.p;
                let f = 2.0 * c / (gamma - 1.0) * (r.powf((gamma - 1.0) / (2.0 * gamma)) - 1.0);
                (f, 1.0 / (s.rho * c) * r.powf(-(gamma + 1.0) / (2.0 * gamma)))
            }
        };
        let du = right.u - left.u;
        let pvrs = 0.5 * (left.p + right.p) - 0.125 * du * (left.rho + right.rho) * (cl + cr);
        let mut p = pvrs.max(1e-8);
        for _ in 0..100 {
            let (fl, dl) = side(p, left, cl);
            let (fr, dr) = side(p, right, cr);
            let next = (p - (fl + fr + du) / (dl + dr)).max(1e-12);
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < 1e-15 {
                break;
            }
        }
        let (fl, _) = side(p, left, cl);
        let (fr, _) = side(p, right, cr);
        Ok(Self { left, right, gamma, p_star: p, u_star: 0.5 * (left.u + right.u) + 0.5 * (fr - fl) })
    }

    /// State on the ray `x / t = s`.
    pub fn sample(&self, s: f64) -> Primitive1 {
        let g = self.gamma;
        let g1 = (g - 1.0) / (2.0 * g);
        let g6 = (g - 1.0) / (g + 1.0);
        let (ps, us) = (self.p_star, self.u_star);
        if s <= us {
            let l = self.left;
            let cl = l.sound_speed(g);
            let r = ps / l.p;
            if ps > l.p {
                let sl = l.u - cl * ((g + 1.0) / (2.0 * g) * r + g1).sqrt();
                if s <= sl {
                    l
                } else {
                    Primitive1 { rho: l.rho * (r + g6) / (g6 * r + 1.0), u: us, p: ps }
                }
            } else if s <= l.u - cl {
                l
            } else if s > us - cl * r.powf(g1) {
                Primitive1 { rho: l.rho * r.powf(1.0 / g), u: us, p: ps }
            } else {
                let b = 2.0 / (g + 1.0) + g6 / cl * (l.u - s);
                Primitive1 {
                    rho: l.rho * b.powf(2.0 / (g - 1.0)),
                    u: 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * l.u + s),
                    p: l.p * b.powf(2.0 * g / (g - 1.0)),
                }
            }
        } else {
            let rt = self.right;
            let cr = rt.sound_speed(g);
            let r = ps / rt.p;
            if ps > rt.p {
                let sr = rt.u + cr * ((g + 1.0) / (2.0 * g) * r + g1).sqrt();
                if s >= sr {
                    rt
                } else {
                    Primitive1 { rho: rt.rho * (r + g6) / (g6 * r + 1.0), u: us, p: ps }
                }
            } else if s >= rt.u + cr {
                rt
            } else if s <= us + cr * r.powf(g1) {
                Primitive1 { rho: rt.rho * r.powf(1.0 / g), u: us, p: ps }
            } else {
                let b = 2.0 / (g + 1.0) - g6 / cr * (rt.u - s);
                Primitive1 {
                    rho: rt.rho * b.powf(2.0 / (g - 1.0)),
                    u: 2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * rt.u + s),
                    p: rt.p * b.powf(2.0 * g / (g - 1.0)),
                }
            }
        }
    }

    /// Godunov flux: the physical flux of the state at `x / t = 0`.
    pub fn interface_flux(&self) -> [f64; 3] {
        self.sample(0.0).flux(self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sod() -> ExactRiemann {
        ExactRiemann::solve(
            Primitive1 { rho: 1.0, u: 0.0, p: 1.0 },
            Primitive1 { rho: 0.125, u: 0.0, p: 0.1 },
            1.4,
        )
        .unwrap()
    }

    #[test]
    fn sod_star_region() {
        let r = sod();
        assert!((r.p_star - 0.30313).abs() < 1e-5, "{}", r.p_star);
        assert!((r.u_star - 0.92745).abs() < 1e-5, "{}", r.u_star);
        // star densities 0.42632 (left of contact) and 0.26557 (right)
        assert!((r.sample(0.9).rho - 0.42632).abs() < 1e-5);
        assert!((r.sample(0.95).rho - 0.26557).abs() < 1e-5);
    }

    #[test]
    fn far_field_is_initial_data() {
        let r = sod();
        assert_eq!(r.sample(-10.0), r.left);
        assert_eq!(r.sample(10.0), r.right);
    }

    #[test]
    fn identical_states_give_physical_flux() {
        let s = Primitive1 { rho: 0.7, u: 0.3, p: 2.0 };
        let r = ExactRiemann::solve(s, s, 1.4).unwrap();
        let (f, g) = (r.interface_flux(), s.flux(1.4));
        for c in 0..3 {
            assert!((f[c] - g[c]).abs() < 1e-12);
        }
    }

    #[test]
    fn vacuum_rejected() {
        let l = Primitive1 { rho: 1.0, u: -20.0, p: 0.1 };
        let r = Primitive1 { rho: 1.0, u: 20.0, p: 0.1 };
        assert!(ExactRiemann::solve(l, r, 1.4).is_err());
    }
}
