use super::{from_frame, to_frame, EquationSystem, MAX_COMPONENTS};
use crate::error::{Error, Result};
use crate::grid::Axis;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxKind {
    /// `1/2 (f(u-) + f(u+)) - alpha/2 (u+ - u-)` with a global `alpha`.
    LaxFriedrichs,
    Hllc,
}

impl std::str::FromStr for FluxKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lf" | "lax-friedrichs" | "laxfriedrichs" => Ok(Self::LaxFriedrichs),
            "hllc" => Ok(Self::Hllc),
            other => Err(Error::Config(format!("unknown flux '{other}' (expected lf or hllc)"))),
        }
    }
}

/// Lax-Friedrichs flux in global component order.
pub fn lax_friedrichs_flux<S: EquationSystem + ?Sized>(
    eqsys: &S,
    um: &[f64],
    up: &[f64],
    axis: Axis,
    alpha: f64,
    out: &mut [f64],
) -> Result<()> {
    if !(alpha >= 0.0) {
        return Err(Error::Flux(format!("Lax-Friedrichs alpha must be non-negative, got {alpha}")));
    }
    let m = eqsys.components();
    let mut fm = [0.0; MAX_COMPONENTS];
    let mut fp = [0.0; MAX_COMPONENTS];
    eqsys.flux(um, axis, &mut fm[..m]);
    eqsys.flux(up, axis, &mut fp[..m]);
    for c in 0..m {
        out[c] = 0.5 * (fm[c] + fp[c]) - 0.5 * alpha * (up[c] - um[c]);
    }
    Ok(())
}

/// HLLC flux in global component order.
pub fn hllc_flux<S: EquationSystem + ?Sized>(eqsys: &S, um: &[f64], up: &[f64], axis: Axis, out: &mut [f64]) -> Result<()> {
    let m = eqsys.components();
    let p = eqsys.frame(axis);
    let mut lm = [0.0; MAX_COMPONENTS];
    let mut lp = [0.0; MAX_COMPONENTS];
    let mut f = [0.0; MAX_COMPONENTS];
    to_frame(&p, um, &mut lm[..m]);
    to_frame(&p, up, &mut lp[..m]);
    eqsys.hllc_normal(&lm[..m], &lp[..m], &mut f[..m])?;
    from_frame(&p, &f[..m], out);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::{Burgers, Euler, EulerState, LinearAdvection, GAMMA};

    #[test]
    fn scalar_physical_fluxes() {
        let mut f = [0.0];
        for axis in Axis::ALL {
            Burgers.flux(&[1.0], axis, &mut f);
            assert_eq!(f[0], 0.5);
            LinearAdvection::default().flux(&[0.3], axis, &mut f);
            assert_eq!(f[0], 0.3);
        }
    }

    #[test]
    fn lf_burgers_jump() {
        let mut f = [0.0];
        lax_friedrichs_flux(&Burgers, &[0.0], &[1.0], Axis::X, 1.0, &mut f).unwrap();
        assert_eq!(f[0], -0.25);
        assert!(lax_friedrichs_flux(&Burgers, &[0.0], &[1.0], Axis::X, -1.0, &mut f).is_err());
    }

    #[test]
    fn fluxes_are_consistent() {
        let e = Euler::default();
        let u = EulerState { rho: 0.9, vel: [0.4, -0.3, 1.1], p: 1.7 }.to_conserved(GAMMA);
        for axis in Axis::ALL {
            let mut exact = [0.0; 5];
            e.flux(&u, axis, &mut exact);
            let mut f = [0.0; 5];
            lax_friedrichs_flux(&e, &u, &u, axis, 3.0, &mut f).unwrap();
            assert_eq!(f, exact);
            hllc_flux(&e, &u, &u, axis, &mut f).unwrap();
            for c in 0..5 {
                assert!((f[c] - exact[c]).abs() <= 1e-14 * exact[c].abs().max(1.0));
            }
        }
    }

    #[test]
    fn hllc_unsupported_for_scalars() {
        let mut f = [0.0];
        assert!(hllc_flux(&Burgers, &[1.0], &[1.0], Axis::X, &mut f).is_err());
    }
}
