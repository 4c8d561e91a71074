use std::fmt;
use std::sync::Arc;

use super::poly::PolyCoeffs;
use super::zmap::{z_function, ZMap};
use crate::error::{QesError, Result};
use crate::function::{Interval, DEFAULT_SINGULARITY_MARGIN};
use crate::numkit::fd_second;
use crate::susy::{gauge_data, potential_v, PotentialRoute, QesModel};

type CoeffFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// A coefficient of a [`ZOperator`]: exact polynomial or a numerical rule.
#[derive(Clone)]
pub enum Coefficient {
    Poly(PolyCoeffs),
    Rule(CoeffFn),
}

impl Coefficient {
    pub fn rule(f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static) -> Self {
        Coefficient::Rule(Arc::new(f))
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        match self {
            Coefficient::Poly(p) => Ok(p.eval(z)),
            Coefficient::Rule(f) => f(z),
        }
    }

    pub fn as_poly(&self) -> Option<&PolyCoeffs> {
        match self {
            Coefficient::Poly(p) => Some(p),
            Coefficient::Rule(_) => None,
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Poly(p) => write!(f, "Poly({p})"),
            Coefficient::Rule(_) => f.write_str("Rule(<fn>)"),
        }
    }
}

/// `q2(z) d²/dz² + q1(z) d/dz + q0(z)` on `z_domain`.
#[derive(Debug, Clone)]
pub struct ZOperator {
    pub q2: Coefficient,
    pub q1: Coefficient,
    pub q0: Coefficient,
    pub z_domain: Interval,
}

impl ZOperator {
    pub fn coefficients_at(&self, z: f64) -> Result<(f64, f64, f64)> {
        if !self.z_domain.contains(z) {
            return Err(QesError::Range {
                value: z,
                lo: self.z_domain.lo,
                hi: self.z_domain.hi,
            });
        }
        Ok((self.q2.eval(z)?, self.q1.eval(z)?, self.q0.eval(z)?))
    }

    /// `(T f)(z)` given `f`, `f'`, `f''` at `z`.
    pub fn apply_values(&self, z: f64, f: f64, df: f64, d2f: f64) -> Result<f64> {
        let (q2, q1, q0) = self.coefficients_at(z)?;
        Ok(q2 * d2f + q1 * df + q0 * f)
    }

    pub fn apply_poly(&self, p: &PolyCoeffs, z: f64) -> Result<f64> {
        let d = p.derivative();
        self.apply_values(z, p.eval(z), d.eval(z), d.derivative().eval(z))
    }
}

/// The gauge-transformed Hamiltonian in the variable `z`:
/// `q2 = −2ε²z²/W₊(x(z))²`, `q1 = εz`, `q0 = 0`.
pub fn gauge_operator_t(model: &QesModel, zmap: &ZMap) -> ZOperator {
    let eps = model.epsilon();
    let zm = zmap.clone();
    let wp = model.w_plus().clone();
    let q2 = Coefficient::rule(move |z| {
        let x = zm.x_of_z(z)?;
        let w = wp.checked_value(x)?;
        Ok(-2.0 * eps * eps * z * z / (w * w))
    });
    ZOperator {
        q2,
        q1: Coefficient::Poly(PolyCoeffs::new(vec![0.0, eps])),
        q0: Coefficient::Poly(PolyCoeffs::zero()),
        z_domain: zmap.z_range(),
    }
}

/// Largest `|H[η·f(z)]/η − (T f)(z)|` over the probes, with `H = −m d² + V`
/// differentiated by a five-point stencil.
pub fn gauge_conjugation_check(model: &QesModel, f: &PolyCoeffs, probes: &[f64]) -> Result<f64> {
    const H: f64 = 1e-3;
    let eta = gauge_data(model)?.prefactor;
    let z = z_function(model);
    let v = potential_v(model, PotentialRoute::WPlus);
    let eps = model.epsilon();
    let (df, d2f) = (f.derivative(), f.derivative().derivative());
    let mut worst = 0.0f64;
    for &x in probes {
        let span = Interval {
            lo: x - 2.0 * H,
            hi: x + 2.0 * H,
        };
        v.check_window(&span, DEFAULT_SINGULARITY_MARGIN)?;
        let g = |t: f64| eta.value(t) * f.eval(z.value(t));
        let eta_x = eta.checked_value(x)?;
        let lhs = (-model.mass_factor() * fd_second(g, x, H) + v.checked_value(x)? * g(x)) / eta_x;
        let zx = z.checked_value(x)?;
        let w = model.w_plus().checked_value(x)?;
        let q2 = -2.0 * eps * eps * zx * zx / (w * w);
        let rhs = q2 * d2f.eval(zx) + eps * zx * df.eval(zx);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}
