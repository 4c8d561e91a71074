use super::zmap::ZMap;
use crate::error::{QesError, Result};
use crate::function::Interval;
use crate::numkit::{chebyshev_interior_extrema, chebyshev_nodes, horner, polyfit};
use crate::susy::QesModel;

pub const DEFAULT_EQUIVALENCE_TOL: f64 = 1e-6;
pub const EQUIVALENCE_FIT_NODES: usize = 32;

/// Result of testing whether `z²/W₊(x(z))²` is a polynomial of degree ≤ 4.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticVerdict {
    pub equivalent: bool,
    /// Residual within `[tol, 100·tol]`.
    pub borderline: bool,
    /// Fitted `c₀ … c₄` of `z²/W₊² ≈ Σ c_j z^j`.
    pub c: [f64; 5],
    /// Sup-norm residual on held-out points relative to sup `|g|`.
    pub fit_residual: f64,
    pub fit_domain: Interval,
}

pub fn quartic_equivalence_test(model: &QesModel, zmap: &ZMap, tol: f64) -> Result<QuarticVerdict> {
    if !(tol > 0.0) {
        return Err(QesError::usage(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let dom = zmap.z_range();
    if !(dom.width() > 0.0) {
        return Err(QesError::Degenerate("z-map range has zero width".into()));
    }
    let g = |z: f64| -> Result<f64> {
        let w = model.w_plus().checked_value(zmap.x_of_z(z)?)?;
        Ok(z * z / (w * w))
    };
    let nodes = chebyshev_nodes(&dom, EQUIVALENCE_FIT_NODES);
    let values = nodes.iter().map(|&z| g(z)).collect::<Result<Vec<_>>>()?;
    let fit = polyfit(&nodes, &values, 4, &dom)?;
    let (mut err, mut scale) = (0.0f64, 0.0f64);
    for z in chebyshev_interior_extrema(&dom, EQUIVALENCE_FIT_NODES) {
        let gz = g(z)?;
        err = err.max((gz - horner(&fit, z)).abs());
        scale = scale.max(gz.abs());
    }
    if scale == 0.0 {
        return Err(QesError::Degenerate(
            "z²/W₊² vanishes on the sampled range".into(),
        ));
    }
    let fit_residual = err / scale;
    let mut c = [0.0; 5];
    c.copy_from_slice(&fit[..5]);
    Ok(QuarticVerdict {
        equivalent: fit_residual < tol,
        borderline: fit_residual >= tol && fit_residual <= 100.0 * tol,
        c,
        fit_residual,
        fit_domain: dom,
    })
}
