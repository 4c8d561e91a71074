//! Finite-difference Hamiltonians and a Sturm-bisection eigensolver for
//! real symmetric tridiagonal matrices.

use crate::error::{QesError, Result};
use crate::function::SmoothFunction1d;
use crate::numkit::Grid1d;

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagSym {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagSym {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(QesError::usage(
                "tridiagonal matrix must have at least one row",
            ));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(QesError::usage(format!(
                "off-diagonal length {} does not match dimension {}",
                offdiag.len(),
                diag.len()
            )));
        }
        Ok(TridiagSym { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Gershgorin bounds containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `lambda` (negative LDLᵀ pivots).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let guard = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            let q_safe = if q.abs() < guard {
                guard.copysign(q)
            } else {
                q
            };
            let e = self.offdiag[i - 1];
            q = (self.diag[i] - lambda) - e * e / q_safe;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th smallest eigenvalue (0-based), by bisection to full precision.
    pub fn eigenvalue(&self, index: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        let pad = 1e-12 * (hi - lo).abs().max(1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Second-order central-difference Hamiltonian `-m d²/dx² + V` with Dirichlet
/// walls one spacing outside the grid ends, so every grid node is an unknown.
pub fn discretize_hamiltonian(
    v: &SmoothFunction1d,
    grid: &Grid1d,
    mass_factor: f64,
) -> Result<TridiagSym> {
    if mass_factor != 0.5 && mass_factor != 1.0 {
        return Err(QesError::usage(format!(
            "mass_factor must be 1/2 or 1, got {mass_factor}"
        )));
    }
    let h = grid.spacing();
    let kinetic = mass_factor / (h * h);
    let diag = grid
        .points()
        .map(|x| {
            let vx = v.value(x);
            if vx.is_finite() {
                Ok(2.0 * kinetic + vx)
            } else {
                Err(QesError::domain(format!("potential {}", v.label()), x))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let offdiag = vec![-kinetic; grid.len() - 1];
    TridiagSym::new(diag, offdiag)
}

/// The `k` smallest eigenvalues in ascending order.
pub fn eigenvalues_lowest(m: &TridiagSym, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > m.dim() {
        return Err(QesError::usage(format!(
            "requested {k} eigenvalues of a {}x{} matrix",
            m.dim(),
            m.dim()
        )));
    }
    Ok((0..k).map(|i| m.eigenvalue(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Interval;
    use crate::jet::Jet;

    #[test]
    fn free_particle_stencil() {
        let v = SmoothFunction1d::new("0", Interval::real_line(), |_| Jet::constant(0.0));
        let g = Grid1d::new(0.0, 2.0, 3).unwrap();
        let m = discretize_hamiltonian(&v, &g, 0.5).unwrap();
        assert_eq!(m.diag(), &[1.0, 1.0, 1.0]);
        assert_eq!(m.offdiag(), &[-0.5, -0.5]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = TridiagSym::new(vec![2.0, 2.0], vec![-1.0]).unwrap();
        let ev = eigenvalues_lowest(&m, 2).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-15);
        assert!((ev[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn one_by_one() {
        let m = TridiagSym::new(vec![-4.25], vec![]).unwrap();
        assert_eq!(eigenvalues_lowest(&m, 1).unwrap(), vec![-4.25]);
    }

    #[test]
    fn k_out_of_range_is_usage_error() {
        let m = TridiagSym::new(vec![1.0, 2.0], vec![0.5]).unwrap();
        assert!(matches!(eigenvalues_lowest(&m, 0), Err(QesError::Usage(_))));
        assert!(matches!(eigenvalues_lowest(&m, 3), Err(QesError::Usage(_))));
    }

    #[test]
    fn non_finite_potential_names_point() {
        let v = SmoothFunction1d::new("1/x", Interval::real_line(), |x| Jet::var(x).recip());
        let g = Grid1d::new(-1.0, 1.0, 5).unwrap();
        match discretize_hamiltonian(&v, &g, 0.5) {
            Err(QesError::Domain { x, .. }) => assert_eq!(x, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_mass_factor() {
        let v = SmoothFunction1d::new("0", Interval::real_line(), |_| Jet::constant(0.0));
        let g = Grid1d::new(0.0, 1.0, 4).unwrap();
        assert!(discretize_hamiltonian(&v, &g, 0.3).is_err());
    }

    #[test]
    fn matches_discrete_laplacian_spectrum() {
        // Dirichlet Laplacian: eigenvalues 2 - 2cos(j*pi/(n+1)).
        let n = 50;
        let m = TridiagSym::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let ev = eigenvalues_lowest(&m, 5).unwrap();
        for (j, e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-14, "{e} vs {exact}");
        }
    }
}
