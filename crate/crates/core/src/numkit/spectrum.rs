use crate::error::Result;
use crate::function::SmoothFunction1d;
use crate::numkit::{discretize_hamiltonian, eigenvalues_lowest, Grid1d};

/// Low-lying eigenvalues after one grid-doubling Richardson step.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub eigenvalues: Vec<f64>,
    /// Finest grid used.
    pub grid_used: Grid1d,
    /// `|E_fine - E_extrapolated|` for each eigenvalue.
    pub refinement_error: Vec<f64>,
}

impl SpectralResult {
    /// Index of the eigenvalue closest to `target`, if within `tol`.
    pub fn find(&self, target: f64, tol: f64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .enumerate()
            .map(|(i, e)| (i, (e - target).abs()))
            .filter(|(_, d)| *d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }
}

/// Solves `(-m d² + V) psi = E psi` with Dirichlet walls on `grid` and on the
/// doubled grid, then removes the `O(h²)` term by Richardson extrapolation.
pub fn lowest_spectrum(
    v: &SmoothFunction1d,
    grid: &Grid1d,
    mass_factor: f64,
    k: usize,
) -> Result<SpectralResult> {
    let fine = grid.doubled();
    let coarse_ev = eigenvalues_lowest(&discretize_hamiltonian(v, grid, mass_factor)?, k)?;
    let fine_ev = eigenvalues_lowest(&discretize_hamiltonian(v, &fine, mass_factor)?, k)?;
    let h1 = grid.spacing().powi(2);
    let h2 = fine.spacing().powi(2);
    let mut eigenvalues = Vec::with_capacity(k);
    let mut refinement_error = Vec::with_capacity(k);
    for (e1, e2) in coarse_ev.iter().zip(&fine_ev) {
        let extrapolated = (h1 * e2 - h2 * e1) / (h1 - h2);
        eigenvalues.push(extrapolated);
        refinement_error.push((e2 - extrapolated).abs());
    }
    Ok(SpectralResult {
        eigenvalues,
        grid_used: fine,
        refinement_error,
    })
}
