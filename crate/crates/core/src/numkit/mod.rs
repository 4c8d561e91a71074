//! Numerical kernels: grids, finite-difference Hamiltonians, the Sturm
//! bisection eigensolver, quadrature, RK4, interpolation, least-squares
//! fitting and terminating hypergeometric series.

mod fit;
mod grid;
mod hypergeometric;
mod interp;
mod ode;
mod quadrature;
mod spectrum;
mod tridiag;

pub use fit::{chebyshev_interior_extrema, chebyshev_nodes, horner, polyfit};
pub use grid::Grid1d;
pub use hypergeometric::{hyp2f1_poly, hyp2f1_poly_jet};
pub use interp::MonotoneCubic;
pub use ode::{integrate_ode_1st, OdeOutcome, Trajectory};
pub use quadrature::{cumulative_integral, integrate, integrate_samples};
pub use spectrum::{lowest_spectrum, SpectralResult};
pub use tridiag::{discretize_hamiltonian, eigenvalues_lowest, TridiagSym};

/// Five-point central first derivative.
pub fn fd_first(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Five-point central second derivative.
pub fn fd_second(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_point_stencils() {
        let x = 0.3;
        assert!((fd_first(f64::sin, x, 1e-3) - x.cos()).abs() < 1e-12);
        assert!((fd_second(f64::sin, x, 1e-3) + x.sin()).abs() < 1e-9);
    }
}
