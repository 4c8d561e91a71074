//! Least-squares polynomial fitting on Chebyshev samples.

use nalgebra::{DMatrix, DVector};

use crate::error::{QesError, Result};
use crate::function::Interval;

/// First-kind Chebyshev nodes mapped onto `domain`, in increasing order.
pub fn chebyshev_nodes(domain: &Interval, m: usize) -> Vec<f64> {
    let (mid, half) = (domain.midpoint(), 0.5 * domain.width());
    let mut nodes: Vec<f64> = (0..m)
        .map(|j| mid + half * (std::f64::consts::PI * (j as f64 + 0.5) / m as f64).cos())
        .collect();
    nodes.reverse();
    nodes
}

/// Second-kind (extrema) nodes strictly inside `domain`; they interleave the
/// first-kind nodes of the same count and serve as held-out samples.
pub fn chebyshev_interior_extrema(domain: &Interval, m: usize) -> Vec<f64> {
    let (mid, half) = (domain.midpoint(), 0.5 * domain.width());
    let mut nodes: Vec<f64> = (1..m)
        .map(|j| mid + half * (std::f64::consts::PI * j as f64 / m as f64).cos())
        .collect();
    nodes.reverse();
    nodes
}

/// Horner evaluation of `Σ c_k z^k`.
pub fn horner(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c)
}

/// Least-squares fit of `values` at `points` by a polynomial of `degree`,
/// returned as monomial coefficients in the original variable.
///
/// The solve runs in the Chebyshev basis on `domain` (well conditioned) and
/// is converted to monomials afterwards.
pub fn polyfit(
    points: &[f64],
    values: &[f64],
    degree: usize,
    domain: &Interval,
) -> Result<Vec<f64>> {
    let m = points.len();
    if m != values.len() || m <= degree {
        return Err(QesError::Degenerate(format!(
            "{m} samples cannot determine a degree-{degree} fit"
        )));
    }
    let (mid, half) = (domain.midpoint(), 0.5 * domain.width());
    let mut a = DMatrix::<f64>::zeros(m, degree + 1);
    for (i, &z) in points.iter().enumerate() {
        let t = (z - mid) / half;
        let (mut t_prev, mut t_cur) = (1.0, t);
        a[(i, 0)] = 1.0;
        if degree >= 1 {
            a[(i, 1)] = t;
        }
        for k in 2..=degree {
            let t_next = 2.0 * t * t_cur - t_prev;
            a[(i, k)] = t_next;
            t_prev = t_cur;
            t_cur = t_next;
        }
    }
    let b = DVector::from_column_slice(values);
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|s| **s > 1e-12 * smax)
        .count();
    if rank <= degree {
        return Err(QesError::Degenerate(format!(
            "sample points span rank {rank} < {} needed",
            degree + 1
        )));
    }
    let cheb = svd
        .solve(&b, 1e-14 * smax)
        .map_err(|e| QesError::Degenerate(e.to_string()))?;

    // Chebyshev -> monomials in t.
    let mut mono_t = vec![0.0; degree + 1];
    let mut t_prev = vec![1.0];
    let mut t_cur = vec![0.0, 1.0];
    mono_t[0] += cheb[0];
    if degree >= 1 {
        mono_t[1] += cheb[1];
    }
    for k in 2..=degree {
        let mut t_next = vec![0.0; k + 1];
        for (j, c) in t_cur.iter().enumerate() {
            t_next[j + 1] += 2.0 * c;
        }
        for (j, c) in t_prev.iter().enumerate() {
            t_next[j] -= c;
        }
        for (j, c) in t_next.iter().enumerate() {
            mono_t[j] += cheb[k] * c;
        }
        t_prev = t_cur;
        t_cur = t_next;
    }

    // t = (z - mid) / half  ->  monomials in z.
    let mut out = vec![0.0; degree + 1];
    let mut power = vec![1.0]; // coefficients of ((z - mid)/half)^k
    for (k, &ck) in mono_t.iter().enumerate() {
        if k > 0 {
            let mut next = vec![0.0; k + 1];
            for (j, c) in power.iter().enumerate() {
                next[j + 1] += c / half;
                next[j] -= c * mid / half;
            }
            power = next;
        }
        for (j, c) in power.iter().enumerate() {
            out[j] += ck * c;
        }
    }
    Ok(out)
}
