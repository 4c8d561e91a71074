use std::fmt;

use nalgebra::{DMatrix, DVector};

use super::generators::{BasisElement, PolyDiffOp};
use super::operator::{Coefficient, ZOperator};
use super::poly::PolyCoeffs;
use crate::error::{QesError, Result};
use crate::function::Interval;
use crate::numkit::{chebyshev_nodes, polyfit};

/// Degree bounds of the quadratic span: `q2 ≤ z⁴`, `q1 ≤ z³`, `q0 ≤ z²`.
const Q2_LEN: usize = 5;
const Q1_LEN: usize = 4;
const Q0_LEN: usize = 3;
const ROWS: usize = Q2_LEN + Q1_LEN + Q0_LEN;

/// Number of samples used for fitting and for round-trip checks.
pub const DECOMPOSITION_SAMPLES: usize = 32;

/// The ten basis products satisfy `j₀² + j₊j₋ − j₀ = N²/4 + N/2`, so one
/// linear condition is needed to make the coefficients unique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CasimirGauge {
    /// No constant term.
    #[default]
    ZeroConstant,
    /// No `j₊j₋` term.
    ZeroRaiseLower,
}

impl CasimirGauge {
    fn pinned(self) -> BasisElement {
        match self {
            CasimirGauge::ZeroConstant => BasisElement::Identity,
            CasimirGauge::ZeroRaiseLower => BasisElement::PlusMinus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecomposeOptions {
    pub gauge: CasimirGauge,
    /// Degree of the least-squares fit used when `q2` is not a polynomial.
    pub fit_degree: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            gauge: CasimirGauge::ZeroConstant,
            fit_degree: 6,
        }
    }
}

/// `T = Σ c_b · b + remainder`, with `b` running over [`BasisElement::ALL`].
#[derive(Debug, Clone)]
pub struct Sl2Decomposition {
    pub n: u32,
    pub coefficients: [f64; 10],
    /// `T − combination`: `(q2 − quartic part) d²` plus any unmatched lower terms.
    pub remainder: ZOperator,
    /// Monomials of the polynomial `q2` above `z⁴`.
    pub remainder_q2: PolyCoeffs,
    pub gauge: CasimirGauge,
    pub fit_domain: Interval,
}

fn basis_columns(n: u32) -> Vec<[f64; ROWS]> {
    BasisElement::ALL
        .iter()
        .map(|b| {
            let op = b.operator(n);
            let mut col = [0.0; ROWS];
            let (q2, q1, q0) = (op.order_coeff(2), op.order_coeff(1), op.order_coeff(0));
            for k in 0..Q2_LEN {
                col[k] = q2.coeff(k);
            }
            for k in 0..Q1_LEN {
                col[Q2_LEN + k] = q1.coeff(k);
            }
            for k in 0..Q0_LEN {
                col[Q2_LEN + Q1_LEN + k] = q0.coeff(k);
            }
            col
        })
        .collect()
}

fn row_name(r: usize) -> String {
    if r < Q2_LEN {
        format!("q2[z^{r}]")
    } else if r < Q2_LEN + Q1_LEN {
        format!("q1[z^{}]", r - Q2_LEN)
    } else {
        format!("q0[z^{}]", r - Q2_LEN - Q1_LEN)
    }
}

fn polynomial_part(c: &Coefficient, which: &str) -> Result<PolyCoeffs> {
    c.as_poly().cloned().ok_or_else(|| QesError::Decomposition {
        reason: format!("{which} must be a polynomial"),
        offending: vec![(which.to_string(), f64::NAN)],
    })
}

pub fn decompose_operator(t: &ZOperator, n: u32, fit_domain: Interval) -> Result<Sl2Decomposition> {
    decompose_operator_with(t, n, fit_domain, &DecomposeOptions::default())
}

pub fn decompose_operator_with(
    t: &ZOperator,
    n: u32,
    fit_domain: Interval,
    opts: &DecomposeOptions,
) -> Result<Sl2Decomposition> {
    if opts.gauge == CasimirGauge::ZeroConstant && n == 0 {
        return Err(QesError::usage(
            "for N = 0 the Casimir relation has no constant term; use the zero-j+j- gauge",
        ));
    }
    if !t.z_domain.contains_interval(&fit_domain) {
        return Err(QesError::usage(format!(
            "fit domain {fit_domain} not inside the operator domain {}",
            t.z_domain
        )));
    }
    let q1 = polynomial_part(&t.q1, "q1")?;
    let q0 = polynomial_part(&t.q0, "q0")?;
    let q2 = match &t.q2 {
        Coefficient::Poly(p) => p.clone(),
        Coefficient::Rule(f) => {
            let nodes =
                chebyshev_nodes(&fit_domain, DECOMPOSITION_SAMPLES.max(opts.fit_degree + 8));
            let vals = nodes.iter().map(|&z| f(z)).collect::<Result<Vec<_>>>()?;
            PolyCoeffs::new(polyfit(&nodes, &vals, opts.fit_degree, &fit_domain)?)
        }
    };
    let scale = q2
        .max_abs_coeff()
        .max(q1.max_abs_coeff())
        .max(q0.max_abs_coeff())
        .max(f64::MIN_POSITIVE);

    let mut offending = Vec::new();
    for (k, c) in q1.coeffs.iter().enumerate().skip(Q1_LEN) {
        if c.abs() > 1e-12 * scale {
            offending.push((format!("q1[z^{k}]"), *c));
        }
    }
    for (k, c) in q0.coeffs.iter().enumerate().skip(Q0_LEN) {
        if c.abs() > 1e-12 * scale {
            offending.push((format!("q0[z^{k}]"), *c));
        }
    }
    if !offending.is_empty() {
        return Err(QesError::Decomposition {
            reason: "lower-order coefficients exceed the quadratic span".into(),
            offending,
        });
    }

    let mut target = [0.0; ROWS];
    for k in 0..Q2_LEN {
        target[k] = q2.coeff(k);
    }
    for k in 0..Q1_LEN {
        target[Q2_LEN + k] = q1.coeff(k);
    }
    for k in 0..Q0_LEN {
        target[Q2_LEN + Q1_LEN + k] = q0.coeff(k);
    }
    let cols = basis_columns(n);
    let mut a = DMatrix::<f64>::zeros(ROWS + 1, 10);
    for (j, col) in cols.iter().enumerate() {
        for r in 0..ROWS {
            a[(r, j)] = col[r];
        }
    }
    a[(ROWS, opts.gauge.pinned().index())] = 1.0;
    let mut b = DVector::<f64>::zeros(ROWS + 1);
    for r in 0..ROWS {
        b[r] = target[r];
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|s| **s > 1e-12 * smax)
        .count();
    if rank < 10 {
        return Err(QesError::Degenerate(format!(
            "gauge condition leaves the basis rank-deficient (rank {rank})"
        )));
    }
    let x = svd
        .solve(&b, 1e-14 * smax)
        .map_err(|e| QesError::Degenerate(e.to_string()))?;
    let resid = &a * &x - &b;
    let offending: Vec<(String, f64)> = (0..ROWS)
        .filter(|&r| resid[r].abs() > 1e-9 * scale)
        .map(|r| (row_name(r), target[r]))
        .collect();
    if !offending.is_empty() {
        return Err(QesError::Decomposition {
            reason: "operator is not a quadratic combination of the generators".into(),
            offending,
        });
    }
    let mut coefficients = [0.0; 10];
    coefficients.copy_from_slice(x.as_slice());

    let comb = combination(&coefficients, n);
    let quartic = PolyCoeffs::new((0..Q2_LEN).map(|k| q2.coeff(k)).collect());
    let remainder_q2 = PolyCoeffs::new(
        (0..q2.coeffs.len())
            .map(|k| if k < Q2_LEN { 0.0 } else { q2.coeffs[k] })
            .collect(),
    )
    .trimmed();
    let t_q2 = t.q2.clone();
    let remainder = ZOperator {
        q2: Coefficient::rule(move |z| Ok(t_q2.eval(z)? - quartic.eval(z))),
        q1: Coefficient::Poly((&q1 - &comb.order_coeff(1)).trimmed()),
        q0: Coefficient::Poly((&q0 - &comb.order_coeff(0)).trimmed()),
        z_domain: t.z_domain,
    };
    Ok(Sl2Decomposition {
        n,
        coefficients,
        remainder,
        remainder_q2,
        gauge: opts.gauge,
        fit_domain,
    })
}

fn combination(coefficients: &[f64; 10], n: u32) -> PolyDiffOp {
    BasisElement::ALL
        .iter()
        .zip(coefficients)
        .fold(PolyDiffOp::default(), |acc, (b, c)| {
            acc.add(&b.operator(n).scale(*c))
        })
}

impl Sl2Decomposition {
    pub fn coefficient(&self, b: BasisElement) -> f64 {
        self.coefficients[b.index()]
    }

    /// The generator combination as an exact polynomial-coefficient operator.
    pub fn combination(&self) -> PolyDiffOp {
        combination(&self.coefficients, self.n)
    }

    /// Chebyshev samples on the fit domain.
    pub fn check_samples(&self) -> Vec<f64> {
        chebyshev_nodes(&self.fit_domain, DECOMPOSITION_SAMPLES)
    }

    /// Largest relative mismatch between `T z^k` and
    /// `(combination + remainder_q2 d²) z^k` for `k ≤ max_k`.
    pub fn round_trip_defect(&self, t: &ZOperator, max_k: usize) -> Result<f64> {
        let comb = self.combination();
        let samples = self.check_samples();
        let op_scale = operator_scale(t, &samples)?;
        let mut worst = 0.0f64;
        for k in 0..=max_k {
            let p = PolyCoeffs::monomial(k, 1.0);
            let cp = comb.apply(&p);
            let d2 = p.derivative().derivative();
            let (mut err, mut mag) = (0.0f64, 0.0f64);
            for &z in &samples {
                let exact = t.apply_poly(&p, z)?;
                let recon = cp.eval(z) + self.remainder_q2.eval(z) * d2.eval(z);
                err = err.max((exact - recon).abs());
                mag = mag.max(exact.abs());
            }
            let denom = if mag > 0.0 { mag } else { op_scale };
            worst = worst.max(err / denom);
        }
        Ok(worst)
    }

    /// Largest `|R z^k|` for `k ≤ N`, relative to the operator's coefficient size.
    pub fn remainder_annihilation_defect(&self, t: &ZOperator) -> Result<f64> {
        let samples = self.check_samples();
        let op_scale = operator_scale(t, &samples)?;
        let mut worst = 0.0f64;
        for k in 0..=self.n as usize {
            let p = PolyCoeffs::monomial(k, 1.0);
            for &z in &samples {
                worst = worst.max(self.remainder.apply_poly(&p, z)?.abs());
            }
        }
        Ok(worst / op_scale)
    }

    /// Human-readable `c·b + …` form, omitting coefficients below `cutoff`.
    pub fn render(&self, cutoff: f64) -> String {
        let mut out = String::new();
        for b in BasisElement::ALL {
            let c = self.coefficient(b);
            if c.abs() <= cutoff {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("({c:.10}) {b}"));
        }
        if self.remainder_q2.max_abs_coeff() > cutoff {
            out.push_str(&format!(" + ({}) d^2/dz^2", self.remainder_q2));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn operator_scale(t: &ZOperator, samples: &[f64]) -> Result<f64> {
    let mut s = 0.0f64;
    for &z in samples {
        let (a, b, c) = t.coefficients_at(z)?;
        s = s.max(a.abs() + b.abs() + c.abs());
    }
    Ok(s.max(f64::MIN_POSITIVE))
}

impl fmt::Display for Sl2Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(1e-12))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_op(q2: Vec<f64>, q1: Vec<f64>, q0: Vec<f64>) -> ZOperator {
        ZOperator {
            q2: Coefficient::Poly(PolyCoeffs::new(q2)),
            q1: Coefficient::Poly(PolyCoeffs::new(q1)),
            q0: Coefficient::Poly(PolyCoeffs::new(q0)),
            z_domain: Interval::new(-2.0, 2.0).unwrap(),
        }
    }

    fn dom() -> Interval {
        Interval::new(0.1, 0.9).unwrap()
    }

    #[test]
    fn single_generators_recovered() {
        // j₊² for N = 1 is z⁴d².
        let t = poly_op(vec![0.0, 0.0, 0.0, 0.0, 1.0], vec![], vec![]);
        let d = decompose_operator(&t, 1, dom()).unwrap();
        assert!((d.coefficient(BasisElement::PlusPlus) - 1.0).abs() < 1e-12);
        for b in BasisElement::ALL
            .iter()
            .filter(|b| **b != BasisElement::PlusPlus)
        {
            assert!(d.coefficient(*b).abs() < 1e-12, "{b}");
        }
    }

    #[test]
    fn zero_constant_gauge_tracks_casimir() {
        // The identity alone must be expressed through the Casimir relation.
        let t = poly_op(vec![], vec![], vec![0.75]);
        let d = decompose_operator(&t, 1, dom()).unwrap();
        assert!(d.coefficient(BasisElement::Identity).abs() < 1e-14);
        assert!((d.coefficient(BasisElement::ZeroZero) - 1.0).abs() < 1e-12);
        assert!((d.coefficient(BasisElement::PlusMinus) - 1.0).abs() < 1e-12);
        assert!((d.coefficient(BasisElement::Zero) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn gauges_differ_by_casimir_multiple() {
        let t = poly_op(
            vec![0.3, -0.1, 0.7, 0.2, -1.1],
            vec![0.0, 0.4, -0.2, 0.5],
            vec![0.0, 0.2, 0.0],
        );
        let a = decompose_operator(&t, 1, dom());
        // q0 = 0.2 z with q1 = ... is outside P(1)-type span: must fail with a report.
        assert!(matches!(a, Err(QesError::Decomposition { .. })));
        let t = poly_op(vec![0.3, -0.1, 0.7, 0.2, -1.1], vec![0.0, 0.4], vec![]);
        let a = decompose_operator(&t, 1, dom()).unwrap();
        let opts = DecomposeOptions {
            gauge: CasimirGauge::ZeroRaiseLower,
            ..Default::default()
        };
        let b = decompose_operator_with(&t, 1, dom(), &opts).unwrap();
        let shift = a.coefficient(BasisElement::PlusMinus);
        assert!(
            (b.coefficient(BasisElement::ZeroZero)
                - (a.coefficient(BasisElement::ZeroZero) - shift))
                .abs()
                < 1e-12
        );
        assert!((b.coefficient(BasisElement::Identity) - 0.75 * shift).abs() < 1e-12);
        assert!(a.round_trip_defect(&t, 6).unwrap() < 1e-12);
        assert!(b.round_trip_defect(&t, 6).unwrap() < 1e-12);
    }

    #[test]
    fn high_degree_q1_reported() {
        let t = poly_op(vec![1.0], vec![0.0, 0.0, 0.0, 0.0, 2.0], vec![]);
        match decompose_operator(&t, 1, dom()) {
            Err(QesError::Decomposition { offending, .. }) => {
                assert_eq!(offending, vec![("q1[z^4]".to_string(), 2.0)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn callable_q1_rejected() {
        let mut t = poly_op(vec![1.0], vec![], vec![]);
        t.q1 = Coefficient::rule(|z| Ok(z));
        assert!(matches!(
            decompose_operator(&t, 1, dom()),
            Err(QesError::Decomposition { .. })
        ));
    }

    #[test]
    fn spin_zero_needs_raise_lower_gauge() {
        let t = poly_op(vec![0.0, 0.0, 1.0], vec![], vec![]);
        assert!(matches!(
            decompose_operator(&t, 0, dom()),
            Err(QesError::Usage(_))
        ));
        let opts = DecomposeOptions {
            gauge: CasimirGauge::ZeroRaiseLower,
            ..Default::default()
        };
        let d = decompose_operator_with(&t, 0, dom(), &opts).unwrap();
        assert!(d.round_trip_defect(&t, 4).unwrap() < 1e-12);
    }

    #[test]
    fn sextic_remainder_split() {
        // −(1/2)(1 − z²)³ d² + (1/2) z d
        let q2 = vec![-0.5, 0.0, 1.5, 0.0, -1.5, 0.0, 0.5];
        let t = poly_op(q2, vec![0.0, 0.5], vec![]);
        let d = decompose_operator(&t, 1, dom()).unwrap();
        assert_eq!(d.remainder_q2.degree(), Some(6));
        assert!((d.remainder_q2.coeff(6) - 0.5).abs() < 1e-15);
        assert!(d.round_trip_defect(&t, 6).unwrap() < 1e-12);
        assert!(d.remainder_annihilation_defect(&t).unwrap() < 1e-12);
    }
}
