use std::fmt;

use super::poly::PolyCoeffs;
use crate::error::{QesError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Plus,
    Zero,
    Minus,
}

/// One of `j₊ = −z²d + Nz`, `j₀ = zd − N/2`, `j₋ = d` in the spin-`N/2`
/// representation on polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sl2Generator {
    pub kind: GeneratorKind,
    pub n: u32,
}

impl Sl2Generator {
    pub fn plus(n: u32) -> Self {
        Sl2Generator {
            kind: GeneratorKind::Plus,
            n,
        }
    }

    pub fn zero(n: u32) -> Self {
        Sl2Generator {
            kind: GeneratorKind::Zero,
            n,
        }
    }

    pub fn minus(n: u32) -> Self {
        Sl2Generator {
            kind: GeneratorKind::Minus,
            n,
        }
    }

    /// `(q2, q1, q0) = (0, q1, q0)` as a first-order operator.
    pub fn as_diff_op(&self) -> PolyDiffOp {
        let n = self.n as f64;
        match self.kind {
            GeneratorKind::Plus => PolyDiffOp::new(vec![
                PolyCoeffs::new(vec![0.0, n]),
                PolyCoeffs::new(vec![0.0, 0.0, -1.0]),
            ]),
            GeneratorKind::Zero => PolyDiffOp::new(vec![
                PolyCoeffs::constant(-n / 2.0),
                PolyCoeffs::new(vec![0.0, 1.0]),
            ]),
            GeneratorKind::Minus => {
                PolyDiffOp::new(vec![PolyCoeffs::zero(), PolyCoeffs::constant(1.0)])
            }
        }
    }
}

/// Exact coefficient action of a generator on a polynomial.
pub fn apply_generator(g: Sl2Generator, p: &PolyCoeffs) -> PolyCoeffs {
    let n = g.n as f64;
    let len = p.coeffs.len();
    match g.kind {
        GeneratorKind::Minus => PolyCoeffs::new(
            (0..len.saturating_sub(1))
                .map(|k| (k + 1) as f64 * p.coeffs[k + 1])
                .collect(),
        ),
        GeneratorKind::Zero => PolyCoeffs::new(
            p.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as f64 - n / 2.0) * c)
                .collect(),
        ),
        GeneratorKind::Plus => {
            let mut out = vec![0.0; len + 1];
            for k in 1..=len {
                out[k] = (n - (k as f64 - 1.0)) * p.coeffs[k - 1];
            }
            PolyCoeffs::new(out)
        }
    }
}

/// Largest defect found in `[j₀,j₊] = j₊`, `[j₀,j₋] = −j₋`, `[j₊,j₋] = 2j₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorReport {
    pub n: u32,
    pub max_degree: usize,
    pub zero_plus: f64,
    pub zero_minus: f64,
    pub plus_minus: f64,
}

impl CommutatorReport {
    pub fn max_defect(&self) -> f64 {
        self.zero_plus.max(self.zero_minus).max(self.plus_minus)
    }
}

pub fn commutator_check(n: u32, max_degree: usize) -> Result<CommutatorReport> {
    if max_degree < n as usize {
        return Err(QesError::usage(format!(
            "max_degree {max_degree} must be at least N = {n}"
        )));
    }
    let (jp, j0, jm) = (
        Sl2Generator::plus(n),
        Sl2Generator::zero(n),
        Sl2Generator::minus(n),
    );
    let ap = |g, p: &PolyCoeffs| apply_generator(g, p);
    let defect = |lhs: PolyCoeffs, rhs: PolyCoeffs| (&lhs - &rhs).max_abs_coeff();
    let mut report = CommutatorReport {
        n,
        max_degree,
        zero_plus: 0.0,
        zero_minus: 0.0,
        plus_minus: 0.0,
    };
    for k in 0..=max_degree {
        let p = PolyCoeffs::monomial(k, 1.0);
        let c = &ap(j0, &ap(jp, &p)) - &ap(jp, &ap(j0, &p));
        report.zero_plus = report.zero_plus.max(defect(c, ap(jp, &p)));
        let c = &ap(j0, &ap(jm, &p)) - &ap(jm, &ap(j0, &p));
        report.zero_minus = report.zero_minus.max(defect(c, -&ap(jm, &p)));
        let c = &ap(jp, &ap(jm, &p)) - &ap(jm, &ap(jp, &p));
        report.plus_minus = report.plus_minus.max(defect(c, ap(j0, &p).scale(2.0)));
    }
    Ok(report)
}

/// `Σ_k a_k(z) dᵏ/dzᵏ` with polynomial coefficients; `terms[k] = a_k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyDiffOp {
    pub terms: Vec<PolyCoeffs>,
}

impl PolyDiffOp {
    pub fn new(terms: Vec<PolyCoeffs>) -> Self {
        PolyDiffOp { terms }
    }

    pub fn identity() -> Self {
        PolyDiffOp {
            terms: vec![PolyCoeffs::constant(1.0)],
        }
    }

    pub fn order_coeff(&self, k: usize) -> PolyCoeffs {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn apply(&self, p: &PolyCoeffs) -> PolyCoeffs {
        let mut out = PolyCoeffs::zero();
        let mut dp = p.clone();
        for a in &self.terms {
            out = &out + &(a * &dp);
            dp = dp.derivative();
        }
        out
    }

    /// `self ∘ rhs`, using Leibniz: `dⁱ(b dʲ) = Σ_m C(i,m) b^{(m)} d^{i−m+j}`.
    pub fn compose(&self, rhs: &PolyDiffOp) -> PolyDiffOp {
        let order = (self.terms.len() + rhs.terms.len()).saturating_sub(1);
        let mut terms = vec![PolyCoeffs::zero(); order.max(1)];
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in rhs.terms.iter().enumerate() {
                let mut bm = b.clone();
                let mut binom = 1.0;
                for m in 0..=i {
                    let k = i - m + j;
                    terms[k] = &terms[k] + &(a * &bm).scale(binom);
                    bm = bm.derivative();
                    binom = binom * (i - m) as f64 / (m + 1) as f64;
                }
            }
        }
        PolyDiffOp { terms }
    }

    pub fn add(&self, rhs: &PolyDiffOp) -> PolyDiffOp {
        let n = self.terms.len().max(rhs.terms.len());
        PolyDiffOp {
            terms: (0..n)
                .map(|k| &self.order_coeff(k) + &rhs.order_coeff(k))
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> PolyDiffOp {
        PolyDiffOp {
            terms: self.terms.iter().map(|t| t.scale(s)).collect(),
        }
    }
}

/// The ordered quadratic basis used by decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisElement {
    PlusPlus,
    PlusMinus,
    ZeroZero,
    MinusMinus,
    PlusZero,
    ZeroMinus,
    Plus,
    Zero,
    Minus,
    Identity,
}

impl BasisElement {
    pub const ALL: [BasisElement; 10] = [
        BasisElement::PlusPlus,
        BasisElement::PlusMinus,
        BasisElement::ZeroZero,
        BasisElement::MinusMinus,
        BasisElement::PlusZero,
        BasisElement::ZeroMinus,
        BasisElement::Plus,
        BasisElement::Zero,
        BasisElement::Minus,
        BasisElement::Identity,
    ];

    pub fn index(self) -> usize {
        BasisElement::ALL.iter().position(|b| *b == self).unwrap()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BasisElement::PlusPlus => "j+^2",
            BasisElement::PlusMinus => "j+j-",
            BasisElement::ZeroZero => "j0^2",
            BasisElement::MinusMinus => "j-^2",
            BasisElement::PlusZero => "j+j0",
            BasisElement::ZeroMinus => "j0j-",
            BasisElement::Plus => "j+",
            BasisElement::Zero => "j0",
            BasisElement::Minus => "j-",
            BasisElement::Identity => "1",
        }
    }

    pub fn operator(self, n: u32) -> PolyDiffOp {
        let (p, z, m) = (
            Sl2Generator::plus(n).as_diff_op(),
            Sl2Generator::zero(n).as_diff_op(),
            Sl2Generator::minus(n).as_diff_op(),
        );
        match self {
            BasisElement::PlusPlus => p.compose(&p),
            BasisElement::PlusMinus => p.compose(&m),
            BasisElement::ZeroZero => z.compose(&z),
            BasisElement::MinusMinus => m.compose(&m),
            BasisElement::PlusZero => p.compose(&z),
            BasisElement::ZeroMinus => z.compose(&m),
            BasisElement::Plus => p,
            BasisElement::Zero => z,
            BasisElement::Minus => m,
            BasisElement::Identity => PolyDiffOp::identity(),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
