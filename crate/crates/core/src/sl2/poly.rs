use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::jet::Jet;

/// Dense real polynomial; `coeffs[k]` multiplies `z^k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyCoeffs {
    pub coeffs: Vec<f64>,
}

impl PolyCoeffs {
    pub fn new(coeffs: Vec<f64>) -> Self {
        PolyCoeffs { coeffs }
    }

    pub fn zero() -> Self {
        PolyCoeffs { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        PolyCoeffs { coeffs: vec![c] }
    }

    /// `c z^k`.
    pub fn monomial(k: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        PolyCoeffs { coeffs }
    }

    /// Highest index with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c)
    }

    pub fn eval_jet(&self, z: Jet) -> Jet {
        self.coeffs
            .iter()
            .rev()
            .fold(Jet::constant(0.0), |acc, c| acc * z + *c)
    }

    pub fn derivative(&self) -> Self {
        PolyCoeffs {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        PolyCoeffs {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Drops trailing zeros.
    pub fn trimmed(mut self) -> Self {
        let len = self.degree().map_or(0, |d| d + 1);
        self.coeffs.truncate(len);
        self
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}

impl Add for &PolyCoeffs {
    type Output = PolyCoeffs;
    fn add(self, rhs: &PolyCoeffs) -> PolyCoeffs {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyCoeffs {
            coeffs: (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
        }
    }
}

impl Sub for &PolyCoeffs {
    type Output = PolyCoeffs;
    fn sub(self, rhs: &PolyCoeffs) -> PolyCoeffs {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyCoeffs {
            coeffs: (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect(),
        }
    }
}

impl Mul for &PolyCoeffs {
    type Output = PolyCoeffs;
    fn mul(self, rhs: &PolyCoeffs) -> PolyCoeffs {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return PolyCoeffs::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyCoeffs { coeffs: out }
    }
}

impl Neg for &PolyCoeffs {
    type Output = PolyCoeffs;
    fn neg(self) -> PolyCoeffs {
        self.scale(-1.0)
    }
}

impl fmt::Display for PolyCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·z")?,
                _ => write!(f, "{c}·z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
