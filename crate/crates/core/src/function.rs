//! Scalar functions of one variable with exact low-order derivatives.

use std::fmt;
use std::sync::Arc;

use crate::error::{QesError, Result};
use crate::jet::Jet;

/// Distance kept between evaluation windows and declared singularities.
pub const DEFAULT_SINGULARITY_MARGIN: f64 = 1e-3;

/// Closed or half-infinite interval `[lo, hi]` on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(QesError::usage(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn real_line() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.lo >= self.lo && other.hi <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

type Rule = Arc<dyn Fn(f64) -> Jet + Send + Sync>;

/// A real function with value, first and second derivative available
/// analytically through its jet.
///
/// The rule must be evaluated at the identity jet only, so it is stored as a
/// map from the abscissa to a [`Jet`]. Closed forms are written directly in
/// jet arithmetic (`Jet::var(x).sinh() * a`).
#[derive(Clone)]
pub struct SmoothFunction1d {
    label: String,
    rule: Rule,
    domain: Interval,
    singularities: Vec<f64>,
}

impl fmt::Debug for SmoothFunction1d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothFunction1d")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("singularities", &self.singularities)
            .finish()
    }
}

impl SmoothFunction1d {
    pub fn new(
        label: impl Into<String>,
        domain: Interval,
        rule: impl Fn(f64) -> Jet + Send + Sync + 'static,
    ) -> Self {
        SmoothFunction1d {
            label: label.into(),
            rule: Arc::new(rule),
            domain,
            singularities: Vec::new(),
        }
    }

    pub fn with_singularities(mut self, mut points: Vec<f64>) -> Self {
        points.sort_by(|a, b| a.total_cmp(b));
        points.dedup();
        self.singularities = points;
        self
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn singularities(&self) -> &[f64] {
        &self.singularities
    }

    pub fn jet(&self, x: f64) -> Jet {
        (self.rule)(x)
    }

    pub fn value(&self, x: f64) -> f64 {
        self.jet(x).value()
    }

    pub fn d1(&self, x: f64) -> f64 {
        self.jet(x).d1()
    }

    pub fn d2(&self, x: f64) -> f64 {
        self.jet(x).d2()
    }

    /// Jet at `x`, failing on declared singularities, points outside the
    /// domain, or non-finite results.
    pub fn checked_jet(&self, x: f64) -> Result<Jet> {
        if !self.domain.contains(x) {
            return Err(QesError::domain(
                format!("{} (outside its domain {})", self.label, self.domain),
                x,
            ));
        }
        if self.singularities.contains(&x) {
            return Err(QesError::singularity(self.label.clone(), x));
        }
        let j = self.jet(x);
        if !j.is_finite() {
            if self.nearest_singularity(x).is_some_and(|(_, d)| d < 1e-6) {
                return Err(QesError::singularity(self.label.clone(), x));
            }
            return Err(QesError::domain(self.label.clone(), x));
        }
        Ok(j)
    }

    pub fn checked_value(&self, x: f64) -> Result<f64> {
        self.checked_jet(x).map(|j| j.value())
    }

    fn nearest_singularity(&self, x: f64) -> Option<(f64, f64)> {
        self.singularities
            .iter()
            .map(|&s| (s, (s - x).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Fails if `window` leaves the domain or comes closer than `margin` to a
    /// declared singularity.
    pub fn check_window(&self, window: &Interval, margin: f64) -> Result<()> {
        if !self.domain.contains_interval(window) {
            return Err(QesError::usage(format!(
                "window {window} leaves the domain {} of {}",
                self.domain, self.label
            )));
        }
        for &s in &self.singularities {
            if s >= window.lo - margin && s <= window.hi + margin {
                return Err(QesError::singularity(
                    format!("{} within margin {margin} of window {window}", self.label),
                    s,
                ));
            }
        }
        Ok(())
    }

    pub fn derivative(&self) -> SmoothFunction1d {
        let rule = self.rule.clone();
        SmoothFunction1d {
            label: format!("d/dx {}", self.label),
            rule: Arc::new(move |x| rule(x).derivative()),
            domain: self.domain,
            singularities: self.singularities.clone(),
        }
    }

    pub fn map(
        &self,
        label: impl Into<String>,
        f: impl Fn(Jet) -> Jet + Send + Sync + 'static,
    ) -> SmoothFunction1d {
        let rule = self.rule.clone();
        SmoothFunction1d {
            label: label.into(),
            rule: Arc::new(move |x| f(rule(x))),
            domain: self.domain,
            singularities: self.singularities.clone(),
        }
    }

    /// Pointwise combination; domain is the intersection, singularities the union.
    pub fn zip_with(
        &self,
        other: &SmoothFunction1d,
        label: impl Into<String>,
        f: impl Fn(Jet, Jet) -> Jet + Send + Sync + 'static,
    ) -> SmoothFunction1d {
        let (a, b) = (self.rule.clone(), other.rule.clone());
        let domain = Interval {
            lo: self.domain.lo.max(other.domain.lo),
            hi: self.domain.hi.min(other.domain.hi),
        };
        let mut singularities = self.singularities.clone();
        singularities.extend_from_slice(&other.singularities);
        SmoothFunction1d {
            label: label.into(),
            rule: Arc::new(move |x| f(a(x), b(x))),
            domain,
            singularities,
        }
        .with_singularities_sorted()
    }

    fn with_singularities_sorted(self) -> Self {
        let s = self.singularities.clone();
        self.with_singularities(s)
    }

    /// Samples `f` on `n` equally spaced points of `window`.
    pub fn sample(&self, window: &Interval, n: usize) -> Vec<(f64, f64)> {
        let h = window.width() / (n.max(2) - 1) as f64;
        (0..n.max(2))
            .map(|i| {
                let x = window.lo + i as f64 * h;
                (x, self.value(x))
            })
            .collect()
    }
}
