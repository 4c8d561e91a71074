use crate::error::{QesError, Result};

/// Monotone piecewise-cubic Hermite interpolant (Fritsch–Butland slopes).
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    /// `xs` must be strictly increasing and at least two long.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(QesError::usage(
                "monotone interpolation needs >= 2 matching samples",
            ));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(QesError::usage(
                "interpolation abscissae must be strictly increasing",
            ));
        }
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|k| (ys[k + 1] - ys[k]) / h[k]).collect();
        let mut slopes = vec![0.0; n];
        if n == 2 {
            slopes[0] = delta[0];
            slopes[1] = delta[0];
            return Ok(MonotoneCubic { xs, ys, slopes });
        }
        for k in 1..n - 1 {
            let (d0, d1) = (delta[k - 1], delta[k]);
            if d0 * d1 > 0.0 {
                let w1 = 2.0 * h[k] + h[k - 1];
                let w2 = h[k] + 2.0 * h[k - 1];
                slopes[k] = (w1 + w2) / (w1 / d0 + w2 / d1);
            }
        }
        slopes[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        slopes[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        Ok(MonotoneCubic { xs, ys, slopes })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    fn locate(&self, x: f64) -> Result<usize> {
        let (lo, hi) = self.range();
        if !(x >= lo && x <= hi) {
            return Err(QesError::Range { value: x, lo, hi });
        }
        let k = self.xs.partition_point(|&v| v <= x);
        Ok(k.saturating_sub(1).min(self.xs.len() - 2))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let k = self.locate(x)?;
        let h = self.xs[k + 1] - self.xs[k];
        let t = (x - self.xs[k]) / h;
        let (t2, t3) = (t * t, t * t * t);
        Ok((2.0 * t3 - 3.0 * t2 + 1.0) * self.ys[k]
            + (t3 - 2.0 * t2 + t) * h * self.slopes[k]
            + (-2.0 * t3 + 3.0 * t2) * self.ys[k + 1]
            + (t3 - t2) * h * self.slopes[k + 1])
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        let k = self.locate(x)?;
        let h = self.xs[k + 1] - self.xs[k];
        let t = (x - self.xs[k]) / h;
        let t2 = t * t;
        Ok((6.0 * t2 - 6.0 * t) / h * self.ys[k]
            + (3.0 * t2 - 4.0 * t + 1.0) * self.slopes[k]
            + (-6.0 * t2 + 6.0 * t) / h * self.ys[k + 1]
            + (3.0 * t2 - 2.0 * t) * self.slopes[k + 1])
    }
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_nodes_and_is_monotone() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.tanh()).collect();
        let m = MonotoneCubic::new(xs.clone(), ys.clone()).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert!((m.eval(*x).unwrap() - y).abs() < 1e-15);
        }
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=1900 {
            let v = m.eval(i as f64 * 1e-3).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        assert!((m.eval(0.55).unwrap() - 0.55f64.tanh()).abs() < 1e-4);
    }

    #[test]
    fn out_of_range_is_error() {
        let m = MonotoneCubic::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 4.0]).unwrap();
        assert!(matches!(m.eval(2.5), Err(QesError::Range { .. })));
    }

    #[test]
    fn rejects_unsorted() {
        assert!(MonotoneCubic::new(vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 2.0]).is_err());
    }
}
