use crate::error::{QesError, Result};
use crate::function::Interval;

/// Uniform grid `x_min + i*h`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1d {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid1d {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(QesError::usage(format!(
                "grid needs finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n < 3 {
            return Err(QesError::usage(format!(
                "grid needs at least 3 points, got {n}"
            )));
        }
        Ok(Grid1d { x_min, x_max, n })
    }

    pub fn over(window: &Interval, n: usize) -> Result<Self> {
        Grid1d::new(window.lo, window.hi, n)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    pub fn interval(&self) -> Interval {
        Interval {
            lo: self.x_min,
            hi: self.x_max,
        }
    }

    /// Grid over the same interval with `2n` points.
    pub fn doubled(&self) -> Self {
        Grid1d {
            n: 2 * self.n,
            ..*self
        }
    }

    /// Index of the node closest to `x` (clamped to the grid).
    pub fn nearest_index(&self, x: f64) -> usize {
        let t = ((x - self.x_min) / self.spacing()).round();
        t.clamp(0.0, (self.n - 1) as f64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_points() {
        let g = Grid1d::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.spacing(), 0.5);
        let pts: Vec<f64> = g.points().collect();
        assert_eq!(pts, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(g.nearest_index(0.3), 3);
        assert_eq!(g.nearest_index(-7.0), 0);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid1d::new(1.0, 0.0, 10).is_err());
        assert!(Grid1d::new(0.0, 1.0, 2).is_err());
        assert!(Grid1d::new(0.0, f64::INFINITY, 10).is_err());
    }
}
