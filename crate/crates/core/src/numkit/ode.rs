use crate::error::{QesError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OdeOutcome {
    /// Reached `t_end`.
    Completed,
    /// The stop predicate fired (or the state became non-finite) at `t`;
    /// the offending step is not part of the trajectory.
    Stopped { t: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub points: Vec<(f64, f64)>,
    pub outcome: OdeOutcome,
    pub step: f64,
}

impl Trajectory {
    pub fn stopped_early(&self) -> bool {
        matches!(self.outcome, OdeOutcome::Stopped { .. })
    }

    pub fn last(&self) -> (f64, f64) {
        *self
            .points
            .last()
            .expect("trajectory always holds its initial point")
    }

    /// Leading run of points with exactly uniform spacing (drops a shortened
    /// final step).
    pub fn uniform_points(&self) -> &[(f64, f64)] {
        let n = self.points.len();
        if n >= 2 {
            let (t_a, _) = self.points[n - 2];
            let (t_b, _) = self.points[n - 1];
            if ((t_b - t_a) - self.step).abs() > 1e-9 * self.step {
                return &self.points[..n - 1];
            }
        }
        &self.points
    }
}

/// Classical fourth-order Runge–Kutta for `dy/dt = rhs(t, y)` from `t0` to
/// `t_end` with step `h`; `stop(t, y)` is checked on each new state.
pub fn integrate_ode_1st(
    rhs: impl Fn(f64, f64) -> f64,
    y0: f64,
    t0: f64,
    t_end: f64,
    h: f64,
    stop: impl Fn(f64, f64) -> bool,
) -> Result<Trajectory> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(QesError::usage(format!("step must be positive, got {h}")));
    }
    if !(t_end > t0) {
        return Err(QesError::usage(format!(
            "t_end = {t_end} must exceed t0 = {t0}"
        )));
    }
    if !rhs(t0, y0).is_finite() {
        return Err(QesError::domain(
            "ODE right-hand side at the initial state",
            t0,
        ));
    }
    let mut points = vec![(t0, y0)];
    let (mut t, mut y) = (t0, y0);
    let mut i: u64 = 0;
    while t < t_end {
        let dt = h.min(t_end - t);
        let k1 = rhs(t, y);
        let k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1);
        let k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2);
        let k4 = rhs(t + dt, y + dt * k3);
        let y_next = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        i += 1;
        // Nodes are recomputed from the start time to avoid drift in t.
        let t_next = if dt < h { t_end } else { t0 + i as f64 * h };
        if !y_next.is_finite() || stop(t_next, y_next) {
            return Ok(Trajectory {
                points,
                outcome: OdeOutcome::Stopped { t: t_next },
                step: h,
            });
        }
        t = t_next;
        y = y_next;
        points.push((t, y));
    }
    Ok(Trajectory {
        points,
        outcome: OdeOutcome::Completed,
        step: h,
    })
}
