use crate::error::{QesError, Result};
use crate::function::{Interval, SmoothFunction1d};
use crate::numkit::{integrate, Grid1d, MonotoneCubic};
use crate::susy::QesModel;

const NEWTON_MAX_ITER: usize = 60;

/// The change of variable `z(x) = z_ref · exp(2ε ∫_{x_ref}^{x} dt/W₊(t))`
/// tabulated on one sign-definite branch, with a monotone inverse.
#[derive(Debug, Clone)]
pub struct ZMap {
    xs: Vec<f64>,
    ln_z: Vec<f64>,
    inverse: MonotoneCubic,
    w_plus: SmoothFunction1d,
    epsilon: f64,
    z_gauge: f64,
    x_ref: f64,
}

/// Tabulates `z(x)` over `grid`; the grid must stay on the model's branch.
pub fn build_zmap(model: &QesModel, grid: &Grid1d) -> Result<ZMap> {
    let branch = model.x_domain();
    let win = grid.interval();
    if win.lo <= branch.lo || win.hi >= branch.hi {
        return Err(QesError::Branch(format!(
            "z-map grid {win} leaves the branch {branch} of model {}",
            model.name()
        )));
    }
    model.check_branch_grid(grid)?;
    let eps = model.epsilon();
    let recip = |t: f64| 1.0 / model.w_plus().value(t);
    let xs: Vec<f64> = grid.points().collect();
    let mut acc = integrate(recip, model.x_ref(), grid.x_min())?;
    let mut from_ref = Vec::with_capacity(xs.len());
    from_ref.push(acc);
    for w in xs.windows(2) {
        acc += integrate(recip, w[0], w[1])?;
        from_ref.push(acc);
    }
    let ln_ref = model.z_gauge().ln();
    let ln_z: Vec<f64> = from_ref.iter().map(|f| ln_ref + 2.0 * eps * f).collect();
    let zs: Vec<f64> = ln_z.iter().map(|l| l.exp()).collect();
    let increasing = zs[1] > zs[0];
    let strictly = zs
        .windows(2)
        .all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] });
    if !strictly || zs.iter().any(|z| !z.is_finite() || *z <= 0.0) {
        return Err(QesError::Branch(format!(
            "z(x) is not strictly monotone and finite on {win}; shrink the grid"
        )));
    }
    let (mut zk, mut xk) = (zs, xs.clone());
    if !increasing {
        zk.reverse();
        xk.reverse();
    }
    let inverse = MonotoneCubic::new(zk, xk)?;
    Ok(ZMap {
        xs,
        ln_z,
        inverse,
        w_plus: model.w_plus().clone(),
        epsilon: eps,
        z_gauge: model.z_gauge(),
        x_ref: model.x_ref(),
    })
}

impl ZMap {
    /// Tabulated `(x, z)` pairs, ordered by `x`.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().zip(&self.ln_z).map(|(x, l)| (*x, l.exp()))
    }

    pub fn x_range(&self) -> Interval {
        Interval {
            lo: self.xs[0],
            hi: *self.xs.last().unwrap(),
        }
    }

    /// `[z_min, z_max]` covered by the table.
    pub fn z_range(&self) -> Interval {
        let (lo, hi) = self.inverse.range();
        Interval { lo, hi }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn z_gauge(&self) -> f64 {
        self.z_gauge
    }

    fn ln_z_at(&self, x: f64) -> Result<f64> {
        let i = self.nearest(x);
        let tail = integrate(|t| 1.0 / self.w_plus.value(t), self.xs[i], x)?;
        Ok(self.ln_z[i] + 2.0 * self.epsilon * tail)
    }

    fn nearest(&self, x: f64) -> usize {
        let k = self.xs.partition_point(|&v| v < x);
        if k == 0 {
            0
        } else if k >= self.xs.len() {
            self.xs.len() - 1
        } else if x - self.xs[k - 1] <= self.xs[k] - x {
            k - 1
        } else {
            k
        }
    }

    /// `z(x)` from the nearest tabulated node plus an exact quadrature tail.
    pub fn z_at(&self, x: f64) -> Result<f64> {
        let r = self.x_range();
        if !(x >= r.lo && x <= r.hi) {
            return Err(QesError::Range {
                value: x,
                lo: r.lo,
                hi: r.hi,
            });
        }
        Ok(self.ln_z_at(x)?.exp())
    }

    /// `dz/dx = 2ε z / W₊`.
    pub fn dz_dx(&self, x: f64) -> Result<f64> {
        Ok(2.0 * self.epsilon * self.z_at(x)? / self.w_plus.value(x))
    }

    /// Monotone-interpolant estimate of `x(z)` without refinement.
    pub fn x_of_z_interpolated(&self, z: f64) -> Result<f64> {
        self.inverse.eval(z)
    }

    /// `x(z)`: interpolated guess polished by Newton steps on `ln z(x)`.
    pub fn x_of_z(&self, z: f64) -> Result<f64> {
        let mut x = self.inverse.eval(z)?;
        let target = z.ln();
        let r = self.x_range();
        for _ in 0..NEWTON_MAX_ITER {
            let g = self.ln_z_at(x)? - target;
            let slope = 2.0 * self.epsilon / self.w_plus.value(x);
            let next = (x - g / slope).clamp(r.lo, r.hi);
            let dx = (next - x).abs();
            x = next;
            if dx <= 1e-15 * (1.0 + x.abs()) {
                return Ok(x);
            }
        }
        let resid = (self.ln_z_at(x)? - target).abs();
        if resid < 1e-12 {
            Ok(x)
        } else {
            Err(QesError::Convergence(format!(
                "inverse z-map at z = {z}: residual {resid:e}"
            )))
        }
    }

    /// `z(x)` as a smooth function on the whole branch, anchored at `x_ref`.
    pub fn z_function(&self) -> SmoothFunction1d {
        z_rule(&self.w_plus, self.epsilon, self.z_gauge, self.x_ref)
    }
}

/// `z(x)` for a model, evaluated by adaptive quadrature from `x_ref`.
pub fn z_function(model: &QesModel) -> SmoothFunction1d {
    z_rule(
        model.w_plus(),
        model.epsilon(),
        model.z_gauge(),
        model.x_ref(),
    )
    .with_singularities(model.singular_points())
}

fn z_rule(wp: &SmoothFunction1d, eps: f64, z_ref: f64, x_ref: f64) -> SmoothFunction1d {
    let wp = wp.clone();
    let sing = wp.singularities().to_vec();
    SmoothFunction1d::new("z(x)", wp.domain(), move |x| {
        let l = integrate(|t| 1.0 / wp.value(t), x_ref, x).unwrap_or(f64::NAN);
        let lj = (wp.jet(x).recip() * (2.0 * eps)).integral(z_ref.ln() + 2.0 * eps * l);
        lj.exp()
    })
    .with_singularities(sing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;
    use crate::numkit::fd_first;

    fn razavy() -> QesModel {
        let wp = SmoothFunction1d::new("sinh 2x", Interval::real_line(), |x| {
            (Jet::var(x) * 2.0).sinh()
        });
        QesModel::new(
            "r",
            wp,
            1.0,
            Interval {
                lo: 0.0,
                hi: f64::INFINITY,
            },
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn razavy_ratio_is_tanh_ratio() {
        let m = razavy();
        let zm = build_zmap(&m, &Grid1d::new(0.05, 4.0, 801).unwrap()).unwrap();
        for (x, z) in zm.samples().step_by(37) {
            let expect = x.tanh() / 1f64.tanh();
            assert!((z / expect - 1.0).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn constant_superpotential_gives_exponential() {
        let wp = SmoothFunction1d::new("2", Interval::real_line(), |_| Jet::constant(2.0));
        let m = QesModel::new("c", wp, 1.0, Interval::real_line(), 0.3).unwrap();
        let zm = build_zmap(&m, &Grid1d::new(-1.0, 2.0, 301).unwrap()).unwrap();
        for (x, z) in zm.samples() {
            assert!((z - (x - 0.3).exp()).abs() < 1e-12 * z);
        }
    }

    #[test]
    fn inverse_round_trip_and_derivative() {
        let m = razavy();
        let zm = build_zmap(&m, &Grid1d::new(0.05, 4.0, 401).unwrap()).unwrap();
        for &x in &[0.07, 0.5, 1.3, 3.9] {
            let z = zm.z_at(x).unwrap();
            assert!((zm.x_of_z(z).unwrap() - x).abs() < 1e-12);
            let fd = fd_first(|t| zm.z_at(t).unwrap(), x, 1e-3);
            assert!((fd - zm.dz_dx(x).unwrap()).abs() < 1e-8);
        }
        let zf = zm.z_function();
        assert!((zf.value(0.8) - zm.z_at(0.8).unwrap()).abs() < 1e-13);
        assert!((zf.d1(0.8) - zm.dz_dx(0.8).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn crossing_zero_of_w_plus_is_branch_error() {
        let m = razavy();
        let r = build_zmap(&m, &Grid1d::new(-1.0, 1.0, 101).unwrap());
        assert!(matches!(r, Err(QesError::Branch(_))));
    }

    #[test]
    fn out_of_range_inverse() {
        let m = razavy();
        let zm = build_zmap(&m, &Grid1d::new(0.5, 1.5, 101).unwrap()).unwrap();
        assert!(matches!(zm.x_of_z(10.0), Err(QesError::Range { .. })));
    }
}
