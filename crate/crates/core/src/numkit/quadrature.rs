//! Quadrature on uniform grids and adaptive Gauss–Kronrod integration.

use crate::error::{QesError, Result};
use crate::function::SmoothFunction1d;
use crate::numkit::Grid1d;

/// Integral over each grid interval `[x_i, x_{i+1}]` from sampled values,
/// using the four-point cubic rule (one-sided at the ends). Exact for cubics.
fn interval_integrals(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    if n == 3 {
        return vec![
            h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]),
            h / 12.0 * (-f[0] + 8.0 * f[1] + 5.0 * f[2]),
        ];
    }
    let w = h / 24.0;
    (0..n - 1)
        .map(|i| {
            if i == 0 {
                w * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3])
            } else if i == n - 2 {
                w * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1])
            } else {
                w * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2])
            }
        })
        .collect()
}

/// Integral of uniformly sampled data (at least three samples).
pub fn integrate_samples(f: &[f64], h: f64) -> f64 {
    interval_integrals(f, h).iter().sum()
}

/// `F(x_i) = ∫_{x_ref}^{x_i} f` at every grid node, fourth-order accurate.
pub fn cumulative_integral(f: &SmoothFunction1d, grid: &Grid1d, x_ref: f64) -> Result<Vec<f64>> {
    if !grid.interval().contains(x_ref) {
        return Err(QesError::usage(format!(
            "x_ref = {x_ref} outside the grid {}",
            grid.interval()
        )));
    }
    let values = grid
        .points()
        .map(|x| {
            let v = f.value(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(QesError::domain(f.label().to_string(), x))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let pieces = interval_integrals(&values, grid.spacing());
    let mut cumulative = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    cumulative.push(0.0);
    for p in pieces {
        acc += p;
        cumulative.push(acc);
    }
    // Shift so that F(x_ref) = 0; the gap between x_ref and its nearest node
    // is integrated with a five-point Gauss rule (exact to degree 9).
    let j = grid.nearest_index(x_ref);
    let offset = cumulative[j] + gauss_legendre_5(|x| f.value(x), grid.point(j), x_ref);
    Ok(cumulative.into_iter().map(|c| c - offset).collect())
}

fn gauss_legendre_5(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const X: [f64; 5] = [
        0.0,
        0.538_469_310_105_683_1,
        -0.538_469_310_105_683_1,
        0.906_179_845_938_664,
        -0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_47,
        0.478_628_670_499_366_47,
        0.236_926_885_056_189_08,
        0.236_926_885_056_189_08,
    ];
    if a == b {
        return 0.0;
    }
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    r * X
        .iter()
        .zip(W.iter())
        .map(|(x, w)| w * f(c + r * x))
        .sum::<f64>()
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_67,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = r * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * r, ((kronrod - gauss) * r).abs())
}

/// Adaptive Gauss–Kronrod (7/15) integral of `f` over `[a, b]` (either order).
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut stack = vec![(lo, hi, 0u32)];
    let mut total = 0.0;
    while let Some((x0, x1, depth)) = stack.pop() {
        let (k, err) = gk15(&f, x0, x1);
        if !k.is_finite() {
            return Err(QesError::domain("integrand", 0.5 * (x0 + x1)));
        }
        let tol = (1e-14 * (x1 - x0) / (hi - lo)).max(1e-13 * k.abs());
        if err <= tol || depth >= 48 {
            if depth >= 48 && err > 1e-8 * k.abs().max(1.0) {
                return Err(QesError::Convergence(format!(
                    "quadrature stalled on [{x0}, {x1}]"
                )));
            }
            total += k;
        } else {
            let m = 0.5 * (x0 + x1);
            stack.push((x0, m, depth + 1));
            stack.push((m, x1, depth + 1));
        }
    }
    Ok(sign * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Interval;
    use crate::jet::Jet;

    #[test]
    fn constant_integrand() {
        let f = SmoothFunction1d::new("1", Interval::real_line(), |_| Jet::constant(1.0));
        let g = Grid1d::new(-1.0, 2.0, 31).unwrap();
        let big_f = cumulative_integral(&f, &g, 0.0).unwrap();
        assert!((big_f[30] - 2.0).abs() < 1e-14);
        assert!((big_f[0] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn cosine_to_sine() {
        let f = SmoothFunction1d::new("cos", Interval::real_line(), |x| Jet::var(x).cos());
        let g = Grid1d::new(0.0, std::f64::consts::FRAC_PI_2, 4001).unwrap();
        let big_f = cumulative_integral(&f, &g, 0.0).unwrap();
        assert!((big_f[4000] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn exact_for_cubics_with_off_grid_reference() {
        let f = SmoothFunction1d::new("cubic", Interval::real_line(), |x| {
            let x = Jet::var(x);
            x * x * x * 2.0 - x * 3.0 + 1.0
        });
        let antideriv = |x: f64| 0.5 * x.powi(4) - 1.5 * x * x + x;
        let g = Grid1d::new(-1.3, 2.1, 7).unwrap();
        let x_ref = 0.37;
        let big_f = cumulative_integral(&f, &g, x_ref).unwrap();
        for (i, x) in g.points().enumerate() {
            let exact = antideriv(x) - antideriv(x_ref);
            assert!(
                (big_f[i] - exact).abs() < 1e-12,
                "{} vs {}",
                big_f[i],
                exact
            );
        }
    }

    #[test]
    fn three_point_grid() {
        let samples = [0.0, 1.0, 4.0]; // x^2 on 0,1,2
        assert!((integrate_samples(&samples, 1.0) - 8.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn non_finite_integrand_is_domain_error() {
        let f = SmoothFunction1d::new("1/x", Interval::real_line(), |x| Jet::var(x).recip());
        let g = Grid1d::new(-1.0, 1.0, 5).unwrap();
        assert!(matches!(
            cumulative_integral(&f, &g, 0.5),
            Err(QesError::Domain { .. })
        ));
    }

    #[test]
    fn reference_outside_grid_rejected() {
        let f = SmoothFunction1d::new("1", Interval::real_line(), |_| Jet::constant(1.0));
        let g = Grid1d::new(0.0, 1.0, 5).unwrap();
        assert!(cumulative_integral(&f, &g, 2.0).is_err());
    }

    #[test]
    fn adaptive_gauss_kronrod() {
        let v = integrate(|x: f64| x.exp(), 0.0, 3.0).unwrap();
        assert!((v - (3f64.exp() - 1.0)).abs() < 1e-12);
        let v = integrate(|x: f64| 1.0 / x, 2.0, 1e-3).unwrap();
        assert!((v - (1e-3f64 / 2.0).ln()).abs() < 1e-12);
    }
}
