use crate::error::{QesError, Result};
use crate::function::{Interval, SmoothFunction1d};
use crate::jet::Jet;
use crate::numkit::{lowest_spectrum, Grid1d, SpectralResult};
use crate::susy::{potential_v, PotentialRoute, QesModel};

/// Potential height at which the spectral box is cut off.
pub const BOX_POTENTIAL_LEVEL: f64 = 2000.0;
/// Grid points of the coarse spectral grid (the fine grid doubles it).
pub const DEFAULT_SPECTRAL_POINTS: usize = 2000;

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(QesError::usage(format!("{name} must be positive, got {v}")))
    }
}

/// Smallest `L` (on a `1e-2` ladder) with `V(±L) ≥ level`.
pub fn confining_half_width(v: &SmoothFunction1d, level: f64) -> Result<f64> {
    let mut l = 0.5;
    while l < 1e3 {
        if v.value(l) >= level && v.value(-l) >= level {
            return Ok(l);
        }
        l += 1e-2;
    }
    Err(QesError::Degenerate(format!(
        "{} does not reach {level} within |x| < 1000",
        v.label()
    )))
}

fn positive_branch() -> Interval {
    Interval {
        lo: 0.0,
        hi: f64::INFINITY,
    }
}

/// `W₊ = A sinh(αx)`, `ε = αA/2`, on the branch `x > 0` with `x_ref = 1`.
///
/// `z(x) = tanh(αx/2)`; the `z`-gauge is set to match it.
pub fn razavy_model(a: f64, alpha: f64) -> Result<QesModel> {
    positive("A", a)?;
    positive("alpha", alpha)?;
    let wp = SmoothFunction1d::new(
        format!("{a} sinh({alpha} x)"),
        Interval::real_line(),
        move |x| (Jet::var(x) * alpha).sinh() * a,
    );
    let model = QesModel::new("razavy", wp, alpha * a / 2.0, positive_branch(), 1.0)?
        .with_w_plus_zeros(vec![0.0])
        .with_z_gauge((alpha / 2.0).tanh())?
        .with_window(Interval {
            lo: 0.1 / alpha,
            hi: 6.0 / alpha,
        })?
        .with_zmap_window(Interval {
            lo: 0.1 / alpha,
            hi: 8.0 / alpha,
        })?;
    let l = confining_half_width(
        &potential_v(&model, PotentialRoute::WPlus),
        BOX_POTENTIAL_LEVEL,
    )?;
    model.with_spectral_box(Interval { lo: -l, hi: l })
}

/// `W₊ = ax + bx³`, `ε = a/2`, on the branch `x > 0` with `x_ref = 1`.
///
/// `z(x) = x/√(a + bx²)`; the `z`-gauge is set to match it.
pub fn sextic_model(a: f64, b: f64) -> Result<QesModel> {
    positive("a", a)?;
    positive("b", b)?;
    let wp = SmoothFunction1d::new(
        format!("{a} x + {b} x^3"),
        Interval::real_line(),
        move |x| {
            let x = Jet::var(x);
            x * a + x * x * x * b
        },
    );
    let model = QesModel::new("sextic", wp, a / 2.0, positive_branch(), 1.0)?
        .with_w_plus_zeros(vec![0.0])
        .with_z_gauge(1.0 / (a + b).sqrt())?
        .with_window(Interval { lo: 0.2, hi: 3.0 })?
        .with_zmap_window(Interval { lo: 0.05, hi: 6.0 })?;
    let l = confining_half_width(
        &potential_v(&model, PotentialRoute::WPlus),
        BOX_POTENTIAL_LEVEL,
    )?;
    model.with_spectral_box(Interval { lo: -l, hi: l })
}

/// A model generated by the polynomial `W₊ = Σ c_k x^k` on `branch`.
pub fn polynomial_model(
    name: impl Into<String>,
    coeffs: Vec<f64>,
    epsilon: f64,
    branch: Interval,
    x_ref: f64,
) -> Result<QesModel> {
    if coeffs.iter().all(|c| *c == 0.0) {
        return Err(QesError::usage("W+ polynomial must not vanish identically"));
    }
    let label = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(k, c)| format!("{c} x^{k}"))
        .collect::<Vec<_>>()
        .join(" + ");
    let wp = SmoothFunction1d::new(label, Interval::real_line(), move |x| {
        let x = Jet::var(x);
        coeffs
            .iter()
            .rev()
            .fold(Jet::constant(0.0), |acc, c| acc * x + *c)
    });
    QesModel::new(name, wp, epsilon, branch, x_ref)
}

/// Control potential `½ω²x²` with `−½d²` kinetic term; levels `ω(n + ½)`.
#[derive(Debug, Clone)]
pub struct HarmonicControl {
    pub potential: SmoothFunction1d,
    pub spectral_box: Interval,
    pub omega: f64,
}

impl HarmonicControl {
    pub fn level(&self, n: usize) -> f64 {
        self.omega * (n as f64 + 0.5)
    }
}

pub fn harmonic_control(omega: f64) -> Result<HarmonicControl> {
    positive("omega", omega)?;
    let potential = SmoothFunction1d::new("harmonic", Interval::real_line(), move |x| {
        Jet::var(x) * Jet::var(x) * (0.5 * omega * omega)
    });
    let l = 10.0 / omega.sqrt();
    Ok(HarmonicControl {
        potential,
        spectral_box: Interval { lo: -l, hi: l },
        omega,
    })
}

/// Lowest `k` levels of the model's potential in its spectral box.
pub fn model_spectrum(model: &QesModel, n_points: usize, k: usize) -> Result<SpectralResult> {
    let bx = model
        .spectral_box()
        .ok_or_else(|| QesError::usage(format!("model {} has no spectral box", model.name())))?;
    let v = potential_v(model, PotentialRoute::WPlus);
    lowest_spectrum(&v, &Grid1d::over(&bx, n_points)?, model.mass_factor(), k)
}

/// `max(|ψ(lo)|, |ψ(hi)|) / |ψ(mid)|`: large values flag a function that
/// grows towards the edges of `window`.
pub fn edge_growth(psi: &SmoothFunction1d, window: &Interval) -> f64 {
    let mid = psi.value(window.midpoint()).abs();
    psi.value(window.lo).abs().max(psi.value(window.hi).abs()) / mid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{eigenstate, make_w, verify_eigenpair, Level};

    #[test]
    fn parameters_and_levels() {
        assert_eq!(razavy_model(1.0, 2.0).unwrap().epsilon(), 1.0);
        assert_eq!(razavy_model(2.0, 1.0).unwrap().epsilon(), 1.0);
        assert_eq!(sextic_model(1.0, 1.0).unwrap().epsilon(), 0.5);
        assert!(matches!(razavy_model(-1.0, 2.0), Err(QesError::Usage(_))));
        assert!(matches!(sextic_model(1.0, 0.0), Err(QesError::Usage(_))));
    }

    #[test]
    fn razavy_parameterizations_are_distinct() {
        let v1 = potential_v(&razavy_model(1.0, 2.0).unwrap(), PotentialRoute::WPlus);
        let v2 = potential_v(&razavy_model(2.0, 1.0).unwrap(), PotentialRoute::WPlus);
        assert!((v1.value(1.0) - v2.value(1.0)).abs() > 1e-3);
    }

    #[test]
    fn sextic_ground_state_closed_form() {
        let m = sextic_model(1.0, 1.0).unwrap();
        let p0 = eigenstate(&m, Level::Ground).unwrap();
        let p1 = eigenstate(&m, Level::Excited).unwrap();
        let c0 = |x: f64| (1.0 + x * x).powf(0.75) * (-x * x / 4.0 - x.powi(4) / 8.0).exp();
        let c1 = |x: f64| x * (1.0 + x * x).powf(0.25) * (-x * x / 4.0 - x.powi(4) / 8.0).exp();
        let (k0, k1) = (p0.value(1.0) / c0(1.0), p1.value(1.0) / c1(1.0));
        for &x in &[0.2, 0.8, 1.9, 2.7] {
            assert!((p0.value(x) / c0(x) / k0 - 1.0).abs() < 1e-9);
            assert!((p1.value(x) / c1(x) / k1 - 1.0).abs() < 1e-9);
        }
        let v = potential_v(&m, PotentialRoute::WPlus);
        assert!((v.value(1e-3) - 0.5).abs() < 1e-5);
        assert!((make_w(&m).value(1.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn catalog_spectra_contain_algebraic_levels() {
        for m in [
            razavy_model(1.0, 2.0).unwrap(),
            sextic_model(1.0, 1.0).unwrap(),
        ] {
            let s = model_spectrum(&m, DEFAULT_SPECTRAL_POINTS, 4).unwrap();
            for e in [0.0, m.epsilon()] {
                assert!(
                    s.find(e, 1e-6).is_some(),
                    "{}: {e} not in {:?}",
                    m.name(),
                    s.eigenvalues
                );
            }
        }
    }

    #[test]
    fn harmonic_control_spectrum() {
        let h = harmonic_control(1.0).unwrap();
        let s = lowest_spectrum(
            &h.potential,
            &Grid1d::over(&h.spectral_box, 2000).unwrap(),
            0.5,
            3,
        )
        .unwrap();
        for n in 0..3 {
            assert!((s.eigenvalues[n] - h.level(n)).abs() < 1e-6);
        }
    }

    #[test]
    fn polynomial_model_matches_sextic() {
        let p =
            polynomial_model("p", vec![0.0, 1.0, 0.0, 1.0], 0.5, positive_branch(), 1.0).unwrap();
        let v = potential_v(&p, PotentialRoute::Susy);
        let psi = eigenstate(&p, Level::Excited).unwrap();
        let c = verify_eigenpair(&psi, &v, 0.5, &Interval { lo: 0.2, hi: 3.0 }).unwrap();
        assert!((c.e_rayleigh - 0.5).abs() < 1e-6);
    }

    #[test]
    fn gaussian_has_no_edge_growth() {
        let g = SmoothFunction1d::new("g", Interval::real_line(), |x| {
            (Jet::var(x) * Jet::var(x) * -1.0).exp()
        });
        assert!(edge_growth(&g, &Interval { lo: -3.0, hi: 3.0 }) < 1e-3);
    }
}
