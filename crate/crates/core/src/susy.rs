//! Supersymmetric construction of a potential with two algebraic levels.
//!
//! Everything is generated from a single function `W₊` and the level `ε`:
//!
//! ```text
//! W  = ½W₊ + ε/W₊ − W₊'/(2W₊)        W₁ = ½W₊ − ε/W₊ + W₊'/(2W₊)
//! V  = ½W² − ½W'                      V̄  = ½W² + ½W'
//! ψ₀ = √W₊ e^{−½∫W₊} e^{−ε∫1/W₊}     (E = 0)
//! ψ₁ = √W₊ e^{−½∫W₊} e^{+ε∫1/W₊}     (E = ε)
//! ```
//!
//! All antiderivatives are anchored at the model's reference point, so every
//! eigenstate is defined up to one multiplicative constant.

use crate::error::{QesError, Result};
use crate::function::{Interval, SmoothFunction1d, DEFAULT_SINGULARITY_MARGIN};
use crate::jet::Jet;
use crate::numkit::{integrate, integrate_samples, Grid1d};

/// Default number of samples used by [`verify_eigenpair`].
pub const DEFAULT_VERIFY_POINTS: usize = 2001;

/// A generating superpotential together with its algebraic level and the
/// sign-definite branch on which the construction is carried out.
#[derive(Debug, Clone)]
pub struct QesModel {
    name: String,
    w_plus: SmoothFunction1d,
    w_plus_zeros: Vec<f64>,
    epsilon: f64,
    x_domain: Interval,
    x_ref: f64,
    mass_factor: f64,
    z_gauge: f64,
    window: Interval,
    zmap_window: Interval,
    spectral_box: Option<Interval>,
}

impl QesModel {
    /// `x_domain` is the working branch; `w_plus` must keep one sign on it.
    pub fn new(
        name: impl Into<String>,
        w_plus: SmoothFunction1d,
        epsilon: f64,
        x_domain: Interval,
        x_ref: f64,
    ) -> Result<Self> {
        let name = name.into();
        if !epsilon.is_finite() || epsilon == 0.0 {
            return Err(QesError::usage(format!(
                "model {name}: epsilon must be finite and nonzero (the z-map degenerates at 0)"
            )));
        }
        if !(x_ref > x_domain.lo && x_ref < x_domain.hi) {
            return Err(QesError::usage(format!(
                "model {name}: x_ref = {x_ref} not inside the branch {x_domain}"
            )));
        }
        let w0 = w_plus.value(x_ref);
        if !w0.is_finite() || w0 == 0.0 {
            return Err(QesError::Branch(format!(
                "model {name}: W+ must be finite and nonzero at x_ref = {x_ref}, got {w0}"
            )));
        }
        let window = default_window(&x_domain, x_ref);
        Ok(QesModel {
            name,
            w_plus,
            w_plus_zeros: Vec::new(),
            epsilon,
            x_domain,
            x_ref,
            mass_factor: 0.5,
            z_gauge: 1.0,
            window,
            zmap_window: window,
            spectral_box: None,
        })
    }

    /// Declares zeros of `W₊`; they are singular points of `W`, `W₁`, `V`.
    pub fn with_w_plus_zeros(mut self, zeros: Vec<f64>) -> Self {
        self.w_plus_zeros = zeros;
        self
    }

    /// Value of the z-variable at `x_ref` (default 1).
    pub fn with_z_gauge(mut self, z_ref: f64) -> Result<Self> {
        if !(z_ref.is_finite() && z_ref > 0.0) {
            return Err(QesError::usage(format!(
                "z gauge must be positive, got {z_ref}"
            )));
        }
        self.z_gauge = z_ref;
        Ok(self)
    }

    pub fn with_window(mut self, window: Interval) -> Result<Self> {
        self.check_inside_branch(&window)?;
        self.window = window;
        Ok(self)
    }

    pub fn with_zmap_window(mut self, window: Interval) -> Result<Self> {
        self.check_inside_branch(&window)?;
        self.zmap_window = window;
        Ok(self)
    }

    pub fn with_spectral_box(mut self, b: Interval) -> Result<Self> {
        if !b.is_finite() {
            return Err(QesError::usage("spectral box must be finite"));
        }
        self.spectral_box = Some(b);
        Ok(self)
    }

    /// The construction is formulated for `-½ d²/dx²`; other conventions are rejected.
    pub fn with_mass_factor(mut self, mass_factor: f64) -> Result<Self> {
        if mass_factor != 0.5 {
            return Err(QesError::usage(format!(
                "the supersymmetric construction uses mass_factor 1/2, got {mass_factor}"
            )));
        }
        self.mass_factor = mass_factor;
        Ok(self)
    }

    fn check_inside_branch(&self, w: &Interval) -> Result<()> {
        if w.lo <= self.x_domain.lo || w.hi >= self.x_domain.hi {
            return Err(QesError::Branch(format!(
                "window {w} must lie strictly inside the branch {}",
                self.x_domain
            )));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn w_plus(&self) -> &SmoothFunction1d {
        &self.w_plus
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn x_domain(&self) -> Interval {
        self.x_domain
    }

    pub fn x_ref(&self) -> f64 {
        self.x_ref
    }

    pub fn mass_factor(&self) -> f64 {
        self.mass_factor
    }

    pub fn z_gauge(&self) -> f64 {
        self.z_gauge
    }

    pub fn window(&self) -> Interval {
        self.window
    }

    pub fn zmap_window(&self) -> Interval {
        self.zmap_window
    }

    pub fn spectral_box(&self) -> Option<Interval> {
        self.spectral_box
    }

    /// +1 or −1: the sign of `W₊` on the working branch.
    pub fn branch_sign(&self) -> f64 {
        self.w_plus.value(self.x_ref).signum()
    }

    /// Singular points of the derived functions: those of `W₊` plus its zeros.
    pub fn singular_points(&self) -> Vec<f64> {
        let mut s = self.w_plus.singularities().to_vec();
        s.extend_from_slice(&self.w_plus_zeros);
        s
    }

    /// Fails unless `W₊` keeps the branch sign at every node of `grid`.
    pub fn check_branch_grid(&self, grid: &Grid1d) -> Result<()> {
        let sign = self.branch_sign();
        for x in grid.points() {
            let w = self.w_plus.value(x);
            if !(w.is_finite() && w.signum() == sign && w != 0.0) {
                return Err(QesError::Branch(format!(
                    "W+ = {w} at x = {x} leaves the sign-definite branch of model {}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

fn default_window(domain: &Interval, x_ref: f64) -> Interval {
    let lo = if domain.lo.is_finite() {
        domain.lo + 0.05 * (x_ref - domain.lo)
    } else {
        x_ref - 2.0
    };
    let hi = if domain.hi.is_finite() {
        domain.hi - 0.05 * (domain.hi - x_ref)
    } else {
        x_ref + 2.0
    };
    Interval { lo, hi }
}

/// `∫_{x_ref}^{x} f`, carried as a jet (adaptive quadrature for the value,
/// the integrand's jet for the derivatives).
pub fn antiderivative(
    f: &SmoothFunction1d,
    x_ref: f64,
    label: impl Into<String>,
) -> SmoothFunction1d {
    let inner = f.clone();
    SmoothFunction1d::new(label, f.domain(), move |x| {
        let value = integrate(|t| inner.value(t), x_ref, x).unwrap_or(f64::NAN);
        inner.jet(x).integral(value)
    })
    .with_singularities(f.singularities().to_vec())
}

fn derived(
    model: &QesModel,
    label: &str,
    rule: impl Fn(Jet) -> Jet + Send + Sync + 'static,
) -> SmoothFunction1d {
    let wp = model.w_plus.clone();
    SmoothFunction1d::new(label, model.x_domain, move |x| rule(wp.jet(x)))
        .with_singularities(model.singular_points())
}

/// `W = ½W₊ + ε/W₊ − W₊'/(2W₊)`.
pub fn make_w(model: &QesModel) -> SmoothFunction1d {
    let eps = model.epsilon;
    derived(model, &format!("W[{}]", model.name), move |wp| {
        wp * 0.5 + (eps - wp.derivative() * 0.5) / wp
    })
}

/// `W₁ = ½W₊ − ε/W₊ + W₊'/(2W₊)`.
pub fn make_w1(model: &QesModel) -> SmoothFunction1d {
    let eps = model.epsilon;
    derived(model, &format!("W1[{}]", model.name), move |wp| {
        wp * 0.5 - (eps - wp.derivative() * 0.5) / wp
    })
}

/// Which formula builds the potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialRoute {
    /// `½W² − ½W'` from the superpotential.
    Susy,
    /// Closed expression in `W₊` and its first two derivatives.
    WPlus,
}

pub fn potential_v(model: &QesModel, route: PotentialRoute) -> SmoothFunction1d {
    let eps = model.epsilon;
    match route {
        PotentialRoute::Susy => {
            let w = make_w(model);
            w.map(format!("V[{}]", model.name), |w| {
                (w * w - w.derivative()) * 0.5
            })
        }
        PotentialRoute::WPlus => derived(model, &format!("V+[{}]", model.name), move |wp| {
            let d1 = wp.derivative();
            let d2 = d1.derivative();
            let wp2 = wp * wp;
            wp2 * 0.125 + eps * eps * 0.5 / wp2 + eps * 0.5 - d1 * 0.5 - d1 * d1 / (wp2 * 8.0)
                + d2 / (wp * 4.0)
        }),
    }
}

/// `V̄ = ½W² + ½W'`.
pub fn partner_potential(model: &QesModel) -> SmoothFunction1d {
    make_w(model).map(format!("Vbar[{}]", model.name), |w| {
        (w * w + w.derivative()) * 0.5
    })
}

/// The two algebraic levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// `E = 0`.
    Ground,
    /// `E = ε`.
    Excited,
}

impl Level {
    pub fn energy(self, model: &QesModel) -> f64 {
        match self {
            Level::Ground => 0.0,
            Level::Excited => model.epsilon,
        }
    }
}

/// Unnormalized algebraic eigenstate in the `√W₊ e^{−½∫W₊} e^{∓ε∫1/W₊}` form.
///
/// On a branch where `W₊ < 0` the square root is taken of `|W₊|`, which only
/// changes the overall constant.
pub fn eigenstate(model: &QesModel, which: Level) -> Result<SmoothFunction1d> {
    let wp = model.w_plus.clone();
    let recip = wp
        .map("1/W+", |w| w.recip())
        .with_singularities(model.singular_points());
    let int_w = antiderivative(&wp, model.x_ref, "∫W+");
    let int_r = antiderivative(&recip, model.x_ref, "∫1/W+");
    let sign = match which {
        Level::Ground => -1.0,
        Level::Excited => 1.0,
    };
    let eps = model.epsilon;
    let label = match which {
        Level::Ground => format!("psi0[{}]", model.name),
        Level::Excited => format!("psi1[{}]", model.name),
    };
    Ok(SmoothFunction1d::new(label, model.x_domain, move |x| {
        let w = wp.jet(x);
        let expo = int_w.jet(x) * -0.5 + int_r.jet(x) * (sign * eps);
        w.abs().sqrt() * expo.exp()
    })
    .with_singularities(model.singular_points()))
}

/// `(−d/dx + W) φ`.
pub fn intertwine(w: &SmoothFunction1d, phi: &SmoothFunction1d) -> SmoothFunction1d {
    phi.zip_with(w, format!("(-d+W){}", phi.label()), |p, w| {
        w * p - p.derivative()
    })
}

/// `e^{−∫W}`: the zero-energy state built directly from the superpotential.
pub fn ground_state_from_w(model: &QesModel) -> SmoothFunction1d {
    let int_w = antiderivative(&make_w(model), model.x_ref, "∫W");
    int_w.map(format!("exp(-∫W)[{}]", model.name), |f| (-f).exp())
}

/// `(e^{−∫W₁}, ε)`: ground state of the partner potential `V̄`.
pub fn partner_ground_state(model: &QesModel) -> (SmoothFunction1d, f64) {
    let int_w1 = antiderivative(&make_w1(model), model.x_ref, "∫W1");
    let psi = int_w1.map(format!("psibar0[{}]", model.name), |f| (-f).exp());
    (psi, model.epsilon)
}

/// `(−d/dx + W) e^{−∫W₁}`: the `E = ε` state via the intertwining operator.
pub fn excited_state_from_partner(model: &QesModel) -> SmoothFunction1d {
    let (psi_bar, _) = partner_ground_state(model);
    intertwine(&make_w(model), &psi_bar)
}

/// Prefactor of the gauge transformation and its logarithm.
#[derive(Debug, Clone)]
pub struct GaugeData {
    /// `η(x) = √W₊ e^{−½∫W₊} e^{−ε∫dx/W₊}`; `ψ_n = η·φ_n(z(x))`.
    pub prefactor: SmoothFunction1d,
    /// `χ = −ln η`, so that `φ = e^χ ψ`.
    pub chi: SmoothFunction1d,
}

pub fn gauge_data(model: &QesModel) -> Result<GaugeData> {
    let prefactor = eigenstate(model, Level::Ground)?.relabel(format!("eta[{}]", model.name));
    let chi = prefactor.map(format!("chi[{}]", model.name), |p| -(p.abs().ln()));
    Ok(GaugeData { prefactor, chi })
}

/// Outcome of [`verify_eigenpair`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenpairCheck {
    /// `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩` on the window.
    pub e_rayleigh: f64,
    /// `max|Hψ − E ψ| / max|ψ|`.
    pub residual: f64,
    /// Spread `max − min` of `Hψ/ψ` over points with `|ψ| > 1e-3 max|ψ|`.
    pub constancy: f64,
    /// `max|ψ|` on the window.
    pub max_abs: f64,
}

/// Rayleigh quotient and pointwise eigen-equation diagnostics for `ψ` under
/// `H = −m d²/dx² + V` on `window`.
pub fn verify_eigenpair(
    psi: &SmoothFunction1d,
    v: &SmoothFunction1d,
    mass_factor: f64,
    window: &Interval,
) -> Result<EigenpairCheck> {
    verify_eigenpair_on(
        psi,
        v,
        mass_factor,
        &Grid1d::over(window, DEFAULT_VERIFY_POINTS)?,
    )
}

pub fn verify_eigenpair_on(
    psi: &SmoothFunction1d,
    v: &SmoothFunction1d,
    mass_factor: f64,
    grid: &Grid1d,
) -> Result<EigenpairCheck> {
    let window = grid.interval();
    psi.check_window(&window, DEFAULT_SINGULARITY_MARGIN)?;
    v.check_window(&window, DEFAULT_SINGULARITY_MARGIN)?;
    let mut values = Vec::with_capacity(grid.len());
    let mut h_values = Vec::with_capacity(grid.len());
    for x in grid.points() {
        let p = psi.checked_jet(x)?;
        let vx = v.checked_value(x)?;
        values.push(p.value());
        h_values.push(-mass_factor * p.d2() + vx * p.value());
    }
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_abs == 0.0 {
        return Err(QesError::Degenerate(format!(
            "{} vanishes on the whole window {window}",
            psi.label()
        )));
    }
    let h = grid.spacing();
    let num: Vec<f64> = values.iter().zip(&h_values).map(|(p, hp)| p * hp).collect();
    let den: Vec<f64> = values.iter().map(|p| p * p).collect();
    let e_rayleigh = integrate_samples(&num, h) / integrate_samples(&den, h);
    let residual = values
        .iter()
        .zip(&h_values)
        .map(|(p, hp)| (hp - e_rayleigh * p).abs())
        .fold(0.0f64, f64::max)
        / max_abs;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (p, hp) in values.iter().zip(&h_values) {
        if p.abs() > 1e-3 * max_abs {
            let r = hp / p;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    Ok(EigenpairCheck {
        e_rayleigh,
        residual,
        constancy: hi - lo,
        max_abs,
    })
}
