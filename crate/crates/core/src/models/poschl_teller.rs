use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use crate::error::{QesError, Result};
use crate::function::{Interval, SmoothFunction1d};
use crate::jet::Jet;
use crate::numkit::hyp2f1_poly_jet;
use crate::susy::{eigenstate, Level, QesModel};

/// Angle margin keeping evaluation windows off the cell edges.
const WINDOW_MARGIN: f64 = 0.02;
/// Relative margin of the Dirichlet walls inside the cell.
const WALL_MARGIN: f64 = 1e-3;

/// `θ(x) = −2√2 B x`; the working cell is `0 < θ < π/2`.
fn theta(b: f64, x: Jet) -> Jet {
    x * (-2.0 * SQRT_2 * b)
}

/// `x` for a given angle `θ`.
pub fn x_of_theta(b: f64, th: f64) -> f64 {
    -th / (2.0 * SQRT_2 * b)
}

/// The cell `x ∈ (−π/(4√2B), 0)`.
pub fn cell(b: f64) -> Interval {
    Interval {
        lo: x_of_theta(b, FRAC_PI_2),
        hi: 0.0,
    }
}

fn angle_window(b: f64, margin: f64) -> Interval {
    Interval {
        lo: x_of_theta(b, FRAC_PI_2 - margin),
        hi: x_of_theta(b, margin),
    }
}

/// Default evaluation window on the cell.
pub fn cell_window(b: f64) -> Interval {
    angle_window(b, WINDOW_MARGIN)
}

/// `u = B / cos θ`, the scalar-field variable of the point `x`.
pub fn u_of_x(b: f64, x: f64) -> f64 {
    b / theta(b, Jet::constant(x)).value().cos()
}

/// Inverse of [`u_of_x`] on the cell; needs `u > B`.
pub fn x_of_u(b: f64, u: f64) -> Result<f64> {
    if !(u > b) {
        return Err(QesError::domain(format!("u must exceed B = {b}"), u));
    }
    Ok(x_of_theta(b, (b / u).acos()))
}

fn positive_b(b: f64) -> Result<()> {
    if b.is_finite() && b > 0.0 {
        Ok(())
    } else {
        Err(QesError::usage(format!("B must be positive, got {b}")))
    }
}

/// The model generated by `W₊ = 4√2B tan θ` with `ε = 8B²`, together with
/// closed forms of `W`, `V` and `V̄` on the cell.
#[derive(Debug, Clone)]
pub struct PoschlTellerBundle {
    pub b: f64,
    pub model: QesModel,
    /// `2√2B cot θ + 3√2B tan θ`.
    pub w: SmoothFunction1d,
    /// `15B² tan² θ + 14B²`.
    pub v: SmoothFunction1d,
    /// `8B² cot² θ + 3B² tan² θ + 10B²`.
    pub v_bar: SmoothFunction1d,
}

pub fn poschl_teller_bundle(b: f64) -> Result<PoschlTellerBundle> {
    positive_b(b)?;
    let c = cell(b);
    let edges = vec![c.lo, c.hi];
    let wp = SmoothFunction1d::new("4√2B tan θ", c, move |x| {
        theta(b, Jet::var(x)).tan() * (4.0 * SQRT_2 * b)
    })
    .with_singularities(edges.clone());
    let model = QesModel::new(
        "poschl-teller",
        wp,
        8.0 * b * b,
        c,
        x_of_theta(b, FRAC_PI_4),
    )?
    .with_w_plus_zeros(vec![c.hi])
    .with_z_gauge(SQRT_2)?
    .with_window(cell_window(b))?
    .with_zmap_window(angle_window(b, 0.05))?;
    let span = c.width();
    let model = model.with_spectral_box(Interval {
        lo: c.lo + WALL_MARGIN * span,
        hi: c.hi - WALL_MARGIN * span,
    })?;
    let w = SmoothFunction1d::new("W (closed form)", c, move |x| {
        let t = theta(b, Jet::var(x));
        t.cot() * (2.0 * SQRT_2 * b) + t.tan() * (3.0 * SQRT_2 * b)
    })
    .with_singularities(edges.clone());
    let v = SmoothFunction1d::new("V (closed form)", c, move |x| {
        let t = theta(b, Jet::var(x)).tan();
        t * t * (15.0 * b * b) + 14.0 * b * b
    })
    .with_singularities(vec![c.lo]);
    let v_bar = SmoothFunction1d::new("Vbar (closed form)", c, move |x| {
        let th = theta(b, Jet::var(x));
        let (t, ct) = (th.tan(), th.cot());
        ct * ct * (8.0 * b * b) + t * t * (3.0 * b * b) + 10.0 * b * b
    })
    .with_singularities(edges);
    Ok(PoschlTellerBundle {
        b,
        model,
        w,
        v,
        v_bar,
    })
}

/// Partner eigenfunction `cos^{3/2}θ sin²θ ₂F₁(−n, 7/2+n; 5/2; sin²θ)`.
pub fn partner_tower(b: f64, n: u32) -> Result<SmoothFunction1d> {
    positive_b(b)?;
    hyp2f1_poly_jet(n, 3.5 + n as f64, 2.5, Jet::constant(0.0))?;
    let c = cell(b);
    Ok(
        SmoothFunction1d::new(format!("psibar_{}", n + 1), c, move |x| {
            let th = theta(b, Jet::var(x));
            let (s, co) = (th.sin(), th.cos());
            let f = hyp2f1_poly_jet(n, 3.5 + n as f64, 2.5, s * s).expect("validated parameters");
            co.powf(1.5) * s * s * f
        })
        .with_singularities(vec![c.lo, c.hi]),
    )
}

/// Tabulated energy `B²(7 + 4n)²` quoted for the tower; measured values are
/// obtained with [`crate::susy::verify_eigenpair`] and reported next to it.
pub fn quoted_tower_energy(b: f64, n: u32) -> f64 {
    b * b * (7.0 + 4.0 * n as f64).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerVariable {
    X,
    U,
}

/// Image of the partner tower under `(−d/dx + W)`, written in `x`
/// (`15 cos^{5/2}θ sinθ F₁ − 4n(7/2+n) cos^{5/2}θ sin³θ F₂`) or in `u`
/// (`15B⁶u^{−7/2}√(u²−B²) F₁ − 4n(7/2+n) B⁶ u^{−11/2}(u²−B²)^{3/2} F₂`), with
/// `F₁ = ₂F₁(−n, 7/2+n; 5/2; ·)` and `F₂ = ₂F₁(1−n, 9/2+n; 7/2; ·)`.
pub fn mapped_tower(b: f64, n: u32, variable: TowerVariable) -> Result<SmoothFunction1d> {
    positive_b(b)?;
    let nf = n as f64;
    let k2 = 4.0 * nf * (3.5 + nf);
    let f2 = move |s2: Jet| {
        if n == 0 {
            Jet::constant(0.0)
        } else {
            hyp2f1_poly_jet(n - 1, 4.5 + nf, 3.5, s2).expect("validated parameters")
        }
    };
    let f1 = move |s2: Jet| hyp2f1_poly_jet(n, 3.5 + nf, 2.5, s2).expect("validated parameters");
    match variable {
        TowerVariable::X => {
            let c = cell(b);
            Ok(
                SmoothFunction1d::new(format!("psi_{}(x)", n + 2), c, move |x| {
                    let th = theta(b, Jet::var(x));
                    let (s, co) = (th.sin(), th.cos());
                    let s2 = s * s;
                    co.powf(2.5) * s * (f1(s2) * 15.0 - s2 * f2(s2) * k2)
                })
                .with_singularities(vec![c.lo, c.hi]),
            )
        }
        TowerVariable::U => {
            let b6 = b.powi(6);
            Ok(SmoothFunction1d::new(
                format!("eta_{}(u)", n + 2),
                Interval {
                    lo: b,
                    hi: f64::INFINITY,
                },
                move |u| {
                    let u = Jet::var(u);
                    let r = u * u - b * b;
                    let s2 = r / (u * u);
                    let root = r.sqrt();
                    (u.powf(-3.5) * root * f1(s2) * 15.0 - u.powf(-5.5) * root * r * f2(s2) * k2)
                        * b6
                },
            )
            .with_singularities(vec![b]))
        }
    }
}

/// Largest deviation of `η(u) / [ψ(x(u)) · η₀(u)/ψ₀(x(u))]` from its value at
/// the first sample, relative to that value; `η₀ = √(u(u²−B²))`.
pub fn mapped_tower_cross_route(b: f64, n: u32, us: &[f64]) -> Result<f64> {
    let bundle = poschl_teller_bundle(b)?;
    let psi0 = eigenstate(&bundle.model, Level::Ground)?;
    let psi = mapped_tower(b, n, TowerVariable::X)?;
    let eta = mapped_tower(b, n, TowerVariable::U)?;
    let mut reference = None;
    let mut worst = 0.0f64;
    for &u in us {
        let x = x_of_u(b, u)?;
        let eta0 = (u * (u * u - b * b)).sqrt();
        let mapped = psi.checked_value(x)? * eta0 / psi0.checked_value(x)?;
        let ratio = eta.checked_value(u)? / mapped;
        match reference {
            None => reference = Some(ratio),
            Some(r) => worst = worst.max((ratio / r - 1.0).abs()),
        }
    }
    Ok(worst)
}
