use crate::error::{QesError, Result};
use crate::function::{Interval, SmoothFunction1d};
use crate::jet::Jet;
use crate::numkit::{fd_first, fd_second, integrate_ode_1st, Trajectory};
use crate::sl2::{Coefficient, PolyCoeffs, ZOperator};

/// Offset of the default profile start above the largest root of the cubic.
const START_OFFSET: f64 = 1e-4;

/// Static scalar field with `2V_s(ρ) − K = (ρ² − A)(ρ² − B)(ρ² − C)` and
/// `A = 2(B + C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarFieldModel {
    b: f64,
    c: f64,
    a: f64,
    k: f64,
    rho_start: f64,
    rho_stop: f64,
}

pub fn scalar_field_model(b: f64, c: f64) -> Result<ScalarFieldModel> {
    if !(b.is_finite() && c.is_finite()) {
        return Err(QesError::usage("B and C must be finite"));
    }
    if b == c {
        return Err(QesError::Degenerate(format!(
            "B = C = {b}: the first excited mode collapses onto the zero mode"
        )));
    }
    let a = 2.0 * (b + c);
    let top = a.max(b).max(c).max(0.0);
    let rho_start = top.sqrt() + START_OFFSET;
    Ok(ScalarFieldModel {
        b,
        c,
        a,
        k: 0.0,
        rho_start,
        rho_stop: rho_start + 2.0,
    })
}

impl ScalarFieldModel {
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn rho_start(&self) -> f64 {
        self.rho_start
    }

    pub fn rho_stop(&self) -> f64 {
        self.rho_stop
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = k;
        self
    }

    pub fn with_rho_range(mut self, start: f64, stop: f64) -> Result<Self> {
        if !(start.is_finite() && stop > start) {
            return Err(QesError::usage(format!(
                "invalid profile range [{start}, {stop}]"
            )));
        }
        self.rho_start = start;
        self.rho_stop = stop;
        Ok(self)
    }

    /// Elementary symmetric functions `(A+B+C, AB+AC+BC, ABC)`.
    pub fn symmetric(&self) -> (f64, f64, f64) {
        let (a, b, c) = (self.a, self.b, self.c);
        (a + b + c, a * b + a * c + b * c, a * b * c)
    }

    fn ordered_bc(&self) -> (f64, f64) {
        (self.b.min(self.c), self.b.max(self.c))
    }

    /// `(u − A)(u − B)(u − C)`.
    pub fn cubic(&self, u: f64) -> f64 {
        let (lo, hi) = self.ordered_bc();
        (u - self.a) * (u - lo) * (u - hi)
    }

    fn cubic_jet(&self, u: Jet) -> Jet {
        let (lo, hi) = self.ordered_bc();
        (u - self.a) * (u - lo) * (u - hi)
    }

    /// Largest root of the cubic; the profile and the `u`-functions live above it.
    pub fn top_root(&self) -> f64 {
        self.a.max(self.b).max(self.c)
    }

    pub fn u_domain(&self) -> Interval {
        Interval {
            lo: self.top_root(),
            hi: f64::INFINITY,
        }
    }

    pub fn omega1_sq(&self) -> f64 {
        2.0 * (self.b - self.c).powi(2)
    }

    /// `V_s(ρ) = ((ρ²−A)(ρ²−B)(ρ²−C) + K)/2`.
    pub fn v_s(&self) -> SmoothFunction1d {
        let m = *self;
        SmoothFunction1d::new("V_s", Interval::real_line(), move |rho| {
            let r = Jet::var(rho);
            (m.cubic_jet(r * r) + m.k) * 0.5
        })
    }

    /// `dV_s/dρ = ρ P'(ρ²)`.
    pub fn v_s_prime(&self, rho: f64) -> f64 {
        let (s1, s2, _) = self.symmetric();
        let u = rho * rho;
        rho * (3.0 * u * u - 2.0 * s1 * u + s2)
    }

    /// `d²V_s/dρ² = 15ρ⁴ − 6(A+B+C)ρ² + (AB+AC+BC)`.
    pub fn v_s_second(&self, rho: f64) -> f64 {
        let (s1, s2, _) = self.symmetric();
        let u = rho * rho;
        15.0 * u * u - 6.0 * s1 * u + s2
    }

    /// Zero mode `η₀(u) = √((u−A)(u−B)(u−C))`.
    pub fn eta0(&self) -> SmoothFunction1d {
        let m = *self;
        SmoothFunction1d::new("eta0(u)", self.u_domain(), move |u| {
            m.cubic_jet(Jet::var(u)).sqrt()
        })
        .with_singularities(vec![self.top_root()])
    }

    /// First excited mode `η₁(u) = √(u−A)(u − (B+C)/2)`, `ω² = 2(B−C)²`.
    pub fn eta1(&self) -> SmoothFunction1d {
        let (a, h) = (self.a, 0.5 * (self.b + self.c));
        SmoothFunction1d::new("eta1(u)", self.u_domain(), move |u| {
            let u = Jet::var(u);
            (u - a).sqrt() * (u - h)
        })
        .with_singularities(vec![self.top_root()])
    }

    /// `z(u) = (u − (B+C)/2)/√((u−B)(u−C))`.
    pub fn z_of_u(&self) -> SmoothFunction1d {
        let (b, c) = (self.b, self.c);
        SmoothFunction1d::new("z(u)", self.u_domain(), move |u| {
            let u = Jet::var(u);
            (u - 0.5 * (b + c)) * ((u - b) * (u - c)).powf(-0.5)
        })
        .with_singularities(vec![self.b, self.c])
    }
}

/// Second-order stability operator in `u = ρ̄²`:
/// `L η = 4uP(u)η'' + 2(4u³ − 3s₁u² + 2s₂u − s₃)η' + (−15u² + 6s₁u)η`,
/// with eigen-equation `L η = (s₂ − ω²) η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UOperator {
    model: ScalarFieldModel,
}

pub fn stability_operator_u(m: &ScalarFieldModel) -> UOperator {
    UOperator { model: *m }
}

impl UOperator {
    pub fn coefficients(&self, u: f64) -> (f64, f64, f64) {
        let m = &self.model;
        let (s1, s2, s3) = m.symmetric();
        (
            4.0 * u * m.cubic(u),
            2.0 * (4.0 * u * u * u - 3.0 * s1 * u * u + 2.0 * s2 * u - s3),
            -15.0 * u * u + 6.0 * s1 * u,
        )
    }

    pub fn shift(&self) -> f64 {
        self.model.symmetric().1
    }

    pub fn apply(&self, eta: &SmoothFunction1d, u: f64) -> Result<f64> {
        let j = eta.checked_jet(u)?;
        let (p2, p1, p0) = self.coefficients(u);
        Ok(p2 * j.d2() + p1 * j.d1() + p0 * j.value())
    }

    /// `ω² = s₂ − Lη/η` at `u`.
    pub fn omega_sq_at(&self, eta: &SmoothFunction1d, u: f64) -> Result<f64> {
        let v = eta.checked_value(u)?;
        if v == 0.0 {
            return Err(QesError::Degenerate(format!(
                "{} vanishes at u = {u}",
                eta.label()
            )));
        }
        Ok(self.shift() - self.apply(eta, u)? / v)
    }

    /// `max|Lη − (s₂ − ω²)η|` over `samples`, relative to the size of the terms.
    pub fn residual(&self, eta: &SmoothFunction1d, omega_sq: f64, samples: &[f64]) -> Result<f64> {
        let (mut err, mut scale) = (0.0f64, 0.0f64);
        for &u in samples {
            let j = eta.checked_jet(u)?;
            let (p2, p1, p0) = self.coefficients(u);
            let lhs = p2 * j.d2() + p1 * j.d1() + p0 * j.value();
            let rhs = (self.shift() - omega_sq) * j.value();
            err = err.max((lhs - rhs).abs());
            scale = scale.max(
                (p2 * j.d2()).abs() + (p1 * j.d1()).abs() + (p0 * j.value()).abs() + rhs.abs(),
            );
        }
        Ok(err / scale.max(f64::MIN_POSITIVE))
    }
}

/// The stability operator after the gauge `η = η₀ φ(z)` and the change to `z`:
/// `q2 = 3(B+C)²(z²−1)² + 2|B−C|(B+C) z (z²−1)^{3/2} − (B−C)² z²(z²−1)`,
/// `q1 = 2(B−C)² z`, `q0 = 0`, valid for `z ≥ 1`. The middle term carries
/// `|B−C|` so that the operator is symmetric under `B ↔ C`.
pub fn scalar_z_operator(m: &ScalarFieldModel) -> ZOperator {
    let (b, c) = (m.b, m.c);
    let (sum, diff) = (b + c, b - c);
    let q2 = if sum == 0.0 {
        let d2 = diff * diff;
        Coefficient::Poly(PolyCoeffs::new(vec![0.0, 0.0, d2, 0.0, -d2]))
    } else {
        Coefficient::rule(move |z| {
            let w = z * z - 1.0;
            if w < 0.0 {
                return Err(QesError::domain("scalar-field q2 needs z >= 1", z));
            }
            Ok(
                3.0 * sum * sum * w * w + 2.0 * diff.abs() * sum * z * w.powf(1.5)
                    - diff * diff * z * z * w,
            )
        })
    };
    ZOperator {
        q2,
        q1: Coefficient::Poly(PolyCoeffs::new(vec![0.0, 2.0 * diff * diff])),
        q0: Coefficient::Poly(PolyCoeffs::zero()),
        z_domain: Interval {
            lo: 1.0,
            hi: f64::INFINITY,
        },
    }
}

/// `((s₂η − Lη)/η₀, (Tφ)(z(u)))` for `η = η₀ φ(z(u))`; the two agree when the
/// `z`-operator is the gauge image of the `u`-operator.
pub fn z_u_consistency(m: &ScalarFieldModel, phi: &PolyCoeffs, u: f64) -> Result<(f64, f64)> {
    let eta0 = m.eta0();
    let z = m.z_of_u();
    z.checked_value(u)?;
    let p = phi.clone();
    let (e0, zz) = (eta0.clone(), z.clone());
    let eta = SmoothFunction1d::new("eta0*phi(z)", m.u_domain(), move |u| {
        e0.jet(u) * p.eval_jet(zz.jet(u))
    })
    .with_singularities(vec![m.top_root()]);
    let op = stability_operator_u(m);
    let lhs = (op.shift() * eta.checked_value(u)? - op.apply(&eta, u)?) / eta0.checked_value(u)?;
    let zu = z.value(u);
    let rhs = scalar_z_operator(m).apply_poly(phi, zu)?;
    Ok((lhs, rhs))
}

/// Soliton profile from the model's default start.
pub fn soliton_profile(m: &ScalarFieldModel, y_span: Interval, h: f64) -> Result<Trajectory> {
    soliton_profile_from(m, m.rho_start, y_span, h)
}

/// RK4 solution of `dρ/dy = +√((ρ²−A)(ρ²−B)(ρ²−C))`, stopped once `ρ`
/// exceeds the model's `rho_stop`.
pub fn soliton_profile_from(
    m: &ScalarFieldModel,
    rho0: f64,
    y_span: Interval,
    h: f64,
) -> Result<Trajectory> {
    let p0 = m.cubic(rho0 * rho0);
    if !(p0 >= 0.0) {
        return Err(QesError::domain(
            format!("profile start in the forbidden region, P(rho^2) = {p0}"),
            rho0,
        ));
    }
    let model = *m;
    let stop = m.rho_stop;
    integrate_ode_1st(
        move |_, rho| model.cubic(rho * rho).max(0.0).sqrt(),
        rho0,
        y_span.lo,
        y_span.hi,
        h,
        move |_, rho| rho > stop,
    )
}

/// Points per profile used by [`resolved_soliton_profile`].
pub const PROFILE_POINTS: usize = 2000;

/// Profile whose step is chosen so that the run from the default start to
/// `rho_stop` takes about `points` steps; a pilot run at step `1e-3` on
/// `y_span` measures the length.
pub fn resolved_soliton_profile(
    m: &ScalarFieldModel,
    y_span: Interval,
    points: usize,
) -> Result<Trajectory> {
    if points < 5 {
        return Err(QesError::usage(format!(
            "profile needs at least 5 points, got {points}"
        )));
    }
    let pilot = soliton_profile(m, y_span, 1e-3)?;
    let length = (pilot.last().0 - y_span.lo).max(1e-3);
    let h = length / points as f64;
    soliton_profile(
        m,
        Interval {
            lo: y_span.lo,
            hi: y_span.lo + 1.5 * length,
        },
        h,
    )
}

/// Finite-difference checks along a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileCheck {
    /// `max|dρ/dy − η₀(ρ²)| / max(1, |η₀|)`.
    pub zero_mode_defect: f64,
    /// `max|d²ρ/dy² − V_s'(ρ)| / max(1, |V_s'|)`.
    pub static_defect: f64,
    pub points: usize,
}

pub fn profile_checks(m: &ScalarFieldModel, traj: &Trajectory) -> Result<ProfileCheck> {
    let pts = traj.uniform_points();
    if pts.len() < 5 {
        return Err(QesError::Degenerate(format!(
            "profile has only {} points",
            pts.len()
        )));
    }
    let h = traj.step;
    let rho: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (mut zm, mut st) = (0.0f64, 0.0f64);
    for i in 2..rho.len() - 2 {
        let at = |t: f64| rho[(i as isize + (t / h).round() as isize) as usize];
        let d1 = fd_first(at, 0.0, h);
        let d2 = fd_second(at, 0.0, h);
        let eta = m.cubic(rho[i] * rho[i]).max(0.0).sqrt();
        zm = zm.max((d1 - eta).abs() / eta.abs().max(1.0));
        let vp = m.v_s_prime(rho[i]);
        st = st.max((d2 - vp).abs() / vp.abs().max(1.0));
    }
    Ok(ProfileCheck {
        zero_mode_defect: zm,
        static_defect: st,
        points: rho.len(),
    })
}

/// Rows `(y, ρ̄, dρ̄/dy, η₀(ρ̄²), η₁(ρ̄²))` on the interior of a profile, with
/// the derivative taken by finite differences.
pub fn profile_table(m: &ScalarFieldModel, traj: &Trajectory) -> Vec<[f64; 5]> {
    let pts = traj.uniform_points();
    let h = traj.step;
    let half = 0.5 * (m.b + m.c);
    let mut rows = Vec::new();
    for i in 2..pts.len().saturating_sub(2) {
        let at = |t: f64| pts[(i as isize + (t / h).round() as isize) as usize].1;
        let (y, rho) = pts[i];
        let u = rho * rho;
        let eta1 = if u >= m.a {
            (u - m.a).sqrt() * (u - half)
        } else {
            f64::NAN
        };
        rows.push([
            y,
            rho,
            fd_first(at, 0.0, h),
            m.cubic(u).max(0.0).sqrt(),
            eta1,
        ]);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::fd_second as fd2;

    fn samples(m: &ScalarFieldModel) -> Vec<f64> {
        let lo = m.top_root();
        (1..=20).map(|i| lo + 0.05 + 0.3 * i as f64).collect()
    }

    #[test]
    fn parameters() {
        let m = scalar_field_model(1.0, -1.0).unwrap();
        assert_eq!(m.a(), 0.0);
        assert_eq!(m.omega1_sq(), 8.0);
        let m = scalar_field_model(2.0, 1.0).unwrap();
        assert_eq!(m.a(), 6.0);
        assert_eq!(m.omega1_sq(), 2.0);
        assert!(matches!(
            scalar_field_model(1.0, 1.0),
            Err(QesError::Degenerate(_))
        ));
    }

    #[test]
    fn potential_derivatives_against_finite_differences() {
        let m = scalar_field_model(1.0, -1.0).unwrap().with_k(0.3);
        let v = m.v_s();
        for &r in &[0.3, 0.9, 1.4] {
            assert!((v.d1(r) - m.v_s_prime(r)).abs() < 1e-12);
            assert!((v.d2(r) - m.v_s_second(r)).abs() < 1e-11);
            assert!((fd2(|t| v.value(t), r, 1e-3) - m.v_s_second(r)).abs() < 1e-6);
            let u = r * r;
            assert!(
                (2.0 * v.value(r) - 0.3 - (u - m.a()) * (u - m.b()) * (u - m.c())).abs() < 1e-14
            );
        }
    }

    #[test]
    fn b_c_exchange_symmetry() {
        let (m, n) = (
            scalar_field_model(2.0, -0.5).unwrap(),
            scalar_field_model(-0.5, 2.0).unwrap(),
        );
        for &r in &[0.2, 1.1, 2.3] {
            assert_eq!(m.v_s().value(r), n.v_s().value(r));
        }
        assert_eq!(m.omega1_sq(), n.omega1_sq());
    }

    #[test]
    fn explicit_modes_solve_the_u_equation() {
        for (b, c) in [(1.0, -1.0), (2.0, 1.0), (0.7, -1.6)] {
            let m = scalar_field_model(b, c).unwrap();
            let op = stability_operator_u(&m);
            let s = samples(&m);
            assert!(
                op.residual(&m.eta0(), 0.0, &s).unwrap() < 1e-8,
                "({b},{c}) eta0"
            );
            assert!(
                op.residual(&m.eta1(), m.omega1_sq(), &s).unwrap() < 1e-8,
                "({b},{c}) eta1"
            );
        }
    }

    #[test]
    fn non_eigenfunction_has_residual() {
        let m = scalar_field_model(1.0, -1.0).unwrap();
        let f = SmoothFunction1d::new("u^2", m.u_domain(), |u| Jet::var(u) * Jet::var(u));
        let op = stability_operator_u(&m);
        assert!(op.residual(&f, 0.0, &samples(&m)).unwrap() > 1e-3);
    }

    #[test]
    fn z_operator_special_case() {
        let m = scalar_field_model(1.0, -1.0).unwrap();
        let t = scalar_z_operator(&m);
        let q2 = t.q2.as_poly().unwrap();
        assert_eq!(q2.coeffs, vec![0.0, 0.0, 4.0, 0.0, -4.0]);
        assert_eq!(t.q1.as_poly().unwrap().coeffs, vec![0.0, 8.0]);
    }

    #[test]
    fn z_and_u_operators_consistent() {
        for (b, c) in [
            (1.0, -1.0),
            (2.0, 1.0),
            (1.0, 2.0),
            (0.7, -1.6),
            (-1.6, 0.7),
        ] {
            let m = scalar_field_model(b, c).unwrap();
            for phi in [vec![1.0], vec![0.0, 1.0], vec![0.0, 0.0, 1.0]] {
                let phi = PolyCoeffs::new(phi);
                for u in samples(&m) {
                    let (l, r) = z_u_consistency(&m, &phi, u).unwrap();
                    assert!(
                        (l - r).abs() <= 1e-6 * r.abs().max(1.0),
                        "({b},{c}) u={u}: {l} vs {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn profile_satisfies_first_integral() {
        let m = scalar_field_model(1.0, -1.0).unwrap();
        let traj = soliton_profile(&m, Interval { lo: 0.0, hi: 20.0 }, 1e-3).unwrap();
        assert!(traj.stopped_early());
        let pts = traj.uniform_points();
        assert!(pts.windows(2).all(|w| w[1].1 > w[0].1));
        let c = profile_checks(&m, &traj).unwrap();
        assert!(c.zero_mode_defect < 1e-6, "{c:?}");
        assert!(c.static_defect < 1e-5, "{c:?}");
    }

    #[test]
    fn resolved_profile_meets_tolerances_for_steep_models() {
        for (b, c) in [(2.0, 1.0), (3.0, 2.0)] {
            let m = scalar_field_model(b, c).unwrap();
            let t = resolved_soliton_profile(&m, Interval { lo: 0.0, hi: 20.0 }, PROFILE_POINTS)
                .unwrap();
            assert!(t.stopped_early());
            let k = profile_checks(&m, &t).unwrap();
            assert!(k.points >= PROFILE_POINTS - 2, "{k:?}");
            assert!(
                k.zero_mode_defect < 1e-6 && k.static_defect < 1e-5,
                "({b},{c}) {k:?}"
            );
        }
    }

    #[test]
    fn profile_from_root_is_constant() {
        let m = scalar_field_model(1.0, -1.0).unwrap();
        let t = soliton_profile_from(&m, 1.0, Interval { lo: 0.0, hi: 1.0 }, 1e-2).unwrap();
        assert!(t.points.iter().all(|p| p.1 == 1.0));
    }

    #[test]
    fn forbidden_start_rejected() {
        let m = scalar_field_model(1.0, -1.0).unwrap();
        // u = 0.25 lies between the roots 0 and 1 where the cubic is negative.
        let r = soliton_profile_from(&m, 0.5, Interval { lo: 0.0, hi: 1.0 }, 1e-2);
        assert!(matches!(r, Err(QesError::Domain { .. })));
    }
}
