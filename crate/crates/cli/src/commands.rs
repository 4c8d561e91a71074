use qes_core::models::{
    cell_window, harmonic_control, mapped_tower, partner_tower, polynomial_model,
    poschl_teller_bundle, profile_checks, profile_table, quoted_tower_energy, razavy_model,
    resolved_soliton_profile, scalar_field_model, scalar_z_operator, sextic_model,
    stability_operator_u, ScalarFieldModel, TowerVariable, DEFAULT_SPECTRAL_POINTS, PROFILE_POINTS,
};
use qes_core::numkit::{chebyshev_nodes, lowest_spectrum, Grid1d};
use qes_core::sl2::{
    build_zmap, commutator_check, decompose_operator, decompose_operator_with, gauge_operator_t,
    quartic_equivalence_test, BasisElement, CasimirGauge, DecomposeOptions, PolyCoeffs,
    Sl2Decomposition, ZMap, ZOperator, DEFAULT_EQUIVALENCE_TOL,
};
use qes_core::susy::{
    eigenstate, intertwine, make_w, make_w1, partner_ground_state, partner_potential, potential_v,
    verify_eigenpair, Level, PotentialRoute, QesModel,
};
use qes_core::{Interval, QesError, SmoothFunction1d};

use crate::config::{ModelKind, RunConfig};
use crate::error::CliError;
use crate::report::{csv, num, Report, ReportRecord, Status};

const ROUTE_TOL: f64 = 1e-10;
const SUM_TOL: f64 = 1e-12;
const COEFF_TOL: f64 = 1e-8;
const KERNEL_TOL: f64 = 1e-10;
const MODE_TOL: f64 = 1e-8;
const ZERO_MODE_TOL: f64 = 1e-6;
const STATIC_TOL: f64 = 1e-5;
const PROFILE_SPAN: Interval = Interval { lo: 0.0, hi: 20.0 };
const SCALAR_FIT: Interval = Interval { lo: 1.05, hi: 3.0 };

/// Files produced by one command besides the report.
#[derive(Debug, Default)]
pub struct Outcome {
    pub report: Report,
    pub tables: Vec<(&'static str, String)>,
}

fn unsupported(cmd: &str, kind: ModelKind) -> CliError {
    CliError::usage(format!("`{cmd}` does not support model {kind}"))
}

/// Runs `f` and records its output; a library error becomes a failing record.
fn attempt(
    report: &mut Report,
    check: &str,
    f: impl FnOnce() -> qes_core::Result<Vec<ReportRecord>>,
) {
    match f() {
        Ok(records) => records.into_iter().for_each(|r| report.push(r)),
        Err(e) => report.push(ReportRecord::failed(check, e.to_string())),
    }
}

fn build_model(cfg: &RunConfig) -> Result<QesModel, CliError> {
    let p = |k: &str| cfg.param(k);
    let mut m = match cfg.model {
        ModelKind::Razavy => razavy_model(p("A"), p("alpha"))?,
        ModelKind::Sextic => sextic_model(p("a"), p("b"))?,
        ModelKind::Polynomial => {
            let coeffs: Vec<f64> = (0..=8).map(|k| p(&format!("c{k}"))).collect();
            let branch = Interval {
                lo: p("branch_lo"),
                hi: p("branch_hi"),
            };
            polynomial_model("polynomial", coeffs, p("epsilon"), branch, p("x_ref"))?
        }
        other => {
            return Err(CliError::usage(format!(
                "model {other} has no generating superpotential"
            )))
        }
    };
    if let (Some(lo), Some(hi)) = (cfg.grid.x_min, cfg.grid.x_max) {
        m = m.with_spectral_box(Interval { lo, hi })?;
    }
    Ok(m)
}

fn spectral_grid(cfg: &RunConfig, default_box: Option<Interval>) -> Result<Grid1d, CliError> {
    let bx = match (cfg.grid.x_min, cfg.grid.x_max) {
        (Some(lo), Some(hi)) => Interval { lo, hi },
        _ => default_box
            .ok_or_else(|| CliError::usage("no spectral box: pass --x-min and --x-max"))?,
    };
    Ok(Grid1d::over(
        &bx,
        cfg.grid.n.unwrap_or(DEFAULT_SPECTRAL_POINTS),
    )?)
}

fn zmap_of(m: &QesModel) -> qes_core::Result<ZMap> {
    build_zmap(m, &Grid1d::over(&m.zmap_window(), 801)?)
}

/// Expected basis coefficients for the catalog models (N = 1).
fn published_coefficients(cfg: &RunConfig) -> Option<Vec<(BasisElement, f64)>> {
    let p = |k: &str| cfg.param(k);
    match cfg.model {
        ModelKind::Razavy => {
            let (a, al) = (p("A"), p("alpha"));
            Some(vec![
                (BasisElement::PlusPlus, -al * al / 8.0),
                (BasisElement::PlusMinus, al * a / 3.0 - al * al / 12.0),
                (BasisElement::ZeroZero, al * a / 3.0 + al * al / 6.0),
                (BasisElement::MinusMinus, -al * al / 8.0),
                (BasisElement::Zero, al * a / 6.0 + al * al / 12.0),
            ])
        }
        ModelKind::Sextic => {
            let (a, b) = (p("a"), p("b"));
            Some(vec![
                (BasisElement::PlusPlus, -3.0 * b * b / (2.0 * a)),
                (BasisElement::PlusMinus, a / 3.0 - b / (2.0 * a)),
                (BasisElement::ZeroZero, a / 3.0 + b / a),
                (BasisElement::MinusMinus, -1.0 / (2.0 * a)),
                (BasisElement::Zero, a / 6.0 + b / (2.0 * a)),
            ])
        }
        _ => None,
    }
}

fn coefficient_records(
    d: &Sl2Decomposition,
    expect: Option<&[(BasisElement, f64)]>,
) -> Vec<ReportRecord> {
    let scale = expect.map_or(1.0, |e| e.iter().map(|p| p.1.abs()).fold(1.0, f64::max));
    BasisElement::ALL
        .iter()
        .map(|b| {
            let name = format!("coefficient {}", b.symbol());
            let c = d.coefficient(*b);
            match expect {
                Some(e) => {
                    let x = e.iter().find(|(k, _)| k == b).map_or(0.0, |p| p.1);
                    let tol = COEFF_TOL * if x == 0.0 { scale } else { x.abs() };
                    ReportRecord::compare(name, c, x, tol, "published closed form")
                }
                None => ReportRecord::info(name, Some(c), "no reference values for this model"),
            }
        })
        .collect()
}

fn kernel_records(
    d: &Sl2Decomposition,
    t: &ZOperator,
    max_k: usize,
) -> qes_core::Result<Vec<ReportRecord>> {
    Ok(vec![
        ReportRecord::bound(
            format!("round trip on z^k, k <= {max_k}"),
            d.round_trip_defect(t, max_k)?,
            KERNEL_TOL,
            "reconstruction at the decomposition samples",
        ),
        ReportRecord::bound(
            "remainder annihilates {1, z}",
            d.remainder_annihilation_defect(t)?,
            KERNEL_TOL,
            "kernel remainder",
        ),
        ReportRecord::info("remainder", None, remainder_text(d)),
    ])
}

fn remainder_text(d: &Sl2Decomposition) -> String {
    let q = d.remainder_q2.clone().trimmed();
    if q.max_abs_coeff() <= COEFF_TOL {
        "none (pure quadratic combination)".to_string()
    } else {
        let terms: Vec<String> = q
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > COEFF_TOL)
            .map(|(k, c)| format!("({c:.10}) z^{k}"))
            .collect();
        format!("[{}] d^2/dz^2", terms.join(" + "))
    }
}

fn equivalence_record(
    cfg: &RunConfig,
    m: &QesModel,
    zm: &ZMap,
) -> qes_core::Result<Vec<ReportRecord>> {
    let v = quartic_equivalence_test(m, zm, DEFAULT_EQUIVALENCE_TOL)?;
    let text = if v.equivalent {
        "equivalent"
    } else {
        "not equivalent"
    };
    let note = format!("{text}; fit residual {:.3e}; c = {:?}", v.fit_residual, v.c);
    let rec = match cfg.model {
        ModelKind::Razavy => ReportRecord::verdict(
            "quartic equivalence",
            v.equivalent,
            true,
            "catalog expectation",
        ),
        ModelKind::Sextic => ReportRecord::verdict(
            "quartic equivalence",
            v.equivalent,
            false,
            "catalog expectation",
        ),
        _ => ReportRecord::info(
            "quartic equivalence",
            Some(f64::from(u8::from(v.equivalent))),
            "",
        ),
    };
    let rec = rec.with_note(note);
    Ok(vec![if v.borderline {
        rec.with_status(Status::Borderline)
    } else {
        rec
    }])
}

fn decomposition_records(
    cfg: &RunConfig,
    m: &QesModel,
    zm: &ZMap,
) -> qes_core::Result<Vec<ReportRecord>> {
    let t = gauge_operator_t(m, zm);
    let d = match decompose_operator(&t, 1, zm.z_range()) {
        Ok(d) => d,
        Err(e @ QesError::Decomposition { .. }) if cfg.model == ModelKind::Polynomial => {
            return Ok(vec![ReportRecord::info(
                "sl(2) decomposition",
                None,
                format!("not applicable: {e}"),
            )]);
        }
        Err(e) => return Err(e),
    };
    let expect = published_coefficients(cfg);
    let mut out = coefficient_records(&d, expect.as_deref());
    if cfg.model == ModelKind::Sextic {
        let (a, b) = (cfg.param("a"), cfg.param("b"));
        let x = b.powi(3) / (2.0 * a);
        out.push(ReportRecord::compare(
            "remainder z^6 d^2 coefficient",
            d.remainder_q2.coeff(6),
            x,
            COEFF_TOL * x.abs(),
            "published closed form b^3/(2a)",
        ));
    }
    let max_k = if cfg.model == ModelKind::Sextic { 6 } else { 4 };
    out.extend(kernel_records(&d, &t, max_k)?);
    out.push(ReportRecord::info("decomposition", None, d.render(1e-12)));
    Ok(out)
}

fn spectral_records(
    m: &QesModel,
    grid: &Grid1d,
    k: usize,
    tol: f64,
) -> qes_core::Result<Vec<ReportRecord>> {
    let v = potential_v(m, PotentialRoute::WPlus);
    let s = lowest_spectrum(&v, grid, m.mass_factor(), k.max(2))?;
    Ok([0.0, m.epsilon()]
        .iter()
        .map(|&e| {
            let nearest = s
                .eigenvalues
                .iter()
                .copied()
                .min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()));
            ReportRecord::compare(
                format!("spectrum contains {e}"),
                nearest.unwrap_or(f64::NAN),
                e,
                tol,
                "algebraic level",
            )
        })
        .collect())
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if !matches!(
        cfg.model,
        ModelKind::Razavy | ModelKind::Sextic | ModelKind::Polynomial
    ) {
        return Err(unsupported("verify", cfg.model));
    }
    let m = build_model(cfg)?;
    let grid = m
        .spectral_box()
        .map(|b| spectral_grid(cfg, Some(b)))
        .transpose()?;
    let mut r = Report::default();

    attempt(&mut r, "superpotential construction", || {
        let (v1, v2) = (
            potential_v(&m, PotentialRoute::Susy),
            potential_v(&m, PotentialRoute::WPlus),
        );
        let (w, w1) = (make_w(&m), make_w1(&m));
        let (mut dv, mut dw) = (0.0f64, 0.0f64);
        for x in Grid1d::over(&m.window(), 64)?.points() {
            let vv = v2.checked_value(x)?;
            dv = dv.max((v1.checked_value(x)? - vv).abs() / vv.abs().max(1.0));
            let wp = m.w_plus().checked_value(x)?;
            dw =
                dw.max((w.checked_value(x)? + w1.checked_value(x)? - wp).abs() / wp.abs().max(1.0));
        }
        Ok(vec![
            ReportRecord::bound(
                "potential routes agree",
                dv,
                ROUTE_TOL,
                "relative, 64 window points",
            ),
            ReportRecord::bound("W + W1 = W+", dw, SUM_TOL, "relative, 64 window points"),
        ])
    });

    let v = potential_v(&m, PotentialRoute::WPlus);
    for (level, tag) in [(Level::Ground, "psi0"), (Level::Excited, "psi1")] {
        attempt(&mut r, &format!("{tag} eigenpair"), || {
            let c = verify_eigenpair(&eigenstate(&m, level)?, &v, m.mass_factor(), &m.window())?;
            Ok(vec![
                ReportRecord::compare(
                    format!("{tag} Rayleigh energy"),
                    c.e_rayleigh,
                    level.energy(&m),
                    cfg.tol,
                    "analytic level",
                ),
                ReportRecord::bound(
                    format!("{tag} residual"),
                    c.residual,
                    cfg.tol,
                    "relative residual on the window",
                ),
            ])
        });
    }

    attempt(&mut r, "gauge operator", || {
        let zm = zmap_of(&m)?;
        let t = gauge_operator_t(&m, &zm);
        let (mut d0, mut d1) = (0.0f64, 0.0f64);
        for z in chebyshev_nodes(&t.z_domain, 16) {
            d0 = d0.max(t.apply_poly(&PolyCoeffs::constant(1.0), z)?.abs());
            let tz = t.apply_poly(&PolyCoeffs::monomial(1, 1.0), z)?;
            d1 = d1.max((tz - m.epsilon() * z).abs() / (m.epsilon() * z).abs().max(1.0));
        }
        let mut out = vec![
            ReportRecord::bound("T(1) = 0", d0, SUM_TOL, "gauge operator"),
            ReportRecord::bound("T(z) = eps z", d1, SUM_TOL, "gauge operator"),
        ];
        out.extend(equivalence_record(cfg, &m, &zm)?);
        out.extend(decomposition_records(cfg, &m, &zm)?);
        Ok(out)
    });

    attempt(&mut r, "sl(2) commutators", || {
        let worst = (0..=8)
            .map(|n| commutator_check(n, 12).map(|c| c.max_defect()))
            .try_fold(0.0, |a: f64, d| d.map(|d| a.max(d)))?;
        Ok(vec![ReportRecord::bound(
            "sl(2) commutators, N <= 8, degree <= 12",
            worst,
            0.0,
            "exact algebra",
        )])
    });

    match grid {
        Some(g) => attempt(&mut r, "spectrum", || spectral_records(&m, &g, 4, cfg.tol)),
        None => r.push(ReportRecord::info(
            "spectrum",
            None,
            "skipped: no spectral box (pass --x-min and --x-max)",
        )),
    }
    Ok(Outcome {
        report: r,
        tables: Vec::new(),
    })
}

pub fn spectrum(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (v, mass, grid, analytic): (SmoothFunction1d, f64, Grid1d, Vec<(String, f64)>) =
        match cfg.model {
            ModelKind::Harmonic => {
                let h = harmonic_control(cfg.param("omega"))?;
                let grid = spectral_grid(cfg, Some(h.spectral_box))?;
                let levels = (0..cfg.k)
                    .map(|n| (format!("omega({n}+1/2)"), h.level(n)))
                    .collect();
                (h.potential, 0.5, grid, levels)
            }
            ModelKind::Razavy | ModelKind::Sextic | ModelKind::Polynomial => {
                let m = build_model(cfg)?;
                let grid = spectral_grid(cfg, m.spectral_box())?;
                let levels = vec![("0".to_string(), 0.0), ("epsilon".to_string(), m.epsilon())];
                (
                    potential_v(&m, PotentialRoute::WPlus),
                    m.mass_factor(),
                    grid,
                    levels,
                )
            }
            other => return Err(unsupported("spectrum", other)),
        };
    let mut r = Report::default();
    let s = match lowest_spectrum(&v, &grid, mass, cfg.k) {
        Ok(s) => s,
        Err(e) => {
            r.push(ReportRecord::failed("spectrum", e.to_string()));
            return Ok(Outcome {
                report: r,
                tables: Vec::new(),
            });
        }
    };
    let mut labels = vec![String::new(); s.eigenvalues.len()];
    for (name, e) in &analytic {
        let hit = s.find(*e, cfg.tol);
        let nearest = s
            .eigenvalues
            .iter()
            .copied()
            .min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()));
        r.push(ReportRecord::compare(
            format!("spectrum contains {name}"),
            nearest.unwrap_or(f64::NAN),
            *e,
            cfg.tol,
            "analytic level",
        ));
        if let Some(i) = hit {
            labels[i] = name.clone();
        }
    }
    r.push(ReportRecord::info(
        "grid",
        Some(grid.len() as f64),
        format!(
            "[{}, {}], Richardson over n and 2n-1",
            grid.x_min(),
            grid.x_max()
        ),
    ));
    let rows = s
        .eigenvalues
        .iter()
        .zip(&s.refinement_error)
        .zip(labels)
        .enumerate()
        .map(|(i, ((e, err), label))| [i.to_string(), num(*e), num(*err), label]);
    let table = csv(
        ["index", "eigenvalue", "refinement_error", "analytic_match"],
        rows,
    );
    Ok(Outcome {
        report: r,
        tables: vec![("spectrum.csv", table)],
    })
}

fn scalar_model(cfg: &RunConfig) -> Result<ScalarFieldModel, CliError> {
    Ok(scalar_field_model(cfg.param("B"), cfg.param("C"))?)
}

fn symmetric(m: &ScalarFieldModel) -> bool {
    m.b() + m.c() == 0.0
}

fn scalar_decomposition(m: &ScalarFieldModel) -> qes_core::Result<Vec<ReportRecord>> {
    if !symmetric(m) {
        return Ok(vec![ReportRecord::info(
            "sl(2) decomposition",
            None,
            "not applicable (B != -C)",
        )]);
    }
    let t = scalar_z_operator(m);
    let opts = DecomposeOptions {
        gauge: CasimirGauge::ZeroRaiseLower,
        ..Default::default()
    };
    let d = decompose_operator_with(&t, 1, SCALAR_FIT, &opts)?;
    let b2 = m.b() * m.b();
    let expect = [
        (BasisElement::PlusPlus, -4.0 * b2),
        (BasisElement::ZeroZero, 4.0 * b2),
        (BasisElement::Zero, 8.0 * b2),
        (BasisElement::Identity, 3.0 * b2),
    ];
    let mut out = coefficient_records(&d, Some(&expect));
    out.extend(kernel_records(&d, &t, 4)?);
    out.push(ReportRecord::info("decomposition", None, d.render(1e-12)));
    Ok(out)
}

pub fn decompose(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut r = Report::default();
    match cfg.model {
        ModelKind::ScalarField => {
            let m = scalar_model(cfg)?;
            attempt(&mut r, "sl(2) decomposition", || scalar_decomposition(&m));
        }
        ModelKind::Razavy | ModelKind::Sextic | ModelKind::Polynomial => {
            let m = build_model(cfg)?;
            attempt(&mut r, "sl(2) decomposition", || {
                let zm = zmap_of(&m)?;
                let mut out = decomposition_records(cfg, &m, &zm)?;
                out.extend(equivalence_record(cfg, &m, &zm)?);
                Ok(out)
            });
        }
        other => return Err(unsupported("decompose", other)),
    }
    Ok(Outcome {
        report: r,
        tables: Vec::new(),
    })
}

fn mode_records(m: &ScalarFieldModel) -> qes_core::Result<Vec<ReportRecord>> {
    let op = stability_operator_u(m);
    let lo = m.top_root();
    let samples: Vec<f64> = (1..=40).map(|i| lo + 0.05 + 0.15 * i as f64).collect();
    let probe = samples[samples.len() / 2];
    let w1 = m.omega1_sq();
    Ok(vec![
        ReportRecord::compare(
            "omega0^2 of eta0",
            op.omega_sq_at(&m.eta0(), probe)?,
            0.0,
            MODE_TOL,
            "zero mode",
        ),
        ReportRecord::bound(
            "eta0 residual",
            op.residual(&m.eta0(), 0.0, &samples)?,
            MODE_TOL,
            "u-equation, omega^2 = 0",
        ),
        ReportRecord::compare(
            "omega1^2 of eta1",
            op.omega_sq_at(&m.eta1(), probe)?,
            2.0 * (m.b() - m.c()).powi(2),
            MODE_TOL * w1.max(1.0),
            "closed form 2(B-C)^2",
        ),
        ReportRecord::bound(
            "eta1 residual",
            op.residual(&m.eta1(), w1, &samples)?,
            MODE_TOL,
            "u-equation, omega^2 = 2(B-C)^2",
        ),
    ])
}

fn poschl_teller_records(b: f64, nmax: u32, tol: f64) -> qes_core::Result<Vec<ReportRecord>> {
    let pt = poschl_teller_bundle(b)?;
    let win = cell_window(b);
    let (v, vb) = (
        potential_v(&pt.model, PotentialRoute::Susy),
        partner_potential(&pt.model),
    );
    let (mut dv, mut dvb) = (0.0f64, 0.0f64);
    for x in Grid1d::over(&win, 101)?.points() {
        let (e, eb) = (pt.v.checked_value(x)?, pt.v_bar.checked_value(x)?);
        dv = dv.max((v.checked_value(x)? - e).abs() / e.abs());
        dvb = dvb.max((vb.checked_value(x)? - eb).abs() / eb.abs());
    }
    let (psi, _) = partner_ground_state(&pt.model);
    let g = verify_eigenpair(&psi, &pt.v_bar, 0.5, &win)?;
    let mut out = vec![
        ReportRecord::bound("V closed form", dv, ROUTE_TOL, "relative, on the cell"),
        ReportRecord::bound("Vbar closed form", dvb, ROUTE_TOL, "relative, on the cell"),
        ReportRecord::compare(
            "partner ground energy",
            g.e_rayleigh,
            8.0 * b * b,
            tol,
            "8B^2",
        ),
    ];
    let w = make_w(&pt.model);
    for n in 0..=nmax {
        let bar = verify_eigenpair(&partner_tower(b, n)?, &pt.v_bar, 0.5, &win)?;
        let dir = verify_eigenpair(&mapped_tower(b, n, TowerVariable::X)?, &pt.v, 0.5, &win)?;
        let img = verify_eigenpair(&intertwine(&w, &partner_tower(b, n)?), &pt.v, 0.5, &win)?;
        let e = bar.e_rayleigh;
        out.push(ReportRecord::bound(
            format!("tower psibar_{} constancy", n + 1),
            bar.constancy / e,
            tol,
            "relative to E, under Vbar",
        ));
        out.push(ReportRecord::bound(
            format!("tower psi_{} constancy", n + 2),
            dir.constancy / dir.e_rayleigh,
            tol,
            "relative to E, under V",
        ));
        out.push(ReportRecord::compare(
            format!("intertwined psibar_{} energy", n + 1),
            img.e_rayleigh,
            e,
            tol * e,
            "Rayleigh value under V equals partner value",
        ));
        let quoted = quoted_tower_energy(b, n);
        out.push(ReportRecord::info(
            format!("tower level n={n} energy"),
            Some(e),
            format!(
                "quoted B^2(7+4n)^2 = {quoted}; deviation {:+.10e}",
                e - quoted
            ),
        ));
    }
    Ok(out)
}

pub fn scalarfield(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.model != ModelKind::ScalarField {
        return Err(unsupported("scalarfield", cfg.model));
    }
    let m = scalar_model(cfg)?;
    let mut r = Report::default();
    attempt(&mut r, "fluctuation modes", || mode_records(&m));

    let mut tables = Vec::new();
    match resolved_soliton_profile(&m, PROFILE_SPAN, PROFILE_POINTS) {
        Ok(traj) => {
            attempt(&mut r, "soliton profile", || {
                let c = profile_checks(&m, &traj)?;
                Ok(vec![
                    ReportRecord::bound(
                        "profile zero mode",
                        c.zero_mode_defect,
                        ZERO_MODE_TOL,
                        "drho/dy = eta0(rho^2)",
                    ),
                    ReportRecord::bound(
                        "profile static equation",
                        c.static_defect,
                        STATIC_TOL,
                        "d2rho/dy2 = V_s'(rho)",
                    ),
                ])
            });
            let rows = profile_table(&m, &traj).into_iter().map(|row| row.map(num));
            tables.push((
                "profile.csv",
                csv(["y", "rho", "drho_dy", "eta0", "eta1"], rows),
            ));
        }
        Err(e) => r.push(ReportRecord::failed("soliton profile", e.to_string())),
    }

    if symmetric(&m) {
        attempt(&mut r, "poschl-teller bundle", || {
            poschl_teller_records(m.b().abs(), cfg.nmax, cfg.tol)
        });
    } else {
        r.push(ReportRecord::info(
            "poschl-teller bundle",
            None,
            "not applicable (B != -C)",
        ));
    }
    attempt(&mut r, "sl(2) decomposition", || scalar_decomposition(&m));
    Ok(Outcome { report: r, tables })
}
