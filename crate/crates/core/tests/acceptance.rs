use std::process::ExitCode;
use std::time::{Duration, Instant};

use qes_core::models::{
    cell_window, harmonic_control, mapped_tower, partner_tower, poschl_teller_bundle,
    profile_checks, quoted_tower_energy, razavy_model, scalar_field_model, scalar_z_operator,
    sextic_model, soliton_profile, stability_operator_u, TowerVariable, DEFAULT_SPECTRAL_POINTS,
};
use qes_core::numkit::{lowest_spectrum, Grid1d};
use qes_core::sl2::{
    build_zmap, commutator_check, decompose_operator, decompose_operator_with, gauge_operator_t,
    quartic_equivalence_test, BasisElement, CasimirGauge, DecomposeOptions, Sl2Decomposition, ZMap,
    DEFAULT_EQUIVALENCE_TOL,
};
use qes_core::susy::{
    eigenstate, intertwine, make_w, make_w1, partner_ground_state, partner_potential, potential_v,
    verify_eigenpair, Level, PotentialRoute, QesModel,
};
use qes_core::{Interval, Result};

type Outcome = Result<(bool, String)>;

const SPECTRUM_TOL: f64 = 1e-6;
const TIME_BUDGET: Duration = Duration::from_secs(10);

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn zmap_of(m: &QesModel) -> Result<ZMap> {
    build_zmap(m, &Grid1d::over(&m.zmap_window(), 801)?)
}

fn two_levels(name: &str, m: &QesModel, bx: Interval) -> Outcome {
    let start = Instant::now();
    let v = potential_v(m, PotentialRoute::WPlus);
    let s = lowest_spectrum(
        &v,
        &Grid1d::over(&bx, DEFAULT_SPECTRAL_POINTS)?,
        m.mass_factor(),
        4,
    )?;
    let took = start.elapsed();
    let mut ok = took < TIME_BUDGET;
    let mut note = format!("{name} box [{}, {}]", bx.lo, bx.hi);
    for e in [0.0, m.epsilon()] {
        let d = s
            .eigenvalues
            .iter()
            .map(|x| (x - e).abs())
            .fold(f64::INFINITY, f64::min);
        ok &= d <= SPECTRUM_TOL;
        note += &format!("; |E-{e}| = {d:.2e}");
    }
    Ok((ok, format!("{note}; {:.2} s", took.as_secs_f64())))
}

fn c1_razavy_spectrum() -> Outcome {
    two_levels(
        "razavy(A=1, alpha=2)",
        &razavy_model(1.0, 2.0)?,
        Interval { lo: -6.0, hi: 6.0 },
    )
}

fn c2_sextic_spectrum() -> Outcome {
    let m = sextic_model(1.0, 1.0)?;
    let bx = m.spectral_box().expect("catalog models carry a box");
    two_levels("sextic(a=1, b=1)", &m, bx)
}

fn c3_eigenstate_residuals() -> Outcome {
    let mut ok = true;
    let mut worst = (0.0f64, 0.0f64);
    for m in [razavy_model(1.0, 2.0)?, sextic_model(1.0, 1.0)?] {
        let v = potential_v(&m, PotentialRoute::WPlus);
        for level in [Level::Ground, Level::Excited] {
            let c = verify_eigenpair(&eigenstate(&m, level)?, &v, m.mass_factor(), &m.window())?;
            let de = (c.e_rayleigh - level.energy(&m)).abs();
            ok &= de <= 1e-6 && c.residual <= 1e-6;
            worst = (worst.0.max(de), worst.1.max(c.residual));
        }
    }
    Ok((
        ok,
        format!(
            "max |E - E_exact| = {:.2e}, max residual = {:.2e}",
            worst.0, worst.1
        ),
    ))
}

fn c4_route_equivalence() -> Outcome {
    let (mut dv, mut dw) = (0.0f64, 0.0f64);
    for m in [razavy_model(1.0, 2.0)?, sextic_model(1.0, 1.0)?] {
        let (v1, v2) = (
            potential_v(&m, PotentialRoute::Susy),
            potential_v(&m, PotentialRoute::WPlus),
        );
        let (w, w1) = (make_w(&m), make_w1(&m));
        for x in Grid1d::over(&m.window(), 64)?.points() {
            dv = dv.max((v1.value(x) - v2.value(x)).abs() / v2.value(x).abs().max(1.0));
            let wp = m.w_plus().value(x);
            dw = dw.max((w.value(x) + w1.value(x) - wp).abs() / wp.abs().max(1.0));
        }
    }
    Ok((
        dv <= 1e-10 && dw <= 1e-12,
        format!("V routes {dv:.2e}, W + W1 - W+ {dw:.2e}"),
    ))
}

fn c5_equivalence() -> Outcome {
    let a = 1.0;
    let r = razavy_model(a, 2.0)?;
    let vr = quartic_equivalence_test(&r, &zmap_of(&r)?, DEFAULT_EQUIVALENCE_TOL)?;
    let expect = [1.0, 0.0, -2.0, 0.0, 1.0].map(|c| c / (4.0 * a * a));
    let dc =
        vr.c.iter()
            .zip(expect)
            .map(|(c, e)| (c - e).abs())
            .fold(0.0, f64::max);
    let s = sextic_model(1.0, 1.0)?;
    let vs = quartic_equivalence_test(&s, &zmap_of(&s)?, DEFAULT_EQUIVALENCE_TOL)?;
    let ok = vr.equivalent && dc <= 1e-8 && !vs.equivalent;
    Ok((
        ok,
        format!(
            "razavy equivalent={} |c - c_exact|={dc:.2e}; sextic equivalent={} (fit residual {:.2e})",
            vr.equivalent, vs.equivalent, vs.fit_residual
        ),
    ))
}

fn coefficient_defect(d: &Sl2Decomposition, expect: &[(BasisElement, f64)]) -> f64 {
    let scale = expect.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    BasisElement::ALL
        .iter()
        .map(|b| {
            let e = expect.iter().find(|(k, _)| k == b).map_or(0.0, |p| p.1);
            (d.coefficient(*b) - e).abs() / if e == 0.0 { scale } else { e.abs() }
        })
        .fold(0.0, f64::max)
}

fn c6_decomposition() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let (a, al) = (1.0, 2.0);
    let m = razavy_model(a, al)?;
    let zm = zmap_of(&m)?;
    let t = gauge_operator_t(&m, &zm);
    let d = decompose_operator(&t, 1, zm.z_range())?;
    let coef = coefficient_defect(
        &d,
        &[
            (BasisElement::PlusPlus, -al * al / 8.0),
            (BasisElement::PlusMinus, al * a / 3.0 - al * al / 12.0),
            (BasisElement::ZeroZero, al * a / 3.0 + al * al / 6.0),
            (BasisElement::MinusMinus, -al * al / 8.0),
            (BasisElement::Zero, al * a / 6.0 + al * al / 12.0),
        ],
    );
    let (rt, an) = (
        d.round_trip_defect(&t, 4)?,
        d.remainder_annihilation_defect(&t)?,
    );
    ok &= coef <= 1e-8 && rt <= 1e-10 && an <= 1e-10 && d.remainder_q2.max_abs_coeff() <= 1e-8;
    notes.push(format!(
        "razavy coef {coef:.1e} trip {rt:.1e} kernel {an:.1e}"
    ));

    let (a, b) = (1.0, 1.0);
    let m = sextic_model(a, b)?;
    let zm = zmap_of(&m)?;
    let t = gauge_operator_t(&m, &zm);
    let d = decompose_operator(&t, 1, zm.z_range())?;
    let coef = coefficient_defect(
        &d,
        &[
            (BasisElement::PlusPlus, -3.0 * b * b / (2.0 * a)),
            (BasisElement::PlusMinus, a / 3.0 - b / (2.0 * a)),
            (BasisElement::ZeroZero, a / 3.0 + b / a),
            (BasisElement::MinusMinus, -1.0 / (2.0 * a)),
            (BasisElement::Zero, a / 6.0 + b / (2.0 * a)),
        ],
    );
    let z6 = rel(d.remainder_q2.coeff(6), b.powi(3) / (2.0 * a));
    let z5 = d.remainder_q2.coeff(5).abs();
    let (rt, an) = (
        d.round_trip_defect(&t, 6)?,
        d.remainder_annihilation_defect(&t)?,
    );
    ok &= coef <= 1e-8 && z6 <= 1e-8 && z5 <= 1e-8 && rt <= 1e-10 && an <= 1e-10;
    notes.push(format!(
        "sextic coef {coef:.1e} z^6 {z6:.1e} trip {rt:.1e} kernel {an:.1e}"
    ));

    let bb = 1.0;
    let sf = scalar_field_model(bb, -bb)?;
    let t = scalar_z_operator(&sf);
    let opts = DecomposeOptions {
        gauge: CasimirGauge::ZeroRaiseLower,
        ..Default::default()
    };
    let d = decompose_operator_with(&t, 1, Interval { lo: 1.05, hi: 3.0 }, &opts)?;
    let b2 = bb * bb;
    let coef = coefficient_defect(
        &d,
        &[
            (BasisElement::PlusPlus, -4.0 * b2),
            (BasisElement::ZeroZero, 4.0 * b2),
            (BasisElement::Zero, 8.0 * b2),
            (BasisElement::Identity, 3.0 * b2),
        ],
    );
    let (rt, an) = (
        d.round_trip_defect(&t, 4)?,
        d.remainder_annihilation_defect(&t)?,
    );
    ok &= coef <= 1e-8 && rt <= 1e-10 && an <= 1e-10;
    notes.push(format!(
        "scalar field coef {coef:.1e} trip {rt:.1e} kernel {an:.1e}"
    ));

    Ok((ok, notes.join("; ")))
}

fn c7_commutators() -> Outcome {
    let mut worst = 0.0f64;
    for n in 0..=8 {
        worst = worst.max(commutator_check(n, 12)?.max_defect());
    }
    Ok((
        worst == 0.0,
        format!("max defect {worst:e} over N <= 8, degree <= 12"),
    ))
}

fn c8_scalar_modes() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (b, c) in [(1.0, -1.0), (2.0, 1.0)] {
        let m = scalar_field_model(b, c)?;
        let op = stability_operator_u(&m);
        let lo = m.top_root();
        let s: Vec<f64> = (1..=40).map(|i| lo + 0.05 + 0.15 * i as f64).collect();
        let r0 = op.residual(&m.eta0(), 0.0, &s)?;
        let r1 = op.residual(&m.eta1(), m.omega1_sq(), &s)?;
        let expect = if c == -b {
            8.0
        } else {
            2.0 * (b - c) * (b - c)
        };
        ok &= r0 <= 1e-8 && r1 <= 1e-8 && m.omega1_sq() == expect;
        notes.push(format!(
            "B={b}, C={c}: omega1^2={} eta0 {r0:.1e} eta1 {r1:.1e}",
            m.omega1_sq()
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn c9_soliton() -> Outcome {
    let m = scalar_field_model(1.0, -1.0)?;
    let span = Interval { lo: 0.0, hi: 20.0 };
    let mut ok = true;
    let mut notes = Vec::new();
    let mut profiles = Vec::new();
    for h in [1e-3, 5e-4] {
        let traj = soliton_profile(&m, span, h)?;
        let c = profile_checks(&m, &traj)?;
        ok &= c.zero_mode_defect <= 1e-6 && c.static_defect <= 1e-5;
        notes.push(format!(
            "h={h}: zero mode {:.1e}, static {:.1e}",
            c.zero_mode_defect, c.static_defect
        ));
        profiles.push(traj);
    }
    let (coarse, fine) = (profiles[0].uniform_points(), profiles[1].uniform_points());
    let drift = coarse
        .iter()
        .zip(fine.iter().step_by(2))
        .map(|(a, b)| (a.1 - b.1).abs())
        .fold(0.0, f64::max);
    ok &= drift <= 1e-6;
    notes.push(format!("profile drift under halving {drift:.1e}"));
    Ok((ok, notes.join("; ")))
}

fn c10_poschl_teller() -> Outcome {
    let b = 1.0;
    let pt = poschl_teller_bundle(b)?;
    let v = potential_v(&pt.model, PotentialRoute::Susy);
    let vb = partner_potential(&pt.model);
    let (mut dv, mut dvb) = (0.0f64, 0.0f64);
    for x in Grid1d::over(&cell_window(b), 101)?.points() {
        dv = dv.max(rel(v.value(x), pt.v.value(x)));
        dvb = dvb.max(rel(vb.value(x), pt.v_bar.value(x)));
    }
    let (psi, e) = partner_ground_state(&pt.model);
    let c = verify_eigenpair(&psi, &pt.v_bar, 0.5, &cell_window(b))?;
    let de = (c.e_rayleigh - 8.0 * b * b).abs();
    let ok = dv <= 1e-10 && dvb <= 1e-10 && de <= 1e-6 && e == 8.0 * b * b;
    Ok((
        ok,
        format!(
            "V {dv:.1e}, Vbar {dvb:.1e}, partner ground E = {:.10} (|dE| {de:.1e})",
            c.e_rayleigh
        ),
    ))
}

fn c11_towers() -> Outcome {
    let b = 1.0;
    let pt = poschl_teller_bundle(b)?;
    let w = make_w(&pt.model);
    let win = cell_window(b);
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 0..=2 {
        let bar = verify_eigenpair(&partner_tower(b, n)?, &pt.v_bar, 0.5, &win)?;
        let dir = verify_eigenpair(&mapped_tower(b, n, TowerVariable::X)?, &pt.v, 0.5, &win)?;
        let img = verify_eigenpair(&intertwine(&w, &partner_tower(b, n)?), &pt.v, 0.5, &win)?;
        ok &= bar.constancy <= 1e-6 * bar.e_rayleigh && dir.constancy <= 1e-6 * dir.e_rayleigh;
        ok &= img.constancy <= 1e-6 * img.e_rayleigh && rel(img.e_rayleigh, bar.e_rayleigh) <= 1e-6;
        let quoted = quoted_tower_energy(b, n);
        notes.push(format!(
            "n={n}: E={:.8} quoted {quoted} (deviation {:+.8})",
            bar.e_rayleigh,
            bar.e_rayleigh - quoted
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn c12_harmonic() -> Outcome {
    let h = harmonic_control(1.0)?;
    let s = lowest_spectrum(
        &h.potential,
        &Grid1d::over(&h.spectral_box, DEFAULT_SPECTRAL_POINTS)?,
        0.5,
        3,
    )?;
    let d = (0..3)
        .map(|n| (s.eigenvalues[n] - h.level(n)).abs())
        .fold(0.0, f64::max);
    Ok((
        d <= SPECTRUM_TOL,
        format!("levels {:?}, max deviation {d:.2e}", s.eigenvalues),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("1 razavy two-level spectrum", c1_razavy_spectrum),
        ("2 sextic two-level spectrum", c2_sextic_spectrum),
        ("3 analytic eigenstate residuals", c3_eigenstate_residuals),
        ("4 potential route equivalence", c4_route_equivalence),
        ("5 equivalence classification", c5_equivalence),
        ("6 decomposition fidelity", c6_decomposition),
        ("7 algebra exactness", c7_commutators),
        ("8 scalar-field modes", c8_scalar_modes),
        ("9 soliton zero mode", c9_soliton),
        ("10 poschl-teller bundle", c10_poschl_teller),
        ("11 tower eigenfunctions", c11_towers),
        ("12 solver self-test", c12_harmonic),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let (pass, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
