//! The four subcommands. Each returns a [`Report`]; nothing here does I/O.

use num_complex::Complex64;
use rayon::prelude::*;
use whplasmon::kernel::compute_ksp;
use whplasmon::oracle::deviation;
use whplasmon::{
    q_plus_special, q_plus_twoscale, solve_truncated, FieldSolver, MediumParams, NystromConfig,
    SpecialPoint, SplitFunction,
};

use crate::config::{format_complex, RunConfig};
use crate::output::{Cell, Report};
use crate::CliResult;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// The given parameters, or a copy damped to Im k = 0.05·Re k when k is real.
fn damped(p: &MediumParams<f64>) -> CliResult<MediumParams<f64>> {
    if p.k().im > 0.0 {
        Ok(*p)
    } else {
        Ok(p.with_k(Complex64::new(p.k().re, 0.05 * p.k().re))?)
    }
}

/// Q₊ at k_∥ and k_sp from the special values, the two-scale formula and the
/// exact integral, with errors relative to the exact row.
///
/// A lossless sheet at real k puts the zeros of P on the real axis. The table
/// entries depend on ξ/k only, so the run then moves to Im k = 0.01·Re k, which
/// selects the indented limit.
pub fn split_table(cfg: &RunConfig) -> CliResult<Report> {
    let (p, sf) = match SplitFunction::new(&cfg.params, &cfg.quadrature) {
        Ok(sf) => (cfg.params, sf),
        Err(whplasmon::Error::Regime(_)) if cfg.params.k().im == 0.0 => {
            let k = cfg.params.k().re;
            let p = cfg.params.with_k(Complex64::new(k, 0.01 * k))?;
            (p, SplitFunction::new(&p, &cfg.quadrature)?)
        }
        Err(e) => return Err(e.into()),
    };
    let p = &p;
    let ksp = compute_ksp(p)?;
    let exact = [sf.q_plus(p.k_par())?.value, sf.q_plus(ksp)?.value];
    let rows = [
        (
            "special-value",
            [
                q_plus_special(SpecialPoint::AtKpar, p)?.value,
                q_plus_special(SpecialPoint::AtKsp, p)?.value,
            ],
        ),
        ("two-scale", [q_plus_twoscale(p.k_par(), p)?.value, q_plus_twoscale(ksp, p)?.value]),
        ("exact", exact),
    ];
    let mut r = Report::new(
        "split-table",
        vec!["method", "re_q_kpar", "im_q_kpar", "re_q_ksp", "im_q_ksp", "rel_err_kpar", "rel_err_ksp"],
    );
    if p.k() != cfg.params.k() {
        r.meta.push(("k_used".into(), format_complex(p.k())));
    }
    r.meta.push(("k_sp".into(), format_complex(ksp)));
    for (name, v) in rows {
        r.rows.push(vec![
            name.into(),
            v[0].re.into(),
            v[0].im.into(),
            v[1].re.into(),
            v[1].im.into(),
            rel(v[0], exact[0]).into(),
            rel(v[1], exact[1]).into(),
        ]);
    }
    Ok(r)
}

/// u and its decomposition over the grid. Rows are written in grid order up
/// to the first failing point.
pub fn field_sweep(cfg: &RunConfig) -> CliResult<Report> {
    let p = &cfg.params;
    let kn = p.k().norm();
    let fs = FieldSolver::new(p, &cfg.quadrature)?;
    let kxs = cfg.grid.values();
    let samples: Vec<_> = kxs.par_iter().map(|kx| fs.sample(kx / kn)).collect();
    let mut r = Report::new(
        "field-sweep",
        vec![
            "kx", "re_u", "im_u", "re_udir", "im_udir", "re_usp", "im_usp", "re_urad", "im_urad", "rad_method",
            "err_est",
        ],
    );
    r.meta.push(("units".into(), "kx=|k|x, u per unit incident amplitude".into()));
    for (kx, s) in kxs.iter().zip(samples) {
        match s {
            Ok(s) => r.rows.push(vec![
                (*kx).into(),
                s.u_total.re.into(),
                s.u_total.im.into(),
                s.u_dir.re.into(),
                s.u_dir.im.into(),
                s.u_sp.re.into(),
                s.u_sp.im.into(),
                s.u_rad.re.into(),
                s.u_rad.im.into(),
                s.tags.rad.as_str().into(),
                s.err_estimate.into(),
            ]),
            Err(e) => {
                r.error = Some(format!("kx = {kx}: {e}"));
                r.ok = false;
                break;
            }
        }
    }
    Ok(r)
}

/// Truncated integral-equation solve against the assembled analytic field.
pub fn oracle_compare(cfg: &RunConfig) -> CliResult<Report> {
    let p = damped(&cfg.params)?;
    let kn = p.k().norm();
    let nc = cfg.oracle;
    let window = (cfg.window.0 / kn, cfg.window.1 / kn);
    let sol = solve_truncated(&p, &nc)?;
    let fs = FieldSolver::new(&p, &cfg.quadrature)?;
    let (rms, worst) = deviation(&sol, |x| fs.sample(x).map(|s| s.u_total), window)?;
    let mut r = Report::new("oracle-compare", vec!["metric", "value"]);
    r.meta.push(("k_used".into(), format_complex(p.k())));
    let pass = rms <= cfg.max_rms;
    r.ok = pass;
    let mut put = |k: &str, v: Cell| r.rows.push(vec![k.into(), v]);
    put("kL", nc.length.into());
    put("N", (nc.n as f64).into());
    put("window_lo", cfg.window.0.into());
    put("window_hi", cfg.window.1.into());
    put("condition", sol.condition.into());
    put("rms_rel", rms.into());
    put("max_rel", worst.into());
    put("threshold_rms", cfg.max_rms.into());
    put("status", if pass { "pass" } else { "fail" }.into());
    if !pass {
        put("diagnostic", convergence_diagnostic(&p, &nc, window, &sol).into());
    }
    Ok(r)
}

fn convergence_diagnostic(
    p: &MediumParams<f64>,
    nc: &NystromConfig<f64>,
    window: (f64, f64),
    sol: &whplasmon::OracleSolution<f64>,
) -> String {
    let mut msg = String::new();
    if let Ok(ks) = compute_ksp(p) {
        let per = std::f64::consts::TAU / (ks.re * sol.h);
        msg.push_str(&format!("{per:.1} nodes per surface-wave wavelength"));
    }
    let finer = NystromConfig::new(nc.length, 2 * nc.n);
    if finer.n <= 8000 {
        if let Ok(f) = solve_truncated(p, &finer) {
            let reference = |x: f64| {
                f.interpolate(x)
                    .ok_or_else(|| whplasmon::Error::Domain("outside grid".into()))
            };
            if let Ok((d, _)) = deviation(sol, reference, window) {
                msg.push_str(&format!(
                    "; doubling N to {} changes the solution by {:.2}% RMS, so the discretization is not converged",
                    finer.n,
                    100.0 * d
                ));
            }
        }
    }
    msg
}

/// A fast subset of the library's invariants at the configured parameters.
pub fn invariants(cfg: &RunConfig) -> CliResult<Report> {
    let p = &cfg.params;
    let qc = &cfg.quadrature;
    let lossy = damped(p)?;
    let mut r = Report::new("invariants", vec!["check", "value", "threshold", "status"]);
    let mut check = |name: &str, value: f64, threshold: f64, ok: bool| {
        r.rows.push(vec![name.into(), value.into(), threshold.into(), if ok { "pass" } else { "fail" }.into()]);
        r.ok &= ok;
    };

    let sf = SplitFunction::new(&lossy, qc)?;
    let mut add: f64 = 0.0;
    for j in 0..20 {
        let x = -30.0 + 60.0 * (j as f64 + 0.37) / 20.0;
        let xi = Complex64::new(x, 0.0);
        let s = sf.q_plus(xi)?.value + sf.q_minus(xi)?;
        add = add.max((s - sf.ln_p(x)).norm());
    }
    check("additivity", add, 1e-6, add < 1e-6);

    let (pl, sp) = match SplitFunction::new(p, qc) {
        Ok(sp) => (*p, sp),
        Err(_) => (lossy, sf.clone()),
    };
    let t = 1e4 * compute_ksp(&pl)?.norm();
    let z = Complex64::new(0.0, t);
    let large = (sp.q_plus(z)?.value - 0.5 * (pl.varsigma() * z / (2.0 * pl.k())).ln()).norm();
    check("large_argument", large, 0.02, large < 0.02);

    let fl = FieldSolver::new(&lossy, qc)?;
    let line = fl.fourier_line(0.5 / lossy.k().norm())?;
    let kxs: Vec<f64> = (0..10).map(|j| 0.5 * 60f64.powf(j as f64 / 9.0)).collect();
    let mut dec: f64 = 0.0;
    for kx in &kxs {
        let x = kx / lossy.k().norm();
        let s = fl.sample(x)?;
        dec = dec.max(rel(s.u_dir + s.u_sp + s.u_rad, line.u(x)?.value));
    }
    check("decomposition", dec, 1e-3, dec < 1e-3);

    let fs = FieldSolver::new(p, qc)?;
    let kn = p.k().norm();
    let xs: Vec<f64> = (0..=27).map(|j| (3.0 + j as f64) / kn).collect();
    let samples = fs.sweep(&xs)?;
    let dom = samples.iter().map(|s| s.u_rad.norm() / s.u_sp.norm()).fold(0.0, f64::max);
    check("spp_dominance", dom, 0.1, dom <= 0.1);

    let ks = fl.ksp().map(|k| k.norm()).unwrap_or(1.0);
    let x = 1e-3 / ks;
    let near = fl.fourier_line(x)?.u(x)?.value;
    let edge = rel(fl.u_near_edge(x).value, near);
    check("near_edge", edge, 0.03, edge < 0.03);
    Ok(r)
}
