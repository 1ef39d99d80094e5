use std::sync::OnceLock;

use num_complex::Complex64 as C;
use rustfft::FftPlanner;
use whplasmon::error::Error;
use whplasmon::fields::FieldSolver;
use whplasmon::kernel::{compute_ksp, MediumParams};
use whplasmon::oracle::*;
use whplasmon::quad::{integrate_general, QuadratureConfig};
use whplasmon::specfun::hankel_h0;

fn lossy() -> MediumParams<f64> {
    MediumParams::reference().with_k(C::new(1.0, 0.05)).unwrap()
}

fn central() -> &'static OracleSolution<f64> {
    static SOL: OnceLock<OracleSolution<f64>> = OnceLock::new();
    SOL.get_or_init(|| solve_truncated(&lossy(), &NystromConfig::default()).unwrap())
}

#[test]
fn no_sheet_returns_incident_field() {
    let p = lossy().with_varsigma(C::new(0.0, 0.0)).unwrap();
    let s = solve_truncated(&p, &NystromConfig::new(10.0, 200)).unwrap();
    for (x, u) in s.x.iter().zip(&s.u) {
        assert!((u - (C::i() * p.k_par() * x).exp()).norm() < 1e-14);
    }
}

#[test]
fn matches_analytic_field() {
    let p = lossy();
    let fs = FieldSolver::new(&p, &QuadratureConfig::default()).unwrap();
    let sol = central();
    let kn = p.k().norm();
    let (rms, worst) =
        deviation(sol, |x| fs.sample(x).map(|s| s.u_total), (2.0 / kn, 20.0 / kn)).unwrap();
    println!("rms {rms:.4e} max {worst:.4e} cond {:.3e}", sol.condition);
    assert!(rms < 0.05, "{rms}");
    assert!(sol.condition > 1.0 && sol.condition < 1e12);
}

#[test]
fn edge_exponent_near_half() {
    let sol = central();
    let (x0, n) = (sol.x[0], sol.x.len());
    let pts: Vec<(f64, f64)> = (0..n)
        .take_while(|i| sol.x[*i] <= 10.0 * x0)
        .map(|i| (sol.x[i].ln(), sol.u[i].norm().ln()))
        .collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts
        .iter()
        .fold((0.0, 0.0), |a, p| (a.0 + (p.0 - mx) * (p.1 - my), a.1 + (p.0 - mx).powi(2)));
    let alpha = num / den;
    println!("edge exponent {alpha:.3}");
    assert!((alpha - 0.5).abs() < 0.1, "{alpha}");
}

#[test]
fn surface_wave_peak_in_spectrum() {
    let p = lossy();
    let sol = central();
    let ks = compute_ksp(&p).unwrap();
    let kn = p.k().norm();
    let mut buf: Vec<C> = sol
        .x
        .iter()
        .zip(&sol.u)
        .filter(|(x, _)| **x * kn >= 5.0 && **x * kn <= 20.0)
        .map(|(x, u)| u - (C::i() * p.k_par() * x).exp() * whplasmon::fields::u_direct(0.0, &p))
        .collect();
    let m = 1 << 16;
    buf.resize(m, C::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let (j, _) = buf
        .iter()
        .enumerate()
        .fold((0, 0.0), |a, (j, v)| if v.norm() > a.1 { (j, v.norm()) } else { a });
    let bin = if j > m / 2 { j as f64 - m as f64 } else { j as f64 };
    let kappa = std::f64::consts::TAU * bin / (m as f64 * sol.h);
    println!("peak {kappa:.4} vs Re k_sp {:.4}", ks.re);
    assert!((kappa - ks.re).abs() < 0.1 * ks.re, "{kappa}");
}

#[test]
fn self_convergence() {
    let p = lossy();
    let list: Vec<_> = [500, 1000, 2000, 4000].iter().map(|n| NystromConfig::new(40.0, *n)).collect();
    let rows = convergence_study(&p, &list).unwrap();
    for r in &rows {
        println!("N {} dev {:.4e}", r.n, r.deviation);
    }
    assert!(rows.last().unwrap().deviation < 1e-12);
    for w in rows[..rows.len() - 1].windows(2) {
        assert!(w[1].deviation < w[0].deviation / 2.0, "{:?}", w);
    }
}

#[test]
fn truncation_length_insensitive() {
    let p = lossy();
    let a = solve_truncated(&p, &NystromConfig::new(30.0, 1500)).unwrap();
    let b = solve_truncated(&p, &NystromConfig::new(60.0, 3000)).unwrap();
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..a.x.len() {
        if a.x[i] >= 2.0 && a.x[i] <= 20.0 {
            assert!((a.x[i] - b.x[i]).abs() < 1e-12);
            num += (a.u[i] - b.u[i]).norm_sqr();
            den += b.u[i].norm_sqr();
        }
    }
    let d = (num / den).sqrt();
    println!("truncation {d:.3e}");
    assert!(d < 0.01, "{d}");
}

#[test]
fn moment_matrix_is_symmetric_toeplitz() {
    let p = lossy();
    let sys = assemble(&p, &NystromConfig::new(10.0, 100)).unwrap();
    for (i, j) in [(0, 5), (3, 9), (40, 41), (99, 0)] {
        assert_eq!(sys.entry(i, j), sys.entry(j, i));
        assert_eq!(sys.convolution_entry(i, j), sys.convolution_entry(i.abs_diff(j), 0));
    }
    let h = sys.h;
    let k = p.k();
    let cfg = QuadratureConfig::default();
    for (i, j) in [(0, 0), (7, 7), (7, 8), (3, 9), (0, 99)] {
        let xi = (i as f64 + 0.5) * h;
        let (lo, hi) = (j as f64 * h, (j + 1) as f64 * h);
        let mut br = vec![lo, hi];
        if i == j {
            br.insert(1, xi);
        }
        let direct = integrate_general(
            |y: f64| C::new(0.0, 0.25) * hankel_h0(k * (xi - y).abs()).unwrap(),
            &br,
            &[],
            None,
            &cfg,
        )
        .unwrap()
        .value;
        let got = sys.convolution_entry(i, j);
        assert!((got - direct).norm() < 1e-9 * direct.norm(), "{i},{j}: {got} vs {direct}");
    }
}

#[test]
fn rejects_bad_configurations() {
    let p = lossy();
    assert!(matches!(
        solve_truncated(&p, &NystromConfig::new(10.0, 32)),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        solve_truncated(&p, &NystromConfig::new(40.0, 100)),
        Err(Error::Sampling(_))
    ));
    let real = MediumParams::<f64>::reference();
    assert!(matches!(
        solve_truncated(&real, &NystromConfig::new(10.0, 100)),
        Err(Error::Domain(_))
    ));
}
