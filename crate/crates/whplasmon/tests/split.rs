// 0.39270 below is a tabulated value that happens to round to π/8.
#![allow(clippy::approx_constant)]

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64 as C;
use whplasmon::kernel::{compute_ksp, symbol_p, MediumParams};
use whplasmon::quad::QuadratureConfig;
use whplasmon::split::*;

fn c(a: f64, b: f64) -> C {
    C::new(a, b)
}

fn table() -> MediumParams<f64> {
    MediumParams::reference()
}

fn qc() -> QuadratureConfig<f64> {
    QuadratureConfig::with_rel_tol(1e-11)
}

fn near(a: C, b: C, tol: f64) -> bool {
    (a.re - b.re).abs() <= tol && (a.im - b.im).abs() <= tol
}

#[test]
fn exact_at_kpar_matches_table() {
    let p = table();
    let t = Instant::now();
    let q = q_plus_exact(p.k_par(), &p, &qc()).unwrap();
    assert!(near(q.value, c(0.019864, 0.079563), 5e-5), "{}", q.value);
    assert!(near(q.value, c(0.019_904_6, 0.079_568_7), 2e-7), "{}", q.value);
    assert_eq!(q.method, SplitMethod::Exact);
    assert!(q.err_estimate < 1e-8);
    assert!(t.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn exact_at_ksp_converged_value() {
    let p = table();
    let ksp = compute_ksp(&p).unwrap();
    let q = q_plus_exact(ksp, &p, &qc()).unwrap();
    assert!(near(q.value, c(0.349_155_4, 0.398_189_2), 2e-7), "{}", q.value);
}

#[test]
fn exact_at_ksp_table_value_is_a_truncated_integral() {
    // The tabulated 0.34813 + 0.40071i is what the defining integral gives when cut
    // off at ζ = 10⁴; the converged value differs by a few 1e-3.
    use whplasmon::quad::integrate;
    let p = table();
    let sf = SplitFunction::new(&p, &qc()).unwrap();
    let ksp = compute_ksp(&p).unwrap();
    let br = [0.0, 0.5, 1.0, 2.0, 5.0, 9.0, ksp.re, 11.0, 20.0, 100.0, 1e3, 1e4];
    let i = integrate(|z: f64| sf.ln_p(z) / (c(z * z, 0.0) - ksp * ksp), &br, &qc()).unwrap();
    let v = ksp / c(0.0, PI) * i.value;
    assert!(near(v, c(0.34813, 0.40071), 5e-5), "{v}");
}

#[test]
fn vanishes_without_sheet() {
    let p = table().with_varsigma(c(0.0, 0.0)).unwrap();
    for xi in [c(0.3, 0.0), c(2.0, 1.0), c(0.0, 40.0)] {
        assert_eq!(q_plus_exact(xi, &p, &qc()).unwrap().value, c(0.0, 0.0));
        assert_eq!(q_minus(-xi, &p, &qc()).unwrap(), c(0.0, 0.0));
    }
}

#[test]
fn lower_half_plane_rejected() {
    let p = table();
    assert!(q_plus_exact(c(0.3, -0.1), &p, &qc()).is_err());
}

#[test]
fn additivity_on_real_axis() {
    let p = table().with_k(c(1.0, 0.05)).unwrap();
    let sf = SplitFunction::new(&p, &qc()).unwrap();
    for j in 0..50 {
        let x = -30.0 + 60.0 * (j as f64 + 0.37) / 50.0;
        let xi = c(x, 0.0);
        let s = sf.q_plus(xi).unwrap().value + sf.q_minus(xi).unwrap();
        assert!((s - sf.ln_p(x)).norm() < 1e-6, "x={x}");
        assert!((s.exp() - symbol_p(xi, &p)).norm() < 1e-6 * symbol_p(xi, &p).norm().max(1.0));
    }
    let s = sf.q_plus(c(0.5, 0.0)).unwrap().value + sf.q_minus(c(0.5, 0.0)).unwrap();
    assert!((s - symbol_p(c(0.5, 0.0), &p).ln()).norm() < 1e-7);
}

#[test]
fn large_argument_law() {
    let p = table();
    let sf = SplitFunction::new(&p, &qc()).unwrap();
    let t = 1e4 * compute_ksp(&p).unwrap().norm();
    let lead = |z: C| 0.5 * (p.varsigma() * z / (2.0 * p.k())).ln();
    let q = sf.q_plus(c(0.0, t)).unwrap().value;
    assert!((q - lead(c(0.0, t))).norm() < 0.02);
    let qm = sf.q_minus(c(0.0, -1e5)).unwrap();
    assert!((qm - 0.5 * (-p.varsigma() * c(0.0, -1e5) / (2.0 * p.k())).ln()).norm() < 0.02);
}

#[test]
fn cauchy_riemann_residual() {
    let p = table();
    let sf = SplitFunction::new(&p, &qc()).unwrap();
    let h = 1e-4;
    for xi in [c(0.3, 0.2), c(1.0, 0.5), c(-2.0, 1.0), c(5.0, 0.3), c(10.0, 0.5), c(-10.0, 2.0), c(0.1, 3.0), c(30.0, 10.0), c(-0.7, 0.05), c(3.0, 20.0)] {
        let f = |z: C| sf.q_plus(z).unwrap().value;
        let dx = (f(xi + h) - f(xi - h)) / (2.0 * h);
        let dy = (f(xi + c(0.0, h)) - f(xi - c(0.0, h))) / (2.0 * h);
        // analytic: ∂f/∂y = i ∂f/∂x
        assert!((dy - c(0.0, 1.0) * dx).norm() < 1e-5, "xi={xi}");
    }
}

#[test]
fn exact_value_independent_of_loss_in_k_scaling() {
    // Q₊ depends on ξ/k only.
    let p = table();
    let p2 = p.with_k(c(1.0, 0.05)).unwrap();
    let a = q_plus_exact(p.k_par(), &p, &qc()).unwrap().value;
    let b = q_plus_exact(p2.k_par(), &p2, &qc()).unwrap().value;
    assert!((a - b).norm() < 1e-8);
}

#[test]
fn twoscale_values() {
    let p = table();
    let ksp = compute_ksp(&p).unwrap();
    let a = q_plus_twoscale(p.k_par(), &p).unwrap();
    let b = q_plus_twoscale(ksp, &p).unwrap();
    assert_eq!(a.method, SplitMethod::TwoScale);
    assert!(near(a.value, c(0.017_507_1, 0.079_895_4), 1e-7), "{}", a.value);
    assert!(near(b.value, c(0.34793, 0.39902), 5e-5), "{}", b.value);
    assert!(!near(a.value, c(0.017507, 0.079995), 5e-5));
}

#[test]
fn twoscale_relative_errors() {
    let p = table();
    let ksp = compute_ksp(&p).unwrap();
    let sf = SplitFunction::new(&p, &qc()).unwrap();
    let rel = |xi: C| {
        let e = sf.q_plus(xi).unwrap().value;
        (q_plus_twoscale(xi, &p).unwrap().value - e).norm() / e.norm()
    };
    let ek = rel(p.k_par());
    assert!((0.015..=0.03).contains(&ek), "{ek}");
    assert!(rel(ksp) < 0.005);
}

#[test]
fn twoscale_uniform_deviation() {
    for s in [c(0.002, 0.2), c(0.01, 0.25), c(0.001, 0.1)] {
        let p = table().with_varsigma(s).unwrap();
        let ksp = compute_ksp(&p).unwrap();
        let sf = SplitFunction::new(&p, &qc()).unwrap();
        let mut worst: f64 = 0.0;
        for j in 0..=9 {
            let t = 0.1 + 0.9 * j as f64 / 9.0;
            for xi in [p.k() * t, ksp * (0.5 + 1.5 * j as f64 / 9.0)] {
                let e = sf.q_plus(xi).unwrap().value;
                let a = q_plus_twoscale(xi, &p).unwrap().value;
                worst = worst.max((a - e).norm() / e.norm());
            }
        }
        assert!(worst <= 0.05, "varsigma={s}: {worst}");
    }
}

#[test]
fn special_values() {
    let p = table();
    let a = q_plus_special(SpecialPoint::AtKpar, &p).unwrap();
    let b = q_plus_special(SpecialPoint::AtKsp, &p).unwrap();
    assert!(near(a.value, c(0.017793, 0.079874), 5e-5), "{}", a.value);
    assert!(near(b.value, c(0.34657, 0.39270), 5e-5), "{}", b.value);
    let closed = c(2f64.ln() / 2.0, PI / 8.0);
    assert!((b.value - closed).norm() < 1e-12);
    assert_eq!(b.method, SplitMethod::SpecialValue);
}

#[test]
fn first_order_exponential_within_5e3() {
    let e = exp_minus_qplus_kpar(&table(), &qc()).unwrap();
    let d = (e.expansion - e.exact).norm();
    assert!(d < 5e-3, "{d}");
}

#[test]
fn exp_minus_qplus() {
    let p = table();
    let p0 = p.with_varsigma(c(0.0, 0.0)).unwrap();
    let e0 = exp_minus_qplus_kpar(&p0, &qc()).unwrap();
    assert_eq!(e0.exact, c(1.0, 0.0));
    assert_eq!(e0.expansion, c(1.0, 0.0));
    let pn = p.with_theta(0.0).unwrap();
    let en = exp_minus_qplus_kpar(&pn, &qc()).unwrap();
    assert!((en.expansion - (1.0 - p.varsigma() / 4.0)).norm() < 1e-15);
    let s = p.varsigma().norm();
    assert!((en.exact - en.expansion).norm() < 2.0 * s * s * s.ln().abs());
}

#[test]
fn single_precision_split() {
    let p = MediumParams::<f32>::reference();
    let q = q_plus_exact(p.k_par(), &p, &QuadratureConfig::with_rel_tol(1e-5)).unwrap();
    assert!((q.value.re - 0.019_904_6).abs() < 1e-4 && (q.value.im - 0.079_568_7).abs() < 1e-4);
}
