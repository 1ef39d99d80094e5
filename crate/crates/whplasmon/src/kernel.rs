//! Physical configuration, the convolution kernel K(x), its transform K̂(ξ), the
//! symbol P(ξ), the SPP wavenumber and the index of P along the real axis.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{c, im_unit, one, r, re, to64, zero, Real};
use crate::specfun::{hankel_h0, top_sheet_sqrt};

/// Incidence configuration: wavenumber `k`, sheet strength `ς`, angle `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams<T> {
    k: Complex<T>,
    varsigma: Complex<T>,
    theta: T,
    k_par: Complex<T>,
}

/// Soft violations of the small-strength, lossy-sheet regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeWarning {
    LargeStrength,
    NonPositiveImStrength,
    NonPositiveReStrength,
}

impl fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LargeStrength => write!(f, "|varsigma| >= 0.3: two-scale approximations lose accuracy"),
            Self::NonPositiveImStrength => write!(f, "Im varsigma <= 0: no inductive sheet response"),
            Self::NonPositiveReStrength => write!(f, "Re varsigma <= 0: sheet is not dissipative"),
        }
    }
}

impl<T: Real> MediumParams<T> {
    /// Requires `Re k > 0`, `Im k ≥ 0` and finite inputs.
    pub fn new(k: Complex<T>, varsigma: Complex<T>, theta: T) -> Result<Self> {
        let finite = |z: Complex<T>| z.re.is_finite() && z.im.is_finite();
        if !finite(k) || !finite(varsigma) || !theta.is_finite() {
            return Err(Error::InvalidParameter("non-finite parameter".into()));
        }
        if k.re <= T::zero() || k.im < T::zero() {
            return Err(Error::InvalidParameter(format!(
                "need Re k > 0 and Im k >= 0, got k = {k}"
            )));
        }
        Ok(Self {
            k,
            varsigma,
            theta,
            k_par: k * theta.sin(),
        })
    }

    /// k = 1, ς = 0.002 + 0.2i, θ = π/9.
    pub fn reference() -> Self {
        Self::new(one(), c(0.002, 0.2), T::PI() / r(9.0)).unwrap()
    }

    pub fn k(&self) -> Complex<T> {
        self.k
    }
    pub fn varsigma(&self) -> Complex<T> {
        self.varsigma
    }
    pub fn theta(&self) -> T {
        self.theta
    }
    /// Tangential wavenumber k·sin θ.
    pub fn k_par(&self) -> Complex<T> {
        self.k_par
    }

    pub fn with_k(&self, k: Complex<T>) -> Result<Self> {
        Self::new(k, self.varsigma, self.theta)
    }
    pub fn with_varsigma(&self, varsigma: Complex<T>) -> Result<Self> {
        Self::new(self.k, varsigma, self.theta)
    }
    pub fn with_theta(&self, theta: T) -> Result<Self> {
        Self::new(self.k, self.varsigma, theta)
    }

    pub fn regime_warnings(&self) -> Vec<RegimeWarning> {
        let mut w = Vec::new();
        if self.varsigma.norm() >= r(0.3) {
            w.push(RegimeWarning::LargeStrength);
        }
        if self.varsigma.im <= T::zero() {
            w.push(RegimeWarning::NonPositiveImStrength);
        }
        if self.varsigma.re <= T::zero() {
            w.push(RegimeWarning::NonPositiveReStrength);
        }
        w
    }

    /// ς/(2k), the coefficient of the square root in P.
    pub(crate) fn beta(&self) -> Complex<T> {
        self.varsigma / (self.k * r::<T>(2.0))
    }
}

/// K̂(ξ) = i/(2√(k²−ξ²)).
pub fn k_hat<T: Real>(xi: Complex<T>, p: &MediumParams<T>) -> Result<Complex<T>> {
    let s = top_sheet_sqrt(xi, p.k).value();
    if s == zero() {
        return Err(Error::BranchPoint(format!("K̂ at ξ = ±k ({xi})")));
    }
    Ok(im_unit::<T>() / (s * r::<T>(2.0)))
}

/// P(ξ) = 1 + (ς/2k)√(k²−ξ²).
pub fn symbol_p<T: Real>(xi: Complex<T>, p: &MediumParams<T>) -> Complex<T> {
    one::<T>() + p.beta() * top_sheet_sqrt(xi, p.k).value()
}

/// P′(ξ) = −(ς/2k)·ξ/√(k²−ξ²).
pub fn symbol_p_prime<T: Real>(xi: Complex<T>, p: &MediumParams<T>) -> Result<Complex<T>> {
    let s = top_sheet_sqrt(xi, p.k).value();
    if s == zero() {
        return Err(Error::BranchPoint(format!("P′ at ξ = ±k ({xi})")));
    }
    Ok(-p.beta() * xi / s)
}

/// The zero of P on the top sheet with `Im k_sp ≥ 0`.
///
/// The root of 1 + (ς/2k)√(k²−ξ²) is ξ = i(2k/ς)√(1 − ς²/4); it is polished by
/// Newton steps and rejected if it lies on the bottom sheet.
pub fn compute_ksp<T: Real>(p: &MediumParams<T>) -> Result<Complex<T>> {
    let s = p.varsigma;
    if s == zero() {
        return Err(Error::Regime("varsigma = 0: no surface wave".into()));
    }
    let q = (one::<T>() - s * s * r::<T>(0.25)).sqrt();
    let mut ksp = im_unit::<T>() * p.k * r::<T>(2.0) / s * q;
    if ksp.im < T::zero() || (ksp.im == T::zero() && ksp.re < T::zero()) {
        ksp = -ksp;
    }
    let scale = ksp.norm();
    if ksp.im < -scale * T::epsilon() * r(64.0) {
        return Err(Error::Regime(format!("Im k_sp < 0 ({ksp})")));
    }
    for _ in 0..3 {
        match symbol_p_prime(ksp, p) {
            Ok(d) if d != zero() => ksp = ksp - symbol_p(ksp, p) / d,
            _ => break,
        }
    }
    let root_scale = one::<T>().norm() + (p.beta() * top_sheet_sqrt(ksp, p.k).value()).norm();
    let residual = symbol_p(ksp, p).norm();
    if !(residual <= T::epsilon() * r(1e3) * root_scale) {
        return Err(Error::Regime(format!(
            "P has no zero on the top sheet (|P(k_sp)| = {:.3e})",
            to64(residual)
        )));
    }
    if ksp.im < T::zero() {
        ksp.im = T::zero();
    }
    Ok(ksp)
}

/// Real-axis sampling for the index computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisGrid<T> {
    /// Truncation |ξ| ≤ Ξ; `None` means 10³·max(|k|, |k_sp|).
    pub xi_max: Option<T>,
    /// Uniform samples on [0, 4·max(|k|,|k_sp|)] (per half axis).
    pub n_linear: usize,
    /// Logarithmic samples per decade beyond the uniform part.
    pub per_decade: usize,
    /// Minimum admissible |P| on the axis.
    pub tol: T,
}

impl<T: Real> Default for AxisGrid<T> {
    fn default() -> Self {
        Self {
            xi_max: None,
            n_linear: 4000,
            per_decade: 50,
            tol: r(1e-10),
        }
    }
}

/// Largest physical wavenumber scale: max(|k|, |k_sp|), or |k| when ς = 0.
pub(crate) fn wave_scale<T: Real>(p: &MediumParams<T>) -> T {
    match compute_ksp(p) {
        Ok(ksp) => p.k.norm().max(ksp.norm()),
        Err(_) => p.k.norm(),
    }
}

/// Sample abscissae on [0, Ξ]: uniform on [0, 4s], then geometric.
pub(crate) fn axis_samples<T: Real>(p: &MediumParams<T>, grid: &AxisGrid<T>) -> Vec<T> {
    let s = wave_scale(p);
    let xi_max = grid.xi_max.unwrap_or(s * r(1e3));
    let lin_end = (s * r(4.0)).min(xi_max);
    let n = grid.n_linear.max(2);
    let mut pts: Vec<T> = (0..=n).map(|j| lin_end * r(j as f64 / n as f64)).collect();
    if xi_max > lin_end {
        let decades = to64((xi_max / lin_end).log10());
        let m = ((decades * grid.per_decade as f64).ceil() as usize).max(1);
        for j in 1..=m {
            pts.push(lin_end * r::<T>(10f64.powf(decades * j as f64 / m as f64)));
        }
    }
    pts
}

/// Continuous phase of P along the real points `xs` (ascending), inserting extra
/// abscissae wherever a phase step would exceed π/4. Returns the refined abscissae
/// and their phases. Fails if |P| < `tol` at a sample.
pub(crate) fn track_phase<T: Real>(
    p: &MediumParams<T>,
    xs: &[T],
    tol: T,
) -> Result<(Vec<T>, Vec<T>)> {
    let eval = |x: T| -> Result<Complex<T>> {
        let v = symbol_p(re(x), p);
        if v.norm() < tol {
            return Err(Error::Regime(format!(
                "P vanishes on the real axis near ξ = {}",
                to64(x)
            )));
        }
        Ok(v)
    };
    let mut ox = vec![xs[0]];
    let mut prev = eval(xs[0])?;
    let mut oph = vec![prev.arg()];
    for w in xs.windows(2) {
        let base = *oph.last().unwrap();
        phase_step(&eval, w[0], prev, w[1], base, 0, &mut ox, &mut oph)?;
        prev = eval(w[1])?;
    }
    Ok((ox, oph))
}

#[allow(clippy::too_many_arguments)]
fn phase_step<T: Real, F: Fn(T) -> Result<Complex<T>>>(
    eval: &F,
    a: T,
    pa: Complex<T>,
    b: T,
    base: T,
    depth: usize,
    ox: &mut Vec<T>,
    oph: &mut Vec<T>,
) -> Result<T> {
    let pb = eval(b)?;
    let d = (pb / pa).arg();
    if d.abs() <= T::FRAC_PI_4() || depth > 40 {
        ox.push(b);
        oph.push(base + d);
        return Ok(base + d);
    }
    let m = (a + b) * r(0.5);
    let pm = eval(m)?;
    let mid = phase_step(eval, a, pa, m, base, depth + 1, ox, oph)?;
    phase_step(eval, m, pm, b, mid, depth + 1, ox, oph)
}

/// Winding number of arg P(ξ) for ξ running along the whole real axis.
pub fn index_of_symbol<T: Real>(p: &MediumParams<T>, grid: &AxisGrid<T>) -> Result<i64> {
    if p.varsigma == zero() {
        return Ok(0);
    }
    let half = axis_samples(p, grid);
    let mut xs: Vec<T> = half.iter().rev().map(|x| -*x).collect();
    xs.extend(half.iter().skip(1).copied());
    let (_, ph) = track_phase(p, &xs, grid.tol)?;
    let mut total = *ph.last().unwrap() - ph[0];
    // Tails: P → 1 + iς|ξ|/(2k) as ξ → ±∞.
    let lim = (im_unit::<T>() * p.beta()).arg();
    let wrap = |a: T| {
        let t = T::TAU();
        a - t * ((a + T::PI()) / t).floor()
    };
    let right = symbol_p(re(*xs.last().unwrap()), p).arg();
    let left = symbol_p(re(xs[0]), p).arg();
    total = total + wrap(lim - right) + wrap(left - lim);
    Ok(to64(total / T::TAU()).round() as i64)
}

/// K(x) = (i/4)H₀⁽¹⁾(k|x|).
pub fn kernel_k<T: Real>(x: T, p: &MediumParams<T>) -> Result<Complex<T>> {
    if x == T::zero() {
        return Err(Error::Domain("kernel is singular at x = 0".into()));
    }
    Ok(im_unit::<T>() * r::<T>(0.25) * hankel_h0(p.k * x.abs())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_to_infinity, QuadratureConfig};
    use std::f64::consts::PI;

    fn c(a: f64, b: f64) -> Complex<f64> {
        Complex::new(a, b)
    }

    fn params(k: Complex<f64>, s: Complex<f64>) -> MediumParams<f64> {
        MediumParams::new(k, s, PI / 9.0).unwrap()
    }

    #[test]
    fn rejects_bad_k() {
        assert!(MediumParams::new(c(-1.0, 0.0), c(0.0, 0.2), 0.3).is_err());
        assert!(MediumParams::new(c(1.0, -0.1), c(0.0, 0.2), 0.3).is_err());
        assert!(MediumParams::new(c(f64::NAN, 0.0), c(0.0, 0.2), 0.3).is_err());
    }

    #[test]
    fn regime_warnings_flag_each_violation() {
        let p = MediumParams::<f64>::reference();
        assert!(p.regime_warnings().is_empty());
        let w = params(c(1.0, 0.0), c(-0.1, -0.4)).regime_warnings();
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn k_hat_values() {
        let p = params(c(1.0, 1e-12), c(0.0, 0.2));
        assert!((k_hat(c(0.0, 0.0), &p).unwrap() - c(0.0, 0.5)).norm() < 1e-10);
        let p = MediumParams::<f64>::reference();
        let xi = c(0.7, 0.2);
        assert!((k_hat(xi, &p).unwrap() - k_hat(-xi, &p).unwrap()).norm() < 1e-15);
        assert!(matches!(k_hat(p.k(), &p), Err(Error::BranchPoint(_))));
    }

    #[test]
    fn kernel_and_transform_are_a_fourier_pair() {
        let p = params(c(1.0, 0.3), c(0.0, 0.2));
        let cfg = QuadratureConfig::<f64> {
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_intervals: 4000,
        };
        for xi in [0.0, 0.5, 2.0] {
            let q = integrate_to_infinity(
                |x: f64| kernel_k(x, &p).unwrap() * (xi * x).cos() * 2.0,
                &[0.0, 1.0, 5.0, 20.0],
                20.0,
                &cfg,
            )
            .unwrap();
            let kh = k_hat(c(xi, 0.0), &p).unwrap();
            assert!((q.value - kh).norm() < 1e-6, "xi={xi}: {} vs {kh}", q.value);
        }
    }

    #[test]
    fn symbol_values() {
        let p = MediumParams::<f64>::reference();
        assert!((symbol_p(c(0.0, 0.0), &p) - (1.0 + p.varsigma() / 2.0)).norm() < 1e-15);
        assert!((symbol_p(p.k(), &p) - 1.0).norm() < 1e-15);
        assert!((symbol_p(-p.k(), &p) - 1.0).norm() < 1e-15);
        let ksp = compute_ksp(&p).unwrap();
        assert!(symbol_p(ksp, &p).norm() < 1e-13);
    }

    #[test]
    fn closed_form_matches_transform_form() {
        let p = params(c(1.0, 0.05), c(0.002, 0.2));
        for xi in [c(0.0, 0.0), c(0.3, 0.1), c(-2.0, 0.5), c(7.0, -0.2), c(15.0, 3.0)] {
            let lit = 1.0 - c(0.0, 1.0) * (p.varsigma() / p.k()) * (p.k() * p.k() - xi * xi) * k_hat(xi, &p).unwrap();
            assert!((lit - symbol_p(xi, &p)).norm() < 1e-14, "xi={xi}");
        }
    }

    #[test]
    fn derivative() {
        let p = MediumParams::<f64>::reference();
        assert_eq!(symbol_p_prime(c(0.0, 0.0), &p).unwrap().norm(), 0.0);
        let xi = c(0.3, 0.1);
        let h = 1e-5;
        let fd = (symbol_p(xi + h, &p) - symbol_p(xi - h, &p)) / (2.0 * h);
        assert!((symbol_p_prime(xi, &p).unwrap() - fd).norm() < 1e-7);
        let ksp = compute_ksp(&p).unwrap();
        let d = symbol_p_prime(ksp, &p).unwrap();
        assert!(d.norm() > 1e-3 && d.norm().is_finite());
        assert!(symbol_p_prime(p.k(), &p).is_err());
    }

    #[test]
    fn ksp_lossless_sheet_is_real() {
        let p = params(c(1.0, 0.0), c(0.0, 0.2));
        let ksp = compute_ksp(&p).unwrap();
        assert!((ksp.re - 10.0 * 1.01f64.sqrt()).abs() < 1e-12);
        assert!(ksp.im.abs() < 1e-12);
        assert!(symbol_p(ksp, &p).norm() < 1e-13);
    }

    #[test]
    fn ksp_reference_params() {
        let p = MediumParams::<f64>::reference();
        let ksp = compute_ksp(&p).unwrap();
        assert!((ksp.norm() - 10.0).abs() < 0.1 && ksp.im > 0.0);
        assert!((ksp - c(10.048_876, 0.099_494)).norm() < 1e-5);
        assert!(top_sheet_sqrt(ksp, p.k()).value().im > 0.0);
        assert!(ksp.norm() / p.k().norm() > 5.0);
    }

    #[test]
    fn ksp_small_strength_limit() {
        let s = c(0.0, 0.01);
        let p = params(c(1.0, 0.0), s);
        let ksp = compute_ksp(&p).unwrap();
        let lead = c(0.0, 2.0) / s;
        let rel = (ksp - lead).norm() / ksp.norm();
        assert!(rel < 10.0 * s.norm_sqr(), "rel={rel}");
    }

    #[test]
    fn ksp_requires_strength_and_top_sheet() {
        let p = params(c(1.0, 0.0), c(0.0, 0.0));
        assert!(matches!(compute_ksp(&p), Err(Error::Regime(_))));
        // Capacitive sheet: the root sits on the bottom sheet.
        let p = params(c(1.0, 0.0), c(0.0, -0.2));
        assert!(matches!(compute_ksp(&p), Err(Error::Regime(_))));
    }

    #[test]
    fn index_is_zero_in_regime() {
        let g = AxisGrid::default();
        assert_eq!(index_of_symbol(&params(c(1.0, 0.01), c(0.002, 0.2)), &g).unwrap(), 0);
        assert_eq!(index_of_symbol(&params(c(1.0, 0.01), c(0.0, 0.2)), &g).unwrap(), 0);
        assert_eq!(index_of_symbol(&params(c(1.0, 0.01), c(0.0, 0.0)), &g).unwrap(), 0);
    }

    #[test]
    fn index_rejects_zero_on_axis() {
        let p = params(c(1.0, 0.0), c(0.0, 0.2));
        assert!(matches!(index_of_symbol(&p, &AxisGrid::default()), Err(Error::Regime(_))));
    }

    #[test]
    fn kernel_values() {
        let p = params(c(1.0, 0.1), c(0.0, 0.2));
        assert_eq!(kernel_k(0.37, &p).unwrap(), kernel_k(-0.37, &p).unwrap());
        assert!(matches!(kernel_k(0.0, &p), Err(Error::Domain(_))));
        for &x in &[1e-3, 1e-5] {
            let lead = c(0.0, 0.25) * (1.0 + c(0.0, 2.0 / PI) * ((p.k() * x / 2.0).ln() + 0.577_215_664_901_532_9));
            assert!((kernel_k(x, &p).unwrap() - lead).norm() < 10.0 * x, "x={x}");
        }
        let x = 50.0;
        let mag = 0.25 * (2.0 / (PI * x)).sqrt() * (-0.1 * x).exp();
        let v = kernel_k(x, &p).unwrap().norm();
        assert!((v / mag - 1.0).abs() < 0.05, "{v} vs {mag}");
    }

    #[test]
    fn no_zeros_near_axis() {
        let p = params(c(1.0, 0.05), c(0.002, 0.2));
        for i in 0..=400 {
            for j in -4..=4 {
                let xi = c(-40.0 + 0.2 * i as f64, j as f64 * 0.05 / 8.0);
                assert!(symbol_p(xi, &p).norm() > 1e-3);
            }
        }
    }

    #[test]
    fn single_precision_ksp() {
        let p = MediumParams::<f32>::reference();
        let ksp = compute_ksp(&p).unwrap();
        assert!((ksp.re - 10.048_876).abs() < 1e-3);
    }
}
