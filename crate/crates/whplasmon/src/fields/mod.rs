//! The on-sheet field u(x) and its parts: direct wave, SPP residue, radiation
//! (branch-cut integral and its moderate/far-zone forms), the near-edge law, and
//! the real-line Fourier integral used as an independent check.

mod filon;

use std::sync::OnceLock;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{symbol_p, symbol_p_prime, MediumParams};
use crate::quad::{clean_breaks, integrate, QuadratureConfig};
use crate::scalar::{im_unit, one, r, re, zero, Real};
use crate::specfun::fresnel_tail;
use crate::split::SplitFunction;

use filon::FilonRule;

/// How the SPP residue is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SppMode {
    ExactResidue,
    SmallSigma,
}

/// Provenance of one field component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldMethod {
    Residue,
    ExactResidue,
    SmallSigma,
    BranchCut,
    Moderate,
    Far,
    NearEdge,
    Fourier,
    /// The component does not exist for these parameters (e.g. no SPP at ς = 0).
    Absent,
}

impl FieldMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Residue => "residue",
            Self::ExactResidue => "exact_residue",
            Self::SmallSigma => "small_sigma",
            Self::BranchCut => "branch_cut",
            Self::Moderate => "moderate",
            Self::Far => "far",
            Self::NearEdge => "near_edge",
            Self::Fourier => "fourier",
            Self::Absent => "absent",
        }
    }
}

/// Method tags of a [`FieldSample`], one per component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodTags {
    pub dir: FieldMethod,
    pub sp: FieldMethod,
    pub rad: FieldMethod,
}

/// The field and its decomposition at one point of the sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub x: T,
    pub u_total: Complex<T>,
    pub u_dir: Complex<T>,
    pub u_sp: Complex<T>,
    pub u_rad: Complex<T>,
    pub tags: MethodTags,
    pub err_estimate: T,
}

/// A value from an approximation with a validity regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tagged<T> {
    pub value: Complex<T>,
    pub method: FieldMethod,
    pub in_regime: bool,
    pub err_estimate: T,
}

/// Q₊ on the ray ξ = k(1+iτ), tabulated on a log grid in τ.
#[derive(Debug, Clone)]
struct RayCache<T> {
    log_lo: T,
    step: T,
    values: Vec<Complex<T>>,
}

const RAY_DECADES: (f64, f64) = (-8.0, 8.0);
const RAY_PER_DECADE: usize = 40;

impl<T: Real> RayCache<T> {
    fn build(split: &SplitFunction<T>) -> Result<Self> {
        let n = ((RAY_DECADES.1 - RAY_DECADES.0) as usize) * RAY_PER_DECADE + 1;
        let step = 1.0 / RAY_PER_DECADE as f64;
        let k = split.params().k();
        let values = (0..n)
            .into_par_iter()
            .map(|j| {
                let tau = r::<T>(10f64.powf(RAY_DECADES.0 + step * j as f64));
                split.q_plus(k * Complex::new(T::one(), tau)).map(|e| e.value)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            log_lo: r(RAY_DECADES.0),
            step: r(step),
            values,
        })
    }

    /// Cubic interpolation in log₁₀τ; `None` beyond the table.
    fn get(&self, tau: T) -> Option<Complex<T>> {
        let n = self.values.len();
        if tau <= T::zero() {
            return Some(self.values[0]);
        }
        let u = (tau.log10() - self.log_lo) / self.step;
        if u <= T::zero() {
            return Some(self.values[0]);
        }
        if u >= r((n - 1) as f64) {
            return None;
        }
        let j = u.floor().to_usize().unwrap_or(0).clamp(1, n - 3);
        let t = u - r(j as f64);
        let (y0, y1, y2, y3) = (
            self.values[j - 1],
            self.values[j],
            self.values[j + 1],
            self.values[j + 2],
        );
        let (tm, t1, t2) = (t + T::one(), t - T::one(), t - r(2.0));
        let six = r::<T>(6.0);
        let two = r::<T>(2.0);
        Some(
            y0 * (-t * t1 * t2 / six)
                + y1 * (tm * t1 * t2 / two)
                + y2 * (-tm * t * t2 / two)
                + y3 * (tm * t * t1 / six),
        )
    }
}

/// Field evaluator for one parameter set.
///
/// Holds Q₊(k_∥), Q₊(k_sp) and a lazily built table of Q₊ along the branch-cut
/// ray; all evaluations are read-only and may run in parallel.
#[derive(Debug)]
pub struct FieldSolver<T> {
    split: SplitFunction<T>,
    q_kpar: Complex<T>,
    q_ksp: Option<Complex<T>>,
    ray: OnceLock<RayCache<T>>,
}

impl<T: Real> FieldSolver<T> {
    pub fn new(p: &MediumParams<T>, qc: &QuadratureConfig<T>) -> Result<Self> {
        let split = SplitFunction::new(p, qc)?;
        let q_kpar = split.q_plus(p.k_par())?.value;
        let q_ksp = match split.ksp() {
            Some(ks) => Some(split.q_plus(ks)?.value),
            None => None,
        };
        Ok(Self {
            split,
            q_kpar,
            q_ksp,
            ray: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &MediumParams<T> {
        self.split.params()
    }

    pub fn split(&self) -> &SplitFunction<T> {
        &self.split
    }

    pub fn ksp(&self) -> Option<Complex<T>> {
        self.split.ksp()
    }

    /// Q₊(k_∥).
    pub fn q_kpar(&self) -> Complex<T> {
        self.q_kpar
    }

    fn ray(&self) -> Result<&RayCache<T>> {
        if let Some(c) = self.ray.get() {
            return Ok(c);
        }
        let built = RayCache::build(&self.split)?;
        Ok(self.ray.get_or_init(|| built))
    }

    fn q_on_ray(&self, tau: T) -> Result<Complex<T>> {
        match self.ray()?.get(tau) {
            Some(v) => Ok(v),
            None => {
                let k = self.params().k();
                Ok(self.split.q_plus(k * Complex::new(T::one(), tau))?.value)
            }
        }
    }

    pub fn u_direct(&self, x: T) -> Complex<T> {
        u_direct(x, self.params())
    }

    /// Residue of the Fourier integral at k_sp.
    pub fn u_spp(&self, x: T, mode: SppMode) -> Result<Complex<T>> {
        let (ks, qs) = match (self.ksp(), self.q_ksp) {
            (Some(ks), Some(qs)) => (ks, qs),
            _ => return Err(Error::Regime("no surface-wave pole for these parameters".into())),
        };
        let p = self.params();
        let amp = (qs - self.q_kpar).exp() * (im_unit::<T>() * ks * x).exp();
        match mode {
            SppMode::ExactResidue => Ok(amp / ((ks - p.k_par()) * symbol_p_prime(ks, p)?)),
            SppMode::SmallSigma => Ok(-amp),
        }
    }

    /// Radiation field as the integral around the branch cut from ξ = k.
    ///
    /// Integrated in s = √τ; the τ-range is cut where e^{−Re(k)xτ} drops below
    /// the absolute tolerance.
    pub fn u_rad_branchcut(&self, x: T) -> Result<Tagged<T>> {
        if !(x > T::zero()) {
            return Err(Error::Domain(format!("branch-cut radiation needs x > 0 (got {x})")));
        }
        let p = self.params();
        let (k, kap, s) = (p.k(), p.k_par() / p.k(), p.varsigma());
        if s == zero() {
            return Ok(tagged(zero(), FieldMethod::BranchCut, true, T::zero()));
        }
        let qc = *self.split.config();
        let decay = (T::one() / qc.abs_tol.max(T::min_positive_value())).ln() + r(8.0);
        let tau_max = decay / (k.re * x);
        let quad_c = im_unit::<T>() * s * s * r::<T>(0.25);
        let mut taus = vec![one::<T>() - kap, one(), re(r(10.0))];
        for root in quadratic_roots(s) {
            taus.push(root);
        }
        let mut pts: Vec<T> = taus.iter().map(|t| t.norm().sqrt()).collect();
        let mut g = T::one();
        while g * g < tau_max {
            pts.push(g);
            g = g * r(3.0);
        }
        let smax = tau_max.sqrt();
        let br = clean_breaks(pts, T::zero(), smax);
        let mut failure = None;
        let f = |sv: T| {
            let tau = sv * sv;
            let q = match self.q_on_ray(tau) {
                Ok(q) => q,
                Err(e) => {
                    failure.get_or_insert(e);
                    return zero();
                }
            };
            let ct = Complex::new(r::<T>(2.0), tau);
            let den = (one::<T>() - kap + Complex::new(T::zero(), tau))
                * (one::<T>() + quad_c * tau * ct);
            q.exp() / den * (ct.sqrt() * tau * r::<T>(2.0)) * (-k * x * tau).exp()
        };
        let integral = integrate(f, &br, &qc)?;
        if let Some(e) = failure {
            return Err(e);
        }
        let pre = s / (T::TAU())
            * (-self.q_kpar).exp()
            * (im_unit::<T>() * k * x - im_unit::<T>() * T::FRAC_PI_4()).exp();
        Ok(tagged(
            pre * integral.value,
            FieldMethod::BranchCut,
            true,
            pre.norm() * integral.error,
        ))
    }

    /// Production evaluation: u = u_dir + u_sp + u_rad with the exact residue and
    /// the branch-cut integral.
    pub fn sample(&self, x: T) -> Result<FieldSample<T>> {
        let u_dir = self.u_direct(x);
        let (u_sp, sp_tag) = if self.ksp().is_some() {
            (self.u_spp(x, SppMode::ExactResidue)?, FieldMethod::ExactResidue)
        } else {
            (zero(), FieldMethod::Absent)
        };
        let rad = self.u_rad_branchcut(x)?;
        Ok(FieldSample {
            x,
            u_total: u_dir + u_sp + rad.value,
            u_dir,
            u_sp,
            u_rad: rad.value,
            tags: MethodTags {
                dir: FieldMethod::Residue,
                sp: sp_tag,
                rad: FieldMethod::BranchCut,
            },
            err_estimate: rad.err_estimate,
        })
    }

    /// [`FieldSolver::sample`] over many points, in parallel, in input order.
    pub fn sweep(&self, xs: &[T]) -> Result<Vec<FieldSample<T>>> {
        self.ray()?;
        xs.par_iter().map(|x| self.sample(*x)).collect()
    }

    /// Leading near-edge law u ∼ 2e^{−iπ/4−Q₊(k_∥)}√(2kx/(πς)).
    pub fn u_near_edge(&self, x: T) -> Tagged<T> {
        let p = self.params();
        let value = self.near_edge_coefficient() * x.sqrt();
        let in_regime = match self.ksp() {
            Some(ks) => ks.norm() * x <= r(0.1),
            None => false,
        };
        tagged(value, FieldMethod::NearEdge, in_regime && p.varsigma() != zero(), T::zero())
    }

    /// c₀ in u ∼ c₀√x as x ↓ 0.
    pub fn near_edge_coefficient(&self) -> Complex<T> {
        let p = self.params();
        let phase = Complex::new(T::zero(), -T::FRAC_PI_4()) - self.q_kpar;
        phase.exp() * (p.k() * r::<T>(2.0) / (p.varsigma() * T::PI())).sqrt() * r::<T>(2.0)
    }

    /// Oracle for u and du/dx on x ≥ `x_min` by Filon quadrature of the real-line
    /// Fourier integral. Needs Im k > 0.
    pub fn fourier_line(&self, x_min: T) -> Result<FourierLine<'_, T>> {
        FourierLine::new(self, x_min)
    }
}

fn tagged<T: Real>(value: Complex<T>, method: FieldMethod, in_regime: bool, err: T) -> Tagged<T> {
    Tagged {
        value,
        method,
        in_regime,
        err_estimate: err,
    }
}

/// Roots of 1 + (iς²/4)τ(2+iτ), i.e. τ = i ± √(4/ς² − 1).
fn quadratic_roots<T: Real>(s: Complex<T>) -> [Complex<T>; 2] {
    let d = (one::<T>() * r::<T>(4.0) / (s * s) - one::<T>()).sqrt();
    [im_unit::<T>() + d, im_unit::<T>() - d]
}

/// e^{ik_∥x}/P(k_∥).
pub fn u_direct<T: Real>(x: T, p: &MediumParams<T>) -> Complex<T> {
    (im_unit::<T>() * p.k_par() * x).exp() / symbol_p(p.k_par(), p)
}

/// SPP residue; see [`FieldSolver::u_spp`].
pub fn u_spp<T: Real>(
    x: T,
    p: &MediumParams<T>,
    qc: &QuadratureConfig<T>,
    mode: SppMode,
) -> Result<Complex<T>> {
    FieldSolver::new(p, qc)?.u_spp(x, mode)
}

/// Branch-cut radiation field; see [`FieldSolver::u_rad_branchcut`].
pub fn u_rad_branchcut<T: Real>(
    x: T,
    p: &MediumParams<T>,
    qc: &QuadratureConfig<T>,
) -> Result<Complex<T>> {
    FieldSolver::new(p, qc)?.u_rad_branchcut(x).map(|t| t.value)
}

/// h(z) = ∫₀^∞ √τ√(2+iτ)/(iτ + 1 − k_∥/k) e^{−zτ} dτ for Re z > 0.
pub fn h_moderate<T: Real>(
    z: Complex<T>,
    kpar_over_k: Complex<T>,
    qc: &QuadratureConfig<T>,
) -> Result<Complex<T>> {
    if !(z.re > T::zero()) {
        return Err(Error::Domain(format!("h(z) needs Re z > 0 (got {z})")));
    }
    let decay = (T::one() / qc.abs_tol.max(T::min_positive_value())).ln() + r(8.0);
    let smax = (decay / z.re).sqrt();
    let pole = (one::<T>() - kpar_over_k).norm().sqrt();
    let mut pts = vec![pole, T::one()];
    let mut g = r::<T>(3.0);
    while g < smax {
        pts.push(g);
        g = g * r(3.0);
    }
    let br = clean_breaks(pts, T::zero(), smax);
    let f = |s: T| {
        let tau = s * s;
        let ct = Complex::new(r::<T>(2.0), tau);
        ct.sqrt() * (tau * r::<T>(2.0))
            / (Complex::new(T::zero(), tau) + one::<T>() - kpar_over_k)
            * (-z * tau).exp()
    };
    Ok(integrate(f, &br, qc)?.value)
}

/// Moderate-zone radiation (ς/2π)e^{ikx−iπ/4}h(kx), tagged for 0.3 ≤ |k|x ≤ 10.
pub fn u_rad_moderate<T: Real>(
    x: T,
    p: &MediumParams<T>,
    qc: &QuadratureConfig<T>,
) -> Result<Tagged<T>> {
    let z = p.k() * x;
    let h = h_moderate(z, p.k_par() / p.k(), qc)?;
    let phase = (im_unit::<T>() * z - im_unit::<T>() * T::FRAC_PI_4()).exp();
    let kx = z.norm();
    Ok(tagged(
        p.varsigma() / T::TAU() * phase * h,
        FieldMethod::Moderate,
        kx >= r(0.3) && kx <= r(10.0),
        T::zero(),
    ))
}

/// Far-zone radiation through the Fresnel tail 𝓕, tagged for |k|x ≥ 10.
pub fn u_rad_far<T: Real>(x: T, p: &MediumParams<T>) -> Result<Tagged<T>> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("far-zone radiation needs x > 0 (got {x})")));
    }
    let (k, kp) = (p.k(), p.k_par());
    let w = (k - kp) * x;
    let i = im_unit::<T>();
    let phase = (i * kp * x - i * T::FRAC_PI_4() * r::<T>(3.0)).exp();
    let bracket = (i * w).exp() / w.sqrt() + fresnel_tail(w);
    let value = p.varsigma() / T::TAU().sqrt() * phase * ((k - kp) / k).sqrt() * bracket;
    Ok(tagged(value, FieldMethod::Far, k.norm() * x >= r(10.0), T::zero()))
}

/// Real-line Fourier integral evaluation of u; see [`FieldSolver::fourier_line`].
pub fn u_fourier<T: Real>(x: T, p: &MediumParams<T>, qc: &QuadratureConfig<T>) -> Result<Tagged<T>> {
    let solver = FieldSolver::new(p, qc)?;
    let line = solver.fourier_line(x)?;
    line.u(x)
}

/// Near-edge law; see [`FieldSolver::u_near_edge`].
pub fn u_near_edge<T: Real>(
    x: T,
    p: &MediumParams<T>,
    qc: &QuadratureConfig<T>,
) -> Result<Tagged<T>> {
    Ok(FieldSolver::new(p, qc)?.u_near_edge(x))
}

/// du/dx by the Fourier integral; see [`FourierLine::du_dx`].
pub fn du_dx<T: Real>(x: T, p: &MediumParams<T>, qc: &QuadratureConfig<T>) -> Result<Complex<T>> {
    let solver = FieldSolver::new(p, qc)?;
    let line = solver.fourier_line(x)?;
    line.du_dx(x)
}

#[derive(Debug, Clone)]
struct Panel<T> {
    a: T,
    b: T,
    g: Vec<Complex<T>>,
}

/// Samples of G(ξ) = e^{Q₊(ξ)}/((ξ−k_∥)P(ξ)) on Filon panels covering [−Ξ, Ξ],
/// with the poles at k_∥ and k_sp subtracted in closed form.
#[derive(Debug)]
pub struct FourierLine<'a, T> {
    solver: &'a FieldSolver<T>,
    rule: FilonRule<T>,
    panels: Vec<Panel<T>>,
    x_min: T,
    xi_max: T,
    /// G − S at ±Ξ and at ±Ξ(1 ± h), for the asymptotic tails.
    ends: [[Complex<T>; 3]; 2],
    poles: Vec<(Complex<T>, Complex<T>, T)>,
}

const FILON_NODES: usize = 20;
const TAIL_STEP: f64 = 1e-2;

impl<'a, T: Real> FourierLine<'a, T> {
    fn new(solver: &'a FieldSolver<T>, x_min: T) -> Result<Self> {
        let p = solver.params();
        if !(p.k().im > T::zero()) {
            return Err(Error::Domain(
                "the real-line Fourier integral needs Im k > 0".into(),
            ));
        }
        if !(x_min > T::zero()) {
            return Err(Error::Domain(format!("Fourier integral needs x > 0 (got {x_min})")));
        }
        let k = p.k();
        let mut poles = Vec::new();
        let kp = p.k_par();
        let rk = (solver.q_kpar).exp() / symbol_p(kp, p);
        poles.push((kp, rk, k.norm() * r(0.5)));
        if let (Some(ks), Some(qs)) = (solver.ksp(), solver.q_ksp) {
            let res = qs.exp() / ((ks - kp) * symbol_p_prime(ks, p)?);
            poles.push((ks, res, ks.im.max(k.norm() * r(0.05)) * r(4.0)));
        }
        let ks_norm = solver.ksp().map_or(T::zero(), |s| s.norm());
        let inner = k.norm().max(ks_norm) * r(3.0);
        let xi_max = (r::<T>(200.0) / x_min).max(inner * r(2.0));
        let edges = panel_edges(p, solver.ksp(), inner, xi_max);
        let rule = FilonRule::new(FILON_NODES);
        let mut line = Self {
            solver,
            rule,
            panels: Vec::new(),
            x_min,
            xi_max,
            ends: [[zero(); 3]; 2],
            poles,
        };
        let nodes: Vec<(usize, T)> = edges
            .windows(2)
            .enumerate()
            .flat_map(|(j, w)| {
                let (c, h) = ((w[0] + w[1]) * r(0.5), (w[1] - w[0]) * r(0.5));
                line.rule.nodes.iter().map(move |t| (j, c + h * *t)).collect::<Vec<_>>()
            })
            .collect();
        let vals = nodes
            .par_iter()
            .map(|(_, xi)| line.reduced(*xi))
            .collect::<Result<Vec<_>>>()?;
        let n = line.rule.len();
        line.panels = edges
            .windows(2)
            .enumerate()
            .map(|(j, w)| Panel {
                a: w[0],
                b: w[1],
                g: vals[j * n..(j + 1) * n].to_vec(),
            })
            .collect();
        for (side, sign) in [(0, T::one()), (1, -T::one())] {
            for (m, f) in [T::one(), T::one() + r(TAIL_STEP), T::one() - r(TAIL_STEP)]
                .into_iter()
                .enumerate()
            {
                line.ends[side][m] = line.reduced(sign * xi_max * f)?;
            }
        }
        Ok(line)
    }

    fn g(&self, xi: T) -> Result<Complex<T>> {
        let p = self.solver.params();
        let q = self.solver.split.q_plus(re(xi))?.value;
        Ok(q.exp() / ((re::<T>(xi) - p.k_par()) * symbol_p(re(xi), p)))
    }

    /// G minus the pole terms R·a²/((ξ−c)((ξ−c)² + a²)).
    fn reduced(&self, xi: T) -> Result<Complex<T>> {
        let mut v = self.g(xi)?;
        for (c, res, a) in &self.poles {
            let d = re::<T>(xi) - *c;
            v = v - *res * (*a * *a) / (d * (d * d + re::<T>(*a * *a)));
        }
        Ok(v)
    }

    /// ∫ (G − S)(ξ) (iξ)^m e^{iξx} dξ over the panels plus asymptotic tails.
    fn line_integral(&self, x: T, m: i32) -> Complex<T> {
        let i = im_unit::<T>();
        let mut acc = zero::<T>();
        for pn in &self.panels {
            let (c, h) = ((pn.a + pn.b) * r(0.5), (pn.b - pn.a) * r(0.5));
            let vals: Vec<Complex<T>> = if m == 0 {
                pn.g.clone()
            } else {
                pn.g.iter()
                    .zip(&self.rule.nodes)
                    .map(|(g, t)| *g * i * (c + h * *t))
                    .collect()
            };
            acc = acc + self.rule.moment(&vals, h * x) * (i * c * x).exp() * h;
        }
        let ix = i * x;
        let hstep = self.xi_max * r(TAIL_STEP);
        for (side, sign) in [(0usize, T::one()), (1, -T::one())] {
            let xi = sign * self.xi_max;
            let weight = |f: T| {
                if m == 0 {
                    one::<T>()
                } else {
                    i * sign * self.xi_max * f
                }
            };
            let e = &self.ends[side];
            let g0 = e[0] * weight(T::one());
            let gp = e[1] * weight(T::one() + r(TAIL_STEP));
            let gm = e[2] * weight(T::one() - r(TAIL_STEP));
            // derivatives along ξ (the samples sit at ξ ± h·sign)
            let d1: Complex<T> = (gp - gm) / (hstep * r::<T>(2.0)) * sign;
            let d2: Complex<T> = (gp - g0 * r::<T>(2.0) + gm) / (hstep * hstep);
            let series: Complex<T> = -g0 / ix + d1 / (ix * ix) - d2 / (ix * ix * ix);
            // ∫_Ξ^∞ and −(−∞ side evaluated at the lower limit)
            acc = acc + (i * xi * x).exp() * series * sign;
        }
        acc
    }

    /// ∫ S(ξ)(iξ)^m e^{iξx} dξ for the subtracted poles (m = 0 or 1).
    fn pole_integral(&self, x: T, m: i32) -> Complex<T> {
        let i = im_unit::<T>();
        let mut acc = zero::<T>();
        for (c, res, a) in &self.poles {
            let (a, c) = (*a, *c);
            let damp = (-a * x).exp();
            let base = (i * c * x).exp();
            let v = if m == 0 {
                base * (one::<T>() - re::<T>(damp * r(0.5)))
            } else {
                base * (i * c * (one::<T>() - re::<T>(damp * r(0.5))) + re::<T>(a * damp * r(0.5)))
            };
            acc = acc + *res * v * T::TAU() * i;
        }
        acc
    }

    fn check(&self, x: T) -> Result<()> {
        if x < self.x_min * (T::one() - T::epsilon() * r(16.0)) {
            return Err(Error::Domain(format!(
                "Fourier line built for x ≥ {} (got {x})",
                self.x_min
            )));
        }
        Ok(())
    }

    /// u(x) = (e^{−Q₊(k_∥)}/2πi) ∫ G(ξ) e^{iξx} dξ, path indented below k_∥.
    pub fn u(&self, x: T) -> Result<Tagged<T>> {
        self.check(x)?;
        let pre = (-self.solver.q_kpar).exp() / (im_unit::<T>() * T::TAU());
        let v = pre * (self.line_integral(x, 0) + self.pole_integral(x, 0));
        let kx = self.solver.params().k().norm() * x;
        Ok(tagged(v, FieldMethod::Fourier, kx >= r(0.1), T::zero()))
    }

    /// du/dx = (e^{−Q₊(k_∥)}/2π) ∫ ξ G(ξ) e^{iξx} dξ.
    pub fn du_dx(&self, x: T) -> Result<Complex<T>> {
        self.check(x)?;
        let pre = (-self.solver.q_kpar).exp() / (im_unit::<T>() * T::TAU());
        Ok(pre * (self.line_integral(x, 1) + self.pole_integral(x, 1)))
    }

    pub fn xi_max(&self) -> T {
        self.xi_max
    }

    pub fn panel_count(&self) -> usize {
        self.panels.len()
    }
}

/// Panel edges on [−Ξ, Ξ]: graded toward ±Re k, width ≤ ¼·max(|ξ|, |k|) inside
/// `inner`, geometric beyond.
fn panel_edges<T: Real>(
    p: &MediumParams<T>,
    ksp: Option<Complex<T>>,
    inner: T,
    xi_max: T,
) -> Vec<T> {
    let k = p.k();
    let mut pts = vec![T::zero(), p.k_par().re, inner, -inner];
    if let Some(ks) = ksp {
        pts.extend([ks.re, -ks.re]);
    }
    let delta = k.im.max(k.norm() * r(1e-3));
    for c in [k.re, -k.re] {
        pts.push(c);
        let mut d = delta * r(0.5);
        while d < k.norm() {
            pts.extend([c - d, c + d]);
            d = if d < delta * r(2.0) { d + delta * r(0.5) } else { d * r(1.5) };
        }
    }
    let mut g = inner;
    while g < xi_max {
        g = (g * r(1.3)).min(xi_max);
        pts.extend([g, -g]);
    }
    let mut edges = clean_breaks(pts, -xi_max, xi_max);
    edges.dedup_by(|a, b| (*a - *b).abs() <= k.norm() * r(1e-9));
    let mut out = vec![edges[0]];
    for &e in &edges[1..] {
        loop {
            let last = *out.last().unwrap();
            let wmax = k.norm().max(last.abs().min(e.abs())) * r(0.25);
            if e - last <= wmax * r(1.0001) {
                break;
            }
            out.push(last + wmax);
        }
        out.push(e);
    }
    out
}
