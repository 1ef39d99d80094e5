//! The split function Q₊(ξ) of ln P: exact quadrature, the two-scale approximation
//! built from F₁ and F₂, and closed-form values at k_∥ and k_sp.

mod closed;

use num_complex::Complex;

pub use closed::{f1, f2};

use crate::error::{Error, Result};
use crate::kernel::{
    axis_samples, compute_ksp, index_of_symbol, symbol_p, track_phase, AxisGrid, MediumParams,
};
use crate::quad::{clean_breaks, integrate_general, QuadratureConfig};
use crate::scalar::{im_unit, r, re, zero, Real};
use crate::specfun::dilog;

/// How a Q₊ value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMethod {
    Exact,
    TwoScale,
    SpecialValue,
}

/// Q₊ at a point with provenance and an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitEval<T> {
    pub xi: Complex<T>,
    pub value: Complex<T>,
    pub method: SplitMethod,
    pub err_estimate: T,
}

/// Points with closed-form approximations of Q₊.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialPoint {
    AtKpar,
    AtKsp,
}

/// Exact evaluator of Q₊ for one parameter set.
///
/// Construction checks that P has zero index and tabulates the continuous phase of
/// P along [0, Ξ], so that ln P on the real axis never jumps between branches.
#[derive(Debug, Clone)]
pub struct SplitFunction<T> {
    p: MediumParams<T>,
    qc: QuadratureConfig<T>,
    ksp: Option<Complex<T>>,
    xs: Vec<T>,
    phase: Vec<T>,
}

impl<T: Real> SplitFunction<T> {
    pub fn new(p: &MediumParams<T>, qc: &QuadratureConfig<T>) -> Result<Self> {
        let mut s = Self {
            p: *p,
            qc: *qc,
            ksp: None,
            xs: Vec::new(),
            phase: Vec::new(),
        };
        if p.varsigma() == zero() {
            return Ok(s);
        }
        let grid = AxisGrid::default();
        let ind = index_of_symbol(p, &grid)?;
        if ind != 0 {
            return Err(Error::Regime(format!("index of P is {ind}, not 0")));
        }
        s.ksp = compute_ksp(p).ok();
        let (xs, phase) = track_phase(p, &axis_samples(p, &grid), grid.tol)?;
        s.xs = xs;
        s.phase = phase;
        Ok(s)
    }

    pub fn params(&self) -> &MediumParams<T> {
        &self.p
    }

    pub fn config(&self) -> &QuadratureConfig<T> {
        &self.qc
    }

    /// ln P(x) on the real axis, on the branch continuous from x = 0.
    pub fn ln_p(&self, x: T) -> Complex<T> {
        let v = symbol_p(re(x), &self.p).ln();
        if self.xs.is_empty() {
            return v;
        }
        let ax = x.abs();
        let j = self.xs.partition_point(|t| *t <= ax);
        let target = if j == 0 {
            self.phase[0]
        } else if j >= self.xs.len() {
            *self.phase.last().unwrap()
        } else {
            let (x0, x1) = (self.xs[j - 1], self.xs[j]);
            let t = (ax - x0) / (x1 - x0);
            self.phase[j - 1] + (self.phase[j] - self.phase[j - 1]) * t
        };
        let n = ((target - v.im) / T::TAU()).round();
        Complex::new(v.re, v.im + n * T::TAU())
    }

    /// ln P(ξ) continued vertically from the real axis, when that is unambiguous.
    fn ln_p_continued(&self, xi: Complex<T>) -> Option<Complex<T>> {
        let base = self.ln_p(xi.re);
        let m = 16;
        let mut prev = symbol_p(re(xi.re), &self.p);
        let mut ph = base.im;
        for j in 1..=m {
            let z = Complex::new(xi.re, xi.im * r(j as f64 / m as f64));
            let pz = symbol_p(z, &self.p);
            if pz.norm() < r(1e-3) {
                return None;
            }
            let d = (pz / prev).arg();
            if d.abs() > T::FRAC_PI_4() {
                return None;
            }
            ph = ph + d;
            prev = pz;
        }
        Some(Complex::new(prev.norm().ln(), ph))
    }

    /// Q₊(ξ) = (ξ/πi)∫₀^∞ [Q(ζ) − c]/(ζ² − ξ²) dζ + c/2 for Im ξ ≥ 0.
    ///
    /// Any constant c gives the same value; c = ln P(ξ) removes the near-pole at
    /// ζ = ±ξ when ξ is close to the axis, and is required for real ξ.
    pub fn q_plus(&self, xi: Complex<T>) -> Result<SplitEval<T>> {
        let done = |at, value, err| {
            Ok(SplitEval {
                xi: at,
                value,
                method: SplitMethod::Exact,
                err_estimate: err,
            })
        };
        if xi.im < T::zero() {
            return Err(Error::Domain(format!(
                "Q₊ needs Im ξ ≥ 0 (got {xi}); use q_minus in the lower half plane"
            )));
        }
        if self.p.varsigma() == zero() {
            return done(xi, zero(), T::zero());
        }
        if xi == zero() {
            return done(xi, self.ln_p(T::zero()) * r::<T>(0.5), T::zero());
        }
        let eval_at = xi;
        let mut xi = xi;
        let kk = self.p.k();
        for b in [kk, -kk] {
            if (xi - b).norm() <= kk.norm() * T::epsilon() * r(64.0) {
                xi = b;
            }
        }
        let near = xi.im <= xi.re.abs();
        let cst = if xi.im == T::zero() {
            if symbol_p(xi, &self.p) == zero() {
                return Err(Error::BranchPoint(format!("P(ξ) = 0 on the real axis at {xi}")));
            }
            self.ln_p(xi.re)
        } else if near {
            let pv = symbol_p(xi, &self.p);
            match self.ln_p_continued(xi) {
                Some(l) if pv.norm() > r(0.05) => l,
                _ if xi.im == T::zero() => {
                    return Err(Error::BranchPoint(format!("P(ξ) ≈ 0 on the real axis at {xi}")))
                }
                _ => zero(),
            }
        } else {
            zero()
        };
        let k = self.p.k().re;
        let ax = xi.norm();
        let mut pts = vec![k, xi.re.abs(), ax, ax * r(0.5), ax * r(2.0), k * r(0.5), k * r(2.0)];
        if let Some(ks) = self.ksp {
            let s = ks.norm();
            pts.extend([s * r(0.5), s * r(0.9), ks.re.abs(), s * r(1.1), s * r(2.0)]);
        }
        let top = pts.iter().fold(T::zero(), |m, x| m.max(*x));
        let br = clean_breaks(pts, T::zero(), top * r(2.0));
        let xi2 = xi * xi;
        let f = |z: T| {
            let d = re(z * z) - xi2;
            if d == zero() {
                // removable point of the subtracted integrand
                return zero();
            }
            (self.ln_p(z) - cst) / d
        };
        // ζ = Re k carries a square-root singularity when Im k ≈ 0.
        let sing: Vec<T> = br.iter().copied().filter(|b| *b == k).collect();
        let q = integrate_general(f, &br, &sing, Some(top * r(2.0)), &self.qc)?;
        let pre = xi / (im_unit::<T>() * T::PI());
        done(eval_at, pre * q.value + cst * r::<T>(0.5), pre.norm() * q.error)
    }

    /// Q₋(ξ) = Q₊(−ξ) for Im ξ ≤ 0.
    pub fn q_minus(&self, xi: Complex<T>) -> Result<Complex<T>> {
        self.q_plus(-xi).map(|e| e.value)
    }

    pub fn ksp(&self) -> Option<Complex<T>> {
        self.ksp
    }
}

/// Q₊(ξ) by exact quadrature.
pub fn q_plus_exact<T: Real>(
    xi: Complex<T>,
    p: &MediumParams<T>,
    qc: &QuadratureConfig<T>,
) -> Result<SplitEval<T>> {
    SplitFunction::new(p, qc)?.q_plus(xi)
}

/// Q₋(ξ) = Q₊(−ξ).
pub fn q_minus<T: Real>(
    xi: Complex<T>,
    p: &MediumParams<T>,
    qc: &QuadratureConfig<T>,
) -> Result<Complex<T>> {
    SplitFunction::new(p, qc)?.q_minus(xi)
}

fn approx_error<T: Real>(p: &MediumParams<T>) -> T {
    let s = p.varsigma().norm();
    if s == T::zero() {
        T::zero()
    } else {
        s * s * s.ln().abs()
    }
}

/// Q₊(ξ) ≈ (1/2πi)(ςξ/k)[F₁(ξ/k) + F₂(ςξ/k)].
pub fn q_plus_twoscale<T: Real>(xi: Complex<T>, p: &MediumParams<T>) -> Result<SplitEval<T>> {
    if xi == zero() {
        return Err(Error::BranchPoint("two-scale Q₊ at ξ = 0".into()));
    }
    let s = p.varsigma();
    let value = if s == zero() {
        zero()
    } else {
        let w = s * xi / p.k();
        w / (im_unit::<T>() * T::TAU()) * (f1(xi / p.k())? + f2(w)?)
    };
    Ok(SplitEval {
        xi,
        value,
        method: SplitMethod::TwoScale,
        err_estimate: approx_error(p),
    })
}

/// Closed-form small-ς values of Q₊ at k_∥ and at k_sp.
pub fn q_plus_special<T: Real>(which: SpecialPoint, p: &MediumParams<T>) -> Result<SplitEval<T>> {
    let s = p.varsigma();
    let pi = T::PI();
    let i = im_unit::<T>();
    let (xi, value) = match which {
        SpecialPoint::AtKpar => {
            let q = p.k_par() / p.k();
            let one = re(T::one());
            let head = q * s * ((re(r::<T>(4.0)) / s).ln() + one) / (pi * r(2.0));
            let tail = s / (pi * r(2.0)) * (re(T::FRAC_PI_2()) - q.asin()) * (one - q * q).sqrt();
            let v = if s == zero() { zero() } else { head + tail };
            (p.k_par(), v)
        }
        SpecialPoint::AtKsp => {
            let ksp = compute_ksp(p)?;
            let l2 = r::<T>(2.0).ln();
            let bracket = re(-l2 * l2 - pi * pi / r(3.0)) + i * (pi * l2 * r(2.0))
                - dilog(re(r::<T>(0.5))) * r::<T>(2.0);
            (ksp, bracket / (i * (pi * r::<T>(4.0))))
        }
    };
    Ok(SplitEval {
        xi,
        value,
        method: SplitMethod::SpecialValue,
        err_estimate: approx_error(p),
    })
}

/// e^{−Q₊(k_∥)} exactly and to first order in ς.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpQplusKpar<T> {
    pub exact: Complex<T>,
    pub expansion: Complex<T>,
}

pub fn exp_minus_qplus_kpar<T: Real>(
    p: &MediumParams<T>,
    qc: &QuadratureConfig<T>,
) -> Result<ExpQplusKpar<T>> {
    let exact = (-q_plus_exact(p.k_par(), p, qc)?.value).exp();
    let expansion = re(T::one()) - q_plus_special(SpecialPoint::AtKpar, p)?.value;
    Ok(ExpQplusKpar { exact, expansion })
}
