//! Brute-force check of the analytic solution: the integral equation
//! u − (iς/k)(d²/dx² + k²)∫₀^L K(x−y)u(y)dy = e^{ik_∥x}
//! truncated to [0, L], discretized with pulse basis functions, midpoint
//! collocation and central differences, and solved densely.

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::MediumParams;
use crate::quad::gauss_legendre;
use crate::scalar::{r, to64, Real};
use crate::specfun::hankel_h0;

type C64 = Complex<f64>;

/// Finite-difference scheme for d²/dx².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FdScheme {
    #[default]
    Central3,
}

/// Treatment of the logarithmic singularity of K in the self cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Regularization {
    #[default]
    LogSubtraction,
}

/// Discretization of the truncated problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NystromConfig<T> {
    /// Truncation length in units of 1/|k|.
    pub length: T,
    /// Number of cells (≥ 64).
    pub n: usize,
    pub fd_scheme: FdScheme,
    pub regularization: Regularization,
}

impl<T: Real> Default for NystromConfig<T> {
    fn default() -> Self {
        Self::new(r(40.0), 4000)
    }
}

impl<T: Real> NystromConfig<T> {
    pub fn new(length: T, n: usize) -> Self {
        Self {
            length,
            n,
            fd_scheme: FdScheme::Central3,
            regularization: Regularization::LogSubtraction,
        }
    }

    /// Cell width in physical units.
    pub fn spacing(&self, p: &MediumParams<T>) -> T {
        self.length / p.k().norm() / r(self.n as f64)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 64 {
            return Err(Error::InvalidParameter(format!("N = {} < 64", self.n)));
        }
        if !(self.length > T::zero()) || !self.length.is_finite() {
            return Err(Error::InvalidParameter(format!("kL = {} must be positive", self.length)));
        }
        let kh = self.length / r(self.n as f64);
        if kh >= r(0.3) {
            return Err(Error::Sampling(format!(
                "|k|h = {:.3} ≥ 0.3 (kL = {}, N = {})",
                to64(kh),
                self.length,
                self.n
            )));
        }
        Ok(())
    }
}

/// The discrete operator I − (iς/k)·D·A in Toeplitz form.
#[derive(Debug, Clone)]
pub struct MomentSystem<T> {
    pub h: T,
    /// a_m = ∫ K over the cell at offset m, for m = 0 … N+1.
    pub kernel_cells: Vec<Complex<T>>,
    /// b_m = (a_{m+1} − 2a_m + a_{m−1})/h² + k²a_m, for m = 0 … N−1.
    pub row: Vec<Complex<T>>,
    /// iς/k.
    pub coupling: Complex<T>,
}

impl<T: Real> MomentSystem<T> {
    pub fn len(&self) -> usize {
        self.row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row.is_empty()
    }

    /// ∫_{cell j} K(x_i − y) dy.
    pub fn convolution_entry(&self, i: usize, j: usize) -> Complex<T> {
        self.kernel_cells[i.abs_diff(j)]
    }

    /// Entry (i, j) of the system matrix.
    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        let d = if i == j { Complex::new(T::one(), T::zero()) } else { Complex::new(T::zero(), T::zero()) };
        d - self.coupling * self.row[i.abs_diff(j)]
    }
}

/// Assembles the Toeplitz moment system for `p` and `nc`.
pub fn assemble<T: Real>(p: &MediumParams<T>, nc: &NystromConfig<T>) -> Result<MomentSystem<T>> {
    nc.validate()?;
    let k = Complex::new(to64(p.k().re), to64(p.k().im));
    let h = to64(nc.spacing(p));
    let n = nc.n;
    let (gx, gw) = gauss_legendre(8);
    let smooth = |s: f64| -> Result<C64> {
        Ok(C64::new(0.0, 0.25) * hankel_h0(k * s)? + s.ln() / std::f64::consts::TAU)
    };
    let slog = |s: f64| if s == 0.0 { 0.0 } else { s * s.ln() - s };
    let cell = |lo: f64, hi: f64| -> Result<C64> {
        let (c, w) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        let mut acc = C64::new(0.0, 0.0);
        for (t, wt) in gx.iter().zip(&gw) {
            acc += smooth(c + w * t)? * (w * wt);
        }
        Ok(acc - (slog(hi) - slog(lo)) / std::f64::consts::TAU)
    };
    let a: Vec<C64> = (0..=n + 1)
        .into_par_iter()
        .map(|m| {
            if m == 0 {
                cell(0.0, h / 2.0).map(|v| v * 2.0)
            } else {
                cell((m as f64 - 0.5) * h, (m as f64 + 0.5) * h)
            }
        })
        .collect::<Result<_>>()?;
    let k2 = k * k;
    let row: Vec<C64> = (0..n)
        .map(|m| {
            let prev = if m == 0 { a[1] } else { a[m - 1] };
            (a[m + 1] - a[m] * 2.0 + prev) / (h * h) + k2 * a[m]
        })
        .collect();
    let coupling = C64::new(0.0, 1.0) * Complex::new(to64(p.varsigma().re), to64(p.varsigma().im)) / k;
    let back = |z: C64| Complex::new(r::<T>(z.re), r::<T>(z.im));
    Ok(MomentSystem {
        h: r(h),
        kernel_cells: a.into_iter().map(back).collect(),
        row: row.into_iter().map(back).collect(),
        coupling: back(coupling),
    })
}

/// Sampled oracle solution.
#[derive(Debug, Clone)]
pub struct OracleSolution<T> {
    /// Collocation points (cell midpoints).
    pub x: Vec<T>,
    pub u: Vec<Complex<T>>,
    /// Estimated 1-norm condition number of the system matrix.
    pub condition: T,
    pub h: T,
}

impl<T: Real> OracleSolution<T> {
    /// Four-point Lagrange interpolation between collocation points.
    pub fn interpolate(&self, x: T) -> Option<Complex<T>> {
        let n = self.x.len();
        let u = (x - self.x[0]) / self.h;
        if u < T::zero() || u > r((n - 1) as f64) {
            return None;
        }
        let j = u.floor().to_usize()?.clamp(1, n - 3);
        let t = u - r(j as f64);
        let (tm, t1, t2) = (t + T::one(), t - T::one(), t - r(2.0));
        let (six, two) = (r::<T>(6.0), r::<T>(2.0));
        Some(
            self.u[j - 1] * (-t * t1 * t2 / six)
                + self.u[j] * (tm * t1 * t2 / two)
                + self.u[j + 1] * (-tm * t * t2 / two)
                + self.u[j + 2] * (tm * t * t1 / six),
        )
    }
}

/// Solves the truncated problem with a dense LU factorization.
pub fn solve_truncated<T: Real>(
    p: &MediumParams<T>,
    nc: &NystromConfig<T>,
) -> Result<OracleSolution<T>> {
    if !(p.k().im > T::zero()) {
        return Err(Error::Domain(
            "the truncated oracle needs Im k > 0 so that truncation errors decay".into(),
        ));
    }
    let sys = assemble(p, nc)?;
    let n = sys.len();
    let c = Complex::new(to64(sys.coupling.re), to64(sys.coupling.im));
    let b: Vec<C64> = sys.row.iter().map(|z| Complex::new(to64(z.re), to64(z.im))).collect();
    let h = to64(sys.h);
    let entry = |i: usize, j: usize| {
        let d = if i == j { 1.0 } else { 0.0 };
        C64::new(d, 0.0) - c * b[i.abs_diff(j)]
    };
    let m = Mat::<C64>::from_fn(n, n, entry);
    let norm1 = (0..n)
        .into_par_iter()
        .map(|j| (0..n).map(|i| entry(i, j).norm()).sum::<f64>())
        .reduce(|| 0.0, f64::max);
    let lu = m.partial_piv_lu();
    let kp = p.k_par();
    let kp = C64::new(to64(kp.re), to64(kp.im));
    let x: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
    let mut rhs = Mat::<C64>::from_fn(n, 1, |i, _| (C64::new(0.0, 1.0) * kp * x[i]).exp());
    lu.solve_in_place(rhs.as_mut());
    let inv_norm = hager_inverse_norm(n, |v: &mut Mat<C64>, adjoint| {
        if adjoint {
            lu.solve_adjoint_in_place(v.as_mut());
        } else {
            lu.solve_in_place(v.as_mut());
        }
    });
    let condition = norm1 * inv_norm;
    if !(condition <= 1e12) {
        return Err(Error::IllConditioned(condition));
    }
    Ok(OracleSolution {
        x: x.into_iter().map(r).collect(),
        u: (0..n)
            .map(|i| {
                let z = rhs[(i, 0)];
                Complex::new(r(z.re), r(z.im))
            })
            .collect(),
        condition: r(condition),
        h: sys.h,
    })
}

/// Hager–Higham estimate of ‖A⁻¹‖₁ from solves with A and Aᴴ.
fn hager_inverse_norm(n: usize, mut solve: impl FnMut(&mut Mat<C64>, bool)) -> f64 {
    let mut v = Mat::<C64>::from_fn(n, 1, |_, _| C64::new(1.0 / n as f64, 0.0));
    let mut est = 0.0;
    for _ in 0..5 {
        solve(&mut v, false);
        est = (0..n).map(|i| v[(i, 0)].norm()).sum::<f64>();
        let mut z = Mat::<C64>::from_fn(n, 1, |i, _| {
            let y = v[(i, 0)];
            if y.norm() == 0.0 {
                C64::new(1.0, 0.0)
            } else {
                y / y.norm()
            }
        });
        solve(&mut z, true);
        let (jmax, zmax) = (0..n)
            .map(|i| (i, z[(i, 0)].norm()))
            .fold((0, 0.0), |acc, t| if t.1 > acc.1 { t } else { acc });
        let zx: f64 = (0..n).map(|i| (z[(i, 0)].conj() * v[(i, 0)]).re).sum::<f64>() / est.max(f64::MIN_POSITIVE);
        if zmax <= zx.abs() {
            break;
        }
        v = Mat::<C64>::from_fn(n, 1, |i, _| C64::new(if i == jmax { 1.0 } else { 0.0 }, 0.0));
    }
    est
}

/// One row of a self-convergence table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow<T> {
    pub n: usize,
    pub deviation: T,
}

/// Relative RMS and maximum deviation of `sol` from `reference` at the
/// collocation points inside `window` (physical units).
pub fn deviation<T: Real>(
    sol: &OracleSolution<T>,
    reference: impl Fn(T) -> Result<Complex<T>>,
    window: (T, T),
) -> Result<(T, T)> {
    let (mut num, mut den, mut worst) = (T::zero(), T::zero(), T::zero());
    for (x, u) in sol.x.iter().zip(&sol.u) {
        if *x < window.0 || *x > window.1 {
            continue;
        }
        let v = reference(*x)?;
        num = num + (*u - v).norm_sqr();
        den = den + v.norm_sqr();
        worst = worst.max((*u - v).norm() / v.norm());
    }
    if den == T::zero() {
        return Err(Error::InvalidParameter("deviation window holds no nodes".into()));
    }
    Ok(((num / den).sqrt(), worst))
}

/// Self-convergence against the finest configuration in `nc_list`, on the
/// interior window 2 ≤ |k|x ≤ 20.
pub fn convergence_study<T: Real>(
    p: &MediumParams<T>,
    nc_list: &[NystromConfig<T>],
) -> Result<Vec<ConvergenceRow<T>>> {
    let kn = p.k().norm();
    convergence_study_in(p, nc_list, (r::<T>(2.0) / kn, r::<T>(20.0) / kn))
}

/// [`convergence_study`] on an explicit window in physical units.
pub fn convergence_study_in<T: Real>(
    p: &MediumParams<T>,
    nc_list: &[NystromConfig<T>],
    window: (T, T),
) -> Result<Vec<ConvergenceRow<T>>> {
    if nc_list.windows(2).any(|w| w[1].n <= w[0].n) {
        return Err(Error::InvalidParameter("N list must be strictly increasing".into()));
    }
    let sols = nc_list
        .iter()
        .map(|nc| solve_truncated(p, nc))
        .collect::<Result<Vec<_>>>()?;
    let finest = sols.last().ok_or_else(|| Error::InvalidParameter("empty N list".into()))?;
    sols.iter()
        .zip(nc_list)
        .map(|(s, nc)| {
            let reference = |x: T| {
                finest
                    .interpolate(x)
                    .ok_or_else(|| Error::Domain(format!("x = {x} outside the finest grid")))
            };
            deviation(s, reference, window).map(|(rms, _)| ConvergenceRow {
                n: nc.n,
                deviation: rms,
            })
        })
        .collect()
}
