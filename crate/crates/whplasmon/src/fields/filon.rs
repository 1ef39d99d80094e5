//! Filon-type panels for ∫ g(ξ) e^{iξx} dξ: g is replaced on each panel by its
//! Legendre interpolant at Gauss nodes, and the oscillatory moments are exact.

use num_complex::Complex;

use crate::quad::gauss_legendre;
use crate::scalar::{r, to64, zero, Real};

/// Gauss nodes and Legendre moments shared by all panels of one rule.
#[derive(Debug, Clone)]
pub(crate) struct FilonRule<T> {
    pub nodes: Vec<T>,
    /// `proj[n][j] = (2n+1)/2 · w_j · P_n(t_j)`.
    proj: Vec<Vec<T>>,
}

impl<T: Real> FilonRule<T> {
    pub fn new(n: usize) -> Self {
        let (t, w) = gauss_legendre(n);
        let mut proj = vec![vec![T::zero(); n]; n];
        for j in 0..n {
            let (mut p0, mut p1) = (1.0, t[j]);
            for (m, row) in proj.iter_mut().enumerate() {
                let pm = if m == 0 { p0 } else { p1 };
                row[j] = r((2 * m + 1) as f64 / 2.0 * w[j] * pm);
                if m >= 1 {
                    let p2 = ((2 * m + 1) as f64 * t[j] * p1 - m as f64 * p0) / (m + 1) as f64;
                    p0 = p1;
                    p1 = p2;
                }
            }
        }
        Self {
            nodes: t.into_iter().map(r).collect(),
            proj,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// ∫_{-1}^{1} p(t) e^{iλt} dt for the interpolant p of `vals` at the nodes.
    pub fn moment(&self, vals: &[Complex<T>], lambda: T) -> Complex<T> {
        let n = self.len();
        let jn = spherical_jn(n, to64(lambda));
        let mut acc = zero::<T>();
        let mut ipow = Complex::new(T::one(), T::zero());
        for m in 0..n {
            let mut cm = zero::<T>();
            for (v, w) in vals.iter().zip(&self.proj[m]) {
                cm = cm + *v * *w;
            }
            acc = acc + cm * ipow * r::<T>(2.0 * jn[m]);
            ipow = ipow * Complex::new(T::zero(), T::one());
        }
        acc
    }
}

/// Spherical Bessel functions j_0 … j_{n−1} at λ ≥ 0.
pub(crate) fn spherical_jn(n: usize, lambda: f64) -> Vec<f64> {
    let x = lambda.abs();
    let mut out = vec![0.0; n];
    if x < 1.0 {
        // power series
        let x2 = -x * x * 0.5;
        let mut lead = 1.0;
        for (m, o) in out.iter_mut().enumerate() {
            if m > 0 {
                lead *= x / (2 * m + 1) as f64;
            }
            let (mut term, mut sum) = (1.0, 1.0);
            for kk in 1..30 {
                term *= x2 / (kk * (2 * m + 2 * kk + 1)) as f64;
                sum += term;
                if term.abs() < f64::EPSILON * sum.abs() {
                    break;
                }
            }
            *o = lead * sum;
        }
    } else if x > n as f64 {
        let j0 = x.sin() / x;
        let j1 = x.sin() / (x * x) - x.cos() / x;
        out[0] = j0;
        if n > 1 {
            out[1] = j1;
        }
        for m in 1..n.saturating_sub(1) {
            out[m + 1] = (2 * m + 1) as f64 / x * out[m] - out[m - 1];
        }
    } else {
        // Miller's downward recurrence
        let top = n + 30;
        let (mut a, mut b) = (0.0, 1e-30);
        let mut tmp = vec![0.0; top + 1];
        tmp[top] = b;
        for m in (1..=top).rev() {
            let c = (2 * m + 1) as f64 / x * b - a;
            a = b;
            b = c;
            tmp[m - 1] = b;
        }
        let j0 = x.sin() / x;
        let j1 = x.sin() / (x * x) - x.cos() / x;
        let scale = if j0.abs() > j1.abs() { j0 / tmp[0] } else { j1 / tmp[1] };
        for m in 0..n {
            out[m] = tmp[m] * scale;
        }
    }
    out
}
