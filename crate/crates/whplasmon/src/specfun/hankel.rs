use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{euler_gamma, im_unit, one, r, re, zero, Real};

const ASYMPTOTIC_RADIUS: f64 = 12.0;

/// First-kind Hankel function of order zero, H₀⁽¹⁾(z).
pub fn hankel_h0<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    hankel01(z).map(|h| h.0)
}

/// First-kind Hankel function of order one, H₁⁽¹⁾(z).
pub fn hankel_h1<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    hankel01(z).map(|h| h.1)
}

/// Both H₀⁽¹⁾(z) and H₁⁽¹⁾(z).
pub fn hankel01<T: Real>(z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
    if z.norm() == T::zero() {
        return Err(Error::Domain("Hankel function at z = 0".into()));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("non-finite Hankel argument".into()));
    }
    if z.norm() >= r(ASYMPTOTIC_RADIUS) {
        Ok(asymptotic(z))
    } else if z.im > T::one() {
        Ok(via_k_integral(z))
    } else {
        Ok(series(z))
    }
}

/// Ascending series for J₀, J₁, Y₀, Y₁ combined into H⁽¹⁾ = J + iY.
fn series<T: Real>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let half = z * r::<T>(0.5);
    let t = -(half * half);
    let eps = T::epsilon();
    let gamma = euler_gamma::<T>();
    let mut j0 = zero::<T>();
    let mut y0s = zero::<T>();
    let mut j1 = zero::<T>();
    let mut y1s = zero::<T>();
    // term0 = t^m/(m!)², term1 = t^m/(m!(m+1)!)
    let mut term0 = one::<T>();
    let mut term1 = one::<T>();
    let mut hm = T::zero();
    for m in 0..300 {
        let mf: T = r(m as f64);
        if m > 0 {
            term0 = term0 * t / (mf * mf);
            term1 = term1 * t / (mf * (mf + T::one()));
            hm = hm + T::one() / mf;
        }
        let hm1 = hm + T::one() / (mf + T::one());
        j0 = j0 + term0;
        y0s = y0s + term0 * hm;
        j1 = j1 + term1;
        y1s = y1s + term1 * (hm + hm1 - gamma - gamma);
        if m > 2 && term0.norm() <= eps * j0.norm().max(eps) && term1.norm() <= eps * j1.norm().max(eps) {
            break;
        }
    }
    let pi = T::PI();
    let two_pi = r::<T>(2.0) / pi;
    let lg = half.ln();
    let j1 = j1 * half;
    let y0 = (lg + re(gamma)) * j0 * two_pi - y0s * two_pi;
    let y1 = -(z * pi).inv() * r::<T>(2.0) + lg * j1 * two_pi - half * y1s / pi;
    let i = im_unit::<T>();
    (j0 + i * y0, j1 + i * y1)
}

/// Hankel asymptotic expansion, truncated at the smallest term.
fn asymptotic<T: Real>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let i = im_unit::<T>();
    let pi = T::PI();
    let pref = (re(r::<T>(2.0) / pi) / z).sqrt();
    let sum = |nu2: T| {
        let mut s = one::<T>();
        let mut term = one::<T>();
        let mut last = T::infinity();
        for m in 1..200 {
            let mf: T = r(m as f64);
            let odd = r::<T>(2.0) * mf - T::one();
            let next: Complex<T> = term * i * (nu2 * r::<T>(4.0) - odd * odd) / (z * (mf * r::<T>(8.0)));
            let mag = next.norm();
            if mag >= last || mag <= T::epsilon() * s.norm() {
                if mag <= T::epsilon() * s.norm() {
                    s = s + next;
                }
                break;
            }
            s = s + next;
            term = next;
            last = mag;
        }
        s
    };
    let ph0 = (i * (z - re(pi / r(4.0)))).exp();
    let ph1 = (i * (z - re(r::<T>(3.0) * pi / r(4.0)))).exp();
    (pref * ph0 * sum(T::zero()), pref * ph1 * sum(T::one()))
}

/// H⁽¹⁾ₙ(z) = (2/π)·i^{−n−1}·Kₙ(−iz), with Kₙ(w) = ∫₀^∞ e^{−w cosh t} cosh(nt) dt
/// summed by the trapezoidal rule. Requires Re w = Im z > 0.
fn via_k_integral<T: Real>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let w = Complex::new(z.im, -z.re);
    let half_pi = T::FRAC_PI_2();
    let d = (half_pi - w.arg().abs()) * r(0.8);
    let digits = -T::epsilon().ln() + r(3.0);
    let h = (T::TAU() * d / digits).min(r(0.25));
    let tmax = (digits / w.re).max(r(1.0)).acosh() + r(1.0);
    let n = (tmax / h).ceil().to_usize().unwrap();
    let mut k0 = (-w).exp() * r::<T>(0.5);
    let mut k1 = k0;
    for j in 1..=n {
        let t = h * r(j as f64);
        let e = (-(w * t.cosh())).exp();
        k0 = k0 + e;
        k1 = k1 + e * t.cosh();
    }
    k0 = k0 * h;
    k1 = k1 * h;
    let two_pi = r::<T>(2.0) / T::PI();
    let i = im_unit::<T>();
    (-i * k0 * two_pi, -k1 * two_pi)
}
