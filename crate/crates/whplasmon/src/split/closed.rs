use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{im_unit, one, r, re, zero, Real};
use crate::specfun::dilog;

/// F₁(w) = (√(1−w²)/w)·ln(w + i√(1−w²)) + i·ln(2w).
///
/// Even in the square root, hence free of singularities at w = ±1.
pub fn f1<T: Real>(w: Complex<T>) -> Result<Complex<T>> {
    if w == zero() {
        return Err(Error::BranchPoint("F₁ at w = 0".into()));
    }
    let i = im_unit::<T>();
    let s = (one::<T>() - w * w).sqrt();
    let two = r::<T>(2.0);
    Ok(s / w * (w + i * s).ln() + i * (w * two).ln())
}

/// F₂(w) = 2∫₀^∞ ln(1 + iz/2)/(z² − w²) dz in closed form via Li₂.
///
/// With a = ln(1+iw/2), b = ln(1−iw/2), ℓ± = ln(i/(2±iw)), A± = ∓iw/(2±iw):
/// w·F₂ = −a·ln(−w) + b·ln(w) + ½(ℓ₊² − ℓ₋²) + Li₂(−A₊) − Li₂(−A₋),
/// plus 2πi-logarithm corrections where 1 ± iw/2 lies in the third quadrant.
/// The removable singularities at w = ±2i are evaluated by circle averaging.
pub fn f2<T: Real>(w: Complex<T>) -> Result<Complex<T>> {
    if w == zero() {
        return Err(Error::BranchPoint("F₂ at w = 0".into()));
    }
    let i = im_unit::<T>();
    let two = r::<T>(2.0);
    let rad: T = r(1e-2);
    for centre in [i * two, -i * two] {
        if (w - centre).norm() < rad {
            return Ok(circle_mean(w, rad));
        }
    }
    Ok(f2_raw(w))
}

fn circle_mean<T: Real>(w: Complex<T>, rad: T) -> Complex<T> {
    // Mean value of an analytic function over a circle centred at w.
    let n = 32;
    let mut acc = zero::<T>();
    for j in 0..n {
        let phi = T::TAU() * r(j as f64 / n as f64);
        acc = acc + f2_raw(w + Complex::from_polar(rad, phi));
    }
    acc / r::<T>(n as f64)
}

fn f2_raw<T: Real>(w: Complex<T>) -> Complex<T> {
    let i = im_unit::<T>();
    let two = re(r::<T>(2.0));
    let u = one::<T>() + i * w / two;
    let v = one::<T>() - i * w / two;
    let a = u.ln();
    let b = v.ln();
    let lp = (i / (two + i * w)).ln();
    let lm = (i / (two - i * w)).ln();
    let ap = -i * w / (two + i * w);
    let am = i * w / (two - i * w);
    let mut t = -a * (-w).ln() + b * w.ln() + (lp * lp - lm * lm) / two + dilog(-ap) - dilog(-am);
    let two_pi_i = i * T::TAU();
    if u.re < T::zero() && u.im < T::zero() {
        t = t - two_pi_i * (i * two - w).ln();
    }
    if v.re < T::zero() && v.im < T::zero() {
        t = t + two_pi_i * (i * two + w).ln();
    }
    t / w
}
