use num_complex::Complex;

use crate::scalar::{im_unit, one, r, re, zero, Real};

const SERIES_RADIUS: f64 = 6.0;

/// Fresnel cosine integral C(z) = (1/√(2π)) ∫₀^z cos t/√t dt.
pub fn fresnel_c<T: Real>(z: Complex<T>) -> Complex<T> {
    fresnel_cs(z).0
}

/// Fresnel sine integral S(z) = (1/√(2π)) ∫₀^z sin t/√t dt.
pub fn fresnel_s<T: Real>(z: Complex<T>) -> Complex<T> {
    fresnel_cs(z).1
}

/// Both C(z) and S(z). Both tend to 1/2 along the positive real axis.
pub fn fresnel_cs<T: Real>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    if z == zero() {
        return (zero(), zero());
    }
    let (ep, em) = half_integrals(z);
    let norm = (T::TAU()).sqrt() * r(2.0);
    ((ep + em) / norm, (ep - em) / (im_unit::<T>() * norm))
}

/// 𝓕(z) = i√(2π)[2^{−1/2}e^{iπ/4} − C(z) − iS(z)] = i∫_z^∞ e^{it}/√t dt.
///
/// Computed without cancellation for large |z| in the sector |arg z| < π/4.
pub fn fresnel_tail<T: Real>(z: Complex<T>) -> Complex<T> {
    let i = im_unit::<T>();
    if use_fraction(z) {
        i * upper_tail(z, T::one())
    } else {
        i * (total::<T>(T::one()) - series(z, T::one()))
    }
}

/// ∫₀^∞ e^{±it}/√t dt = √π e^{±iπ/4}.
fn total<T: Real>(sign: T) -> Complex<T> {
    Complex::from_polar(T::PI().sqrt(), sign * T::FRAC_PI_4())
}

fn use_fraction<T: Real>(z: Complex<T>) -> bool {
    z.norm() > r(SERIES_RADIUS) && z.arg().abs() < T::FRAC_PI_4()
}

/// (∫₀^z e^{it}/√t dt, ∫₀^z e^{−it}/√t dt)
fn half_integrals<T: Real>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    if use_fraction(z) {
        let one = T::one();
        (total(one) - upper_tail(z, one), total(-one) - upper_tail(z, -one))
    } else {
        (series(z, T::one()), series(z, -T::one()))
    }
}

/// 2√z Σ (±iz)^n / (n!(2n+1))
fn series<T: Real>(z: Complex<T>, sign: T) -> Complex<T> {
    let x = im_unit::<T>() * z * sign;
    let mut term = one::<T>();
    let mut sum = one::<T>();
    for n in 1..400 {
        let nf: T = r(n as f64);
        term = term * x / nf;
        let add = term / (nf * r(2.0) + T::one());
        sum = sum + add;
        if add.norm() <= T::epsilon() * sum.norm() {
            break;
        }
    }
    z.sqrt() * sum * r::<T>(2.0)
}

/// ∫_z^∞ e^{±it}/√t dt = e^{±iπ/4} Γ(1/2, ∓iz), Γ from its continued fraction.
fn upper_tail<T: Real>(z: Complex<T>, sign: T) -> Complex<T> {
    let w = -im_unit::<T>() * z * sign;
    let a: T = r(0.5);
    let tiny: T = r(1e-300_f64.max(T::min_positive_value().to_f64().unwrap() * 1e10));
    let mut b = w + re(T::one() - a);
    let mut cc = Complex::new(T::one() / tiny, T::zero());
    let mut d = b.inv();
    let mut h = d;
    for i in 1..2000 {
        let fi: T = r(i as f64);
        let an = -fi * (fi - a);
        b = b + r::<T>(2.0);
        d = b + d * an;
        if d.norm() < tiny {
            d = re(tiny);
        }
        cc = b + cc.inv() * an;
        if cc.norm() < tiny {
            cc = re(tiny);
        }
        d = d.inv();
        let del = d * cc;
        h = h * del;
        if (del - one::<T>()).norm() < T::epsilon() {
            break;
        }
    }
    let gamma = (-w).exp() * w.sqrt() * h;
    Complex::from_polar(T::one(), sign * T::FRAC_PI_4()) * gamma
}
