use num_complex::Complex;

use crate::scalar::{one, r, re, zero, Real};

// Bernoulli numbers B_0..B_30 (odd indices beyond 1 vanish).
const BERNOULLI: [(usize, f64); 17] = [
    (0, 1.0),
    (1, -0.5),
    (2, 1.0 / 6.0),
    (4, -1.0 / 30.0),
    (6, 1.0 / 42.0),
    (8, -1.0 / 30.0),
    (10, 5.0 / 66.0),
    (12, -691.0 / 2730.0),
    (14, 7.0 / 6.0),
    (16, -3617.0 / 510.0),
    (18, 43867.0 / 798.0),
    (20, -174611.0 / 330.0),
    (22, 854513.0 / 138.0),
    (24, -236364091.0 / 2730.0),
    (26, 8553103.0 / 6.0),
    (28, -23749461029.0 / 870.0),
    (30, 8615841276005.0 / 14322.0),
];

/// Euler's dilogarithm Li₂(z) = −∫₀^z ln(1−u)/u du, principal branch with the cut on (1, ∞).
pub fn dilog<T: Real>(z: Complex<T>) -> Complex<T> {
    let pi2_6 = T::PI() * T::PI() / r(6.0);
    if z == zero() {
        return zero();
    }
    if z == one() {
        return re(pi2_6);
    }
    let a = z.norm();
    if a <= r(0.5) {
        return power_series(z);
    }
    if a > T::one() {
        let l = (-z).ln();
        return -dilog(z.inv()) - re(pi2_6) - l * l * r::<T>(0.5);
    }
    if z.re > r(0.5) {
        let w = one::<T>() - z;
        return re(pi2_6) - z.ln() * w.ln() - dilog(w);
    }
    bernoulli_series(z)
}

fn power_series<T: Real>(z: Complex<T>) -> Complex<T> {
    let mut sum = zero::<T>();
    let mut zn = one::<T>();
    for n in 1..200 {
        zn = zn * z;
        let nf: T = r(n as f64);
        let term = zn / (nf * nf);
        sum = sum + term;
        if term.norm() <= T::epsilon() * sum.norm() {
            break;
        }
    }
    sum
}

/// Li₂(z) = Σ B_n u^{n+1}/(n+1)!, u = −ln(1−z); fast for |z| ≤ 1, Re z ≤ 1/2.
fn bernoulli_series<T: Real>(z: Complex<T>) -> Complex<T> {
    let u = -(one::<T>() - z).ln();
    let mut sum = zero::<T>();
    let mut fact = 1.0;
    let mut upow = one::<T>();
    let mut next = 0;
    for n in 0..=30usize {
        upow = upow * u;
        fact *= (n + 1) as f64;
        if BERNOULLI[next].0 == n {
            let term = upow * r::<T>(BERNOULLI[next].1 / fact);
            sum = sum + term;
            next += 1;
            if n > 2 && term.norm() <= T::epsilon() * sum.norm() {
                break;
            }
        }
    }
    sum
}
