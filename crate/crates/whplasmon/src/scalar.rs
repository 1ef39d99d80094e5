//! Scalar abstraction shared by every numeric routine.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point type the library is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn r<T: Real>(x: f64) -> T {
    T::from_f64(x).unwrap()
}

/// Complex number from two `f64` parts.
#[inline]
pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(r(re), r(im))
}

#[inline]
pub(crate) fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub(crate) fn im_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Machine epsilon as `f64`, for tolerance bookkeeping.
#[inline]
pub(crate) fn eps64<T: Real>() -> f64 {
    T::epsilon().to_f64().unwrap()
}

#[inline]
pub(crate) fn to64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap()
}

pub(crate) fn euler_gamma<T: Real>() -> T {
    r(0.577_215_664_901_532_9)
}
