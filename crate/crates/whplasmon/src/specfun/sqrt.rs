use num_complex::Complex;

use crate::scalar::{im_unit, Real};

/// A complex value on the top Riemann sheet of √(k²−ξ²), i.e. with `Im ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetComplex<T>(Complex<T>);

impl<T: Real> SheetComplex<T> {
    pub fn value(self) -> Complex<T> {
        self.0
    }
}

impl<T> From<SheetComplex<T>> for Complex<T> {
    fn from(s: SheetComplex<T>) -> Self {
        s.0
    }
}

/// √(k²−ξ²) on the sheet with non-negative imaginary part.
///
/// Evaluated as `i·√(ξ−k)·√(ξ+k)` and then reflected into the upper half plane.
/// On the real axis with real `k` and `|ξ| < k` the positive root is returned.
pub fn top_sheet_sqrt<T: Real>(xi: Complex<T>, k: Complex<T>) -> SheetComplex<T> {
    let s = im_unit::<T>() * (xi - k).sqrt() * (xi + k).sqrt();
    let flip = s.im < T::zero() || (s.im == T::zero() && s.re < T::zero());
    SheetComplex(if flip { -s } else { s })
}
