//! Complex special functions: top-sheet square root, Hankel functions of the first
//! kind, Euler's dilogarithm and Fresnel integrals.

mod dilog;
mod fresnel;
mod hankel;
mod sqrt;

pub use dilog::dilog;
pub use fresnel::{fresnel_c, fresnel_cs, fresnel_s, fresnel_tail};
pub use hankel::{hankel01, hankel_h0, hankel_h1};
pub use sqrt::{top_sheet_sqrt, SheetComplex};
