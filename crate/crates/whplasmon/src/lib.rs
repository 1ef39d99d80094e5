//! Diffraction of a TM plane wave by a semi-infinite resistive sheet: the
//! Wiener-Hopf solution on the sheet, its split function, the surface-plasmon
//! and radiation parts of the field, and a brute-force integral-equation solver
//! to check them against.
//!
//! ```
//! use whplasmon::{FieldSolver, MediumParams, QuadratureConfig};
//!
//! let p = MediumParams::<f64>::reference();
//! let fs = FieldSolver::new(&p, &QuadratureConfig::default()).unwrap();
//! let s = fs.sample(5.0).unwrap();
//! assert!(s.u_rad.norm() < 0.1 * s.u_sp.norm());
//! ```

pub mod error;
pub mod fields;
pub mod kernel;
pub mod oracle;
pub mod quad;
pub mod scalar;
pub mod split;
pub mod specfun;

pub use error::{Error, Result};
pub use fields::{FieldMethod, FieldSample, FieldSolver, SppMode};
pub use kernel::MediumParams;
pub use oracle::{solve_truncated, NystromConfig, OracleSolution};
pub use quad::QuadratureConfig;
pub use split::{q_plus_exact, q_plus_special, q_plus_twoscale, SpecialPoint, SplitFunction};

/// Complex double.
pub type C64 = num_complex::Complex<f64>;
