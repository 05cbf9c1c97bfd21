//! Homogeneous and isotropic random fields on R³ with values in tensor
//! spaces of rank 0, 1, and 2.
//!
//! The crate builds Matérn and dual-Matérn radial spectral measures, checks
//! validity of multivariate Matérn parameter sets, evaluates two-point
//! correlation kernels for the scalar, vector, two-component, and
//! symmetric-matrix field models, and draws Gaussian realizations by spectral
//! Monte-Carlo. Spherical-quadrature oracles cross-validate every kernel.
//!
//! Coordinates are ordered (x_{-1}, x_0, x_1) with x_0 the polar axis, so a
//! direction with colatitude θ and azimuth φ is
//! (sinθ sinφ, cosθ, sinθ cosφ). Symmetric 3x3 matrices are flattened to
//! Mandel 6-vectors over the pairs ((-1,-1),(0,0),(1,1),(-1,0),(0,1),(1,-1))
//! with √2 weights on the mixed pairs.
//!
//! ```
//! use tensorfield::{FieldModel, KernelValue, MeasureSpec, ModelSpec};
//!
//! // scalar field with an exponential covariance (Matérn smoothness 1/2)
//! let spec = ModelSpec::Rank0 { mu: MeasureSpec::matern(0.5, 1.0, 1.0) };
//! let model = FieldModel::from_spec(&spec, 32768)?;
//! let KernelValue::Scalar(value) = model.kernel(&[0.0; 3], &[1.0, 0.0, 0.0])? else {
//!     unreachable!()
//! };
//! assert!((value - (-1.0f64).exp()).abs() < 1e-5);
//! # Ok::<(), tensorfield::Error>(())
//! ```

pub mod acceptance;
pub mod error;
pub mod kernels;
pub(crate) mod linalg;
pub mod measures;
pub mod multimatern;
pub mod quad;
pub mod simulate;
pub mod so3;
pub mod specfun;
pub mod tensor_bases;

pub use error::{Error, Result};
pub use kernels::{FieldModel, KernelValue, ModelSpec};
pub use measures::{MeasureSpec, RadialMeasure};
pub use multimatern::{MultiMaternSpec, Verdict};
pub use simulate::{Realization, SimConfig};
