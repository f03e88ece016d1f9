//! Commutative associative algebras over ℂ in the Cartan basis, monogenic functions of
//! `ζ = Σ x_j e_j`, and numerical checks of the Cauchy theorem, the Morera identity and the
//! Cauchy integral formula.
//!
//! ```
//! use cartan_core::{builtins, integral, QuadratureOptions};
//!
//! let alg = builtins::example_algebra(1);
//! let frame = builtins::default_frame(&alg);
//! let circle = &integral::standard_circles(&frame)[0];
//! let lambda = integral::compute_lambda(&frame, &alg, circle, &QuadratureOptions::default()).unwrap();
//! assert!(lambda.residual < 1e-8);
//! ```

// `!(x <= y)` is used on purpose so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod builtins;
pub mod curve;
pub mod element;
pub mod error;
pub mod frame;
pub mod integral;
mod linalg;
pub mod monogenic;
pub mod par;
pub mod predicates;
pub mod quadrature;
pub mod resolvent;
pub mod tolerances;

pub use algebra::{Algebra, StructureConstant, ValidationReport};
pub use curve::{Curve, Orientation};
pub use element::Element;
pub use error::{Error, Result};
pub use frame::Frame;
pub use integral::{Criterion, LabOptions, VerificationReport};
pub use monogenic::{AlgebraField, CoordinateField, HolomorphicScalar, MonogenicFunction};
pub use num_complex::Complex64;
pub use par::Execution;
pub use quadrature::QuadratureOptions;
