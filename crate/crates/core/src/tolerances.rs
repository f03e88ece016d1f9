//! Pinned tolerances for the verification checks.

/// Associativity residual for exact integer tables.
pub const ASSOCIATIVITY: f64 = 1e-14;
/// `‖inverse − oracle‖` and `‖(te_1 − ζ)·R − 1‖`.
pub const INVERSE_ORACLE: f64 = 1e-10;
/// Absolute Cauchy–Riemann residual at `h = 1e-4`.
pub const CR_ABSOLUTE: f64 = 1e-6;
/// Accepted range of `residual(h) / residual(h/2)`.
pub const CR_RATIO: (f64, f64) = (3.5, 4.5);
/// Below this a central-difference residual is rounding noise, with no `h²` term to measure.
pub const CR_NOISE_FLOOR: f64 = 1e-11;
/// Cauchy theorem: multiplied by curve length and `max ‖φ‖` on the curve.
pub const CAUCHY_THEOREM_REL: f64 = 1e-9;
/// The non-monogenic control must give at least this much.
pub const CONTROL_MIN: f64 = 0.1;
/// `‖λ − 2πi‖`.
pub const LAMBDA: f64 = 1e-8;
/// Idempotent projection of `λ`.
pub const LAMBDA_IDEMPOTENT: f64 = 1e-10;
/// `∮σ_r` for frames inside the semisimple part.
pub const S_FRAME_NILPOTENT: f64 = 1e-12;
/// Cauchy formula residual.
pub const CAUCHY_FORMULA: f64 = 1e-8;
/// Morera: worst triangle.
pub const MORERA: f64 = 1e-8;
/// The non-monogenic control must exceed this on some triangle.
pub const MORERA_CONTROL_MIN: f64 = 1e-3;
/// Smallest accepted triangle quality `4√3·A / (a² + b² + c²)`.
pub const MIN_TRIANGLE_QUALITY: f64 = 0.1;
