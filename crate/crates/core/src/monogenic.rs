//! Monogenic functions of `ζ = Σ x_j e_j` and their differentiability checks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::par::{self, Execution};
use crate::quadrature::{self, Node, QuadratureOptions};
use crate::resolvent::{self, resolvent_of};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default contour quadrature tolerance for [`MonogenicFunction::PrincipalExtension`].
pub const CONTOUR_TOL: f64 = 1e-10;

/// Anything that can be evaluated at the coordinates `x` of a point of `E_k`.
pub trait AlgebraField: Sync {
    fn value_at(&self, alg: &Algebra, frame: &Frame, x: &[f64]) -> Result<Element>;
}

/// Adapter for closures.
pub struct FnField<F>(pub F);

impl<F> AlgebraField for FnField<F>
where
    F: Fn(&Algebra, &Frame, &[f64]) -> Result<Element> + Sync,
{
    fn value_at(&self, alg: &Algebra, frame: &Frame, x: &[f64]) -> Result<Element> {
        (self.0)(alg, frame, x)
    }
}

/// `Ψ(x) = x_coordinate · I_basis`, a smooth function that is not a function of `ζ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoordinateField {
    pub coordinate: usize,
    pub basis: usize,
}

impl AlgebraField for CoordinateField {
    fn value_at(&self, alg: &Algebra, frame: &Frame, x: &[f64]) -> Result<Element> {
        frame.check_point(x)?;
        if self.coordinate == 0 || self.coordinate > x.len() {
            return Err(Error::IndexOutOfRange {
                index: self.coordinate,
                lo: 1,
                hi: x.len(),
            });
        }
        if self.basis == 0 || self.basis > alg.n() {
            return Err(Error::IndexOutOfRange {
                index: self.basis,
                lo: 1,
                hi: alg.n(),
            });
        }
        Ok(alg.basis(self.basis).scale_real(x[self.coordinate - 1]))
    }
}

/// Scalar holomorphic functions used to build principal extensions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HolomorphicScalar {
    /// `Σ_p coeffs[p] t^p`
    Polynomial { coeffs: Vec<Complex64> },
    /// `scale · exp(rate · t)`
    Exponential { scale: Complex64, rate: Complex64 },
    /// `numerator(t) / denominator(t)`, both coefficient lists in ascending powers.
    Rational {
        numerator: Vec<Complex64>,
        denominator: Vec<Complex64>,
    },
}

fn horner(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * t + c)
}

impl HolomorphicScalar {
    pub fn zero() -> Self {
        HolomorphicScalar::Polynomial { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        HolomorphicScalar::Polynomial {
            coeffs: vec![ZERO, Complex64::new(1.0, 0.0)],
        }
    }

    pub fn exp() -> Self {
        HolomorphicScalar::Exponential {
            scale: Complex64::new(1.0, 0.0),
            rate: Complex64::new(1.0, 0.0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            HolomorphicScalar::Polynomial { coeffs } => coeffs.iter().all(|c| *c == ZERO),
            HolomorphicScalar::Exponential { scale, .. } => *scale == ZERO,
            HolomorphicScalar::Rational { numerator, .. } => numerator.iter().all(|c| *c == ZERO),
        }
    }

    pub fn eval(&self, t: Complex64) -> Result<Complex64> {
        match self {
            HolomorphicScalar::Polynomial { coeffs } => Ok(horner(coeffs, t)),
            HolomorphicScalar::Exponential { scale, rate } => Ok(scale * (rate * t).exp()),
            HolomorphicScalar::Rational {
                numerator,
                denominator,
            } => {
                let den = horner(denominator, t);
                let scale: f64 = denominator
                    .iter()
                    .enumerate()
                    .map(|(p, c)| c.norm() * t.norm().powi(p as i32))
                    .sum();
                if den.norm() <= 1e-14 * scale || scale == 0.0 {
                    return Err(Error::Function(format!(
                        "rational function has a pole at t = {t}"
                    )));
                }
                Ok(horner(numerator, t) / den)
            }
        }
    }
}

/// Circle `Γ_u` in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonogenicFunction {
    /// `Σ_p coeffs[p] ζ^p`
    Polynomial { coeffs: Vec<Element> },
    /// `ζ ↦ (t e_1 − ζ)^{-1}`
    ResolventKernel { t: Complex64 },
    /// `Σ_u I_u (2πi)^{-1} ∮_{Γ_u} F_u(t)(te_1 − ζ)^{-1} dt
    ///  + Σ_s I_s (2πi)^{-1} ∮_{Γ_{u_s}} G_s(t)(te_1 − ζ)^{-1} dt`
    ///
    /// Without explicit `contours`, `Γ_u` is centered at `ξ_u(x)` with radius half the
    /// distance to the nearest other `ξ_ℓ` (radius 1 when `m = 1`), chosen per point.
    PrincipalExtension {
        f: Vec<HolomorphicScalar>,
        g: Vec<HolomorphicScalar>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        contours: Option<Vec<ContourSpec>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tol: Option<f64>,
    },
}

impl MonogenicFunction {
    /// `ζ^p`
    pub fn power(alg: &Algebra, p: usize) -> Self {
        let mut coeffs = vec![alg.zero(); p + 1];
        coeffs[p] = alg.unit();
        MonogenicFunction::Polynomial { coeffs }
    }

    pub fn constant(c: Element) -> Self {
        MonogenicFunction::Polynomial { coeffs: vec![c] }
    }

    pub fn principal(f: Vec<HolomorphicScalar>, g: Vec<HolomorphicScalar>) -> Self {
        MonogenicFunction::PrincipalExtension {
            f,
            g,
            contours: None,
            tol: None,
        }
    }

    /// Checks coefficient dimensions and list lengths against `alg`.
    pub fn check(&self, alg: &Algebra) -> Result<()> {
        match self {
            MonogenicFunction::Polynomial { coeffs } => {
                for c in coeffs {
                    c.check_dim(alg.n())?;
                }
                Ok(())
            }
            MonogenicFunction::ResolventKernel { .. } => Ok(()),
            MonogenicFunction::PrincipalExtension { f, g, contours, .. } => {
                if f.len() != alg.m() {
                    return Err(Error::Function(format!(
                        "expected {} functions F_u, got {}",
                        alg.m(),
                        f.len()
                    )));
                }
                if g.len() != alg.nilpotent_dim() {
                    return Err(Error::Function(format!(
                        "expected {} functions G_s, got {}",
                        alg.nilpotent_dim(),
                        g.len()
                    )));
                }
                if let Some(c) = contours {
                    if c.len() != alg.m() {
                        return Err(Error::Function(format!(
                            "expected {} contours, got {}",
                            alg.m(),
                            c.len()
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, frame: &Frame, x: &[f64], alg: &Algebra) -> Result<Element> {
        frame.check_algebra(alg)?;
        self.check(alg)?;
        let zeta = frame.embed(x)?;
        match self {
            MonogenicFunction::Polynomial { coeffs } => {
                let mut acc = alg.zero();
                for c in coeffs.iter().rev() {
                    acc = alg.mul(&acc, &zeta);
                    acc += c;
                }
                Ok(acc)
            }
            MonogenicFunction::ResolventKernel { t } => resolvent::resolvent(*t, frame, x, alg),
            MonogenicFunction::PrincipalExtension {
                f,
                g,
                contours,
                tol,
            } => {
                let opts = QuadratureOptions {
                    abs_tol: tol.unwrap_or(CONTOUR_TOL),
                    ..QuadratureOptions::default()
                };
                principal_extension(alg, &zeta, f, g, contours.as_deref(), &opts)
            }
        }
    }
}

impl AlgebraField for MonogenicFunction {
    fn value_at(&self, alg: &Algebra, frame: &Frame, x: &[f64]) -> Result<Element> {
        self.eval(frame, x, alg)
    }
}

fn contour_for(
    u: usize,
    xi: &[Complex64],
    explicit: Option<&[ContourSpec]>,
) -> Result<ContourSpec> {
    let spec = match explicit {
        Some(c) => c[u],
        None => {
            let nearest = xi
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != u)
                .map(|(_, x)| (x - xi[u]).norm())
                .fold(f64::INFINITY, f64::min);
            let radius = if nearest.is_finite() {
                0.5 * nearest
            } else {
                1.0
            };
            ContourSpec {
                center: xi[u],
                radius,
            }
        }
    };
    if !(spec.radius > 0.0) {
        return Err(Error::Precondition(format!(
            "contour Γ_{} collapses: ξ_{} coincides with another ξ",
            u + 1,
            u + 1
        )));
    }
    if (xi[u] - spec.center).norm() >= spec.radius {
        return Err(Error::Precondition(format!(
            "contour Γ_{} does not surround ξ_{}",
            u + 1,
            u + 1
        )));
    }
    for (l, x) in xi.iter().enumerate() {
        if l != u && (x - spec.center).norm() <= spec.radius {
            return Err(Error::Precondition(format!(
                "contour Γ_{} also surrounds ξ_{}",
                u + 1,
                l + 1
            )));
        }
    }
    Ok(spec)
}

/// `(2πi)^{-1} ∮_Γ h(t)(t − ζ)^{-1} dt` by the trapezoid rule on the circle `Γ`.
fn contour_integral(
    alg: &Algebra,
    zeta: &Element,
    h: &HolomorphicScalar,
    contour: ContourSpec,
    opts: &QuadratureOptions,
) -> Result<Element> {
    let q = quadrature::trapezoid_periodic(alg.n(), opts, |c, s| {
        let w = Complex64::new(c, s);
        let t = contour.center + w * contour.radius;
        let dt = Complex64::new(0.0, contour.radius) * w;
        let r = resolvent_of(alg, t, zeta)?.value;
        Ok(Node {
            value: r.scale(h.eval(t)? * dt),
            aux: 0.0,
        })
    })?;
    Ok(q.value
        .scale(Complex64::new(0.0, -1.0 / std::f64::consts::TAU)))
}

fn principal_extension(
    alg: &Algebra,
    zeta: &Element,
    f: &[HolomorphicScalar],
    g: &[HolomorphicScalar],
    contours: Option<&[ContourSpec]>,
    opts: &QuadratureOptions,
) -> Result<Element> {
    let m = alg.m();
    let xi = &zeta.coords()[..m];
    let gamma: Vec<ContourSpec> = (0..m)
        .map(|u| contour_for(u, xi, contours))
        .collect::<Result<_>>()?;
    let mut out = alg.zero();
    for (u, fu) in f.iter().enumerate() {
        if fu.is_zero() {
            continue;
        }
        let j = contour_integral(alg, zeta, fu, gamma[u], opts)?;
        out += &alg.mul(&alg.basis(u + 1), &j);
    }
    for (i, gs) in g.iter().enumerate() {
        if gs.is_zero() {
            continue;
        }
        let s = m + 1 + i;
        let k = contour_integral(alg, zeta, gs, gamma[alg.unit_of(s) - 1], opts)?;
        out += &alg.mul(&alg.basis(s), &k);
    }
    Ok(out)
}

/// Evaluates `phi` at every point of `xs`, in order.
pub fn eval_batch<F: AlgebraField + ?Sized>(
    phi: &F,
    frame: &Frame,
    xs: &[Vec<f64>],
    alg: &Algebra,
    exec: Execution,
) -> Vec<Result<Element>> {
    par::map(exec, xs, |x| phi.value_at(alg, frame, x))
}

/// Step `1e-4 · (1 + ‖x‖)` for central differences.
pub fn default_step(x: &[f64]) -> f64 {
    1e-4 * (1.0 + x.iter().map(|v| v * v).sum::<f64>().sqrt())
}

/// Central-difference partials `∂Φ/∂x_j`, `j = 1..k`.
pub fn partials<F: AlgebraField + ?Sized>(
    phi: &F,
    frame: &Frame,
    x: &[f64],
    h: f64,
    alg: &Algebra,
) -> Result<Vec<Element>> {
    frame.check_point(x)?;
    if !(h > 0.0) {
        return Err(Error::Precondition(format!(
            "step h must be positive, got {h}"
        )));
    }
    (0..x.len())
        .map(|j| {
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[j] += h;
            minus[j] -= h;
            let d = &phi.value_at(alg, frame, &plus)? - &phi.value_at(alg, frame, &minus)?;
            Ok(d.scale_real(0.5 / h))
        })
        .collect()
}

/// `‖D_j − D_1 e_j‖` for `j = 2..k`, where `D_j` are central differences with step `h`.
pub fn cr_residual<F: AlgebraField + ?Sized>(
    phi: &F,
    frame: &Frame,
    x: &[f64],
    h: f64,
    alg: &Algebra,
) -> Result<Vec<f64>> {
    frame.check_algebra(alg)?;
    let d = partials(phi, frame, x, h, alg)?;
    Ok((2..=frame.k())
        .map(|j| {
            let expected = alg.mul(&d[0], &frame.vector(j));
            d[j - 1].distance(&expected)
        })
        .collect())
}

/// `(Φ(ζ + εh) − Φ(ζ)) / ε` for a direction `h ∈ E_k`.
pub fn gateaux_quotient<F: AlgebraField + ?Sized>(
    phi: &F,
    frame: &Frame,
    x: &[f64],
    direction: &Element,
    eps: f64,
    alg: &Algebra,
) -> Result<Element> {
    frame.check_point(x)?;
    if !(eps > 0.0) {
        return Err(Error::Precondition(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let hx = frame.coordinates_of(direction)?;
    let shifted: Vec<f64> = x.iter().zip(&hx).map(|(a, b)| a + eps * b).collect();
    let d = &phi.value_at(alg, frame, &shifted)? - &phi.value_at(alg, frame, x)?;
    Ok(d.scale_real(1.0 / eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_polynomial_is_embedding() {
        let alg = builtins::example_algebra(1);
        let f = builtins::default_frame(&alg);
        let x = [0.3, -0.2, 0.9];
        let phi = MonogenicFunction::power(&alg, 1);
        assert_eq!(phi.eval(&f, &x, &alg).unwrap(), f.embed(&x).unwrap());
    }

    #[test]
    fn horner_matches_repeated_products() {
        let alg = builtins::example_algebra(4);
        let f = builtins::default_frame(&alg);
        let x = [0.3, -0.2, 0.9];
        let z = f.embed(&x).unwrap();
        let z3 = alg.mul(&alg.mul(&z, &z), &z);
        let phi = MonogenicFunction::power(&alg, 3);
        assert!(phi.eval(&f, &x, &alg).unwrap().distance(&z3) < 1e-15);
    }

    #[test]
    fn principal_extension_of_identity_is_zeta() {
        for alg in [
            builtins::example_algebra(1),
            builtins::example_algebra(4),
            Algebra::semisimple(3).unwrap(),
        ] {
            let f = builtins::default_frame(&alg);
            let x: Vec<f64> = [0.4, 0.3, -0.5][..f.k()].to_vec();
            let phi = MonogenicFunction::principal(
                vec![HolomorphicScalar::identity(); alg.m()],
                vec![HolomorphicScalar::zero(); alg.nilpotent_dim()],
            );
            let v = phi.eval(&f, &x, &alg).unwrap();
            assert!(v.distance(&f.embed(&x).unwrap()) < 1e-10, "{v:?}");
        }
    }

    #[test]
    fn principal_extension_of_exp_in_semisimple_algebra() {
        let alg = Algebra::semisimple(3).unwrap();
        let f = builtins::default_frame(&alg);
        let x = [0.2, 0.6, -0.4];
        let phi = MonogenicFunction::principal(vec![HolomorphicScalar::exp(); 3], vec![]);
        let v = phi.eval(&f, &x, &alg).unwrap();
        let xi = resolvent::spectral(&f, &x, &alg).unwrap().xi;
        // Cauchy's scalar formula per idempotent component
        let expected = Element::from_coords(xi.iter().map(|z| z.exp()).collect());
        assert!(v.distance(&expected) < 1e-10);
    }

    #[test]
    fn explicit_contours_are_checked() {
        let alg = Algebra::semisimple(2).unwrap();
        let f = builtins::default_frame(&alg);
        let x = [0.0, 1.0, 0.0];
        let xi = resolvent::spectral(&f, &x, &alg).unwrap().xi;
        let phi = MonogenicFunction::PrincipalExtension {
            f: vec![HolomorphicScalar::identity(); 2],
            g: vec![],
            contours: Some(vec![
                ContourSpec {
                    center: xi[0],
                    radius: 10.0,
                },
                ContourSpec {
                    center: xi[1],
                    radius: 0.1,
                },
            ]),
            tol: None,
        };
        assert!(matches!(
            phi.eval(&f, &x, &alg),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rational_pole_is_reported() {
        let r = HolomorphicScalar::Rational {
            numerator: vec![c(1.0, 0.0)],
            denominator: vec![c(-1.0, 0.0), c(1.0, 0.0)],
        };
        assert!(r.eval(c(1.0, 0.0)).is_err());
        assert_eq!(r.eval(c(3.0, 0.0)).unwrap(), c(0.5, 0.0));
    }

    #[test]
    fn constant_has_zero_cr_residual() {
        let alg = builtins::example_algebra(2);
        let f = builtins::default_frame(&alg);
        let phi = MonogenicFunction::constant(alg.basis(3).scale(c(2.0, -1.0)));
        let r = cr_residual(&phi, &f, &[0.1, 0.2, 0.3], 1e-3, &alg).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|v| *v <= 1e-14));
    }

    #[test]
    fn coordinate_field_violates_cr() {
        let alg = builtins::example_algebra(2);
        let f = builtins::default_frame(&alg);
        let psi = CoordinateField {
            coordinate: 2,
            basis: 1,
        };
        for h in [1e-2, 1e-4, 1e-6] {
            // ∂Ψ/∂x_2 = I_1 and ∂Ψ/∂x_1 = 0, so the j = 2 residual is ‖I_1‖ = 1.
            let r = cr_residual(&psi, &f, &[0.1, 0.2, 0.3], h, &alg).unwrap();
            assert!((r[0] - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn gateaux_of_linear_function_is_direction() {
        let alg = builtins::example_algebra(3);
        let f = builtins::default_frame(&alg);
        let phi = MonogenicFunction::power(&alg, 1);
        let h = f.vector(3);
        let q = gateaux_quotient(&phi, &f, &[0.2, 0.1, -0.3], &h, 0.125, &alg).unwrap();
        assert!(q.distance(&h) < 1e-14);
        assert!(matches!(
            gateaux_quotient(&phi, &f, &[0.2, 0.1, -0.3], &alg.basis(2), 0.1, &alg),
            Err(Error::NotInSpan { .. })
        ));
    }
}
