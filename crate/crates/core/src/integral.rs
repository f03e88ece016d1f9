//! Line integrals `∫_γ Ψ(ζ) dζ` over curves in `E_k` and the checks built on them: the Cauchy
//! theorem, the Morera identity, `λ = ∮ ζ⁻¹ dζ` and the Cauchy integral formula.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::curve::{Circle, Curve, Orientation};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::monogenic::AlgebraField;
use crate::par::{self, Execution};
use crate::quadrature::{self, Node, QuadDiagnostics, QuadratureOptions};
use crate::resolvent::inverse_of;
use crate::tolerances;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LabOptions {
    pub quadrature: QuadratureOptions,
    pub execution: Execution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Pass iff `residual ≤ tolerance`.
    AtMost,
    /// Pass iff `residual ≥ tolerance` (controls that must fail the identity).
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub tolerance: f64,
    pub comparison: Comparison,
}

impl Criterion {
    pub fn at_most(tolerance: f64) -> Self {
        Self {
            tolerance,
            comparison: Comparison::AtMost,
        }
    }

    pub fn at_least(tolerance: f64) -> Self {
        Self {
            tolerance,
            comparison: Comparison::AtLeast,
        }
    }

    pub fn accepts(&self, residual: f64) -> bool {
        match self.comparison {
            Comparison::AtMost => residual <= self.tolerance,
            Comparison::AtLeast => residual >= self.tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub value: Element,
    pub reference: Element,
    pub residual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub diagnostics: QuadDiagnostics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub windings: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(
        check: impl Into<String>,
        value: Element,
        reference: Element,
        residual: f64,
        criterion: Criterion,
        diagnostics: QuadDiagnostics,
    ) -> Self {
        Self {
            check: check.into(),
            value,
            reference,
            residual,
            tolerance: criterion.tolerance,
            comparison: criterion.comparison,
            diagnostics,
            windings: None,
            notes: Vec::new(),
            pass: criterion.accepts(residual),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Result of [`line_integral`].
#[derive(Clone, Debug)]
pub struct LineIntegral {
    pub value: Element,
    pub diagnostics: QuadDiagnostics,
    pub length: f64,
    /// `max ‖Ψ(ζ)‖` over the quadrature nodes.
    pub max_norm: f64,
}

fn check_curve(curve: &Curve, frame: &Frame) -> Result<()> {
    curve.validate()?;
    if curve.dim() != frame.k() {
        return Err(Error::DimensionMismatch {
            expected: frame.k(),
            found: curve.dim(),
        });
    }
    Ok(())
}

/// `∫_γ g(ζ) dζ` where `g` returns the integrand factor in front of `dζ = Σ_j e_j dx_j`.
fn integrate_against_dzeta<G>(
    curve: &Curve,
    frame: &Frame,
    alg: &Algebra,
    opts: &QuadratureOptions,
    g: G,
) -> Result<LineIntegral>
where
    G: Fn(&[f64], &Element) -> Result<Element>,
{
    frame.check_algebra(alg)?;
    check_curve(curve, frame)?;
    let q = curve.integrate(alg.n(), opts, |x, dx| {
        let zeta = frame.embed_unchecked(x);
        let psi = g(x, &zeta)?;
        let dzeta = frame.embed_unchecked(dx);
        Ok(Node {
            aux: psi.norm(),
            value: alg.mul(&psi, &dzeta),
        })
    })?;
    Ok(LineIntegral {
        value: q.value,
        diagnostics: q.diagnostics,
        length: curve.length(),
        max_norm: q.max_aux,
    })
}

/// `∫_γ Ψ(ζ) dζ` with `dζ = Σ_j e_j dx_j`.
pub fn line_integral<F: AlgebraField + ?Sized>(
    psi: &F,
    curve: &Curve,
    frame: &Frame,
    alg: &Algebra,
    opts: &QuadratureOptions,
) -> Result<LineIntegral> {
    integrate_against_dzeta(curve, frame, alg, opts, |x, _| psi.value_at(alg, frame, x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbraceCertificate {
    /// Winding number of `f_u ∘ γ` around `ξ_u(ζ_0)`, `u = 1..m`.
    pub windings: Vec<i64>,
    /// All windings equal `+1`.
    pub embraces_once: bool,
    /// All windings equal `−1`.
    pub orientation_reversed: bool,
}

impl EmbraceCertificate {
    fn from_windings(windings: Vec<i64>) -> Self {
        let embraces_once = !windings.is_empty() && windings.iter().all(|w| *w == 1);
        let orientation_reversed = !windings.is_empty() && windings.iter().all(|w| *w == -1);
        Self {
            windings,
            embraces_once,
            orientation_reversed,
        }
    }

    /// `+1`, `−1`, or `None` when the windings are not uniformly `±1`.
    pub fn uniform_sign(&self) -> Option<i64> {
        if self.embraces_once {
            Some(1)
        } else if self.orientation_reversed {
            Some(-1)
        } else {
            None
        }
    }
}

/// `f_u(ζ(x)) − f_u(ζ(center))` for every `u`.
fn shifted_functionals(
    frame: &Frame,
    alg: &Algebra,
    x: &[f64],
    center: &[f64],
) -> (Vec<Complex64>, f64) {
    let mut scale: f64 = 0.0;
    let values = (1..=alg.m())
        .map(|u| {
            let mut v = ZERO;
            for j in 1..=frame.k() {
                let d = x[j - 1] - center[j - 1];
                let a = frame.a(j, u);
                v += a * d;
                scale = scale.max(a.norm() * d.abs());
            }
            v
        })
        .collect();
    (values, scale)
}

fn through_singular_set(u: usize, tau: f64) -> Error {
    Error::Evaluation {
        tau,
        source: Box::new(Error::Precondition(format!(
            "curve passes through the shifted singular set M_{u}"
        ))),
    }
}

const WINDING_HIT_TOL: f64 = 1e-12;

/// Winding numbers of `f_u ∘ γ` around `ξ_u(center)` by summed argument increments.
///
/// Circles are sampled with node doubling until every increment is below `π/4`; straight
/// pieces map to straight segments in `ℂ`, whose increments are exact.
pub fn winding_certificate(
    curve: &Curve,
    frame: &Frame,
    alg: &Algebra,
    center: &[f64],
) -> Result<EmbraceCertificate> {
    frame.check_algebra(alg)?;
    check_curve(curve, frame)?;
    frame.check_point(center)?;
    let m = alg.m();
    if !curve.is_closed() {
        return Err(Error::Curve("winding numbers need a closed curve".into()));
    }
    let mut total = vec![0.0f64; m];
    match curve {
        Curve::Circle(c) => {
            let mut n = 64usize;
            'refine: loop {
                let pts: Vec<Vec<Complex64>> = (0..n)
                    .map(|j| {
                        let (cs, sn) = quadrature::root_of_unity(j, n);
                        let (x, _) = Curve::circle_point(c, cs, sn);
                        let (z, scale) = shifted_functionals(frame, alg, &x, center);
                        for (u, v) in z.iter().enumerate() {
                            if v.norm() <= WINDING_HIT_TOL * scale.max(c.radius) {
                                return Err(through_singular_set(u + 1, j as f64 / n as f64));
                            }
                        }
                        Ok(z)
                    })
                    .collect::<Result<_>>()?;
                total.iter_mut().for_each(|t| *t = 0.0);
                // Doubling `n` restarts the outer loop.
                #[allow(clippy::mut_range_bound)]
                for j in 0..n {
                    let (a, b) = (&pts[j], &pts[(j + 1) % n]);
                    for u in 0..m {
                        let d = (b[u] / a[u]).arg();
                        if d.abs() >= std::f64::consts::FRAC_PI_4 && n < (1 << 20) {
                            n *= 2;
                            continue 'refine;
                        }
                        total[u] += d;
                    }
                }
                break;
            }
        }
        _ => {
            let segs = curve.segments();
            let count = segs.len() as f64;
            for (i, (a, b)) in segs.iter().enumerate() {
                let (za, sa) = shifted_functionals(frame, alg, a, center);
                let (zb, sb) = shifted_functionals(frame, alg, b, center);
                for u in 0..m {
                    let (p, q) = (za[u], zb[u]);
                    let dir = q - p;
                    let s = if dir.norm_sqr() > 0.0 {
                        (-(p * dir.conj()).re / dir.norm_sqr()).clamp(0.0, 1.0)
                    } else {
                        0.0
                    };
                    let closest = p + dir * s;
                    if closest.norm() <= WINDING_HIT_TOL * sa.max(sb).max(f64::MIN_POSITIVE) {
                        return Err(through_singular_set(u + 1, (i as f64 + s) / count));
                    }
                    total[u] += (q / p).arg();
                }
            }
        }
    }
    let windings = total.iter().map(|t| (t / TAU).round() as i64).collect();
    Ok(EmbraceCertificate::from_windings(windings))
}

/// `σ_r`, the coordinates of `ζ⁻¹ dζ`, expanded explicitly:
/// `σ_u = dξ_u / ξ_u`, and for `r > m`
/// `σ_r = Ã_{u_r} dT_r + Ã_r dξ_{u_r} + Σ_{q,s} Ã_q dT_s Υ_{q,r}^s`.
pub fn sigma_forms(frame: &Frame, x: &[f64], dx: &[f64], alg: &Algebra) -> Result<Vec<Complex64>> {
    frame.check_algebra(alg)?;
    frame.check_point(x)?;
    frame.check_point(dx)?;
    let (n, m) = (alg.n(), alg.m());
    let inv = inverse_of(alg, &frame.embed_unchecked(x))?.value;
    let at = inv.coords();
    let d = frame.embed_unchecked(dx);
    let dd = d.coords();
    let mut sigma = vec![ZERO; n];
    for u in 0..m {
        sigma[u] = at[u] * dd[u];
    }
    for r in m + 1..=n {
        let ur = alg.unit_of(r);
        let mut v = at[ur - 1] * dd[r - 1] + at[r - 1] * dd[ur - 1];
        for q in m + 1..r {
            for s in m + 1..r {
                let c = alg.upsilon(q, r, s);
                if c != ZERO {
                    v += at[q - 1] * dd[s - 1] * c;
                }
            }
        }
        sigma[r - 1] = v;
    }
    Ok(sigma)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub value: Element,
    /// `±2πi·1`, the sign following the circle's orientation.
    pub reference: Element,
    /// `‖λ − reference‖`.
    pub residual: f64,
    pub idempotent: Vec<Complex64>,
    pub idempotent_residual: f64,
    /// `∮σ_r`, `r = m+1..n`.
    pub nilpotent: Vec<Complex64>,
    pub nilpotent_residual: f64,
    /// `Σ_r I_r ∮σ_r` through [`sigma_forms`].
    pub sigma_route: Element,
    pub sigma_route_gap: f64,
    pub certificate: EmbraceCertificate,
    /// `min_u |ξ_u|` over the quadrature nodes.
    pub min_abs_xi: f64,
    pub diagnostics: QuadDiagnostics,
}

impl LambdaReport {
    pub fn to_report(&self, check: impl Into<String>, criterion: Criterion) -> VerificationReport {
        let mut r = VerificationReport::new(
            check,
            self.value.clone(),
            self.reference.clone(),
            self.residual,
            criterion,
            self.diagnostics.clone(),
        );
        r.windings = Some(self.certificate.windings.clone());
        r.notes.push(format!(
            "idempotent residual {:.3e}, nilpotent residual {:.3e}, sigma-route gap {:.3e}",
            self.idempotent_residual, self.nilpotent_residual, self.sigma_route_gap
        ));
        r
    }
}

/// `λ = ∮ ζ⁻¹ dζ` over a closed curve that embraces the origin once (either orientation).
pub fn compute_lambda(
    frame: &Frame,
    alg: &Algebra,
    curve: &Curve,
    opts: &QuadratureOptions,
) -> Result<LambdaReport> {
    let origin = vec![0.0; frame.k()];
    let certificate = winding_certificate(curve, frame, alg, &origin)?;
    let sign = certificate
        .uniform_sign()
        .ok_or_else(|| Error::NotEmbracing {
            windings: certificate.windings.clone(),
        })?;
    let m = alg.m();
    let direct = curve.integrate(alg.n(), opts, |x, dx| {
        let zeta = frame.embed_unchecked(x);
        let inv = inverse_of(alg, &zeta)?.value;
        let min_xi = zeta.coords()[..m]
            .iter()
            .map(|v| v.norm())
            .fold(f64::INFINITY, f64::min);
        Ok(Node {
            value: alg.mul(&inv, &frame.embed_unchecked(dx)),
            aux: 1.0 / min_xi,
        })
    })?;
    let sigma = curve.integrate(alg.n(), opts, |x, dx| {
        Ok(Node {
            value: Element::from_coords(sigma_forms(frame, x, dx, alg)?),
            aux: 0.0,
        })
    })?;

    let two_pi_i = Complex64::new(0.0, TAU * sign as f64);
    let reference = alg.unit().scale(two_pi_i);
    let value = direct.value;
    let idempotent = value.coords()[..m].to_vec();
    let nilpotent = value.coords()[m..].to_vec();
    let idempotent_residual = idempotent
        .iter()
        .map(|v| (v - two_pi_i).norm())
        .fold(0.0, f64::max);
    let nilpotent_residual = nilpotent.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(LambdaReport {
        residual: value.distance(&reference),
        sigma_route_gap: value.distance(&sigma.value),
        reference,
        idempotent,
        idempotent_residual,
        nilpotent,
        nilpotent_residual,
        sigma_route: sigma.value,
        certificate,
        min_abs_xi: 1.0 / direct.max_aux,
        diagnostics: direct.diagnostics,
        value,
    })
}

/// Origin-centered circles on which `λ` is checked: radii 1 and 1/2 in the `(x_1, x_2)` plane
/// and, for `k ≥ 3`, radius 1 in the plane spanned by `(x_1 + x_3)/√2` and `x_2`.
pub fn standard_circles(frame: &Frame) -> Vec<Curve> {
    let k = frame.k();
    let origin = vec![0.0; k];
    let mut out = vec![
        Curve::coordinate_circle(origin.clone(), 1.0, 1, 2).expect("valid plane"),
        Curve::coordinate_circle(origin.clone(), 0.5, 1, 2).expect("valid plane"),
    ];
    if k >= 3 {
        let mut u = vec![0.0; k];
        u[0] = 1.0;
        u[2] = 1.0;
        let mut v = vec![0.0; k];
        v[1] = 1.0;
        out.push(Curve::circle(origin, 1.0, u, v, Orientation::Positive).expect("valid plane"));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaVariation {
    pub reports: Vec<LambdaReport>,
    /// Largest pairwise distance between the computed `λ`, after aligning orientation.
    pub spread: f64,
}

/// `λ` across several circles, reporting how much it varies.
pub fn lambda_variation(
    frame: &Frame,
    alg: &Algebra,
    curves: &[Curve],
    lab: &LabOptions,
) -> Result<LambdaVariation> {
    let reports = par::try_map(lab.execution, curves, |c| {
        compute_lambda(frame, alg, c, &lab.quadrature)
    })?;
    let aligned: Vec<Element> = reports
        .iter()
        .map(|r| {
            let s = r.certificate.uniform_sign().unwrap_or(1) as f64;
            r.value.scale_real(s)
        })
        .collect();
    let mut spread: f64 = 0.0;
    for (i, a) in aligned.iter().enumerate() {
        for b in &aligned[i + 1..] {
            spread = spread.max(a.distance(b));
        }
    }
    Ok(LambdaVariation { reports, spread })
}

/// `‖∮_γ φ dζ‖` against `CAUCHY_THEOREM_REL · length · max ‖φ‖` unless `criterion` is given.
pub fn cauchy_theorem_check<F: AlgebraField + ?Sized>(
    phi: &F,
    curve: &Curve,
    frame: &Frame,
    alg: &Algebra,
    opts: &QuadratureOptions,
    criterion: Option<Criterion>,
) -> Result<VerificationReport> {
    if !curve.is_closed() {
        return Err(Error::Curve(
            "the Cauchy theorem check needs a closed curve".into(),
        ));
    }
    let li = line_integral(phi, curve, frame, alg, opts)?;
    let criterion = criterion.unwrap_or_else(|| {
        Criterion::at_most(tolerances::CAUCHY_THEOREM_REL * li.length * li.max_norm)
    });
    let residual = li.value.norm();
    Ok(VerificationReport::new(
        "cauchy_theorem",
        li.value,
        alg.zero(),
        residual,
        criterion,
        li.diagnostics,
    )
    .with_note(format!(
        "length {:.6}, max |phi| {:.6e}",
        li.length, li.max_norm
    )))
}

/// Ball in `ℝ^k` from which Morera triangles are sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

fn triangle_quality(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let d = |p: &[f64], q: &[f64]| p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
    let (ab, ac, bc) = (d(a, b), d(a, c), d(b, c));
    let dot: f64 = b
        .iter()
        .zip(c)
        .zip(a)
        .map(|((p, q), o)| (p - o) * (q - o))
        .sum();
    let area = 0.5 * (ab * ac - dot * dot).max(0.0).sqrt();
    let denom = ab + ac + bc;
    if denom == 0.0 {
        0.0
    } else {
        4.0 * 3f64.sqrt() * area / denom
    }
}

/// `count` triangles with vertices uniform in `ball` and quality at least
/// [`tolerances::MIN_TRIANGLE_QUALITY`]. Deterministic in `seed`.
pub fn sample_triangles(ball: &Ball, count: usize, seed: u64) -> Result<Vec<Curve>> {
    let k = ball.center.len();
    if k < 2 {
        return Err(Error::Precondition("triangles need k >= 2".into()));
    }
    if !(ball.radius > 0.0) {
        return Err(Error::Precondition(format!(
            "ball radius must be positive, got {}",
            ball.radius
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        loop {
            let dir: Vec<f64> = (0..k)
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect();
            let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                continue;
            }
            let r = ball.radius * rng.random::<f64>().powf(1.0 / k as f64);
            return dir
                .iter()
                .zip(&ball.center)
                .map(|(d, c)| c + r * d / norm)
                .collect();
        }
    };
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::Precondition(
                "could not sample well-shaped triangles".into(),
            ));
        }
        let (a, b, c) = (point(&mut rng), point(&mut rng), point(&mut rng));
        if triangle_quality(&a, &b, &c) >= tolerances::MIN_TRIANGLE_QUALITY {
            out.push(Curve::Triangle {
                vertices: [a, b, c],
            });
        }
    }
    Ok(out)
}

/// Worst `‖∮_{∂△} φ dζ‖` over `count` random triangles in `ball`.
#[allow(clippy::too_many_arguments)]
pub fn morera_check<F: AlgebraField + ?Sized>(
    phi: &F,
    ball: &Ball,
    count: usize,
    seed: u64,
    frame: &Frame,
    alg: &Algebra,
    lab: &LabOptions,
    criterion: Option<Criterion>,
) -> Result<VerificationReport> {
    frame.check_point(&ball.center)?;
    let triangles = sample_triangles(ball, count, seed)?;
    let results = par::try_map(lab.execution, &triangles, |t| {
        line_integral(phi, t, frame, alg, &lab.quadrature)
    })?;
    let mut worst = 0;
    let mut diagnostics = QuadDiagnostics {
        converged: true,
        ..Default::default()
    };
    let mut scale: f64 = 1.0;
    for (i, r) in results.iter().enumerate() {
        if r.value.norm() > results[worst].value.norm() {
            worst = i;
        }
        diagnostics.merge(&r.diagnostics);
        scale = scale.max(r.length * r.max_norm);
    }
    let criterion = criterion.unwrap_or_else(|| Criterion::at_most(tolerances::MORERA * scale));
    let (value, residual) = match results.get(worst) {
        Some(r) => (r.value.clone(), r.value.norm()),
        None => (alg.zero(), 0.0),
    };
    Ok(VerificationReport::new(
        "morera",
        value,
        alg.zero(),
        residual,
        criterion,
        diagnostics,
    )
    .with_note(format!(
        "{count} triangles, seed {seed}, worst triangle #{worst}"
    )))
}

/// An origin-centered unit circle in the plane of `curve` with the same orientation.
fn matched_circle(curve: &Curve) -> Result<Curve> {
    match curve {
        Curve::Circle(Circle {
            plane, orientation, ..
        }) => {
            let [u, v] = plane.clone();
            Curve::circle(vec![0.0; u.len()], 1.0, u, v, *orientation)
        }
        _ => {
            let segs = curve.segments();
            let origin = &segs[0].0;
            let rel: Vec<Vec<f64>> = segs
                .iter()
                .map(|(_, b)| b.iter().zip(origin).map(|(p, q)| p - q).collect())
                .collect();
            let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let u = rel
                .iter()
                .find(|v| norm(v) > 0.0)
                .ok_or_else(|| Error::Curve("degenerate polyline".into()))?;
            let u: Vec<f64> = u.iter().map(|x| x / norm(u)).collect();
            let v = rel
                .iter()
                .map(|w| {
                    let p: f64 = w.iter().zip(&u).map(|(a, b)| a * b).sum();
                    w.iter()
                        .zip(&u)
                        .map(|(a, b)| a - p * b)
                        .collect::<Vec<f64>>()
                })
                .max_by(|a, b| norm(a).total_cmp(&norm(b)))
                .expect("at least one segment");
            Curve::circle(vec![0.0; u.len()], 1.0, u, v, Orientation::Positive)
        }
    }
}

/// `‖λ Φ(ζ_0) − ∮_γ Φ(ζ)(ζ − ζ_0)⁻¹ dζ‖`, with `λ` computed on an origin-centered circle in
/// the plane of `γ`, oriented like `γ`.
pub fn cauchy_formula_check<F: AlgebraField + ?Sized>(
    phi: &F,
    center: &[f64],
    curve: &Curve,
    frame: &Frame,
    alg: &Algebra,
    opts: &QuadratureOptions,
    criterion: Option<Criterion>,
) -> Result<VerificationReport> {
    let certificate = winding_certificate(curve, frame, alg, center)?;
    let sign = certificate
        .uniform_sign()
        .ok_or_else(|| Error::NotEmbracing {
            windings: certificate.windings.clone(),
        })?;

    let mut circle = matched_circle(curve)?;
    let origin = vec![0.0; frame.k()];
    let circle_sign = winding_certificate(&circle, frame, alg, &origin)?
        .uniform_sign()
        .ok_or_else(|| {
            Error::Precondition(
                "no origin-centered circle in the plane of the curve embraces once".into(),
            )
        })?;
    if circle_sign != sign {
        circle = circle.reversed();
    }
    let lambda = compute_lambda(frame, alg, &circle, opts)?;

    let zeta0 = frame.embed(center)?;
    let phi0 = phi.value_at(alg, frame, center)?;
    let li = integrate_against_dzeta(curve, frame, alg, opts, |x, zeta| {
        let inv = inverse_of(alg, &(zeta - &zeta0))?.value;
        Ok(alg.mul(&phi.value_at(alg, frame, x)?, &inv))
    })?;
    let reference = alg.mul(&lambda.value, &phi0);
    let residual = li.value.distance(&reference);
    let criterion = criterion.unwrap_or_else(|| {
        Criterion::at_most(tolerances::CAUCHY_THEOREM_REL * (li.length * li.max_norm).max(1.0))
    });
    let mut diagnostics = li.diagnostics;
    diagnostics.merge(&lambda.diagnostics);
    let mut report = VerificationReport::new(
        "cauchy_formula",
        li.value,
        reference,
        residual,
        criterion,
        diagnostics,
    )
    .with_note(format!("lambda residual {:.3e}", lambda.residual));
    report.windings = Some(certificate.windings);
    Ok(report)
}
