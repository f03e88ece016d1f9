//! Quadrature rules for curve integrals of algebra-valued integrands.
//!
//! Closed circles use the composite trapezoid rule with node doubling, which converges
//! geometrically for analytic periodic integrands. Straight segments use a fixed-order
//! Gauss–Legendre rule with adaptive bisection. Both rules sum nodes in mirrored pairs so
//! that reversing a curve negates the result node for node.

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureOptions {
    /// Initial node count on closed circles (rounded up to a multiple of 8).
    pub circle_start: usize,
    /// Maximum node count on closed circles.
    pub circle_cap: usize,
    /// Gauss–Legendre order on segments.
    pub gauss_order: usize,
    /// Maximum bisection depth on segments.
    pub max_depth: usize,
    /// Refinement stops once successive estimates differ by at most
    /// `rel_tol · ∫‖integrand‖` (or `abs_tol`, whichever is larger).
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            circle_start: 64,
            circle_cap: 1 << 16,
            gauss_order: 16,
            max_depth: 30,
            rel_tol: 1e-13,
            abs_tol: 0.0,
        }
    }
}

/// One refinement level: node count and change from the previous level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefinementStep {
    pub nodes: usize,
    pub change: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadDiagnostics {
    pub nodes: usize,
    pub levels: usize,
    pub estimated_error: f64,
    pub converged: bool,
    pub series: Vec<RefinementStep>,
}

impl QuadDiagnostics {
    pub(crate) fn merge(&mut self, other: &QuadDiagnostics) {
        self.nodes += other.nodes;
        self.levels = self.levels.max(other.levels);
        self.estimated_error += other.estimated_error;
        self.converged &= other.converged;
    }
}

/// Integrand sample: the value that gets summed plus an auxiliary magnitude whose maximum
/// over the nodes is reported (e.g. `‖Ψ(ζ)‖` without the `dζ` factor).
#[derive(Clone, Debug)]
pub struct Node {
    pub value: Element,
    pub aux: f64,
}

#[derive(Clone, Debug)]
pub struct Quadrature {
    pub value: Element,
    /// `∫ ‖integrand‖` at the final level.
    pub mass: f64,
    pub max_aux: f64,
    pub diagnostics: QuadDiagnostics,
}

/// `(cos 2πj/n, sin 2πj/n)` with exact reflection symmetries when `n % 8 == 0`:
/// `root(n − j) = (c, −s)` bit for bit, and the quarter points are exact.
pub fn root_of_unity(j: usize, n: usize) -> (f64, f64) {
    let j = j % n;
    if !n.is_multiple_of(8) {
        let a = std::f64::consts::TAU * j as f64 / n as f64;
        return (a.cos(), a.sin());
    }
    if 2 * j > n {
        let (c, s) = root_of_unity(n - j, n);
        return (c, -s);
    }
    if 4 * j > n {
        let (c, s) = root_of_unity(n / 2 - j, n);
        return (-c, s);
    }
    if 8 * j > n {
        let (c, s) = root_of_unity(n / 4 - j, n);
        return (s, c);
    }
    let a = std::f64::consts::TAU * j as f64 / n as f64;
    (a.cos(), a.sin())
}

#[derive(Default)]
struct Running {
    sum: Option<Element>,
    mass: f64,
    max_aux: f64,
}

impl Running {
    /// Adds a node, or a mirrored pair of nodes summed first.
    fn add(&mut self, a: Node, b: Option<Node>) {
        self.mass += a.value.norm();
        self.max_aux = self.max_aux.max(a.aux);
        let mut v = a.value;
        if let Some(b) = b {
            self.mass += b.value.norm();
            self.max_aux = self.max_aux.max(b.aux);
            v += &b.value;
        }
        match &mut self.sum {
            Some(s) => *s += &v,
            None => self.sum = Some(v),
        }
    }
}

/// `∫_0^{2π} g(θ) dθ` by the trapezoid rule with node doubling.
///
/// `g` receives `(cos θ, sin θ)` and returns the integrand sample; errors carry
/// `τ = θ / 2π`.
pub fn trapezoid_periodic<G>(dim: usize, opts: &QuadratureOptions, g: G) -> Result<Quadrature>
where
    G: Fn(f64, f64) -> Result<Node>,
{
    let start = opts.circle_start.max(8).next_multiple_of(8);
    let cap = opts.circle_cap.max(start);
    let eval = |j: usize, n: usize| -> Result<Node> {
        let (c, s) = root_of_unity(j, n);
        g(c, s).map_err(|e| e.at(j as f64 / n as f64))
    };

    let mut n = start;
    let mut acc = Running::default();
    acc.add(eval(0, n)?, None);
    acc.add(eval(n / 2, n)?, None);
    for j in 1..n / 2 {
        acc.add(eval(j, n)?, Some(eval(n - j, n)?));
    }

    let step = |n: usize| std::f64::consts::TAU / n as f64;
    let total = |acc: &Running| acc.sum.clone().unwrap_or_else(|| Element::zeros(dim));
    let mut estimate = total(&acc).scale_real(step(n));
    let mut series = vec![RefinementStep {
        nodes: n,
        change: f64::NAN,
    }];
    let mut levels = 1;
    let mut change = f64::INFINITY;
    let mut converged = false;

    while n < cap {
        let n2 = 2 * n;
        for j in (1..n).step_by(2) {
            acc.add(eval(j, n2)?, Some(eval(n2 - j, n2)?));
        }
        n = n2;
        levels += 1;
        let next = total(&acc).scale_real(step(n));
        change = next.distance(&estimate);
        estimate = next;
        series.push(RefinementStep { nodes: n, change });
        let mass = acc.mass * step(n);
        if change <= opts.abs_tol.max(opts.rel_tol * mass) {
            converged = true;
            break;
        }
    }

    Ok(Quadrature {
        value: estimate,
        mass: acc.mass * step(n),
        max_aux: acc.max_aux,
        diagnostics: QuadDiagnostics {
            nodes: n,
            levels,
            estimated_error: change,
            converged,
            series,
        },
    })
}

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[−1, 1]`, nodes
/// descending from the right end and mirrored exactly.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1);
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    if n == 0 {
        (1.0, 0.0)
    } else {
        (p1, d)
    }
}

/// Fixed Gauss–Legendre rule used by [`adaptive_segment`].
#[derive(Clone, Debug)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        let (nodes, weights) = gauss_legendre(order);
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `∫_{-1}^{1} f(mid + t·half)·dt` with the tangent `half` passed to `f`.
    fn apply<G>(&self, a: &[f64], b: &[f64], dim: usize, g: &G) -> Result<(Element, f64, f64)>
    where
        G: Fn(&[f64], &[f64]) -> Result<Node>,
    {
        let mid: Vec<f64> = a.iter().zip(b).map(|(p, q)| 0.5 * (p + q)).collect();
        let half: Vec<f64> = a.iter().zip(b).map(|(p, q)| 0.5 * (q - p)).collect();
        let at = |t: f64| -> Vec<f64> { mid.iter().zip(&half).map(|(m, h)| m + t * h).collect() };
        let mut sum = Element::zeros(dim);
        let mut mass = 0.0;
        let mut max_aux: f64 = 0.0;
        let n = self.order();
        for i in 0..n / 2 {
            let t = self.nodes[i];
            let p = g(&at(t), &half)?;
            let q = g(&at(-t), &half)?;
            let w = self.weights[i];
            let pair = &p.value + &q.value;
            sum.add_scaled(w.into(), &pair);
            mass += w * (p.value.norm() + q.value.norm());
            max_aux = max_aux.max(p.aux).max(q.aux);
        }
        if n % 2 == 1 {
            let p = g(&mid, &half)?;
            let w = self.weights[n / 2];
            sum.add_scaled(w.into(), &p.value);
            mass += w * p.value.norm();
            max_aux = max_aux.max(p.aux);
        }
        Ok((sum, mass, max_aux))
    }
}

/// `∫_0^1 f(a + s(b − a))·(b − a) ds` (the tangent handed to `g` is `(b − a)/2` per unit of
/// the local rule parameter) with adaptive bisection.
pub fn adaptive_segment<G>(
    a: &[f64],
    b: &[f64],
    dim: usize,
    rule: &GaussRule,
    opts: &QuadratureOptions,
    g: &G,
) -> Result<Quadrature>
where
    G: Fn(&[f64], &[f64]) -> Result<Node>,
{
    let whole = rule.apply(a, b, dim, g)?;
    let mut diag = QuadDiagnostics {
        nodes: rule.order(),
        levels: 0,
        estimated_error: 0.0,
        converged: true,
        series: Vec::new(),
    };
    let (value, mass, max_aux) = bisect(a, b, dim, rule, opts, g, whole, 0, &mut diag)?;
    Ok(Quadrature {
        value,
        mass,
        max_aux,
        diagnostics: diag,
    })
}

#[allow(clippy::too_many_arguments)]
fn bisect<G>(
    a: &[f64],
    b: &[f64],
    dim: usize,
    rule: &GaussRule,
    opts: &QuadratureOptions,
    g: &G,
    whole: (Element, f64, f64),
    depth: usize,
    diag: &mut QuadDiagnostics,
) -> Result<(Element, f64, f64)>
where
    G: Fn(&[f64], &[f64]) -> Result<Node>,
{
    let mid: Vec<f64> = a.iter().zip(b).map(|(p, q)| 0.5 * (p + q)).collect();
    let left = rule.apply(a, &mid, dim, g)?;
    let right = rule.apply(&mid, b, dim, g)?;
    diag.nodes += 2 * rule.order();
    diag.levels = diag.levels.max(depth + 1);
    let halves = &left.0 + &right.0;
    let mass = left.1 + right.1;
    let change = halves.distance(&whole.0);
    if change <= opts.abs_tol.max(opts.rel_tol * mass) {
        diag.estimated_error += change;
        return Ok((halves, mass, left.2.max(right.2)));
    }
    if depth + 1 >= opts.max_depth {
        diag.estimated_error += change;
        diag.converged = false;
        return Ok((halves, mass, left.2.max(right.2)));
    }
    let l = bisect(a, &mid, dim, rule, opts, g, left, depth + 1, diag)?;
    let r = bisect(&mid, b, dim, rule, opts, g, right, depth + 1, diag)?;
    Ok((&l.0 + &r.0, l.1 + r.1, l.2.max(r.2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn roots_of_unity_are_symmetric() {
        for n in [8usize, 64, 1024] {
            for j in 1..n {
                let (c, s) = root_of_unity(j, n);
                let (c2, s2) = root_of_unity(n - j, n);
                assert_eq!(c, c2);
                assert_eq!(s, -s2);
                let a = std::f64::consts::TAU * j as f64 / n as f64;
                assert!((c - a.cos()).abs() < 1e-15 && (s - a.sin()).abs() < 1e-15);
            }
            assert_eq!(root_of_unity(n / 4, n), (0.0, 1.0));
            assert_eq!(root_of_unity(n / 2, n), (-1.0, 0.0));
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(16);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for p in 0..32 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p)).sum();
            let exact = if p % 2 == 1 {
                0.0
            } else {
                2.0 / (p as f64 + 1.0)
            };
            assert!((q - exact).abs() < 1e-14, "degree {p}: {q} vs {exact}");
        }
        let (x5, _) = gauss_legendre(5);
        assert_eq!(x5[2], 0.0);
        assert_eq!(x5[0], -x5[4]);
    }

    #[test]
    fn trapezoid_on_periodic_function() {
        // ∫_0^{2π} exp(cos θ) dθ = 2π I_0(1)
        let bessel_i0_1 = 1.266_065_877_752_008_4;
        let q = trapezoid_periodic(1, &QuadratureOptions::default(), |c, _| {
            Ok(Node {
                value: Element::from_coords(vec![Complex64::new(c.exp(), 0.0)]),
                aux: 0.0,
            })
        })
        .unwrap();
        assert!(q.diagnostics.converged);
        assert!((q.value.coords()[0].re - std::f64::consts::TAU * bessel_i0_1).abs() < 1e-13);
    }

    #[test]
    fn adaptive_segment_handles_peaked_integrand() {
        // ∫_0^1 1/(x^2 + 1e-4) dx = 100·atan(100)
        let rule = GaussRule::new(16);
        let opts = QuadratureOptions::default();
        let g = |x: &[f64], h: &[f64]| -> Result<Node> {
            Ok(Node {
                value: Element::from_coords(vec![Complex64::new(h[0] / (x[0] * x[0] + 1e-4), 0.0)]),
                aux: 0.0,
            })
        };
        let q = adaptive_segment(&[0.0], &[1.0], 1, &rule, &opts, &g).unwrap();
        let exact = 100.0 * 100f64.atan();
        assert!((q.value.coords()[0].re - exact).abs() < 1e-10 * exact);
        assert!(q.diagnostics.levels > 1);
    }
}
