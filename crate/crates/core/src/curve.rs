//! Curves in ℝᵏ, the coordinate space of `E_k`.

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::quadrature::{self, GaussRule, Node, Quadrature, QuadratureOptions};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// `x(θ) = center + radius·(cos θ·u ± sin θ·v)` with `u, v` orthonormal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Vec<f64>,
    pub radius: f64,
    pub plane: [Vec<f64>; 2],
    #[serde(default)]
    pub orientation: Orientation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Curve {
    Circle(Circle),
    Polyline {
        vertices: Vec<Vec<f64>>,
        closed: bool,
    },
    Triangle {
        vertices: [Vec<f64>; 3],
    },
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Curve {
    /// A circle in the plane spanned by `u, v`; the pair is orthonormalized.
    pub fn circle(
        center: Vec<f64>,
        radius: f64,
        u: Vec<f64>,
        v: Vec<f64>,
        orientation: Orientation,
    ) -> Result<Self> {
        let k = center.len();
        if u.len() != k || v.len() != k {
            return Err(Error::Curve(
                "plane vectors must match the center dimension".into(),
            ));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Curve(format!(
                "radius must be positive, got {radius}"
            )));
        }
        let nu = norm(&u);
        if nu == 0.0 {
            return Err(Error::Curve("degenerate plane".into()));
        }
        let u: Vec<f64> = u.iter().map(|x| x / nu).collect();
        let proj = dot(&u, &v);
        let w: Vec<f64> = v.iter().zip(&u).map(|(a, b)| a - proj * b).collect();
        let nw = norm(&w);
        if nw <= 1e-12 * norm(&v).max(1.0) {
            return Err(Error::Curve("plane vectors are parallel".into()));
        }
        let v = w.iter().map(|x| x / nw).collect();
        Ok(Curve::Circle(Circle {
            center,
            radius,
            plane: [u, v],
            orientation,
        }))
    }

    /// Circle in the plane of coordinate axes `i, j` (1-based), positively oriented from
    /// `x_i` towards `x_j`.
    pub fn coordinate_circle(center: Vec<f64>, radius: f64, i: usize, j: usize) -> Result<Self> {
        let k = center.len();
        if i == 0 || j == 0 || i > k || j > k || i == j {
            return Err(Error::Curve(format!(
                "invalid coordinate plane ({i}, {j}) in R^{k}"
            )));
        }
        let mut u = vec![0.0; k];
        let mut v = vec![0.0; k];
        u[i - 1] = 1.0;
        v[j - 1] = 1.0;
        Self::circle(center, radius, u, v, Orientation::Positive)
    }

    pub fn polyline(vertices: Vec<Vec<f64>>, closed: bool) -> Result<Self> {
        let c = Curve::Polyline { vertices, closed };
        c.validate()?;
        Ok(c)
    }

    pub fn triangle(a: Vec<f64>, b: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        let t = Curve::Triangle {
            vertices: [a, b, c],
        };
        t.validate()?;
        Ok(t)
    }

    /// Axis-aligned square in the coordinate plane `(i, j)` centered at `center`, traversed
    /// counterclockwise from `x_i` towards `x_j`.
    pub fn coordinate_square(center: &[f64], half_side: f64, i: usize, j: usize) -> Result<Self> {
        let corner = |a: f64, b: f64| {
            let mut p = center.to_vec();
            p[i - 1] += a * half_side;
            p[j - 1] += b * half_side;
            p
        };
        Self::polyline(
            vec![
                corner(-1.0, -1.0),
                corner(1.0, -1.0),
                corner(1.0, 1.0),
                corner(-1.0, 1.0),
            ],
            true,
        )
    }

    /// Checks the structural invariants (also run after deserialization).
    pub fn validate(&self) -> Result<()> {
        match self {
            Curve::Circle(c) => {
                let k = c.center.len();
                if !(c.radius > 0.0) || !c.radius.is_finite() {
                    return Err(Error::Curve(format!(
                        "radius must be positive, got {}",
                        c.radius
                    )));
                }
                let [u, v] = &c.plane;
                if u.len() != k || v.len() != k {
                    return Err(Error::Curve(
                        "plane vectors must match the center dimension".into(),
                    ));
                }
                if (norm(u) - 1.0).abs() > 1e-9
                    || (norm(v) - 1.0).abs() > 1e-9
                    || dot(u, v).abs() > 1e-9
                {
                    return Err(Error::Curve("plane vectors must be orthonormal".into()));
                }
                Ok(())
            }
            Curve::Polyline { vertices, .. } => {
                if vertices.len() < 2 {
                    return Err(Error::Curve("a polyline needs at least 2 vertices".into()));
                }
                let k = vertices[0].len();
                if vertices.iter().any(|v| v.len() != k) {
                    return Err(Error::Curve("vertices have different dimensions".into()));
                }
                Ok(())
            }
            Curve::Triangle { vertices } => {
                let k = vertices[0].len();
                if vertices.iter().any(|v| v.len() != k) {
                    return Err(Error::Curve("vertices have different dimensions".into()));
                }
                let ab = sub(&vertices[1], &vertices[0]);
                let ac = sub(&vertices[2], &vertices[0]);
                let area2 = (dot(&ab, &ab) * dot(&ac, &ac) - dot(&ab, &ac).powi(2))
                    .max(0.0)
                    .sqrt();
                let scale = dot(&ab, &ab) + dot(&ac, &ac);
                if area2 <= 1e-12 * scale || scale == 0.0 {
                    return Err(Error::Curve(
                        "triangle vertices are affinely dependent".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Dimension `k` of the ambient coordinate space.
    pub fn dim(&self) -> usize {
        match self {
            Curve::Circle(c) => c.center.len(),
            Curve::Polyline { vertices, .. } => vertices[0].len(),
            Curve::Triangle { vertices } => vertices[0].len(),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Curve::Polyline { closed, .. } => *closed,
            _ => true,
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Curve::Circle(c) => std::f64::consts::TAU * c.radius,
            _ => self.segments().iter().map(|(a, b)| norm(&sub(b, a))).sum(),
        }
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        match self {
            Curve::Circle(c) => Curve::Circle(Circle {
                orientation: c.orientation.reversed(),
                ..c.clone()
            }),
            Curve::Polyline { vertices, closed } => {
                let mut v = vertices.clone();
                v.reverse();
                Curve::Polyline {
                    vertices: v,
                    closed: *closed,
                }
            }
            Curve::Triangle { vertices } => {
                let [a, b, c] = vertices.clone();
                Curve::Triangle {
                    vertices: [c, b, a],
                }
            }
        }
    }

    /// Straight pieces of a polyline or triangle, closing edge included.
    pub fn segments(&self) -> Vec<(Vec<f64>, Vec<f64>)> {
        let (vertices, closed): (&[Vec<f64>], bool) = match self {
            Curve::Circle(_) => return Vec::new(),
            Curve::Polyline { vertices, closed } => (vertices, *closed),
            Curve::Triangle { vertices } => (vertices, true),
        };
        let mut out: Vec<(Vec<f64>, Vec<f64>)> = vertices
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        if closed && vertices.len() > 2 {
            out.push((vertices[vertices.len() - 1].clone(), vertices[0].clone()));
        }
        out
    }

    /// Point and tangent of a circle at `(cos θ, sin θ)`.
    pub(crate) fn circle_point(c: &Circle, cos: f64, sin: f64) -> (Vec<f64>, Vec<f64>) {
        let s = c.orientation.sign() * sin;
        let [u, v] = &c.plane;
        let x = c
            .center
            .iter()
            .zip(u.iter().zip(v))
            .map(|(o, (a, b))| o + c.radius * (cos * a + s * b))
            .collect();
        let dx = u
            .iter()
            .zip(v)
            .map(|(a, b)| c.radius * (-sin * a + c.orientation.sign() * cos * b))
            .collect();
        (x, dx)
    }

    /// `∫ g(x, dx)` along the curve. `g` receives a point and the tangent with respect to the
    /// local quadrature parameter.
    pub fn integrate<G>(&self, dim: usize, opts: &QuadratureOptions, g: G) -> Result<Quadrature>
    where
        G: Fn(&[f64], &[f64]) -> Result<Node>,
    {
        self.validate()?;
        match self {
            Curve::Circle(c) => quadrature::trapezoid_periodic(dim, opts, |cos, sin| {
                let (x, dx) = Self::circle_point(c, cos, sin);
                g(&x, &dx)
            }),
            _ => {
                let rule = GaussRule::new(opts.gauss_order.max(1));
                let segments = self.segments();
                let mut value = Element::zeros(dim);
                let mut mass = 0.0;
                let mut max_aux: f64 = 0.0;
                let mut diag = quadrature::QuadDiagnostics {
                    converged: true,
                    ..Default::default()
                };
                let count = segments.len() as f64;
                for (i, (a, b)) in segments.iter().enumerate() {
                    let q = quadrature::adaptive_segment(a, b, dim, &rule, opts, &g)
                        .map_err(|e| e.at(i as f64 / count))?;
                    value += &q.value;
                    mass += q.mass;
                    max_aux = max_aux.max(q.max_aux);
                    diag.merge(&q.diagnostics);
                }
                Ok(Quadrature {
                    value,
                    mass,
                    max_aux,
                    diagnostics: diag,
                })
            }
        }
    }

    /// Points along the curve: `per_piece` samples on each segment, or `per_piece` samples on
    /// a circle. Closed curves do not repeat the first point.
    pub fn sample(&self, per_piece: usize) -> Vec<Vec<f64>> {
        match self {
            Curve::Circle(c) => (0..per_piece)
                .map(|j| {
                    let (cs, sn) = quadrature::root_of_unity(j, per_piece);
                    Self::circle_point(c, cs, sn).0
                })
                .collect(),
            _ => {
                let mut out = Vec::new();
                let segs = self.segments();
                for (a, b) in &segs {
                    for i in 0..per_piece {
                        let s = i as f64 / per_piece as f64;
                        out.push(a.iter().zip(b).map(|(p, q)| p + s * (q - p)).collect());
                    }
                }
                if !self.is_closed() {
                    if let Some((_, b)) = segs.last() {
                        out.push(b.clone());
                    }
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants() {
        assert!(Curve::circle(
            vec![0.0; 3],
            0.0,
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            Orientation::Positive
        )
        .is_err());
        assert!(Curve::circle(
            vec![0.0; 3],
            1.0,
            vec![1.0, 0.0, 0.0],
            vec![2.0, 0.0, 0.0],
            Orientation::Positive
        )
        .is_err());
        assert!(Curve::polyline(vec![vec![0.0, 0.0]], false).is_err());
        assert!(Curve::triangle(vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]).is_err());
        assert!(Curve::triangle(vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn circle_is_orthonormalized() {
        let c = Curve::circle(
            vec![0.0; 3],
            2.0,
            vec![2.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0],
            Orientation::Positive,
        )
        .unwrap();
        c.validate().unwrap();
        assert!((c.length() - 4.0 * std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn square_length_and_segments() {
        let sq = Curve::coordinate_square(&[0.0, 0.0, 0.0], 0.5, 1, 2).unwrap();
        assert_eq!(sq.segments().len(), 4);
        assert!((sq.length() - 4.0).abs() < 1e-15);
        assert_eq!(sq.sample(3).len(), 12);
    }
}
