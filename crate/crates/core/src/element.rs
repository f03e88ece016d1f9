use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the algebra, stored by its complex coordinates in the basis `I_1..I_n`.
///
/// Basis indices in the public API are 1-based so that `Element::basis(n, 3)` is `I_3`;
/// [`Element::coords`] is a plain 0-based slice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element {
    coords: Vec<Complex64>,
}

impl Element {
    pub fn zeros(n: usize) -> Self {
        Self {
            coords: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// The basis vector `I_r` (1-based).
    pub fn basis(n: usize, r: usize) -> Self {
        assert!(r >= 1 && r <= n, "basis index {r} out of range 1..={n}");
        let mut e = Self::zeros(n);
        e.coords[r - 1] = Complex64::new(1.0, 0.0);
        e
    }

    pub fn from_coords(coords: Vec<Complex64>) -> Self {
        Self { coords }
    }

    pub fn from_real(coords: &[f64]) -> Self {
        Self {
            coords: coords.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    #[inline]
    pub fn coords_mut(&mut self) -> &mut [Complex64] {
        &mut self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    /// Coordinate of `I_r` (1-based).
    pub fn coord(&self, r: usize) -> Complex64 {
        self.coords[r - 1]
    }

    /// Euclidean norm over the 2n real components.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coords
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, factor: Complex64, other: &Element) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += factor * b;
        }
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// Distance `‖self − other‖`.
    pub fn distance(&self, other: &Element) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        debug_assert_eq!(self.dim(), rhs.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        debug_assert_eq!(self.dim(), rhs.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        debug_assert_eq!(self.dim(), rhs.dim());
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        debug_assert_eq!(self.dim(), rhs.dim());
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(mut self) -> Element {
        for c in &mut self.coords {
            *c = -*c;
        }
        self
    }
}

impl Mul<Complex64> for &Element {
    type Output = Element;
    fn mul(self, rhs: Complex64) -> Element {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_one_based() {
        let e = Element::basis(5, 3);
        assert_eq!(e.coord(3), Complex64::new(1.0, 0.0));
        assert_eq!(e.coords()[2], Complex64::new(1.0, 0.0));
        assert_eq!(e.norm(), 1.0);
    }

    #[test]
    fn arithmetic() {
        let a = Element::from_coords(vec![Complex64::new(1.0, 2.0), Complex64::new(0.0, -1.0)]);
        let b = Element::from_coords(vec![Complex64::new(3.0, 0.0), Complex64::new(1.0, 1.0)]);
        let s = &a + &b;
        assert_eq!(s.coords()[0], Complex64::new(4.0, 2.0));
        let d = &s - &b;
        assert_eq!(d, a);
        assert_eq!((-&a).coords()[1], Complex64::new(0.0, 1.0));
        assert!((a.distance(&b) - (&a - &b).norm()).abs() < 1e-15);
    }
}
