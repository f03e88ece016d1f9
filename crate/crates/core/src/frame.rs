//! The frame `e_1 = 1, e_2, …, e_k` and the real subspace `E_k` it spans.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg;

/// `e_j = Σ_r a_{jr} I_r`, with row 1 fixed to the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    n: usize,
    m: usize,
    rows: Vec<Vec<Complex64>>,
}

impl Frame {
    /// Builds a frame from all `k` rows; row 1 must be the decomposition of the unit.
    pub fn new(alg: &Algebra, rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = alg.n();
        let m = alg.m();
        let k = rows.len();
        if k < 2 || k > 2 * n {
            return Err(Error::Frame(format!("k = {k} must lie in [2, {}]", 2 * n)));
        }
        for (j, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Frame(format!(
                    "row {} has {} coefficients, expected {n}",
                    j + 1,
                    row.len()
                )));
            }
            if row.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
                return Err(Error::Frame(format!(
                    "row {} has non-finite entries",
                    j + 1
                )));
            }
        }
        let unit = alg.unit();
        if rows[0].as_slice() != unit.coords() {
            return Err(Error::Frame("row 1 must be the unit Σ_{u<=m} I_u".into()));
        }

        // Real 2n × k matrix of the frame vectors.
        let mut real = DMatrix::<f64>::zeros(2 * n, k);
        for (j, row) in rows.iter().enumerate() {
            for (r, c) in row.iter().enumerate() {
                real[(2 * r, j)] = c.re;
                real[(2 * r + 1, j)] = c.im;
            }
        }
        let rank = linalg::real_rank(&real, 1e-10);
        if rank != k {
            return Err(Error::Frame(format!(
                "frame vectors are not linearly independent over R (rank {rank} < k = {k})"
            )));
        }

        for u in 0..m {
            if !rows[1..].iter().any(|row| row[u].im.abs() > 1e-14) {
                return Err(Error::Frame(format!(
                    "f_{}(E_k) is not C: every a_j{} with j >= 2 is real",
                    u + 1,
                    u + 1
                )));
            }
        }

        Ok(Self { n, m, rows })
    }

    /// Builds a frame from `e_2..e_k`; `e_1` is set to the unit.
    pub fn from_directions(alg: &Algebra, directions: Vec<Vec<Complex64>>) -> Result<Self> {
        let mut rows = Vec::with_capacity(directions.len() + 1);
        rows.push(alg.unit().into_coords());
        rows.extend(directions);
        Self::new(alg, rows)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// `a_{jr}` (both 1-based).
    #[inline]
    pub fn a(&self, j: usize, r: usize) -> Complex64 {
        self.rows[j - 1][r - 1]
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    /// `e_j` as an element (1-based).
    pub fn vector(&self, j: usize) -> Element {
        Element::from_coords(self.rows[j - 1].clone())
    }

    pub(crate) fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: x.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_algebra(&self, alg: &Algebra) -> Result<()> {
        if alg.n() != self.n || alg.m() != self.m {
            return Err(Error::Frame(format!(
                "frame built for (n, m) = ({}, {}) used with ({}, {})",
                self.n,
                self.m,
                alg.n(),
                alg.m()
            )));
        }
        Ok(())
    }

    /// `ζ = Σ_j x_j e_j`; panics on a length mismatch (see [`Frame::embed`]).
    pub fn embed_unchecked(&self, x: &[f64]) -> Element {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for (xj, row) in x.iter().zip(&self.rows) {
            if *xj != 0.0 {
                for (o, a) in out.iter_mut().zip(row) {
                    *o += a * xj;
                }
            }
        }
        Element::from_coords(out)
    }

    /// `ζ = Σ_j x_j e_j`.
    pub fn embed(&self, x: &[f64]) -> Result<Element> {
        self.check_point(x)?;
        Ok(self.embed_unchecked(x))
    }

    /// Real coordinates of an element of `E_k`; [`Error::NotInSpan`] otherwise.
    pub fn coordinates_of(&self, h: &Element) -> Result<Vec<f64>> {
        h.check_dim(self.n)?;
        let n = self.n;
        let k = self.k();
        let mut a = DMatrix::<f64>::zeros(2 * n, k);
        for (j, row) in self.rows.iter().enumerate() {
            for (r, c) in row.iter().enumerate() {
                a[(2 * r, j)] = c.re;
                a[(2 * r + 1, j)] = c.im;
            }
        }
        let b = DVector::from_iterator(2 * n, h.coords().iter().flat_map(|c| [c.re, c.im]));
        let (x, residual) = linalg::least_squares(&a, &b);
        if residual > 1e-10 * h.norm().max(1.0) {
            return Err(Error::NotInSpan { residual });
        }
        Ok(x.iter().copied().collect())
    }
}
