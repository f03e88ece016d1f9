//! The algebra 𝔸ₙᵐ in its Cartan basis.
//!
//! The basis `I_1..I_n` splits into idempotents `I_1..I_m` and nilpotents `I_{m+1}..I_n`.
//! Idempotent products and the idempotent–nilpotent products are fixed by the basis
//! (`I_u I_v = δ_{uv} I_u`, `I_u I_s = I_s` iff `u = u_s`), so only the nilpotent block is
//! stored as data.
//!
//! Structure constants are addressed as `c[left][right][target]`, the coefficient of
//! `I_target` in `I_left · I_right`. In the three-index notation `Υ_{r,k}^s` used for the
//! nilpotent rule this is `Υ_{left,target}^{right}`: the middle subscript is the target.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default tolerance for validation residuals.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-12;

/// One entry of the nilpotent multiplication table: `I_left · I_right ∋ value · I_target`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureConstant {
    pub left: usize,
    pub right: usize,
    pub target: usize,
    pub value: Complex64,
}

impl StructureConstant {
    pub fn new(left: usize, right: usize, target: usize, value: Complex64) -> Self {
        Self {
            left,
            right,
            target,
            value,
        }
    }

    pub fn real(left: usize, right: usize, target: usize, value: f64) -> Self {
        Self::new(left, right, target, Complex64::new(value, 0.0))
    }
}

/// A commutative associative algebra with `m` idempotents in dimension `n`.
#[derive(Clone, Debug)]
pub struct Algebra {
    n: usize,
    m: usize,
    /// `unit_of[s - m - 1] = u_s` (1-based u).
    unit_of: Vec<usize>,
    /// Symmetrized dense table, 0-based `[left][right][target]`.
    table: Vec<Complex64>,
    /// Nonzero entries of `table` over ordered pairs, 0-based.
    terms: Vec<(usize, usize, usize, Complex64)>,
    /// Entries that touch the idempotent block; kept only to be reported by validation.
    stray: Vec<StructureConstant>,
}

impl Algebra {
    /// Builds an algebra from the nilpotent table and the rule-3 selectors.
    ///
    /// `unit_map` lists pairs `(s, u_s)`; for `m = 1` missing selectors default to 1.
    /// Entries are accepted in either order `(left, right)` and symmetrized; a pair given
    /// twice with different values is rejected.
    pub fn new(
        n: usize,
        m: usize,
        unit_map: &[(usize, usize)],
        products: &[StructureConstant],
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structure("n must be positive".into()));
        }
        if m == 0 || m > n {
            return Err(Error::Structure(format!("m = {m} must lie in [1, {n}]")));
        }

        let mut unit_of = vec![0usize; n - m];
        for &(s, u) in unit_map {
            if s <= m || s > n {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    lo: m + 1,
                    hi: n,
                });
            }
            if u == 0 || u > m {
                return Err(Error::IndexOutOfRange {
                    index: u,
                    lo: 1,
                    hi: m,
                });
            }
            let slot = &mut unit_of[s - m - 1];
            if *slot != 0 && *slot != u {
                return Err(Error::Structure(format!(
                    "conflicting selectors for s = {s}: u = {} and u = {u}",
                    *slot
                )));
            }
            *slot = u;
        }
        for (i, slot) in unit_of.iter_mut().enumerate() {
            if *slot == 0 {
                if m == 1 {
                    *slot = 1;
                } else {
                    return Err(Error::Structure(format!(
                        "missing selector u_s for s = {}",
                        i + m + 1
                    )));
                }
            }
        }

        let mut entries: BTreeMap<(usize, usize, usize), Complex64> = BTreeMap::new();
        let mut stray = Vec::new();
        for p in products {
            for idx in [p.left, p.right, p.target] {
                if idx == 0 || idx > n {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        lo: 1,
                        hi: n,
                    });
                }
            }
            if !(p.value.re.is_finite() && p.value.im.is_finite()) {
                return Err(Error::Structure(format!(
                    "non-finite structure constant for I_{} I_{} -> I_{}",
                    p.left, p.right, p.target
                )));
            }
            if p.left <= m || p.right <= m {
                stray.push(*p);
                continue;
            }
            let key = (p.left.min(p.right), p.left.max(p.right), p.target);
            match entries.get(&key) {
                Some(v) if *v != p.value => {
                    return Err(Error::Structure(format!(
                        "conflicting entries for I_{} I_{} -> I_{}: {} vs {}",
                        key.0, key.1, key.2, v, p.value
                    )));
                }
                _ => {
                    entries.insert(key, p.value);
                }
            }
        }

        let mut table = vec![ZERO; n * n * n];
        let mut terms = Vec::new();
        for (&(a, b, t), &v) in &entries {
            let (a, b, t) = (a - 1, b - 1, t - 1);
            table[(a * n + b) * n + t] = v;
            table[(b * n + a) * n + t] = v;
            if v != ZERO {
                terms.push((a, b, t, v));
                if a != b {
                    terms.push((b, a, t, v));
                }
            }
        }

        Ok(Self {
            n,
            m,
            unit_of,
            table,
            terms,
            stray,
        })
    }

    /// The semisimple algebra ℂᵐ (`n = m`, no nilpotent part).
    pub fn semisimple(m: usize) -> Result<Self> {
        Self::new(m, m, &[], &[])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// `dim_ℂ N = n − m`.
    #[inline]
    pub fn nilpotent_dim(&self) -> usize {
        self.n - self.m
    }

    /// `u_s` for a nilpotent index `s ∈ [m+1, n]`.
    pub fn unit_of(&self, s: usize) -> usize {
        self.unit_of[s - self.m - 1]
    }

    /// `c[left][right][target]` (1-based); zero outside the nilpotent block.
    pub fn constant(&self, left: usize, right: usize, target: usize) -> Complex64 {
        if left <= self.m || right <= self.m || left > self.n || right > self.n {
            return ZERO;
        }
        if target == 0 || target > self.n {
            return ZERO;
        }
        let n = self.n;
        self.table[((left - 1) * n + right - 1) * n + target - 1]
    }

    /// `Υ_{q,target}^{p}` in the three-index notation, i.e. the coefficient of `I_target`
    /// in `I_q I_p`.
    #[inline]
    pub fn upsilon(&self, q: usize, target: usize, p: usize) -> Complex64 {
        self.constant(q, p, target)
    }

    /// Stored nilpotent entries over unordered pairs (`left ≤ right`), 1-based.
    pub fn structure_constants(&self) -> Vec<StructureConstant> {
        self.terms
            .iter()
            .filter(|(a, b, _, _)| a <= b)
            .map(|&(a, b, t, v)| StructureConstant::new(a + 1, b + 1, t + 1, v))
            .chain(self.stray.iter().copied())
            .collect()
    }

    pub fn unit_map(&self) -> Vec<(usize, usize)> {
        self.unit_of
            .iter()
            .enumerate()
            .map(|(i, &u)| (i + self.m + 1, u))
            .collect()
    }

    /// True when the nilpotent table has no nonzero entry.
    pub fn has_zero_nilpotent_product(&self) -> bool {
        self.terms.is_empty()
    }

    /// The unit `1 = Σ_{u ≤ m} I_u`.
    pub fn unit(&self) -> Element {
        let mut e = Element::zeros(self.n);
        for c in &mut e.coords_mut()[..self.m] {
            *c = ONE;
        }
        e
    }

    pub fn zero(&self) -> Element {
        Element::zeros(self.n)
    }

    pub fn basis(&self, r: usize) -> Element {
        Element::basis(self.n, r)
    }

    /// Product without dimension checks; both operands must have dimension `n`.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        debug_assert_eq!(a.dim(), self.n);
        debug_assert_eq!(b.dim(), self.n);
        let (a, b) = (a.coords(), b.coords());
        let m = self.m;
        let mut out = vec![ZERO; self.n];
        for u in 0..m {
            out[u] = a[u] * b[u];
        }
        for (i, &u) in self.unit_of.iter().enumerate() {
            let s = m + i;
            let u = u - 1;
            out[s] += a[u] * b[s] + a[s] * b[u];
        }
        for &(l, r, t, v) in &self.terms {
            out[t] += a[l] * b[r] * v;
        }
        Element::from_coords(out)
    }

    /// Commutative product `a · b`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        a.check_dim(self.n)?;
        b.check_dim(self.n)?;
        Ok(self.mul(a, b))
    }

    /// `f_u(a)`, the u-th multiplicative functional (1-based `u ≤ m`).
    pub fn functional(&self, u: usize, a: &Element) -> Result<Complex64> {
        a.check_dim(self.n)?;
        if u == 0 || u > self.m {
            return Err(Error::IndexOutOfRange {
                index: u,
                lo: 1,
                hi: self.m,
            });
        }
        Ok(a.coords()[u - 1])
    }

    /// Matrix `L_a` of left multiplication by `a`: column `r` holds `a · I_r`.
    pub fn left_mul_matrix(&self, a: &Element) -> Result<DMatrix<Complex64>> {
        a.check_dim(self.n)?;
        let n = self.n;
        let mut l = DMatrix::<Complex64>::zeros(n, n);
        for r in 0..n {
            let col = self.mul(a, &Element::basis(n, r + 1));
            for (i, c) in col.coords().iter().enumerate() {
                l[(i, r)] = *c;
            }
        }
        Ok(l)
    }

    /// Inverse by dense solve of `L_a x = 1`.
    ///
    /// Reports [`Error::Singular`] when the smallest LU pivot falls below
    /// `1e-12 · max(1, max |L_ij|)`.
    pub fn oracle_inverse(&self, a: &Element) -> Result<Element> {
        let l = self.left_mul_matrix(a)?;
        let scale = l.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let rhs = self.unit();
        match linalg::solve_complex(l, rhs.coords(), 1e-12 * scale) {
            Some(x) => Ok(Element::from_coords(x)),
            None => {
                let xi: Vec<Complex64> = a.coords()[..self.m].to_vec();
                let thresh = 1e-12 * a.norm().max(1.0);
                let offending = xi
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| x.norm() <= thresh)
                    .map(|(u, _)| u + 1)
                    .collect();
                Err(Error::Singular { xi, offending })
            }
        }
    }

    /// Runs the structural checks with the default tolerance.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(DEFAULT_VALIDATION_TOL)
    }

    pub fn validate_with(&self, tol: f64) -> ValidationReport {
        let n = self.n;
        let m = self.m;
        let rule1_ok = !self.stray.iter().any(|p| p.left <= m && p.right <= m);
        let rule3_ok = !self.stray.iter().any(|p| (p.left <= m) != (p.right <= m));
        let rule2_support_ok = self.terms.iter().all(|&(l, r, t, _)| t > l.max(r));

        let basis: Vec<Element> = (1..=n).map(|r| Element::basis(n, r)).collect();
        let nil = m..n;

        let mut a1: f64 = 0.0;
        for r in nil.clone() {
            for s in nil.clone() {
                let rs = self.mul(&basis[r], &basis[s]);
                for p in nil.clone() {
                    let left = self.mul(&rs, &basis[p]);
                    let right = self.mul(&basis[r], &self.mul(&basis[s], &basis[p]));
                    a1 = a1.max(left.distance(&right));
                }
            }
        }

        let mut a2: f64 = 0.0;
        for u in 0..m {
            for s in nil.clone() {
                let us = self.mul(&basis[u], &basis[s]);
                for p in nil.clone() {
                    let left = self.mul(&us, &basis[p]);
                    let right = self.mul(&basis[u], &self.mul(&basis[s], &basis[p]));
                    a2 = a2.max(left.distance(&right));
                }
            }
        }

        let one = self.unit();
        let unit_ok = basis
            .iter()
            .all(|b| self.mul(&one, b).distance(b) <= tol && self.mul(b, &one).distance(b) <= tol);

        let (nilpotency_index, nilpotent) = self.nilpotency_index(tol);

        let mut warnings = Vec::new();
        if !rule2_support_ok {
            warnings.push("nilpotent table has entries with target <= max(left, right)".into());
        }
        if n - m == 4 {
            use crate::predicates::{fourteen_products, IndexReading};
            let adopted = fourteen_products(self, IndexReading::MiddleIsTarget);
            let other = fourteen_products(self, IndexReading::UpperIsTarget);
            let vanish = |v: &[Complex64]| v.iter().all(|c| c.norm() <= 1e-14);
            if vanish(&adopted) != vanish(&other) {
                warnings.push(
                    "the two readings of the three-index structure constants disagree on the \
                     dim N = 4 product conditions; the middle-subscript-as-target reading is used"
                        .into(),
                );
            }
        }

        ValidationReport {
            rule1_ok,
            rule2_support_ok,
            rule3_ok,
            assoc_a1_max_residual: a1,
            assoc_a2_max_residual: a2,
            nilpotency_index,
            nilpotent,
            unit_ok,
            tolerance: tol,
            warnings,
        }
    }

    /// Least `q` with `N^q = {0}`, capped at `n − m + 1`; the flag is false if the cap was hit
    /// with `N^q` still nonzero.
    fn nilpotency_index(&self, tol: f64) -> (usize, bool) {
        let n = self.n;
        let m = self.m;
        let cap = n - m + 1;
        let generators: Vec<Vec<Complex64>> = (m + 1..=n)
            .map(|s| Element::basis(n, s).into_coords())
            .collect();
        let mut power = linalg::span_basis(generators.clone(), tol);
        let mut q = 1;
        while !power.is_empty() {
            if q == cap {
                return (cap, false);
            }
            let mut next = Vec::new();
            for v in &power {
                let v = Element::from_coords(v.clone());
                for g in &generators {
                    next.push(self.mul(&v, &Element::from_coords(g.clone())).into_coords());
                }
            }
            power = linalg::span_basis(next, tol);
            q += 1;
        }
        (q, true)
    }
}

/// Outcome of [`Algebra::validate`]. Violated axioms make the report fail; they are not errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub rule1_ok: bool,
    pub rule2_support_ok: bool,
    pub rule3_ok: bool,
    pub assoc_a1_max_residual: f64,
    pub assoc_a2_max_residual: f64,
    pub nilpotency_index: usize,
    pub nilpotent: bool,
    pub unit_ok: bool,
    pub tolerance: f64,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.rule1_ok
            && self.rule2_support_ok
            && self.rule3_ok
            && self.nilpotent
            && self.unit_ok
            && self.assoc_a1_max_residual <= self.tolerance
            && self.assoc_a2_max_residual <= self.tolerance
    }
}
