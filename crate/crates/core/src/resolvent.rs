//! Explicit resolvent `(t e_1 − ζ)^{-1}` and inverse `ζ^{-1}` via the recurrences for
//! `T_s`, `B_{q,s}`, `Q_{r,s}` and `Q̃_{r,s}`.
//!
//! For `ζ = Σ_j x_j e_j` the idempotent coordinates are `ξ_u = f_u(ζ)` and the nilpotent
//! coordinates are `T_s = Σ_{j≥2} x_j a_{js}`. The recurrences only see `(ξ, T)`, so the same
//! routines serve arbitrary elements through [`resolvent_of`] and [`inverse_of`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::frame::Frame;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative threshold under which `ξ_u` counts as zero.
pub const SINGULAR_REL_TOL: f64 = 1e-13;
/// `|t − ξ_u| < POLE_REL_TOL · (1 + |t|)` is refused as a pole.
pub const POLE_REL_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub xi: Vec<Complex64>,
    pub invertible: bool,
    pub min_abs_xi: f64,
}

impl SpectralData {
    /// 1-based indices `u` with `ξ_u` numerically zero.
    pub fn vanishing(&self, scale: f64) -> Vec<usize> {
        self.xi
            .iter()
            .enumerate()
            .filter(|(_, x)| x.norm() <= SINGULAR_REL_TOL * scale)
            .map(|(u, _)| u + 1)
            .collect()
    }
}

/// `ξ_u = x_1 + Σ_{j≥2} x_j a_{ju}` with an invertibility flag.
pub fn spectral(frame: &Frame, x: &[f64], alg: &Algebra) -> Result<SpectralData> {
    frame.check_algebra(alg)?;
    frame.check_point(x)?;
    let m = alg.m();
    let mut xi = Vec::with_capacity(m);
    let mut invertible = true;
    for u in 1..=m {
        let mut v = Complex64::new(x[0], 0.0);
        let mut scale = x[0].abs();
        for j in 2..=frame.k() {
            let a = frame.a(j, u);
            v += a * x[j - 1];
            scale += a.norm() * x[j - 1].abs();
        }
        if v.norm() <= SINGULAR_REL_TOL * scale || scale == 0.0 {
            invertible = false;
        }
        xi.push(v);
    }
    let min_abs_xi = xi.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    Ok(SpectralData {
        xi,
        invertible,
        min_abs_xi,
    })
}

/// `T_s`, `B_{q,s}`, `Q_{r,s}` and `Q̃_{r,s}` for `s ∈ [m+1, n]`, `r ∈ [2, s−m+1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolventCoefficients {
    m: usize,
    n: usize,
    t: Vec<Complex64>,
    /// `b[(q − m − 1) * d + (s − m − 1)]`
    b: Vec<Complex64>,
    /// `q[s − m − 1][r − 2]`
    q: Vec<Vec<Complex64>>,
    qt: Vec<Vec<Complex64>>,
}

impl ResolventCoefficients {
    /// Runs the recurrences on the nilpotent coordinates `T_{m+1..n}`.
    pub fn from_nilpotent_part(alg: &Algebra, t: &[Complex64]) -> Self {
        let m = alg.m();
        let n = alg.n();
        let d = n - m;
        debug_assert_eq!(t.len(), d);

        // B_{q,s} = Σ_{p=m+1}^{s−1} T_p Υ_{q,s}^p
        let mut b = vec![ZERO; d * d];
        for s in m + 1..=n {
            for q in m + 1..s {
                let mut acc = ZERO;
                for p in m + 1..s {
                    acc += t[p - m - 1] * alg.upsilon(q, s, p);
                }
                b[(q - m - 1) * d + (s - m - 1)] = acc;
            }
        }

        // Q_{2,s} = T_s, Q_{r,s} = Σ_{q=r+m−2}^{s−1} Q_{r−1,q} B_{q,s}; Q̃ mirrors it with signs.
        let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(d);
        let mut qt: Vec<Vec<Complex64>> = Vec::with_capacity(d);
        for s in m + 1..=n {
            let top = s - m + 1;
            let mut qs = Vec::with_capacity(top - 1);
            let mut qts = Vec::with_capacity(top - 1);
            qs.push(t[s - m - 1]);
            qts.push(-t[s - m - 1]);
            for r in 3..=top {
                let mut acc = ZERO;
                let mut acc_t = ZERO;
                for qq in r + m - 2..s {
                    let bqs = b[(qq - m - 1) * d + (s - m - 1)];
                    if bqs != ZERO {
                        acc += q[qq - m - 1][r - 3] * bqs;
                        acc_t += qt[qq - m - 1][r - 3] * bqs;
                    }
                }
                qs.push(acc);
                qts.push(-acc_t);
            }
            q.push(qs);
            qt.push(qts);
        }

        Self {
            m,
            n,
            t: t.to_vec(),
            b,
            q,
            qt,
        }
    }

    pub fn t(&self, s: usize) -> Complex64 {
        self.t[s - self.m - 1]
    }

    /// `B_{q,s}`; zero outside `m < q < s ≤ n`.
    pub fn b(&self, q: usize, s: usize) -> Complex64 {
        let (m, d) = (self.m, self.n - self.m);
        if q <= m || s <= q || s > self.n {
            return ZERO;
        }
        self.b[(q - m - 1) * d + (s - m - 1)]
    }

    /// `Q_{r,s}`; zero outside `2 ≤ r ≤ s − m + 1`.
    pub fn q(&self, r: usize, s: usize) -> Complex64 {
        self.lookup(&self.q, r, s)
    }

    /// `Q̃_{r,s}`.
    pub fn q_tilde(&self, r: usize, s: usize) -> Complex64 {
        self.lookup(&self.qt, r, s)
    }

    fn lookup(&self, table: &[Vec<Complex64>], r: usize, s: usize) -> Complex64 {
        if s <= self.m || s > self.n || r < 2 || r > s - self.m + 1 {
            return ZERO;
        }
        table[s - self.m - 1][r - 2]
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// All stored `(r, s)` pairs.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.m + 1..=self.n).flat_map(move |s| (2..=s - self.m + 1).map(move |r| (r, s)))
    }
}

/// Coefficients for `ζ = Σ x_j e_j`, with `T_s = Σ_{j≥2} x_j a_{js}`.
pub fn recurrence_coefficients(
    frame: &Frame,
    x: &[f64],
    alg: &Algebra,
) -> Result<ResolventCoefficients> {
    frame.check_algebra(alg)?;
    frame.check_point(x)?;
    let t: Vec<Complex64> = (alg.m() + 1..=alg.n())
        .map(|s| {
            (2..=frame.k())
                .map(|j| frame.a(j, s) * x[j - 1])
                .fold(ZERO, |a, b| a + b)
        })
        .collect();
    Ok(ResolventCoefficients::from_nilpotent_part(alg, &t))
}

/// A value together with `min_u |t − ξ_u|` (or `min_u |ξ_u|` for inverses).
#[derive(Clone, Debug, PartialEq)]
pub struct Conditioned {
    pub value: Element,
    pub min_gap: f64,
}

fn assemble(
    alg: &Algebra,
    gaps: &[Complex64],
    coeffs: &ResolventCoefficients,
    tilde: bool,
) -> Element {
    let m = alg.m();
    let n = alg.n();
    let mut out = vec![ZERO; n];
    for u in 0..m {
        out[u] = gaps[u].inv();
    }
    for s in m + 1..=n {
        let inv = gaps[alg.unit_of(s) - 1].inv();
        let mut pow = inv * inv;
        let mut acc = ZERO;
        for r in 2..=s - m + 1 {
            let c = if tilde {
                coeffs.q_tilde(r, s)
            } else {
                coeffs.q(r, s)
            };
            acc += c * pow;
            pow *= inv;
        }
        out[s - 1] = acc;
    }
    Element::from_coords(out)
}

/// `(t·1 − a)^{-1}` for an arbitrary element `a`.
pub fn resolvent_of(alg: &Algebra, t: Complex64, a: &Element) -> Result<Conditioned> {
    a.check_dim(alg.n())?;
    let m = alg.m();
    let xi = &a.coords()[..m];
    let mut gaps = Vec::with_capacity(m);
    let mut min_gap = f64::INFINITY;
    for (u, x) in xi.iter().enumerate() {
        let g = t - x;
        if g.norm() < POLE_REL_TOL * (1.0 + t.norm()) {
            return Err(Error::Pole {
                u: u + 1,
                t,
                xi: *x,
            });
        }
        min_gap = min_gap.min(g.norm());
        gaps.push(g);
    }
    let coeffs = ResolventCoefficients::from_nilpotent_part(alg, &a.coords()[m..]);
    Ok(Conditioned {
        value: assemble(alg, &gaps, &coeffs, false),
        min_gap,
    })
}

/// `a^{-1}` for an arbitrary element `a` via the `Q̃` recurrence.
pub fn inverse_of(alg: &Algebra, a: &Element) -> Result<Conditioned> {
    a.check_dim(alg.n())?;
    let m = alg.m();
    let xi = &a.coords()[..m];
    let scale = a.norm();
    let offending: Vec<usize> = xi
        .iter()
        .enumerate()
        .filter(|(_, x)| scale == 0.0 || x.norm() <= SINGULAR_REL_TOL * scale)
        .map(|(u, _)| u + 1)
        .collect();
    if !offending.is_empty() {
        return Err(Error::Singular {
            xi: xi.to_vec(),
            offending,
        });
    }
    let min_gap = xi.iter().map(|x| x.norm()).fold(f64::INFINITY, f64::min);
    let coeffs = ResolventCoefficients::from_nilpotent_part(alg, &a.coords()[m..]);
    Ok(Conditioned {
        value: assemble(alg, xi, &coeffs, true),
        min_gap,
    })
}

/// `(t e_1 − ζ)^{-1}` for `ζ = Σ x_j e_j`.
pub fn resolvent(t: Complex64, frame: &Frame, x: &[f64], alg: &Algebra) -> Result<Element> {
    resolvent_conditioned(t, frame, x, alg).map(|c| c.value)
}

pub fn resolvent_conditioned(
    t: Complex64,
    frame: &Frame,
    x: &[f64],
    alg: &Algebra,
) -> Result<Conditioned> {
    let sp = spectral(frame, x, alg)?;
    let m = alg.m();
    let mut gaps = Vec::with_capacity(m);
    let mut min_gap = f64::INFINITY;
    for (u, xi) in sp.xi.iter().enumerate() {
        let g = t - xi;
        if g.norm() < POLE_REL_TOL * (1.0 + t.norm()) {
            return Err(Error::Pole {
                u: u + 1,
                t,
                xi: *xi,
            });
        }
        min_gap = min_gap.min(g.norm());
        gaps.push(g);
    }
    let coeffs = recurrence_coefficients(frame, x, alg)?;
    Ok(Conditioned {
        value: assemble(alg, &gaps, &coeffs, false),
        min_gap,
    })
}

/// `ζ^{-1} = Σ_u ξ_u^{-1} I_u + Σ_s Ã_s I_s`.
pub fn inverse(frame: &Frame, x: &[f64], alg: &Algebra) -> Result<Element> {
    inverse_conditioned(frame, x, alg).map(|c| c.value)
}

pub fn inverse_conditioned(frame: &Frame, x: &[f64], alg: &Algebra) -> Result<Conditioned> {
    let sp = spectral(frame, x, alg)?;
    if !sp.invertible {
        let scale = x
            .iter()
            .map(|v| v.abs())
            .sum::<f64>()
            .max(f64::MIN_POSITIVE);
        let mut offending = sp.vanishing(scale);
        if offending.is_empty() {
            offending = (1..=alg.m()).collect();
        }
        return Err(Error::Singular {
            xi: sp.xi,
            offending,
        });
    }
    let coeffs = recurrence_coefficients(frame, x, alg)?;
    Ok(Conditioned {
        value: assemble(alg, &sp.xi, &coeffs, true),
        min_gap: sp.min_abs_xi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn semisimple_has_no_coefficients() {
        let alg = Algebra::semisimple(3).unwrap();
        let f = builtins::default_frame(&alg);
        let co = recurrence_coefficients(&f, &[0.2, 0.5, -0.3], &alg).unwrap();
        assert!(co.is_empty());
        assert_eq!(co.indices().count(), 0);
        let x = [0.2, 0.5, -0.3];
        let t = c(1.5, 2.0);
        let sp = spectral(&f, &x, &alg).unwrap();
        let r = resolvent(t, &f, &x, &alg).unwrap();
        for u in 0..3 {
            assert_eq!(r.coords()[u], (t - sp.xi[u]).inv());
        }
    }

    #[test]
    fn hand_expanded_coefficients_example1() {
        // e_2 = i I_1 + I_2, e_3 = I_4, x = (0, 1, 1)
        let alg = builtins::example_algebra(1);
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let f = Frame::from_directions(
            &alg,
            vec![vec![c(0.0, 1.0), one, z, z, z], vec![z, z, z, one, z]],
        )
        .unwrap();
        let co = recurrence_coefficients(&f, &[0.0, 1.0, 1.0], &alg).unwrap();
        assert_eq!(co.t(2), one);
        assert_eq!(co.t(3), z);
        assert_eq!(co.t(4), one);
        assert_eq!(co.t(5), z);
        for s in 2..=5 {
            assert_eq!(co.q(2, s), co.t(s));
            assert_eq!(co.q_tilde(2, s), -co.t(s));
        }
        // B_{2,3} = T_2 Υ_{2,3}^2 = 1 (I_2 I_2 = I_3); B_{4,5} = T_2 Υ_{4,5}^2 = 1 (I_4 I_2 = I_5);
        // B_{2,5} = T_4 Υ_{2,5}^4 = 1 (I_2 I_4 = I_5).
        assert_eq!(co.b(2, 3), one);
        assert_eq!(co.b(4, 5), one);
        assert_eq!(co.b(2, 5), one);
        assert_eq!(co.b(3, 5), z);
        // Q_{3,3} = Q_{2,2} B_{2,3} = 1; Q_{3,5} = Σ_{q=2}^{4} Q_{2,q} B_{q,5} = 1 + 0 + 1 = 2.
        assert_eq!(co.q(3, 3), one);
        assert_eq!(co.q(3, 5), c(2.0, 0.0));
        // Q_{4,5} = Σ_{q=3}^{4} Q_{3,q} B_{q,5}: Q_{3,3} B_{3,5} + Q_{3,4} B_{4,5} = 0 + 0.
        assert_eq!(co.q(4, 5), z);
    }

    #[test]
    fn sign_law_holds() {
        let alg = builtins::example_algebra(4);
        let f = builtins::default_frame(&alg);
        let co = recurrence_coefficients(&f, &[0.4, -0.8, 1.3], &alg).unwrap();
        for (r, s) in co.indices() {
            let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
            assert!((co.q_tilde(r, s) - co.q(r, s) * sign).norm() <= 1e-12);
        }
    }

    #[test]
    fn inverse_of_unit_and_semisimple_points() {
        let alg = builtins::example_algebra(1);
        let f = builtins::default_frame(&alg);
        assert_eq!(inverse(&f, &[1.0, 0.0, 0.0], &alg).unwrap(), alg.unit());

        let s_frame = builtins::s_frame(&alg);
        let x = [0.3, 1.1];
        let inv = inverse(&s_frame, &x, &alg).unwrap();
        let sp = spectral(&s_frame, &x, &alg).unwrap();
        assert_eq!(inv.coords()[0], sp.xi[0].inv());
        assert!(inv.coords()[1..]
            .iter()
            .all(|c| *c == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn pole_and_singularity_errors() {
        let alg = builtins::example_algebra(2);
        let f = builtins::default_frame(&alg);
        let x = [0.5, 0.25, 0.0];
        let sp = spectral(&f, &x, &alg).unwrap();
        match resolvent(sp.xi[0], &f, &x, &alg) {
            Err(Error::Pole { u, .. }) => assert_eq!(u, 1),
            other => panic!("expected pole, got {other:?}"),
        }
        // On M_1: x_1 + Σ x_j Re a_j1 = 0 and Σ x_j Im a_j1 = 0 with a_21 = i, a_31 = 0.
        let on = [0.0, 0.0, 2.0];
        let sp = spectral(&f, &on, &alg).unwrap();
        assert!(!sp.invertible);
        assert!(matches!(
            inverse(&f, &on, &alg),
            Err(Error::Singular { ref offending, .. }) if offending == &vec![1]
        ));
    }

    #[test]
    fn resolvent_leading_asymptotics() {
        let alg = builtins::example_algebra(3);
        let f = builtins::default_frame(&alg);
        let x = [0.1, 0.7, -0.4];
        let mut prev = f64::INFINITY;
        for t in [1e2, 1e4, 1e6] {
            let r = resolvent(c(t, 0.0), &f, &x, &alg).unwrap();
            let d = r.scale_real(t).distance(&alg.unit());
            assert!(d < prev);
            prev = d;
        }
        assert!(prev < 1e-5);
    }
}
