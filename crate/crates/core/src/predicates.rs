//! Sufficient conditions on the structure constants and on the frame under which
//! `λ = ∮ ζ⁻¹ dζ` equals `2πi`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::frame::Frame;

/// Products below this magnitude count as zero.
pub const PRODUCT_TOL: f64 = 1e-14;

/// How `Υ_{a,b}^{c}` maps onto the stored constants `c[left][right][target]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexReading {
    /// `Υ_{a,b}^{c}` is the coefficient of `I_b` in `I_a I_c` (the adopted reading).
    #[default]
    MiddleIsTarget,
    /// `Υ_{a,b}^{c}` is the coefficient of `I_c` in `I_a I_b`.
    UpperIsTarget,
}

/// The fourteen factor patterns, as offsets `(a, b, c)` from `m` in `Υ_{m+a, m+b}^{m+c}`.
const PATTERNS: [&[(usize, usize, usize)]; 14] = [
    &[(1, 2, 1), (2, 3, 2)],
    &[(1, 2, 1), (2, 4, 2)],
    &[(1, 3, 1), (3, 4, 2)],
    &[(3, 4, 3), (1, 3, 1)],
    &[(2, 3, 1), (3, 4, 1)],
    &[(2, 3, 1), (3, 4, 2)],
    &[(2, 3, 1), (3, 4, 3)],
    &[(1, 2, 1), (2, 3, 1), (3, 4, 2)],
    &[(1, 2, 1), (2, 3, 1), (3, 4, 3)],
    &[(2, 3, 2), (3, 4, 1)],
    &[(2, 3, 2), (3, 4, 3)],
    &[(2, 3, 2), (1, 2, 1), (3, 4, 1)],
    &[(2, 3, 2), (1, 2, 1), (3, 4, 2)],
    &[(2, 3, 2), (1, 2, 1), (3, 4, 3)],
];

fn upsilon(alg: &Algebra, reading: IndexReading, a: usize, b: usize, c: usize) -> Complex64 {
    let m = alg.m();
    match reading {
        IndexReading::MiddleIsTarget => alg.upsilon(m + a, m + b, m + c),
        IndexReading::UpperIsTarget => alg.constant(m + a, m + b, m + c),
    }
}

/// The fourteen products whose vanishing is sufficient when `dim N = 4`; empty otherwise.
pub fn fourteen_products(alg: &Algebra, reading: IndexReading) -> Vec<Complex64> {
    if alg.nilpotent_dim() != 4 {
        return Vec::new();
    }
    PATTERNS
        .iter()
        .map(|factors| {
            factors
                .iter()
                .map(|&(a, b, c)| upsilon(alg, reading, a, b, c))
                .product()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem5Outcome {
    pub holds: bool,
    /// First condition (1–4) that holds.
    pub condition: Option<u8>,
    pub reason: String,
    /// The fourteen products (only when `dim N = 4`).
    pub products: Vec<Complex64>,
    pub max_product: f64,
}

/// Checks, in order: `m = n`; zero nilpotent tensor; `dim N ≤ 3`; `dim N = 4` with all
/// fourteen products vanishing.
pub fn theorem5_predicate(alg: &Algebra) -> Theorem5Outcome {
    theorem5_predicate_with(alg, IndexReading::MiddleIsTarget)
}

pub fn theorem5_predicate_with(alg: &Algebra, reading: IndexReading) -> Theorem5Outcome {
    let products = fourteen_products(alg, reading);
    let max_product = products.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let outcome = |condition: Option<u8>, reason: &str| Theorem5Outcome {
        holds: condition.is_some(),
        condition,
        reason: reason.to_string(),
        products: products.clone(),
        max_product,
    };
    let dim_n = alg.nilpotent_dim();
    if dim_n == 0 {
        return outcome(Some(1), "m = n: the algebra is semisimple");
    }
    if alg.has_zero_nilpotent_product() {
        return outcome(Some(2), "all products of nilpotent basis elements vanish");
    }
    if dim_n <= 3 {
        return outcome(Some(3), "dim N <= 3");
    }
    if dim_n == 4 {
        if max_product <= PRODUCT_TOL {
            return outcome(Some(4), "dim N = 4 and all fourteen products vanish");
        }
        return outcome(None, "dim N = 4 but the products do not vanish");
    }
    outcome(
        None,
        "inapplicable: dim N > 4 and the nilpotent tensor is nonzero",
    )
}

/// `a_{jr} = 0` for `j ≥ 2`, `r > m`: the frame lies in the semisimple part.
pub fn theorem6_predicate(frame: &Frame, alg: &Algebra) -> Result<bool> {
    frame.check_algebra(alg)?;
    Ok((2..=frame.k())
        .all(|j| (alg.m() + 1..=alg.n()).all(|r| frame.a(j, r) == Complex64::new(0.0, 0.0))))
}

/// For `dim N = 4`: `a_{j,m+1} = 0` for all `j ≥ 2`, and either `a_{j,m+2} = 0` for all `j`
/// or `a_{j,m+3} = 0` for all `j`.
pub fn theorem7_predicate(frame: &Frame, alg: &Algebra) -> Result<bool> {
    frame.check_algebra(alg)?;
    if alg.nilpotent_dim() != 4 {
        return Err(Error::Precondition(format!(
            "requires dim N = 4, got {}",
            alg.nilpotent_dim()
        )));
    }
    let m = alg.m();
    let column_zero = |r: usize| (2..=frame.k()).all(|j| frame.a(j, r) == Complex64::new(0.0, 0.0));
    Ok(column_zero(m + 1) && (column_zero(m + 2) || column_zero(m + 3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StructureConstant;
    use crate::builtins;
    use num_complex::Complex64 as C;

    #[test]
    fn examples_satisfy_condition_four() {
        for i in 1..=4 {
            let out = theorem5_predicate(&builtins::example_algebra(i));
            assert!(out.holds);
            assert_eq!(out.condition, Some(4));
            assert_eq!(out.products.len(), 14);
            assert!(out.products.iter().all(|p| *p == C::new(0.0, 0.0)));
        }
    }

    #[test]
    fn earlier_conditions_take_precedence() {
        assert_eq!(
            theorem5_predicate(&Algebra::semisimple(3).unwrap()).condition,
            Some(1)
        );
        let zero = Algebra::new(4, 1, &[], &[]).unwrap();
        assert_eq!(theorem5_predicate(&zero).condition, Some(2));
        let small = Algebra::new(4, 1, &[], &[StructureConstant::real(2, 2, 3, 1.0)]).unwrap();
        assert_eq!(theorem5_predicate(&small).condition, Some(3));
    }

    #[test]
    fn nonvanishing_product_fails() {
        // powers of a single nilpotent generator plus I_3^2 = I_2 I_4 = I_5
        let alg = Algebra::new(
            5,
            1,
            &[],
            &[
                StructureConstant::real(2, 2, 3, 1.0),
                StructureConstant::real(2, 3, 4, 1.0),
                StructureConstant::real(3, 3, 5, 1.0),
                StructureConstant::real(2, 4, 5, 1.0),
            ],
        )
        .unwrap();
        assert!(alg.validate().passed());
        let out = theorem5_predicate(&alg);
        assert!(!out.holds);
        assert_eq!(out.condition, None);
        // Υ_{2,3}^{2} Υ_{3,5}^{3} = c[2][2][3] · c[3][3][5]
        assert_eq!(out.products[1], C::new(1.0, 0.0));
    }

    #[test]
    fn large_nilpotent_part_is_inapplicable() {
        let alg = Algebra::new(6, 1, &[], &[StructureConstant::real(2, 2, 3, 1.0)]).unwrap();
        let out = theorem5_predicate(&alg);
        assert!(!out.holds);
        assert!(out.reason.starts_with("inapplicable"));
    }

    #[test]
    fn frame_predicates() {
        let alg = builtins::example_algebra(1);
        let i = C::new(0.0, 1.0);
        let z = C::new(0.0, 0.0);
        let one = C::new(1.0, 0.0);
        let s = Frame::from_directions(&alg, vec![vec![i, z, z, z, z]]).unwrap();
        assert!(theorem6_predicate(&s, &alg).unwrap());
        assert!(theorem7_predicate(&s, &alg).unwrap());
        let e3 =
            Frame::from_directions(&alg, vec![vec![i, z, z, z, z], vec![z, z, z, one, z]]).unwrap();
        assert!(!theorem6_predicate(&e3, &alg).unwrap());
        let only_last = Frame::from_directions(&alg, vec![vec![i, z, z, z, one]]).unwrap();
        assert!(theorem7_predicate(&only_last, &alg).unwrap());
        let first = Frame::from_directions(&alg, vec![vec![i, one, z, z, z]]).unwrap();
        assert!(!theorem7_predicate(&first, &alg).unwrap());
        assert!(theorem7_predicate(&builtins::theorem7_frame(&alg).unwrap(), &alg).unwrap());
        assert!(!theorem7_predicate(&builtins::default_frame(&alg), &alg).unwrap());
        let c3 = Algebra::semisimple(3).unwrap();
        assert!(theorem7_predicate(&builtins::default_frame(&c3), &c3).is_err());
    }
}
