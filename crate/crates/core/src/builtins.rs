//! The four five-dimensional example algebras with one idempotent, the semisimple family ℂᵐ,
//! and the frames shipped with them.

use num_complex::Complex64;

use crate::algebra::{Algebra, StructureConstant};
use crate::error::{Error, Result};
use crate::frame::Frame;

const Z: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub struct BuiltinInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub const BUILTINS: &[BuiltinInfo] = &[
    BuiltinInfo {
        name: "example1",
        description: "n=5, m=1: I2^2 = I3, I2 I4 = I5, other nilpotent products zero",
    },
    BuiltinInfo {
        name: "example2",
        description: "n=5, m=1: I2^2 = I3, other nilpotent products zero",
    },
    BuiltinInfo {
        name: "example3",
        description: "n=5, m=1: I2^2 = I3, I4^2 = I5, other nilpotent products zero",
    },
    BuiltinInfo {
        name: "example4",
        description: "n=5, m=1: I2^2 = I3, I2 I3 = I4, other nilpotent products zero",
    },
    BuiltinInfo {
        name: "semisimple:m=<M>",
        description: "n=m=M: the semisimple algebra C^M with no nilpotent part",
    },
];

/// Example algebra `1..=4`.
///
/// # Panics
/// For any other index.
pub fn example_algebra(index: usize) -> Algebra {
    let products: Vec<StructureConstant> = match index {
        1 => vec![
            StructureConstant::real(2, 2, 3, 1.0),
            StructureConstant::real(2, 4, 5, 1.0),
        ],
        2 => vec![StructureConstant::real(2, 2, 3, 1.0)],
        3 => vec![
            StructureConstant::real(2, 2, 3, 1.0),
            StructureConstant::real(4, 4, 5, 1.0),
        ],
        4 => vec![
            StructureConstant::real(2, 2, 3, 1.0),
            StructureConstant::real(2, 3, 4, 1.0),
        ],
        _ => panic!("no example algebra {index}"),
    };
    Algebra::new(5, 1, &[], &products).expect("built-in tables are well formed")
}

/// Resolves `example1..example4` and `semisimple:m=<M>`.
pub fn algebra_by_name(name: &str) -> Result<Algebra> {
    if let Some(rest) = name.strip_prefix("example") {
        if let Ok(i @ 1..=4) = rest.parse::<usize>() {
            return Ok(example_algebra(i));
        }
    }
    if let Some(rest) = name.strip_prefix("semisimple:m=") {
        if let Ok(m) = rest.parse::<usize>() {
            if m >= 1 {
                return Algebra::semisimple(m);
            }
        }
    }
    Err(Error::Structure(format!(
        "unknown built-in algebra '{name}'"
    )))
}

fn idempotent_part(m: usize, f: impl Fn(usize) -> Complex64) -> Vec<Complex64> {
    (1..=m).map(f).collect()
}

/// `a_{2u}`: imaginary parts all positive so that circles in the `(x_1, x_2)` plane wind
/// positively around every `ξ_u`.
fn second_row(u: usize) -> Complex64 {
    let k = (u - 1) as f64;
    Complex64::new(0.5 * k, 1.0 + 0.25 * k)
}

fn third_row(u: usize) -> Complex64 {
    Complex64::new(0.7 * (u - 1) as f64, 0.0)
}

fn with_nilpotent(
    mut row: Vec<Complex64>,
    n: usize,
    entries: &[(usize, Complex64)],
) -> Vec<Complex64> {
    row.resize(n, Z);
    for &(r, v) in entries {
        if r <= n {
            row[r - 1] += v;
        }
    }
    row
}

/// The default frame, `k = 3` where possible.
///
/// For the five-dimensional examples it is `e_2 = i I_1 + I_2 + I_4`, `e_3 = I_3 + i I_5`.
pub fn default_frame(alg: &Algebra) -> Frame {
    let (n, m) = (alg.n(), alg.m());
    let e2 = with_nilpotent(
        idempotent_part(m, second_row),
        n,
        &[(m + 1, ONE), (m + 3, ONE)],
    );
    let e3 = with_nilpotent(
        idempotent_part(m, third_row),
        n,
        &[(m + 2, ONE), (m + 4, I)],
    );
    Frame::from_directions(alg, vec![e2.clone(), e3])
        .or_else(|_| Frame::from_directions(alg, vec![e2]))
        .expect("default frame is admissible")
}

/// A frame inside the semisimple part (`a_{jr} = 0` for `r > m`).
pub fn s_frame(alg: &Algebra) -> Frame {
    let (n, m) = (alg.n(), alg.m());
    let e2 = with_nilpotent(idempotent_part(m, second_row), n, &[]);
    let e3 = with_nilpotent(idempotent_part(m, third_row), n, &[]);
    Frame::from_directions(alg, vec![e2.clone(), e3])
        .or_else(|_| Frame::from_directions(alg, vec![e2]))
        .expect("semisimple frame is admissible")
}

/// A frame with `a_{j,m+1} = a_{j,m+2} = 0` for all `j`; requires `dim N = 4`.
pub fn theorem7_frame(alg: &Algebra) -> Result<Frame> {
    let (n, m) = (alg.n(), alg.m());
    if n - m != 4 {
        return Err(Error::Precondition(format!(
            "dim N = {} but this frame needs dim N = 4",
            n - m
        )));
    }
    let e2 = with_nilpotent(
        idempotent_part(m, second_row),
        n,
        &[(m + 3, ONE), (m + 4, ONE)],
    );
    let e3 = with_nilpotent(
        idempotent_part(m, third_row),
        n,
        &[(m + 3, Complex64::new(0.5, 0.0)), (m + 4, I)],
    );
    Frame::from_directions(alg, vec![e2, e3])
}

/// Named frames: `default`, `s` (inside S), `theorem7`.
pub fn frame_by_name(alg: &Algebra, name: &str) -> Result<Frame> {
    match name {
        "default" => Ok(default_frame(alg)),
        "s" | "s-frame" => Ok(s_frame(alg)),
        "theorem7" => theorem7_frame(alg),
        other => Err(Error::Frame(format!("unknown built-in frame '{other}'"))),
    }
}

pub const FRAME_NAMES: &[&str] = &["default", "s", "theorem7"];
