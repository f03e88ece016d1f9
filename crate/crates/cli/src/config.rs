//! On-disk formats: algebra and frame files, and the experiment config.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cartan_core::{
    builtins, Algebra, Curve, Execution, Frame, MonogenicFunction, StructureConstant,
};
use clap::ValueEnum;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Inverse,
    Cr,
    Cauchy,
    Lambda,
    Formula,
    Morera,
    Predicates,
    All,
}

impl Suite {
    pub const EVERY: [Suite; 8] = [
        Suite::Algebra,
        Suite::Inverse,
        Suite::Cr,
        Suite::Cauchy,
        Suite::Lambda,
        Suite::Formula,
        Suite::Morera,
        Suite::Predicates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Inverse => "inverse",
            Suite::Cr => "cr",
            Suite::Cauchy => "cauchy",
            Suite::Lambda => "lambda",
            Suite::Formula => "formula",
            Suite::Morera => "morera",
            Suite::Predicates => "predicates",
            Suite::All => "all",
        }
    }

    /// Expands `all` and removes duplicates, keeping the canonical order.
    pub fn expand(list: &[Suite]) -> Vec<Suite> {
        let mut out: Vec<Suite> = if list.is_empty() || list.contains(&Suite::All) {
            Suite::EVERY.to_vec()
        } else {
            list.to_vec()
        };
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitEntry {
    s: usize,
    u: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductEntry {
    left: usize,
    right: usize,
    target: usize,
    value_re: f64,
    #[serde(default)]
    value_im: f64,
}

/// `{"n": 5, "m": 1, "u_map": [{"s": 2, "u": 1}], "products": [{"left": 2, "right": 2, "target": 3, "value_re": 1.0}]}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    n: usize,
    m: usize,
    #[serde(default)]
    u_map: Vec<UnitEntry>,
    #[serde(default)]
    products: Vec<ProductEntry>,
}

/// `{"k": 3, "rows": [[[1, 0], [0, 0]], ...]}`; every row lists `[re, im]` pairs.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameFile {
    #[serde(default)]
    k: Option<usize>,
    rows: Vec<Vec<[f64; 2]>>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        anyhow::anyhow!(
            "{}: parse error at line {}, column {}: {}",
            path.display(),
            e.line(),
            e.column(),
            e
        )
    })
}

pub fn load_algebra_file(path: &Path) -> Result<Algebra> {
    let file: AlgebraFile = parse(&read(path)?, path)?;
    let units: Vec<(usize, usize)> = file.u_map.iter().map(|e| (e.s, e.u)).collect();
    let products: Vec<StructureConstant> = file
        .products
        .iter()
        .map(|p| {
            StructureConstant::new(
                p.left,
                p.right,
                p.target,
                Complex64::new(p.value_re, p.value_im),
            )
        })
        .collect();
    Algebra::new(file.n, file.m, &units, &products).with_context(|| format!("{}", path.display()))
}

pub fn load_frame_file(path: &Path, alg: &Algebra) -> Result<Frame> {
    let file: FrameFile = parse(&read(path)?, path)?;
    if let Some(k) = file.k {
        if k != file.rows.len() {
            bail!(
                "{}: k = {k} but {} rows given",
                path.display(),
                file.rows.len()
            );
        }
    }
    let rows = file
        .rows
        .iter()
        .map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
        .collect();
    Frame::new(alg, rows).with_context(|| format!("{}", path.display()))
}

fn relative_to(base: Option<&Path>, p: &str) -> PathBuf {
    let path = PathBuf::from(p);
    match base {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path,
    }
}

/// A built-in name or a JSON file.
pub fn resolve_algebra(reference: &str, base: Option<&Path>) -> Result<Algebra> {
    match builtins::algebra_by_name(reference) {
        Ok(a) => Ok(a),
        Err(_) => {
            let path = relative_to(base, reference);
            if !path.exists() {
                bail!("'{reference}' is neither a built-in algebra nor an existing file");
            }
            load_algebra_file(&path)
        }
    }
}

pub fn resolve_frame(reference: &str, alg: &Algebra, base: Option<&Path>) -> Result<Frame> {
    if builtins::FRAME_NAMES.contains(&reference) || reference == "s-frame" {
        return Ok(builtins::frame_by_name(alg, reference)?);
    }
    let path = relative_to(base, reference);
    if !path.exists() {
        bail!("'{reference}' is neither a built-in frame nor an existing file");
    }
    load_frame_file(&path, alg)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algebra: Option<String>,
    pub frame: Option<String>,
    pub suites: Vec<Suite>,
    /// Replaces the default function set of the cr, cauchy, formula and morera suites.
    pub functions: Vec<MonogenicFunction>,
    /// Replaces the default closed curves of the cauchy suite.
    pub curves: Vec<Curve>,
    /// Center `x_0` for the Cauchy formula.
    pub center: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub nodes_cap: Option<usize>,
    pub out: Option<PathBuf>,
    pub execution: Option<Execution>,
    pub morera_triangles: Option<usize>,
    pub inverse_points: Option<usize>,
}

impl ExperimentConfig {
    /// Reads a config file; relative paths inside it are resolved against its directory.
    pub fn load(path: &Path) -> Result<(Self, Option<PathBuf>)> {
        let config: ExperimentConfig = parse(&read(path)?, path)?;
        let base = path.parent().map(Path::to_path_buf);
        for c in &config.curves {
            c.validate()
                .with_context(|| format!("{}: invalid curve", path.display()))?;
        }
        Ok((config, base))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn algebra_file_round_trip() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(
            f,
            r#"{{"n": 5, "m": 1, "products": [
                {{"left": 2, "right": 2, "target": 3, "value_re": 1.0}},
                {{"left": 2, "right": 4, "target": 5, "value_re": 1.0}}]}}"#
        )
        .unwrap();
        let alg = load_algebra_file(f.path()).unwrap();
        assert_eq!(
            alg.structure_constants(),
            builtins::example_algebra(1).structure_constants()
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "{{\n  \"n\": 5,\n  \"m\": oops\n}}").unwrap();
        let msg = format!("{:#}", load_algebra_file(f.path()).unwrap_err());
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn frame_file_and_builtin_names() {
        let alg = builtins::example_algebra(2);
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(
            f,
            r#"{{"k": 2, "rows": [[[1,0],[0,0],[0,0],[0,0],[0,0]], [[0,1],[1,0],[0,0],[0,0],[0,0]]]}}"#
        )
        .unwrap();
        let frame = load_frame_file(f.path(), &alg).unwrap();
        assert_eq!(frame.k(), 2);
        assert_eq!(resolve_frame("s", &alg, None).unwrap().k(), 2);
        assert!(resolve_frame("nope", &alg, None).is_err());
        assert!(resolve_algebra("example9", None).is_err());
    }

    #[test]
    fn suites_expand() {
        assert_eq!(Suite::expand(&[]), Suite::EVERY.to_vec());
        assert_eq!(
            Suite::expand(&[Suite::Morera, Suite::Cr, Suite::Cr]),
            vec![Suite::Cr, Suite::Morera]
        );
    }
}
