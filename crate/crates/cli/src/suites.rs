//! The named verification suites.

use cartan_core::integral::{
    cauchy_formula_check, cauchy_theorem_check, compute_lambda, lambda_variation, morera_check,
    standard_circles, Ball, Criterion, LabOptions,
};
use cartan_core::monogenic::cr_residual;
use cartan_core::predicates::{theorem5_predicate, theorem6_predicate, theorem7_predicate};
use cartan_core::resolvent::{self, inverse, resolvent};
use cartan_core::{
    builtins, par, tolerances, Algebra, AlgebraField, CoordinateField, Curve, Element, Frame,
    MonogenicFunction, Orientation,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::Suite;
use crate::report::{CheckRecord, Fact};

/// Everything a suite needs.
pub struct Context {
    pub alg: Algebra,
    pub frame: Frame,
    pub seed: u64,
    pub lab: LabOptions,
    /// Overrides the default function set when non-empty.
    pub functions: Vec<MonogenicFunction>,
    /// Overrides the default closed curves of the cauchy suite when non-empty.
    pub curves: Vec<Curve>,
    pub center: Option<Vec<f64>>,
    pub morera_triangles: usize,
    pub inverse_points: usize,
}

impl Context {
    pub fn new(alg: Algebra, frame: Frame, seed: u64) -> Self {
        Self {
            alg,
            frame,
            seed,
            lab: LabOptions::default(),
            functions: Vec::new(),
            curves: Vec::new(),
            center: None,
            morera_triangles: 200,
            inverse_points: 1000,
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn k(&self) -> usize {
        self.frame.k()
    }
}

#[derive(Default)]
pub struct SuiteOutput {
    pub checks: Vec<CheckRecord>,
    pub facts: Vec<Fact>,
}

pub fn run(ctx: &Context, suite: Suite) -> SuiteOutput {
    match suite {
        Suite::Algebra => algebra(ctx),
        Suite::Inverse => inverse_suite(ctx),
        Suite::Cr => cr(ctx),
        Suite::Cauchy => cauchy(ctx),
        Suite::Lambda => lambda(ctx),
        Suite::Formula => formula(ctx),
        Suite::Morera => morera(ctx),
        Suite::Predicates => predicates(ctx),
        Suite::All => {
            let mut out = SuiteOutput::default();
            for s in Suite::EVERY {
                let o = run(ctx, s);
                out.checks.extend(o.checks);
                out.facts.extend(o.facts);
            }
            out
        }
    }
}

/// Short label for a function.
pub fn label(phi: &MonogenicFunction) -> String {
    match phi {
        MonogenicFunction::Polynomial { coeffs } => {
            let nonzero: Vec<usize> = (0..coeffs.len())
                .filter(|p| coeffs[*p].max_abs() > 0.0)
                .collect();
            match nonzero.as_slice() {
                [] => "0".into(),
                [0] => "const".into(),
                [1] => "zeta".into(),
                [p] => format!("zeta^{p}"),
                _ => format!("poly(deg {})", nonzero.last().unwrap()),
            }
        }
        MonogenicFunction::ResolventKernel { t } => format!("resolvent(t={:.3})", t.re),
        MonogenicFunction::PrincipalExtension { .. } => "principal".into(),
    }
}

/// A real `t` beyond `|ξ_u(x)|` for every `‖x‖ ≤ 1.5`.
pub fn resolvent_point(frame: &Frame, m: usize) -> Complex64 {
    let bound = (1..=m)
        .map(|u| {
            (1..=frame.k())
                .map(|j| frame.a(j, u).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max);
    Complex64::new(1.0 + 1.5 * bound, 0.0)
}

/// `ζ, ζ², ζ³` and a resolvent kernel.
pub fn monogenic_set(ctx: &Context) -> Vec<MonogenicFunction> {
    if !ctx.functions.is_empty() {
        return ctx.functions.clone();
    }
    let mut v: Vec<MonogenicFunction> = (1..=3)
        .map(|p| MonogenicFunction::power(&ctx.alg, p))
        .collect();
    v.push(MonogenicFunction::ResolventKernel {
        t: resolvent_point(&ctx.frame, ctx.alg.m()),
    });
    v
}

/// `1, ζ, ζ²`.
pub fn formula_set(ctx: &Context) -> Vec<MonogenicFunction> {
    if !ctx.functions.is_empty() {
        return ctx.functions.clone();
    }
    (0..=2)
        .map(|p| MonogenicFunction::power(&ctx.alg, p))
        .collect()
}

/// `Ψ(x) = x_2 I_1`.
pub fn control() -> CoordinateField {
    CoordinateField {
        coordinate: 2,
        basis: 1,
    }
}

fn unit_circle(k: usize) -> Curve {
    Curve::coordinate_circle(vec![0.0; k], 1.0, 1, 2).expect("k >= 2")
}

/// Two circles in distinct planes (or two circles when `k = 2`) and a square.
pub fn closed_curves(ctx: &Context) -> Vec<(String, Curve)> {
    if !ctx.curves.is_empty() {
        return ctx
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("curve#{i}"), c.clone()))
            .collect();
    }
    let k = ctx.k();
    let origin = vec![0.0; k];
    let mut out = vec![("circle(x1,x2)".to_string(), unit_circle(k))];
    if k >= 3 {
        let mut u = vec![0.0; k];
        u[0] = 1.0;
        u[2] = 1.0;
        let mut v = vec![0.0; k];
        v[1] = 1.0;
        v[2] = 0.5;
        out.push((
            "circle(tilted)".into(),
            Curve::circle(origin.clone(), 0.9, u, v, Orientation::Positive).expect("independent"),
        ));
        out.push((
            "square(x2,x3)".into(),
            Curve::coordinate_square(&origin, 0.5, 2, 3).expect("valid"),
        ));
    } else {
        let mut c = origin.clone();
        c[0] = 0.2;
        c[1] = -0.1;
        out.push((
            "circle(shifted)".into(),
            Curve::coordinate_circle(c, 0.8, 1, 2).expect("valid"),
        ));
        out.push((
            "square(x1,x2)".into(),
            Curve::coordinate_square(&origin, 0.5, 1, 2).expect("valid"),
        ));
    }
    out
}

fn algebra(ctx: &Context) -> SuiteOutput {
    let r = ctx.alg.validate();
    let assoc = r.assoc_a1_max_residual.max(r.assoc_a2_max_residual);
    let rules_failed = [
        r.rule1_ok,
        r.rule2_support_ok,
        r.rule3_ok,
        r.nilpotent,
        r.unit_ok,
    ]
    .iter()
    .filter(|ok| !**ok)
    .count();
    let mut rules = CheckRecord::scalar(
        Suite::Algebra,
        "multiplication rules",
        rules_failed as f64,
        Criterion::at_most(0.0),
    )
    .with_note(format!(
        "rule1 {}, rule2 {}, rule3 {}, nilpotent {}, unit {}",
        r.rule1_ok, r.rule2_support_ok, r.rule3_ok, r.nilpotent, r.unit_ok
    ));
    for w in &r.warnings {
        rules = rules.with_note(w.clone());
    }
    SuiteOutput {
        checks: vec![
            CheckRecord::scalar(
                Suite::Algebra,
                "associativity",
                assoc,
                Criterion::at_most(r.tolerance),
            ),
            rules,
        ],
        facts: vec![Fact {
            name: "nilpotency index".into(),
            value: json!(r.nilpotency_index),
        }],
    }
}

/// Random `x ∈ [−1, 1]^k` with `min |ξ_u| ≥ 0.25` and `t` with `min |t − ξ_u| ≥ 0.25`.
pub fn invertible_samples(ctx: &Context, count: usize) -> Vec<(Vec<f64>, Complex64)> {
    let mut rng = ctx.rng(1);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: Vec<f64> = (0..ctx.k()).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let sp = resolvent::spectral(&ctx.frame, &x, &ctx.alg).expect("point matches frame");
        if sp.min_abs_xi < 0.25 {
            continue;
        }
        let t = loop {
            let t = Complex64::new(rng.random_range(-3.0..=3.0), rng.random_range(-3.0..=3.0));
            if sp.xi.iter().all(|xi| (t - xi).norm() >= 0.25) {
                break t;
            }
        };
        out.push((x, t));
    }
    out
}

fn inverse_suite(ctx: &Context) -> SuiteOutput {
    let samples = invertible_samples(ctx, ctx.inverse_points);
    let (alg, frame) = (&ctx.alg, &ctx.frame);
    let errors = par::map(
        ctx.lab.execution,
        &samples,
        |(x, t)| -> Result<(f64, f64), String> {
            let zeta = frame.embed(x).map_err(|e| e.to_string())?;
            let inv = inverse(frame, x, alg).map_err(|e| e.to_string())?;
            let oracle = alg.oracle_inverse(&zeta).map_err(|e| e.to_string())?;
            let r = resolvent(*t, frame, x, alg).map_err(|e| e.to_string())?;
            let shifted = &alg.unit().scale(*t) - &zeta;
            Ok((
                inv.distance(&oracle),
                alg.mul(&shifted, &r).distance(&alg.unit()),
            ))
        },
    );
    let crit = Criterion::at_most(tolerances::INVERSE_ORACLE);
    let note = format!("{} random invertible points", samples.len());
    let checks = match errors.into_iter().collect::<Result<Vec<_>, _>>() {
        Ok(v) => {
            let inv = v.iter().map(|p| p.0).fold(0.0, f64::max);
            let res = v.iter().map(|p| p.1).fold(0.0, f64::max);
            vec![
                CheckRecord::scalar(Suite::Inverse, "inverse vs oracle", inv, crit)
                    .with_note(note.clone()),
                CheckRecord::scalar(Suite::Inverse, "resolvent identity", res, crit)
                    .with_note(note),
            ]
        }
        Err(e) => vec![CheckRecord::failed(
            Suite::Inverse,
            "inverse vs oracle",
            crit,
            e,
        )],
    };
    SuiteOutput {
        checks,
        facts: vec![],
    }
}

/// Outcome of the `h`-halving test for one function.
pub struct CrOutcome {
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub at_1e4: Vec<f64>,
}

impl CrOutcome {
    /// Worst `|ratio − 4|` over the components above the rounding floor, or `None` when every
    /// component is rounding noise (central differences exact).
    pub fn ratio_deviation(&self) -> Option<f64> {
        let mut worst: Option<f64> = None;
        for (a, b) in self.coarse.iter().zip(&self.fine) {
            if *a > tolerances::CR_NOISE_FLOOR {
                let d = (a / b - 4.0).abs();
                worst = Some(worst.map_or(d, |w: f64| w.max(d)));
            }
        }
        worst
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.coarse
            .iter()
            .zip(&self.fine)
            .map(|(a, b)| a / b)
            .collect()
    }
}

pub fn cr_outcome<F: AlgebraField + ?Sized>(
    phi: &F,
    ctx: &Context,
    x: &[f64],
) -> cartan_core::Result<CrOutcome> {
    Ok(CrOutcome {
        coarse: cr_residual(phi, &ctx.frame, x, 1e-3, &ctx.alg)?,
        fine: cr_residual(phi, &ctx.frame, x, 5e-4, &ctx.alg)?,
        at_1e4: cr_residual(phi, &ctx.frame, x, 1e-4, &ctx.alg)?,
    })
}

fn cr(ctx: &Context) -> SuiteOutput {
    let mut rng = ctx.rng(2);
    let x: Vec<f64> = (0..ctx.k()).map(|_| rng.random_range(-0.5..=0.5)).collect();
    let (lo, hi) = tolerances::CR_RATIO;
    let ratio_crit = Criterion::at_most(0.5 * (hi - lo));
    let abs_crit = Criterion::at_most(tolerances::CR_ABSOLUTE);
    let mut checks = Vec::new();
    for phi in monogenic_set(ctx) {
        let name = label(&phi);
        match cr_outcome(&phi, ctx, &x) {
            Ok(o) => {
                let ratio = match o.ratio_deviation() {
                    Some(d) => CheckRecord::scalar(
                        Suite::Cr,
                        format!("{name} h-halving ratio"),
                        d,
                        ratio_crit,
                    )
                    .with_note(format!("ratios {:?}, residual = |ratio - 4|", o.ratios())),
                    None => CheckRecord::scalar(
                        Suite::Cr,
                        format!("{name} h-halving ratio"),
                        0.0,
                        ratio_crit,
                    )
                    .with_note(format!(
                        "truncation-free: residuals {:?} at h = 1e-3 are rounding noise",
                        o.coarse
                    )),
                };
                checks.push(ratio);
                let worst = o.at_1e4.iter().copied().fold(0.0, f64::max);
                checks.push(CheckRecord::scalar(
                    Suite::Cr,
                    format!("{name} residual at h=1e-4"),
                    worst,
                    abs_crit,
                ));
            }
            Err(e) => checks.push(CheckRecord::failed(Suite::Cr, name, abs_crit, e)),
        }
    }
    let psi = control();
    let crit = Criterion::at_least(tolerances::CONTROL_MIN);
    checks.push(match cr_residual(&psi, &ctx.frame, &x, 1e-4, &ctx.alg) {
        Ok(r) => CheckRecord::scalar(
            Suite::Cr,
            "control x2*I1",
            r.iter().copied().fold(0.0, f64::max),
            crit,
        ),
        Err(e) => CheckRecord::failed(Suite::Cr, "control x2*I1", crit, e),
    });
    SuiteOutput {
        checks,
        facts: vec![Fact {
            name: "cr point".into(),
            value: json!(x),
        }],
    }
}

fn cauchy(ctx: &Context) -> SuiteOutput {
    let curves = closed_curves(ctx);
    let mut checks = Vec::new();
    let fallback = Criterion::at_most(tolerances::CAUCHY_THEOREM_REL);
    for phi in monogenic_set(ctx) {
        for (cname, curve) in &curves {
            let name = format!("{} on {cname}", label(&phi));
            checks.push(
                match cauchy_theorem_check(
                    &phi,
                    curve,
                    &ctx.frame,
                    &ctx.alg,
                    &ctx.lab.quadrature,
                    None,
                ) {
                    Ok(r) => CheckRecord::from_report(Suite::Cauchy, name, r),
                    Err(e) => CheckRecord::failed(Suite::Cauchy, name, fallback, e),
                },
            );
        }
    }
    let crit = Criterion::at_least(tolerances::CONTROL_MIN);
    let circle = unit_circle(ctx.k());
    checks.push(
        match cauchy_theorem_check(
            &control(),
            &circle,
            &ctx.frame,
            &ctx.alg,
            &ctx.lab.quadrature,
            Some(crit),
        ) {
            Ok(r) => CheckRecord::from_report(Suite::Cauchy, "control x2*I1 on circle(x1,x2)", r),
            Err(e) => CheckRecord::failed(Suite::Cauchy, "control x2*I1", crit, e),
        },
    );
    SuiteOutput {
        checks,
        facts: vec![],
    }
}

fn circle_name(i: usize) -> &'static str {
    [
        "circle(x1,x2) r=1",
        "circle(x1,x2) r=0.5",
        "circle(tilted) r=1",
    ][i.min(2)]
}

fn lambda(ctx: &Context) -> SuiteOutput {
    let circles = standard_circles(&ctx.frame);
    let in_s = theorem6_predicate(&ctx.frame, &ctx.alg).unwrap_or(false);
    let mut checks = Vec::new();
    let mut facts = Vec::new();
    let crit = Criterion::at_most(tolerances::LAMBDA);
    match lambda_variation(&ctx.frame, &ctx.alg, &circles, &ctx.lab) {
        Ok(v) => {
            for (i, r) in v.reports.iter().enumerate() {
                let name = circle_name(i);
                checks.push(CheckRecord::from_report(
                    Suite::Lambda,
                    format!("lambda on {name}"),
                    r.to_report("lambda", crit),
                ));
                checks.push(CheckRecord::scalar(
                    Suite::Lambda,
                    format!("idempotent part on {name}"),
                    r.idempotent_residual,
                    Criterion::at_most(tolerances::LAMBDA_IDEMPOTENT),
                ));
                checks.push(CheckRecord::scalar(
                    Suite::Lambda,
                    format!("sigma route on {name}"),
                    r.sigma_route_gap,
                    Criterion::at_most(tolerances::LAMBDA_IDEMPOTENT),
                ));
                if in_s {
                    checks.push(CheckRecord::scalar(
                        Suite::Lambda,
                        format!("nilpotent sigma on {name}"),
                        r.nilpotent_residual,
                        Criterion::at_most(tolerances::S_FRAME_NILPOTENT),
                    ));
                }
            }
            facts.push(Fact {
                name: "lambda spread across circles".into(),
                value: json!(v.spread),
            });
        }
        Err(e) => checks.push(CheckRecord::failed(Suite::Lambda, "lambda", crit, e)),
    }
    SuiteOutput { checks, facts }
}

/// `x_0` for the Cauchy formula.
pub fn formula_center(ctx: &Context) -> Vec<f64> {
    if let Some(c) = &ctx.center {
        return c.clone();
    }
    let base = [0.1, 0.2, -0.1, 0.05];
    (0..ctx.k())
        .map(|i| base.get(i).copied().unwrap_or(0.0))
        .collect()
}

/// Circles of radius 0.3 and 0.7 around `x_0` and an irregular pentagon, all in the
/// `(x_1, x_2)` plane.
pub fn formula_curves(x0: &[f64]) -> Vec<(String, Curve)> {
    let circle = |r: f64| Curve::coordinate_circle(x0.to_vec(), r, 1, 2).expect("valid");
    let radii = [0.6, 0.9, 0.5, 0.8, 0.7];
    let pentagon = radii
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let a = std::f64::consts::TAU * (i as f64 + 0.3) / 5.0;
            let mut p = x0.to_vec();
            p[0] += r * a.cos();
            p[1] += r * a.sin();
            p
        })
        .collect();
    vec![
        ("circle r=0.3".into(), circle(0.3)),
        ("circle r=0.7".into(), circle(0.7)),
        (
            "pentagon".into(),
            Curve::polyline(pentagon, true).expect("valid"),
        ),
    ]
}

fn formula(ctx: &Context) -> SuiteOutput {
    let x0 = formula_center(ctx);
    let crit = Criterion::at_most(tolerances::CAUCHY_FORMULA);
    let curves = formula_curves(&x0);
    let mut checks = Vec::new();
    for phi in formula_set(ctx) {
        let mut values: Vec<Option<Element>> = Vec::new();
        for (cname, curve) in &curves {
            let name = format!("{} on {cname}", label(&phi));
            match cauchy_formula_check(
                &phi,
                &x0,
                curve,
                &ctx.frame,
                &ctx.alg,
                &ctx.lab.quadrature,
                Some(crit),
            ) {
                Ok(r) => {
                    let w = r.windings.clone().unwrap_or_default();
                    let off = w.iter().map(|v| (v - 1).abs()).max().unwrap_or(1);
                    values.push(Some(r.value.clone()));
                    checks.push(CheckRecord::from_report(Suite::Formula, name.clone(), r));
                    checks.push(
                        CheckRecord::scalar(
                            Suite::Formula,
                            format!("windings of {cname}"),
                            off as f64,
                            Criterion::at_most(0.0),
                        )
                        .with_note(format!("windings {w:?}")),
                    );
                }
                Err(e) => {
                    values.push(None);
                    checks.push(CheckRecord::failed(Suite::Formula, name, crit, e));
                }
            }
        }
        if let (Some(Some(a)), Some(Some(b))) = (values.first(), values.get(1)) {
            checks.push(CheckRecord::scalar(
                Suite::Formula,
                format!("{} homotopy r=0.3 vs r=0.7", label(&phi)),
                a.distance(b),
                Criterion::at_most(2.0 * tolerances::CAUCHY_FORMULA),
            ));
        }
    }
    SuiteOutput {
        checks,
        facts: vec![Fact {
            name: "formula center".into(),
            value: json!(x0),
        }],
    }
}

fn morera(ctx: &Context) -> SuiteOutput {
    let ball = Ball {
        center: vec![0.0; ctx.k()],
        radius: 1.0,
    };
    let n = ctx.morera_triangles;
    let crit = Criterion::at_most(tolerances::MORERA);
    let mut checks = Vec::new();
    for phi in monogenic_set(ctx) {
        let name = label(&phi);
        checks.push(
            match morera_check(
                &phi,
                &ball,
                n,
                ctx.seed,
                &ctx.frame,
                &ctx.alg,
                &ctx.lab,
                Some(crit),
            ) {
                Ok(r) => CheckRecord::from_report(Suite::Morera, name, r),
                Err(e) => CheckRecord::failed(Suite::Morera, name, crit, e),
            },
        );
    }
    let crit = Criterion::at_least(tolerances::MORERA_CONTROL_MIN);
    checks.push(
        match morera_check(
            &control(),
            &ball,
            n,
            ctx.seed,
            &ctx.frame,
            &ctx.alg,
            &ctx.lab,
            Some(crit),
        ) {
            Ok(r) => CheckRecord::from_report(Suite::Morera, "control x2*I1", r),
            Err(e) => CheckRecord::failed(Suite::Morera, "control x2*I1", crit, e),
        },
    );
    SuiteOutput {
        checks,
        facts: vec![],
    }
}

fn lambda_checks(ctx: &Context, frame: &Frame, prefix: &str) -> Vec<CheckRecord> {
    let crit = Criterion::at_most(tolerances::LAMBDA);
    standard_circles(frame)
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let name = format!("{prefix} {}", circle_name(i));
            match compute_lambda(frame, &ctx.alg, c, &ctx.lab.quadrature) {
                Ok(r) => {
                    CheckRecord::from_report(Suite::Predicates, name, r.to_report("lambda", crit))
                }
                Err(e) => CheckRecord::failed(Suite::Predicates, name, crit, e),
            }
        })
        .collect()
}

fn predicates(ctx: &Context) -> SuiteOutput {
    let t5 = theorem5_predicate(&ctx.alg);
    let t6 = theorem6_predicate(&ctx.frame, &ctx.alg).unwrap_or(false);
    let t7 = theorem7_predicate(&ctx.frame, &ctx.alg).ok();
    let mut facts = vec![
        Fact {
            name: "theorem5".into(),
            value: json!({
                "holds": t5.holds,
                "condition": t5.condition,
                "reason": t5.reason,
                "max_product": t5.max_product,
            }),
        },
        Fact {
            name: "theorem6 (frame in S)".into(),
            value: json!(t6),
        },
        Fact {
            name: "theorem7 (frame)".into(),
            value: t7.map_or(json!("n/a: dim N != 4"), |b| json!(b)),
        },
    ];
    let mut checks = Vec::new();
    if t5.holds || t6 || t7 == Some(true) {
        checks.extend(lambda_checks(
            ctx,
            &ctx.frame,
            "lambda (predicate holds) on",
        ));
    }
    if ctx.alg.nilpotent_dim() == 4 {
        if let Ok(f7) = builtins::theorem7_frame(&ctx.alg) {
            if theorem7_predicate(&f7, &ctx.alg).unwrap_or(false) {
                checks.extend(lambda_checks(ctx, &f7, "lambda (theorem7 frame) on"));
            }
        }
    }
    if checks.is_empty() {
        facts.push(Fact {
            name: "consistency".into(),
            value: json!("no predicate holds; lambda is only measured by the lambda suite"),
        });
    }
    SuiteOutput { checks, facts }
}
