//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

use std::process::{Command, ExitCode};

use cartan_cli::suites::{self, Context};
use cartan_core::integral::{
    cauchy_formula_check, cauchy_theorem_check, compute_lambda, morera_check, standard_circles,
    Ball, Criterion,
};
use cartan_core::predicates::{theorem5_predicate, theorem7_predicate};
use cartan_core::resolvent::{inverse, resolvent};
use cartan_core::{builtins, tolerances, Algebra, Frame, QuadratureOptions};

type Outcome = Result<String, String>;
type Entry = (&'static str, fn() -> Outcome);

const SEED: u64 = 7;

fn examples() -> Vec<(String, Algebra)> {
    (1..=4)
        .map(|i| (format!("example{i}"), builtins::example_algebra(i)))
        .collect()
}

/// The four examples plus the semisimple family for m = 1, 2, 3.
fn builtin_algebras() -> Vec<(String, Algebra)> {
    let mut v = examples();
    for m in 1..=3 {
        let name = format!("semisimple:m={m}");
        let alg = builtins::algebra_by_name(&name).unwrap();
        v.push((name, alg));
    }
    v
}

fn ctx(alg: &Algebra, frame: Frame) -> Context {
    Context::new(alg.clone(), frame, SEED)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn algebra_axioms() -> Outcome {
    let mut worst: f64 = 0.0;
    for (name, alg) in examples() {
        let r = alg.validate();
        ensure(r.passed(), || format!("{name} fails validation: {r:?}"))?;
        let a = r.assoc_a1_max_residual.max(r.assoc_a2_max_residual);
        ensure(a <= tolerances::ASSOCIATIVITY, || {
            format!("{name}: associativity residual {a:e}")
        })?;
        worst = worst.max(a);
    }
    Ok(format!(
        "max associativity residual {worst:.1e} over example1..example4"
    ))
}

fn inverse_oracle() -> Outcome {
    let mut worst_inv: f64 = 0.0;
    let mut worst_res: f64 = 0.0;
    let mut total = 0;
    for (name, alg) in builtin_algebras() {
        let c = ctx(&alg, builtins::default_frame(&alg));
        let samples = suites::invertible_samples(&c, 1000);
        for (x, t) in &samples {
            let zeta = c.frame.embed(x).unwrap();
            let inv = inverse(&c.frame, x, &alg).map_err(|e| format!("{name}: {e}"))?;
            let oracle = alg
                .oracle_inverse(&zeta)
                .map_err(|e| format!("{name}: {e}"))?;
            let r = resolvent(*t, &c.frame, x, &alg).map_err(|e| format!("{name}: {e}"))?;
            let shifted = &alg.unit().scale(*t) - &zeta;
            worst_inv = worst_inv.max(inv.distance(&oracle));
            worst_res = worst_res.max(alg.mul(&shifted, &r).distance(&alg.unit()));
        }
        total += samples.len();
    }
    ensure(
        worst_inv <= tolerances::INVERSE_ORACLE && worst_res <= tolerances::INVERSE_ORACLE,
        || format!("inverse {worst_inv:e}, resolvent {worst_res:e}"),
    )?;
    Ok(format!(
        "{total} points: max |inverse - oracle| {worst_inv:.1e}, max |(te1 - zeta)R - 1| {worst_res:.1e}"
    ))
}

fn cauchy_riemann() -> Outcome {
    let (lo, hi) = tolerances::CR_RATIO;
    let mut ratios: Vec<f64> = Vec::new();
    let mut exact = 0;
    let mut worst_abs: f64 = 0.0;
    for (name, alg) in builtin_algebras() {
        let c = ctx(&alg, builtins::default_frame(&alg));
        let x: Vec<f64> = [0.31, -0.27, 0.18][..c.frame.k()].to_vec();
        for phi in suites::monogenic_set(&c) {
            let label = suites::label(&phi);
            let o = suites::cr_outcome(&phi, &c, &x).map_err(|e| format!("{name} {label}: {e}"))?;
            let abs = o.at_1e4.iter().copied().fold(0.0, f64::max);
            ensure(abs <= tolerances::CR_ABSOLUTE, || {
                format!("{name} {label}: residual {abs:e} at h=1e-4")
            })?;
            worst_abs = worst_abs.max(abs);
            match o.ratio_deviation() {
                Some(_) => {
                    for (a, r) in o.coarse.iter().zip(o.ratios()) {
                        if *a > tolerances::CR_NOISE_FLOOR {
                            ensure((lo..=hi).contains(&r), || {
                                format!("{name} {label}: ratio {r}")
                            })?;
                            ratios.push(r);
                        }
                    }
                }
                None => exact += 1,
            }
        }
    }
    let rmin = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let rmax = ratios.iter().copied().fold(0.0, f64::max);
    Ok(format!(
        "ratios in [{rmin:.4}, {rmax:.4}], max residual at h=1e-4 {worst_abs:.1e}; \
         {exact} cases truncation-free (zeta, zeta^2: central differences exact, residual at rounding level)"
    ))
}

fn cauchy_theorem() -> Outcome {
    let opts = QuadratureOptions::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut control = f64::INFINITY;
    for (name, alg) in builtin_algebras() {
        let c = ctx(&alg, builtins::default_frame(&alg));
        let curves = suites::closed_curves(&c);
        for phi in suites::monogenic_set(&c) {
            for (cname, curve) in &curves {
                let r = cauchy_theorem_check(&phi, curve, &c.frame, &alg, &opts, None)
                    .map_err(|e| e.to_string())?;
                ensure(r.pass, || {
                    format!(
                        "{name} {} on {cname}: {:e} > {:e}",
                        suites::label(&phi),
                        r.residual,
                        r.tolerance
                    )
                })?;
                ensure(r.residual <= 1e-9, || format!("{name}: {:e}", r.residual))?;
                worst = worst.max(r.residual);
                count += 1;
            }
        }
        let circle = &curves[0].1;
        let r = cauchy_theorem_check(
            &suites::control(),
            circle,
            &c.frame,
            &alg,
            &opts,
            Some(Criterion::at_least(tolerances::CONTROL_MIN)),
        )
        .map_err(|e| e.to_string())?;
        ensure(r.pass, || {
            format!("{name}: control gives only {:e}", r.residual)
        })?;
        control = control.min(r.residual);
    }
    Ok(format!(
        "{count} integrals, max residual {worst:.1e}; control |integral| >= {control:.4}"
    ))
}

fn lambda_all_frames() -> Outcome {
    let opts = QuadratureOptions::default();
    let mut worst: f64 = 0.0;
    let mut worst_idem: f64 = 0.0;
    let mut count = 0;
    for (name, alg) in builtin_algebras() {
        for frame in [builtins::default_frame(&alg), builtins::s_frame(&alg)] {
            for circle in standard_circles(&frame) {
                let r = compute_lambda(&frame, &alg, &circle, &opts)
                    .map_err(|e| format!("{name}: {e}"))?;
                ensure(r.residual <= tolerances::LAMBDA, || {
                    format!("{name}: |lambda - 2 pi i| = {:e}", r.residual)
                })?;
                ensure(
                    r.idempotent_residual <= tolerances::LAMBDA_IDEMPOTENT,
                    || format!("{name}: idempotent residual {:e}", r.idempotent_residual),
                )?;
                worst = worst.max(r.residual);
                worst_idem = worst_idem.max(r.idempotent_residual);
                count += 1;
            }
        }
    }
    Ok(format!("{count} circles: max |lambda - 2 pi i| {worst:.1e}, max idempotent residual {worst_idem:.1e}"))
}

fn s_frame_sharpness() -> Outcome {
    let opts = QuadratureOptions::default();
    let mut worst: f64 = 0.0;
    for (name, alg) in examples() {
        let frame = builtins::s_frame(&alg);
        for circle in standard_circles(&frame) {
            let r =
                compute_lambda(&frame, &alg, &circle, &opts).map_err(|e| format!("{name}: {e}"))?;
            ensure(
                r.nilpotent_residual <= tolerances::S_FRAME_NILPOTENT,
                || format!("{name}: nilpotent residual {:e}", r.nilpotent_residual),
            )?;
            worst = worst.max(r.nilpotent_residual);
        }
    }
    Ok(format!(
        "max nilpotent residual {worst:.1e} with frames inside S"
    ))
}

fn cauchy_formula() -> Outcome {
    let opts = QuadratureOptions::default();
    let crit = Criterion::at_most(tolerances::CAUCHY_FORMULA);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (name, alg) in builtin_algebras() {
        let c = ctx(&alg, builtins::default_frame(&alg));
        let x0 = suites::formula_center(&c);
        for phi in suites::formula_set(&c) {
            for (cname, curve) in suites::formula_curves(&x0) {
                let r = cauchy_formula_check(&phi, &x0, &curve, &c.frame, &alg, &opts, Some(crit))
                    .map_err(|e| format!("{name} on {cname}: {e}"))?;
                let w = r.windings.clone().unwrap_or_default();
                ensure(w.iter().all(|v| *v == 1), || {
                    format!("{name} {cname}: windings {w:?}")
                })?;
                ensure(r.pass, || {
                    format!(
                        "{name} {} on {cname}: {:e}",
                        suites::label(&phi),
                        r.residual
                    )
                })?;
                worst = worst.max(r.residual);
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} checks on radii 0.3, 0.7 and a pentagon: max residual {worst:.1e}, windings all 1"
    ))
}

fn morera() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut control = f64::INFINITY;
    for (name, alg) in builtin_algebras() {
        let c = ctx(&alg, builtins::default_frame(&alg));
        let ball = Ball {
            center: vec![0.0; c.frame.k()],
            radius: 1.0,
        };
        for phi in suites::monogenic_set(&c) {
            let r = morera_check(
                &phi,
                &ball,
                200,
                SEED,
                &c.frame,
                &alg,
                &c.lab,
                Some(Criterion::at_most(tolerances::MORERA)),
            )
            .map_err(|e| format!("{name}: {e}"))?;
            ensure(r.pass, || {
                format!("{name} {}: {:e}", suites::label(&phi), r.residual)
            })?;
            worst = worst.max(r.residual);
        }
        let r = morera_check(
            &suites::control(),
            &ball,
            200,
            SEED,
            &c.frame,
            &alg,
            &c.lab,
            Some(Criterion::at_least(tolerances::MORERA_CONTROL_MIN)),
        )
        .map_err(|e| format!("{name}: {e}"))?;
        ensure(r.pass, || format!("{name}: control max {:e}", r.residual))?;
        control = control.min(r.residual);
    }
    Ok(format!("200 triangles each: max monogenic residual {worst:.1e}; control worst triangle >= {control:.3}"))
}

fn predicates() -> Outcome {
    let opts = QuadratureOptions::default();
    let mut worst: f64 = 0.0;
    for (name, alg) in examples() {
        let t5 = theorem5_predicate(&alg);
        ensure(t5.condition == Some(4), || format!("{name}: {t5:?}"))?;
        ensure(
            t5.products.len() == 14 && t5.products.iter().all(|p| p.norm() == 0.0),
            || format!("{name}: products {:?}", t5.products),
        )?;
        let frame = builtins::theorem7_frame(&alg).map_err(|e| e.to_string())?;
        ensure(theorem7_predicate(&frame, &alg).unwrap(), || {
            format!("{name}: theorem7 frame rejected")
        })?;
        for circle in standard_circles(&frame) {
            let r = compute_lambda(&frame, &alg, &circle, &opts).map_err(|e| e.to_string())?;
            ensure(r.residual <= tolerances::LAMBDA, || {
                format!("{name}: {:e}", r.residual)
            })?;
            worst = worst.max(r.residual);
        }
    }
    Ok(format!("condition 4 with all 14 products 0 for example1..example4; lambda on theorem7 frames within {worst:.1e}"))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_cartan");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |sub: &str, extra: &[&str]| -> Result<Vec<u8>, String> {
        let out = dir.path().join(sub);
        let status = Command::new(bin)
            .args([
                "verify",
                "--algebra",
                "example3",
                "--suite",
                "all",
                "--seed",
                "11",
                "--out",
            ])
            .arg(&out)
            .args(extra)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || {
            String::from_utf8_lossy(&status.stdout).into_owned()
        })?;
        std::fs::read(out.join("report.json")).map_err(|e| e.to_string())
    };
    let a = run("a", &[])?;
    let b = run("b", &[])?;
    let s = run("s", &["--sequential"])?;
    ensure(a == b, || "two runs differ".into())?;
    ensure(a == s, || "parallel and sequential runs differ".into())?;
    Ok(format!(
        "report.json identical across 2 runs and the sequential build path ({} bytes)",
        a.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Entry; 10] = [
        ("algebra axioms", algebra_axioms),
        ("inverse and resolvent vs oracle", inverse_oracle),
        ("Cauchy-Riemann O(h^2)", cauchy_riemann),
        ("Cauchy integral theorem", cauchy_theorem),
        ("lambda = 2 pi i", lambda_all_frames),
        ("frames inside S: nilpotent sigma", s_frame_sharpness),
        ("Cauchy integral formula", cauchy_formula),
        ("Morera identity", morera),
        ("predicates", predicates),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
