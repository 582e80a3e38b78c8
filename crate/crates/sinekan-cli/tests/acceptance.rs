//! Acceptance gauntlet: nine end-to-end criteria covering the Taylor
//! remainder certificates, the Bernstein stage, the amplitude solve,
//! the full construction pipeline, the solver, both benchmark
//! orderings, the metrics layer, and artifact determinism.
//!
//! Each criterion prints exactly one PASS/FAIL line (visible with
//! `--nocapture`, and always on failure); the test fails if any
//! criterion does. Criteria with a wall-clock budget fail when they
//! exceed it even if every check inside passed.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::panic;
use std::process::Command;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sinekan::benchfns::{BenchFunction1D, BenchFunction2D};
use sinekan::constructive::{
    bernstein_eval, build_lemma4_matrix, construct_sine_approx, construction_phases,
    default_grid, remainder_bound, solve_amplitudes, taylor_sine_eval, verify_construction,
    FrequencyRule, PolynomialCoeffs,
};
use sinekan::experiments::{
    fit_model_on, realize_budget, sample_function_1d, sample_function_2d, ModelFamily2d,
};
use sinekan::metrics::{model_flops, relative_l2, CostModel};
use sinekan::models::{InputBatch, ModelSpec};
use sinekan::solver::{fit, fit_linear, LeastSquaresProblem, SolverConfig};

type Check = fn() -> Result<String, String>;

struct Criterion {
    name: &'static str,
    budget_secs: Option<f64>,
    run: Check,
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion { name: "1 (taylor remainder certificates)", budget_secs: Some(1.0), run: c1_taylor_certificates },
        Criterion { name: "2 (bernstein approximation)", budget_secs: Some(1.0), run: c2_bernstein },
        Criterion { name: "3 (amplitude solve round trip)", budget_secs: Some(1.0), run: c3_round_trip },
        Criterion { name: "4 (certified construction)", budget_secs: Some(1.0), run: c4_certified_pipeline },
        Criterion { name: "5 (trust region solver)", budget_secs: Some(10.0), run: c5_solver },
        Criterion { name: "6 (1d benchmark ordering)", budget_secs: Some(300.0), run: c6_bench1d_ordering },
        Criterion { name: "7 (2d benchmark ordering)", budget_secs: Some(1800.0), run: c7_bench2d_ordering },
        Criterion { name: "8 (metrics and cost model)", budget_secs: Some(1.0), run: c8_metrics_and_flops },
        Criterion { name: "9 (artifact determinism)", budget_secs: None, run: c9_csv_determinism },
    ];

    let mut failed = 0usize;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.run);
        let secs = start.elapsed().as_secs_f64();
        let result = match outcome {
            Ok(r) => r,
            Err(payload) => Err(panic_text(payload.as_ref())),
        };
        let result = result.and_then(|detail| match c.budget_secs {
            Some(b) if secs > b => Err(format!(
                "over the {b:.0} s budget at {secs:.1} s (checks themselves passed: {detail})"
            )),
            _ => Ok(detail),
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS [{secs:.1}s] {detail}", c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL [{secs:.1}s] {why}", c.name);
            }
        }
    }
    assert!(failed == 0, "{failed} of {} acceptance criteria failed", criteria.len());
}

fn panic_text(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        format!("panicked: {s}")
    } else if let Some(s) = payload.downcast_ref::<String>() {
        format!("panicked: {s}")
    } else {
        "panicked".into()
    }
}

/// 200 seeded draws of (N, omega, alpha, x) with N <= 12,
/// omega in [0, 2pi], alpha in [0, pi/2], x in [0, 1]: the truncation
/// error never exceeds the uniform bound (2pi)^(N+1)/(N+1)!.
fn c1_taylor_certificates() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let draws = 200usize;
    let mut slimmest = f64::INFINITY;
    for _ in 0..draws {
        let degree = rng.gen_range(0..=12usize);
        let omega = rng.gen_range(0.0..=TAU);
        let alpha = rng.gen_range(0.0..=FRAC_PI_2);
        let x = rng.gen_range(0.0..=1.0);
        let err = (taylor_sine_eval(degree, omega, alpha, x) - (omega * x + alpha).sin()).abs();
        let bound = remainder_bound(degree);
        if err > bound {
            return Err(format!(
                "bound violated at N={degree} omega={omega:.6} alpha={alpha:.6} x={x:.6}: \
                 error {err:.3e} > bound {bound:.3e}"
            ));
        }
        slimmest = slimmest.min(bound - err);
    }
    Ok(format!("{draws}/{draws} draws within the bound, slimmest margin {slimmest:.3e}"))
}

/// Bernstein operator: exact on constants and linears, the classic
/// x^2 value at N=2, bit-exact endpoint interpolation, and strictly
/// decreasing sup error on sin(3x) as N doubles.
fn c2_bernstein() -> Result<String, String> {
    let grid: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
    let sample = |f: &dyn Fn(f64) -> f64, n: usize| -> Vec<f64> {
        (0..=n).map(|j| f(j as f64 / n as f64)).collect()
    };

    let constant = |_: f64| 0.7;
    let s = sample(&constant, 5);
    for &x in &grid {
        if (bernstein_eval(&s, x) - 0.7).abs() >= 1e-12 {
            return Err(format!("constant not reproduced at x={x}"));
        }
    }

    let linear = |x: f64| 2.5 * x - 0.3;
    let s = sample(&linear, 7);
    for &x in &grid {
        if (bernstein_eval(&s, x) - linear(x)).abs() >= 1e-12 {
            return Err(format!("linear not reproduced at x={x}"));
        }
    }

    let quad = bernstein_eval(&[0.0, 0.25, 1.0], 0.5);
    if (quad - 0.375).abs() > 1e-12 {
        return Err(format!("x^2 at N=2, x=0.5 gave {quad}, expected 0.375"));
    }

    let f = |x: f64| (3.0 * x).sin();
    let s = sample(&f, 9);
    if bernstein_eval(&s, 0.0) != s[0] || bernstein_eval(&s, 1.0) != s[9] {
        return Err("endpoint interpolation is not bit exact".into());
    }

    let mut sups = Vec::new();
    for n in [8usize, 16, 32, 64] {
        let s = sample(&f, n);
        let sup = grid
            .iter()
            .map(|&x| (bernstein_eval(&s, x) - f(x)).abs())
            .fold(0.0f64, f64::max);
        if let Some(&prev) = sups.last() {
            if sup >= prev {
                return Err(format!("sup error did not decrease: {prev:.3e} then {sup:.3e} at N={n}"));
            }
        }
        sups.push(sup);
    }

    Ok(format!(
        "constants/linears exact, x^2 value {quad:.3}, endpoints bit exact, \
         sin(3x) sups {:.2e} > {:.2e} > {:.2e} > {:.2e}",
        sups[0], sups[1], sups[2], sups[3]
    ))
}

/// Amplitude solve round trip: random monomial coefficients are
/// recovered from the solved amplitudes through the raw design matrix
/// within relative 1e-6 for N in {2, 4, 8}, the solve reports its
/// condition numbers, and the 1x1 case is the literal division.
fn c3_round_trip() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3001);
    let mut conds = Vec::new();
    for degree in [2usize, 4, 8] {
        let rule = FrequencyRule::default();
        let omegas = rule.frequencies(degree).map_err(|e| format!("{e}"))?;
        let alphas = construction_phases(degree, FRAC_PI_2);
        let b: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let solve = solve_amplitudes(&PolynomialCoeffs { coeffs: b.clone() }, &omegas, &alphas)
            .map_err(|e| format!("solve failed at N={degree}: {e}"))?;
        if !solve.cond_equilibrated.is_finite() || solve.cond_equilibrated < 1.0 {
            return Err(format!("no usable condition number at N={degree}"));
        }

        // Row l of the raw system divided by l! is the degree-l monomial
        // coefficient of the reconstructed sine sum.
        let m = build_lemma4_matrix(&omegas, &alphas);
        let scale = b.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        let mut fact = 1.0;
        let mut worst = 0.0f64;
        for l in 0..=degree {
            if l > 0 {
                fact *= l as f64;
            }
            let recon: f64 = (0..=degree)
                .map(|k| m[(l, k)] * solve.amplitudes[k])
                .sum::<f64>()
                / fact;
            worst = worst.max((recon - b[l]).abs() / scale);
        }
        if worst > 1e-6 {
            return Err(format!("round trip at N={degree}: relative error {worst:.3e} > 1e-6"));
        }
        conds.push(solve.cond_equilibrated);
    }

    let one = solve_amplitudes(&PolynomialCoeffs { coeffs: vec![0.37] }, &[1.0], &[0.9])
        .map_err(|e| format!("1x1 solve failed: {e}"))?;
    if one.amplitudes[0] != 0.37 / 0.9f64.sin() {
        return Err("1x1 solve is not the literal division b0/sin(alpha0)".into());
    }

    Ok(format!(
        "N in {{2,4,8}} recovered within 1e-6 (equilibrated conditions {:.1e}, {:.1e}, {:.1e}), 1x1 exact",
        conds[0], conds[1], conds[2]
    ))
}

/// Full pipeline: f(x)=x at N=6 stays within its own certificate with
/// a negligible Bernstein term; f=1 at N=4 is reproduced to 1e-6.
fn c4_certified_pipeline() -> Result<String, String> {
    let rule = FrequencyRule::default();
    let grid = default_grid();

    let c = construct_sine_approx(|x| x, 6, FRAC_PI_2, &rule, 42)
        .map_err(|e| format!("construction of f(x)=x failed: {e}"))?;
    let rep = verify_construction(&c, |x| x, &grid);
    if rep.sup_error > c.certificate.total {
        return Err(format!(
            "grid sup {:.3e} exceeds the certificate {:.3e}",
            rep.sup_error, c.certificate.total
        ));
    }
    if c.certificate.bernstein_term >= 1e-12 {
        return Err(format!(
            "Bernstein term {:.3e} not below 1e-12 for a linear target",
            c.certificate.bernstein_term
        ));
    }

    let c1 = construct_sine_approx(|_| 1.0, 4, FRAC_PI_2, &rule, 42)
        .map_err(|e| format!("construction of f=1 failed: {e}"))?;
    let rep1 = verify_construction(&c1, |_| 1.0, &grid);
    if rep1.sup_error >= 1e-6 {
        return Err(format!("f=1 at N=4: grid sup {:.3e} not below 1e-6", rep1.sup_error));
    }

    Ok(format!(
        "f(x)=x at N=6: sup {:.3e} <= certificate {:.3e}, Bernstein term {:.1e}; f=1 at N=4: sup {:.3e}",
        rep.sup_error, c.certificate.total, c.certificate.bernstein_term, rep1.sup_error
    ))
}

/// Solver: Rosenbrock convergence with a monotone accepted-step
/// history, agreement with the direct linear solve, an active bound
/// pinned exactly, and analytic Jacobians of every model family
/// matching central differences on 20 seeded draws each.
fn c5_solver() -> Result<String, String> {
    // Rosenbrock residuals from the classic start.
    let rosenbrock = LeastSquaresProblem::new(
        vec![-1.2, 1.0],
        2,
        |p| DVector::from_column_slice(&[10.0 * (p[1] - p[0] * p[0]), 1.0 - p[0]]),
        |p| DMatrix::from_row_slice(2, 2, &[-20.0 * p[0], 10.0, -1.0, 0.0]),
    );
    let config = SolverConfig { max_iterations: 200, ..SolverConfig::default() };
    let report = fit(&rosenbrock, &config).map_err(|e| format!("rosenbrock fit failed: {e}"))?;
    if report.final_cost >= 1e-12 {
        return Err(format!("rosenbrock final cost {:.3e} not below 1e-12", report.final_cost));
    }
    if (report.params[0] - 1.0).abs() > 1e-6 || (report.params[1] - 1.0).abs() > 1e-6 {
        return Err(format!("rosenbrock converged to {:?}, not (1, 1)", report.params));
    }
    for w in report.residual_norm_history.windows(2) {
        if w[1] > w[0] * (1.0 + 1e-12) {
            return Err(format!("history not monotone: {} then {}", w[0], w[1]));
        }
    }

    // A well conditioned linear problem agrees with the direct solve.
    let mut rng = ChaCha8Rng::seed_from_u64(5001);
    let (m, n) = (40usize, 6usize);
    let design = DMatrix::from_fn(m, n, |_, _| rng.gen_range(-1.0..=1.0));
    let truth: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..=2.0)).collect();
    let targets: Vec<f64> = (0..m)
        .map(|i| {
            (0..n).map(|j| design[(i, j)] * truth[j]).sum::<f64>() + 0.01 * rng.gen_range(-1.0..=1.0)
        })
        .collect();
    let direct = fit_linear(&design, &targets).map_err(|e| format!("fit_linear failed: {e}"))?;
    let design_ref = &design;
    let targets_ref = &targets;
    let linear = LeastSquaresProblem::new(
        vec![0.0; n],
        m,
        move |p| design_ref * DVector::from_column_slice(p) - DVector::from_column_slice(targets_ref),
        move |_| design_ref.clone(),
    );
    let iterated = fit(&linear, &SolverConfig::default())
        .map_err(|e| format!("linear fit failed: {e}"))?;
    let linear_gap = direct
        .iter()
        .zip(&iterated.params)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    if linear_gap > 1e-8 {
        return Err(format!("iterative and direct linear solutions differ by {linear_gap:.3e}"));
    }

    // Unconstrained optimum 3.0 sits above the box; the fit must pin
    // the upper bound.
    let bounded = LeastSquaresProblem::new(
        vec![0.5],
        1,
        |p| DVector::from_element(1, p[0] - 3.0),
        |_| DMatrix::from_element(1, 1, 1.0),
    )
    .with_bounds(vec![0.0], vec![2.0]);
    let pinned = fit(&bounded, &SolverConfig::default())
        .map_err(|e| format!("bounded fit failed: {e}"))?;
    if (pinned.params[0] - 2.0).abs() > 1e-9 || pinned.params[0] > 2.0 + 1e-15 {
        return Err(format!("active bound not pinned: got {}", pinned.params[0]));
    }

    // Analytic Jacobians against central differences, 20 seeded draws
    // per family, mixed absolute/relative tolerance 1e-5.
    let xs1 = InputBatch::from_1d(&[0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95]);
    let mut pts = Vec::new();
    for &a in &[0.12, 0.5, 0.88] {
        for &b in &[0.12, 0.5, 0.88] {
            pts.push(a);
            pts.push(b);
        }
    }
    let xs2 = InputBatch::new(2, pts).map_err(|e| format!("bad 2d batch: {e}"))?;
    let families: [(&str, usize); 6] = [
        ("sinekan1d:G=4", 1),
        ("fourier:K=3", 1),
        ("sinekan2:G1=3,H=4,G2=3", 2),
        ("mlp:H=5,act=relu", 2),
        ("mlp:H=5,act=sine", 2),
        ("fourier2d:K=2", 2),
    ];
    let h = 1e-6;
    let mut checked = 0usize;
    let mut worst_dev = 0.0f64;
    for (idx, (spec_str, dim)) in families.iter().enumerate() {
        let spec: ModelSpec = spec_str.parse().map_err(|e| format!("{spec_str}: {e}"))?;
        let mut model = spec.instantiate(*dim).map_err(|e| format!("{spec_str}: {e}"))?;
        let xs = if *dim == 1 { &xs1 } else { &xs2 };
        for seed in 0..20u64 {
            let base = model.init_params(seed);
            let mut jitter = ChaCha8Rng::seed_from_u64(9000 + 31 * idx as u64 + seed);
            let params: Vec<f64> = base.iter().map(|v| v + jitter.gen_range(-0.4..=0.4)).collect();
            model.set_params(&params).map_err(|e| format!("{spec_str}: {e}"))?;
            let jac = model.jacobian_batch(xs).map_err(|e| format!("{spec_str}: {e}"))?;
            for j in 0..params.len() {
                let mut plus = params.clone();
                plus[j] += h;
                let mut minus = params.clone();
                minus[j] -= h;
                model.set_params(&plus).unwrap();
                let fp = model.forward_batch(xs).unwrap();
                model.set_params(&minus).unwrap();
                let fm = model.forward_batch(xs).unwrap();
                for i in 0..fp.len() {
                    let fd = (fp[i] - fm[i]) / (2.0 * h);
                    let dev = (jac[(i, j)] - fd).abs() / (1.0 + jac[(i, j)].abs());
                    worst_dev = worst_dev.max(dev);
                    if dev > 1e-5 {
                        return Err(format!(
                            "{spec_str} seed {seed}: Jacobian entry ({i}, {j}) is {} but \
                             central difference gives {fd} (deviation {dev:.3e})",
                            jac[(i, j)]
                        ));
                    }
                }
            }
            model.set_params(&params).unwrap();
            checked += 1;
        }
    }

    Ok(format!(
        "rosenbrock cost {:.1e} with monotone history, linear gap {linear_gap:.1e}, \
         bound pinned at 2, {checked} Jacobian draws across {} families (worst deviation {worst_dev:.1e})",
        report.final_cost,
        families.len()
    ))
}

/// 1d ordering at grid 100 with parameter matched models: best of 5
/// starts sinekan1d:G=8 beats fourier:K=8 on f1, f2, f3; on f4 the two
/// agree within one order of magnitude.
fn c6_bench1d_ordering() -> Result<String, String> {
    let sk: ModelSpec = "sinekan1d:G=8".parse().map_err(|e| format!("{e}"))?;
    let fo: ModelSpec = "fourier:K=8".parse().map_err(|e| format!("{e}"))?;
    let (psk, pfo) = (sk.param_count(1), fo.param_count(1));
    if psk.abs_diff(pfo) * 10 > psk.max(pfo) {
        return Err(format!("models not parameter matched within 10%: {psk} vs {pfo}"));
    }
    let config = SolverConfig { max_iterations: 200, seed: 42, ..SolverConfig::default() };
    let cases = [
        ("f1", BenchFunction1D::f1(), true),
        ("f2", BenchFunction1D::f2(), true),
        ("f3", BenchFunction1D::f3(), true),
        ("f4", BenchFunction1D::f4(), false),
    ];
    let mut lines = Vec::new();
    for (name, func, strict) in cases {
        let data = sample_function_1d(&func, 100).map_err(|e| format!("{name}: {e}"))?;
        let sine = fit_model_on(&sk, &data, &config, 5).map_err(|e| format!("{name}: {e}"))?;
        let four = fit_model_on(&fo, &data, &config, 1).map_err(|e| format!("{name}: {e}"))?;
        if strict {
            if sine.rel_l2 >= four.rel_l2 {
                return Err(format!(
                    "{name}: sinekan {:.3e} not below fourier {:.3e}",
                    sine.rel_l2, four.rel_l2
                ));
            }
        } else {
            let ratio = sine.rel_l2 / four.rel_l2;
            if !(0.1..=10.0).contains(&ratio) {
                return Err(format!(
                    "{name}: errors {:.3e} and {:.3e} differ by more than one order of magnitude",
                    sine.rel_l2, four.rel_l2
                ));
            }
        }
        lines.push(format!("{name} {:.1e}/{:.1e}", sine.rel_l2, four.rel_l2));
    }
    Ok(format!(
        "sinekan1d:G=8 vs fourier:K=8 at {psk}/{pfo} params, rel L2 sine/fourier: {}",
        lines.join(", ")
    ))
}

/// 2d ordering at the largest shared parameter budget: on both
/// functions the strict chain sinekan2 < mlp:sine < mlp:relu <
/// fourier2d holds for relative L2 error.
fn c7_bench2d_ordering() -> Result<String, String> {
    let budget = 121usize;
    let config = SolverConfig { max_iterations: 300, seed: 42, ..SolverConfig::default() };
    let order = [
        ModelFamily2d::SineKan2,
        ModelFamily2d::MlpSine,
        ModelFamily2d::MlpRelu,
        ModelFamily2d::Fourier2d,
    ];
    let mut specs = Vec::new();
    for family in order {
        let spec = realize_budget(family, budget).map_err(|e| format!("{e}"))?;
        let count = spec.param_count(2);
        if count.abs_diff(budget) * 10 > budget {
            return Err(format!("{spec} realizes {count} params, not within 10% of {budget}"));
        }
        specs.push(spec);
    }

    let mut lines = Vec::new();
    for func in [BenchFunction2D::gaussian_wells(), BenchFunction2D::rosenbrock()] {
        let data = sample_function_2d(&func, 100).map_err(|e| format!("{e}"))?;
        let mut errs = Vec::new();
        for spec in &specs {
            let starts = if spec.is_linear() { 1 } else { 3 };
            let outcome =
                fit_model_on(spec, &data, &config, starts).map_err(|e| format!("{spec}: {e}"))?;
            errs.push(outcome.rel_l2);
        }
        let labels = ["sinekan2", "mlp:sine", "mlp:relu", "fourier2d"];
        for i in 0..3 {
            if errs[i] >= errs[i + 1] {
                return Err(format!(
                    "{}: {} at {:.3e} is not below {} at {:.3e}",
                    func.name(),
                    labels[i],
                    errs[i],
                    labels[i + 1],
                    errs[i + 1]
                ));
            }
        }
        lines.push(format!(
            "{} {:.1e} < {:.1e} < {:.1e} < {:.1e}",
            func.name(),
            errs[0],
            errs[1],
            errs[2],
            errs[3]
        ));
    }
    Ok(format!(
        "budget {budget}: sinekan2 < mlp:sine < mlp:relu < fourier2d on both functions ({})",
        lines.join("; ")
    ))
}

/// Metrics: relative L2 reference values and exact scale invariance,
/// the default cost model's serialized weights, and model_flops
/// matching itemized hand counts.
fn c8_metrics_and_flops() -> Result<String, String> {
    let exact = relative_l2(&[1.0, 2.0, 2.0], &[1.0, 2.0, 2.0]).map_err(|e| format!("{e}"))?;
    if exact != 0.0 {
        return Err(format!("identical vectors gave {exact}, not 0"));
    }
    let unit = relative_l2(&[3.0, 4.0], &[0.0, 0.0]).map_err(|e| format!("{e}"))?;
    if (unit - 1.0).abs() > 1e-15 {
        return Err(format!("zero fit gave {unit}, not 1"));
    }
    let half = relative_l2(&[2.0, 0.0], &[1.0, 0.0]).map_err(|e| format!("{e}"))?;
    if (half - 0.5).abs() > 1e-15 {
        return Err(format!("half-off fit gave {half}, not 0.5"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8001);
    let y: Vec<f64> = (0..64).map(|_| rng.gen_range(-3.0..=3.0)).collect();
    let yf: Vec<f64> = y.iter().map(|v| v + rng.gen_range(-0.1..=0.1)).collect();
    let base = relative_l2(&y, &yf).map_err(|e| format!("{e}"))?;
    let pow2 = 2f64.powi(40);
    let scaled = relative_l2(
        &y.iter().map(|v| v * pow2).collect::<Vec<_>>(),
        &yf.iter().map(|v| v * pow2).collect::<Vec<_>>(),
    )
    .map_err(|e| format!("{e}"))?;
    if scaled != base {
        return Err(format!("power of two scaling moved the value: {base} vs {scaled}"));
    }
    let c = 3.7e7;
    let decimal = relative_l2(
        &y.iter().map(|v| v * c).collect::<Vec<_>>(),
        &yf.iter().map(|v| v * c).collect::<Vec<_>>(),
    )
    .map_err(|e| format!("{e}"))?;
    if (decimal - base).abs() > 1e-12 * base {
        return Err(format!("decimal scaling moved the value: {base} vs {decimal}"));
    }

    let cost = CostModel::default();
    let json = serde_json::to_string(&cost).map_err(|e| format!("{e}"))?;
    if json != r#"{"add":1.0,"mul":1.0,"relu":1.5,"sin":12.0}"# {
        return Err(format!("default cost model serialized as {json}"));
    }

    // G=1 sine layer, by hand: omega*x and A*sin(..) multiplies, the
    // phase shift plus the accumulate and bias adds, one sine.
    let sk_shape = "sinekan1d:G=1".parse::<ModelSpec>().map_err(|e| format!("{e}"))?.shape(1);
    let sk_hand = 2.0 * cost.mul + 3.0 * cost.add + 1.0 * cost.sin;
    let sk_flops = model_flops(&sk_shape, &cost);
    if sk_flops != sk_hand || sk_hand != 17.0 {
        return Err(format!("sinekan G=1 flops {sk_flops} != hand count {sk_hand}"));
    }

    // 1-1-1 relu MLP, itemized term by term:
    // (W1*x: 1 mul) + (beta1: 1 add) + (relu: 1.5) + (W2*h: 1 mul) + (beta2: 1 add).
    let mlp_shape = "mlp:H=1,act=relu".parse::<ModelSpec>().map_err(|e| format!("{e}"))?.shape(1);
    let mlp_hand = cost.mul + cost.add + cost.relu + cost.mul + cost.add;
    let mlp_flops = model_flops(&mlp_shape, &cost);
    if mlp_flops != mlp_hand {
        return Err(format!("mlp 1-1-1 flops {mlp_flops} != itemized hand count {mlp_hand}"));
    }

    Ok(format!(
        "reference values and scale invariance hold, default weights {{1, 1, 1.5, 12}}, \
         hand counts match: sinekan G=1 = {sk_hand}, mlp 1-1-1 relu = {mlp_hand}"
    ))
}

/// Re-running bench1d with identical flags produces a byte identical
/// CSV, exercised through the installed binary itself.
fn c9_csv_determinism() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_sinekan");
    let root = std::env::temp_dir().join(format!("sinekan-acceptance-{}", std::process::id()));
    let dirs = [root.join("run1"), root.join("run2")];
    let mut bodies: Vec<Vec<u8>> = Vec::new();
    for dir in &dirs {
        let output = Command::new(bin)
            .args([
                "bench1d",
                "--funcs",
                "f1,f2",
                "--grids",
                "25,50",
                "--models",
                "sinekan1d:G=4",
                "--models",
                "fourier:K=4",
                "--starts",
                "2",
                "--max-iter-per-param",
                "20",
                "--seed",
                "42",
                "--no-plots",
                "--out",
            ])
            .arg(dir)
            .output()
            .map_err(|e| format!("failed to launch bench1d: {e}"))?;
        if !output.status.success() {
            let _ = std::fs::remove_dir_all(&root);
            return Err(format!(
                "bench1d exited nonzero: {}",
                String::from_utf8_lossy(&output.stderr)
            ));
        }
        bodies.push(
            std::fs::read(dir.join("bench1d.csv")).map_err(|e| format!("missing bench1d.csv: {e}"))?,
        );
    }
    let identical = bodies[0] == bodies[1];
    let rows = bodies[0].split(|&b| b == b'\n').filter(|l| !l.is_empty()).count();
    let _ = std::fs::remove_dir_all(&root);
    if !identical {
        return Err("a re-run with identical flags produced a different bench1d.csv".into());
    }
    if rows != 10 {
        return Err(format!("expected meta + header + 8 rows, found {rows} lines"));
    }
    Ok(format!(
        "two bench1d runs agree byte for byte ({} bytes, 8 data rows)",
        bodies[0].len()
    ))
}
