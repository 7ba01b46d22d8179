//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use supremal::conditions::{
    check_cartesian_submaximality, check_lsc_numeric, check_separate_submaximality,
    check_submaximal_1d, DEFAULT_LSC_DELTA, DEFAULT_LSC_NET,
};
use supremal::functional::evaluate_h;
use supremal::lab::{
    crosscheck_theorem, demonstrate_sequence, hunt_counterexample, random_grid_supremand,
};
use supremal::supremand::{alphabet_pairs, catalog, Density};
use supremal::{
    CheckReport, ExtReal, GridSupremand, Interval, LocalDensity, StepFunction, SumPolicy,
    TripleGrid,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fin(x: f64) -> ExtReal {
    ExtReal::Finite(x)
}

fn criterion_1_hull() -> Outcome {
    let h = GridSupremand::new(
        vec![1.0, 2.0],
        vec![vec![fin(1.0), fin(0.0)], vec![fin(3.0), fin(2.0)]],
    )
    .map_err(|e| e.to_string())?;
    let hat = h.hull();
    let want = [[1.0, 3.0], [3.0, 2.0]];
    for (i, row) in want.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            ensure(hat.entry(i, j) == fin(v), || {
                format!("hull({i},{j}) = {}, want {v}", hat.entry(i, j))
            })?;
        }
    }
    Ok("hull of [[1,0],[3,2]] is [[1,3],[3,2]]".into())
}

fn random_table(rng: &mut ChaCha8Rng, alphabet: &[f64], levels: usize) -> GridSupremand {
    let rows = alphabet
        .iter()
        .map(|_| {
            alphabet
                .iter()
                .map(|_| fin(rng.random_range(0..levels) as f64))
                .collect()
        })
        .collect();
    GridSupremand::new(alphabet.to_vec(), rows).unwrap()
}

fn random_step(rng: &mut ChaCha8Rng, alphabet: &[f64]) -> StepFunction {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let k = rng.random_range(0..=6usize);
    let breaks: Vec<f64> = (1..=k).map(|i| i as f64 / (k + 1) as f64).collect();
    let jumps: Vec<f64> = (0..k)
        .map(|_| alphabet[rng.random_range(0..alphabet.len())])
        .collect();
    StepFunction::from_jumps(iv, rng.random_range(-2..=2) as f64, &breaks, &jumps).unwrap()
}

fn criterion_2_hull_identity() -> Outcome {
    let alphabet = [1.0, 2.0, 3.0];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for g in 0..500 {
        let h = random_table(&mut rng, &alphabet, 4);
        let hat = h.hull();
        for s in 0..50 {
            let u = random_step(&mut rng, &alphabet);
            let a = evaluate_h(&u, &h).map_err(|e| e.to_string())?.value;
            let b = evaluate_h(&u, &hat).map_err(|e| e.to_string())?.value;
            ensure(a == b, || {
                format!("grid {g}, function {s}: H = {a}, hull H = {b}")
            })?;
        }
    }
    Ok("H(u, h) == H(u, hull h) on 500 grids x 50 functions".into())
}

fn criterion_3_counterexample() -> Outcome {
    let h = catalog("sin-ratio-sum", None).map_err(|e| e.to_string())?;
    let grid = TripleGrid::new(vec![PI / 2.0, PI], SumPolicy::SkipUndefined).unwrap();
    let r = check_cartesian_submaximality(&h, &grid, 1e-12).map_err(|e| e.to_string())?;
    let w = r.witness().ok_or("no witness")?;
    let half = PI / 2.0;
    ensure(w.arguments == vec![half, half, half], || {
        format!("witness {:?}", w.arguments)
    })?;
    let lhs = w.lhs.to_f64();
    let rhs = w.rhs.to_f64();
    ensure((lhs - 2.0 / (3.0 * PI)).abs() <= 1e-12, || {
        format!("lhs {lhs}")
    })?;
    ensure(rhs.abs() <= 1e-12, || format!("rhs {rhs}"))?;
    Ok(format!(
        "witness (pi/2, pi/2, pi/2), lhs {}, rhs {}",
        w.lhs, w.rhs
    ))
}

fn criterion_4_positive_examples() -> Outcome {
    let pts: Vec<f64> = (1..=16).map(|k| k as f64 * PI / 8.0).collect();
    let grid = TripleGrid::new(pts, SumPolicy::SkipUndefined).unwrap();
    let specs = [
        ("sin-ratio-max", None),
        ("sin-ratio-affine", Some("0.25")),
        ("sin-ratio-affine", Some("0.5")),
        ("sin-ratio-affine", Some("0.75")),
    ];
    for (name, param) in specs {
        let h = catalog(name, param).map_err(|e| e.to_string())?;
        let sep = check_separate_submaximality(&h, &grid, 1e-12).map_err(|e| e.to_string())?;
        let cart = check_cartesian_submaximality(&h, &grid, 1e-12).map_err(|e| e.to_string())?;
        ensure(sep.passed(), || format!("{name}:{param:?} separate: {sep}"))?;
        ensure(cart.passed(), || {
            format!("{name}:{param:?} cartesian: {cart}")
        })?;
    }
    Ok("4 supremands pass separate and Cartesian checks on k*pi/8".into())
}

fn criterion_5_crosscheck() -> Outcome {
    let r = crosscheck_theorem(7, 200, &[1.0, 2.0, 3.0], 4).map_err(|e| e.to_string())?;
    ensure(r.agreements == 200 && r.disagreements.is_empty(), || {
        format!(
            "agreements {}, disagreements {:?}",
            r.agreements, r.disagreements
        )
    })?;
    Ok(format!("agreements 200 ({} both fail)", r.both_failed))
}

fn criterion_6_sequence() -> Outcome {
    let h = catalog("sin-ratio-sum", None).map_err(|e| e.to_string())?;
    let alphabet = [PI / 2.0, PI];
    let w = hunt_counterexample(&h, &alphabet, 1e-12, Default::default())
        .map_err(|e| e.to_string())?
        .ok_or("hunt found nothing")?;
    let rows = demonstrate_sequence(&w.recipe, &h, &[10, 100, 1000]).map_err(|e| e.to_string())?;
    for r in &rows {
        let want = (PI / 2.0) / r.n as f64;
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
        ensure(rel(r.l1_closed_form, r.l1_distance) <= 1e-14, || {
            format!(
                "n={}: closed {} vs generic {}",
                r.n, r.l1_closed_form, r.l1_distance
            )
        })?;
        ensure(rel(r.l1_distance, want) <= 1e-14, || {
            format!("n={}: distance {}", r.n, r.l1_distance)
        })?;
        ensure(
            r.energy_n == rows[0].energy_n && r.energy_limit == rows[0].energy_limit,
            || format!("n={}: energies not constant", r.n),
        )?;
    }
    ensure(
        rows[0].energy_limit.exceeds(rows[0].energy_n, 1e-12),
        || "no gap".into(),
    )?;
    Ok(format!(
        "distance (pi/2)/n, H_n = {}, H_limit = {}",
        rows[0].energy_n, rows[0].energy_limit
    ))
}

fn same(a: &CheckReport, b: &CheckReport) -> bool {
    a.passed() == b.passed()
        && a.witness().map(|w| &w.arguments) == b.witness().map(|w| &w.arguments)
}

fn compare_all(
    h: &dyn Density,
    fh: &dyn Density,
    grid: &TripleGrid,
    tol: f64,
) -> Result<(), String> {
    let run = |d: &dyn Density| -> Result<[CheckReport; 3], String> {
        let probes = alphabet_pairs(&grid.points()[..grid.points().len().min(6)]);
        Ok([
            check_cartesian_submaximality(d, grid, tol).map_err(|e| e.to_string())?,
            check_separate_submaximality(d, grid, tol).map_err(|e| e.to_string())?,
            check_lsc_numeric(d, &probes, DEFAULT_LSC_DELTA, DEFAULT_LSC_NET, tol)
                .map_err(|e| e.to_string())?,
        ])
    };
    let (a, b) = (run(h)?, run(fh)?);
    for (k, (x, y)) in a.iter().zip(&b).enumerate() {
        ensure(same(x, y), || format!("{} check {k}: {x} vs {y}", h.name()))?;
    }
    Ok(())
}

fn criterion_7_compression() -> Outcome {
    let grid = TripleGrid::new(
        (1..=16).map(|k| k as f64 * PI / 8.0).collect(),
        SumPolicy::SkipUndefined,
    )
    .unwrap();
    let specs = [
        ("sin-ratio-sum", None),
        ("sin-ratio-max", None),
        ("sin-ratio-affine", Some("0.25")),
        ("sin-ratio-affine", Some("0.5")),
        ("sin-ratio-affine", Some("0.75")),
        ("reciprocal-sum-star", None),
        ("constant", Some("1.5")),
    ];
    for (name, param) in specs {
        let h = catalog(name, param).map_err(|e| e.to_string())?;
        let fh = h.compose_increasing("atan", f64::atan);
        compare_all(&h, &fh, &grid, 1e-12)?;
    }
    let local_grid = TripleGrid::new(
        (-8..=8)
            .filter(|&k| k != 0)
            .map(|k| k as f64 * PI / 8.0)
            .collect(),
        SumPolicy::SkipUndefined,
    )
    .unwrap();
    for spec in ["sin-ratio", "abs", "neg-abs", "constant:2"] {
        let g = LocalDensity::from_spec(spec, None).map_err(|e| e.to_string())?;
        let fg = g.compose_increasing("atan", f64::atan);
        let a = check_submaximal_1d(&g, &local_grid, 1e-12).map_err(|e| e.to_string())?;
        let b = check_submaximal_1d(&fg, &local_grid, 1e-12).map_err(|e| e.to_string())?;
        ensure(same(&a, &b), || format!("{spec}: {a} vs {b}"))?;
    }
    let alphabet = [1.0, 2.0, 3.0];
    let tg = TripleGrid::new(alphabet.to_vec(), SumPolicy::SkipUndefined).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let h = if i % 2 == 0 {
            random_table(&mut rng, &alphabet, 4)
        } else {
            random_grid_supremand(70, i, &alphabet, 4).map_err(|e| e.to_string())?
        };
        let fh = h.compose_increasing(f64::atan);
        compare_all(&h, &fh, &tg, 0.0).map_err(|e| format!("random grid {i}: {e}"))?;
    }
    Ok("verdicts and witnesses unchanged under arctan (catalog, 1-D, 100 grids)".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 hull regression", criterion_1_hull),
        ("2 hull leaves H unchanged", criterion_2_hull_identity),
        ("3 sin-ratio-sum counterexample", criterion_3_counterexample),
        ("4 positive examples", criterion_4_positive_examples),
        ("5 theorem cross-check", criterion_5_crosscheck),
        ("6 sequence mechanics", criterion_6_sequence),
        ("7 monotone compression", criterion_7_compression),
    ];
    let mut failed = Vec::new();
    for (label, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS  criterion {label}: {detail} [{ms} ms]"),
            Err(why) => {
                println!("FAIL  criterion {label}: {why} [{ms} ms]");
                failed.push(label);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
