//! Acceptance gate: ten release criteria covering table reproduction and the
//! exact mathematical properties of the building blocks. Each test prints a
//! single pass/fail line; run with `--nocapture` to see them all.

use std::sync::OnceLock;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use majorstep::bench::{
    execute_cell, reproduce_table, table_overrides, BenchReport, BenchRow, GridSize,
    ProblemFamily, RowOutcome, SolverChoice,
};
use majorstep::directions::{DirectionMap, GapFunction};
use majorstep::numerics::{axpy, FeasibleRegion, Vector};
use majorstep::problems::{
    build_quadratic, build_vi, QuadraticRegionKind, SmoothObjective, ViOperator,
};
use majorstep::sbm::{sbm_solve, RunParams, SbmParams};

/// Reference `(it, kf)` counts per table cell, used as order-of-magnitude
/// anchors for the reproduction.
type ItKf = (u64, u64);

/// Table 1 (orthant): armijo, sbm, divseries (None where the divergent-series
/// rule stalls and no anchor exists).
const REF_TABLE1: &[(usize, usize, ItKf, ItKf, Option<ItKf>)] = &[
    (2, 5, (4, 14), (12, 21), Some((17, 18))),
    (4, 5, (15, 57), (30, 35), Some((40, 41))),
    (5, 10, (18, 76), (28, 47), None),
    (25, 50, (344, 2683), (637, 679), None),
    (50, 100, (1229, 12025), (2633, 2689), None),
];

/// Table 2 (box): armijo, sbm.
const REF_TABLE2: &[(usize, usize, ItKf, ItKf)] = &[
    (2, 5, (4, 24), (14, 21)),
    (4, 5, (17, 65), (35, 38)),
    (5, 10, (19, 80), (60, 66)),
    (25, 50, (225, 1778), (440, 463)),
    (50, 100, (748, 7445), (1624, 1660)),
];

/// Table 3 (variational inequality): armijo, sbm.
const REF_TABLE3: &[(usize, ItKf, ItKf)] = &[
    (5, (4, 14), (20, 26)),
    (10, (8, 23), (21, 27)),
    (20, (14, 48), (40, 45)),
    (50, (47, 161), (48, 53)),
    (100, (85, 320), (92, 97)),
    (200, (148, 660), (145, 150)),
    (500, (375, 2143), (345, 351)),
    (1000, (761, 5076), (708, 716)),
];

fn table(id: u8) -> &'static BenchReport {
    static TABLES: [OnceLock<BenchReport>; 3] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    TABLES[id as usize - 1].get_or_init(|| reproduce_table(id).expect("table run"))
}

fn row<'a>(report: &'a BenchReport, solver: &str, m: usize, n: usize) -> &'a BenchRow {
    report
        .rows
        .iter()
        .find(|r| r.solver == solver && r.m == m && r.n == n)
        .unwrap_or_else(|| panic!("missing row {solver} {m}x{n}"))
}

/// Collects named failures and prints the single verdict line.
struct Criterion {
    id: u32,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u32) -> Self {
        Criterion {
            id,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if !ok {
            self.failures.push(detail);
        }
    }

    fn finish(self, summary: &str) {
        if self.failures.is_empty() {
            println!("criterion {:02}: PASS - {summary}", self.id);
        } else {
            println!(
                "criterion {:02}: FAIL - {}",
                self.id,
                self.failures.join("; ")
            );
            panic!("criterion {:02} failed: {}", self.id, self.failures.join("; "));
        }
    }
}

fn within_pct(actual: u64, reference: u64, pct: f64) -> bool {
    let lo = reference as f64 * (1.0 - pct);
    let hi = reference as f64 * (1.0 + pct);
    (actual as f64) >= lo && (actual as f64) <= hi
}

fn ratio_in_band(actual: u64, reference: u64) -> bool {
    let r = actual as f64 / reference as f64;
    (0.3..=3.0).contains(&r)
}

#[test]
fn criterion_01_table1_armijo_small_cell() {
    let mut c = Criterion::new(1);
    let r = row(table(1), "armijo", 2, 5);
    c.check(r.termination == RowOutcome::Residual, format!("termination {}", r.termination));
    c.check(r.final_residual <= 0.01, format!("residual {}", r.final_residual));
    c.check(
        (2..=6).contains(&r.it),
        format!("it {} outside 4 +/- 2", r.it),
    );
    c.check(
        within_pct(r.kf, 14, 0.30),
        format!("kf {} outside 14 +/- 30%", r.kf),
    );
    c.check(r.wall_ms < 1000.0, format!("wall {} ms", r.wall_ms));
    c.finish(&format!("armijo 2x5: it {}, kf {}", r.it, r.kf));
}

#[test]
fn criterion_02_table1_divseries_cells() {
    let mut c = Criterion::new(2);
    let small = row(table(1), "divseries", 2, 5);
    c.check(
        (14..=20).contains(&small.it),
        format!("it {} outside 17 +/- 3", small.it),
    );
    c.check(
        small.termination == RowOutcome::Residual,
        format!("2x5 termination {}", small.termination),
    );
    let stall = row(table(1), "divseries", 5, 10);
    c.check(
        stall.termination == RowOutcome::MaxIter && stall.it == 5000,
        format!("5x10 termination {} after {} iters", stall.termination, stall.it),
    );
    c.check(
        (0.05..=0.2).contains(&stall.final_residual),
        format!("5x10 residual {}", stall.final_residual),
    );
    c.check(
        small.wall_ms + stall.wall_ms < 5000.0,
        format!("wall {} ms", small.wall_ms + stall.wall_ms),
    );
    c.finish(&format!(
        "divseries 2x5: it {}; 5x10 stalls at residual {:.4}",
        small.it, stall.final_residual
    ));
}

#[test]
fn criterion_03_table2_large_cell_ordering() {
    let mut c = Criterion::new(3);
    let armijo = row(table(2), "armijo", 50, 100);
    let sbm = row(table(2), "sbm", 50, 100);
    c.check(
        within_pct(armijo.kf, 7445, 0.35),
        format!("armijo kf {} outside 7445 +/- 35%", armijo.kf),
    );
    c.check(
        within_pct(sbm.kf, 1660, 0.35),
        format!("sbm kf {} outside 1660 +/- 35%", sbm.kf),
    );
    c.check(
        (sbm.kf as f64) < 0.5 * armijo.kf as f64,
        format!("ordering kf(sbm)={} vs 0.5*kf(armijo)={}", sbm.kf, 0.5 * armijo.kf as f64),
    );
    c.check(
        armijo.wall_ms + sbm.wall_ms < 60_000.0,
        format!("wall {} ms", armijo.wall_ms + sbm.wall_ms),
    );
    c.finish(&format!(
        "50x100: kf(armijo) {}, kf(sbm) {}",
        armijo.kf, sbm.kf
    ));
}

#[test]
fn criterion_04_table3_counts_and_ordering() {
    let mut c = Criterion::new(4);
    c.check(
        table(3).rows.len() == 16,
        format!("expected 16 rows, got {}", table(3).rows.len()),
    );
    for (n, ref_kf) in [(100usize, 97u64), (500, 351), (1000, 716)] {
        let r = row(table(3), "sbm", n, n);
        c.check(
            within_pct(r.kf, ref_kf, 0.35),
            format!("sbm kf {} at n={n} outside {ref_kf} +/- 35%", r.kf),
        );
    }
    for &(n, _, _) in REF_TABLE3.iter().filter(|&&(n, _, _)| n >= 50) {
        let sbm = row(table(3), "sbm", n, n);
        let armijo = row(table(3), "armijo", n, n);
        c.check(
            sbm.kf < armijo.kf,
            format!("n={n}: kf(sbm)={} not below kf(armijo)={}", sbm.kf, armijo.kf),
        );
    }
    let big_sbm = row(table(3), "sbm", 1000, 1000);
    let big_armijo = row(table(3), "armijo", 1000, 1000);
    c.check(
        big_sbm.wall_ms + big_armijo.wall_ms < 300_000.0,
        format!("n=1000 wall {} ms", big_sbm.wall_ms + big_armijo.wall_ms),
    );
    c.finish("vi suite counts and sbm-beats-armijo ordering for n >= 50");
}

#[test]
fn criterion_05_all_solved_cells_track_the_reference() {
    let mut c = Criterion::new(5);
    let mut cells: Vec<(u8, &str, usize, usize, ItKf)> = Vec::new();
    for &(m, n, armijo, sbm, divseries) in REF_TABLE1 {
        cells.push((1, "armijo", m, n, armijo));
        cells.push((1, "sbm", m, n, sbm));
        if let Some(d) = divseries {
            cells.push((1, "divseries", m, n, d));
        }
    }
    for &(m, n, armijo, sbm) in REF_TABLE2 {
        cells.push((2, "armijo", m, n, armijo));
        cells.push((2, "sbm", m, n, sbm));
    }
    for &(n, armijo, sbm) in REF_TABLE3 {
        cells.push((3, "armijo", n, n, armijo));
        cells.push((3, "sbm", n, n, sbm));
    }
    for (tbl, solver, m, n, (ref_it, ref_kf)) in cells {
        let r = row(table(tbl), solver, m, n);
        let cell = format!("table {tbl} {solver} {m}x{n}");
        c.check(
            r.termination == RowOutcome::Residual,
            format!("{cell}: termination {}", r.termination),
        );
        c.check(
            r.final_residual <= 0.01,
            format!("{cell}: residual {}", r.final_residual),
        );
        c.check(
            ratio_in_band(r.it, ref_it),
            format!("{cell}: it {} vs reference {ref_it}", r.it),
        );
        c.check(
            ratio_in_band(r.kf, ref_kf),
            format!("{cell}: kf {} vs reference {ref_kf}", r.kf),
        );
    }
    c.finish("every solved cell converged with it/kf within [0.3, 3] of the reference");
}

#[test]
fn criterion_06_projection_suite() {
    let mut c = Criterion::new(6);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_gap: f64 = 0.0;
    for sample in 0..10_000 {
        let dim = rng.gen_range(1..=20);
        let region = match sample % 3 {
            0 => {
                let lo = Vector::from_fn(dim, |_| rng.gen_range(-8.0..2.0));
                let hi = Vector::from_fn(dim, |j| lo[j] + rng.gen_range(0.0..9.0));
                FeasibleRegion::box_bounds(lo, hi).unwrap()
            }
            1 => FeasibleRegion::nonnegative_orthant(dim),
            _ => FeasibleRegion::whole_space(dim),
        };
        let x = Vector::from_fn(dim, |_| rng.gen_range(-15.0..15.0));
        let y = Vector::from_fn(dim, |_| rng.gen_range(-15.0..15.0));
        let px = region.project(&x).unwrap();
        let py = region.project(&y).unwrap();
        // Idempotence and membership are exact for clamps.
        if region.project(&px).unwrap() != px {
            c.check(false, format!("idempotence broke at sample {sample}"));
            break;
        }
        if region.violation(&px).unwrap() != 0.0 {
            c.check(false, format!("membership broke at sample {sample}"));
            break;
        }
        let lhs = px.sub(&py).unwrap().norm();
        let rhs = x.sub(&y).unwrap().norm() + 1e-12;
        worst_gap = worst_gap.max(lhs - rhs);
        if lhs > rhs {
            c.check(false, format!("nonexpansiveness broke at sample {sample}"));
            break;
        }
    }
    c.finish(&format!(
        "10^4 samples: idempotent, member, nonexpansive (worst slack use {worst_gap:.2e})"
    ));
}

#[test]
fn criterion_07_descent_inequalities() {
    let mut c = Criterion::new(7);
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // Gradient-projection form on the quadratic suites.
    let mut worst = f64::NEG_INFINITY;
    for (m, n) in [(2usize, 5usize), (5, 10), (25, 50)] {
        for kind in [QuadraticRegionKind::Orthant, QuadraticRegionKind::Box] {
            let problem = build_quadratic(m, n, kind).unwrap();
            let map =
                DirectionMap::gradient_projection(&problem, problem.region(), 1.0).unwrap();
            for _ in 0..200 {
                let x = match kind {
                    QuadraticRegionKind::Orthant => {
                        Vector::from_fn(n, |_| rng.gen_range(0.0..n as f64))
                    }
                    QuadraticRegionKind::Box => {
                        Vector::from_fn(n, |_| rng.gen_range(-5.0..5.0))
                    }
                };
                let g = problem.gradient(&x).unwrap();
                let y = map.point(&x).unwrap();
                let d = y.sub(&x).unwrap();
                let margin = g.dot(&d).unwrap() + map.alpha() * d.dot(&d).unwrap();
                worst = worst.max(margin);
            }
        }
    }
    c.check(
        worst <= 1e-9,
        format!("gradient-projection descent margin {worst:.3e} above 1e-9"),
    );

    // Natural-map form with the analytic Jacobian and modulus 2.
    let mut worst_vi = f64::NEG_INFINITY;
    for n in [5usize, 20, 50] {
        let problem = build_vi(n).unwrap();
        let map = DirectionMap::vi_natural(&problem, problem.region(), 1.0).unwrap();
        for _ in 0..400 {
            let x = Vector::from_fn(n, |_| rng.gen_range(1.0..6.0));
            let g = problem.eval(&x).unwrap();
            let y = map.point(&x).unwrap();
            let d = y.sub(&x).unwrap();
            let jac = problem.jacobian(&x).unwrap().unwrap();
            // <G(x) - (J^T - alpha I) d, d> <= -2 ||d||^2
            let jt_d = jac.tr_matvec(&d).unwrap();
            let adjusted = axpy(-1.0, &jt_d, &g).unwrap();
            let lhs = adjusted.dot(&d).unwrap() + map.alpha() * d.dot(&d).unwrap();
            let margin = lhs + 2.0 * d.dot(&d).unwrap();
            worst_vi = worst_vi.max(margin);
        }
    }
    c.check(
        worst_vi <= 1e-9,
        format!("natural-map descent margin {worst_vi:.3e} above 1e-9"),
    );
    c.finish(&format!(
        "descent margins: gradient {worst:.2e}, natural map {worst_vi:.2e}"
    ));
}

#[test]
fn criterion_08_gap_function() {
    let mut c = Criterion::new(8);
    let mut rng = ChaCha8Rng::seed_from_u64(8);

    // Nonnegativity over 10^4 feasible samples.
    let problem = build_vi(20).unwrap();
    let map = DirectionMap::vi_natural(&problem, problem.region(), 1.0).unwrap();
    let gap = GapFunction::new(&map).unwrap();
    let mut min_gap = f64::INFINITY;
    for _ in 0..10_000 {
        let x = Vector::from_fn(20, |_| rng.gen_range(1.0..6.0));
        let value = gap.value(&x).unwrap();
        min_gap = min_gap.min(value);
    }
    c.check(min_gap >= 0.0, format!("negative gap value {min_gap:.3e}"));

    // Zero at the converged point of a tight adaptive run.
    let params = SbmParams {
        beta: 0.4,
        eps: 1e-8,
        ..SbmParams::default()
    };
    let run = sbm_solve(&gap, &map, &params, problem.start()).unwrap();
    let gap_at_solution = gap.value(&run.final_x).unwrap();
    c.check(
        gap_at_solution.abs() <= 1e-6,
        format!("gap at converged point {gap_at_solution:.3e}"),
    );

    // Closed form against brute-force maximization on a 1-d instance.
    let one_d = build_vi(1).unwrap();
    let map1 = DirectionMap::vi_natural(&one_d, one_d.region(), 1.0).unwrap();
    let gap1 = GapFunction::new(&map1).unwrap();
    let mut worst_diff: f64 = 0.0;
    let mut xs = vec![1.0, 2.0, 3.7, 6.0];
    xs.extend((0..16).map(|_| rng.gen_range(1.0..6.0)));
    for xv in xs {
        let x = Vector::from_vec(vec![xv]);
        let closed = gap1.value(&x).unwrap();
        let g = one_d.eval(&x).unwrap()[0];
        let steps = 500_000u32;
        let mut brute = f64::NEG_INFINITY;
        for k in 0..=steps {
            let y = 1.0 + 5.0 * f64::from(k) / f64::from(steps);
            let d = xv - y;
            brute = brute.max(g * d - 0.5 * d * d);
        }
        worst_diff = worst_diff.max((closed - brute).abs());
    }
    c.check(
        worst_diff <= 1e-6,
        format!("closed form vs brute force differ by {worst_diff:.3e}"),
    );
    c.finish(&format!(
        "gap: min sample {min_gap:.3}, converged {gap_at_solution:.2e}, 1-d oracle diff {worst_diff:.2e}"
    ));
}

#[test]
fn criterion_09_adaptive_trace_invariants() {
    let mut c = Criterion::new(9);
    let mut cells: Vec<(u8, ProblemFamily, GridSize)> = Vec::new();
    for &(m, n, ..) in REF_TABLE1 {
        cells.push((1, ProblemFamily::QuadraticOrthant, GridSize { m, n }));
    }
    for &(m, n, ..) in REF_TABLE2 {
        cells.push((2, ProblemFamily::QuadraticBox, GridSize { m, n }));
    }
    for &(n, ..) in REF_TABLE3 {
        cells.push((3, ProblemFamily::Vi, GridSize::square(n)));
    }
    for (tbl, family, size) in cells {
        let overrides = table_overrides(tbl, SolverChoice::Sbm);
        let run = execute_cell(family, size, SolverChoice::Sbm, &overrides).unwrap();
        let rerun = execute_cell(family, size, SolverChoice::Sbm, &overrides).unwrap();
        let cell = format!("table {tbl} {}x{}", size.m, size.n);
        let params = match &run.params {
            RunParams::Sbm(p) => p.clone(),
            other => panic!("unexpected params {other:?}"),
        };
        c.check(
            run.trace == rerun.trace && run.final_x == rerun.final_x,
            format!("{cell}: rerun trace differs"),
        );
        c.check(
            run.kf == 1 + run.trace.len() as u64 && run.iterations == run.trace.len() as u64,
            format!("{cell}: kf {} vs 1 + {} trials", run.kf, run.trace.len()),
        );
        let mut prev_best = f64::INFINITY;
        for (k, rec) in run.trace.iter().enumerate() {
            let tau_l = params.tau0 * params.sigma.powi(rec.majorant_index as i32);
            c.check(
                rec.lambda <= tau_l,
                format!("{cell}: lambda {} above majorant {tau_l} at iter {k}", rec.lambda),
            );
            let should_accept =
                rec.f_trial <= rec.f_current - params.beta * rec.lambda * rec.direction_norm_sq;
            c.check(
                rec.accepted == should_accept,
                format!("{cell}: acceptance flag mismatch at iter {k}"),
            );
            c.check(
                rec.f_best <= prev_best,
                format!("{cell}: best value rose at iter {k}"),
            );
            prev_best = rec.f_best;
            if params.gamma.is_finite() {
                c.check(
                    rec.f_next <= params.gamma,
                    format!("{cell}: iterate above the level guard at iter {k}"),
                );
            }
        }
    }
    c.finish("majorant bound, acceptance recheck, monotone best values, kf accounting, bitwise reruns");
}

#[test]
fn criterion_10_problem_construction_sanity() {
    let mut c = Criterion::new(10);
    // Exact zero of the quadratic at the all-ones point, every grid size.
    for &(m, n, ..) in REF_TABLE1 {
        for kind in [QuadraticRegionKind::Orthant, QuadraticRegionKind::Box] {
            let problem = build_quadratic(m, n, kind).unwrap();
            let ones = Vector::filled(n, 1.0);
            let f = problem.value(&ones).unwrap();
            let g = problem.gradient(&ones).unwrap().norm();
            c.check(f == 0.0, format!("{m}x{n}: f(1) = {f:e}"));
            c.check(g == 0.0, format!("{m}x{n}: |grad(1)| = {g:e}"));
        }
    }
    // Exact symmetry/antisymmetry of the operator matrix parts.
    for n in [5usize, 20, 50] {
        let problem = build_vi(n).unwrap();
        let sym = problem.symmetric_part();
        let skew = problem.skew_part();
        let mut exact = true;
        for i in 0..n {
            exact &= skew.get(i, i) == 0.0;
            for j in 0..n {
                exact &= sym.get(i, j) == sym.get(j, i);
                exact &= skew.get(i, j) == -skew.get(j, i);
            }
        }
        c.check(exact, format!("n={n}: matrix split not exact"));
    }
    // Empirical strong-monotonicity margin of at least 2 on 10^3 pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut min_ratio = f64::INFINITY;
    for n in [5usize, 20, 50] {
        let problem = build_vi(n).unwrap();
        for _ in 0..334 {
            let x = Vector::from_fn(n, |_| rng.gen_range(1.0..6.0));
            let y = Vector::from_fn(n, |_| rng.gen_range(1.0..6.0));
            let dx = x.sub(&y).unwrap();
            let dist_sq = dx.dot(&dx).unwrap();
            if dist_sq < 1e-18 {
                continue;
            }
            let dg = problem.eval(&x).unwrap().sub(&problem.eval(&y).unwrap()).unwrap();
            min_ratio = min_ratio.min(dg.dot(&dx).unwrap() / dist_sq);
        }
    }
    c.check(
        min_ratio >= 2.0,
        format!("strong-monotonicity ratio {min_ratio:.4} below 2"),
    );
    c.finish(&format!(
        "exact construction identities; monotonicity margin {min_ratio:.3}"
    ));
}
