//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Benchmark files are looked up in `$MSRCPSP_INSTANCE_DIR`, then in
//! `data/imopse/` at the workspace root.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use msrcpsp_core::aco::{
    self, count_possible_assignments, select_resource, update_diff, Ant, ColonyState, DiffBranch, PheromoneSurface,
};
use msrcpsp_core::generate::{random_instance, GeneratorConfig};
use msrcpsp_core::harness::{compare_vs_seed, solve, SolveRequest, SolverKind};
use msrcpsp_core::heuristics::sls_schedule;
use msrcpsp_core::io::{load_instance, read_solution};
use msrcpsp_core::model::{magnitude, solution_space_size};
use msrcpsp_core::scheduling::{definition_order, Evaluator};
use msrcpsp_core::{
    build_schedule, validate_instance, validate_schedule, AcoParams, Assignment, OptimizationMode, ProjectInstance,
    Resource, Rule, Schedule, Skill, SortOrder, Task, UpdateStrategy,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

const MODES: [OptimizationMode; 3] = [OptimizationMode::DURATION, OptimizationMode::BALANCED, OptimizationMode::COST];
const DO_CO: [OptimizationMode; 2] = [OptimizationMode::DURATION, OptimizationMode::COST];

fn benchmark_file(name: &str) -> Option<PathBuf> {
    let mut dirs = Vec::new();
    if let Some(d) = std::env::var_os("MSRCPSP_INSTANCE_DIR") {
        dirs.push(PathBuf::from(d));
    }
    dirs.push(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/imopse"));
    dirs.iter()
        .flat_map(|d| ["def", "txt"].map(|ext| d.join(format!("{name}.{ext}"))))
        .find(|p| p.is_file())
}

/// Every resource can do every task.
fn all_capable(n: usize, m: usize) -> ProjectInstance {
    let tasks = (0..n)
        .map(|j| Task {
            id: format!("T{}", j + 1),
            duration: 1 + (j as u64 * 7) % 5,
            required_skill: Skill::new("Q", 1),
            predecessors: if j > 1 { vec![format!("T{}", j - 1)] } else { vec![] },
            definition_index: j,
        })
        .collect();
    let resources = (0..m)
        .map(|k| Resource {
            id: format!("R{}", k + 1),
            salary: 10.0 + 5.0 * k as f64,
            skills: vec![Skill::new("Q", 3)],
            definition_index: k,
        })
        .collect();
    ProjectInstance::new(format!("uniform_{n}_{m}"), tasks, resources, BTreeSet::from(["Q".to_string()])).unwrap()
}

fn request(solver: SolverKind, mode: OptimizationMode, strategy: UpdateStrategy, params: &AcoParams) -> SolveRequest {
    SolveRequest {
        solver,
        mode,
        strategy,
        params: params.clone(),
    }
}

fn heuristic_reproduction() -> Outcome {
    const NAME: &str = "100_10_27_9_D2";
    let Some(path) = benchmark_file(NAME) else {
        return fail(format!(
            "benchmark file {NAME}.def not found in $MSRCPSP_INSTANCE_DIR or data/imopse; cannot compare with the published values"
        ));
    };
    let inst = match load_instance(&path) {
        Ok(i) => i,
        Err(e) => return fail(format!("{}: {e}", path.display())),
    };
    let mut lines = Vec::new();
    let mut ok = true;
    for (label, rule, days, cost) in [
        ("RS(A)", Rule::ResourceSalary(SortOrder::Ascending), 129u64, 26323.0),
        ("SLS(D)", Rule::SuccessorsListSize(SortOrder::Descending), 38, 44309.0),
    ] {
        let started = Instant::now();
        let s = match rule.schedule(&inst) {
            Ok(s) => s,
            Err(e) => return fail(format!("{label}: {e}")),
        };
        let elapsed = started.elapsed();
        let got_days = msrcpsp_core::makespan(&s);
        let got_cost = msrcpsp_core::total_cost(&s, &inst);
        let exact = got_days == days && (got_cost - cost).abs() < 0.5;
        let close = got_days.abs_diff(days) <= 2 && (got_cost - cost).abs() <= 0.02 * cost;
        ok &= close && elapsed < Duration::from_secs(1);
        lines.push(format!(
            "{label} days={got_days} cost={got_cost:.0} in {:.3}s (want {days}/{cost:.0}, {})",
            elapsed.as_secs_f64(),
            if exact { "exact" } else if close { "within tolerance" } else { "outside tolerance" }
        ));
    }
    if ok {
        pass(lines.join("; "))
    } else {
        fail(lines.join("; "))
    }
}

/// `n!` from Legendre's formula: the exponent of prime `p` is
/// `sum floor(n / p^i)`.
fn factorial_by_primes(n: u32) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for p in (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        let mut e = 0;
        let mut q = p;
        while q <= n {
            e += n / q;
            q = match q.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
        acc *= BigUint::from(p).pow(e);
    }
    acc
}

fn solution_space() -> Outcome {
    let got = solution_space_size(100, 20);
    // 20^100 = 2^200 * 5^100
    let independent = factorial_by_primes(100) * BigUint::from(2u32).pow(200) * BigUint::from(5u32).pow(100);
    if got != independent {
        return fail("exact value disagrees with the prime-factorisation route");
    }
    let digits = got.to_str_radix(10);
    let m = magnitude(&got, 3);
    let leading = format!("{}.{}e{}", &digits[..1], &digits[1..8], digits.len() - 1);
    let detail = format!("exact value {leading} (matches independent route), 3 significant digits {m}, expected 1.19e288");
    if m.exponent == 288 && (m.mantissa - 1.19).abs() < 1e-9 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn fuzzed_instance(i: u64) -> ProjectInstance {
    let n = 1 + (i * 7 % 30) as usize;
    let m = 1 + (i * 3 % 8) as usize;
    let mut c = GeneratorConfig::small(n, m);
    c.relations = (i % 3) as usize * n / 2 + (i % 5) as usize;
    c.skill_types = 2 + (i % 4) as usize;
    random_instance(&c, 10_000 + i)
}

fn feasibility_suite() -> Outcome {
    let started = Instant::now();
    let params = AcoParams::default();
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let ids: Vec<u64> = (0..1000).collect();
    let problems: Vec<String> = std::thread::scope(|scope| {
        let handles: Vec<_> = ids
            .chunks(ids.len().div_ceil(threads))
            .map(|chunk| {
                let params = &params;
                scope.spawn(move || {
                    let mut problems = Vec::new();
                    let mut runs = 0usize;
                    for &i in chunk {
                        let inst = fuzzed_instance(i);
                        let strategy = UpdateStrategy::ALL_STRATEGIES[(i % 3) as usize];
                        let hybrid_strategy = UpdateStrategy::ALL_STRATEGIES[(i / 3 % 3) as usize];
                        let mut jobs = Vec::new();
                        for solver in ["sls-asc", "sls-desc", "rs-asc", "rs-desc"] {
                            let s: SolverKind = solver.parse().unwrap();
                            jobs.push(request(s, MODES[(i % 3) as usize], strategy, params));
                        }
                        for mode in DO_CO {
                            jobs.push(request(SolverKind::Heuristic, mode, strategy, params));
                        }
                        jobs.push(request(SolverKind::Aco, MODES[(i / 3 % 3) as usize], strategy, &params.clone().with_seed(i)));
                        jobs.push(request(SolverKind::HAntCo, DO_CO[(i % 2) as usize], hybrid_strategy, &params.clone().with_seed(i)));
                        for job in jobs {
                            runs += 1;
                            match solve(&inst, &job) {
                                Ok(out) => {
                                    if let Some(v) = validate_schedule(&out.schedule, &inst).first() {
                                        problems.push(format!("{} {}: {v}", inst.name(), job.solver));
                                    }
                                }
                                Err(e) => problems.push(format!("{} {}: {e}", inst.name(), job.solver)),
                            }
                        }
                    }
                    (problems, runs)
                })
            })
            .collect();
        let mut all = Vec::new();
        let mut total = 0;
        for h in handles {
            let (p, r) = h.join().expect("worker finished");
            all.extend(p);
            total += r;
        }
        assert_eq!(total, 8000);
        all
    });
    let elapsed = started.elapsed().as_secs_f64();
    let detail = format!(
        "1000 instances, 8000 schedules from every solver kind, {} infeasible, {elapsed:.1}s",
        problems.len()
    );
    if problems.is_empty() && elapsed < 60.0 {
        pass(detail)
    } else {
        fail(format!("{detail}; first: {}", problems.first().map_or("-", String::as_str)))
    }
}

fn tiny_instance(i: u64) -> ProjectInstance {
    let n = 3 + (i % 3) as usize;
    let m = 2 + (i / 3 % 2) as usize;
    let mut c = GeneratorConfig::small(n, m);
    c.relations = (i % 4) as usize;
    c.salaries = (1, 40);
    random_instance(&c, 500 + i)
}

fn exhaustive_best(inst: &ProjectInstance, mode: OptimizationMode) -> f64 {
    let eval = Evaluator::new(inst, mode);
    let order = definition_order(inst);
    let mut paths: Vec<Vec<usize>> = vec![Vec::new()];
    for j in 0..inst.task_count() {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                inst.capable_of(j).iter().map(move |&k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    paths
        .into_iter()
        .map(|p| {
            let s = build_schedule(inst, &Assignment::new(p), &order).unwrap();
            eval.evaluate(&s, inst).score
        })
        .fold(f64::INFINITY, f64::min)
}

struct OracleRuns {
    lines: Vec<String>,
    ok: bool,
    hybrid_violations: usize,
    hybrid_checked: usize,
}

fn oracle_equivalence() -> OracleRuns {
    let params = AcoParams::default();
    let instances: Vec<ProjectInstance> = (0..50).map(tiny_instance).collect();
    let mut lines = Vec::new();
    let mut ok = true;
    let mut hybrid_violations = 0;
    let mut hybrid_checked = 0;
    for (solver, threshold) in [(SolverKind::Aco, 0.8), (SolverKind::HAntCo, 0.9)] {
        for mode in DO_CO {
            for strategy in UpdateStrategy::ALL_STRATEGIES {
                let mut hits = 0;
                let mut total = 0;
                for inst in &instances {
                    let best = exhaustive_best(inst, mode);
                    let seed_score = heuristic_score(inst, mode);
                    for seed in 0..10 {
                        let out = solve(inst, &request(solver, mode, strategy, &params.clone().with_seed(seed))).unwrap();
                        total += 1;
                        if out.eval.score <= best + 1e-9 {
                            hits += 1;
                        }
                        if solver == SolverKind::HAntCo {
                            hybrid_checked += 1;
                            if out.eval.score > seed_score + 1e-12 {
                                hybrid_violations += 1;
                            }
                        }
                    }
                }
                let rate = hits as f64 / total as f64;
                ok &= rate >= threshold;
                lines.push(format!("{solver}/{mode}/{strategy} {:.0}%", rate * 100.0));
            }
        }
    }
    OracleRuns {
        lines,
        ok,
        hybrid_violations,
        hybrid_checked,
    }
}

fn heuristic_score(inst: &ProjectInstance, mode: OptimizationMode) -> f64 {
    solve(inst, &request(SolverKind::Heuristic, mode, UpdateStrategy::All, &AcoParams::default()))
        .unwrap()
        .eval
        .score
}

fn hybrid_dominance(from_oracle: &OracleRuns) -> Outcome {
    let mut violations = from_oracle.hybrid_violations;
    let mut checked = from_oracle.hybrid_checked;
    let params = AcoParams::default();
    for i in 0..40 {
        let inst = fuzzed_instance(7_000 + i);
        for mode in DO_CO {
            let strategy = UpdateStrategy::ALL_STRATEGIES[(i % 3) as usize];
            let report = compare_vs_seed(&inst, mode, strategy, &params, 5, i * 10).unwrap();
            checked += report.margins.len();
            violations += report.violations.len() + report.errors.len();
        }
    }
    let detail = format!("{checked} hybrid runs compared with their seed schedule, {violations} worse than the seed");
    if violations == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn roulette_statistics() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    // (capable resources, pheromone values, alpha)
    let cases: [(&[f64], f64); 3] = [(&[3.0, 1.0, 0.5], 1.0), (&[1.5, 0.05, 0.05, 2.2], 1.0), (&[0.4, 1.0, 2.0, 0.7, 1.3], 2.0)];
    for (case, (values, alpha)) in cases.iter().enumerate() {
        let inst = all_capable(1, values.len());
        let mut surface = PheromoneSurface::uniform(&inst, 1.0, 0.01);
        for (k, v) in values.iter().enumerate() {
            surface.set(0, k, *v);
        }
        let weights: Vec<f64> = values.iter().map(|v| v.powf(*alpha)).collect();
        let sum: f64 = weights.iter().sum();
        let expected: Vec<f64> = weights.iter().map(|w| w / sum).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(2024 + case as u64);
        let draws = 100_000;
        let mut counts = vec![0u64; values.len()];
        for _ in 0..draws {
            counts[select_resource(0, &surface, *alpha, &mut rng).unwrap()] += 1;
        }
        let stat: f64 = counts
            .iter()
            .zip(&expected)
            .map(|(&o, &p)| {
                let e = p * draws as f64;
                (o as f64 - e).powi(2) / e
            })
            .sum();
        let dof = (values.len() - 1) as f64;
        let critical = ChiSquared::new(dof).unwrap().inverse_cdf(0.99);
        ok &= stat < critical;
        details.push(format!("k={} chi2={stat:.2} < {critical:.2}", values.len()));
    }
    let detail = format!("{} at alpha=0.01 over 1e5 draws", details.join(", "));
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn diff_branches() -> Outcome {
    // one task, four resources: each role deposits on its own edge
    let inst = all_capable(1, 4);
    let params = AcoParams {
        variety_threshold: 0.1,
        kappa_init: 1,
        ..AcoParams::default()
    };
    let surface = PheromoneSurface::uniform(&inst, 1.0, params.min_pheromone);
    let mut state = ColonyState::new(surface, &params);
    let ant = |k: usize, score: f64| Ant {
        path: Assignment::new(vec![k]),
        schedule: Schedule::from_parts(Assignment::new(vec![k]), vec![0], vec![1]),
        score,
    };
    const BEST_L: usize = 0;
    const WORST_L: usize = 1;
    const BEST_G: usize = 2;
    const WORST_G: usize = 3;
    state.best_global = Some(ant(BEST_G, 0.5));
    state.worst_global = Some(ant(WORST_G, 2.0));
    state.iterations_since_improvement = 4;

    let varieties = [0.25, 0.05, 0.05, 0.05, 0.05, 0.05];
    // expected transitions: kappa 1 -> 2 (best) -> 1 -> 0 -> -1 (worst) -> fallback, fallback
    let expected_branch = [
        DiffBranch::Best,
        DiffBranch::Worst,
        DiffBranch::Worst,
        DiffBranch::Worst,
        DiffBranch::Fallback,
        DiffBranch::Fallback,
    ];
    let expected_kappa = [2, 1, 0, -1, -1, -1];
    let mut model = [1.0f64; 4];
    let delta = params.deposit;
    let global = delta / 4.0;
    for (step, &pi) in varieties.iter().enumerate() {
        // worst fixed at 1, best chosen so that (worst - best) / worst = pi
        state.best_local = Some(ant(BEST_L, 1.0 - pi));
        state.worst_local = Some(ant(WORST_L, 1.0));
        let Some(got) = update_diff(&mut state, &params) else {
            return fail(format!("step {step}: no update"));
        };
        match expected_branch[step] {
            DiffBranch::Best => {
                model[BEST_L] += delta / pi;
                model[BEST_G] += global;
            }
            DiffBranch::Worst => {
                model[WORST_L] += delta / pi;
                model[WORST_G] += global;
            }
            DiffBranch::Fallback => {
                model[BEST_L] += delta;
                model[BEST_G] += delta;
            }
        }
        if got.branch != expected_branch[step] || state.kappa != expected_kappa[step] || (got.variety - pi).abs() > 1e-12 {
            return fail(format!(
                "step {step}: branch {:?} kappa {} variety {}, expected {:?} kappa {}",
                got.branch, state.kappa, got.variety, expected_branch[step], expected_kappa[step]
            ));
        }
        for (k, want) in model.iter().enumerate() {
            let have = state.surface.get(0, k).unwrap();
            if (have - want).abs() > 1e-12 {
                return fail(format!("step {step}: edge {k} holds {have}, expected {want}"));
            }
        }
    }
    pass("variety 0.25, 0.05 x5 with threshold 0.1 and counter 1: best, worst x3, fallback x2; counter and deposits exact")
}

fn floor_and_monotonicity() -> Outcome {
    let inst = random_instance(&GeneratorConfig::benchmark(40, 6, 15, 6), 77);
    let params = AcoParams {
        max_iterations: Some(150),
        ..AcoParams::default()
    };
    let mut lines = Vec::new();
    let mut violations = 0;
    for strategy in UpdateStrategy::ALL_STRATEGIES {
        for (label, seed) in [("aco", None), ("hantco", Some(sls_schedule(&inst, SortOrder::Descending).unwrap()))] {
            let (_, stats) = aco::run(&inst, &params.clone().with_seed(3), OptimizationMode::DURATION, strategy, seed.as_ref()).unwrap();
            if stats.iterations != 150 {
                return fail(format!("{label}/{strategy} stopped after {} iterations", stats.iterations));
            }
            violations += stats.min_pheromone.iter().filter(|&&v| v < params.min_pheromone).count();
            violations += stats.best_scores.windows(2).filter(|w| w[1] > w[0]).count();
            lines.push(format!("{label}/{strategy}"));
        }
    }
    let detail = format!("150 iterations each for {}; {violations} violations", lines.join(", "));
    if violations == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_msrcpsp"));
    c.env_remove("MSRCPSP_INSTANCE_DIR");
    c
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let inst = random_instance(&GeneratorConfig::small(20, 5), 42);
    let inst_path = dir.path().join("det.txt");
    std::fs::write(&inst_path, msrcpsp_core::io::write_instance(&inst)).unwrap();
    let plan = dir.path().join("plan.toml");
    std::fs::write(
        &plan,
        "instances = [\"det.txt\"]\nrepetitions = 3\nseed = 9\nsolvers = [\"heuristic\", \"aco\", \"hantco\"]\n[params]\ngamma = 30\n",
    )
    .unwrap();
    let commands: Vec<(&str, Vec<String>)> = vec![
        ("solve aco", vec!["solve".into(), "--solver".into(), "aco".into(), "--strategy".into(), "all".into(), "--mode".into(), "bo".into(), "--seed".into(), "5".into()]),
        ("solve hantco", vec!["solve".into(), "--solver".into(), "hantco".into(), "--mode".into(), "co".into(), "--seed".into(), "6".into()]),
        ("solve heuristic", vec!["solve".into(), "--solver".into(), "heuristic".into(), "--mode".into(), "do".into()]),
    ];
    let mut checked = 0;
    for (label, args) in &commands {
        let mut outputs = Vec::new();
        for rep in 0..5 {
            let out_path = dir.path().join(format!("{}-{rep}.sol", label.replace(' ', "_")));
            let status = bin().args(args).arg(&inst_path).arg("--out").arg(&out_path).output().unwrap();
            if !status.status.success() {
                return fail(format!("{label}: {}", String::from_utf8_lossy(&status.stderr)));
            }
            let text = std::fs::read(&out_path).unwrap();
            let (s, _) = read_solution(std::str::from_utf8(&text).unwrap(), &inst).unwrap();
            if !validate_schedule(&s, &inst).is_empty() {
                return fail(format!("{label}: written schedule is infeasible"));
            }
            outputs.push((text, status.stdout));
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return fail(format!("{label}: outputs differ between repetitions"));
        }
        checked += 1;
    }
    let mut csvs = Vec::new();
    for rep in 0..5 {
        let out = dir.path().join(format!("exp{rep}"));
        let workers = if rep % 2 == 0 { "1" } else { "3" };
        let status = bin()
            .arg("experiment")
            .arg("--plan")
            .arg(&plan)
            .arg("--out")
            .arg(&out)
            .args(["--workers", workers])
            .output()
            .unwrap();
        if !status.status.success() {
            return fail(format!("experiment: {}", String::from_utf8_lossy(&status.stderr)));
        }
        csvs.push((std::fs::read(out.join("runs.csv")).unwrap(), std::fs::read(out.join("aggregate.csv")).unwrap()));
    }
    if csvs.windows(2).any(|w| w[0] != w[1]) {
        return fail("experiment CSVs differ between repetitions");
    }
    pass(format!("{checked} solve commands and 1 experiment plan, 5 repetitions each, byte-identical"))
}

fn complexity_accounting() -> Outcome {
    let inst = all_capable(10, 4);
    let count = count_possible_assignments(&inst);
    if count != 40 {
        return fail(format!("count_possible_assignments = {count}, expected 40"));
    }
    let mut lines = Vec::new();
    for strategy in UpdateStrategy::ALL_STRATEGIES {
        for seed in 0..3 {
            let params = AcoParams {
                stall_limit: 20 + 10 * seed as usize,
                ..AcoParams::default().with_seed(seed)
            };
            let out = solve(&inst, &request(SolverKind::Aco, OptimizationMode::BALANCED, strategy, &params)).unwrap();
            if out.dominant_ops != 40 * out.iterations as u64 {
                return fail(format!("{strategy}: dominant_ops {} for {} iterations", out.dominant_ops, out.iterations));
            }
            lines.push(out.iterations.to_string());
        }
    }
    pass(format!("40 possible assignments; dominant_ops = 40 x iterations for runs of {} iterations", lines.join("/")))
}

fn runtime_envelope() -> Outcome {
    let (inst, source) = match benchmark_file("100_10_27_9_D2").map(|p| load_instance(&p)) {
        Some(Ok(i)) => (i, "100_10_27_9_D2".to_string()),
        _ => (
            random_instance(&GeneratorConfig::benchmark(100, 10, 27, 9), 1),
            "generated 100 tasks/10 resources/27 relations/9 skills (benchmark file absent)".to_string(),
        ),
    };
    if !validate_instance(&inst).is_empty() {
        return fail(format!("{source} is invalid"));
    }
    let mut times = Vec::new();
    let mut worst = 0.0f64;
    for strategy in UpdateStrategy::ALL_STRATEGIES {
        let started = Instant::now();
        let out = solve(&inst, &request(SolverKind::Aco, OptimizationMode::DURATION, strategy, &AcoParams::default())).unwrap();
        let secs = started.elapsed().as_secs_f64();
        worst = worst.max(secs);
        times.push(format!("{strategy} {secs:.2}s/{} iters", out.iterations));
    }
    let detail = format!("{source}: {}", times.join(", "));
    if worst < 120.0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn main() {
    let started = Instant::now();
    let mut results: Vec<(&str, &str, Outcome)> = Vec::new();
    let mut record = |id, name, o: Outcome| {
        println!("{} {id} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((id, name, o));
    };
    record("1", "heuristic reproduction", heuristic_reproduction());
    record("2", "solution space size", solution_space());
    record("3a", "feasibility suite", feasibility_suite());
    let t = Instant::now();
    let oracle = oracle_equivalence();
    let secs = t.elapsed().as_secs_f64();
    let detail = format!(
        "50 instances x 10 seeds; thresholds aco 80%, hantco 90%; {}; {secs:.1}s",
        oracle.lines.join(", ")
    );
    let o = if oracle.ok && secs < 300.0 { pass(detail) } else { fail(detail) };
    record("3b", "exhaustive optimum", o);
    record("3c", "hybrid dominance", hybrid_dominance(&oracle));
    record("3d", "roulette statistics", roulette_statistics());
    record("3e", "variety-driven update branches", diff_branches());
    record("3f", "pheromone floor and best-score monotonicity", floor_and_monotonicity());
    record("4", "determinism", determinism());
    record("5", "complexity accounting", complexity_accounting());
    record("6", "runtime envelope", runtime_envelope());
    let failed: Vec<&str> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s{}",
        results.len() - failed.len(),
        results.len(),
        started.elapsed().as_secs_f64(),
        if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
