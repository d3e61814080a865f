use std::cmp::Ordering;

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub instance: String,
    pub solver: String,
    /// Mode label: `do`, `bo` or `co`.
    pub mode: String,
    /// Update-strategy label, `-` for heuristics.
    pub strategy: String,
    pub seed: Option<u64>,
    pub days: u64,
    pub cost: f64,
    pub score: f64,
    pub iterations: usize,
    pub dominant_ops: u64,
    pub wall_seconds: f64,
}

/// Summary of the repetitions of one (instance, mode, strategy, solver)
/// cell. Spreads are population standard deviations as a percentage of
/// the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub instance: String,
    pub mode: String,
    pub strategy: String,
    pub solver: String,
    pub runs: usize,
    pub best_days: u64,
    pub best_cost: f64,
    pub best_score: f64,
    pub avg_days: f64,
    pub sd_days_pct: f64,
    pub avg_cost: f64,
    pub sd_cost_pct: f64,
    pub avg_score: f64,
    pub sd_score_pct: f64,
    pub avg_iterations: f64,
    pub avg_dominant_ops: f64,
    pub avg_wall_seconds: f64,
    /// Winner among the strategies of the same (instance, mode, solver).
    pub best_strategy: bool,
}

impl Aggregate {
    /// (primary average, secondary average, spread of primary) for the
    /// cell's mode.
    fn ranking_key(&self) -> (f64, f64, f64) {
        match self.mode.as_str() {
            "do" => (self.avg_days, self.avg_cost, self.sd_days_pct),
            "co" => (self.avg_cost, self.avg_days, self.sd_cost_pct),
            _ => (self.avg_score, self.avg_days, self.sd_score_pct),
        }
    }
}

/// Integers print without a fraction, anything else with two decimals.
pub fn format_number(value: f64) -> String {
    if value.fract() == 0.0 && value.abs() < 1e15 {
        format!("{value:.0}")
    } else {
        format!("{value:.2}")
    }
}

fn format_score(value: f64) -> String {
    format!("{value:.6}")
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn spread_pct(values: &[f64]) -> f64 {
    let m = mean(values);
    if m == 0.0 {
        return 0.0;
    }
    let var = values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / values.len() as f64;
    var.sqrt() / m.abs() * 100.0
}

/// Best run of a cell: primary criterion of the mode first, secondary
/// aspect on ties.
fn better_run(mode: &str, a: &RunStats, b: &RunStats) -> Ordering {
    let days = |r: &RunStats| r.days as f64;
    let (pa, sa, pb, sb) = match mode {
        "do" => (days(a), a.cost, days(b), b.cost),
        "co" => (a.cost, days(a), b.cost, days(b)),
        _ => (a.score, days(a), b.score, days(b)),
    };
    pa.total_cmp(&pb).then(sa.total_cmp(&sb))
}

/// Groups runs by (instance, mode, strategy, solver) in order of first
/// appearance and marks the best strategy per (instance, mode, solver).
pub fn aggregate_runs(runs: &[RunStats]) -> Vec<Aggregate> {
    let mut groups: Vec<Vec<&RunStats>> = Vec::new();
    for run in runs {
        let same = |g: &&mut Vec<&RunStats>| {
            let f = g[0];
            f.instance == run.instance && f.mode == run.mode && f.strategy == run.strategy && f.solver == run.solver
        };
        match groups.iter_mut().find(same) {
            Some(g) => g.push(run),
            None => groups.push(vec![run]),
        }
    }

    let mut out: Vec<Aggregate> = groups
        .into_iter()
        .map(|g| {
            let first = g[0];
            let best = g
                .iter()
                .copied()
                .min_by(|a, b| better_run(&first.mode, a, b))
                .expect("groups are non-empty");
            let days: Vec<f64> = g.iter().map(|r| r.days as f64).collect();
            let cost: Vec<f64> = g.iter().map(|r| r.cost).collect();
            let score: Vec<f64> = g.iter().map(|r| r.score).collect();
            Aggregate {
                instance: first.instance.clone(),
                mode: first.mode.clone(),
                strategy: first.strategy.clone(),
                solver: first.solver.clone(),
                runs: g.len(),
                best_days: best.days,
                best_cost: best.cost,
                best_score: best.score,
                avg_days: mean(&days),
                sd_days_pct: spread_pct(&days),
                avg_cost: mean(&cost),
                sd_cost_pct: spread_pct(&cost),
                avg_score: mean(&score),
                sd_score_pct: spread_pct(&score),
                avg_iterations: mean(&g.iter().map(|r| r.iterations as f64).collect::<Vec<_>>()),
                avg_dominant_ops: mean(&g.iter().map(|r| r.dominant_ops as f64).collect::<Vec<_>>()),
                avg_wall_seconds: mean(&g.iter().map(|r| r.wall_seconds).collect::<Vec<_>>()),
                best_strategy: false,
            }
        })
        .collect();

    for i in 0..out.len() {
        let rivals = (0..out.len()).filter(|&j| {
            out[j].instance == out[i].instance && out[j].mode == out[i].mode && out[j].solver == out[i].solver
        });
        let winner = rivals
            .min_by(|&a, &b| {
                let (ka, kb) = (out[a].ranking_key(), out[b].ranking_key());
                ka.0.total_cmp(&kb.0)
                    .then(ka.1.total_cmp(&kb.1))
                    .then(ka.2.total_cmp(&kb.2))
                    .then(a.cmp(&b))
            })
            .expect("a cell rivals itself");
        out[i].best_strategy = winner == i;
    }
    out
}

fn to_string(writer: csv::Writer<Vec<u8>>) -> String {
    let bytes = writer.into_inner().expect("writing to memory cannot fail");
    String::from_utf8(bytes).expect("csv output is UTF-8")
}

/// One row per run. `timing` adds the wall-clock column, which makes the
/// output differ between otherwise identical invocations.
pub fn write_runs_csv(runs: &[RunStats], timing: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "instance",
        "solver",
        "mode",
        "strategy",
        "seed",
        "days",
        "cost",
        "score",
        "iterations",
        "dominant_ops",
    ];
    if timing {
        header.push("wall_seconds");
    }
    w.write_record(&header).expect("in-memory write");
    for r in runs {
        let mut row = vec![
            r.instance.clone(),
            r.solver.clone(),
            r.mode.clone(),
            r.strategy.clone(),
            r.seed.map_or_else(|| "-".into(), |s| s.to_string()),
            r.days.to_string(),
            format_number(r.cost),
            format_score(r.score),
            r.iterations.to_string(),
            r.dominant_ops.to_string(),
        ];
        if timing {
            row.push(format!("{:.3}", r.wall_seconds));
        }
        w.write_record(&row).expect("in-memory write");
    }
    to_string(w)
}

/// One row per cell, best-strategy marker last.
pub fn write_results_csv(aggregates: &[Aggregate], timing: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "instance",
        "mode",
        "strategy",
        "solver",
        "runs",
        "best_days",
        "best_cost",
        "avg_days",
        "sd_days_pct",
        "avg_cost",
        "sd_cost_pct",
        "best_score",
        "avg_score",
        "avg_iterations",
        "avg_dominant_ops",
    ];
    if timing {
        header.push("avg_wall_seconds");
    }
    header.push("best_strategy");
    w.write_record(&header).expect("in-memory write");
    for a in aggregates {
        let mut row = vec![
            a.instance.clone(),
            a.mode.clone(),
            a.strategy.clone(),
            a.solver.clone(),
            a.runs.to_string(),
            a.best_days.to_string(),
            format_number(a.best_cost),
            format_number(a.avg_days),
            format!("{:.2}", a.sd_days_pct),
            format_number(a.avg_cost),
            format!("{:.2}", a.sd_cost_pct),
            format_score(a.best_score),
            format_score(a.avg_score),
            format_number(a.avg_iterations),
            format_number(a.avg_dominant_ops),
        ];
        if timing {
            row.push(format!("{:.3}", a.avg_wall_seconds));
        }
        row.push(if a.best_strategy { "*".into() } else { String::new() });
        w.write_record(&row).expect("in-memory write");
    }
    to_string(w)
}
