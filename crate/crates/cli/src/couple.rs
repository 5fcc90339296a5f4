use serde::Serialize;
use sisnet::coupling::{
    check_domination, isolation_counterexample_marks, first_containment_violation, generate_marks, realize, search_attractiveness_violation,
    AttractivenessViolation, ContainmentViolation, RealizationRules,
};
use sisnet::dynamics::{all_infected, infected_set, VertexState};
use sisnet::seed::{mix, mix_path};
use sisnet::Graph;

use crate::config::ExperimentConfig;
use crate::{output, Failure};

#[derive(Serialize)]
struct DominationResult {
    graph: &'static str,
    realizations: usize,
    violations: usize,
    first: Option<ContainmentViolation>,
}

#[derive(Serialize)]
struct FixtureResult {
    smaller_final_infected: Vec<usize>,
    larger_final_infected: Vec<usize>,
    contained: bool,
}

#[derive(Serialize)]
struct Report {
    /// "comparison within isolation", or the swapped direction in self-test mode.
    direction: &'static str,
    domination: Vec<DominationResult>,
    counterexample: FixtureResult,
    attractiveness_search: Option<AttractivenessViolation>,
}

fn suite() -> [(&'static str, Graph); 3] {
    [("P4", Graph::path(4)), ("C5", Graph::cycle(5)), ("star10", Graph::star(10))]
}

fn infected(s: &[VertexState]) -> Vec<usize> {
    (0..s.len()).filter(|&v| s[v] == VertexState::Infected).collect()
}

/// Mark set `k` on suite graph `i` is seeded by `mix_path(seed, [3, i, k])`;
/// odd `k` start from the infected set `{v : mix(s, v) is odd}` with
/// `s = mix_path(seed, [4, i, k])`.
pub fn run(cfg: &ExperimentConfig, corrupt: bool) -> Result<(), Failure> {
    let (small, large) = if corrupt {
        (RealizationRules::Isolation, RealizationRules::Comparison)
    } else {
        (RealizationRules::Comparison, RealizationRules::Isolation)
    };
    let lambda = cfg.lambda[0];
    let mut domination = Vec::new();
    for (i, (name, g)) in suite().iter().enumerate() {
        let mut result = DominationResult { graph: name, realizations: cfg.trials, violations: 0, first: None };
        for k in 0..cfg.trials as u64 {
            let marks = generate_marks(g, lambda, cfg.alpha, cfg.horizon, mix_path(cfg.seed, &[3, i as u64, k]))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let init = if k % 2 == 0 {
                all_infected(g.n())
            } else {
                let s = mix_path(cfg.seed, &[4, i as u64, k]);
                let set: Vec<usize> = (0..g.n()).filter(|&v| mix(s, v as u64) & 1 == 1).collect();
                infected_set(g.n(), &set)
            };
            let found = if corrupt {
                first_containment_violation(g, &marks, (small, &init), (large, &init))
            } else {
                check_domination(g, &marks, &init).map(|r| match r {
                    sisnet::coupling::DominationReport::Dominated => None,
                    sisnet::coupling::DominationReport::Violated(v) => Some(v),
                })
            }
            .map_err(|e| Failure::Violation(e.to_string()))?;
            if let Some(v) = found {
                result.violations += 1;
                result.first.get_or_insert(v);
            }
        }
        domination.push(result);
    }

    let (g, m) = isolation_counterexample_marks();
    let a = realize(&g, &m, RealizationRules::Isolation, &infected_set(4, &[0])).map_err(|e| Failure::Violation(e.to_string()))?;
    let b = realize(&g, &m, RealizationRules::Isolation, &infected_set(4, &[0, 1])).map_err(|e| Failure::Violation(e.to_string()))?;
    let (fa, fb) = (infected(&a.final_state().unwrap_or_default()), infected(&b.final_state().unwrap_or_default()));
    let counterexample = FixtureResult { contained: fa.iter().all(|v| fb.contains(v)), smaller_final_infected: fa, larger_final_infected: fb };

    let search = search_attractiveness_violation(
        &Graph::path(4),
        RealizationRules::Isolation,
        lambda,
        cfg.alpha,
        cfg.horizon,
        cfg.trials.max(1) * 10,
        mix_path(cfg.seed, &[5]),
    )
    .map_err(|e| Failure::Usage(e.to_string()))?;

    let violations: usize = domination.iter().map(|d| d.violations).sum();
    let report = Report {
        direction: if corrupt { "isolation within comparison (self-test)" } else { "comparison within isolation" },
        domination,
        counterexample,
        attractiveness_search: search,
    };
    output::write_config(cfg)?;
    output::write_json(&cfg.out.join("coupling.json"), cfg, &report)?;
    for d in &report.domination {
        println!("domination on {}: {} violations in {} realizations", d.graph, d.violations, d.realizations);
    }
    println!(
        "isolation counterexample on P4: final infected {:?} vs {:?} (contained: {})",
        report.counterexample.smaller_final_infected, report.counterexample.larger_final_infected, report.counterexample.contained
    );
    match &report.attractiveness_search {
        Some(v) => println!("attractiveness violation on P4 at trial {} (expected for isolation)", v.trial),
        None => println!("no attractiveness violation found on P4"),
    }
    if violations > 0 {
        return Err(Failure::Violation(format!("{violations} domination violations")));
    }
    Ok(())
}
