use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use sisnet::observables::{fit_scaling, ScalingReport, SizeSamples};

use crate::config::ExperimentConfig;
use crate::sweep::SweepRow;
use crate::{output, Failure};

#[derive(Serialize)]
struct Group {
    variant: String,
    lambda: f64,
    alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ScalingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct Analysis {
    inputs: Vec<String>,
    groups: Vec<Group>,
}

fn read_rows(dir: &Path) -> anyhow::Result<(Vec<String>, Vec<SweepRow>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|s| s.to_str()).unwrap_or("");
            name.starts_with("sweep") && name.ends_with(".jsonl")
        })
        .collect();
    files.sort();
    anyhow::ensure!(!files.is_empty(), "no sweep*.jsonl files in {}", dir.display());
    let mut rows = Vec::new();
    for path in &files {
        let f = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
        for (i, line) in BufReader::new(f).lines().enumerate() {
            let line = line?;
            let value: serde_json::Value =
                serde_json::from_str(&line).with_context(|| format!("{}:{}: not JSON", path.display(), i + 1))?;
            match value.get("type").and_then(|t| t.as_str()) {
                Some("header") => {}
                Some("run") => rows.push(
                    serde_json::from_value(value).with_context(|| format!("{}:{}: bad run record", path.display(), i + 1))?,
                ),
                _ => anyhow::bail!("{}:{}: unknown record", path.display(), i + 1),
            }
        }
    }
    Ok((files.iter().map(|p| p.display().to_string()).collect(), rows))
}

/// Groups runs by (variant, λ, α), fits each group's scaling and writes
/// `scaling.json` and `scaling.csv`.
pub fn run(cfg: &ExperimentConfig, input: &Path) -> Result<(), Failure> {
    let (inputs, rows) = read_rows(input).map_err(Failure::input)?;
    // f64 keys ordered by their bit patterns are fine: all rates are non-negative
    let mut grouped: BTreeMap<(String, u64, u64), BTreeMap<usize, Vec<sisnet::dynamics::Outcome>>> = BTreeMap::new();
    for r in rows {
        grouped
            .entry((r.variant.to_string(), r.lambda.to_bits(), r.alpha.to_bits()))
            .or_default()
            .entry(r.n)
            .or_default()
            .push(r.outcome);
    }
    let mut groups = Vec::new();
    for ((variant, l, a), by_n) in grouped {
        let table: Vec<SizeSamples> = by_n.into_iter().map(|(n, outcomes)| SizeSamples { n, outcomes }).collect();
        let (report, error) = match fit_scaling(&table) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
        groups.push(Group { variant, lambda: f64::from_bits(l), alpha: f64::from_bits(a), report, error });
    }
    output::write_config(cfg)?;
    let mut csv = output::create(&cfg.out.join("scaling.csv"))?;
    output::csv_preamble(&mut csv, cfg)?;
    writeln!(csv, "variant,lambda,alpha,n,median_tau,censored_frac,samples,censored")?;
    for g in &groups {
        if let Some(r) = &g.report {
            for s in &r.sizes {
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{}",
                    g.variant, g.lambda, g.alpha, s.n, s.median_tau, s.censored_frac, s.samples, s.censored
                )?;
            }
        }
    }
    csv.flush()?;
    for g in &groups {
        match (&g.report, &g.error) {
            (Some(r), _) => println!("{} lambda={} alpha={}: {}", g.variant, g.lambda, g.alpha, r.classification),
            (None, Some(e)) => println!("{} lambda={} alpha={}: {e}", g.variant, g.lambda, g.alpha),
            _ => {}
        }
    }
    output::write_json(&cfg.out.join("scaling.json"), cfg, Analysis { inputs, groups })?;
    Ok(())
}
