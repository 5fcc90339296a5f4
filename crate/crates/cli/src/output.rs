//! Output helpers. Every file carries the producing version and config:
//! JSON files as fields, CSV files as leading `#` comment lines.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::VERSION;

pub fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

pub fn csv_preamble<W: Write>(out: &mut W, cfg: &ExperimentConfig) -> std::io::Result<()> {
    writeln!(out, "# sisnet {VERSION}")?;
    writeln!(out, "# config {}", serde_json::to_string(cfg).expect("config serializes"))
}

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub version: &'static str,
    pub config: &'a ExperimentConfig,
    #[serde(flatten)]
    pub body: T,
}

pub fn write_json<T: Serialize>(path: &Path, cfg: &ExperimentConfig, body: T) -> anyhow::Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, &Envelope { version: VERSION, config: cfg, body })?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

/// Writes the effective configuration as `config.json` in the output
/// directory so a run can be repeated with `--config`.
pub fn write_config(cfg: &ExperimentConfig) -> anyhow::Result<()> {
    let path = cfg.out.join("config.json");
    std::fs::write(&path, cfg.to_json() + "\n").with_context(|| format!("writing {}", path.display()))
}
