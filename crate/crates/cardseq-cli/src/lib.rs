//! IO, file formats and batch drivers for the `cardseq` toolkit. The
//! library side exists so the acceptance suite can drive every command
//! in-process; the `cardseq` binary is a thin clap wrapper.

pub mod config;
pub mod example22;
pub mod fuzz;
pub mod pipeline;
pub mod report;

use anyhow::{anyhow, Context, Result};
use cardseq::amalgam::Certificate;
use cardseq::condition::Condition;
use cardseq::ordinal::Ordinal;
use cardseq::IntervalTree;
use serde::{Deserialize, Serialize};

/// On-disk wrapper for a condition: the tree parameter plus the triple.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionFile {
    pub delta: Ordinal,
    pub condition: Condition,
}

/// On-disk wrapper for a certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateFile {
    pub delta: Ordinal,
    pub certificate: Certificate,
}

pub fn parse_ordinal(s: &str) -> Result<Ordinal> {
    s.parse::<Ordinal>().map_err(|e| anyhow!("bad ordinal {s:?}: {e}"))
}

pub fn tree_for(delta: &Ordinal, max_depth: usize) -> Result<IntervalTree> {
    IntervalTree::with_max_depth(delta.clone(), max_depth)
        .map_err(|e| anyhow!("bad delta {delta}: {e}"))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
