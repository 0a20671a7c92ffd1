//! Scripted pipelines: validate a condition, extend it point by point, then
//! validate, amalgamate and verify a certificate, with one report line per
//! stage.

use anyhow::Result;
use cardseq::amalgam::generate::{generate_certificate, Shape};
use cardseq::amalgam::{amalgamate, validate_certificate, verify_amalgam, Certificate};
use cardseq::condition::Condition;
use cardseq::ordinal::Ordinal;
use serde::{Deserialize, Serialize};

use crate::report::Report;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtendStep {
    pub x: usize,
    pub alpha: Ordinal,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenerateStep {
    pub seed: u64,
    pub shape: Shape,
}

/// A pipeline file: the tree parameter plus any of the optional stages.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Pipeline {
    pub delta: Ordinal,
    #[serde(default)]
    pub condition: Option<Condition>,
    #[serde(default)]
    pub extend: Vec<ExtendStep>,
    #[serde(default)]
    pub certificate: Option<Certificate>,
    #[serde(default)]
    pub generate: Option<GenerateStep>,
}

pub fn run(pipeline: &Pipeline, max_depth: usize) -> Result<Report> {
    let mut report = Report::default();
    let tree = crate::tree_for(&pipeline.delta, max_depth)?;

    if let Some(condition) = &pipeline.condition {
        let validation = condition.validate(&tree);
        report.check("validate", validation.is_valid(), format!("{validation}"));
        let mut current = condition.clone();
        for (k, step) in pipeline.extend.iter().enumerate() {
            if step.x >= current.len() {
                report.check(format!("extend[{k}]"), false, "index out of range");
                break;
            }
            match current.add_point_below(step.x, &step.alpha, &tree) {
                Ok(added) => {
                    let validation = added.condition.validate(&tree);
                    let extends = added.condition.extends(&current);
                    report.check(
                        format!("extend[{k}]"),
                        validation.is_valid() && extends,
                        format!(
                            "added {} points below index {}; {validation}",
                            added.added.len(),
                            step.x
                        ),
                    );
                    current = added.condition;
                }
                Err(e) => {
                    report.check(format!("extend[{k}]"), false, format!("{e}"));
                    break;
                }
            }
        }
    }

    let certificate = match (&pipeline.certificate, &pipeline.generate) {
        (Some(cert), _) => Some(cert.clone()),
        (None, Some(step)) => match generate_certificate(&tree, &step.shape, step.seed) {
            Ok(cert) => {
                report.check("generate", true, format!("{} points per side", cert.p.len()));
                Some(cert)
            }
            Err(e) => {
                report.check("generate", false, format!("{e}"));
                None
            }
        },
        (None, None) => None,
    };
    if let Some(cert) = certificate {
        let validation = validate_certificate(&cert, &tree);
        report.check("validate-certificate", validation.is_valid(), format!("{validation}"));
        if validation.is_valid() {
            match amalgamate(&cert, &tree) {
                Ok(trace) => {
                    report.check(
                        "amalgamate",
                        true,
                        format!("|A_r| = {}, {} fresh infima points", trace.r.len(), trace.y_of.len()),
                    );
                    let verdict = verify_amalgam(&cert, &trace, &tree);
                    report.check("verify", verdict.is_valid(), format!("{verdict}"));
                }
                Err(e) => report.check("amalgamate", false, format!("{e}")),
            }
        }
    }
    Ok(report)
}
