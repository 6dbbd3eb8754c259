//! The machine-readable report emitted by `compose` and `analyze`.

use serde::{Deserialize, Serialize};

use crate::compose::{CompositionResult, SearchConfig};
use crate::error::{Error, Result};
use crate::fractal::FractalReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub raga: String,
    pub length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correlations: Option<CorrelationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fractal: Option<FractalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pool_size: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_index: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSection {
    pub c1: f64,
    pub c2: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractalSection {
    pub dimension: f64,
    pub fit_r2: f64,
    pub scales: Vec<ScaleEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleEntry {
    pub box_size: f64,
    pub count: u64,
}

impl From<&FractalReport<f64>> for FractalSection {
    fn from(report: &FractalReport<f64>) -> Self {
        Self {
            dimension: report.dimension,
            fit_r2: report.fit_r2,
            scales: report
                .scales
                .iter()
                .map(|&(box_size, count)| ScaleEntry { box_size, count })
                .collect(),
        }
    }
}

impl ReportDocument {
    pub fn new(raga: &str, length: usize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            raga: raga.to_string(),
            length,
            lambda: None,
            x0: None,
            correlations: None,
            fractal: None,
            seed: None,
            pool_size: None,
            mode: None,
            candidate_index: None,
        }
    }

    /// Full provenance report for a finished search.
    pub fn for_composition(
        result: &CompositionResult,
        cfg: &SearchConfig,
        pool: u64,
        fractal: Option<&FractalReport<f64>>,
    ) -> Self {
        Self {
            lambda: result.generator_params.map(|p| p.lambda()),
            x0: result.generator_params.map(|p| p.x0()),
            correlations: Some(CorrelationSection {
                c1: result.c1,
                c2: result.c2,
                score: result.score,
            }),
            fractal: fractal.map(FractalSection::from),
            seed: Some(result.seed),
            pool_size: Some(pool),
            mode: Some(cfg.mode.to_string()),
            candidate_index: Some(result.candidate_index),
            ..Self::new(cfg.raga.name(), cfg.length)
        }
    }

    /// Rejects non-finite numerics; the writer refuses to emit such reports.
    pub fn validate(&self) -> Result<()> {
        let finite = |v: Option<f64>, name: &'static str| match v {
            Some(v) if !v.is_finite() => Err(Error::NonFiniteReportField(name)),
            _ => Ok(()),
        };
        finite(self.lambda, "lambda")?;
        finite(self.x0, "x0")?;
        if let Some(c) = &self.correlations {
            finite(Some(c.c1), "correlations.c1")?;
            finite(Some(c.c2), "correlations.c2")?;
            finite(Some(c.score), "correlations.score")?;
        }
        if let Some(f) = &self.fractal {
            finite(Some(f.dimension), "fractal.dimension")?;
            finite(Some(f.fit_r2), "fractal.fit_r2")?;
            for entry in &f.scales {
                finite(Some(entry.box_size), "fractal.scales.box_size")?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut report = ReportDocument::new("bhupali", 12);
        report.lambda = Some(3.99);
        report.x0 = Some(0.1);
        report.fractal = Some(FractalSection {
            dimension: 1.5,
            fit_r2: 0.99,
            scales: vec![ScaleEntry {
                box_size: 0.5,
                count: 4,
            }],
        });
        let json = report.to_json();
        assert_eq!(ReportDocument::from_json(&json).unwrap(), report);
        assert!(json.contains("\"schema_version\": 1"));
        report.validate().unwrap();
    }

    #[test]
    fn optional_sections_are_omitted() {
        let report = ReportDocument::new("bhairabi", 3);
        let json = report.to_json();
        assert!(!json.contains("lambda"));
        assert!(!json.contains("correlations"));
        assert!(!json.contains("candidate_index"));
    }

    #[test]
    fn validation_rejects_non_finite_values() {
        let mut report = ReportDocument::new("bhupali", 2);
        report.lambda = Some(f64::NAN);
        assert!(matches!(
            report.validate(),
            Err(Error::NonFiniteReportField("lambda"))
        ));
    }
}
