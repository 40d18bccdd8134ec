//! Structured run reports. Every number is an exact rational string.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::campaign::CampaignReport;
use crate::cover::AttractorComparison;
use crate::ifs::HomogeneousIFS;
use crate::rational::format_rational;
use crate::symmetry::{PairVerdict, PipelineRun, SymmetryCertificate};
use crate::text::format_ifs;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub input: BTreeMap<String, String>,
    pub verdict: VerdictRecord,
    pub certificate: Option<CertificateRecord>,
    /// Step durations in microseconds; only filled on request so reports stay reproducible.
    pub timings: Option<BTreeMap<String, u128>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<Vec<PropertyRecord>>,
    pub version: String,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictRecord {
    Symmetric,
    PreconditionFailed { name: String, detail: String },
    AttractorsDiffer { level: u32, lower_bound: String },
    Inconclusive { detail: String },
    CampaignPassed,
    CampaignFailed { failures: u64 },
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CertificateRecord {
    #[serde(rename = "C")]
    pub difference: String,
    pub digit_center: String,
    pub attractor_center: String,
    pub symmetry_level: u32,
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CoverStats {
    pub symmetry_level: Option<u32>,
    pub symmetry_intervals: Option<String>,
    pub attractor_test: String,
    pub attractor_level: Option<u32>,
    pub attractor_intervals: Option<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PropertyRecord {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub counterexample: Option<String>,
}

impl From<&SymmetryCertificate> for CertificateRecord {
    fn from(c: &SymmetryCertificate) -> Self {
        CertificateRecord {
            difference: format_rational(&c.difference),
            digit_center: format_rational(&c.digit_center),
            attractor_center: format_rational(&c.attractor_center),
            symmetry_level: c.symmetry_level,
            checks: c.checks.clone(),
        }
    }
}

impl From<&PairVerdict> for VerdictRecord {
    fn from(v: &PairVerdict) -> Self {
        match v {
            PairVerdict::Symmetric(_) => VerdictRecord::Symmetric,
            PairVerdict::PreconditionFailed { name, detail } => VerdictRecord::PreconditionFailed {
                name: name.name().to_string(),
                detail: detail.clone(),
            },
            PairVerdict::AttractorsDiffer { level, lower_bound } => VerdictRecord::AttractorsDiffer {
                level: *level,
                lower_bound: format_rational(lower_bound),
            },
            PairVerdict::Inconclusive { detail } => VerdictRecord::Inconclusive {
                detail: detail.clone(),
            },
        }
    }
}

fn count_at(maps: usize, level: u32) -> String {
    num_traits::pow(num_bigint::BigUint::from(maps), level as usize).to_string()
}

impl RunReport {
    pub fn for_pair(
        phi: &HomogeneousIFS,
        psi: &HomogeneousIFS,
        run: &PipelineRun,
        with_timings: bool,
    ) -> Self {
        let mut input = BTreeMap::new();
        input.insert("phi".to_string(), format_ifs(phi));
        input.insert("psi".to_string(), format_ifs(psi));
        let certificate = run.verdict.certificate();
        let (attractor_test, attractor_level) = match &run.attractor_test {
            None => ("not run".to_string(), None),
            Some(Ok(AttractorComparison::ConfirmedDistinct { level, lower })) => (
                format!("confirmed distinct, lower bound {}", format_rational(lower)),
                Some(*level),
            ),
            Some(Ok(AttractorComparison::IndistinguishableAt { epsilon, level, upper })) => (
                format!(
                    "indistinguishable at {}, upper bound {}",
                    format_rational(epsilon),
                    format_rational(upper)
                ),
                Some(*level),
            ),
            Some(Err(e)) => (e.clone(), None),
        };
        let timings = with_timings.then(|| {
            run.steps
                .iter()
                .map(|s| (s.name.to_string(), s.elapsed.as_micros()))
                .collect()
        });
        RunReport {
            input,
            verdict: (&run.verdict).into(),
            certificate: certificate.map(CertificateRecord::from),
            timings,
            cover: Some(CoverStats {
                symmetry_level: certificate.map(|c| c.symmetry_level),
                symmetry_intervals: certificate.map(|c| count_at(phi.len(), c.symmetry_level)),
                attractor_test,
                attractor_level,
                attractor_intervals: attractor_level.map(|k| count_at(phi.len(), k)),
            }),
            properties: None,
            version: VERSION.to_string(),
            seed: None,
        }
    }

    pub fn for_campaign(report: &CampaignReport) -> Self {
        let c = &report.config;
        let mut input = BTreeMap::new();
        input.insert("cases".to_string(), c.cases.to_string());
        input.insert("n_max".to_string(), c.n_max.to_string());
        input.insert("r_den_max".to_string(), c.r_den_max.to_string());
        let failures: u64 = report.properties.iter().map(|p| p.failed).sum();
        RunReport {
            input,
            verdict: if failures == 0 {
                VerdictRecord::CampaignPassed
            } else {
                VerdictRecord::CampaignFailed { failures }
            },
            certificate: None,
            timings: None,
            cover: None,
            properties: Some(
                report
                    .properties
                    .iter()
                    .map(|p| PropertyRecord {
                        name: p.name.to_string(),
                        passed: p.passed,
                        failed: p.failed,
                        skipped: p.skipped,
                        counterexample: p.counterexample.clone(),
                    })
                    .collect(),
            ),
            version: VERSION.to_string(),
            seed: Some(c.seed),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Line-oriented `key: value` rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.input {
            let _ = writeln!(out, "input.{k}: {v}");
        }
        let verdict = serde_json::to_value(&self.verdict).expect("serializes");
        if let Some(map) = verdict.as_object() {
            for (k, v) in map {
                let text = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
                let _ = writeln!(out, "verdict.{k}: {text}");
            }
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(out, "certificate.C: {}", c.difference);
            let _ = writeln!(out, "certificate.digit_center: {}", c.digit_center);
            let _ = writeln!(out, "certificate.attractor_center: {}", c.attractor_center);
            let _ = writeln!(out, "certificate.symmetry_level: {}", c.symmetry_level);
            for check in &c.checks {
                let _ = writeln!(out, "certificate.check: {check}");
            }
        }
        if let Some(cover) = &self.cover {
            let _ = writeln!(out, "cover.attractor_test: {}", cover.attractor_test);
            if let Some(k) = cover.attractor_level {
                let _ = writeln!(out, "cover.attractor_level: {k}");
            }
        }
        if let Some(props) = &self.properties {
            for p in props {
                let _ = writeln!(
                    out,
                    "property.{}: passed {} failed {} skipped {}",
                    p.name, p.passed, p.failed, p.skipped
                );
                if let Some(cx) = &p.counterexample {
                    let _ = writeln!(out, "property.{}.counterexample: {cx}", p.name);
                }
            }
        }
        if let Some(t) = &self.timings {
            for (k, v) in t {
                let _ = writeln!(out, "timing.{k}_us: {v}");
            }
        }
        let _ = writeln!(out, "version: {}", self.version);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        out
    }
}
