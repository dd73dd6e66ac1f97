//! Verdict report over the catalog: every configured cell is evaluated,
//! compared with the manifest and audited against the implication table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::{all_instances, expected_cell, instance, Expected, Instance};
use crate::error::LabError;
use crate::properties::audit::{implication_audit, AuditReport, AuditRow};
use crate::properties::{evaluate, Bounds, Class, Outcome, Property};
use crate::semigroup::Semigroup;
use crate::with_instance;

pub const REPORT_SCHEMA: &str = "cu-lab.report.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportConfig {
    /// Instance ids, in catalog order.
    pub instances: Vec<String>,
    pub properties: Vec<Property>,
    pub seed: u64,
    pub bounds: Bounds,
    pub format: Format,
}

impl ReportConfig {
    pub fn all(seed: u64) -> Self {
        ReportConfig {
            instances: all_instances().iter().map(|i| i.id().to_string()).collect(),
            properties: Property::ALL.to_vec(),
            seed,
            bounds: Bounds::default(),
            format: Format::Json,
        }
    }

    /// Resolves a selection of instance ids or entry names (`S_n` expands
    /// to every size) into catalog order.
    pub fn select_instances(names: &[String]) -> Result<Vec<String>, LabError> {
        let catalog = all_instances();
        let mut keep = vec![false; catalog.len()];
        for name in names {
            let mut hit = false;
            for (i, inst) in catalog.iter().enumerate() {
                if inst.id() == name || inst.entry() == name {
                    keep[i] = true;
                    hit = true;
                }
            }
            if !hit {
                return Err(LabError::UnknownEntry(name.clone()));
            }
        }
        Ok(catalog
            .iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(inst, _)| inst.id().to_string())
            .collect())
    }

    pub fn select_properties(names: &[String]) -> Result<Vec<Property>, LabError> {
        let wanted = names
            .iter()
            .map(|n| n.parse::<Property>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Property::ALL.into_iter().filter(|p| wanted.contains(p)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub instance: String,
    pub entry: String,
    pub property: Property,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub expected: Expected,
    #[serde(rename = "match")]
    pub matched: bool,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub seed: u64,
    pub bounds: Bounds,
    pub entries: Vec<String>,
    pub rows: Vec<ReportRow>,
    pub audit: AuditReport,
}

impl Report {
    pub fn mismatches(&self) -> Vec<&ReportRow> {
        self.rows.iter().filter(|r| !r.matched).collect()
    }

    pub fn is_success(&self) -> bool {
        self.mismatches().is_empty() && self.audit.is_clean()
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialises");
        out.push('\n');
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# cu-lab verdict report\n");
        let _ = writeln!(out, "seed {} · samples {}\n", self.seed, self.bounds.samples);
        let _ = writeln!(
            out,
            "| instance | property | outcome | expected | match | citation |"
        );
        let _ = writeln!(out, "|---|---|---|---|---|---|");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                r.instance,
                r.property,
                outcome_cell(&r.outcome),
                expected_name(r.expected),
                if r.matched { "yes" } else { "**no**" },
                r.citation.replace('|', "\\|"),
            );
        }
        let _ = writeln!(out, "\n## Audit\n");
        if self.audit.violations.is_empty() && self.audit.warnings.is_empty() {
            let _ = writeln!(out, "no findings");
        }
        for (tag, list) in [
            ("violation", &self.audit.violations),
            ("warning", &self.audit.warnings),
        ] {
            for f in list {
                let _ = writeln!(out, "- {tag} on {}: {} ({})", f.instance, f.rule, f.detail);
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }
}

fn expected_name(e: Expected) -> &'static str {
    match e {
        Expected::Holds => "holds",
        Expected::Fails => "fails",
        Expected::NotApplicable => "n/a",
    }
}

fn outcome_cell(o: &Outcome) -> String {
    match o {
        Outcome::ProvedExhaustively { cases } => format!("ProvedExhaustively ({cases})"),
        Outcome::RefutedByCertificate { certificate } => match &certificate.id {
            Some(id) => format!("RefutedByCertificate ({id})"),
            None => "RefutedByCertificate".to_string(),
        },
        Outcome::ConsistentUpTo {
            instances,
            inconclusive,
        } => format!("ConsistentUpTo ({instances}, {inconclusive} inconclusive)"),
        Outcome::CapabilityLimited { reason } => format!("CapabilityLimited: {reason}"),
    }
}

fn audit_instance(inst: &Instance, rows: &[ReportRow]) -> AuditReport {
    let classes: BTreeMap<Property, Class> = rows.iter().map(|r| (r.property, r.outcome.class())).collect();
    let beta = rows
        .iter()
        .find(|r| r.property == Property::Beta)
        .map(|r| &r.outcome);
    with_instance!(inst, s => implication_audit(&AuditRow {
        instance: s.id(),
        simple: s.is_simple(),
        algebraic: s.is_algebraic(),
        classification: s.classification(),
        classes,
        beta,
    }))
}

pub fn run_report(config: &ReportConfig) -> Result<Report, LabError> {
    let mut rows = Vec::new();
    let mut audit = AuditReport::default();
    let mut entries: Vec<String> = Vec::new();
    for id in &config.instances {
        let inst = instance(id)?;
        if !entries.iter().any(|e| e == inst.entry()) {
            entries.push(inst.entry().to_string());
        }
        let mut own = Vec::new();
        for &property in &config.properties {
            let verdict = evaluate(&inst, property, &config.bounds, config.seed);
            let cell = expected_cell(&inst, property);
            let expected = cell.map_or(Expected::NotApplicable, |c| c.expected);
            own.push(ReportRow {
                instance: verdict.instance.clone(),
                entry: inst.entry().to_string(),
                property,
                matched: verdict.matches(expected),
                outcome: verdict.outcome,
                note: verdict.note,
                expected,
                citation: cell.map(|c| c.citation.clone()).unwrap_or_default(),
            });
        }
        audit.extend(audit_instance(&inst, &own));
        rows.extend(own);
    }
    Ok(Report {
        schema: REPORT_SCHEMA,
        seed: config.seed,
        bounds: config.bounds.clone(),
        entries,
        rows,
        audit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_omega_and_beta() {
        let config = ReportConfig {
            instances: vec!["s1".into()],
            properties: vec![Property::Omega, Property::Beta],
            ..ReportConfig::all(42)
        };
        let report = run_report(&config).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].outcome.label(), "ProvedExhaustively");
        assert_eq!(report.rows[1].outcome.label(), "RefutedByCertificate");
        assert!(report.is_success());
    }

    #[test]
    fn selection_keeps_catalog_order() {
        let got = ReportConfig::select_instances(&["uhf".into(), "S_n".into()]).unwrap();
        assert_eq!(got, ["s1", "s2", "s3", "uhf"]);
        assert!(ReportConfig::select_instances(&["reals".into()]).is_err());
        let props = ReportConfig::select_properties(&["beta".into(), "o5".into()]).unwrap();
        assert_eq!(props, [Property::O5, Property::Beta]);
    }
}
