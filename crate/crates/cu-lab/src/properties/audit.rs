//! Consistency of a verdict row with the known implications between the
//! comparison properties.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{Class, Outcome, Property};
use crate::semigroup::Classification;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditFinding {
    pub instance: String,
    pub rule: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub violations: Vec<AuditFinding>,
    pub warnings: Vec<AuditFinding>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
    }
}

/// What the audit needs to know about one instance.
pub struct AuditRow<'a> {
    pub instance: &'a str,
    pub simple: bool,
    pub algebraic: bool,
    pub classification: Classification,
    pub classes: BTreeMap<Property, Class>,
    /// Outcome of the β-comparison check, when computed.
    pub beta: Option<&'a Outcome>,
}

const IMPLICATIONS: [(Property, Property, &str); 5] = [
    (
        Property::Beta,
        Property::Omega,
        "β-comparison implies ω-comparison",
    ),
    (Property::Beta, Property::Qq, "β-comparison implies (QQ)"),
    (Property::Qq, Property::Cfp, "(QQ) implies the CFP"),
    (
        Property::Qq,
        Property::Cancellation,
        "(QQ) implies cancellation of small elements at infinity",
    ),
    (
        Property::Beta,
        Property::Cancellation,
        "β-comparison implies cancellation of small elements at infinity",
    ),
];

/// A holding premise with a refuted conclusion is a violation; sampled
/// consistency never contradicts anything.
pub fn implication_audit(row: &AuditRow<'_>) -> AuditReport {
    let mut report = AuditReport::default();
    let class = |p: Property| row.classes.get(&p).copied().unwrap_or(Class::Unknown);
    let finding = |rule: &str, detail: String| AuditFinding {
        instance: row.instance.to_string(),
        rule: rule.to_string(),
        detail,
    };
    for (premise, conclusion, rule) in IMPLICATIONS {
        if class(premise) == Class::Holds && class(conclusion) == Class::Fails {
            report.violations.push(finding(
                rule,
                format!("{premise} holds but {conclusion} is refuted"),
            ));
        }
    }
    if row.simple && row.algebraic && class(Property::O5) == Class::Holds {
        let rule = "simple algebraic with (O5): (QQ) iff CFP and cancellation";
        let qq = class(Property::Qq);
        let cfp = class(Property::Cfp);
        let canc = class(Property::Cancellation);
        if qq == Class::Fails && cfp == Class::Holds && canc == Class::Holds {
            report.violations.push(finding(
                rule,
                "(QQ) refuted while CFP and cancellation hold".into(),
            ));
        }
        if qq == Class::Holds && (cfp == Class::Fails || canc == Class::Fails) {
            report.violations.push(finding(
                rule,
                "(QQ) holds while CFP or cancellation is refuted".into(),
            ));
        }
    }
    if row.classification == Classification::Mixed {
        let rule = "β-comparison forces stably finite or purely infinite";
        match row.beta {
            Some(Outcome::ProvedExhaustively { .. }) => report
                .violations
                .push(finding(rule, "β-comparison proved on a mixed entry".into())),
            Some(Outcome::ConsistentUpTo { .. }) => report
                .warnings
                .push(finding(rule, "β-comparison only sampled on a mixed entry".into())),
            _ => {}
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(classes: &[(Property, Class)]) -> AuditRow<'static> {
        AuditRow {
            instance: "test",
            simple: true,
            algebraic: false,
            classification: Classification::StablyFinite,
            classes: classes.iter().copied().collect(),
            beta: None,
        }
    }

    #[test]
    fn beta_without_qq_is_flagged() {
        let r = implication_audit(&row(&[
            (Property::Beta, Class::Holds),
            (Property::Qq, Class::Fails),
        ]));
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].rule.contains("(QQ)"));
    }

    #[test]
    fn converse_of_beta_to_omega_is_not_audited() {
        let r = implication_audit(&row(&[
            (Property::Omega, Class::Holds),
            (Property::Beta, Class::Fails),
        ]));
        assert!(r.is_clean());
    }

    #[test]
    fn mixed_entries_with_proved_beta() {
        let proved = Outcome::ProvedExhaustively { cases: 1 };
        let mut r = row(&[(Property::Beta, Class::Holds)]);
        r.classification = Classification::Mixed;
        r.beta = Some(&proved);
        assert_eq!(implication_audit(&r).violations.len(), 1);
        let sampled = Outcome::ConsistentUpTo {
            instances: 3,
            inconclusive: 0,
        };
        r.beta = Some(&sampled);
        let out = implication_audit(&r);
        assert!(out.is_clean());
        assert_eq!(out.warnings.len(), 1);
    }
}
