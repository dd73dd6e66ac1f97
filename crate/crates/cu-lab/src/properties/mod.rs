//! Comparison properties and axioms: three-valued verdicts backed by
//! exhaustive enumeration, verified certificates or seeded sampling.

pub mod audit;
pub mod certificate;
pub mod exhaustive;
pub mod sampled;

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{expected_cell, witness_json, Expected, Instance};
use crate::error::LabError;
use crate::semigroup::Semigroup;
use crate::with_instance;

pub use certificate::{verify_certificate, CertKind, CertificateFile, Rejection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    O5,
    O6,
    Cfp,
    Stcfp,
    Omega,
    Beta,
    Qq,
    Cancellation,
    WeakHalving,
    GlimmHalving,
    StablyFinite,
    PurelyInfinite,
    Simple,
    Algebraic,
}

impl Property {
    pub const ALL: [Property; 14] = [
        Property::O5,
        Property::O6,
        Property::Cfp,
        Property::Stcfp,
        Property::Omega,
        Property::Beta,
        Property::Qq,
        Property::Cancellation,
        Property::WeakHalving,
        Property::GlimmHalving,
        Property::StablyFinite,
        Property::PurelyInfinite,
        Property::Simple,
        Property::Algebraic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::O5 => "o5",
            Property::O6 => "o6",
            Property::Cfp => "cfp",
            Property::Stcfp => "stcfp",
            Property::Omega => "omega",
            Property::Beta => "beta",
            Property::Qq => "qq",
            Property::Cancellation => "cancellation",
            Property::WeakHalving => "weak_halving",
            Property::GlimmHalving => "glimm_halving",
            Property::StablyFinite => "stably_finite",
            Property::PurelyInfinite => "purely_infinite",
            Property::Simple => "simple",
            Property::Algebraic => "algebraic",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| LabError::UnknownProperty(s.to_string()))
    }
}

/// Search limits shared by every check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub samples: u64,
    pub k_beta: u64,
    pub kmax: u64,
    pub nmax: u64,
    pub n_probe: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            samples: 200,
            k_beta: 64,
            kmax: 64,
            nmax: 64,
            n_probe: 512,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// Decided over the whole finite carrier.
    ProvedExhaustively {
        cases: u64,
    },
    RefutedByCertificate {
        certificate: Box<CertificateFile>,
    },
    /// `instances` sampled cases were settled without a counterexample;
    /// `inconclusive` ones hit a search bound.
    ConsistentUpTo {
        instances: u64,
        inconclusive: u64,
    },
    CapabilityLimited {
        reason: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Holds,
    Fails,
    Unknown,
}

impl Outcome {
    pub fn class(&self) -> Class {
        match self {
            Outcome::ProvedExhaustively { .. } => Class::Holds,
            Outcome::ConsistentUpTo { instances, .. } if *instances > 0 => Class::Holds,
            Outcome::RefutedByCertificate { .. } => Class::Fails,
            _ => Class::Unknown,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::ProvedExhaustively { .. } => "ProvedExhaustively",
            Outcome::RefutedByCertificate { .. } => "RefutedByCertificate",
            Outcome::ConsistentUpTo { .. } => "ConsistentUpTo",
            Outcome::CapabilityLimited { .. } => "CapabilityLimited",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub instance: String,
    pub property: Property,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn matches(&self, expected: Expected) -> bool {
        match expected {
            Expected::Holds => self.outcome.class() == Class::Holds,
            Expected::Fails => self.outcome.class() == Class::Fails,
            Expected::NotApplicable => true,
        }
    }
}

/// Per-cell generator: the seed mixed with an FNV-1a hash of the cell name,
/// so cells do not share sample paths.
pub fn cell_rng(seed: u64, instance: &str, property: Property) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in instance.bytes().chain(*b":").chain(property.as_str().bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Refutation outcome after re-verifying the certificate from its JSON form.
pub(crate) fn refuted(cert: CertificateFile) -> Outcome {
    let round_trip = CertificateFile::from_json(&cert.to_json());
    match round_trip.as_ref().map(verify_certificate) {
        Ok(Ok(_)) => Outcome::RefutedByCertificate {
            certificate: Box::new(cert),
        },
        Ok(Err(rej)) => Outcome::CapabilityLimited {
            reason: format!("counterexample found but its certificate was {rej}"),
        },
        Err(e) => Outcome::CapabilityLimited {
            reason: format!("certificate did not round-trip: {e}"),
        },
    }
}

/// Runs the check for one property on one semigroup.
///
/// A supplied certificate is verified instead of searching; finite
/// carriers are enumerated; everything else is sampled.
pub fn check<S: Semigroup>(
    s: &S,
    property: Property,
    cert: Option<&CertificateFile>,
    bounds: &Bounds,
    seed: u64,
) -> Result<Verdict, Rejection> {
    let verdict = |outcome: Outcome, note: Option<String>| Verdict {
        instance: s.id().to_string(),
        property,
        outcome,
        note,
    };
    if let Some(c) = cert {
        if c.entry != s.id() {
            return Err(Rejection {
                leg: format!("certificate is for {}, not {}", c.entry, s.id()),
                transcript: Vec::new(),
            });
        }
        let accepted = property == c.property
            || (property == Property::Stcfp && c.property == Property::Cfp && s.is_simple());
        if !accepted {
            return Err(Rejection {
                leg: format!("certificate refutes {}, not {property}", c.property),
                transcript: Vec::new(),
            });
        }
        verify_certificate(c)?;
        return Ok(verdict(
            Outcome::RefutedByCertificate {
                certificate: Box::new(c.clone()),
            },
            None,
        ));
    }
    if s.carrier().is_some() {
        return Ok(verdict(exhaustive::decide(s, property, bounds), None));
    }
    let mut rng = cell_rng(seed, s.id(), property);
    if property == Property::Stcfp && s.is_simple() {
        let mut rng = cell_rng(seed, s.id(), Property::Cfp);
        let outcome = sampled::search(s, Property::Cfp, bounds, &mut rng);
        return Ok(verdict(
            outcome,
            Some("joint with CFP (simple entry)".to_string()),
        ));
    }
    Ok(verdict(sampled::search(s, property, bounds, &mut rng), None))
}

/// The shipped witness for a cell, if it belongs to this instance.
pub fn shipped_certificate(inst: &Instance, property: Property) -> Option<CertificateFile> {
    let cell = expected_cell(inst, property)?;
    let id = cell.witness.as_deref()?;
    let cert = CertificateFile::from_json(witness_json(id)?).ok()?;
    let fits = cert.entry == inst.id()
        && (cert.property == property || (property == Property::Stcfp && cert.property == Property::Cfp));
    fits.then_some(cert)
}

/// Verdict for one catalog cell: finite carriers are enumerated (and any
/// shipped certificate is re-verified on top), otherwise a shipped
/// certificate is verified, otherwise the sampled search runs.
pub fn evaluate(inst: &Instance, property: Property, bounds: &Bounds, seed: u64) -> Verdict {
    let shipped = shipped_certificate(inst, property);
    with_instance!(inst, s => {
        if s.carrier().is_some() {
            let mut v = check(s, property, None, bounds, seed).expect("no certificate supplied");
            if let Some(c) = &shipped {
                match verify_certificate(c) {
                    Ok(_) => {
                        v.note = Some(format!("shipped {} verified", c.id.clone().unwrap_or_default()))
                    }
                    Err(rej) => {
                        v.outcome = Outcome::CapabilityLimited {
                            reason: format!("shipped certificate {rej}"),
                        }
                    }
                }
            }
            return v;
        }
        match &shipped {
            Some(c) => match check(s, property, Some(c), bounds, seed) {
                Ok(mut v) => {
                    if property == Property::Stcfp {
                        v.note = Some("joint with CFP (simple entry)".to_string());
                    }
                    v
                }
                Err(rej) => Verdict {
                    instance: s.id().to_string(),
                    property,
                    outcome: Outcome::CapabilityLimited {
                        reason: format!("shipped certificate {rej}"),
                    },
                    note: None,
                },
            },
            None => check(s, property, None, bounds, seed).expect("no certificate supplied"),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.as_str().parse::<Property>().unwrap(), p);
            let json = serde_json::to_string(&p).unwrap();
            assert_eq!(json, format!("\"{}\"", p.as_str()));
        }
        assert!("beta_comparison".parse::<Property>().is_err());
    }

    #[test]
    fn cell_streams_differ() {
        use rand::Rng;
        let a: u64 = cell_rng(42, "uhf", Property::O5).gen();
        let b: u64 = cell_rng(42, "uhf", Property::O6).gen();
        let c: u64 = cell_rng(42, "uhf", Property::O5).gen();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }
}
