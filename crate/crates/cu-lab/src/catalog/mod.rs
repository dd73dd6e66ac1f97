//! The example semigroups, their registry and the expected-verdict manifest.

pub mod algebraic;
pub mod grammar;
pub mod interval;
pub mod open12;
pub mod product;
pub mod seqcube;
pub mod sn;
pub mod uhf;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use algebraic::AlgebraicProduct;
pub use interval::Interval01Inf;
pub use open12::OpenInterval12;
pub use product::ProductFiniteByRay;
pub use seqcube::SeqCube;
pub use sn::Sn;
pub use uhf::UhfRay;

use crate::error::LabError;
use crate::properties::Property;

/// One concrete semigroup. Every generic operation is reached through
/// [`with_instance!`], so elements never cross between entries.
#[derive(Clone, Debug)]
pub enum Instance {
    Sn(Sn),
    Interval(Interval01Inf),
    Open12(OpenInterval12),
    Product(ProductFiniteByRay),
    SeqCube(SeqCube),
    Uhf(UhfRay),
    Algebraic(AlgebraicProduct),
}

/// Runs `$body` with `$s` bound to the concrete semigroup inside `$inst`.
#[macro_export]
macro_rules! with_instance {
    ($inst:expr, $s:ident => $body:expr) => {
        match $inst {
            $crate::catalog::Instance::Sn($s) => $body,
            $crate::catalog::Instance::Interval($s) => $body,
            $crate::catalog::Instance::Open12($s) => $body,
            $crate::catalog::Instance::Product($s) => $body,
            $crate::catalog::Instance::SeqCube($s) => $body,
            $crate::catalog::Instance::Uhf($s) => $body,
            $crate::catalog::Instance::Algebraic($s) => $body,
        }
    };
}

pub const INSTANCE_IDS: [&str; 9] = [
    "s1",
    "s2",
    "s3",
    "interval01",
    "open12",
    "product",
    "seqcube",
    "uhf",
    "algebraic",
];

impl Instance {
    pub fn id(&self) -> &str {
        use crate::semigroup::Semigroup;
        with_instance!(self, s => s.id())
    }

    pub fn entry(&self) -> &'static str {
        use crate::semigroup::Semigroup;
        with_instance!(self, s => s.entry())
    }
}

pub fn instance(id: &str) -> Result<Instance, LabError> {
    let inst = match id {
        "interval01" => Instance::Interval(Interval01Inf),
        "open12" => Instance::Open12(OpenInterval12),
        "product" => Instance::Product(ProductFiniteByRay),
        "seqcube" => Instance::SeqCube(SeqCube),
        "uhf" => Instance::Uhf(UhfRay),
        "algebraic" => Instance::Algebraic(AlgebraicProduct),
        _ => match id.strip_prefix('s').and_then(|n| n.parse::<u64>().ok()) {
            Some(n) if (1..=3).contains(&n) => Instance::Sn(Sn::new(n)),
            _ => return Err(LabError::UnknownEntry(id.to_string())),
        },
    };
    Ok(inst)
}

pub fn all_instances() -> Vec<Instance> {
    INSTANCE_IDS
        .iter()
        .map(|id| instance(id).expect("registered id"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cell {
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub citation: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceInfo {
    pub id: String,
    #[serde(default)]
    pub params: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capabilities {
    pub finite_carrier: bool,
    pub scalar_embedding: bool,
    pub indicator_stream: bool,
    pub simple: bool,
    pub algebraic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionalInfo {
    pub families: Vec<String>,
    pub completeness: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryManifest {
    pub entry: String,
    pub instances: Vec<InstanceInfo>,
    pub capabilities: Capabilities,
    pub functionals: FunctionalInfo,
    pub cells: BTreeMap<Property, Cell>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub entries: Vec<EntryManifest>,
}

const MANIFEST_JSON: &str = include_str!("../../data/manifest.json");

/// Shipped witness certificates as `(id, json)`.
pub const WITNESSES: [(&str, &str); 9] = [
    (
        "w_beta_product",
        include_str!("../../data/witnesses/w_beta_product.json"),
    ),
    ("w_beta_s1", include_str!("../../data/witnesses/w_beta_s1.json")),
    (
        "w_cfp_seqcube",
        include_str!("../../data/witnesses/w_cfp_seqcube.json"),
    ),
    (
        "w_o5_open12",
        include_str!("../../data/witnesses/w_o5_open12.json"),
    ),
    (
        "w_o6_seqcube",
        include_str!("../../data/witnesses/w_o6_seqcube.json"),
    ),
    (
        "w_omega_algebraic",
        include_str!("../../data/witnesses/w_omega_algebraic.json"),
    ),
    (
        "w_omega_interval",
        include_str!("../../data/witnesses/w_omega_interval.json"),
    ),
    (
        "w_omega_product",
        include_str!("../../data/witnesses/w_omega_product.json"),
    ),
    (
        "w_omega_seqcube",
        include_str!("../../data/witnesses/w_omega_seqcube.json"),
    ),
];

pub fn manifest() -> &'static Manifest {
    static CELL: OnceLock<Manifest> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(MANIFEST_JSON).expect("embedded manifest parses"))
}

pub fn entry_manifest(entry: &str) -> Option<&'static EntryManifest> {
    manifest().entries.iter().find(|e| e.entry == entry)
}

/// Expected verdict for one instance and property.
pub fn expected_cell(inst: &Instance, property: Property) -> Option<&'static Cell> {
    entry_manifest(inst.entry())?.cells.get(&property)
}

pub fn expected_verdicts(inst: &Instance) -> BTreeMap<Property, Cell> {
    entry_manifest(inst.entry())
        .map(|e| e.cells.clone())
        .unwrap_or_default()
}

pub fn witness_json(id: &str) -> Option<&'static str> {
    WITNESSES.iter().find(|(w, _)| *w == id).map(|(_, j)| *j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Semigroup;

    #[test]
    fn registry_round_trip() {
        for id in INSTANCE_IDS {
            assert_eq!(instance(id).unwrap().id(), id);
        }
        assert!(instance("s0").is_err());
        assert!(instance("s4").is_err());
        assert!(instance("reals").is_err());
    }

    #[test]
    fn manifest_covers_every_instance_and_property() {
        for inst in all_instances() {
            let cells = expected_verdicts(&inst);
            for p in Property::ALL {
                assert!(cells.contains_key(&p), "{} lacks {p}", inst.id());
            }
            let listed = entry_manifest(inst.entry()).unwrap();
            assert!(listed.instances.iter().any(|i| i.id == inst.id()));
        }
    }

    #[test]
    fn manifest_flags_match_code() {
        for inst in all_instances() {
            let caps = &entry_manifest(inst.entry()).unwrap().capabilities;
            with_instance!(&inst, s => {
                assert_eq!(caps.finite_carrier, s.is_finite_carrier(), "{}", s.id());
                assert_eq!(caps.simple, s.is_simple(), "{}", s.id());
                assert_eq!(caps.algebraic, s.is_algebraic(), "{}", s.id());
                assert_eq!(caps.scalar_embedding, s.scalar_term(&crate::ext_rat::ExtRat::one()).is_some());
                assert_eq!(caps.indicator_stream, s.indicator(1).is_some());
            });
        }
    }
}
