//! The JSON document every command emits (schema version 1).
//!
//! Field names are stable within a schema version. Optional sections are
//! omitted when a command does not produce them; every constant key is always
//! present and is `null` when not computed.

use asray_core::ballean::AxiomReport;
use asray_core::ray::{Evidence, Scope};
use asray_core::VertexId;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub command: String,
    pub input: InputEcho,
    pub verdict: VerdictKind,
    pub constants: Constants,
    pub scope: Scope,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray: Option<RaySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounded: Option<BoundedSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numbering: Option<Vec<(VertexId, VertexId)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    AsymptoticRay,
    Refuted,
    Bounded,
    Asymorphic,
    NotAsymorphic,
    Lipschitz,
    Ballean,
    NotBallean,
    Numbered,
}

impl VerdictKind {
    /// 0 for positive outcomes, 1 for refutations.
    pub fn exit_code(self) -> u8 {
        match self {
            VerdictKind::Refuted | VerdictKind::NotAsymorphic | VerdictKind::NotBallean => 1,
            _ => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::AsymptoticRay => "asymptotic-ray",
            VerdictKind::Refuted => "refuted",
            VerdictKind::Bounded => "bounded",
            VerdictKind::Asymorphic => "asymorphic",
            VerdictKind::NotAsymorphic => "not-asymorphic",
            VerdictKind::Lipschitz => "lipschitz",
            VerdictKind::Ballean => "ballean",
            VerdictKind::NotBallean => "not-ballean",
            VerdictKind::Numbered => "numbered",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputEcho {
    /// "generator", "edge-list" or "ball-table".
    pub kind: String,
    /// Generator spec or file path as given.
    pub source: String,
    pub root: Option<VertexId>,
    pub depth: usize,
    /// "auto" or the explicit margin.
    pub margin: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    pub r: Option<u64>,
    pub alpha: Option<u64>,
    pub forward_m: Option<u64>,
    pub inverse_m: Option<u64>,
    pub t: Option<u64>,
    pub s: Option<u64>,
    pub max_degree: Option<u64>,
    pub diameter: Option<u64>,
    pub vertex_count: Option<u64>,
}

impl Constants {
    /// Present constants in schema order.
    pub fn present(&self) -> Vec<(&'static str, u64)> {
        [
            ("r", self.r),
            ("alpha", self.alpha),
            ("forward_m", self.forward_m),
            ("inverse_m", self.inverse_m),
            ("t", self.t),
            ("s", self.s),
            ("max_degree", self.max_degree),
            ("diameter", self.diameter),
            ("vertex_count", self.vertex_count),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentSample {
    pub vertex: VertexId,
    pub arrow_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaySection {
    pub arrow_prefix: Vec<VertexId>,
    pub arrow_length: usize,
    pub margin: usize,
    pub margin_satisfied: bool,
    pub last_layer: usize,
    pub layer_sizes: Vec<u64>,
    pub max_degree_per_layer: Vec<u64>,
    pub cover_per_layer: Vec<u64>,
    pub sphere_radius_per_layer: Vec<u64>,
    pub sphere_centers: Vec<VertexId>,
    pub assignment_samples: Vec<AssignmentSample>,
    pub forward_witness: Option<(VertexId, VertexId)>,
    pub inverse_witness: Option<(VertexId, VertexId)>,
    pub numbering_is_asymorphism: bool,
    /// Recorded for traceability only.
    pub proof_k: Option<u64>,
    pub degree_bound: Option<u64>,
    pub forward_within_2alpha_plus_1: Option<bool>,
    pub inverse_within_2alpha_plus_1_times_alpha_plus_1: Option<bool>,
    pub evidence: Vec<Evidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeSection {
    pub sizes: Vec<u64>,
    pub closed: Vec<bool>,
    pub components_sample: Vec<Vec<VertexId>>,
    pub asymptotic_ray: bool,
    /// Ray criteria and component sizes were compared on the same input.
    pub agreement_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundedSection {
    pub vertex_count: u64,
    pub diameter: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub against: Option<Classification>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Classification {
    pub source: String,
    pub vertex_count: u64,
    pub diameter: u64,
    pub asymorphic: bool,
    pub witness: Option<Vec<(VertexId, VertexId)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSection {
    /// Generator spec, edge-list path or "ray".
    pub target: String,
    pub mapped: usize,
    pub forward_witness: Option<(VertexId, VertexId)>,
    pub bijective: bool,
    pub inverse_witness: Option<(VertexId, VertexId)>,
    pub is_asymorphism: Option<bool>,
    /// Constants recomputed over all pairs, for small exact inputs.
    pub oracle_forward_m: Option<u64>,
    pub oracle_inverse_m: Option<u64>,
}

impl CertificateDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
