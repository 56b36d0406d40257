//! Certificate JSON formats and their verifier.
//!
//! Solver runs emit machine-checkable JSON; `verify` re-validates a
//! certificate against the original graph from scratch: colorings
//! through the edge checker, witnesses through the exact oracle plus
//! the per-reason size bounds. Field order is fixed by the structs, so
//! identical runs produce byte-identical output.

use crate::cycle::{Certificate, SolveResult, Witness, WitnessReason};
use crate::format::to_graph6;
use crate::graph::Graph;
use crate::hom::{find_hom, verify_hom, HomMapping, ListAssignment, TargetGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Result of one coloring run.
/// `status` is `colored`, `witness`, or `error`; exit codes follow as
/// 0, 1, 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColorOutcome {
    pub status: String,
    pub k: usize,
    pub coloring: Option<Vec<usize>>,
    pub witness: Option<WitnessJson>,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub vertices: Vec<usize>,
    pub reason: WitnessReason,
    pub oracle_verified: bool,
}

impl ColorOutcome {
    pub fn from_result(k: usize, result: &SolveResult) -> Self {
        match &result.certificate {
            Certificate::Coloring(c) => ColorOutcome {
                status: "colored".to_string(),
                k,
                coloring: Some(c.colors.clone()),
                witness: None,
                flags: result.flags.clone(),
            },
            Certificate::Witness(w) => ColorOutcome {
                status: "witness".to_string(),
                k,
                coloring: None,
                witness: Some(WitnessJson {
                    vertices: w.vertices.clone(),
                    reason: w.reason,
                    oracle_verified: w.transcript.verified,
                }),
                flags: result.flags.clone(),
            },
        }
    }

    pub fn error(k: usize, message: &str) -> Self {
        ColorOutcome {
            status: "error".to_string(),
            k,
            coloring: None,
            witness: None,
            flags: vec![format!("error:{message}")],
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            "colored" => 0,
            "witness" => 1,
            _ => 2,
        }
    }
}

/// Result of one homomorphism run against an explicit target.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomOutcome {
    pub status: String,
    pub target: String,
    pub lists: Option<Vec<Vec<usize>>>,
    pub mapping: Option<Vec<usize>>,
    pub obstruction: Option<ObstructionJson>,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObstructionJson {
    pub vertices: Vec<usize>,
    pub oracle_verified: bool,
}

impl HomOutcome {
    pub fn feasible(
        target: &TargetGraph,
        lists: Option<&ListAssignment>,
        mapping: HomMapping,
    ) -> Self {
        HomOutcome {
            status: "feasible".to_string(),
            target: to_graph6(target.graph()),
            lists: lists.map(lists_to_vecs),
            mapping: Some(mapping),
            obstruction: None,
            flags: Vec::new(),
        }
    }

    pub fn infeasible(
        target: &TargetGraph,
        lists: Option<&ListAssignment>,
        obstruction: Vec<usize>,
    ) -> Self {
        HomOutcome {
            status: "infeasible".to_string(),
            target: to_graph6(target.graph()),
            lists: lists.map(lists_to_vecs),
            mapping: None,
            obstruction: Some(ObstructionJson {
                vertices: obstruction,
                oracle_verified: true,
            }),
            flags: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            "feasible" => 0,
            "infeasible" => 1,
            _ => 2,
        }
    }
}

fn lists_to_vecs(l: &ListAssignment) -> Vec<Vec<usize>> {
    (0..l.len()).map(|v| l.get(v).iter().copied().collect()).collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertError {
    #[error("unknown status `{0}`")]
    UnknownStatus(String),
    #[error("k = {0} is out of contract")]
    BadK(usize),
    #[error("coloring missing or of wrong length")]
    BadColoringShape,
    #[error("coloring uses residue {0}, target has {1}")]
    ResidueOutOfRange(usize, usize),
    #[error("coloring violates edge ({0}, {1})")]
    EdgeViolated(usize, usize),
    #[error("witness missing")]
    MissingWitness,
    #[error("witness vertex {0} not in the graph")]
    WitnessVertexOutOfRange(usize),
    #[error("witness vertices not sorted and distinct")]
    WitnessNotCanonical,
    #[error("witness subgraph is colorable")]
    WitnessColorable,
    #[error("witness has {got} vertices, over the {bound} bound for {reason:?}")]
    WitnessTooLarge {
        got: usize,
        bound: usize,
        reason: WitnessReason,
    },
    #[error("target graph6 does not decode")]
    BadTarget,
    #[error("mapping missing or of wrong length")]
    BadMappingShape,
    #[error("mapping is not a valid homomorphism")]
    MappingInvalid,
    #[error("obstruction missing")]
    MissingObstruction,
    #[error("obstruction subgraph is colorable")]
    ObstructionColorable,
    #[error("lists shape does not match the graph")]
    BadListsShape,
}

/// Re-validates a coloring-run certificate against the original graph.
pub fn verify_color_outcome(g: &Graph, outcome: &ColorOutcome) -> Result<(), CertError> {
    if outcome.k <= 4 {
        return Err(CertError::BadK(outcome.k));
    }
    let m = outcome.k - 2;
    match outcome.status.as_str() {
        "colored" => {
            let colors = outcome
                .coloring
                .as_ref()
                .ok_or(CertError::BadColoringShape)?;
            if colors.len() != g.n() {
                return Err(CertError::BadColoringShape);
            }
            if let Some(&bad) = colors.iter().find(|&&c| c >= m) {
                return Err(CertError::ResidueOutOfRange(bad, m));
            }
            for (u, v) in g.edges() {
                let diff_ok = (colors[u] + 1) % m == colors[v] || (colors[v] + 1) % m == colors[u];
                if !diff_ok {
                    return Err(CertError::EdgeViolated(u, v));
                }
            }
            Ok(())
        }
        "witness" => {
            let w = outcome.witness.as_ref().ok_or(CertError::MissingWitness)?;
            verify_witness_json(g, outcome.k, w)
        }
        other => Err(CertError::UnknownStatus(other.to_string())),
    }
}

fn verify_witness_json(g: &Graph, k: usize, w: &WitnessJson) -> Result<(), CertError> {
    if !w.vertices.windows(2).all(|p| p[0] < p[1]) || w.vertices.is_empty() {
        return Err(CertError::WitnessNotCanonical);
    }
    if let Some(&bad) = w.vertices.iter().find(|&&v| v >= g.n()) {
        return Err(CertError::WitnessVertexOutOfRange(bad));
    }
    let bound = w.reason.size_bound(k).unwrap_or(usize::MAX);
    let global = if w.reason == WitnessReason::FallbackExtracted {
        usize::MAX
    } else {
        3 * k + 28
    };
    let limit = bound.min(global);
    if w.vertices.len() > limit {
        return Err(CertError::WitnessTooLarge {
            got: w.vertices.len(),
            bound: limit,
            reason: w.reason,
        });
    }
    let sub = g.induced(&w.vertices);
    if find_hom(&sub, &TargetGraph::cycle(k - 2), None).is_some() {
        return Err(CertError::WitnessColorable);
    }
    Ok(())
}

/// Re-validates a homomorphism-run certificate. The certificate carries
/// its target (graph6) and optional lists, so only the original graph
/// is needed.
pub fn verify_hom_outcome(g: &Graph, outcome: &HomOutcome) -> Result<(), CertError> {
    let target_graph = crate::format::parse_graph6(outcome.target.as_bytes())
        .map_err(|_| CertError::BadTarget)?;
    let target = TargetGraph::from_graph(target_graph);
    let lists = match &outcome.lists {
        None => None,
        Some(vecs) => {
            if vecs.len() != g.n() {
                return Err(CertError::BadListsShape);
            }
            let mut l = ListAssignment::full(g.n(), target.size());
            for (v, colors) in vecs.iter().enumerate() {
                if colors.iter().any(|&c| c >= target.size()) {
                    return Err(CertError::BadListsShape);
                }
                l.set(v, colors.iter().copied());
            }
            Some(l)
        }
    };
    match outcome.status.as_str() {
        "feasible" => {
            let mapping = outcome.mapping.as_ref().ok_or(CertError::BadMappingShape)?;
            if mapping.len() != g.n() {
                return Err(CertError::BadMappingShape);
            }
            if verify_hom(g, &target, mapping, lists.as_ref()) {
                Ok(())
            } else {
                Err(CertError::MappingInvalid)
            }
        }
        "infeasible" => {
            let obs = outcome
                .obstruction
                .as_ref()
                .ok_or(CertError::MissingObstruction)?;
            if !obs.vertices.windows(2).all(|p| p[0] < p[1]) || obs.vertices.is_empty() {
                return Err(CertError::WitnessNotCanonical);
            }
            if let Some(&bad) = obs.vertices.iter().find(|&&v| v >= g.n()) {
                return Err(CertError::WitnessVertexOutOfRange(bad));
            }
            let sub = g.induced(&obs.vertices);
            let sub_lists = lists.as_ref().map(|l| l.restricted(&obs.vertices));
            if find_hom(&sub, &target, sub_lists.as_ref()).is_some() {
                return Err(CertError::ObstructionColorable);
            }
            Ok(())
        }
        other => Err(CertError::UnknownStatus(other.to_string())),
    }
}

/// Convenience: full JSON line for a coloring run.
pub fn color_outcome_json(outcome: &ColorOutcome) -> String {
    serde_json::to_string(outcome).expect("outcome serializes")
}

pub fn hom_outcome_json(outcome: &HomOutcome) -> String {
    serde_json::to_string(outcome).expect("outcome serializes")
}

/// Re-wraps a witness for JSON transport.
pub fn witness_json(w: &Witness) -> WitnessJson {
    WitnessJson {
        vertices: w.vertices.clone(),
        reason: w.reason,
        oracle_verified: w.transcript.verified,
    }
}
