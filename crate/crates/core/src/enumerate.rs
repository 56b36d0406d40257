//! Small-graph enumeration and minimal-obstruction catalogs.
//!
//! Graphs are enumerated up to isomorphism by vertex augmentation with
//! canonical-form deduplication. The canonical form is the minimum
//! adjacency bit string over all vertex permutations compatible with an
//! iterated degree refinement; the refinement only prunes the
//! permutation set, so the form is exact. Practical up to 8 vertices,
//! hard-capped below 12 where the bit packing runs out.
//!
//! A catalog collects, for a hereditary class given by forbidden induced
//! subgraphs, the members that are not homomorphic to the target and are
//! minimal for the chosen order: under induced minimality every
//! one-vertex-deleted subgraph must be colorable, under subgraph
//! minimality every one-edge-deleted graph as well.

use crate::detect::find_induced_path;
use crate::format::to_graph6;
use crate::graph::Graph;
use crate::hom::{find_hom, ListAssignment, TargetGraph};
use crate::td::minimal_obstruction_extract;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

/// Hard limit of the canonicalization machinery.
pub const ENUM_HARD_LIMIT: usize = 11;
/// Default enumeration cap; desk scale.
pub const DEFAULT_ENUM_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("requested n_max {requested} exceeds the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

/// Canonical relabeling: the vertex order minimizing the packed upper
/// triangle of the adjacency matrix, searched over all permutations
/// compatible with the degree refinement.
pub fn canonical_form(g: &Graph) -> Graph {
    let perm = minimizing_permutation(g);
    let n = g.n();
    let mut out = Graph::new(n);
    for (u, v) in g.edges() {
        let pu = perm.iter().position(|&x| x == u).unwrap();
        let pv = perm.iter().position(|&x| x == v).unwrap();
        out.add_edge(pu, pv);
    }
    out
}

/// Canonical key `(n, packed bits)`; equal keys mean isomorphic graphs.
pub fn canonical_key(g: &Graph) -> (usize, u64) {
    let perm = minimizing_permutation(g);
    (g.n(), packed_bits(g, &perm))
}

/// Upper-triangle bits (row-major) of the adjacency matrix after
/// relabeling by `perm`; earlier pairs occupy higher bits so numeric
/// comparison is lexicographic.
fn packed_bits(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    debug_assert!(n * (n - 1) / 2 <= 64 || n <= 1);
    let mut bits = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            bits = (bits << 1) | g.has_edge(perm[i], perm[j]) as u64;
        }
    }
    bits
}

/// Iterated refinement: vertices get invariant classes from (degree,
/// multiset of neighbor classes), repeated to a fixed point. The class
/// order is itself canonical, so only within-class orders need trying.
fn refinement_classes(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut class = vec![0usize; n];
    loop {
        let mut keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| class[w]).collect();
                nb.sort_unstable();
                (class[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<usize>)> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        let new_class: Vec<usize> = keys
            .iter()
            .map(|k| sorted.binary_search(&k).unwrap())
            .collect();
        if new_class == class {
            break;
        }
        class = new_class;
        keys.clear();
    }
    let count = class.iter().max().map_or(0, |&m| m + 1);
    let mut groups = vec![Vec::new(); count];
    for v in 0..n {
        groups[class[v]].push(v);
    }
    groups
}

fn minimizing_permutation(g: &Graph) -> Vec<usize> {
    let n = g.n();
    assert!(n <= ENUM_HARD_LIMIT, "canonicalization supports n <= {ENUM_HARD_LIMIT}");
    if n <= 1 {
        return (0..n).collect();
    }
    let groups = refinement_classes(g);
    let mut best_bits = u64::MAX;
    let mut best_perm: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(n);
    fn go(
        g: &Graph,
        groups: &[Vec<usize>],
        level: usize,
        current: &mut Vec<usize>,
        scratch: &mut Vec<usize>,
        best_bits: &mut u64,
        best_perm: &mut Vec<usize>,
    ) {
        if level == groups.len() {
            let bits = packed_bits(g, current);
            if bits < *best_bits {
                *best_bits = bits;
                *best_perm = current.clone();
            }
            return;
        }
        // Enumerate within-class orders recursively.
        let group = &groups[level];
        fn arrange(
            g: &Graph,
            groups: &[Vec<usize>],
            level: usize,
            remaining: &mut Vec<usize>,
            current: &mut Vec<usize>,
            scratch: &mut Vec<usize>,
            best_bits: &mut u64,
            best_perm: &mut Vec<usize>,
        ) {
            if remaining.is_empty() {
                go(g, groups, level + 1, current, scratch, best_bits, best_perm);
                return;
            }
            for i in 0..remaining.len() {
                let v = remaining.remove(i);
                current.push(v);
                arrange(g, groups, level, remaining, current, scratch, best_bits, best_perm);
                current.pop();
                remaining.insert(i, v);
            }
        }
        let mut remaining = group.clone();
        arrange(g, groups, level, &mut remaining, current, scratch, best_bits, best_perm);
    }
    let mut scratch = Vec::new();
    go(g, &groups, 0, &mut current, &mut scratch, &mut best_bits, &mut best_perm);
    best_perm
}

/// All non-isomorphic simple graphs with 1 to `n_max` vertices, as
/// canonical forms ordered by `(n, canonical bits)`.
pub fn enumerate_small_graphs(n_max: usize, cap: usize) -> Result<Vec<Graph>, EnumerateError> {
    if n_max > cap || n_max > ENUM_HARD_LIMIT {
        return Err(EnumerateError::CapExceeded {
            requested: n_max,
            cap: cap.min(ENUM_HARD_LIMIT),
        });
    }
    let mut out: Vec<Graph> = Vec::new();
    let mut level: Vec<Graph> = vec![Graph::new(1)];
    out.extend(level.iter().cloned());
    for n in 2..=n_max {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut next: Vec<(u64, Graph)> = Vec::new();
        for parent in &level {
            for mask in 0u32..(1 << (n - 1)) {
                let mut g = Graph::new(n);
                for (u, v) in parent.edges() {
                    g.add_edge(u, v);
                }
                for b in 0..n - 1 {
                    if mask >> b & 1 == 1 {
                        g.add_edge(n - 1, b);
                    }
                }
                let perm = minimizing_permutation(&g);
                let bits = packed_bits(&g, &perm);
                if seen.insert(bits) {
                    let mut cg = Graph::new(n);
                    for i in 0..n {
                        for j in i + 1..n {
                            if g.has_edge(perm[i], perm[j]) {
                                cg.add_edge(i, j);
                            }
                        }
                    }
                    next.push((bits, cg));
                }
            }
        }
        next.sort_by_key(|(bits, _)| *bits);
        level = next.into_iter().map(|(_, g)| g).collect();
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

/// Which minimality order the catalog uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinimalityMode {
    /// Induced-subgraph order: one-vertex deletions must be colorable.
    Induced,
    /// Subgraph order: one-edge deletions must be colorable as well.
    Subgraph,
}

/// The hereditary class under search plus the target and minimality
/// order.
#[derive(Clone, Debug)]
pub struct ClassSpec {
    /// Forbidden induced path length (vertices); `k >= 2`.
    pub path_free: usize,
    /// Optional forbidden induced complete bipartite side size.
    pub biclique_free: Option<usize>,
    pub target: TargetGraph,
    pub mode: MinimalityMode,
}

impl ClassSpec {
    pub fn new(k: usize, t: Option<usize>, target: TargetGraph, mode: MinimalityMode) -> Self {
        assert!(k >= 2);
        if let Some(t) = t {
            assert!(t >= 1);
        }
        ClassSpec {
            path_free: k,
            biclique_free: t,
            target,
            mode,
        }
    }

    /// Catalog spec for graphs that are not `(c-1)`-colorable but whose
    /// proper subgraphs all are: target `K_{c-1}`, subgraph order.
    pub fn c_critical(c: usize, k: usize, t: Option<usize>) -> Self {
        assert!(c >= 2);
        ClassSpec::new(
            k,
            t,
            TargetGraph::from_graph(Graph::complete(c - 1)),
            MinimalityMode::Subgraph,
        )
    }
}

/// Membership in the class: no induced path on `path_free` vertices and,
/// when set, no induced complete bipartite graph with `biclique_free`
/// vertices per side. Exhaustive checks; desk scale.
pub fn filter_class(g: &Graph, spec: &ClassSpec) -> bool {
    if find_induced_path(g, spec.path_free).is_some() {
        return false;
    }
    match spec.biclique_free {
        None => true,
        Some(t) => !has_induced_biclique(g, t),
    }
}

fn has_induced_biclique(g: &Graph, t: usize) -> bool {
    let n = g.n();
    if 2 * t > n {
        return false;
    }
    // Choose the 2t vertices, then a side split; check for exactly the
    // complete bipartite edge set, induced.
    let mut subset = Vec::with_capacity(2 * t);
    fn choose(
        g: &Graph,
        t: usize,
        from: usize,
        subset: &mut Vec<usize>,
    ) -> bool {
        if subset.len() == 2 * t {
            return splits_as_biclique(g, t, subset);
        }
        for v in from..g.n() {
            if g.n() - v < 2 * t - subset.len() {
                break;
            }
            subset.push(v);
            if choose(g, t, v + 1, subset) {
                return true;
            }
            subset.pop();
        }
        false
    }
    fn splits_as_biclique(g: &Graph, t: usize, subset: &[usize]) -> bool {
        // Fix subset[0] on side A to halve the splits.
        let rest = &subset[1..];
        let mut picks = Vec::with_capacity(t - 1);
        fn split(
            g: &Graph,
            t: usize,
            subset: &[usize],
            rest: &[usize],
            from: usize,
            picks: &mut Vec<usize>,
        ) -> bool {
            if picks.len() == t - 1 {
                let side_a: Vec<usize> = std::iter::once(subset[0])
                    .chain(picks.iter().map(|&i| rest[i]))
                    .collect();
                let side_b: Vec<usize> = rest
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !picks.contains(i))
                    .map(|(_, &v)| v)
                    .collect();
                let ok_cross = side_a
                    .iter()
                    .all(|&a| side_b.iter().all(|&b| g.has_edge(a, b)));
                let ok_a = side_a
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| side_a[i + 1..].iter().all(|&a2| !g.has_edge(a, a2)));
                let ok_b = side_b
                    .iter()
                    .enumerate()
                    .all(|(i, &b)| side_b[i + 1..].iter().all(|&b2| !g.has_edge(b, b2)));
                return ok_cross && ok_a && ok_b;
            }
            for i in from..rest.len() {
                picks.push(i);
                if split(g, t, subset, rest, i + 1, picks) {
                    return true;
                }
                picks.pop();
            }
            false
        }
        split(g, t, subset, rest, 0, &mut picks)
    }
    choose(g, t, 0, &mut subset)
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub verified_minimal: bool,
    pub in_class: bool,
}

/// Catalog of minimal non-colorable class members, entries pairwise
/// non-isomorphic, ordered by `(n, canonical string)`.
#[derive(Clone, Debug, Default)]
pub struct ObstructionCatalog {
    pub graphs: Vec<Graph>,
    pub entries: Vec<CatalogEntry>,
}

impl ObstructionCatalog {
    pub fn graph6_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.graph6);
            out.push('\n');
        }
        out
    }

    pub fn metadata_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("catalog entries serialize")
    }
}

/// Enumerates class members up to `n_max` vertices and keeps those that
/// the oracle rejects and that are minimal for the chosen order.
pub fn find_minimal_obstructions(
    spec: &ClassSpec,
    n_max: usize,
    cap: usize,
) -> Result<ObstructionCatalog, EnumerateError> {
    let mut catalog = ObstructionCatalog::default();
    for g in enumerate_small_graphs(n_max, cap)? {
        if !filter_class(&g, spec) {
            continue;
        }
        if find_hom(&g, &spec.target, None).is_some() {
            continue;
        }
        if !is_minimal(&g, spec) {
            continue;
        }
        catalog.entries.push(CatalogEntry {
            graph6: to_graph6(&g),
            n: g.n(),
            edges: g.edge_count(),
            verified_minimal: true,
            in_class: true,
        });
        catalog.graphs.push(g);
    }
    Ok(catalog)
}

fn is_minimal(g: &Graph, spec: &ClassSpec) -> bool {
    // Minimality is about the coloring property alone: every proper
    // one-step deletion must be colorable, whether or not it stays in
    // the class.
    for v in 0..g.n() {
        let keep: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
        if find_hom(&g.induced(&keep), &spec.target, None).is_none() {
            return false;
        }
    }
    if spec.mode == MinimalityMode::Subgraph {
        for (u, v) in g.edges() {
            let mut h = g.clone();
            h.remove_edge(u, v);
            if find_hom(&h, &spec.target, None).is_none() {
                return false;
            }
        }
    }
    true
}

/// One sampled labeled obstruction: a class member with a random list
/// assignment that is not list-colorable, shrunk to a deletion-minimal
/// induced subgraph with inherited lists.
#[derive(Clone, Debug)]
pub struct LabeledObstruction {
    pub graph6: String,
    pub vertices: Vec<usize>,
    pub lists: Vec<Vec<usize>>,
}

/// Probes the labeled order on random class members: lists stand in for
/// labels (a smaller label is a larger list). Sampling replaces the
/// doubly exponential enumeration of all label maps.
pub fn sample_labeled_minimal(
    spec: &ClassSpec,
    n: usize,
    samples: usize,
    seed: u64,
) -> Vec<LabeledObstruction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hs = spec.target.size();
    let mut out = Vec::new();
    for _ in 0..samples {
        // Rejection-sample a class member.
        let mut g = None;
        for _ in 0..200 {
            let mut cand = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        cand.add_edge(u, v);
                    }
                }
            }
            if filter_class(&cand, spec) {
                g = Some(cand);
                break;
            }
        }
        let Some(g) = g else { continue };
        let mut lists = ListAssignment::full(n, hs);
        for v in 0..n {
            let kept: Vec<usize> = (0..hs).filter(|_| rng.gen_bool(0.6)).collect();
            lists.set(v, kept);
        }
        if find_hom(&g, &spec.target, Some(&lists)).is_some() {
            continue;
        }
        let vertices = minimal_obstruction_extract(&g, &spec.target, Some(&lists));
        let sub = g.induced(&vertices);
        let sub_lists: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| lists.get(v).iter().copied().collect())
            .collect();
        out.push(LabeledObstruction {
            graph6: to_graph6(&sub),
            vertices,
            lists: sub_lists,
        });
    }
    out
}
