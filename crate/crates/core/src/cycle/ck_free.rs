//! The case where the graph has no induced cycle of length `k` and the
//! base cycle `C` has length `k - 2`.
//!
//! The base cycle admits exactly one coloring up to automorphisms of the
//! target, so any conflict found under the canonical coloring is an
//! absolute witness. The pipeline forces colors in rounds: Ttype
//! vertices and endpoints of anchor-distance-3 D-D edges first, then
//! Dtype vertices influenced by Ttype neighbors, then components beyond
//! the closed neighborhood (reduced to a single edge each), then the
//! single-vertex components with their attachment case analysis, and
//! finally a small/big two-option propagation along chains of Dtype
//! vertices with consecutive anchors.

use super::classify::{ClassifyCase, NeighborClassification, Role};
use super::{
    adjacent_mask, mask_to_colors, residues_adjacent, solve_outside_component, CaseOutcome,
    CompOutcome, WitnessReason,
};
use crate::graph::{CycleHandle, Graph};
use std::collections::{BTreeMap, VecDeque};

/// A fixed color plus the non-cycle vertices that certify it (the vertex
/// itself included); `None` marks a color that came from a free choice
/// and therefore cannot back a witness.
#[derive(Clone, Debug)]
struct Forcing {
    color: usize,
    support: Option<Vec<usize>>,
}

struct Conflict {
    extras: Vec<usize>,
    certified: bool,
}

struct Ledger<'a> {
    g: &'a Graph,
    m: usize,
    cycle_residue: Vec<Option<usize>>,
    fixed: BTreeMap<usize, Forcing>,
}

impl<'a> Ledger<'a> {
    fn new(g: &'a Graph, m: usize, c: &CycleHandle) -> Self {
        let mut cycle_residue = vec![None; g.n()];
        for (pos, &v) in c.vertices().iter().enumerate() {
            cycle_residue[v] = Some(pos % m);
        }
        Ledger {
            g,
            m,
            cycle_residue,
            fixed: BTreeMap::new(),
        }
    }

    fn color_of(&self, v: usize) -> Option<usize> {
        self.cycle_residue[v].or_else(|| self.fixed.get(&v).map(|f| f.color))
    }

    fn support_of(&self, v: usize) -> Option<Vec<usize>> {
        if self.cycle_residue[v].is_some() {
            return Some(Vec::new());
        }
        self.fixed.get(&v).and_then(|f| f.support.clone())
    }

    /// Fixes a color, checking against previously fixed neighbors. A
    /// disagreement (re-forcing or an incompatible edge) surfaces the
    /// union of the supports as a conflict.
    fn force(&mut self, v: usize, color: usize, support: Option<Vec<usize>>) -> Result<(), Conflict> {
        if let Some(prev) = self.fixed.get(&v) {
            if prev.color == color {
                return Ok(());
            }
            let certified = prev.support.is_some() && support.is_some();
            let mut extras = vec![v];
            extras.extend(prev.support.clone().unwrap_or_default());
            extras.extend(support.unwrap_or_default());
            return Err(Conflict { extras, certified });
        }
        for w in self.g.neighbors(v) {
            if let Some(wc) = self.color_of(w) {
                if !residues_adjacent(color, wc, self.m) {
                    let wsup = self.support_of(w);
                    let certified = support.is_some() && wsup.is_some();
                    let mut extras = vec![v, w];
                    extras.extend(support.unwrap_or_default());
                    extras.extend(wsup.unwrap_or_default());
                    return Err(Conflict { extras, certified });
                }
            }
        }
        self.fixed.insert(v, Forcing { color, support });
        Ok(())
    }
}

fn blocked(c: &CycleHandle, extras: Vec<usize>, reason: WitnessReason) -> CaseOutcome {
    let mut vertices = c.vertices().to_vec();
    vertices.extend(extras);
    CaseOutcome::Blocked { vertices, reason }
}

fn conflict_outcome(c: &CycleHandle, conflict: Conflict, reason: WitnessReason) -> CaseOutcome {
    if !conflict.certified {
        return CaseOutcome::bail("conflict traced to an uncertified color choice");
    }
    blocked(c, conflict.extras, reason)
}

pub(crate) fn solve_ck_free_case(
    g: &Graph,
    k: usize,
    c: &CycleHandle,
    cls: &NeighborClassification,
) -> CaseOutcome {
    assert_eq!(cls.case, ClassifyCase::Ck2);
    let m = k - 2;
    assert_eq!(c.len(), m);
    let mut ledger = Ledger::new(g, m, c);

    // Ttype vertices have exactly one possible color: the residue one
    // past their anchor.
    for (anchor, group) in cls.t_by_anchor.iter().enumerate() {
        for &t in group {
            if let Err(e) = ledger.force(t, (anchor + 1) % m, Some(vec![t])) {
                return conflict_outcome(c, e, WitnessReason::FixedColoringConflict);
            }
        }
    }

    // Endpoints of anchor-distance-3 D-D edges are pinned pairwise.
    for &(u, v) in &cls.d3_edges {
        let a = match cls.roles[u] {
            Role::Dtype(a) => a,
            _ => return CaseOutcome::bail("distance-3 edge endpoint is not Dtype"),
        };
        for (w, color) in [(u, (a + 1) % m), (v, (a + 2) % m)] {
            if let Err(e) = ledger.force(w, color, Some(vec![u, v])) {
                return conflict_outcome(c, e, WitnessReason::FixedColoringConflict);
            }
        }
    }

    // Dtype vertices influenced by Ttype neighbors.
    let mut dt_by_d: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(d, t) in &cls.dt_edges {
        dt_by_d.entry(d).or_default().push(t);
    }
    for (&v, t_neighbors) in &dt_by_d {
        if ledger.fixed.contains_key(&v) {
            continue; // edge compatibility was checked when it was fixed
        }
        let Role::Dtype(a) = cls.roles[v] else { continue };
        let mut mask = adjacent_mask(a, m); // the two options around the anchor
        let mut killers: Vec<usize> = Vec::new();
        for &t in t_neighbors {
            let t_color = ledger.color_of(t).expect("Ttype vertices are fixed");
            let allowed = adjacent_mask(t_color, m);
            if mask & !allowed != 0 {
                killers.push(t);
            }
            mask &= allowed;
            if mask == 0 {
                let mut extras = vec![v];
                extras.extend(killers);
                return blocked(c, extras, WitnessReason::FixedColoringConflict);
            }
        }
        if mask.count_ones() == 1 {
            let color = mask.trailing_zeros() as usize;
            let mut support = vec![v];
            support.extend(killers.iter().copied());
            if let Err(e) = ledger.force(v, color, Some(support)) {
                return conflict_outcome(c, e, WitnessReason::FixedColoringConflict);
            }
        }
    }

    // Components beyond the closed cycle neighborhood.
    let mut inside = vec![false; g.n()];
    for &v in &cls.outside {
        inside[v] = true;
    }
    let comps = g.components_within(&inside);
    let mut comp_colors: Vec<(usize, usize)> = Vec::new();
    for comp in comps.iter().filter(|c| c.len() >= 2) {
        // Attachment through a Dtype vertex closes a triangle or an
        // induced path on k vertices; the shared helper reports it.
        match solve_outside_component(g, k, c, &cls.roles, comp) {
            CompOutcome::Colored(assignments) => comp_colors.extend(assignments),
            CompOutcome::Blocked(frag) => {
                if frag.len() > 8 {
                    return CaseOutcome::bail("component fragment exceeds its size bound");
                }
                return blocked(c, frag, WitnessReason::ComponentConflict);
            }
            CompOutcome::Violation { detail, evidence } => {
                return CaseOutcome::Bail {
                    detail,
                    evidence,
                    contract_violation: true,
                };
            }
        }
    }

    // Single-vertex components: the attachment case analysis.
    for comp in comps.iter().filter(|c| c.len() == 1) {
        let v = comp[0];
        match settle_singleton(g, k, c, cls, &mut ledger, v) {
            SingletonOutcome::Done => {}
            SingletonOutcome::Outcome(o) => return o,
        }
    }

    // Small/big propagation along D-D edges with consecutive anchors.
    match propagate_two_options(g, k, c, cls, &ledger) {
        PropOutcome::Assigned(assigned) => {
            let mut colors = vec![usize::MAX; g.n()];
            for (pos, &v) in c.vertices().iter().enumerate() {
                colors[v] = pos % m;
            }
            for (&v, f) in &ledger.fixed {
                colors[v] = f.color;
            }
            for (v, color) in comp_colors {
                colors[v] = color;
            }
            for (v, color) in assigned {
                colors[v] = color;
            }
            // Leftover unforced Dtype vertices take the residue just
            // below their anchor ("small").
            for v in 0..g.n() {
                if colors[v] == usize::MAX {
                    match cls.roles[v] {
                        Role::Dtype(a) => colors[v] = (a + m - 1) % m,
                        _ => {
                            return CaseOutcome::bail("vertex left uncolored after assembly");
                        }
                    }
                }
            }
            CaseOutcome::Colored(colors)
        }
        PropOutcome::Outcome(o) => o,
    }
}

enum SingletonOutcome {
    Done,
    Outcome(CaseOutcome),
}

/// One single-vertex component: screens the anchor pattern of its Dtype
/// neighbors, intersects all attachment constraints, picks a color that
/// leaves unforced neighbors free whenever possible, and records the
/// forcings it could not avoid.
fn settle_singleton(
    g: &Graph,
    k: usize,
    c: &CycleHandle,
    cls: &NeighborClassification,
    ledger: &mut Ledger,
    v: usize,
) -> SingletonOutcome {
    use SingletonOutcome::*;
    let m = k - 2;

    let mut t_reps: BTreeMap<usize, usize> = BTreeMap::new(); // anchor -> representative
    let mut d_nbrs: Vec<(usize, usize)> = Vec::new(); // (vertex, anchor)
    for w in g.neighbors(v) {
        match cls.roles[w] {
            Role::Ttype(a) => {
                t_reps.entry(a).or_insert(w);
            }
            Role::Dtype(a) => d_nbrs.push((w, a)),
            Role::Cycle(_) => {
                return Outcome(CaseOutcome::bail(
                    "outside vertex adjacent to the base cycle",
                ))
            }
            Role::Outside => {
                return Outcome(CaseOutcome::bail(
                    "single-vertex component with an outside neighbor",
                ))
            }
        }
    }

    // Two Dtype neighbors that are themselves adjacent close a triangle.
    for i in 0..d_nbrs.len() {
        for j in i + 1..d_nbrs.len() {
            let (u1, a1) = d_nbrs[i];
            let (u2, a2) = d_nbrs[j];
            if g.has_edge(u1, u2) {
                return Outcome(CaseOutcome::ShortOdd(vec![v, u1, u2]));
            }
            // Anchor-distance screen for non-adjacent pairs.
            let d = (a2 + m - a1) % m;
            let (lo, lo_anchor, hi, dist) = if d <= m - d {
                (u1, a1, u2, d)
            } else {
                (u2, a2, u1, m - d)
            };
            if dist == 0 || dist == 4 || dist == m - 4 {
                continue;
            }
            match dist {
                2 => {
                    // The long arc closes an induced cycle of length k,
                    // contradicting the case split.
                    return Outcome(CaseOutcome::bail(
                        "induced length-k cycle inside the cycle-free case",
                    ));
                }
                1 | 3 => {
                    if dist + 4 <= k - 4 {
                        let mut cyc = vec![v, lo];
                        for s in 0..=dist {
                            cyc.push(c.vertex(lo_anchor + s));
                        }
                        cyc.push(hi);
                        return Outcome(CaseOutcome::ShortOdd(cyc));
                    }
                    return Outcome(CaseOutcome::bail(
                        "induced length-k cycle inside the cycle-free case",
                    ));
                }
                _ => {
                    // No residue works for v against both neighbors.
                    let mut extras = vec![v, lo, hi];
                    for u in [lo, hi] {
                        if let Some(sup) = ledger.fixed.get(&u).and_then(|f| f.support.clone()) {
                            extras.extend(sup);
                        }
                    }
                    return Outcome(blocked(c, extras, WitnessReason::ComponentConflict));
                }
            }
        }
    }

    // Attachment constraints: Ttype anchors restrict v to two residues,
    // fixed Dtype neighbors to the residues beside their color, unforced
    // Dtype anchors to the three residues around the anchor.
    struct Source {
        mask: u64,
        cert: Vec<usize>,
    }
    let mut sources: Vec<Source> = Vec::new();
    for (&a, &rep) in &t_reps {
        sources.push(Source {
            mask: (1 << a) | (1 << ((a + 2) % m)),
            cert: vec![rep],
        });
    }
    let mut unforced_anchor_reps: BTreeMap<usize, usize> = BTreeMap::new();
    let mut unforced_nbrs: Vec<(usize, usize)> = Vec::new();
    for &(u, a) in &d_nbrs {
        if let Some(f) = ledger.fixed.get(&u) {
            let Some(sup) = f.support.clone() else {
                return Outcome(CaseOutcome::bail(
                    "singleton constrained by an uncertified color",
                ));
            };
            sources.push(Source {
                mask: adjacent_mask(f.color, m),
                cert: sup,
            });
        } else {
            unforced_anchor_reps.entry(a).or_insert(u);
            unforced_nbrs.push((u, a));
        }
    }
    for (&a, &rep) in &unforced_anchor_reps {
        sources.push(Source {
            mask: (1 << a) | (1 << ((a + 2) % m)) | (1 << ((a + m - 2) % m)),
            cert: vec![rep],
        });
    }

    let full = (1u64 << m) - 1;
    let allowed = sources.iter().fold(full, |acc, s| acc & s.mask);
    if allowed == 0 {
        // Greedy minimal certifying subset.
        let mut kept: Vec<usize> = (0..sources.len()).collect();
        let mut i = 0;
        while i < kept.len() {
            let mut trial = kept.clone();
            trial.remove(i);
            let and = trial.iter().fold(full, |acc, &s| acc & sources[s].mask);
            if and == 0 {
                kept = trial;
            } else {
                i += 1;
            }
        }
        let mut extras = vec![v];
        for &s in &kept {
            extras.extend(sources[s].cert.iter().copied());
        }
        if extras.len() > 8 {
            return Outcome(CaseOutcome::bail("singleton conflict exceeds its size bound"));
        }
        return Outcome(blocked(c, extras, WitnessReason::ComponentConflict));
    }

    // Pick the color: prefer one that leaves every unforced Dtype
    // neighbor with both of its options.
    let candidates = mask_to_colors(allowed);
    let narrows = |x: usize| -> usize {
        unforced_anchor_reps
            .keys()
            .filter(|&&a| (adjacent_mask(a, m) & adjacent_mask(x, m)).count_ones() == 1)
            .count()
    };
    let pick = candidates
        .iter()
        .copied()
        .find(|&x| narrows(x) == 0)
        .unwrap_or(candidates[0]);

    // Certification of the pick: only a forced (singleton) choice can
    // back later witnesses.
    let pick_support: Option<Vec<usize>> = if candidates.len() == 1 {
        let mut kept: Vec<usize> = (0..sources.len()).collect();
        let mut i = 0;
        while i < kept.len() {
            let mut trial = kept.clone();
            trial.remove(i);
            let and = trial.iter().fold(full, |acc, &s| acc & sources[s].mask);
            if and == allowed {
                kept = trial;
            } else {
                i += 1;
            }
        }
        let mut sup = vec![v];
        for &s in &kept {
            sup.extend(sources[s].cert.iter().copied());
        }
        sup.sort_unstable();
        sup.dedup();
        Some(sup)
    } else {
        None
    };

    if let Err(e) = ledger.force(v, pick, pick_support.clone()) {
        return Outcome(conflict_outcome(c, e, WitnessReason::ComponentConflict));
    }

    // Forcings implied by the pick on unforced Dtype neighbors.
    for (u, a) in unforced_nbrs {
        let mask = adjacent_mask(a, m) & adjacent_mask(pick, m);
        debug_assert!(mask != 0, "the pick is compatible with the anchor pattern");
        if mask.count_ones() == 1 {
            let color = mask.trailing_zeros() as usize;
            let support = pick_support.as_ref().map(|p| {
                let mut s = vec![u];
                s.extend(p.iter().copied());
                s
            });
            if let Err(e) = ledger.force(u, color, support) {
                return Outcome(conflict_outcome(c, e, WitnessReason::ComponentConflict));
            }
        }
    }
    Done
}

enum PropOutcome {
    Assigned(Vec<(usize, usize)>),
    Outcome(CaseOutcome),
}

#[derive(Clone, Copy)]
struct PropState {
    big: bool,
    pred: usize,
}

/// Every unforced Dtype vertex still has its two options, "small" (the
/// residue below the anchor) and "big" (above). Along an edge from
/// anchor `a` to anchor `a + 1`, small on the lower side forces small on
/// the higher side, and big on the higher side forces big on the lower
/// side. Seeding from the fixed vertices, assignments spread in
/// worklist order; a vertex pushed to both values yields a witness made
/// of the two push chains plus the supports of their seeds.
fn propagate_two_options(
    g: &Graph,
    k: usize,
    c: &CycleHandle,
    cls: &NeighborClassification,
    ledger: &Ledger,
) -> PropOutcome {
    let m = k - 2;
    let is_unforced_d = |v: usize| {
        matches!(cls.roles[v], Role::Dtype(_)) && !ledger.fixed.contains_key(&v)
    };
    let anchor = |v: usize| match cls.roles[v] {
        Role::Dtype(a) => a,
        _ => unreachable!("only Dtype vertices propagate"),
    };

    let mut state: BTreeMap<usize, PropState> = BTreeMap::new();
    let mut queue: VecDeque<(usize, bool, usize)> = VecDeque::new(); // (vertex, big, pred)

    // Seeds: fixed Dtype vertices constrain their unforced chain
    // neighbors exactly like assigned ones do.
    for (&u, f) in &ledger.fixed {
        let Role::Dtype(a) = cls.roles[u] else { continue };
        let small = (a + m - 1) % m;
        let big = (a + 1) % m;
        let u_big = if f.color == big {
            true
        } else if f.color == small {
            false
        } else {
            return PropOutcome::Outcome(CaseOutcome::bail(
                "fixed Dtype color outside its two options",
            ));
        };
        for w in g.neighbors(u) {
            if !is_unforced_d(w) {
                continue;
            }
            let d = (anchor(w) + m - a) % m;
            if d == 1 && !u_big {
                queue.push_back((w, false, u));
            } else if d == m - 1 && u_big {
                queue.push_back((w, true, u));
            }
        }
    }

    while let Some((w, big, pred)) = queue.pop_front() {
        if let Some(f) = ledger.fixed.get(&w) {
            let a = anchor(w);
            let expected = if big { (a + 1) % m } else { (a + m - 1) % m };
            if f.color == expected {
                continue;
            }
            match conflict_extras(ledger, &state, w, pred, None) {
                Ok(extras) => return finish_conflict(c, k, extras),
                Err(o) => return PropOutcome::Outcome(o),
            }
        }
        if let Some(prev) = state.get(&w) {
            if prev.big == big {
                continue;
            }
            match conflict_extras(ledger, &state, w, pred, Some(prev.pred)) {
                Ok(extras) => return finish_conflict(c, k, extras),
                Err(o) => return PropOutcome::Outcome(o),
            }
        }
        state.insert(w, PropState { big, pred });
        let aw = anchor(w);
        for z in g.neighbors(w) {
            if !is_unforced_d(z) {
                continue;
            }
            let d = (anchor(z) + m - aw) % m;
            if d == 1 && !big {
                queue.push_back((z, false, w));
            } else if d == m - 1 && big {
                queue.push_back((z, true, w));
            }
        }
    }

    let assigned = state
        .iter()
        .map(|(&v, s)| {
            let a = anchor(v);
            let color = if s.big { (a + 1) % m } else { (a + m - 1) % m };
            (v, color)
        })
        .collect();
    PropOutcome::Assigned(assigned)
}

/// Walks a push chain back to its seed (a fixed vertex) and collects the
/// chain vertices plus the seed's support.
fn walk_chain(
    ledger: &Ledger,
    state: &BTreeMap<usize, PropState>,
    mut at: usize,
) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    loop {
        out.push(at);
        if let Some(f) = ledger.fixed.get(&at) {
            match &f.support {
                Some(sup) => {
                    out.extend(sup.iter().copied());
                    return Ok(out);
                }
                None => return Err("chain seeded by an uncertified color".to_string()),
            }
        }
        match state.get(&at) {
            Some(s) => at = s.pred,
            None => return Err("broken propagation chain".to_string()),
        }
    }
}

fn conflict_extras(
    ledger: &Ledger,
    state: &BTreeMap<usize, PropState>,
    w: usize,
    new_pred: usize,
    old_pred: Option<usize>,
) -> Result<Vec<usize>, CaseOutcome> {
    let mut extras = vec![w];
    match walk_chain(ledger, state, new_pred) {
        Ok(chain) => extras.extend(chain),
        Err(why) => return Err(CaseOutcome::bail(why)),
    }
    match old_pred {
        Some(p) => match walk_chain(ledger, state, p) {
            Ok(chain) => extras.extend(chain),
            Err(why) => return Err(CaseOutcome::bail(why)),
        },
        None => {
            // The conflicting assignment is the vertex's own fixed color.
            match ledger.support_of(w) {
                Some(sup) => extras.extend(sup),
                None => {
                    return Err(CaseOutcome::bail(
                        "conflict against an uncertified fixed color",
                    ))
                }
            }
        }
    }
    extras.sort_unstable();
    extras.dedup();
    Ok(extras)
}

fn finish_conflict(c: &CycleHandle, k: usize, extras: Vec<usize>) -> PropOutcome {
    if extras.len() > 2 * k + 4 {
        // A chain this long carries an induced path on k vertices.
        return PropOutcome::Outcome(CaseOutcome::Bail {
            detail: "propagation chains exceed their size bound".to_string(),
            evidence: extras,
            contract_violation: true,
        });
    }
    PropOutcome::Outcome(blocked(c, extras, WitnessReason::PropagationConflict))
}
