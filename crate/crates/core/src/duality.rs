//! Edge complementation, dual networks, minpath/mincut enumeration and the
//! mincut/minpath correspondence between a network and its dual.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::json;

use crate::error::{HammockError, Result};
use crate::lattice::{build_hammock, Edge, HammockNetwork, IndexGraph, Kind};
use crate::limits::{Limits, MASK_EDGES_MAX};
use crate::report::VerificationReport;
use crate::subset::EdgeSubset;

/// The other diagonal of `e`'s unit square: `A_{x,y}A_{x+1,y+-1}` becomes
/// `A_{x+1,y}A_{x,y+-1}`. Parity flips and the map is an involution.
pub fn complement_edge(e: Edge) -> Edge {
    Edge::in_square(e.square(), 1 - e.parity())
}

/// A network, its dual, and the edge bijection `e -> complement(e)`.
#[derive(Clone, Debug)]
pub struct DualCorrespondence {
    pub base: HammockNetwork,
    pub dual: HammockNetwork,
    /// `edge_map[i]` is the dual index of the complement of base edge `i`.
    pub edge_map: Vec<usize>,
}

impl DualCorrespondence {
    /// Image of a base subset in the dual network.
    pub fn to_dual(&self, s: &EdgeSubset) -> EdgeSubset {
        EdgeSubset::from_indices(self.dual.edge_count(), s.iter().map(|i| self.edge_map[i]))
    }

    /// Preimage of a dual subset in the base network.
    pub fn to_base(&self, s: &EdgeSubset) -> EdgeSubset {
        let mut inverse = vec![0; self.edge_map.len()];
        for (i, &j) in self.edge_map.iter().enumerate() {
            inverse[j] = i;
        }
        EdgeSubset::from_indices(self.base.edge_count(), s.iter().map(|j| inverse[j]))
    }

    pub fn map_mask(&self, mask: u64) -> u64 {
        if self.edge_map.iter().enumerate().all(|(i, &j)| i == j) {
            return mask;
        }
        self.edge_map
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |acc, (_, &j)| acc | 1 << j)
    }
}

/// The dual lives on the complementary points of the same rectangle, with
/// sources on `y = 0` and termini on `y = w` (or back, for a dual's dual).
pub fn dual_network(net: &HammockNetwork) -> DualCorrespondence {
    let dual = HammockNetwork::with_sides(
        net.length() as i64,
        net.width() as i64,
        net.kind().flip(),
        net.sides().flip(),
    )
    .expect("dimensions already validated");
    let edge_map = net
        .edges()
        .iter()
        .map(|&e| {
            dual.edge_index(complement_edge(e))
                .expect("complement lies in the same rectangle")
        })
        .collect();
    DualCorrespondence {
        base: net.clone(),
        dual,
        edge_map,
    }
}

/// Every minimal pathset, as the edge set of a vertex-distinct X-path that
/// starts at a source, meets no other source, and stops at the first
/// terminus it reaches. Sorted ascending.
pub fn enumerate_minpaths(net: &HammockNetwork) -> Vec<EdgeSubset> {
    let graph = net.graph();
    let mut out = Vec::new();
    let mut visited = vec![false; graph.vertex_count];
    let mut path = EdgeSubset::empty(net.edge_count());
    for &s in &graph.sources {
        visited[s as usize] = true;
        extend_paths(graph, s, &mut visited, &mut path, &mut out);
        visited[s as usize] = false;
    }
    out.sort();
    out.dedup();
    out
}

fn extend_paths(
    graph: &IndexGraph,
    v: u32,
    visited: &mut [bool],
    path: &mut EdgeSubset,
    out: &mut Vec<EdgeSubset>,
) {
    for &(u, e) in &graph.adjacency[v as usize] {
        let ui = u as usize;
        if visited[ui] || graph.is_source[ui] {
            continue;
        }
        path.insert(e);
        if graph.is_terminus[ui] {
            out.push(path.clone());
        } else {
            visited[ui] = true;
            extend_paths(graph, u, visited, path, out);
            visited[ui] = false;
        }
        path.remove(e);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MincutStrategy {
    /// Subset filter over all `2^n` subsets; the oracle.
    Direct,
    /// Complements of the dual network's minpaths.
    #[default]
    Dual,
}

pub fn enumerate_mincuts(
    net: &HammockNetwork,
    strategy: MincutStrategy,
    limits: &Limits,
) -> Result<Vec<EdgeSubset>> {
    match strategy {
        MincutStrategy::Direct => enumerate_mincuts_direct(net, limits.mincut_max_edges),
        MincutStrategy::Dual => Ok(enumerate_mincuts_via_dual(net)),
    }
}

pub fn enumerate_mincuts_via_dual(net: &HammockNetwork) -> Vec<EdgeSubset> {
    let corr = dual_network(net);
    let mut cuts: Vec<EdgeSubset> = enumerate_minpaths(&corr.dual)
        .iter()
        .map(|p| corr.to_base(p))
        .collect();
    cuts.sort();
    cuts
}

/// Cutsets none of whose one-smaller subsets is a cutset. Cutsets are
/// upward closed, so that is the full minimality condition.
pub fn enumerate_mincuts_direct(net: &HammockNetwork, max_edges: usize) -> Result<Vec<EdgeSubset>> {
    let n = net.edge_count();
    let limit = max_edges.min(MASK_EDGES_MAX);
    if n > limit {
        return Err(HammockError::EdgeCeiling {
            method: "direct mincut enumeration",
            edges: n,
            limit,
        });
    }
    let table = pathset_table(net);
    let full = (1u64 << n) - 1;
    let is_cut = |m: u64| !table[(full ^ m) as usize];
    let cuts: Vec<u64> = (0..=full)
        .into_par_iter()
        .filter(|&m| {
            is_cut(m)
                && (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .all(|i| !is_cut(m ^ (1 << i)))
        })
        .collect();
    Ok(cuts.into_iter().map(|m| EdgeSubset::from_mask(n, m)).collect())
}

/// `table[mask]` is true when `mask` is a pathset.
pub(crate) fn pathset_table(net: &HammockNetwork) -> Vec<bool> {
    let graph = net.graph();
    let n = net.edge_count();
    (0..1u64 << n)
        .into_par_iter()
        .map_init(Vec::new, |scratch, m| graph.connects_mask(m, scratch))
        .collect()
}

/// Number of sets of each cardinality.
pub fn size_profile(sets: &[EdgeSubset]) -> BTreeMap<usize, usize> {
    let mut profile = BTreeMap::new();
    for s in sets {
        *profile.entry(s.cardinality()).or_insert(0) += 1;
    }
    profile
}

fn profile_json(sets: &[EdgeSubset]) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = size_profile(sets)
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.into()))
        .collect();
    map.into()
}

/// Checks both directions of the mincut/minpath correspondence on
/// `H^(kind)_{l,w}`: complements of its directly enumerated mincuts are
/// exactly the minpaths of the dual, and complements of its minpaths are
/// exactly the directly enumerated mincuts of the dual.
pub fn verify_theorem1(l: i64, w: i64, kind: Kind, limits: &Limits) -> Result<VerificationReport> {
    let net = build_hammock(l, w, kind)?;
    let corr = dual_network(&net);
    let mut report = VerificationReport::new("theorem1")
        .param("l", l)
        .param("w", w)
        .param("kind", kind.number());

    let base_cuts = enumerate_mincuts_direct(&net, limits.mincut_max_edges)?;
    let dual_cuts = enumerate_mincuts_direct(&corr.dual, limits.mincut_max_edges)?;
    let base_paths = enumerate_minpaths(&net);
    let dual_paths = enumerate_minpaths(&corr.dual);

    report.count("mincuts", base_cuts.len());
    report.count("dual_minpaths", dual_paths.len());
    report.count("minpaths", base_paths.len());
    report.count("dual_mincuts", dual_cuts.len());
    report.detail("mincuts_by_size", profile_json(&base_cuts));
    report.detail("dual_minpaths_by_size", profile_json(&dual_paths));
    report.detail("minpaths_by_size", profile_json(&base_paths));
    report.detail("dual_mincuts_by_size", profile_json(&dual_cuts));

    // mincut in H  <=>  complement is a minpath of the dual
    let dual_path_set: BTreeSet<&EdgeSubset> = dual_paths.iter().collect();
    let image: BTreeSet<EdgeSubset> = base_cuts.iter().map(|c| corr.to_dual(c)).collect();
    if let Some(c) = base_cuts.iter().find(|c| !dual_path_set.contains(&corr.to_dual(c))) {
        report.fail(json!({"direction": "mincut_to_minpath", "subset": c}));
    }
    if let Some(p) = dual_paths.iter().find(|p| !image.contains(*p)) {
        report.fail(json!({"direction": "minpath_to_mincut", "dual_subset": p}));
    }

    // minpath in H  <=>  complement is a mincut of the dual
    let dual_cut_set: BTreeSet<&EdgeSubset> = dual_cuts.iter().collect();
    let image: BTreeSet<EdgeSubset> = base_paths.iter().map(|p| corr.to_dual(p)).collect();
    if let Some(p) = base_paths.iter().find(|p| !dual_cut_set.contains(&corr.to_dual(p))) {
        report.fail(json!({"direction": "minpath_to_dual_mincut", "subset": p}));
    }
    if let Some(c) = dual_cuts.iter().find(|c| !image.contains(*c)) {
        report.fail(json!({"direction": "dual_mincut_to_minpath", "dual_subset": c}));
    }

    if size_profile(&base_cuts) != size_profile(&dual_paths)
        || size_profile(&base_paths) != size_profile(&dual_cuts)
    {
        report.fail(json!({"direction": "size_profile"}));
    }
    Ok(report)
}

/// For every subset `S` of the edges of `H^(kind)_{l,w}`: `S` is a pathset
/// iff its complement image is a cutset of the dual.
pub fn verify_corollary1(l: i64, w: i64, kind: Kind, limits: &Limits) -> Result<VerificationReport> {
    let net = build_hammock(l, w, kind)?;
    let n = net.edge_count();
    let limit = limits.exhaustive_max_edges.min(MASK_EDGES_MAX);
    if n > limit {
        return Err(HammockError::EdgeCeiling {
            method: "exhaustive pathset/cutset check",
            edges: n,
            limit,
        });
    }
    let corr = dual_network(&net);
    let base = net.graph();
    let dual = corr.dual.graph();
    let full = (1u64 << n) - 1;

    let (pathsets, mismatches): (u64, Vec<u64>) = {
        let flags: Vec<(bool, bool)> = (0..=full)
            .into_par_iter()
            .map_init(Vec::new, |scratch, m| {
                let is_path = base.connects_mask(m, scratch);
                let image = corr.map_mask(m);
                let dual_cut = !dual.connects_mask(full ^ image, scratch);
                (is_path, is_path != dual_cut)
            })
            .collect();
        let pathsets = flags.iter().filter(|f| f.0).count() as u64;
        let mismatches = flags
            .iter()
            .enumerate()
            .filter(|(_, f)| f.1)
            .map(|(m, _)| m as u64)
            .collect();
        (pathsets, mismatches)
    };

    let mut report = VerificationReport::new("corollary1")
        .param("l", l)
        .param("w", w)
        .param("kind", kind.number());
    report.count("subsets", full + 1);
    report.count("pathsets", pathsets);
    report.count("counterexamples", mismatches.len());
    if let Some(&m) = mismatches.first() {
        report.fail(json!(EdgeSubset::from_mask(n, m)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{LatticePoint, TerminalSides};

    fn edge(p: (i32, i32), q: (i32, i32)) -> Edge {
        Edge::new(LatticePoint::new(p.0, p.1), LatticePoint::new(q.0, q.1)).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_edge(edge((0, 0), (1, 1))), edge((1, 0), (0, 1)));
        assert_eq!(complement_edge(edge((3, 2), (4, 1))), edge((4, 2), (3, 1)));
        let e = edge((2, 5), (3, 6));
        assert_eq!(complement_edge(complement_edge(e)), e);
        assert_ne!(complement_edge(e).parity(), e.parity());
    }

    #[test]
    fn dual_of_single_edge() {
        let net = build_hammock(1, 1, Kind::First).unwrap();
        let corr = dual_network(&net);
        assert_eq!(corr.dual.edges(), &[edge((1, 0), (0, 1))]);
        assert_eq!(corr.dual.sources(), &[LatticePoint::new(1, 0)]);
        assert_eq!(corr.dual.termini(), &[LatticePoint::new(0, 1)]);
        assert_eq!(corr.dual.sides(), TerminalSides::BottomTop);
        assert_eq!(corr.edge_map, vec![0]);
    }

    #[test]
    fn dual_of_seven_by_three() {
        let net = build_hammock(7, 3, Kind::First).unwrap();
        let dual = dual_network(&net).dual;
        assert_eq!(dual.kind(), Kind::Second);
        assert_eq!(dual.edge_count(), 21);
        assert!(dual.sources().iter().all(|p| p.y == 0));
        assert!(dual.termini().iter().all(|p| p.y == 3));
        assert_eq!(dual.sources().len(), 4);
        assert_eq!(dual.termini().len(), 4);
    }

    #[test]
    fn minpaths_of_small_networks() {
        let one = build_hammock(1, 1, Kind::First).unwrap();
        assert_eq!(enumerate_minpaths(&one), vec![EdgeSubset::full(1)]);

        let net = build_hammock(2, 3, Kind::First).unwrap();
        let paths = enumerate_minpaths(&net);
        assert_eq!(size_profile(&paths), BTreeMap::from([(2, 5)]));

        let net = build_hammock(3, 2, Kind::First).unwrap();
        assert_eq!(size_profile(&enumerate_minpaths(&net)), BTreeMap::from([(3, 4)]));
    }

    #[test]
    fn mincuts_both_strategies() {
        let limits = Limits::default();
        let one = build_hammock(1, 1, Kind::First).unwrap();
        for strategy in [MincutStrategy::Direct, MincutStrategy::Dual] {
            assert_eq!(enumerate_mincuts(&one, strategy, &limits).unwrap(), vec![EdgeSubset::full(1)]);
        }
        let net = build_hammock(2, 3, Kind::First).unwrap();
        let direct = enumerate_mincuts(&net, MincutStrategy::Direct, &limits).unwrap();
        let via_dual = enumerate_mincuts(&net, MincutStrategy::Dual, &limits).unwrap();
        assert_eq!(size_profile(&direct), BTreeMap::from([(3, 4)]));
        assert_eq!(direct, via_dual);
    }

    #[test]
    fn direct_mincut_ceiling() {
        let net = build_hammock(3, 7, Kind::First).unwrap();
        assert!(matches!(
            enumerate_mincuts_direct(&net, 20),
            Err(HammockError::EdgeCeiling { edges: 21, limit: 20, .. })
        ));
        assert_eq!(enumerate_mincuts(&net, MincutStrategy::Dual, &Limits::default()).unwrap().len(),
                   enumerate_mincuts_via_dual(&net).len());
    }

    #[test]
    fn theorem1_reports() {
        let limits = Limits::default();
        let r = verify_theorem1(2, 3, Kind::First, &limits).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.counts["mincuts"], 4);
        assert_eq!(r.counts["dual_minpaths"], 4);
        assert_eq!(r.witness, None);
        let r = verify_theorem1(1, 1, Kind::First, &limits).unwrap();
        assert!(r.pass);
        assert_eq!(r.counts["mincuts"], 1);
        assert_eq!(r.counts["dual_minpaths"], 1);
    }

    #[test]
    fn corollary1_reports() {
        let limits = Limits::default();
        let r = verify_corollary1(2, 3, Kind::First, &limits).unwrap();
        assert!(r.pass);
        assert_eq!(r.counts["subsets"], 64);
        assert_eq!(r.counts["pathsets"], 43);
        assert_eq!(verify_corollary1(1, 1, Kind::First, &limits).unwrap().counts["subsets"], 2);
        assert!(verify_corollary1(2, 2, Kind::Second, &limits).unwrap().pass);
        assert!(verify_corollary1(3, 6, Kind::First, &limits).is_err());
    }
}
