//! The diagonal lattice, X-paths and hammock networks of both kinds.
//!
//! A hammock network of dimensions `(l, w)` lives on the lattice points of
//! the rectangle `[0, l] x [0, w]` that share one parity of `x + y`. Its
//! edges are the diagonals of that parity, exactly one per unit square, so
//! every network has `l * w` edges. Edge `i` is the diagonal of the unit
//! square with lower-left corner `(i / w, i % w)`; the dual network uses the
//! other diagonal of the same square under the same index.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HammockError, Result};
use crate::subset::EdgeSubset;

/// A point `A_{x,y}` of the integer lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct LatticePoint {
    pub x: i32,
    pub y: i32,
}

impl LatticePoint {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    /// `(x + y) mod 2`: 0 for even points, 1 for odd points.
    pub fn parity(self) -> u8 {
        (self.x + self.y).rem_euclid(2) as u8
    }

    /// Reflection across the first bisectrix `y = x`.
    pub fn reflect(self) -> Self {
        Self::new(self.y, self.x)
    }
}

impl From<[i32; 2]> for LatticePoint {
    fn from([x, y]: [i32; 2]) -> Self {
        Self::new(x, y)
    }
}

impl From<LatticePoint> for [i32; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({},{})", self.x, self.y)
    }
}

/// Which parity class of lattice points a network is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Kind {
    /// Even points, `x + y` even.
    First,
    /// Odd points, `x + y` odd.
    Second,
}

impl Kind {
    pub const BOTH: [Kind; 2] = [Kind::First, Kind::Second];

    pub fn parity(self) -> u8 {
        match self {
            Kind::First => 0,
            Kind::Second => 1,
        }
    }

    pub fn from_parity(parity: u8) -> Self {
        if parity.is_multiple_of(2) {
            Kind::First
        } else {
            Kind::Second
        }
    }

    /// The `2/i` kind: 1 becomes 2 and 2 becomes 1.
    pub fn flip(self) -> Self {
        match self {
            Kind::First => Kind::Second,
            Kind::Second => Kind::First,
        }
    }

    pub fn number(self) -> i64 {
        match self {
            Kind::First => 1,
            Kind::Second => 2,
        }
    }
}

impl TryFrom<i64> for Kind {
    type Error = HammockError;

    fn try_from(k: i64) -> Result<Self> {
        match k {
            1 => Ok(Kind::First),
            2 => Ok(Kind::Second),
            other => Err(HammockError::InvalidKind(other)),
        }
    }
}

impl From<Kind> for i64 {
    fn from(k: Kind) -> i64 {
        k.number()
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Where the terminals sit on the bounding rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TerminalSides {
    /// Sources on `x = 0`, termini on `x = l`. Every hammock network.
    LeftRight,
    /// Sources on `y = 0`, termini on `y = w`. Every dual network.
    BottomTop,
}

impl TerminalSides {
    pub fn flip(self) -> Self {
        match self {
            TerminalSides::LeftRight => TerminalSides::BottomTop,
            TerminalSides::BottomTop => TerminalSides::LeftRight,
        }
    }
}

/// A diagonal segment of length sqrt(2), stored with `a.x < b.x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[LatticePoint; 2]", into = "[LatticePoint; 2]")]
pub struct Edge {
    a: LatticePoint,
    b: LatticePoint,
}

impl Edge {
    /// Returns `None` unless the points differ by one step in each coordinate.
    pub fn new(p: LatticePoint, q: LatticePoint) -> Option<Self> {
        if (p.x - q.x).abs() != 1 || (p.y - q.y).abs() != 1 {
            return None;
        }
        Some(if p.x < q.x {
            Self { a: p, b: q }
        } else {
            Self { a: q, b: p }
        })
    }

    /// The diagonal of parity `parity` in the unit square with lower-left
    /// corner `corner`.
    pub fn in_square(corner: LatticePoint, parity: u8) -> Self {
        let LatticePoint { x, y } = corner;
        if corner.parity() == parity % 2 {
            Self {
                a: corner,
                b: LatticePoint::new(x + 1, y + 1),
            }
        } else {
            Self {
                a: LatticePoint::new(x, y + 1),
                b: LatticePoint::new(x + 1, y),
            }
        }
    }

    /// Left endpoint.
    pub fn a(self) -> LatticePoint {
        self.a
    }

    /// Right endpoint.
    pub fn b(self) -> LatticePoint {
        self.b
    }

    pub fn endpoints(self) -> [LatticePoint; 2] {
        [self.a, self.b]
    }

    pub fn parity(self) -> u8 {
        self.a.parity()
    }

    pub fn is_rising(self) -> bool {
        self.b.y > self.a.y
    }

    /// Lower-left corner of the unit square this edge is a diagonal of.
    pub fn square(self) -> LatticePoint {
        LatticePoint::new(self.a.x, self.a.y.min(self.b.y))
    }

    pub fn reflect(self) -> Self {
        Self::new(self.a.reflect(), self.b.reflect()).expect("reflection preserves diagonals")
    }

    fn sort_key(self) -> (i32, i32, bool) {
        let sq = self.square();
        (sq.x, sq.y, !self.is_rising())
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<[LatticePoint; 2]> for Edge {
    type Error = HammockError;

    fn try_from([p, q]: [LatticePoint; 2]) -> Result<Self> {
        Edge::new(p, q).ok_or_else(|| {
            HammockError::MalformedNetwork(format!("{p}{q} is not a unit diagonal"))
        })
    }
}

impl From<Edge> for [LatticePoint; 2] {
    fn from(e: Edge) -> Self {
        [e.a, e.b]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.a, self.b)
    }
}

/// True iff consecutive points differ by `(+-1, +-1)` and no point repeats.
pub fn is_x_path(points: &[LatticePoint]) -> bool {
    let steps_ok = points
        .windows(2)
        .all(|w| (w[0].x - w[1].x).abs() == 1 && (w[0].y - w[1].y).abs() == 1);
    if !steps_ok {
        return false;
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// A hammock network, or the dual of one.
///
/// Immutable after construction. Besides the lattice description it keeps
/// the index form of the graph used by the connectivity tests.
#[derive(Clone, Debug)]
pub struct HammockNetwork {
    length: usize,
    width: usize,
    kind: Kind,
    sides: TerminalSides,
    vertices: Vec<LatticePoint>,
    edges: Vec<Edge>,
    sources: Vec<LatticePoint>,
    termini: Vec<LatticePoint>,
    graph: IndexGraph,
}

impl PartialEq for HammockNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length
            && self.width == other.width
            && self.kind == other.kind
            && self.sides == other.sides
    }
}

impl Eq for HammockNetwork {}

/// Builds `H^(kind)_{l,w}`, terminals on the left and right sides.
pub fn build_hammock(length: i64, width: i64, kind: Kind) -> Result<HammockNetwork> {
    HammockNetwork::with_sides(length, width, kind, TerminalSides::LeftRight)
}

impl HammockNetwork {
    /// Builds the network on the `kind` points of `[0, l] x [0, w]` with
    /// terminals on the given sides.
    pub fn with_sides(length: i64, width: i64, kind: Kind, sides: TerminalSides) -> Result<Self> {
        if length < 1 || width < 1 || length > i32::MAX as i64 / 2 || width > i32::MAX as i64 / 2 {
            return Err(HammockError::InvalidDimension { length, width });
        }
        let (l, w) = (length as i32, width as i32);
        let parity = kind.parity();

        let vertices: Vec<LatticePoint> = (0..=l)
            .flat_map(|x| (0..=w).map(move |y| LatticePoint::new(x, y)))
            .filter(|p| p.parity() == parity)
            .collect();
        let edges: Vec<Edge> = (0..l)
            .flat_map(|x| (0..w).map(move |y| Edge::in_square(LatticePoint::new(x, y), parity)))
            .collect();
        let (sources, termini): (Vec<_>, Vec<_>) = match sides {
            TerminalSides::LeftRight => (
                vertices.iter().copied().filter(|p| p.x == 0).collect(),
                vertices.iter().copied().filter(|p| p.x == l).collect(),
            ),
            TerminalSides::BottomTop => (
                vertices.iter().copied().filter(|p| p.y == 0).collect(),
                vertices.iter().copied().filter(|p| p.y == w).collect(),
            ),
        };
        let graph = IndexGraph::new(&vertices, &edges, &sources, &termini);
        Ok(Self {
            length: length as usize,
            width: width as usize,
            kind,
            sides,
            vertices,
            edges,
            sources,
            termini,
            graph,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn sides(&self) -> TerminalSides {
        self.sides
    }

    /// Vertices sorted by `(x, y)`.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Edges in canonical index order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sources(&self) -> &[LatticePoint] {
        &self.sources
    }

    pub fn termini(&self) -> &[LatticePoint] {
        &self.termini
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        let sq = e.square();
        let inside = sq.x >= 0
            && sq.y >= 0
            && (sq.x as usize) < self.length
            && (sq.y as usize) < self.width;
        (inside && e.parity() == self.kind.parity())
            .then(|| sq.x as usize * self.width + sq.y as usize)
    }

    pub fn contains_vertex(&self, p: LatticePoint) -> bool {
        self.vertices.binary_search(&p).is_ok()
    }

    /// The subset of the given edges; fails if any edge is not in the network.
    pub fn subset_of_edges<I: IntoIterator<Item = Edge>>(&self, edges: I) -> Result<EdgeSubset> {
        let mut s = EdgeSubset::empty(self.edge_count());
        for e in edges {
            let i = self.edge_index(e).ok_or_else(|| {
                HammockError::MalformedNetwork(format!("edge {e} is not in the network"))
            })?;
            s.insert(i);
        }
        Ok(s)
    }

    /// Mirror image across `y = x`. Point parities are unchanged and the
    /// terminal sides swap, so the dual of `H^(i)_{l,w}` maps onto
    /// `H^(2/i)_{w,l}`.
    pub fn transposed(&self) -> Self {
        Self::with_sides(
            self.width as i64,
            self.length as i64,
            self.kind,
            self.sides.flip(),
        )
        .expect("dimensions already validated")
    }

    /// Edge index in [`Self::transposed`] of each edge of `self`.
    pub fn transpose_edge_map(&self) -> Vec<usize> {
        let t = self.transposed();
        self.edges
            .iter()
            .map(|e| t.edge_index(e.reflect()).expect("reflection stays inside"))
            .collect()
    }

    /// Pathset test by super-source/super-terminus connectivity.
    pub fn is_pathset(&self, s: &EdgeSubset) -> bool {
        debug_assert_eq!(s.universe(), self.edge_count());
        self.graph.connects(s.iter(), &mut Vec::new())
    }

    /// `s` is a cutset iff the remaining edges are not a pathset.
    pub fn is_cutset(&self, s: &EdgeSubset) -> bool {
        !self.is_pathset(&s.complement())
    }

    pub(crate) fn graph(&self) -> &IndexGraph {
        &self.graph
    }
}

pub fn is_pathset(net: &HammockNetwork, s: &EdgeSubset) -> bool {
    net.is_pathset(s)
}

pub fn is_cutset(net: &HammockNetwork, s: &EdgeSubset) -> bool {
    net.is_cutset(s)
}

/// Vertex-index form of a network: endpoints of every edge, terminal indices
/// and adjacency lists.
#[derive(Clone, Debug)]
pub(crate) struct IndexGraph {
    pub(crate) vertex_count: usize,
    pub(crate) endpoints: Vec<(u32, u32)>,
    pub(crate) sources: Vec<u32>,
    pub(crate) termini: Vec<u32>,
    pub(crate) is_source: Vec<bool>,
    pub(crate) is_terminus: Vec<bool>,
    /// `(neighbour, edge index)` per vertex.
    pub(crate) adjacency: Vec<Vec<(u32, usize)>>,
}

impl IndexGraph {
    fn new(
        vertices: &[LatticePoint],
        edges: &[Edge],
        sources: &[LatticePoint],
        termini: &[LatticePoint],
    ) -> Self {
        let index = |p: &LatticePoint| vertices.binary_search(p).expect("vertex of network") as u32;
        let endpoints: Vec<(u32, u32)> = edges.iter().map(|e| (index(&e.a), index(&e.b))).collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, &(u, v)) in endpoints.iter().enumerate() {
            adjacency[u as usize].push((v, i));
            adjacency[v as usize].push((u, i));
        }
        let sources: Vec<u32> = sources.iter().map(index).collect();
        let termini: Vec<u32> = termini.iter().map(index).collect();
        let mut is_source = vec![false; vertices.len()];
        let mut is_terminus = vec![false; vertices.len()];
        for &s in &sources {
            is_source[s as usize] = true;
        }
        for &t in &termini {
            is_terminus[t as usize] = true;
        }
        Self {
            vertex_count: vertices.len(),
            endpoints,
            sources,
            termini,
            is_source,
            is_terminus,
            adjacency,
        }
    }

    /// Union-find over the chosen edges with all sources pre-merged.
    /// `scratch` is reused between calls to avoid reallocating.
    pub(crate) fn connects<I: Iterator<Item = usize>>(&self, edges: I, scratch: &mut Vec<u32>) -> bool {
        scratch.clear();
        scratch.extend(0..self.vertex_count as u32);
        let root = self.sources[0];
        for &s in &self.sources[1..] {
            scratch[s as usize] = root;
        }
        for i in edges {
            let (u, v) = self.endpoints[i];
            let ru = find(scratch, u);
            let rv = find(scratch, v);
            if ru != rv {
                scratch[ru.max(rv) as usize] = ru.min(rv);
            }
        }
        let r = find(scratch, root);
        self.termini.iter().any(|&t| find(scratch, t) == r)
    }

    pub(crate) fn connects_mask(&self, mask: u64, scratch: &mut Vec<u32>) -> bool {
        let bits = std::iter::successors((mask != 0).then_some(mask), |m| {
            let next = m & (m - 1);
            (next != 0).then_some(next)
        })
        .map(|m| m.trailing_zeros() as usize);
        self.connects(bits, scratch)
    }
}

fn find(parent: &mut [u32], mut v: u32) -> u32 {
    while parent[v as usize] != v {
        let grand = parent[parent[v as usize] as usize];
        parent[v as usize] = grand;
        v = grand;
    }
    v
}

/// Wire form of a network. Edges appear in canonical index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkJson {
    pub length: i64,
    pub width: i64,
    pub kind: i64,
    pub vertices: Vec<[i32; 2]>,
    pub edges: Vec<[[i32; 2]; 2]>,
    pub sources: Vec<[i32; 2]>,
    pub termini: Vec<[i32; 2]>,
}

impl From<&HammockNetwork> for NetworkJson {
    fn from(net: &HammockNetwork) -> Self {
        Self {
            length: net.length as i64,
            width: net.width as i64,
            kind: net.kind.number(),
            vertices: net.vertices.iter().map(|&p| p.into()).collect(),
            edges: net.edges.iter().map(|e| [e.a.into(), e.b.into()]).collect(),
            sources: net.sources.iter().map(|&p| p.into()).collect(),
            termini: net.termini.iter().map(|&p| p.into()).collect(),
        }
    }
}

impl TryFrom<NetworkJson> for HammockNetwork {
    type Error = HammockError;

    /// Rebuilds the network from its dimensions and kind, then requires the
    /// listed vertices, edges and terminals to match one of the two terminal
    /// placements exactly.
    fn try_from(json: NetworkJson) -> Result<Self> {
        let kind = Kind::try_from(json.kind)?;
        for sides in [TerminalSides::LeftRight, TerminalSides::BottomTop] {
            let net = HammockNetwork::with_sides(json.length, json.width, kind, sides)?;
            if NetworkJson::from(&net) == json {
                return Ok(net);
            }
        }
        Err(HammockError::MalformedNetwork(format!(
            "contents do not match a {}x{} kind-{} hammock or its dual",
            json.length, json.width, json.kind
        )))
    }
}

impl Serialize for HammockNetwork {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        NetworkJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HammockNetwork {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = NetworkJson::deserialize(deserializer)?;
        HammockNetwork::try_from(json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i32, y: i32) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn edge(p: (i32, i32), q: (i32, i32)) -> Edge {
        Edge::new(pt(p.0, p.1), pt(q.0, q.1)).unwrap()
    }

    #[test]
    fn smallest_network() {
        let net = build_hammock(1, 1, Kind::First).unwrap();
        assert_eq!(net.edges(), &[edge((0, 0), (1, 1))]);
        assert_eq!(net.sources(), &[pt(0, 0)]);
        assert_eq!(net.termini(), &[pt(1, 1)]);
    }

    #[test]
    fn four_by_four_terminals() {
        let first = build_hammock(4, 4, Kind::First).unwrap();
        assert_eq!(first.edge_count(), 16);
        assert_eq!(first.sources(), &[pt(0, 0), pt(0, 2), pt(0, 4)]);
        assert_eq!(first.termini(), &[pt(4, 0), pt(4, 2), pt(4, 4)]);

        let second = build_hammock(4, 4, Kind::Second).unwrap();
        assert_eq!(second.edge_count(), 16);
        assert_eq!(second.sources(), &[pt(0, 1), pt(0, 3)]);
        assert_eq!(second.termini(), &[pt(4, 1), pt(4, 3)]);
    }

    #[test]
    fn seven_by_three_layout() {
        for kind in Kind::BOTH {
            let net = build_hammock(7, 3, kind).unwrap();
            assert_eq!(net.edge_count(), 21);
            assert_eq!(net.sources().len(), 2);
            assert_eq!(net.termini().len(), 2);
            assert_eq!(net.vertices().len(), 16);
        }
    }

    #[test]
    fn rejects_degenerate_dimensions() {
        assert_eq!(
            build_hammock(0, 3, Kind::First).unwrap_err(),
            HammockError::InvalidDimension { length: 0, width: 3 }
        );
        assert!(build_hammock(2, -1, Kind::Second).is_err());
        assert_eq!(Kind::try_from(3), Err(HammockError::InvalidKind(3)));
    }

    #[test]
    fn edge_index_is_square_order() {
        let net = build_hammock(3, 4, Kind::Second).unwrap();
        for (i, e) in net.edges().iter().enumerate() {
            assert_eq!(net.edge_index(*e), Some(i));
            let sq = e.square();
            assert_eq!(i, sq.x as usize * 4 + sq.y as usize);
        }
        let mut sorted = net.edges().to_vec();
        sorted.sort();
        assert_eq!(sorted, net.edges());
        // wrong parity
        assert_eq!(net.edge_index(edge((0, 0), (1, 1))), None);
    }

    #[test]
    fn edge_normalises_orientation() {
        assert_eq!(edge((1, 1), (0, 0)), edge((0, 0), (1, 1)));
        assert_eq!(edge((4, 1), (3, 2)).a(), pt(3, 2));
        assert!(Edge::new(pt(0, 0), pt(1, 0)).is_none());
        assert!(Edge::new(pt(0, 0), pt(2, 2)).is_none());
    }

    #[test]
    fn x_path_examples() {
        let fig = [pt(1, 2), pt(2, 1), pt(3, 0), pt(4, 1), pt(3, 2), pt(4, 3)];
        assert!(is_x_path(&fig));
        assert!(fig.iter().all(|p| p.parity() == 1));
        assert!(is_x_path(&[pt(0, 0)]));
        assert!(!is_x_path(&[pt(0, 0), pt(1, 1), pt(0, 0)]));
        assert!(!is_x_path(&[pt(0, 0), pt(1, 0)]));
    }

    #[test]
    fn pathset_and_cutset_examples() {
        let one = build_hammock(1, 1, Kind::First).unwrap();
        let all = EdgeSubset::full(1);
        assert!(one.is_pathset(&all));
        assert!(one.is_cutset(&all));
        assert!(!one.is_pathset(&EdgeSubset::empty(1)));
        assert!(!one.is_cutset(&EdgeSubset::empty(1)));

        let net = build_hammock(2, 3, Kind::First).unwrap();
        let path = net
            .subset_of_edges([edge((0, 0), (1, 1)), edge((1, 1), (2, 0))])
            .unwrap();
        assert!(net.is_pathset(&path));
        let cut = net
            .subset_of_edges([edge((0, 0), (1, 1)), edge((0, 2), (1, 1)), edge((0, 2), (1, 3))])
            .unwrap();
        assert!(net.is_cutset(&cut));
        assert!(!net.is_pathset(&cut));
        assert!(!net.is_cutset(&EdgeSubset::empty(6)));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let net = build_hammock(3, 2, Kind::Second).unwrap();
        let text = serde_json::to_string(&net).unwrap();
        assert!(text.starts_with(r#"{"length":3,"width":2,"kind":2,"vertices":[[0,1],"#));
        let back: HammockNetwork = serde_json::from_str(&text).unwrap();
        assert_eq!(back, net);
        assert_eq!(back.edges(), net.edges());

        let mut json = NetworkJson::from(&net);
        json.edges.swap(0, 1);
        assert!(HammockNetwork::try_from(json).is_err());
    }
}
