//! Column-sweep transfer-matrix engine.
//!
//! The network is swept along its length, one unit square (one edge) at a
//! time. The state is the connectivity partition of the active lattice
//! points induced by the edges decided so far, in restricted-growth form,
//! together with the set of blocks joined to a source. Each state carries a
//! weight vector indexed by the number of chosen edges.
//!
//! While column `c` is processed the active points are those of column `c`
//! still awaiting an edge plus those of column `c + 1` already reached. A
//! point is dropped once both of its right-hand squares are decided.
//!
//! Sources all sit on column 0, so a state with no source-joined block can
//! never become connected and is discarded. Termini all sit on the last
//! column, so every state surviving the sweep is a pathset.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::ReliabilityPolynomial;
use crate::error::{HammockError, Result};
use crate::lattice::{HammockNetwork, TerminalSides};
use crate::limits::{Limits, FRONTIER_WIDTH_MAX};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct FrontierState {
    /// Block label of each active point, labels in first-occurrence order.
    blocks: Vec<u8>,
    /// Bit `k` set when block `k` is joined to a source.
    source_blocks: u64,
}

impl FrontierState {
    /// Relabels in first-occurrence order. `None` when no block is joined
    /// to a source any more.
    fn normalized(blocks: &[u8], source_blocks: u64) -> Option<Self> {
        let mut map = [u8::MAX; 64];
        let mut next = 0u8;
        let mut flags = 0u64;
        let relabeled = blocks
            .iter()
            .map(|&b| {
                if map[b as usize] == u8::MAX {
                    map[b as usize] = next;
                    if source_blocks >> b & 1 == 1 {
                        flags |= 1 << next;
                    }
                    next += 1;
                }
                map[b as usize]
            })
            .collect();
        (flags != 0).then_some(Self {
            blocks: relabeled,
            source_blocks: flags,
        })
    }

    fn with_point(&self) -> Self {
        let fresh = self.blocks.iter().max().map_or(0, |m| m + 1);
        let mut blocks = self.blocks.clone();
        blocks.push(fresh);
        Self {
            blocks,
            source_blocks: self.source_blocks,
        }
    }

    fn joined(&self, i: usize, j: usize) -> Option<Self> {
        let (keep, gone) = (self.blocks[i], self.blocks[j]);
        if keep == gone {
            return Some(self.clone());
        }
        let blocks: Vec<u8> = self
            .blocks
            .iter()
            .map(|&b| if b == gone { keep } else { b })
            .collect();
        let mut flags = self.source_blocks;
        if flags >> gone & 1 == 1 {
            flags |= 1 << keep;
        }
        flags &= !(1 << gone);
        Self::normalized(&blocks, flags)
    }

    fn without(&self, i: usize) -> Option<Self> {
        let mut blocks = self.blocks.clone();
        blocks.remove(i);
        Self::normalized(&blocks, self.source_blocks)
    }
}

/// Shape of a network seen from the sweep: `columns` steps of width `rows`,
/// with lattice points `(c, r)` present when `(c + r) % 2 == parity`.
struct Sweep {
    columns: usize,
    rows: usize,
    parity: usize,
}

impl Sweep {
    fn of(net: &HammockNetwork) -> Self {
        let (columns, rows) = match net.sides() {
            TerminalSides::LeftRight => (net.length(), net.width()),
            // Reflection across y = x keeps parities and moves the
            // terminals to the left and right.
            TerminalSides::BottomTop => (net.width(), net.length()),
        };
        Self {
            columns,
            rows,
            parity: net.kind().parity() as usize,
        }
    }

    fn has_point(&self, c: usize, r: usize) -> bool {
        (c + r) % 2 == self.parity
    }

    /// Rows `(left, right)` joined by the edge in square `(c, r)`.
    fn edge_rows(&self, c: usize, r: usize) -> (usize, usize) {
        let left = if self.has_point(c, r) { r } else { r + 1 };
        let right = if self.has_point(c + 1, r) { r } else { r + 1 };
        (left, right)
    }
}

type Weights = Vec<BigUint>;

fn insert(into: &mut HashMap<FrontierState, Weights>, state: FrontierState, weights: &[BigUint], shift: usize) {
    let slot = into.entry(state).or_default();
    if slot.len() < weights.len() + shift {
        slot.resize(weights.len() + shift, BigUint::zero());
    }
    for (d, w) in weights.iter().enumerate() {
        if !w.is_zero() {
            slot[d + shift] += w;
        }
    }
}

/// `N_i` by the column sweep.
pub fn pathset_counts_frontier(net: &HammockNetwork, max_width: usize) -> Result<Vec<BigInt>> {
    let sweep = Sweep::of(net);
    let limit = max_width.min(FRONTIER_WIDTH_MAX);
    if sweep.rows > limit {
        return Err(HammockError::WidthLimit {
            width: sweep.rows,
            limit,
        });
    }
    let n = sweep.columns * sweep.rows;

    // Active points as (column, row), in insertion order.
    let mut active: Vec<(usize, usize)> = (0..=sweep.rows)
        .filter(|&r| sweep.has_point(0, r))
        .map(|r| (0, r))
        .collect();
    let mut states: HashMap<FrontierState, Weights> = HashMap::new();
    states.insert(
        FrontierState {
            blocks: vec![0; active.len()],
            source_blocks: 1,
        },
        vec![BigUint::from(1u8)],
    );

    for c in 0..sweep.columns {
        for r in 0..sweep.rows {
            let (left, right) = sweep.edge_rows(c, r);
            if !active.contains(&(c + 1, right)) {
                active.push((c + 1, right));
                states = states.into_iter().map(|(s, w)| (s.with_point(), w)).collect();
            }
            let i = active.iter().position(|&p| p == (c, left)).expect("left point active");
            let j = active.iter().position(|&p| p == (c + 1, right)).expect("right point active");

            let mut next = HashMap::with_capacity(states.len() * 2);
            for (state, weights) in &states {
                insert(&mut next, state.clone(), weights, 0);
                if let Some(joined) = state.joined(i, j) {
                    insert(&mut next, joined, weights, 1);
                }
            }
            states = next;

            // The left point of row r is finished once square r is decided.
            if sweep.has_point(c, r) {
                states = forget(&mut active, (c, r), states);
            }
        }
        if sweep.has_point(c, sweep.rows) {
            states = forget(&mut active, (c, sweep.rows), states);
        }
    }

    let mut counts = vec![BigInt::zero(); n + 1];
    for weights in states.values() {
        for (d, w) in weights.iter().enumerate() {
            counts[d] += BigInt::from(w.clone());
        }
    }
    Ok(counts)
}

fn forget(
    active: &mut Vec<(usize, usize)>,
    point: (usize, usize),
    states: HashMap<FrontierState, Weights>,
) -> HashMap<FrontierState, Weights> {
    let i = active.iter().position(|&p| p == point).expect("point active");
    active.remove(i);
    let mut next = HashMap::with_capacity(states.len());
    for (state, weights) in states {
        if let Some(s) = state.without(i) {
            insert(&mut next, s, &weights, 0);
        }
    }
    next
}

pub fn reliability_frontier(net: &HammockNetwork, limits: &Limits) -> Result<ReliabilityPolynomial> {
    let counts = pathset_counts_frontier(net, limits.frontier_max_width)?;
    Ok(ReliabilityPolynomial::from_pathset_counts(net, counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_hammock, Kind};

    fn counts(l: i64, w: i64, kind: Kind) -> Vec<i64> {
        let net = build_hammock(l, w, kind).unwrap();
        pathset_counts_frontier(&net, 8)
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c.clone()).unwrap())
            .collect()
    }

    #[test]
    fn single_edge() {
        assert_eq!(counts(1, 1, Kind::First), vec![0, 1]);
        assert_eq!(counts(1, 1, Kind::Second), vec![0, 1]);
    }

    #[test]
    fn series_line() {
        assert_eq!(counts(4, 1, Kind::First), vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn small_cases() {
        assert_eq!(counts(2, 3, Kind::First), vec![0, 0, 5, 16, 15, 6, 1]);
        assert_eq!(counts(3, 2, Kind::Second), vec![0, 0, 0, 4, 10, 6, 1]);
        assert_eq!(counts(2, 2, Kind::First), vec![0, 0, 4, 4, 1]);
        assert_eq!(counts(2, 2, Kind::Second), vec![0, 0, 2, 4, 1]);
    }

    #[test]
    fn width_limit() {
        let net = build_hammock(2, 9, Kind::First).unwrap();
        assert!(pathset_counts_frontier(&net, 9).is_ok());
        let err = pathset_counts_frontier(&net, 8).unwrap_err();
        assert_eq!(err, HammockError::WidthLimit { width: 9, limit: 8 });
        assert!(err.is_resource_limit());
    }

    #[test]
    fn sweep_geometry() {
        let net = build_hammock(2, 3, Kind::First).unwrap();
        let sweep = Sweep::of(&net);
        // Square (0,0) holds A(0,0)A(1,1), square (0,1) holds A(0,2)A(1,1).
        assert_eq!(sweep.edge_rows(0, 0), (0, 1));
        assert_eq!(sweep.edge_rows(0, 1), (2, 1));
        assert_eq!(sweep.edge_rows(1, 0), (1, 0));
    }

    #[test]
    fn wide_single_column() {
        // One column of w parallel-ish edges: kind 1, l = 1 pairs every
        // left point with one right point through one or two edges.
        let limits = Limits { frontier_max_width: 20, ..Limits::default() };
        let net = build_hammock(1, 20, Kind::First).unwrap();
        let poly = reliability_frontier(&net, &limits).unwrap();
        // every single edge joins a source to a terminus
        assert_eq!(poly.pathset_counts()[1], BigInt::from(20));
        assert_eq!(poly.pathset_counts()[0], BigInt::zero());
    }

    #[test]
    fn state_normalization() {
        let s = FrontierState::normalized(&[2, 0, 2, 1], 0b001).unwrap();
        assert_eq!(s.blocks, vec![0, 1, 0, 2]);
        assert_eq!(s.source_blocks, 0b010);
        assert!(FrontierState::normalized(&[0, 1], 0b100).is_none());
        let joined = s.joined(0, 1).unwrap();
        assert_eq!(joined.blocks, vec![0, 0, 0, 1]);
        assert_eq!(joined.source_blocks, 0b001);
        assert!(joined.without(3).is_some());
        let lone = FrontierState { blocks: vec![0, 1], source_blocks: 0b10 };
        assert!(lone.without(1).is_none());
    }
}
