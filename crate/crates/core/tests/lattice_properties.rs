use hammock::{build_hammock, is_x_path, EdgeSubset, HammockNetwork, Kind, LatticePoint};
use hammock::reliability::pathset_counts_bruteforce;
use proptest::prelude::*;

/// Searches for a vertex-distinct X-path from a source to a terminus that
/// walks only along edges of `s`, directly on lattice points.
fn has_x_path(net: &HammockNetwork, s: &EdgeSubset) -> bool {
    fn search(net: &HammockNetwork, s: &EdgeSubset, path: &mut Vec<LatticePoint>) -> bool {
        let here = *path.last().unwrap();
        if net.termini().contains(&here) {
            assert!(is_x_path(path));
            return true;
        }
        for (dx, dy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let next = LatticePoint::new(here.x + dx, here.y + dy);
            if path.contains(&next) {
                continue;
            }
            let Some(e) = hammock::Edge::new(here, next) else { continue };
            if net.edge_index(e).is_some_and(|i| s.contains(i)) {
                path.push(next);
                if search(net, s, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    net.sources().iter().any(|&src| search(net, s, &mut vec![src]))
}

#[test]
fn structural_counts_up_to_six() {
    for l in 1..=6 {
        for w in 1..=6 {
            for kind in Kind::BOTH {
                let net = build_hammock(l, w, kind).unwrap();
                assert_eq!(net.edge_count() as i64, l * w);
                let half = (w / 2) as usize;
                assert!([half, half + 1].contains(&net.sources().len()));
                assert!([half, half + 1].contains(&net.termini().len()));
                assert!(net
                    .vertices()
                    .iter()
                    .all(|p| p.parity() == kind.parity() && p.x <= l as i32 && p.y <= w as i32));
                // Deterministic construction.
                assert_eq!(build_hammock(l, w, kind).unwrap().edges(), net.edges());
            }
        }
    }
}

#[test]
fn cutset_is_complement_of_pathset_exhaustively() {
    for l in 1..=16i64 {
        for w in 1..=(16 / l) {
            for kind in Kind::BOTH {
                let net = build_hammock(l, w, kind).unwrap();
                let n = net.edge_count();
                for m in 0..1u64 << n {
                    let s = EdgeSubset::from_mask(n, m);
                    assert_eq!(net.is_cutset(&s.complement()), !net.is_pathset(&s));
                }
            }
        }
    }
}

#[test]
fn connectivity_agrees_with_x_path_search() {
    for l in 1..=12i64 {
        for w in 1..=(12 / l) {
            for kind in Kind::BOTH {
                let net = build_hammock(l, w, kind).unwrap();
                let n = net.edge_count();
                for m in 0..1u64 << n {
                    let s = EdgeSubset::from_mask(n, m);
                    assert_eq!(net.is_pathset(&s), has_x_path(&net, &s), "{l}x{w} kind {kind} {s}");
                }
            }
        }
    }
}

#[test]
fn kinds_agree_when_a_dimension_is_odd() {
    for l in 1..=4 {
        for w in 1..=4 {
            if l % 2 == 0 && w % 2 == 0 {
                continue;
            }
            let a = pathset_counts_bruteforce(&build_hammock(l, w, Kind::First).unwrap(), 24).unwrap();
            let b = pathset_counts_bruteforce(&build_hammock(l, w, Kind::Second).unwrap(), 24).unwrap();
            assert_eq!(a, b, "{l}x{w}");
        }
    }
}

fn network() -> impl Strategy<Value = HammockNetwork> {
    (1i64..=5, 1i64..=5, prop::bool::ANY).prop_map(|(l, w, second)| {
        build_hammock(l, w, if second { Kind::Second } else { Kind::First }).unwrap()
    })
}

proptest! {
    #[test]
    fn pathsets_are_upward_closed(net in network(), a in any::<u64>(), b in any::<u64>()) {
        let n = net.edge_count();
        let mask = (1u64 << n) - 1;
        let small = EdgeSubset::from_mask(n, a & b & mask);
        let large = EdgeSubset::from_mask(n, (a & mask) | (b & mask));
        prop_assert!(small.is_subset_of(&large));
        if net.is_pathset(&small) {
            prop_assert!(net.is_pathset(&large));
        }
        if net.is_cutset(&small) {
            prop_assert!(net.is_cutset(&large));
        }
    }

    #[test]
    fn network_json_round_trips(net in network()) {
        let text = serde_json::to_string(&net).unwrap();
        let back: HammockNetwork = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.edges(), net.edges());
        prop_assert_eq!(back.sources(), net.sources());
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
