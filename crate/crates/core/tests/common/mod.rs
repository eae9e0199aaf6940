//! Shared generators for the integration suites.
#![allow(dead_code)]

use cograph_core::chain::{QuasiOrder, RegularChain, Segment};
use cograph_core::cotree::{graph_of, random_valid_tree};
use cograph_core::family::{PrefixEntry, ReducedChainPrefix};
use cograph_core::graph::Graph;
use cograph_core::structure::{BinaryStructure, LabelAlphabet};
use cograph_core::term::{CographTerm, Mult};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_structure(rng: &mut impl Rng, n: usize, alphabet: u8) -> BinaryStructure {
    let ab = LabelAlphabet::new(alphabet, 0).unwrap();
    let mut s = BinaryStructure::constant(n, ab, 0).unwrap();
    for x in 0..n {
        for y in 0..n {
            if x != y {
                s.set_label(x, y, rng.gen_range(0..alphabet));
            }
        }
    }
    s
}

/// Graph with a flat adjacency encoded by `bits`, vertex count `n`.
pub fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits & (1 << k) != 0 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

pub fn pair_count(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

pub fn random_cograph(rng: &mut impl Rng, max_leaves: usize) -> Graph {
    let t = random_valid_tree(rng, max_leaves);
    graph_of(&t).expect("generated trees are valid")
}

pub fn random_term(rng: &mut impl Rng, depth: usize, allow_omega: bool) -> CographTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return CographTerm::Leaf;
    }
    let arity = rng.gen_range(1..=3);
    let children: Vec<(CographTerm, Mult)> = (0..arity)
        .map(|_| {
            let t = random_term(rng, depth - 1, allow_omega);
            let m = if allow_omega && rng.gen_bool(0.25) {
                Mult::Omega
            } else {
                Mult::Finite(rng.gen_range(1..=3))
            };
            (t, m)
        })
        .collect();
    let t = if rng.gen_bool(0.5) {
        CographTerm::DSum(children)
    } else {
        CographTerm::CSum(children)
    };
    t.normalize().unwrap()
}

/// Quasi-orders used in the chain tests: antichain, chain and a vee.
pub fn sample_orders() -> Vec<QuasiOrder> {
    let vee = QuasiOrder::new(
        vec!["lo".into(), "l".into(), "r".into()],
        &[(0, 1), (0, 2)],
    )
    .unwrap();
    vec![QuasiOrder::antichain(3), QuasiOrder::total(3), vee]
}

pub fn random_chain(rng: &mut impl Rng, labels: usize, allow_omega_head: bool) -> RegularChain {
    let mut segments = Vec::new();
    if allow_omega_head && rng.gen_bool(0.7) {
        let len = rng.gen_range(1..=3);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..labels)).collect();
        segments.push(Segment::OmegaStarPower { word });
    }
    let len = rng.gen_range(0..=4);
    if len > 0 {
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..labels)).collect();
        segments.push(Segment::Finite { word });
    }
    RegularChain::new(segments).unwrap()
}

/// Random small part terms for chain prefixes: odd cliques, odd and even
/// independent sets, joins.
pub fn random_part(rng: &mut impl Rng) -> CographTerm {
    match rng.gen_range(0..5) {
        0 => CographTerm::Leaf,
        1 => CographTerm::clique(Mult::Finite(3)),
        2 => CographTerm::independent(Mult::Finite(3)),
        3 => CographTerm::clique(Mult::Finite(4)),
        _ => CographTerm::CSum(vec![
            (CographTerm::Leaf, Mult::Finite(1)),
            (CographTerm::independent(Mult::Finite(2)), Mult::Finite(1)),
        ]),
    }
}

/// Random valid prefix with at least `min_anchors` anchors: bits avoid
/// three-in-a-row, anchors sit on bit-1 positions.
pub fn random_prefix(rng: &mut impl Rng, min_anchors: usize) -> ReducedChainPrefix {
    let extra = rng.gen_range(0..4);
    let blocks = min_anchors + extra;
    let mut entries = Vec::new();
    for _ in 0..blocks {
        entries.push(PrefixEntry { part: random_part(rng), bit: 0, anchor: false });
        entries.push(PrefixEntry { part: random_part(rng), bit: 1, anchor: true });
    }
    ReducedChainPrefix::new(entries).expect("alternating bits are valid")
}
