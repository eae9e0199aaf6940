//! Per-module invariants checked by sampling and by differential
//! comparison against the brute-force oracles.

mod common;

use cograph_core::chain::{q_embedding, RegularChain};
use cograph_core::cotree::{decomposition_tree, graph_of, random_valid_tree};
use cograph_core::embedding::{embeds, isomorphic};
use cograph_core::error::Error;
use cograph_core::family::{build_cf, decode_f, FBits};
use cograph_core::graph::{Graph, LabelledChainSpec};
use cograph_core::modular::{
    components_of, gallai_quotient, is_module, is_strong_module, least_strong_module, GallaiType,
    StrongFamily,
};
use cograph_core::oracle::{
    definition_monomorphic_check, enumerate_modules, strong_modules_by_enumeration,
    truncation_embedding,
};
use cograph_core::sibling::{
    canonical_monomorphic_decomposition, check_mono_embedding_constraint, class_count,
    classify_siblings, lex_reconstruction, MonoConstraint,
};
use cograph_core::structure::BinaryStructure;
use cograph_core::term::{CographTerm, Mult};
use common::*;
use proptest::prelude::*;
use rand::Rng as _;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in arb_graph(9)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn sum_duality(gs in proptest::collection::vec(arb_graph(5), 1..4)) {
        let direct = Graph::direct_sum(&gs).unwrap();
        let complements: Vec<Graph> = gs.iter().map(Graph::complement).collect();
        let complete_of_complements = Graph::complete_sum(&complements).unwrap();
        prop_assert_eq!(direct.complement(), complete_of_complements);
    }

    #[test]
    fn two_position_labelled_sums_are_plain_sums(a in arb_graph(4), b in arb_graph(4), bit in 0u8..2) {
        let spec = LabelledChainSpec::new(vec![(a.clone(), bit), (b.clone(), 0)]).unwrap();
        let by_chain = Graph::labelled_sum(&spec);
        let by_sum = if bit == 1 {
            Graph::complete_sum(&[a, b]).unwrap()
        } else {
            Graph::direct_sum(&[a, b]).unwrap()
        };
        prop_assert_eq!(by_chain, by_sum);
    }

    #[test]
    fn lex_sum_with_singletons_is_the_index(g in arb_graph(7)) {
        let parts: Vec<Graph> = (0..g.n()).map(|_| Graph::complete(1)).collect();
        prop_assert_eq!(Graph::lex_sum(&g, &parts).unwrap(), g);
    }

    #[test]
    fn embedding_is_reflexive(g in arb_graph(7)) {
        prop_assert!(embeds(&g, &g).unwrap());
    }
}

#[test]
fn embedding_is_transitive_on_random_triples() {
    let mut r = rng(11);
    for _ in 0..300 {
        let (na, nb, nc) = (r.gen_range(1..5), r.gen_range(1..6), r.gen_range(1..7));
        let a = random_graph(&mut r, na, 0.5);
        let b = random_graph(&mut r, nb, 0.5);
        let c = random_graph(&mut r, nc, 0.5);
        if embeds(&a, &b).unwrap() && embeds(&b, &c).unwrap() {
            assert!(embeds(&a, &c).unwrap());
        }
    }
}

#[test]
fn cograph_iff_complement_is_cograph_exhaustive_n7() {
    for n in 1..=7usize {
        let pairs = pair_count(n);
        for bits in 0..(1u64 << pairs) {
            let g = graph_from_bits(n, bits);
            assert_eq!(g.is_cograph(), g.complement().is_cograph());
        }
    }
}

// -------- modular decomposition against the oracle --------

fn closure_lemmas(s: &BinaryStructure) {
    let modules = enumerate_modules(s).unwrap();
    let as_mask = |m: &[usize]| m.iter().fold(0u64, |acc, &v| acc | (1 << v));
    let masks: Vec<u64> = modules.iter().map(|m| as_mask(m)).collect();
    let member = |mask: u64| -> Vec<usize> { (0..s.n()).filter(|&v| mask & (1 << v) != 0).collect() };
    let cap = 400usize;
    for (i, &a) in masks.iter().enumerate().take(cap) {
        for &b in masks.iter().skip(i + 1).take(cap) {
            // intersections of modules are modules or empty
            assert!(is_module(s, &member(a & b)));
            // union of two meeting modules is a module
            if a & b != 0 {
                assert!(is_module(s, &member(a | b)));
            }
            // difference: if b \ a is non-empty then a \ b is a module
            if b & !a != 0 {
                assert!(is_module(s, &member(a & !b)));
            }
            if a & !b != 0 {
                assert!(is_module(s, &member(b & !a)));
            }
        }
    }
}

#[test]
fn module_closure_lemmas_on_random_structures() {
    let mut r = rng(23);
    for _ in 0..120 {
        let n = r.gen_range(2..=8);
        let alphabet = r.gen_range(2..=3);
        let s = random_structure(&mut r, n, alphabet);
        closure_lemmas(&s);
    }
}

fn assert_family_matches_oracle(s: &BinaryStructure) {
    let family = StrongFamily::decompose(s).unwrap();
    let mut production = family.vertex_sets();
    production.sort();
    let mut oracle: Vec<Vec<usize>> = strong_modules_by_enumeration(s)
        .unwrap()
        .into_iter()
        .filter(|m| !m.is_empty())
        .collect();
    oracle.sort();
    assert_eq!(production, oracle, "family mismatch on {s:?}");
}

#[test]
fn strong_family_matches_oracle_exhaustively_small() {
    // all graphs on up to 5 vertices
    for n in 1..=5usize {
        let pairs = pair_count(n);
        for bits in 0..(1u64 << pairs) {
            assert_family_matches_oracle(&graph_from_bits(n, bits).to_structure());
        }
    }
    // all directed two-symbol structures on up to 4 vertices
    for n in 1..=4usize {
        let cells = n * n - n;
        for bits in 0..(1u64 << cells) {
            let mut s = BinaryStructure::constant(
                n,
                cograph_core::structure::LabelAlphabet::binary(),
                0,
            )
            .unwrap();
            let mut k = 0;
            for x in 0..n {
                for y in 0..n {
                    if x != y {
                        if bits & (1 << k) != 0 {
                            s.set_label(x, y, 1);
                        }
                        k += 1;
                    }
                }
            }
            assert_family_matches_oracle(&s);
        }
    }
}

#[test]
fn strong_family_matches_oracle_randomly_to_n8() {
    let mut r = rng(31);
    for _ in 0..250 {
        let n = r.gen_range(2..=8);
        let alphabet = r.gen_range(2..=3);
        assert_family_matches_oracle(&random_structure(&mut r, n, alphabet));
    }
}

#[test]
fn family_is_laminar_and_contains_singletons_and_top() {
    let mut r = rng(37);
    for _ in 0..120 {
        let n = r.gen_range(1..=8);
        let s = random_structure(&mut r, n, 3);
        let family = StrongFamily::decompose(&s).unwrap();
        let sets = family.vertex_sets();
        assert!(sets.contains(&(0..n).collect::<Vec<_>>()));
        for v in 0..n {
            assert!(sets.contains(&vec![v]));
        }
        for a in &sets {
            for b in &sets {
                let inter = a.iter().filter(|x| b.contains(x)).count();
                let comparable = inter == a.len() || inter == b.len();
                assert!(inter == 0 || comparable, "overlap between {a:?} and {b:?}");
            }
        }
    }
}

#[test]
fn components_are_maximal_proper_strong_modules() {
    let mut r = rng(41);
    for _ in 0..80 {
        let n = r.gen_range(2..=7);
        let s = random_structure(&mut r, n, 2);
        let all: Vec<usize> = (0..n).collect();
        let classes = components_of(&s, &all).unwrap();
        assert!(classes.len() >= 2);
        let strong: Vec<Vec<usize>> = strong_modules_by_enumeration(&s)
            .unwrap()
            .into_iter()
            .filter(|m| !m.is_empty() && m.len() < n)
            .collect();
        let maximal: Vec<&Vec<usize>> = strong
            .iter()
            .filter(|m| {
                !strong
                    .iter()
                    .any(|o| o.len() > m.len() && m.iter().all(|v| o.contains(v)))
            })
            .collect();
        for class in &classes {
            assert!(maximal.contains(&class), "class {class:?} not maximal in {s:?}");
        }
        assert_eq!(classes.len(), maximal.len());
    }
}

#[test]
fn quotients_have_only_trivial_strong_modules() {
    let mut r = rng(43);
    for _ in 0..80 {
        let n = r.gen_range(2..=7);
        let s = random_structure(&mut r, n, 3);
        let all: Vec<usize> = (0..n).collect();
        let (q, t) = gallai_quotient(&s, &all).unwrap();
        let strong = strong_modules_by_enumeration(&q).unwrap();
        for m in &strong {
            assert!(m.len() <= 1 || m.len() == q.n(), "non-trivial strong module in quotient");
        }
        if let GallaiType::Prime = t {
            assert!(q.n() >= 3);
            // prime means only trivial modules outright
            for m in enumerate_modules(&q).unwrap() {
                assert!(m.len() <= 1 || m.len() == q.n());
            }
        }
    }
}

#[test]
fn disjoint_module_with_matching_type_cannot_join() {
    // for disjoint modules X, Y with Y robust non-trivial and the cross
    // values equal to the type of Y, the union is not a module
    let mut r = rng(47);
    let mut hits = 0;
    for _ in 0..700 {
        let n = r.gen_range(3..=7);
        let s = random_structure(&mut r, n, 2);
        let modules = enumerate_modules(&s).unwrap();
        for x in &modules {
            if x.is_empty() {
                continue;
            }
            for y in &modules {
                if y.len() < 2 || y.len() == n || x.iter().any(|v| y.contains(v)) {
                    continue;
                }
                if !is_strong_module(&s, y).unwrap() {
                    continue;
                }
                let (_, ty) = gallai_quotient(&s, y).unwrap();
                let Some(tset) = ty.symbols() else { continue };
                let d_xy = s.label(x[0], y[0]);
                let d_yx = s.label(y[0], x[0]);
                let mut cross: Vec<u8> = vec![d_xy, d_yx];
                cross.sort_unstable();
                cross.dedup();
                let mut tsorted = tset.clone();
                tsorted.sort_unstable();
                tsorted.dedup();
                if cross == tsorted {
                    hits += 1;
                    let mut union: Vec<usize> = x.iter().chain(y.iter()).copied().collect();
                    union.sort_unstable();
                    assert!(!is_module(&s, &union), "union of {x:?} and {y:?} in {s:?}");
                }
            }
        }
    }
    assert!(hits > 50, "sampling produced too few applicable pairs: {hits}");
}

#[test]
fn nested_robust_modules_of_equal_type_have_a_separator() {
    // nesting of equal types is common in cographs (grandparent and
    // grandchild share a bit) and rare in uniform structures; sample both
    let mut r = rng(53);
    let mut hits = 0;
    for round in 0..300 {
        let s = if round % 2 == 0 {
            random_cograph(&mut r, 16).to_structure()
        } else {
            let n = r.gen_range(3..=8);
            random_structure(&mut r, n, 2)
        };
        let family = StrongFamily::decompose(&s).unwrap();
        for (ai, a) in family.nodes.iter().enumerate() {
            if a.vertices.len() < 2 {
                continue;
            }
            let Some(ta) = a.gallai.and_then(|t| t.symbols()) else { continue };
            // walk strictly below a
            let mut stack: Vec<usize> = a.children.clone();
            while let Some(bi) = stack.pop() {
                let b = &family.nodes[bi];
                stack.extend(b.children.iter().copied());
                if b.vertices.len() < 2 {
                    continue;
                }
                let Some(tb) = b.gallai.and_then(|t| t.symbols()) else { continue };
                if ta != tb {
                    continue;
                }
                hits += 1;
                // some robust module strictly between must differ in type
                let mut cur = b.parent;
                let mut found = false;
                while let Some(ci) = cur {
                    if ci == ai {
                        break;
                    }
                    let c = &family.nodes[ci];
                    if c.gallai.and_then(|t| t.symbols()) != Some(ta.clone()) {
                        found = true;
                        break;
                    }
                    cur = c.parent;
                }
                assert!(found, "no separator between {:?} and {:?} in {s:?}", a.vertices, b.vertices);
            }
        }
    }
    assert!(hits > 30, "sampling produced too few nested pairs: {hits}");
}

#[test]
fn every_strong_non_singleton_is_robust() {
    let mut r = rng(59);
    for _ in 0..100 {
        let n = r.gen_range(2..=7);
        let s = random_structure(&mut r, n, 3);
        let family = StrongFamily::decompose(&s).unwrap();
        for node in &family.nodes {
            if node.vertices.len() < 2 {
                continue;
            }
            // witness pair from two different child components
            let c0 = &family.nodes[node.children[0]];
            let c1 = &family.nodes[node.children[1]];
            let pair = [c0.vertices[0], c1.vertices[0]];
            assert_eq!(least_strong_module(&s, &pair).unwrap(), node.vertices);
        }
    }
}

// -------- cotree round trips --------

#[test]
fn decomposition_round_trip_on_random_cographs() {
    let mut r = rng(61);
    for _ in 0..150 {
        let g = random_cograph(&mut r, 30);
        let t = decomposition_tree(&g).unwrap();
        assert_eq!(graph_of(&t).unwrap(), g);
    }
}

#[test]
fn tree_round_trip_on_random_trees() {
    let mut r = rng(67);
    for _ in 0..150 {
        let t = random_valid_tree(&mut r, 25);
        let g = graph_of(&t).unwrap();
        let back = decomposition_tree(&g).unwrap();
        assert_eq!(back.canonical_code(), t.canonical_code());
    }
}

#[test]
fn decomposition_rejects_exactly_non_cographs() {
    let mut r = rng(71);
    for _ in 0..300 {
        let n = r.gen_range(1..=8);
        let g = random_graph(&mut r, n, 0.5);
        match decomposition_tree(&g) {
            Ok(_) => assert!(g.is_cograph()),
            Err(Error::NotCograph(a, b, c, d)) => {
                assert!(!g.is_cograph());
                // the witness is an induced path in order
                assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d));
                assert!(!g.has_edge(a, c) && !g.has_edge(a, d) && !g.has_edge(b, d));
            }
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
}

#[test]
fn ball_and_value_match_modular_operations() {
    let mut r = rng(73);
    for _ in 0..60 {
        let g = random_cograph(&mut r, 14);
        let s = g.to_structure();
        let t = decomposition_tree(&g).unwrap();
        let leaves = t.leaves();
        for &lx in &leaves {
            for &ly in &leaves {
                let x = t.leaf_vertex(lx).unwrap();
                let y = t.leaf_vertex(ly).unwrap();
                let ball = t.ball(lx, ly);
                assert_eq!(ball, least_strong_module(&s, &[x, y]).unwrap());
                if x != y {
                    let bit = t.value_of_least_robust(lx, ly).unwrap();
                    let (_, ty) = gallai_quotient(&s, &ball).unwrap();
                    assert_eq!(ty, GallaiType::Constant { alpha: bit });
                }
            }
        }
    }
}

// -------- chains --------

#[test]
fn q_embedding_is_reflexive_and_transitive() {
    let mut r = rng(79);
    let orders = sample_orders();
    let mut undecided = 0usize;
    for _ in 0..250 {
        let q = &orders[r.gen_range(0..orders.len())];
        let a = random_chain(&mut r, q.len(), true);
        let b = random_chain(&mut r, q.len(), true);
        let c = random_chain(&mut r, q.len(), true);
        for x in [&a, &b, &c] {
            assert_eq!(q_embedding(x, x, q), Ok(true), "reflexivity on {x:?}");
        }
        let ab = q_embedding(&a, &b, q);
        let bc = q_embedding(&b, &c, q);
        if ab == Ok(true) && bc == Ok(true) {
            match q_embedding(&a, &c, q) {
                Ok(true) => {}
                Ok(false) => panic!("transitivity violated: {a:?} {b:?} {c:?}"),
                Err(Error::Undecided) => undecided += 1,
                Err(e) => panic!("{e:?}"),
            }
        }
    }
    assert!(undecided <= 3, "too many undecided compositions: {undecided}");
}

#[test]
fn acceptance_implies_truncation_embedding() {
    let mut r = rng(83);
    let orders = sample_orders();
    for _ in 0..200 {
        let q = &orders[r.gen_range(0..orders.len())];
        let a = random_chain(&mut r, q.len(), true);
        let b = random_chain(&mut r, q.len(), true);
        if q_embedding(&a, &b, q) == Ok(true) {
            for n in 1..=8 {
                assert!(truncation_embedding(&a, &b, q, n), "{a:?} into {b:?} at {n}");
            }
        }
        if q_embedding(&a, &b, q) == Ok(false) && a.is_finite() {
            // for finite patterns the refutation is exact
            let n = a.letter_size();
            assert!(!truncation_embedding(&a, &b, q, n) || n == 0);
        }
    }
}

#[test]
fn finite_chains_never_absorb_their_double() {
    let mut r = rng(89);
    let orders = sample_orders();
    for _ in 0..200 {
        let q = &orders[r.gen_range(0..orders.len())];
        let c = random_chain(&mut r, q.len(), false);
        if c.segments().is_empty() {
            continue;
        }
        let doubled = c.ordinal_product(2).unwrap();
        assert_eq!(q_embedding(&doubled, &c, q), Ok(false));
    }
}

#[test]
fn omega_star_powers_are_left_indecomposable() {
    let mut r = rng(97);
    let orders = sample_orders();
    for _ in 0..100 {
        let q = &orders[r.gen_range(0..orders.len())];
        let len = r.gen_range(1..=4);
        let word: Vec<usize> = (0..len).map(|_| r.gen_range(0..q.len())).collect();
        let c = RegularChain::omega_star(word).unwrap();
        assert_eq!(cograph_core::chain::is_left_indecomposable(&c, q), Ok(true));
    }
}

#[test]
fn decompositions_reconcatenate_and_parts_verify() {
    let mut r = rng(101);
    let orders = sample_orders();
    for _ in 0..150 {
        let q = &orders[r.gen_range(0..orders.len())];
        let c = random_chain(&mut r, q.len(), true);
        let parts = match cograph_core::chain::indecomposable_decomposition(&c, q) {
            Ok(p) => p,
            Err(Error::Undecided) => continue,
            Err(e) => panic!("{e:?}"),
        };
        let rebuilt = parts.iter().fold(RegularChain::empty(), |acc, p| acc.sum(p));
        assert_eq!(rebuilt, c);
        for p in &parts {
            assert_eq!(cograph_core::chain::is_indecomposable(p, q), Ok(true));
        }
    }
}

#[test]
fn chains_over_cograph_labels() {
    // labels: a sample of small cographs quasi-ordered by embeddability,
    // crossed with a two-element antichain
    let sample = vec![
        Graph::complete(1),
        Graph::complete(2),
        Graph::empty(2),
        Graph::complete(3),
        Graph::direct_sum(&[Graph::complete(2), Graph::complete(1)]).unwrap(),
    ];
    let k = sample.len();
    let mut names = Vec::new();
    let mut pairs = Vec::new();
    for bit in 0..2usize {
        for (i, _) in sample.iter().enumerate() {
            names.push(format!("g{i}b{bit}"));
        }
    }
    for bit in 0..2usize {
        for (i, gi) in sample.iter().enumerate() {
            for (j, gj) in sample.iter().enumerate() {
                if embeds(gi, gj).unwrap() {
                    pairs.push((bit * k + i, bit * k + j));
                }
            }
        }
    }
    let q = cograph_core::chain::QuasiOrder::new(names, &pairs).unwrap();
    // the single vertex sits below everything with the same bit
    for bit in 0..2 {
        for i in 0..k {
            assert!(q.leq(bit * k, bit * k + i));
            assert!(!q.leq(bit * k + i, (1 - bit) * k + i));
        }
    }
    let mut r = rng(149);
    for _ in 0..120 {
        let c = random_chain(&mut r, q.len(), true);
        assert_eq!(q_embedding(&c, &c, &q), Ok(true));
        if !c.has_least_element() {
            let head = cograph_core::chain::left_indec_initial_segment(&c, &q).unwrap();
            assert_eq!(cograph_core::chain::is_left_indecomposable(&head, &q), Ok(true));
            for n in 2..=4 {
                let product = head.ordinal_product(n).unwrap();
                assert_eq!(q_embedding(&product, &head, &q), Ok(true));
            }
        }
    }
}

#[test]
fn laminar_family_serializes_with_the_declared_fields() {
    let g = Graph::direct_sum(&[Graph::complete(2), Graph::complete(2)]).unwrap();
    let fam = StrongFamily::decompose(&g.to_structure()).unwrap();
    let json = serde_json::to_value(fam.to_json()).unwrap();
    let nodes = json.as_array().unwrap();
    assert_eq!(nodes.len(), 7);
    assert_eq!(nodes[0]["vertexSubset"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(nodes[0]["parent"], serde_json::Value::Null);
    assert_eq!(nodes[0]["gallaiType"]["tag"], "constant");
    let leaf = nodes.iter().find(|n| n["vertexSubset"].as_array().unwrap().len() == 1).unwrap();
    assert_eq!(leaf["gallaiType"], serde_json::Value::Null);
}

// -------- monomorphic decompositions and the classifier --------

#[test]
fn twin_partition_is_canonical_by_the_definition_oracle() {
    let mut r = rng(103);
    for _ in 0..60 {
        let n = r.gen_range(1..=6);
        let g = random_graph(&mut r, n, 0.5);
        let p = canonical_monomorphic_decomposition(&g);
        let blocks = p.block_sets();
        assert!(definition_monomorphic_check(&g, &blocks).unwrap(), "not monomorphic: {g:?}");
        // blocks are clique-or-independent modules
        for b in &p.blocks {
            assert!(is_module(&g.to_structure(), &b.vertices));
            let sub = g.induced(&b.vertices);
            let clique = sub == Graph::complete(sub.n());
            let indep = sub == Graph::empty(sub.n());
            assert!(clique || indep);
            assert_eq!(b.clique, clique && sub.n() > 1);
        }
        // no merge of two blocks stays monomorphic
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                let mut merged: Vec<Vec<usize>> = Vec::new();
                let mut joined = blocks[i].clone();
                joined.extend(blocks[j].iter().copied());
                joined.sort_unstable();
                merged.push(joined);
                for (k, b) in blocks.iter().enumerate() {
                    if k != i && k != j {
                        merged.push(b.clone());
                    }
                }
                assert!(
                    !definition_monomorphic_check(&g, &merged).unwrap(),
                    "merging blocks {i} and {j} of {g:?} stayed monomorphic"
                );
            }
        }
    }
}

#[test]
fn lex_reconstruction_rebuilds_the_graph() {
    let mut r = rng(107);
    for _ in 0..100 {
        let n = r.gen_range(1..=8);
        let g = random_graph(&mut r, n, 0.5);
        let p = canonical_monomorphic_decomposition(&g);
        let (index, parts) = lex_reconstruction(&g, &p).unwrap();
        let rebuilt = Graph::lex_sum(&index, &parts).unwrap();
        assert!(isomorphic(&rebuilt, &g).unwrap());
    }
}

#[test]
fn self_embedding_forces_isomorphism_on_finite_graphs() {
    let mut r = rng(109);
    for _ in 0..40 {
        let n = r.gen_range(1..=6);
        let g = random_graph(&mut r, n, 0.5);
        for mask in 0u32..(1 << n) {
            let a: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let sub = g.induced(&a);
            if embeds(&g, &sub).unwrap() {
                assert_eq!(a.len(), n);
                assert!(isomorphic(&g, &sub).unwrap());
            }
            assert!(matches!(
                check_mono_embedding_constraint(&g, &a).unwrap(),
                MonoConstraint::Ok
            ));
        }
    }
}

#[test]
fn classifier_agrees_with_dual() {
    let mut r = rng(113);
    for _ in 0..300 {
        let t = random_term(&mut r, 3, true);
        let verdict = classify_siblings(&t).unwrap();
        let dual_verdict = classify_siblings(&t.dual()).unwrap();
        assert_eq!(
            matches!(verdict, cograph_core::sibling::SiblingVerdict::One),
            matches!(dual_verdict, cograph_core::sibling::SiblingVerdict::One)
        );
    }
}

#[test]
fn truncation_class_counts_stabilize_for_one_verdicts() {
    let mut r = rng(127);
    let mut checked = 0;
    for _ in 0..400 {
        let t = random_term(&mut r, 3, true);
        if !matches!(classify_siblings(&t).unwrap(), cograph_core::sibling::SiblingVerdict::One) {
            continue;
        }
        let expected = match class_count(&t) {
            Mult::Finite(k) => k as usize,
            Mult::Omega => unreachable!(),
        };
        let cap0 = 2u32.max(max_finite_mult(&t));
        for cap in [cap0, cap0 + 1] {
            let g = t.denote(cap).unwrap();
            if g.n() > 40 {
                continue;
            }
            let p = canonical_monomorphic_decomposition(&g);
            assert_eq!(p.blocks.len(), expected, "term {t:?} at cap {cap}");
            checked += 1;
        }
    }
    assert!(checked > 100, "too few one-verdict samples: {checked}");
}

fn max_finite_mult(t: &CographTerm) -> u32 {
    match t.children() {
        None => 1,
        Some(cs) => cs
            .iter()
            .map(|(c, m)| {
                let inner = max_finite_mult(c);
                match m {
                    Mult::Finite(k) => inner.max(*k),
                    Mult::Omega => inner,
                }
            })
            .max()
            .unwrap_or(1),
    }
}

// -------- family generator --------

#[test]
fn build_decode_round_trip_on_random_prefixes() {
    let mut r = rng(131);
    for _ in 0..30 {
        let prefix = random_prefix(&mut r, 6);
        for len in 0..=6usize {
            let bits: Vec<u8> = (0..len).map(|_| r.gen_range(0..2) as u8).collect();
            let f = FBits(bits);
            let built = build_cf(&prefix, &f).unwrap();
            assert!(built.validate().is_ok());
            assert_eq!(decode_f(&built).unwrap(), f);
        }
    }
}

#[test]
fn built_prefixes_satisfy_the_insertion_contract() {
    let mut r = rng(137);
    for _ in 0..30 {
        let prefix = random_prefix(&mut r, 4);
        let bits: Vec<u8> = (0..4).map(|_| r.gen_range(0..2) as u8).collect();
        let built = build_cf(&prefix, &FBits(bits.clone())).unwrap();
        // locate inserted pairs: even independent at bit 0 covered by an
        // even clique of the same size at bit 1
        let entries = built.entries();
        let mut found = 0;
        for i in 1..entries.len() {
            if entries[i].bit == 0 && entries[i - 1].bit == 1 {
                if let (CographTerm::DSum(d), CographTerm::CSum(c)) =
                    (&entries[i].part, &entries[i - 1].part)
                {
                    if let ([(CographTerm::Leaf, Mult::Finite(ds))], [(CographTerm::Leaf, Mult::Finite(cs))]) =
                        (d.as_slice(), c.as_slice())
                    {
                        if ds == cs && ds % 2 == 0 {
                            assert_eq!(*ds, 2 * bits[found] as u32 + 2);
                            found += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(found, bits.len());
    }
}

#[test]
fn distinct_equal_length_bit_words_build_distinct_prefixes() {
    let mut r = rng(139);
    let prefix = random_prefix(&mut r, 4);
    let words: Vec<Vec<u8>> = (0..16u8).map(|w| (0..4).map(|i| (w >> i) & 1).collect()).collect();
    for (i, wa) in words.iter().enumerate() {
        for wb in words.iter().skip(i + 1) {
            let a = build_cf(&prefix, &FBits(wa.clone())).unwrap();
            let b = build_cf(&prefix, &FBits(wb.clone())).unwrap();
            assert_ne!(decode_f(&a).unwrap(), decode_f(&b).unwrap());
            assert_ne!(a, b);
        }
    }
}
