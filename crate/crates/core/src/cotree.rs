//! The decomposition tree of a cograph: robust modules ordered by reverse
//! inclusion, internal nodes valued by the quotient bit. Both directions of
//! the tree/graph correspondence live here.
//!
//! Orders are read with the root (the full vertex set) as least element and
//! the singleton leaves as the maximal elements; the meet of two nodes is
//! their deepest common ancestor.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modular::{GallaiType, StrongFamily};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Leaf { vertex: usize },
    Internal { value: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub kind: NodeKind,
}

/// Finite ramified meet-tree with a dense `{0,1}` valuation on internal
/// nodes and vertex ids on leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedMeetTree {
    nodes: Vec<TreeNode>,
    root: usize,
    depth: Vec<usize>,
}

/// First violated invariant of a candidate tree, with witness nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Some node is unreachable from the root: pairs below two roots have
    /// no meet.
    NoMeet { node: usize },
    /// An internal node with fewer than two children is not a meet of
    /// maximal elements.
    NotRamified { node: usize },
    /// Parent and child internal nodes carry the same value.
    NotDense { parent: usize, child: usize },
    /// Leaves must carry the vertex ids 0..k exactly once.
    BadLeafIds,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NoMeet { node } => write!(f, "meet violation: node {node} unreachable from the root"),
            Violation::NotRamified { node } => write!(f, "ramification violation at node {node}"),
            Violation::NotDense { parent, child } => {
                write!(f, "dense valuation violation between nodes {parent} and {child}")
            }
            Violation::BadLeafIds => write!(f, "leaf vertex ids are not 0..k exactly once"),
        }
    }
}

impl ValuedMeetTree {
    /// Build from parent links and kinds; computes depths, does not
    /// validate the meet-tree invariants (see [`ValuedMeetTree::validate`]).
    pub fn from_nodes(nodes: Vec<TreeNode>, root: usize) -> Result<Self> {
        if root >= nodes.len() {
            return Err(Error::invalid("root index out of range"));
        }
        let mut t = ValuedMeetTree { depth: vec![0; nodes.len()], nodes, root };
        t.recompute_depths();
        Ok(t)
    }

    fn recompute_depths(&mut self) {
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            for &c in &self.nodes[u].children {
                self.depth[c] = self.depth[u] + 1;
                stack.push(c);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, i: usize) -> &TreeNode {
        &self.nodes[i]
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        matches!(self.nodes[i].kind, NodeKind::Leaf { .. })
    }

    pub fn value(&self, i: usize) -> Option<u8> {
        match self.nodes[i].kind {
            NodeKind::Internal { value } => Some(value),
            NodeKind::Leaf { .. } => None,
        }
    }

    /// Leaf node indices in increasing vertex-id order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut ls: Vec<(usize, usize)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, nd)| match nd.kind {
                NodeKind::Leaf { vertex } => Some((vertex, i)),
                _ => None,
            })
            .collect();
        ls.sort_unstable();
        ls.into_iter().map(|(_, i)| i).collect()
    }

    pub fn leaf_vertex(&self, i: usize) -> Option<usize> {
        match self.nodes[i].kind {
            NodeKind::Leaf { vertex } => Some(vertex),
            _ => None,
        }
    }

    pub fn leaf_of_vertex(&self, vertex: usize) -> Option<usize> {
        self.nodes.iter().position(|nd| nd.kind == NodeKind::Leaf { vertex })
    }

    /// Greatest lower bound of two nodes: their deepest common ancestor.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        let (mut a, mut b) = (x, y);
        while self.depth[a] > self.depth[b] {
            a = self.nodes[a].parent.expect("depth > 0 implies a parent");
        }
        while self.depth[b] > self.depth[a] {
            b = self.nodes[b].parent.expect("depth > 0 implies a parent");
        }
        while a != b {
            a = self.nodes[a].parent.expect("distinct nodes at the root level");
            b = self.nodes[b].parent.expect("distinct nodes at the root level");
        }
        a
    }

    /// Leaves above `meet(x, y)`: the vertex set of the least robust module
    /// containing the two leaves.
    pub fn ball(&self, x: usize, y: usize) -> Vec<usize> {
        let m = self.meet(x, y);
        self.leaf_vertices_under(m)
    }

    pub fn leaf_vertices_under(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(u) = stack.pop() {
            match self.nodes[u].kind {
                NodeKind::Leaf { vertex } => out.push(vertex),
                NodeKind::Internal { .. } => stack.extend(self.nodes[u].children.iter().copied()),
            }
        }
        out.sort_unstable();
        out
    }

    /// Value of the meet of two distinct leaves.
    pub fn value_of_least_robust(&self, x: usize, y: usize) -> Result<u8> {
        if x == y {
            return Err(Error::invalid("leaves must be distinct"));
        }
        self.value(self.meet(x, y))
            .ok_or_else(|| Error::invalid("meet of distinct leaves must be internal"))
    }

    /// Checks the three invariants in order: meet existence (single root,
    /// everything reachable), ramification, dense valuation. Also checks
    /// that leaves carry vertex ids 0..k exactly once.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let mut reachable = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        reachable[self.root] = true;
        while let Some(u) = stack.pop() {
            for &c in &self.nodes[u].children {
                reachable[c] = true;
                stack.push(c);
            }
        }
        if let Some(node) = reachable.iter().position(|r| !r) {
            return Err(Violation::NoMeet { node });
        }
        for (i, nd) in self.nodes.iter().enumerate() {
            if matches!(nd.kind, NodeKind::Internal { .. }) && nd.children.len() < 2 {
                return Err(Violation::NotRamified { node: i });
            }
        }
        for (i, nd) in self.nodes.iter().enumerate() {
            if let NodeKind::Internal { value } = nd.kind {
                for &c in &nd.children {
                    if let NodeKind::Internal { value: cv } = self.nodes[c].kind {
                        if cv == value {
                            return Err(Violation::NotDense { parent: i, child: c });
                        }
                    }
                }
            }
        }
        let mut ids: Vec<usize> = self
            .nodes
            .iter()
            .filter_map(|nd| match nd.kind {
                NodeKind::Leaf { vertex } => Some(vertex),
                _ => None,
            })
            .collect();
        ids.sort_unstable();
        if ids.is_empty() || ids.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Violation::BadLeafIds);
        }
        Ok(())
    }

    /// Canonical byte string: equal exactly for isomorphic valued trees
    /// (children unordered, leaf names erased).
    pub fn canonical_code(&self) -> Vec<u8> {
        fn code(t: &ValuedMeetTree, u: usize) -> Vec<u8> {
            match t.nodes[u].kind {
                NodeKind::Leaf { .. } => b"L".to_vec(),
                NodeKind::Internal { value } => {
                    let mut child_codes: Vec<Vec<u8>> =
                        t.nodes[u].children.iter().map(|&c| code(t, c)).collect();
                    child_codes.sort();
                    let mut out = vec![b'(', b'0' + value];
                    for c in child_codes {
                        out.extend(c);
                    }
                    out.push(b')');
                    out
                }
            }
        }
        code(self, self.root)
    }

    pub fn to_json(&self) -> TreeJson {
        fn conv(t: &ValuedMeetTree, u: usize) -> TreeJson {
            match t.nodes[u].kind {
                NodeKind::Leaf { vertex } => {
                    TreeJson { value: None, children: Vec::new(), leaf: Some(vertex) }
                }
                NodeKind::Internal { value } => TreeJson {
                    value: Some(value),
                    children: t.nodes[u].children.iter().map(|&c| conv(t, c)).collect(),
                    leaf: None,
                },
            }
        }
        conv(self, self.root)
    }

    pub fn from_json(j: &TreeJson) -> Result<ValuedMeetTree> {
        fn build(j: &TreeJson, nodes: &mut Vec<TreeNode>, parent: Option<usize>) -> Result<usize> {
            let idx = nodes.len();
            match (j.leaf, j.value) {
                (Some(vertex), None) => {
                    if !j.children.is_empty() {
                        return Err(Error::invalid("leaf node with children"));
                    }
                    nodes.push(TreeNode { parent, children: Vec::new(), kind: NodeKind::Leaf { vertex } });
                }
                (None, Some(value)) => {
                    if value > 1 {
                        return Err(Error::invalid("node value must be 0 or 1"));
                    }
                    nodes.push(TreeNode {
                        parent,
                        children: Vec::new(),
                        kind: NodeKind::Internal { value },
                    });
                    for c in &j.children {
                        let ci = build(c, nodes, Some(idx))?;
                        nodes[idx].children.push(ci);
                    }
                }
                _ => return Err(Error::invalid("node must carry either a leaf id or a value")),
            }
            Ok(idx)
        }
        let mut nodes = Vec::new();
        build(j, &mut nodes, None)?;
        ValuedMeetTree::from_nodes(nodes, 0)
    }

    /// DOT export with children in a stable order.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph cotree {\n  node [shape=circle];\n");
        for (i, nd) in self.nodes.iter().enumerate() {
            match nd.kind {
                NodeKind::Leaf { vertex } => {
                    let _ = writeln!(s, "  n{i} [shape=box,label=\"{vertex}\"];");
                }
                NodeKind::Internal { value } => {
                    let _ = writeln!(s, "  n{i} [label=\"{value}\"];");
                }
            }
        }
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            let mut cs = self.nodes[u].children.clone();
            cs.sort_by_key(|&c| self.leaf_vertices_under(c));
            for c in cs {
                let _ = writeln!(s, "  n{u} -> n{c};");
                stack.push(c);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// JSON form: `{"value": 0|1|null, "children": [...], "leaf": vertexId?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeJson {
    pub value: Option<u8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf: Option<usize>,
}

/// Decomposition tree of a cograph: nodes are the robust modules ordered by
/// reverse inclusion, each internal node valued by its quotient bit.
/// Non-cographs are rejected with an induced-path witness.
pub fn decomposition_tree(g: &Graph) -> Result<ValuedMeetTree> {
    if g.n() == 0 {
        return Err(Error::invalid("decomposition tree of the empty graph"));
    }
    if let Some([a, b, c, d]) = g.find_p4() {
        return Err(Error::NotCograph(a, b, c, d));
    }
    let family = StrongFamily::decompose(&g.to_structure())?;
    let mut nodes = Vec::with_capacity(family.nodes.len());
    for fam_node in &family.nodes {
        let kind = if fam_node.vertices.len() == 1 {
            NodeKind::Leaf { vertex: fam_node.vertices[0] }
        } else {
            let value = match fam_node.gallai {
                Some(GallaiType::Constant { alpha }) => alpha,
                other => {
                    return Err(Error::invalid(format!(
                        "cograph quotient must be constant, got {other:?}"
                    )))
                }
            };
            NodeKind::Internal { value }
        };
        nodes.push(TreeNode { parent: fam_node.parent, children: fam_node.children.clone(), kind });
    }
    let t = ValuedMeetTree::from_nodes(nodes, 0)?;
    debug_assert_eq!(t.validate(), Ok(()));
    Ok(t)
}

/// The graph on the maximal elements of a valid tree: two leaves are joined
/// exactly when their meet is valued 1.
pub fn graph_of(t: &ValuedMeetTree) -> Result<Graph> {
    if let Err(v) = t.validate() {
        return Err(Error::invalid(format!("invalid tree: {v}")));
    }
    let leaves = t.leaves();
    let n = leaves.len();
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let m = t.meet(leaves[i], leaves[j]);
            if t.value(m) == Some(1) {
                let u = t.leaf_vertex(leaves[i]).unwrap();
                let v = t.leaf_vertex(leaves[j]).unwrap();
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Random valid tree for round-trip testing: random shape with at least two
/// children per internal node, values alternating along root-to-leaf paths
/// so the valuation is dense.
pub fn random_valid_tree(rng: &mut impl Rng, max_leaves: usize) -> ValuedMeetTree {
    let max_leaves = max_leaves.max(1);
    let target = rng.gen_range(1..=max_leaves);
    let mut nodes = Vec::new();
    let mut next_vertex = 0usize;
    let root_value = rng.gen_range(0..2);
    gen_node(rng, &mut nodes, None, target, root_value, &mut next_vertex);
    ValuedMeetTree::from_nodes(nodes, 0).expect("generator emits a rooted tree")
}

fn gen_node(
    rng: &mut impl Rng,
    nodes: &mut Vec<TreeNode>,
    parent: Option<usize>,
    leaf_budget: usize,
    value: u8,
    next_vertex: &mut usize,
) -> usize {
    let idx = nodes.len();
    if leaf_budget <= 1 {
        nodes.push(TreeNode { parent, children: Vec::new(), kind: NodeKind::Leaf { vertex: *next_vertex } });
        *next_vertex += 1;
        return idx;
    }
    nodes.push(TreeNode { parent, children: Vec::new(), kind: NodeKind::Internal { value } });
    let arity = rng.gen_range(2..=leaf_budget.min(4));
    // split the leaf budget over the children, each at least one
    let mut remaining = leaf_budget;
    for slot in 0..arity {
        let left_slots = arity - slot - 1;
        let take = if left_slots == 0 {
            remaining
        } else {
            rng.gen_range(1..=remaining - left_slots)
        };
        remaining -= take;
        let child = gen_node(rng, nodes, Some(idx), take, 1 - value, next_vertex);
        nodes[idx].children.push(child);
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn two_disjoint_edges() -> Graph {
        Graph::direct_sum(&[Graph::complete(2), Graph::complete(2)]).unwrap()
    }

    #[test]
    fn tree_of_single_vertex() {
        let t = decomposition_tree(&Graph::complete(1)).unwrap();
        assert_eq!(t.node_count(), 1);
        assert!(t.is_leaf(t.root()));
    }

    #[test]
    fn tree_of_two_disjoint_edges() {
        let t = decomposition_tree(&two_disjoint_edges()).unwrap();
        assert_eq!(t.node_count(), 7);
        assert_eq!(t.value(t.root()), Some(0));
        let root_children = &t.node(t.root()).children;
        assert_eq!(root_children.len(), 2);
        for &c in root_children {
            assert_eq!(t.value(c), Some(1));
            assert_eq!(t.node(c).children.len(), 2);
        }
    }

    #[test]
    fn tree_of_triangle() {
        let t = decomposition_tree(&Graph::complete(3)).unwrap();
        assert_eq!(t.node_count(), 4);
        assert_eq!(t.value(t.root()), Some(1));
        assert_eq!(t.node(t.root()).children.len(), 3);
    }

    #[test]
    fn non_cograph_rejected_with_witness() {
        match decomposition_tree(&Graph::path(4)) {
            Err(Error::NotCograph(0, 1, 2, 3)) => {}
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn graph_of_star_tree_is_complete() {
        let n = 5;
        let mut nodes = vec![TreeNode {
            parent: None,
            children: (1..=n).collect(),
            kind: NodeKind::Internal { value: 1 },
        }];
        for v in 0..n {
            nodes.push(TreeNode { parent: Some(0), children: Vec::new(), kind: NodeKind::Leaf { vertex: v } });
        }
        let t = ValuedMeetTree::from_nodes(nodes, 0).unwrap();
        assert_eq!(graph_of(&t).unwrap(), Graph::complete(n));
    }

    #[test]
    fn graph_of_single_leaf() {
        let t = ValuedMeetTree::from_nodes(
            vec![TreeNode { parent: None, children: Vec::new(), kind: NodeKind::Leaf { vertex: 0 } }],
            0,
        )
        .unwrap();
        assert_eq!(graph_of(&t).unwrap(), Graph::complete(1));
    }

    #[test]
    fn meets_and_balls_in_the_two_edge_tree() {
        let g = two_disjoint_edges();
        let t = decomposition_tree(&g).unwrap();
        let l0 = t.leaf_of_vertex(0).unwrap();
        let l1 = t.leaf_of_vertex(1).unwrap();
        let l2 = t.leaf_of_vertex(2).unwrap();
        assert_eq!(t.meet(l0, l0), l0);
        assert_eq!(t.meet(t.root(), l0), t.root());
        let same_part = t.meet(l0, l1);
        assert_eq!(t.value(same_part), Some(1));
        assert_eq!(t.meet(l0, l2), t.root());
        assert_eq!(t.ball(l0, l1), vec![0, 1]);
        assert_eq!(t.ball(l0, l2), vec![0, 1, 2, 3]);
        assert_eq!(t.ball(l0, l0), vec![0]);
        assert_eq!(t.value_of_least_robust(l0, l1).unwrap(), 1);
        assert!(t.value_of_least_robust(l0, l0).is_err());
    }

    #[test]
    fn values_of_cliques_and_independents() {
        let t = decomposition_tree(&Graph::complete(3)).unwrap();
        let ls = t.leaves();
        assert_eq!(t.value_of_least_robust(ls[0], ls[1]).unwrap(), 1);
        let t = decomposition_tree(&Graph::empty(3)).unwrap();
        let ls = t.leaves();
        assert_eq!(t.value_of_least_robust(ls[0], ls[2]).unwrap(), 0);
    }

    #[test]
    fn canonical_codes_distinguish_and_identify() {
        let g1 = two_disjoint_edges();
        // relabelled copy: swap the two edges
        let g2 = Graph::from_edges(4, &[(2, 3), (0, 1)]).unwrap();
        let c1 = decomposition_tree(&g1).unwrap().canonical_code();
        let c2 = decomposition_tree(&g2).unwrap().canonical_code();
        assert_eq!(c1, c2);
        let c4 = decomposition_tree(&Graph::cycle(4)).unwrap().canonical_code();
        assert_ne!(c1, c4);
        let k1 = decomposition_tree(&Graph::complete(1)).unwrap().canonical_code();
        let k2 = decomposition_tree(&Graph::complete(2)).unwrap().canonical_code();
        assert_ne!(k1, k2);
    }

    #[test]
    fn validation_reports_violations() {
        // valid triangle tree
        let t = decomposition_tree(&Graph::complete(3)).unwrap();
        assert_eq!(t.validate(), Ok(()));

        // parent and child internal both valued 1
        let nodes = vec![
            TreeNode { parent: None, children: vec![1, 4], kind: NodeKind::Internal { value: 1 } },
            TreeNode { parent: Some(0), children: vec![2, 3], kind: NodeKind::Internal { value: 1 } },
            TreeNode { parent: Some(1), children: vec![], kind: NodeKind::Leaf { vertex: 0 } },
            TreeNode { parent: Some(1), children: vec![], kind: NodeKind::Leaf { vertex: 1 } },
            TreeNode { parent: Some(0), children: vec![], kind: NodeKind::Leaf { vertex: 2 } },
        ];
        let t = ValuedMeetTree::from_nodes(nodes, 0).unwrap();
        assert_eq!(t.validate(), Err(Violation::NotDense { parent: 0, child: 1 }));

        // two-root forest: second root unreachable
        let nodes = vec![
            TreeNode { parent: None, children: vec![], kind: NodeKind::Leaf { vertex: 0 } },
            TreeNode { parent: None, children: vec![], kind: NodeKind::Leaf { vertex: 1 } },
        ];
        let t = ValuedMeetTree::from_nodes(nodes, 0).unwrap();
        assert_eq!(t.validate(), Err(Violation::NoMeet { node: 1 }));

        // internal node with a single child
        let nodes = vec![
            TreeNode { parent: None, children: vec![1], kind: NodeKind::Internal { value: 0 } },
            TreeNode { parent: Some(0), children: vec![], kind: NodeKind::Leaf { vertex: 0 } },
        ];
        let t = ValuedMeetTree::from_nodes(nodes, 0).unwrap();
        assert_eq!(t.validate(), Err(Violation::NotRamified { node: 0 }));
    }

    #[test]
    fn adjacent_internal_nodes_alternate_in_decompositions(){
        let g = Graph::complete_sum(&[
            Graph::direct_sum(&[Graph::complete(2), Graph::complete(1)]).unwrap(),
            Graph::complete(1),
        ])
        .unwrap();
        let t = decomposition_tree(&g).unwrap();
        assert_eq!(t.validate(), Ok(()));
    }

    #[test]
    fn json_round_trip() {
        let t = decomposition_tree(&two_disjoint_edges()).unwrap();
        let j = serde_json::to_string(&t.to_json()).unwrap();
        let back = ValuedMeetTree::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.canonical_code(), t.canonical_code());
        assert_eq!(graph_of(&back).unwrap(), two_disjoint_edges());
    }

    #[test]
    fn random_trees_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let t = random_valid_tree(&mut rng, 30);
            assert_eq!(t.validate(), Ok(()));
        }
    }

    #[test]
    fn dot_output_is_stable() {
        let t = decomposition_tree(&two_disjoint_edges()).unwrap();
        assert_eq!(t.to_dot(), t.to_dot());
        assert!(t.to_dot().contains("digraph"));
    }
}
