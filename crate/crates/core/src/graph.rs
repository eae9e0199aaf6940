//! Finite simple graphs with the sum constructors used by the cograph
//! decomposition: direct sum, complete sum, labelled sum over a chain and
//! lexicographic sum.

use crate::error::{Error, Result};
use crate::structure::{BinaryStructure, LabelAlphabet};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Undirected loopless graph on vertices `0..n`, stored as a flat adjacency
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

/// One position of a labelled chain: a non-empty part and the bit deciding
/// edges towards everything to the right of it.
#[derive(Debug, Clone)]
pub struct LabelledChainSpec {
    pub entries: Vec<(Graph, u8)>,
}

impl LabelledChainSpec {
    pub fn new(entries: Vec<(Graph, u8)>) -> Result<Self> {
        for (g, bit) in &entries {
            if g.n() == 0 {
                return Err(Error::invalid("labelled sum part must be non-empty"));
            }
            if *bit > 1 {
                return Err(Error::invalid("chain bit must be 0 or 1"));
            }
        }
        Ok(LabelledChainSpec { entries })
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.adj[u * n + v] = true;
                }
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n > 2 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has_edge(u, v)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Edge iff non-edge in the input; involutive.
    pub fn complement(&self) -> Graph {
        let n = self.n;
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.adj[u * n + v] = !self.adj[u * n + v];
                }
            }
        }
        g
    }

    /// Induced subgraph on `vertices` (increasing order), renumbered 0..k.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut g = Graph::empty(k);
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(vertices[i], vertices[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Disjoint union with no cross edges. A single part is returned as is;
    /// an empty part list is rejected.
    pub fn direct_sum(parts: &[Graph]) -> Result<Graph> {
        Self::sum_with(parts, false)
    }

    /// Disjoint union plus all cross edges.
    pub fn complete_sum(parts: &[Graph]) -> Result<Graph> {
        Self::sum_with(parts, true)
    }

    fn sum_with(parts: &[Graph], cross: bool) -> Result<Graph> {
        if parts.is_empty() {
            return Err(Error::invalid("sum of an empty part list"));
        }
        if parts.iter().any(|p| p.n() == 0) {
            return Err(Error::invalid("sum part must be non-empty"));
        }
        let n: usize = parts.iter().map(|p| p.n()).sum();
        let mut g = Graph::empty(n);
        let mut offset = 0;
        let mut starts = Vec::with_capacity(parts.len());
        for p in parts {
            starts.push(offset);
            for u in 0..p.n() {
                for v in u + 1..p.n() {
                    if p.has_edge(u, v) {
                        g.add_edge(offset + u, offset + v);
                    }
                }
            }
            offset += p.n();
        }
        if cross {
            for (i, p) in parts.iter().enumerate() {
                for (j, q) in parts.iter().enumerate().skip(i + 1) {
                    for u in 0..p.n() {
                        for v in 0..q.n() {
                            g.add_edge(starts[i] + u, starts[j] + v);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Sum over a labelled chain: parts are laid out left to right; for
    /// `x` in part `i` and `y` in part `j` with `i < j` there is an edge
    /// exactly when the bit of position `i` is 1.
    pub fn labelled_sum(spec: &LabelledChainSpec) -> Graph {
        let n: usize = spec.entries.iter().map(|(g, _)| g.n()).sum();
        let mut g = Graph::empty(n);
        let mut starts = Vec::with_capacity(spec.entries.len());
        let mut offset = 0;
        for (p, _) in &spec.entries {
            starts.push(offset);
            for u in 0..p.n() {
                for v in u + 1..p.n() {
                    if p.has_edge(u, v) {
                        g.add_edge(offset + u, offset + v);
                    }
                }
            }
            offset += p.n();
        }
        for (i, (p, bit)) in spec.entries.iter().enumerate() {
            if *bit == 1 {
                for (j, (q, _)) in spec.entries.iter().enumerate().skip(i + 1) {
                    for u in 0..p.n() {
                        for v in 0..q.n() {
                            g.add_edge(starts[i] + u, starts[j] + v);
                        }
                    }
                }
            }
        }
        g
    }

    /// Lexicographic sum: substitute `parts[i]` for vertex `i` of `index`;
    /// cross edges between parts `i` and `j` iff `{i, j}` is an edge of the
    /// index graph.
    pub fn lex_sum(index: &Graph, parts: &[Graph]) -> Result<Graph> {
        if parts.len() != index.n() {
            return Err(Error::invalid("lexicographic sum needs one part per index vertex"));
        }
        if parts.iter().any(|p| p.n() == 0) {
            return Err(Error::invalid("lexicographic sum part must be non-empty"));
        }
        let n: usize = parts.iter().map(|p| p.n()).sum();
        let mut g = Graph::empty(n);
        let mut starts = Vec::with_capacity(parts.len());
        let mut offset = 0;
        for p in parts {
            starts.push(offset);
            for u in 0..p.n() {
                for v in u + 1..p.n() {
                    if p.has_edge(u, v) {
                        g.add_edge(offset + u, offset + v);
                    }
                }
            }
            offset += p.n();
        }
        for i in 0..index.n() {
            for j in i + 1..index.n() {
                if index.has_edge(i, j) {
                    for u in 0..parts[i].n() {
                        for v in 0..parts[j].n() {
                            g.add_edge(starts[i] + u, starts[j] + v);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Some 4-subset inducing a path on four vertices, in path order, or
    /// `None` if the graph is a cograph.
    pub fn find_p4(&self) -> Option<[usize; 4]> {
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if let Some(path) = self.p4_order(&[a, b, c, d]) {
                            return Some(path);
                        }
                    }
                }
            }
        }
        None
    }

    /// If the 4-subset induces a P4, return its vertices in path order.
    fn p4_order(&self, vs: &[usize; 4]) -> Option<[usize; 4]> {
        let mut deg = [0usize; 4];
        let mut edges = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.has_edge(vs[i], vs[j]) {
                    deg[i] += 1;
                    deg[j] += 1;
                    edges += 1;
                }
            }
        }
        // P4: three edges, degree sequence 1,1,2,2.
        if edges != 3 || deg.iter().filter(|&&d| d == 1).count() != 2 {
            return None;
        }
        let start = (0..4).find(|&i| deg[i] == 1).unwrap();
        let mut order = [vs[start], 0, 0, 0];
        let mut prev = vs[start];
        let mut cur = vs[start];
        for slot in 1..4 {
            let next = vs
                .iter()
                .copied()
                .find(|&w| w != cur && w != prev && self.has_edge(cur, w))?;
            order[slot] = next;
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// No induced path on four vertices.
    pub fn is_cograph(&self) -> bool {
        self.find_p4().is_none()
    }

    /// Partition into connected components, ordered by least vertex, each
    /// component sorted.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for v in 0..self.n {
                    if !seen[v] && self.has_edge(u, v) {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// View as a binary structure over the two-symbol alphabet.
    pub fn to_structure(&self) -> BinaryStructure {
        let labels = self.adj.iter().map(|&e| e as u8).collect();
        BinaryStructure::from_labels(self.n, LabelAlphabet::binary(), labels)
            .expect("adjacency matrix is a valid binary structure")
    }

    /// Edge-list text format: first line `n m`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::invalid("empty edge list"))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::invalid("bad edge list header"))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::invalid("bad edge list header"))?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::invalid("bad edge line"))?;
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::invalid("bad edge line"))?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::invalid("edge count does not match header"));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n, edges: self.edges().iter().map(|&(u, v)| [u, v]).collect() }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(j.n, &edges)
    }
}

/// JSON form: `{"n": int, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}
