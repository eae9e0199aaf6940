//! Modules, strong and robust modules, components and Gallai quotients of
//! binary structures.
//!
//! The production engine computes the laminar family of strong modules by
//! recursive decomposition: split the vertex set into the maximal proper
//! strong submodules (the components), recurse into each. Component
//! detection first tries the constant and linear quotient patterns, which
//! partition the vertex set as connected components of a disagreement
//! relation; only genuinely prime quotients fall back to least-module
//! closures. An exhaustive subset-scan oracle validates all of this on
//! small instances (see the `oracle` module).

use crate::error::{Error, Result};
use crate::structure::BinaryStructure;
use serde::{Deserialize, Serialize};

/// Largest vertex count the decomposition engine accepts. Internally vertex
/// sets are 64-bit masks.
pub const MAX_VERTICES: usize = 64;

type Mask = u64;

fn mask_of(vertices: &[usize]) -> Mask {
    vertices.iter().fold(0, |m, &v| m | (1 << v))
}

fn mask_to_vec(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v);
        m &= m - 1;
    }
    out
}

fn full_mask(n: usize) -> Mask {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

fn check_size(s: &BinaryStructure) -> Result<()> {
    if s.n() > MAX_VERTICES {
        return Err(Error::TooLarge { n: s.n(), max: MAX_VERTICES });
    }
    Ok(())
}

/// Quotient type of a robust module: constant, linear over two distinct
/// symbols, or prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum GallaiType {
    Constant { alpha: u8 },
    Linear { alpha: u8, beta: u8 },
    Prime,
}

impl GallaiType {
    /// The symbol set `t(A)` of a non-prime type.
    pub fn symbols(&self) -> Option<Vec<u8>> {
        match *self {
            GallaiType::Constant { alpha } => Some(vec![alpha]),
            GallaiType::Linear { alpha, beta } => Some(vec![alpha, beta]),
            GallaiType::Prime => None,
        }
    }
}

/// `a` is a module: no outside vertex distinguishes two of its members.
pub fn is_module(s: &BinaryStructure, a: &[usize]) -> bool {
    let n = s.n();
    if a.len() <= 1 {
        return true;
    }
    let inside: Vec<usize> = a.to_vec();
    let m = mask_of(a);
    for x in 0..n {
        if m & (1 << x) != 0 {
            continue;
        }
        let y0 = inside[0];
        let sig = (s.label(x, y0), s.label(y0, x));
        for &y in &inside[1..] {
            if (s.label(x, y), s.label(y, x)) != sig {
                return false;
            }
        }
    }
    true
}

/// Least module containing `seed`, by closure: while some outside vertex
/// distinguishes two members, pull it in.
fn module_closure(s: &BinaryStructure, seed: Mask) -> Mask {
    let n = s.n();
    let mut m = seed;
    loop {
        let mut grew = false;
        let inside = mask_to_vec(m);
        if inside.len() <= 1 {
            return m;
        }
        for x in 0..n {
            if m & (1 << x) != 0 {
                continue;
            }
            let y0 = inside[0];
            let sig = (s.label(x, y0), s.label(y0, x));
            if inside[1..]
                .iter()
                .any(|&y| (s.label(x, y), s.label(y, x)) != sig)
            {
                m |= 1 << x;
                grew = true;
            }
        }
        if !grew {
            return m;
        }
    }
}

fn least_strong_mask(s: &BinaryStructure, seed: Mask) -> Mask {
    let n = s.n();
    let full = full_mask(n);
    let mut m = module_closure(s, seed);
    'grow: loop {
        if m == full {
            return full;
        }
        for z in 0..n {
            if m & (1 << z) != 0 {
                continue;
            }
            for y in mask_to_vec(m) {
                let c = module_closure(s, (1 << y) | (1 << z));
                if m & !c != 0 {
                    // c properly overlaps m; any strong superset of m
                    // contains c as well.
                    m = module_closure(s, m | c);
                    continue 'grow;
                }
            }
        }
        return m;
    }
}

/// The least strong module containing `a` (the intersection of all strong
/// modules containing it). For a pair this is `S(x, y)`.
pub fn least_strong_module(s: &BinaryStructure, a: &[usize]) -> Result<Vec<usize>> {
    check_size(s)?;
    if a.is_empty() {
        return Err(Error::invalid("least strong module of an empty set"));
    }
    if a.iter().any(|&v| v >= s.n()) {
        return Err(Error::invalid("vertex outside structure"));
    }
    Ok(mask_to_vec(least_strong_mask(s, mask_of(a))))
}

/// `a` is a module that no other module properly overlaps. Refutation is by
/// witness search over pair closures: a module `a` fails to be strong
/// exactly when some least module through one inside and one outside vertex
/// cuts it.
pub fn is_strong_module(s: &BinaryStructure, a: &[usize]) -> Result<bool> {
    check_size(s)?;
    if !is_module(s, a) {
        return Ok(false);
    }
    let m = mask_of(a);
    let n = s.n();
    for &y in a {
        for z in 0..n {
            if m & (1 << z) != 0 {
                continue;
            }
            let c = module_closure(s, (1 << y) | (1 << z));
            if m & !c != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Components of the vertex set and the quotient type, for a structure with
/// at least two vertices. Classes are sorted by least vertex.
///
/// Constant quotients are detected directly: their classes are the
/// connected components of the pair disagreement relation. Everything else
/// falls back to the defining equivalence: two vertices share a class
/// exactly when their least strong module is proper. The type is then read
/// off the quotient.
fn top_components(s: &BinaryStructure) -> (Vec<Mask>, GallaiType) {
    let n = s.n();
    debug_assert!(n >= 2);
    let alpha_count = s.alphabet().size;

    for alpha in 0..alpha_count {
        let parts = relation_components(n, |x, y| {
            (s.label(x, y), s.label(y, x)) != (alpha, alpha)
        });
        if parts.len() >= 2 {
            return (parts, GallaiType::Constant { alpha });
        }
    }

    let full = full_mask(n);
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
        }
        uf[x]
    }
    for x in 0..n {
        for y in x + 1..n {
            if find(&mut uf, x) == find(&mut uf, y) {
                continue;
            }
            // least module first: if it is already everything, so is the
            // least strong module above it
            let m = module_closure(s, (1 << x) | (1 << y));
            if m == full {
                continue;
            }
            let c = least_strong_mask(s, m);
            if c != full {
                let vs = mask_to_vec(c);
                let r = find(&mut uf, vs[0]);
                for &v in &vs[1..] {
                    let rv = find(&mut uf, v);
                    uf[rv] = r;
                }
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Mask> = Default::default();
    for v in 0..n {
        let r = find(&mut uf, v);
        *by_root.entry(r).or_default() |= 1 << v;
    }
    let mut parts: Vec<Mask> = by_root.into_values().collect();
    parts.sort_by_key(|m| m.trailing_zeros());
    debug_assert!(parts.len() >= 2, "finite structures always split");

    let k = parts.len();
    let reps: Vec<usize> = parts.iter().map(|&m| m.trailing_zeros() as usize).collect();
    let mut labels = vec![s.alphabet().diagonal; k * k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                labels[i * k + j] = s.label(reps[i], reps[j]);
            }
        }
    }
    let q = BinaryStructure::from_labels(k, s.alphabet(), labels)
        .expect("quotient labels stay in the alphabet");
    (parts, direct_type(&q))
}

/// Connected components of the symmetric relation `rel`, as masks sorted by
/// least vertex.
fn relation_components(n: usize, rel: impl Fn(usize, usize) -> bool) -> Vec<Mask> {
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut mask: Mask = 1 << start;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if !seen[v] && rel(u, v) {
                    seen[v] = true;
                    mask |= 1 << v;
                    stack.push(v);
                }
            }
        }
        parts.push(mask);
    }
    parts
}

/// One node of the laminar family of strong modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyNode {
    /// Vertices of this strong module, sorted.
    pub vertices: Vec<usize>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Quotient type; `None` on singletons.
    pub gallai: Option<GallaiType>,
}

/// All non-empty strong modules of a finite structure, as a laminar forest
/// rooted at the full vertex set. On finite structures these are exactly
/// the robust modules (singletons plus least strong modules of pairs), so
/// ordered by reverse inclusion this is the node set of the decomposition
/// tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongFamily {
    pub nodes: Vec<FamilyNode>,
    n: usize,
}

impl StrongFamily {
    pub fn decompose(s: &BinaryStructure) -> Result<StrongFamily> {
        check_size(s)?;
        let mut family = StrongFamily { nodes: Vec::new(), n: s.n() };
        if s.n() > 0 {
            let all: Vec<usize> = (0..s.n()).collect();
            family.build(s, all, None);
        }
        Ok(family)
    }

    fn build(&mut self, s: &BinaryStructure, vertices: Vec<usize>, parent: Option<usize>) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(FamilyNode {
            vertices: vertices.clone(),
            parent,
            children: Vec::new(),
            gallai: None,
        });
        if vertices.len() >= 2 {
            let (restricted, map) = s.restrict(&vertices);
            let (parts, gallai) = top_components(&restricted);
            self.nodes[idx].gallai = Some(gallai);
            for part in parts {
                let global: Vec<usize> = mask_to_vec(part).iter().map(|&v| map[v]).collect();
                let child = self.build(s, global, Some(idx));
                self.nodes[idx].children.push(child);
            }
        }
        idx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> Option<usize> {
        if self.nodes.is_empty() {
            None
        } else {
            Some(0)
        }
    }

    /// Index of the smallest family node containing all of `a`.
    pub fn least_node_containing(&self, a: &[usize]) -> Option<usize> {
        let mut cur = self.root()?;
        if a.is_empty() || a.iter().any(|v| !self.nodes[cur].vertices.contains(v)) {
            return None;
        }
        'descend: loop {
            for &c in &self.nodes[cur].children {
                if a.iter().all(|v| self.nodes[c].vertices.contains(v)) {
                    cur = c;
                    continue 'descend;
                }
            }
            return Some(cur);
        }
    }

    pub fn contains_set(&self, a: &[usize]) -> bool {
        let mut sorted = a.to_vec();
        sorted.sort_unstable();
        self.nodes.iter().any(|nd| nd.vertices == sorted)
    }

    /// Vertex sets of all nodes, largest first, ties by least vertex.
    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = self.nodes.iter().map(|nd| nd.vertices.clone()).collect();
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets
    }

    pub fn to_json(&self) -> Vec<FamilyNodeJson> {
        self.nodes
            .iter()
            .map(|nd| FamilyNodeJson {
                vertex_subset: nd.vertices.clone(),
                parent: nd.parent,
                gallai_type: nd.gallai,
            })
            .collect()
    }
}

/// JSON form of one laminar-forest node.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyNodeJson {
    #[serde(rename = "vertexSubset")]
    pub vertex_subset: Vec<usize>,
    pub parent: Option<usize>,
    #[serde(rename = "gallaiType")]
    pub gallai_type: Option<GallaiType>,
}

/// All robust modules: on finite structures, the strong-module family.
pub fn robust_modules(s: &BinaryStructure) -> Result<StrongFamily> {
    StrongFamily::decompose(s)
}

fn require_robust(s: &BinaryStructure, a: &[usize]) -> Result<()> {
    if a.len() < 2 {
        return Err(Error::invalid("components need a module with at least two elements"));
    }
    if !is_strong_module(s, a)? {
        return Err(Error::invalid("not a robust module"));
    }
    Ok(())
}

/// The maximal strong modules properly included in robust `a`: the classes
/// of its component equivalence.
pub fn components_of(s: &BinaryStructure, a: &[usize]) -> Result<Vec<Vec<usize>>> {
    check_size(s)?;
    require_robust(s, a)?;
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    let (restricted, map) = s.restrict(&sorted);
    let (parts, _) = top_components(&restricted);
    Ok(parts
        .into_iter()
        .map(|p| mask_to_vec(p).iter().map(|&v| map[v]).collect())
        .collect())
}

/// Quotient structure on the components of robust `a`, with its type read
/// off the quotient directly (constant scan, then linear scan, else prime).
pub fn gallai_quotient(s: &BinaryStructure, a: &[usize]) -> Result<(BinaryStructure, GallaiType)> {
    let classes = components_of(s, a)?;
    let k = classes.len();
    let mut labels = vec![s.alphabet().diagonal; k * k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                labels[i * k + j] = s.label(classes[i][0], classes[j][0]);
            }
        }
    }
    let q = BinaryStructure::from_labels(k, s.alphabet(), labels)?;
    let t = direct_type(&q);
    Ok((q, t))
}

/// Structural type test on a quotient-like structure: constant if all
/// off-diagonal labels agree, linear if two symbols orient a strict linear
/// order, prime otherwise.
pub fn direct_type(q: &BinaryStructure) -> GallaiType {
    let k = q.n();
    debug_assert!(k >= 2);
    let alpha = q.label(0, 1);
    if (0..k).all(|x| (0..k).all(|y| x == y || q.label(x, y) == alpha)) {
        return GallaiType::Constant { alpha };
    }
    // Two symbols, each pair oriented, alpha transitive.
    let beta = q.label(1, 0);
    if alpha != beta {
        let (lo, hi) = if alpha < beta { (alpha, beta) } else { (beta, alpha) };
        let oriented = |x: usize, y: usize| {
            let d = (q.label(x, y), q.label(y, x));
            d == (lo, hi) || d == (hi, lo)
        };
        let all_oriented = (0..k).all(|x| (x + 1..k).all(|y| oriented(x, y)));
        if all_oriented {
            let before = |x: usize, y: usize| q.label(x, y) == lo;
            let transitive = (0..k).all(|x| {
                (0..k).all(|y| {
                    (0..k).all(|z| {
                        x == y
                            || y == z
                            || x == z
                            || !(before(x, y) && before(y, z))
                            || before(x, z)
                    })
                })
            });
            if transitive {
                return GallaiType::Linear { alpha: lo, beta: hi };
            }
        }
    }
    GallaiType::Prime
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k2_plus_k2() -> BinaryStructure {
        Graph::direct_sum(&[Graph::complete(2), Graph::complete(2)])
            .unwrap()
            .to_structure()
    }

    #[test]
    fn trivial_sets_are_modules() {
        let s = Graph::path(4).to_structure();
        assert!(is_module(&s, &[]));
        for v in 0..4 {
            assert!(is_module(&s, &[v]));
        }
        assert!(is_module(&s, &[0, 1, 2, 3]));
        // the middle pair of a path is cut by an endpoint
        assert!(!is_module(&s, &[1, 2]));
    }

    #[test]
    fn module_check_on_disjoint_edges() {
        let s = k2_plus_k2();
        assert!(is_module(&s, &[0, 1]));
        assert!(is_module(&s, &[2, 3]));
        assert!(!is_module(&s, &[0, 2]));
    }

    #[test]
    fn strong_modules_in_c4() {
        let s = Graph::cycle(4).to_structure();
        assert!(is_strong_module(&s, &[0, 2]).unwrap());
        assert!(is_strong_module(&s, &[1, 3]).unwrap());
        assert!(is_strong_module(&s, &[0, 1, 2, 3]).unwrap());
        assert!(!is_strong_module(&s, &[0, 1]).unwrap());
        let k3 = Graph::complete(3).to_structure();
        // every pair is a module, so pairs overlap each other
        assert!(!is_strong_module(&k3, &[0, 1]).unwrap());
    }

    #[test]
    fn least_strong_examples() {
        let s = k2_plus_k2();
        assert_eq!(least_strong_module(&s, &[0]).unwrap(), vec![0]);
        assert_eq!(least_strong_module(&s, &[0, 1]).unwrap(), vec![0, 1]);
        assert_eq!(least_strong_module(&s, &[0, 2]).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn family_of_two_disjoint_edges() {
        let fam = StrongFamily::decompose(&k2_plus_k2()).unwrap();
        assert_eq!(fam.nodes.len(), 7);
        let sets = fam.vertex_sets();
        assert_eq!(sets[0], vec![0, 1, 2, 3]);
        assert!(fam.contains_set(&[0, 1]));
        assert!(fam.contains_set(&[2, 3]));
        assert!(!fam.contains_set(&[0, 2]));
        assert_eq!(fam.nodes[0].gallai, Some(GallaiType::Constant { alpha: 0 }));
    }

    #[test]
    fn family_of_independent_set_and_prime_path() {
        let fam = StrongFamily::decompose(&Graph::empty(4).to_structure()).unwrap();
        // singletons plus the whole set
        assert_eq!(fam.nodes.len(), 5);
        let fam = StrongFamily::decompose(&Graph::path(4).to_structure()).unwrap();
        assert_eq!(fam.nodes.len(), 5);
        assert_eq!(fam.nodes[0].gallai, Some(GallaiType::Prime));
    }

    #[test]
    fn components_examples() {
        let s = k2_plus_k2();
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(components_of(&s, &all).unwrap(), vec![vec![0, 1], vec![2, 3]]);
        let kn = Graph::complete(4).to_structure();
        assert_eq!(components_of(&kn, &all).unwrap().len(), 4);
        let p4 = Graph::path(4).to_structure();
        assert_eq!(components_of(&p4, &all).unwrap().len(), 4);
        assert!(components_of(&s, &[0, 2]).is_err());
    }

    #[test]
    fn quotient_types() {
        let all: Vec<usize> = (0..4).collect();
        let (q, t) = gallai_quotient(&k2_plus_k2(), &all).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(t, GallaiType::Constant { alpha: 0 });
        let (q, t) = gallai_quotient(&Graph::cycle(4).to_structure(), &all).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(t, GallaiType::Constant { alpha: 1 });
        let (q, t) = gallai_quotient(&Graph::path(4).to_structure(), &all).unwrap();
        assert_eq!(q.n(), 4);
        assert_eq!(t, GallaiType::Prime);
    }

    #[test]
    fn linear_type_on_a_chain() {
        // three-element transitive tournament over symbols {1, 2}
        let ab = crate::structure::LabelAlphabet::new(3, 0).unwrap();
        let mut s = BinaryStructure::constant(3, ab, 1).unwrap();
        // order 0 < 1 < 2 encoded as label 2 forward, 1 backward
        s.set_label(0, 1, 2);
        s.set_label(0, 2, 2);
        s.set_label(1, 2, 2);
        let all = vec![0, 1, 2];
        let (_, t) = gallai_quotient(&s, &all).unwrap();
        assert_eq!(t, GallaiType::Linear { alpha: 1, beta: 2 });
    }

    #[test]
    fn least_node_lookup_matches_direct_computation() {
        let s = k2_plus_k2();
        let fam = StrongFamily::decompose(&s).unwrap();
        let idx = fam.least_node_containing(&[0, 1]).unwrap();
        assert_eq!(fam.nodes[idx].vertices, vec![0, 1]);
        let idx = fam.least_node_containing(&[1, 2]).unwrap();
        assert_eq!(fam.nodes[idx].vertices, vec![0, 1, 2, 3]);
    }
}
