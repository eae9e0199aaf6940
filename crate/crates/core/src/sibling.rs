//! Monomorphic decompositions of finite graphs and the sibling classifier
//! for finitely presented countable cographs: a term denotes a cograph with
//! exactly one sibling iff its canonical decomposition has finitely many
//! classes, and infinite verdicts carry the first matching diagnostic
//! scanning the component structure.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::term::{CographTerm, Mult};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A block of the canonical monomorphic decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomorphicBlock {
    pub vertices: Vec<usize>,
    pub clique: bool,
}

/// Partition of a finite graph into clique-or-independent modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomorphicPartition {
    pub blocks: Vec<MonomorphicBlock>,
}

impl MonomorphicPartition {
    pub fn block_sets(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.vertices.clone()).collect()
    }
}

/// The coarsest monomorphic decomposition of a finite graph: classes of the
/// true-twin and false-twin relations. A vertex cannot have both a true and
/// a false twin, so the two kinds of classes never clash.
pub fn canonical_monomorphic_decomposition(g: &Graph) -> MonomorphicPartition {
    let n = g.n();
    let mut assigned = vec![false; n];
    let mut blocks = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let mut true_twins = vec![v];
        let mut false_twins = vec![v];
        for w in v + 1..n {
            if assigned[w] {
                continue;
            }
            let open_equal = (0..n)
                .filter(|&x| x != v && x != w)
                .all(|x| g.has_edge(v, x) == g.has_edge(w, x));
            if open_equal {
                if g.has_edge(v, w) {
                    true_twins.push(w);
                } else {
                    false_twins.push(w);
                }
            }
        }
        let (vertices, clique) = if true_twins.len() > 1 {
            (true_twins, true)
        } else {
            (false_twins, false)
        };
        for &w in &vertices {
            assigned[w] = true;
        }
        blocks.push(MonomorphicBlock { vertices, clique });
    }
    blocks.sort_by_key(|b| b.vertices[0]);
    MonomorphicPartition { blocks }
}

/// Quotient graph on the canonical blocks plus the block subgraphs; the
/// lexicographic sum of the blocks over the quotient reconstructs `g`.
pub fn lex_reconstruction(g: &Graph, p: &MonomorphicPartition) -> Result<(Graph, Vec<Graph>)> {
    let k = p.blocks.len();
    let mut index = Graph::empty(k);
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(p.blocks[i].vertices[0], p.blocks[j].vertices[0]) {
                index.add_edge(i, j);
            }
        }
    }
    let parts: Vec<Graph> = p.blocks.iter().map(|b| g.induced(&b.vertices)).collect();
    Ok((index, parts))
}

/// Why a term has infinitely many siblings, first match in scan order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfiniteReason {
    EquimorphicToComponent,
    ComponentWithInfinitelyManySiblings,
    IncreasingComponentChain,
    InfiniteCanonicalClasses,
}

impl std::fmt::Display for InfiniteReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            InfiniteReason::EquimorphicToComponent => "EquimorphicToComponent",
            InfiniteReason::ComponentWithInfinitelyManySiblings => {
                "ComponentWithInfinitelyManySiblings"
            }
            InfiniteReason::IncreasingComponentChain => "IncreasingComponentChain",
            InfiniteReason::InfiniteCanonicalClasses => "InfiniteCanonicalClasses",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SiblingVerdict {
    One,
    Infinite(InfiniteReason),
}

impl std::fmt::Display for SiblingVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SiblingVerdict::One => write!(f, "One"),
            SiblingVerdict::Infinite(r) => write!(f, "Infinite: {r}"),
        }
    }
}

/// Number of canonical monomorphic classes of the denoted countable
/// cograph. Leaf children of a sum pool into one class; every non-leaf
/// child occurrence brings its own classes; an omega multiplicity on a
/// non-leaf child makes the count infinite.
pub fn class_count(t: &CographTerm) -> Mult {
    match t {
        CographTerm::Leaf => Mult::Finite(1),
        CographTerm::DSum(cs) | CographTerm::CSum(cs) => {
            let mut total: u64 = 0;
            let mut has_leaf_child = false;
            for (c, m) in cs {
                if c.is_leaf() {
                    has_leaf_child = true;
                    continue;
                }
                match (class_count(c), m) {
                    (Mult::Finite(k), Mult::Finite(mm)) => total += k as u64 * *mm as u64,
                    _ => return Mult::Omega,
                }
            }
            Mult::Finite((total + has_leaf_child as u64) as u32)
        }
    }
}

/// One sibling iff the canonical class count is finite.
pub fn classify_siblings(t: &CographTerm) -> Result<SiblingVerdict> {
    let t = t.normalize()?;
    match class_count(&t) {
        Mult::Finite(_) => Ok(SiblingVerdict::One),
        Mult::Omega => Ok(SiblingVerdict::Infinite(diagnose(&t)?)),
    }
}

/// Diagnostic for an infinite verdict: scan the direct-sum structure of the
/// term (of its dual when the term is a complete sum) for the first
/// matching case: the whole graph embeds back into a component, some
/// component itself has infinitely many siblings, or infinitely many
/// non-trivial components form an increasing chain.
pub fn diagnose(t: &CographTerm) -> Result<InfiniteReason> {
    let t = t.normalize()?;
    if class_count(&t) != Mult::Omega {
        return Err(Error::invalid("diagnose is only defined for infinite verdicts"));
    }
    let s = match &t {
        CographTerm::DSum(_) => t.clone(),
        CographTerm::CSum(_) => t.dual(),
        CographTerm::Leaf => unreachable!("a leaf has one sibling"),
    };
    let children = s.children().expect("sum term").to_vec();
    let mut memo = HashMap::new();
    for (c, _) in &children {
        if term_embeds_memo(&s, c, &mut memo)? {
            return Ok(InfiniteReason::EquimorphicToComponent);
        }
    }
    for (c, _) in &children {
        if !c.is_leaf() && class_count(c) == Mult::Omega {
            return Ok(InfiniteReason::ComponentWithInfinitelyManySiblings);
        }
    }
    for (c, m) in &children {
        if !c.is_leaf() && m.is_omega() {
            return Ok(InfiniteReason::IncreasingComponentChain);
        }
    }
    Ok(InfiniteReason::InfiniteCanonicalClasses)
}

/// Induced embedding between the denoted countable cographs, decided by
/// recursive matching on normalized terms. A disconnected pattern fits
/// into a complete sum only inside one child; a connected pattern fits
/// into a direct sum only inside one component; sums against sums match
/// children with multiplicity accounting where omega supplies absorb any
/// finite demand.
pub fn term_embeds(s: &CographTerm, t: &CographTerm) -> Result<bool> {
    let s = s.normalize()?;
    let t = t.normalize()?;
    let mut memo = HashMap::new();
    term_embeds_memo(&s, &t, &mut memo)
}

type Memo = HashMap<(CographTerm, CographTerm), bool>;

fn term_embeds_memo(s: &CographTerm, t: &CographTerm, memo: &mut Memo) -> Result<bool> {
    if let Some(&r) = memo.get(&(s.clone(), t.clone())) {
        return Ok(r);
    }
    let r = compute_embeds(s, t, memo)?;
    memo.insert((s.clone(), t.clone()), r);
    Ok(r)
}

fn compute_embeds(s: &CographTerm, t: &CographTerm, memo: &mut Memo) -> Result<bool> {
    use CographTerm::*;
    match (s, t) {
        (Leaf, _) => Ok(true),
        (_, Leaf) => Ok(false),
        (DSum(_), CSum(tc)) => {
            // components of s are pairwise non-adjacent, so they all land
            // in a single child of the complete sum
            for (c, _) in tc {
                if term_embeds_memo(s, c, memo)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        (CSum(_), DSum(tc)) => {
            // s is connected, so its image lies in one component
            for (c, _) in tc {
                if term_embeds_memo(s, c, memo)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        (DSum(sc), DSum(tc)) => pack_components(sc, tc, memo),
        (CSum(_), CSum(_)) => {
            let sd = s.dual().normalize()?;
            let td = t.dual().normalize()?;
            match (&sd, &td) {
                (DSum(a), DSum(b)) => pack_components(a, b, memo),
                // dual of a one-child complete sum can degenerate
                _ => term_embeds_memo(&sd, &td, memo),
            }
        }
    }
}

/// Match direct-sum demands into direct-sum supplies. Demands absorbed by
/// an omega-multiplicity supply are dropped first; an omega demand needs
/// either such a supply or a single supply copy that swallows omega copies
/// at once; the finite remainder is packed by backtracking, allowing
/// several demand copies to share one supply copy.
fn pack_components(
    sc: &[(CographTerm, Mult)],
    tc: &[(CographTerm, Mult)],
    memo: &mut Memo,
) -> Result<bool> {
    let mut remaining: Vec<(CographTerm, u32)> = Vec::new();
    for (c, m) in sc {
        let mut absorbed = false;
        for (tchild, tm) in tc {
            if tm.is_omega() && term_embeds_memo(c, tchild, memo)? {
                absorbed = true;
                break;
            }
        }
        if absorbed {
            continue;
        }
        match m {
            Mult::Omega => {
                // the only other way to place omega copies is one supply
                // copy absorbing the whole omega-fold direct sum
                let omega_block = CographTerm::DSum(vec![(c.clone(), Mult::Omega)]);
                let mut ok = false;
                for (tchild, _) in tc {
                    if term_embeds_memo(&omega_block, tchild, memo)? {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return Ok(false);
                }
            }
            Mult::Finite(k) => remaining.push((c.clone(), *k)),
        }
    }
    if remaining.is_empty() {
        return Ok(true);
    }
    // supplies as unit copies; omega supplies were already used above, and
    // remaining demands do not embed into them at all
    let mut units: Vec<&CographTerm> = Vec::new();
    for (tchild, tm) in tc {
        if let Mult::Finite(k) = tm {
            for _ in 0..*k {
                units.push(tchild);
            }
        }
    }
    let total_demand: u64 = remaining.iter().map(|(_, k)| *k as u64).sum();
    if total_demand > 64 {
        return Err(Error::BudgetExceeded(total_demand));
    }
    let mut demands: Vec<CographTerm> = Vec::new();
    for (c, k) in &remaining {
        for _ in 0..*k {
            demands.push(c.clone());
        }
    }
    // sort for determinism and to fail fast on the largest demands
    demands.sort_by(|a, b| b.cmp(a));
    let mut loads: Vec<Vec<CographTerm>> = vec![Vec::new(); units.len()];
    pack_search(&demands, 0, &units, &mut loads, memo)
}

fn pack_search(
    demands: &[CographTerm],
    i: usize,
    units: &[&CographTerm],
    loads: &mut Vec<Vec<CographTerm>>,
    memo: &mut Memo,
) -> Result<bool> {
    if i == demands.len() {
        return Ok(true);
    }
    let mut tried: Vec<&CographTerm> = Vec::new();
    for u in 0..units.len() {
        if tried.iter().any(|&t| t == units[u] ) && loads[u].is_empty() {
            continue;
        }
        loads[u].push(demands[i].clone());
        let mut counts: Vec<(CographTerm, Mult)> = Vec::new();
        for d in &loads[u] {
            match counts.iter_mut().find(|(t, _)| t == d) {
                Some((_, m)) => *m = m.plus(Mult::Finite(1)),
                None => counts.push((d.clone(), Mult::Finite(1))),
            }
        }
        let bundle = if counts.len() == 1 && counts[0].1 == Mult::Finite(1) {
            counts[0].0.clone()
        } else {
            CographTerm::DSum(counts).normalize()?
        };
        if term_embeds_memo(&bundle, units[u], memo)? {
            if pack_search(demands, i + 1, units, loads, memo)? {
                return Ok(true);
            }
        }
        loads[u].pop();
        if loads[u].is_empty() {
            tried.push(units[u]);
        }
    }
    Ok(false)
}

/// Check the frequency constraint induced by a self-embedding: if `g`
/// embeds into its restriction to `a`, every canonical class must be fully
/// inside `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoConstraint {
    Ok,
    Violation { class: Vec<usize> },
}

pub fn check_mono_embedding_constraint(g: &Graph, a: &[usize]) -> Result<MonoConstraint> {
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let sub = g.induced(&sorted);
    if !crate::embedding::embeds(g, &sub)? {
        return Ok(MonoConstraint::Ok);
    }
    let partition = canonical_monomorphic_decomposition(g);
    for block in &partition.blocks {
        let inside = block.vertices.iter().filter(|v| sorted.contains(v)).count();
        if inside != block.vertices.len() {
            return Ok(MonoConstraint::Violation { class: block.vertices.clone() });
        }
    }
    Ok(MonoConstraint::Ok)
}
