//! Brute-force reference implementations used to validate the production
//! algorithms on small instances. Clarity over speed.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modular::is_module;
use crate::structure::BinaryStructure;
use serde::{Deserialize, Serialize};

/// Subset-scan module enumeration bound.
pub const ENUM_MAX_VERTICES: usize = 12;

/// All modules of `s`, including the empty set, singletons and the whole
/// vertex set, by checking the definition on every subset.
pub fn enumerate_modules(s: &BinaryStructure) -> Result<Vec<Vec<usize>>> {
    let n = s.n();
    if n > ENUM_MAX_VERTICES {
        return Err(Error::TooLarge { n, max: ENUM_MAX_VERTICES });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if is_module(s, &subset) {
            out.push(subset);
        }
    }
    Ok(out)
}

fn properly_overlap(a: &[usize], b: &[usize]) -> bool {
    let meet = a.iter().any(|x| b.contains(x));
    let a_minus = a.iter().any(|x| !b.contains(x));
    let b_minus = b.iter().any(|x| !a.contains(x));
    meet && a_minus && b_minus
}

/// The strong members of an enumerated module list.
pub fn strong_modules_by_enumeration(s: &BinaryStructure) -> Result<Vec<Vec<usize>>> {
    let modules = enumerate_modules(s)?;
    Ok(modules
        .iter()
        .filter(|a| !modules.iter().any(|b| properly_overlap(a, b)))
        .cloned()
        .collect())
}

/// Canonical form of a graph on at most 8 vertices: the lexicographically
/// least adjacency bit string over all vertex orders. Memoized per thread;
/// induced subgraphs repeat heavily across enumeration runs.
pub fn canonical_graph_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 8, "canonical code oracle is for tiny graphs");
    let mut raw: u64 = 0;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                raw |= 1 << bit;
            }
            bit += 1;
        }
    }
    CANON_CACHE.with(|cache| {
        if let Some(&code) = cache.borrow().get(&(n, raw)) {
            return code;
        }
        let code = canonical_code_uncached(g);
        cache.borrow_mut().insert((n, raw), code);
        code
    })
}

thread_local! {
    static CANON_CACHE: std::cell::RefCell<std::collections::HashMap<(usize, u64), u64>> =
        std::cell::RefCell::new(Default::default());
}

fn canonical_code_uncached(g: &Graph) -> u64 {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut code: u64 = 0;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if g.has_edge(perm[i], perm[j]) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        best = best.min(code);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.sort_unstable();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Definition-level check that `partition` is a monomorphic decomposition
/// of `g`: every two vertex subsets with equal per-block intersection sizes
/// induce isomorphic subgraphs. Full enumeration, `n <= 7`.
pub fn definition_monomorphic_check(g: &Graph, partition: &[Vec<usize>]) -> Result<bool> {
    let n = g.n();
    if n > 7 {
        return Err(Error::TooLarge { n, max: 7 });
    }
    let block_of = |v: usize| partition.iter().position(|b| b.contains(&v));
    for v in 0..n {
        if block_of(v).is_none() {
            return Err(Error::invalid("partition does not cover the vertex set"));
        }
    }
    // Group subsets by their per-block intersection profile; within a
    // profile all induced subgraphs must agree up to isomorphism.
    let mut by_profile: std::collections::HashMap<Vec<usize>, u64> = Default::default();
    for mask in 0u64..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let mut profile = vec![0usize; partition.len()];
        for &v in &subset {
            profile[block_of(v).unwrap()] += 1;
        }
        let code = canonical_graph_code(&g.induced(&subset));
        match by_profile.entry(profile) {
            std::collections::hash_map::Entry::Occupied(e) => {
                if *e.get() != code {
                    return Ok(false);
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(code);
            }
        }
    }
    Ok(true)
}

/// Finite shadow of chain embedding: the word of the last `n` elements of
/// `c` embeds into the word of the last `m` elements of `d`, where `m`
/// covers the pattern length, all finite material of `d` and one period
/// repetition per pattern letter. Dynamic program over word positions.
pub fn truncation_embedding(
    c: &crate::chain::RegularChain,
    d: &crate::chain::RegularChain,
    q: &crate::chain::QuasiOrder,
    n: usize,
) -> bool {
    let pattern = c.truncation(n);
    let max_period = d
        .segments()
        .iter()
        .filter(|s| s.is_infinite())
        .map(|s| s.word().len())
        .max()
        .unwrap_or(0);
    let finite_total: usize = d
        .segments()
        .iter()
        .filter(|s| !s.is_infinite())
        .map(|s| s.word().len())
        .sum();
    let m = n + finite_total + n * max_period.max(1);
    let target = d.truncation(m);
    // earliest[i] = least target index matching the first i pattern letters
    let mut earliest = 0usize;
    for &a in &pattern {
        let mut j = earliest;
        loop {
            if j == target.len() {
                return false;
            }
            if q.leq(a, target[j]) {
                break;
            }
            j += 1;
        }
        earliest = j + 1;
    }
    true
}

/// One cross-check record, emitted as a JSON line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    pub operation: String,
    pub instance: String,
    pub oracle: String,
    pub production: String,
    pub agree: bool,
}

impl OracleReport {
    pub fn new(
        operation: impl Into<String>,
        instance: impl Into<String>,
        oracle: impl Into<String>,
        production: impl Into<String>,
    ) -> Self {
        let oracle = oracle.into();
        let production = production.into();
        let agree = oracle == production;
        OracleReport { operation: operation.into(), instance: instance.into(), oracle, production, agree }
    }
}
