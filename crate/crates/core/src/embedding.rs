//! Induced subgraph embedding by backtracking search with degree pruning
//! and an explicit node budget. Exceeding the budget is a distinct error,
//! never a wrong answer.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// True iff an injective map from `pattern` into `target` exists preserving
/// both edges and non-edges.
pub fn embeds(pattern: &Graph, target: &Graph) -> Result<bool> {
    embeds_with_budget(pattern, target, DEFAULT_NODE_BUDGET)
}

pub fn embeds_with_budget(pattern: &Graph, target: &Graph, budget: u64) -> Result<bool> {
    let np = pattern.n();
    let nt = target.n();
    if np == 0 {
        return Ok(true);
    }
    if np > nt {
        return Ok(false);
    }

    // Candidate domains: an induced embedding needs deg(u) <= deg(f(u)) and
    // co-deg(u) <= co-deg(f(u)).
    let pdeg: Vec<usize> = (0..np).map(|u| pattern.degree(u)).collect();
    let tdeg: Vec<usize> = (0..nt).map(|v| target.degree(v)).collect();
    let mut domains: Vec<Vec<usize>> = Vec::with_capacity(np);
    for u in 0..np {
        let dom: Vec<usize> = (0..nt)
            .filter(|&v| pdeg[u] <= tdeg[v] && np - 1 - pdeg[u] <= nt - 1 - tdeg[v])
            .collect();
        if dom.is_empty() {
            return Ok(false);
        }
        domains.push(dom);
    }

    // Assign pattern vertices in order of smallest domain first, preferring
    // vertices attached to already-placed ones.
    let mut order: Vec<usize> = Vec::with_capacity(np);
    let mut placed = vec![false; np];
    for _ in 0..np {
        let next = (0..np)
            .filter(|&u| !placed[u])
            .min_by_key(|&u| {
                let attached = (0..np).any(|w| placed[w] && pattern.has_edge(u, w));
                (!attached as usize, domains[u].len(), u)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut assignment = vec![usize::MAX; np];
    let mut used = vec![false; nt];
    let mut nodes: u64 = 0;
    let found = search(
        pattern,
        target,
        &order,
        &domains,
        0,
        &mut assignment,
        &mut used,
        &mut nodes,
        budget,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    pattern: &Graph,
    target: &Graph,
    order: &[usize],
    domains: &[Vec<usize>],
    depth: usize,
    assignment: &mut [usize],
    used: &mut [bool],
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if depth == order.len() {
        return Ok(true);
    }
    let u = order[depth];
    for &v in &domains[u] {
        if used[v] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let consistent = order[..depth].iter().all(|&w| {
            pattern.has_edge(u, w) == target.has_edge(v, assignment[w])
        });
        if !consistent {
            continue;
        }
        assignment[u] = v;
        used[v] = true;
        if search(pattern, target, order, domains, depth + 1, assignment, used, nodes, budget)? {
            return Ok(true);
        }
        assignment[u] = usize::MAX;
        used[v] = false;
    }
    Ok(false)
}

/// Graph isomorphism as a two-sided size check plus embedding.
pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(a.n() == b.n() && a.edge_count() == b.edge_count() && embeds(a, b)?)
}
