//! Finitely presented countable cographs: terms built from single vertices
//! by direct and complete sums with multiplicities in N or omega.

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Positive multiplicity, finite or omega.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mult {
    Finite(u32),
    Omega,
}

impl Mult {
    pub fn is_omega(&self) -> bool {
        matches!(self, Mult::Omega)
    }

    /// Saturating sum; omega absorbs.
    pub fn plus(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a + b),
            _ => Mult::Omega,
        }
    }

    pub fn times(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a * b),
            _ => Mult::Omega,
        }
    }
}

impl std::fmt::Display for Mult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mult::Finite(k) => write!(f, "{k}"),
            Mult::Omega => write!(f, "omega"),
        }
    }
}

/// A cograph term. In normalized form children of a direct sum are never
/// direct sums themselves (dually for complete sums), equal children are
/// merged by adding multiplicities, and every sum has total child
/// multiplicity at least two.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CographTerm {
    Leaf,
    DSum(Vec<(CographTerm, Mult)>),
    CSum(Vec<(CographTerm, Mult)>),
}

use CographTerm::{CSum, DSum, Leaf};

impl CographTerm {
    /// Clique on `m` vertices.
    pub fn clique(m: Mult) -> CographTerm {
        match m {
            Mult::Finite(1) => Leaf,
            _ => CSum(vec![(Leaf, m)]),
        }
    }

    /// Independent set on `m` vertices.
    pub fn independent(m: Mult) -> CographTerm {
        match m {
            Mult::Finite(1) => Leaf,
            _ => DSum(vec![(Leaf, m)]),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Leaf)
    }

    pub fn children(&self) -> Option<&[(CographTerm, Mult)]> {
        match self {
            Leaf => None,
            DSum(cs) | CSum(cs) => Some(cs),
        }
    }

    pub fn contains_omega(&self) -> bool {
        match self {
            Leaf => false,
            DSum(cs) | CSum(cs) => cs.iter().any(|(t, m)| m.is_omega() || t.contains_omega()),
        }
    }

    /// Swap direct and complete sums everywhere; the term of the
    /// complement graph.
    pub fn dual(&self) -> CographTerm {
        match self {
            Leaf => Leaf,
            DSum(cs) => CSum(cs.iter().map(|(t, m)| (t.dual(), *m)).collect()),
            CSum(cs) => DSum(cs.iter().map(|(t, m)| (t.dual(), *m)).collect()),
        }
    }

    /// Flatten nested same-kind sums, merge equal children, collapse
    /// trivial sums. Idempotent.
    pub fn normalize(&self) -> Result<CographTerm> {
        match self {
            Leaf => Ok(Leaf),
            DSum(cs) => normalize_sum(cs, false),
            CSum(cs) => normalize_sum(cs, true),
        }
    }

    /// Finite materialization: omega is truncated to `cap`.
    pub fn denote(&self, cap: u32) -> Result<Graph> {
        if cap == 0 {
            return Err(Error::invalid("cap must be at least 1"));
        }
        let reps = |m: Mult| -> usize {
            match m {
                Mult::Finite(k) => k as usize,
                Mult::Omega => cap as usize,
            }
        };
        match self {
            Leaf => Ok(Graph::complete(1)),
            DSum(cs) | CSum(cs) => {
                let mut parts = Vec::new();
                for (t, m) in cs {
                    let g = t.denote(cap)?;
                    for _ in 0..reps(*m) {
                        parts.push(g.clone());
                    }
                }
                if matches!(self, DSum(_)) {
                    Graph::direct_sum(&parts)
                } else {
                    Graph::complete_sum(&parts)
                }
            }
        }
    }

    /// Number of vertices of the denoted cograph.
    pub fn size(&self) -> Mult {
        match self {
            Leaf => Mult::Finite(1),
            DSum(cs) | CSum(cs) => cs
                .iter()
                .fold(Mult::Finite(0), |acc, (t, m)| acc.plus(t.size().times(*m))),
        }
    }

    pub fn to_json(&self) -> TermJson {
        match self {
            Leaf => TermJson { op: "leaf".into(), children: Vec::new() },
            DSum(cs) => TermJson {
                op: "dsum".into(),
                children: cs.iter().map(|(t, m)| child_json(t, *m)).collect(),
            },
            CSum(cs) => TermJson {
                op: "csum".into(),
                children: cs.iter().map(|(t, m)| child_json(t, *m)).collect(),
            },
        }
    }

    pub fn from_json(j: &TermJson) -> Result<CographTerm> {
        let conv_children = |children: &[TermChildJson]| -> Result<Vec<(CographTerm, Mult)>> {
            if children.is_empty() {
                return Err(Error::invalid("sum with no children"));
            }
            children
                .iter()
                .map(|c| {
                    let m = c.mult.to_mult()?;
                    Ok((CographTerm::from_json(&c.term)?, m))
                })
                .collect()
        };
        match j.op.as_str() {
            "leaf" => {
                if !j.children.is_empty() {
                    return Err(Error::invalid("leaf with children"));
                }
                Ok(Leaf)
            }
            "dsum" => Ok(DSum(conv_children(&j.children)?)),
            "csum" => Ok(CSum(conv_children(&j.children)?)),
            other => Err(Error::invalid(format!("unknown term op {other:?}"))),
        }
    }
}

fn child_json(t: &CographTerm, m: Mult) -> TermChildJson {
    TermChildJson {
        term: t.to_json(),
        mult: match m {
            Mult::Finite(k) => MultJson::Finite(k),
            Mult::Omega => MultJson::Omega("omega".into()),
        },
    }
}

fn normalize_sum(cs: &[(CographTerm, Mult)], complete: bool) -> Result<CographTerm> {
    if cs.is_empty() {
        return Err(Error::invalid("sum with no children"));
    }
    let mut flat: Vec<(CographTerm, Mult)> = Vec::new();
    for (t, m) in cs {
        if matches!(m, Mult::Finite(0)) {
            return Err(Error::invalid("multiplicity must be at least 1"));
        }
        let t = t.normalize()?;
        let same_kind = match (&t, complete) {
            (DSum(_), false) | (CSum(_), true) => true,
            _ => false,
        };
        if same_kind {
            for (inner, im) in t.children().unwrap() {
                flat.push((inner.clone(), im.times(*m)));
            }
        } else {
            flat.push((t, *m));
        }
    }
    flat.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut merged: Vec<(CographTerm, Mult)> = Vec::new();
    for (t, m) in flat {
        match merged.last_mut() {
            Some((prev, pm)) if *prev == t => *pm = pm.plus(m),
            _ => merged.push((t, m)),
        }
    }
    let total = merged.iter().fold(Mult::Finite(0), |acc, (_, m)| acc.plus(*m));
    if total == Mult::Finite(1) {
        return Ok(merged.remove(0).0);
    }
    Ok(if complete { CSum(merged) } else { DSum(merged) })
}

/// JSON form: `{"op": "leaf"|"dsum"|"csum", "children": [{"term":..., "mult": int|"omega"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub op: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TermChildJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermChildJson {
    pub term: TermJson,
    pub mult: MultJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultJson {
    Finite(u32),
    Omega(String),
}

impl MultJson {
    fn to_mult(&self) -> Result<Mult> {
        match self {
            MultJson::Finite(0) => Err(Error::invalid("multiplicity must be at least 1")),
            MultJson::Finite(k) => Ok(Mult::Finite(*k)),
            MultJson::Omega(s) if s == "omega" => Ok(Mult::Omega),
            MultJson::Omega(s) => Err(Error::invalid(format!("bad multiplicity {s:?}"))),
        }
    }
}
