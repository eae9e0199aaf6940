//! Generation of pairwise distinguishable siblings from a reduced labelled
//! chain prefix: insert a covered pair of positions above each anchor whose
//! part sizes encode one bit, after padding every even clique or
//! independent part by one vertex so the inserted parts are recognizable.
//! Also the almost-disjoint seed family whose characteristic words stay
//! distinct under shifts.

use crate::error::{Error, Result};
use crate::graph::{Graph, LabelledChainSpec};
use crate::term::{CographTerm, Mult, TermJson};
use serde::{Deserialize, Serialize};

/// One position of a chain prefix. Position 0 is the rightmost; increasing
/// index moves left, modelling a coinitial prefix of a chain with no least
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixEntry {
    pub part: CographTerm,
    pub bit: u8,
    pub anchor: bool,
}

/// Finite presentation of the head of a reduced labelled chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedChainPrefix {
    entries: Vec<PrefixEntry>,
}

/// A finite 0/1 word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FBits(pub Vec<u8>);

impl FBits {
    pub fn parse(s: &str) -> Result<FBits> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::invalid(format!("bad bit character {ch:?}"))),
            }
        }
        Ok(FBits(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for FBits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl ReducedChainPrefix {
    /// Entries are given rightmost first. Anchors must carry bit 1, and no
    /// three consecutive positions may share one bit (the finite shadow of
    /// dense labelling).
    pub fn new(entries: Vec<PrefixEntry>) -> Result<Self> {
        let p = ReducedChainPrefix { entries };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            if e.bit > 1 {
                return Err(Error::invalid(format!("position {i}: bit must be 0 or 1")));
            }
            if e.anchor && e.bit != 1 {
                return Err(Error::invalid(format!("position {i}: anchors carry bit 1")));
            }
        }
        for w in self.entries.windows(3) {
            if w[0].bit == w[1].bit && w[1].bit == w[2].bit {
                return Err(Error::invalid("three consecutive positions share one bit"));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[PrefixEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Anchor positions, rightmost first.
    pub fn anchors(&self) -> Vec<usize> {
        (0..self.entries.len()).filter(|&i| self.entries[i].anchor).collect()
    }

    /// A base prefix of `k` repeated blocks, each a single-vertex bit-0
    /// position followed (leftward) by a single-vertex anchor.
    pub fn repeated_anchor_base(k: usize) -> ReducedChainPrefix {
        let mut entries = Vec::with_capacity(2 * k);
        for _ in 0..k {
            entries.push(PrefixEntry { part: CographTerm::Leaf, bit: 0, anchor: false });
            entries.push(PrefixEntry { part: CographTerm::Leaf, bit: 1, anchor: true });
        }
        ReducedChainPrefix::new(entries).expect("alternating bits are valid")
    }

    /// Extend leftward by `extra` copies of the leftmost anchor block (the
    /// slice from just left of the second-to-last anchor through the left
    /// end; the whole prefix when it has fewer than two anchors).
    pub fn extended_by_anchor_blocks(&self, extra: usize) -> ReducedChainPrefix {
        let anchors = self.anchors();
        let block: Vec<PrefixEntry> = match anchors.len() {
            0 | 1 => self.entries.clone(),
            _ => {
                let second_last = anchors[anchors.len() - 2];
                self.entries[second_last + 1..].to_vec()
            }
        };
        let mut entries = self.entries.clone();
        for _ in 0..extra {
            entries.extend(block.iter().cloned());
        }
        ReducedChainPrefix { entries }
    }

    pub fn to_json(&self) -> PrefixJson {
        PrefixJson {
            positions: self
                .entries
                .iter()
                .map(|e| PrefixEntryJson { part: e.part.to_json(), bit: e.bit, anchor: e.anchor })
                .collect(),
        }
    }

    pub fn from_json(j: &PrefixJson) -> Result<ReducedChainPrefix> {
        let entries = j
            .positions
            .iter()
            .map(|e| {
                Ok(PrefixEntry { part: CographTerm::from_json(&e.part)?, bit: e.bit, anchor: e.anchor })
            })
            .collect::<Result<Vec<_>>>()?;
        ReducedChainPrefix::new(entries)
    }
}

/// JSON form: positions rightmost first (leftmost last).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrefixJson {
    pub positions: Vec<PrefixEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrefixEntryJson {
    pub part: TermJson,
    pub bit: u8,
    pub anchor: bool,
}

/// First `n` elements of the base set with strictly increasing gaps:
/// x_0 = 0, x_{k+1} = x_k + (k + 1), the triangular numbers.
pub fn base_set(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut x = 0u64;
    for k in 0..n {
        out.push(x);
        x += k as u64 + 1;
    }
    out
}

fn triangular(i: u64) -> u64 {
    i * (i + 1) / 2
}

/// Level-order index of a finite binary word in the infinite binary tree:
/// the empty word is 0, appending 0 maps c to 2c+1 and appending 1 to 2c+2.
pub fn word_code(word: &[u8]) -> u64 {
    word.iter().fold(0u64, |c, &b| 2 * c + 1 + b as u64)
}

/// A member of the almost-disjoint family: the base-set elements indexed by
/// the codes of the seed's non-empty prefixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ADFamilyMember {
    pub seed: Vec<u8>,
    pub support: Vec<u64>,
}

pub fn ad_member(seed: &[u8], length: usize) -> ADFamilyMember {
    let take = length.min(seed.len());
    let support = (1..=take)
        .map(|k| triangular(word_code(&seed[..k])))
        .collect();
    ADFamilyMember { seed: seed.to_vec(), support }
}

/// True iff the characteristic words of `a.support` and `b.support + shift`
/// differ somewhere in `[0, window)`.
pub fn distinguishes(a: &ADFamilyMember, b: &ADFamilyMember, shift: u64, window: u64) -> bool {
    let in_window = |s: &[u64], off: u64| -> Vec<u64> {
        s.iter().map(|&x| x + off).filter(|&x| x < window).collect()
    };
    in_window(&a.support, 0) != in_window(&b.support, shift)
}

fn even_block(term: &CographTerm) -> Option<(bool, u32)> {
    // a clique or independent set of even size 2k, k >= 1
    match term {
        CographTerm::CSum(cs) => match cs.as_slice() {
            [(CographTerm::Leaf, Mult::Finite(k))] if k % 2 == 0 => Some((true, *k)),
            _ => None,
        },
        CographTerm::DSum(cs) => match cs.as_slice() {
            [(CographTerm::Leaf, Mult::Finite(k))] if k % 2 == 0 => Some((false, *k)),
            _ => None,
        },
        _ => None,
    }
}

/// Build the prefix of `C_f`: pad every even clique or independent part by
/// one vertex, then insert above each of the first `|f|` anchors a bit-0
/// independent set covering it and a bit-1 clique covering that, both of
/// size `2 f(n) + 2`.
pub fn build_cf(prefix: &ReducedChainPrefix, f: &FBits) -> Result<ReducedChainPrefix> {
    let anchors = prefix.anchors();
    if f.len() > anchors.len() {
        return Err(Error::invalid(format!(
            "{} anchors cannot host {} bits",
            anchors.len(),
            f.len()
        )));
    }
    let mut entries: Vec<PrefixEntry> = prefix
        .entries
        .iter()
        .map(|e| {
            let part = match even_block(&e.part.normalize()?) {
                Some((true, k)) => CographTerm::clique(Mult::Finite(k + 1)),
                Some((false, k)) => CographTerm::independent(Mult::Finite(k + 1)),
                None => e.part.clone(),
            };
            Ok(PrefixEntry { part, ..e.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    // insert leftmost first so remaining anchor indices stay valid
    for n in (0..f.len()).rev() {
        let idx = anchors[n];
        let size = 2 * f.0[n] as u32 + 2;
        let b = PrefixEntry { part: CographTerm::independent(Mult::Finite(size)), bit: 0, anchor: false };
        let c = PrefixEntry { part: CographTerm::clique(Mult::Finite(size)), bit: 1, anchor: false };
        // entries[idx] is the anchor; inserting at idx places the new
        // positions to its right, nearest first
        entries.insert(idx, b);
        entries.insert(idx, c);
    }
    let built = ReducedChainPrefix { entries };
    built.validate()?;
    Ok(built)
}

/// Recover `f` from a built prefix: the inserted bit-0 positions are the
/// only even independent sets left, each covered by a matching even clique
/// on its right and an anchor on its left.
pub fn decode_f(prefix: &ReducedChainPrefix) -> Result<FBits> {
    let entries = prefix.entries();
    let mut bits = Vec::new();
    let mut matched_cliques = vec![false; entries.len()];
    for i in 0..entries.len() {
        let e = &entries[i];
        let block = even_block(&e.part.normalize()?);
        match block {
            Some((false, size)) if e.bit == 0 => {
                // candidate b_n: the position to its right must be the
                // matching clique, the one to its left the anchor
                if i == 0 || i + 1 == entries.len() {
                    return Err(Error::invalid("insertion pattern cut off at the prefix edge"));
                }
                let right = &entries[i - 1];
                match even_block(&right.part.normalize()?) {
                    Some((true, rsize)) if right.bit == 1 && rsize == size => {}
                    _ => return Err(Error::invalid("even independent set without its covering clique")),
                }
                matched_cliques[i - 1] = true;
                if entries[i + 1].bit != 1 {
                    return Err(Error::invalid("even independent set not covering an anchor"));
                }
                if size < 2 || size > 4 {
                    return Err(Error::invalid("inserted part size outside 2..4"));
                }
                bits.push(((size - 2) / 2) as u8);
            }
            _ => {}
        }
    }
    for i in 0..entries.len() {
        if matched_cliques[i] {
            continue;
        }
        if let Some((true, _)) = even_block(&entries[i].part.normalize()?) {
            return Err(Error::invalid("even clique without a matching independent set"));
        }
    }
    Ok(FBits(bits))
}

/// Labelled sum of the denoted parts over the prefix order, leftmost first.
pub fn materialize(prefix: &ReducedChainPrefix, cap: u32) -> Result<Graph> {
    if prefix.is_empty() {
        return Ok(Graph::empty(0));
    }
    let mut parts = Vec::with_capacity(prefix.len());
    for e in prefix.entries().iter().rev() {
        parts.push((e.part.denote(cap)?, e.bit));
    }
    Ok(Graph::labelled_sum(&LabelledChainSpec::new(parts)?))
}

/// Finite shadow of the sibling property: the built prefix materializes
/// into an induced subgraph of the base prefix extended by further anchor
/// blocks and one more cap.
pub fn prefix_sibling_check(
    base: &ReducedChainPrefix,
    built: &ReducedChainPrefix,
    cap: u32,
    extension: usize,
) -> Result<bool> {
    let pattern = materialize(built, cap)?;
    let target = materialize(&base.extended_by_anchor_blocks(extension), cap + 1)?;
    crate::embedding::embeds(&pattern, &target)
}
