//! Orbits for forms that are alternating only on blocks B₁, …, B_r of the
//! generators, chained so that Ω(bᵢ, bⱼ) can be 1 across blocks only when
//! j = i + 1; and a checkable form of the shortest-path lemma.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::f2::{mask, BitIter, F2Vector};
use crate::graph::GeneratingSet;
use crate::orbits::orbit_bits;

/// A validated ordered partition of the generators into blocks.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    b: GeneratingSet,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockDecomposition {
    pub fn generating_set(&self) -> &GeneratingSet {
        &self.b
    }

    /// Generator indices of each block, in declared order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, generator: usize) -> usize {
        self.block_of[generator]
    }

    /// Coordinate mask of span(B_j) for every j > `block`.
    fn later_mask(&self, block: usize) -> u64 {
        self.blocks[block + 1..].iter().flatten().fold(0, |m, &i| m | self.b.vectors()[i].bits())
    }
}

/// Checks that `blocks` partitions the generators, that Ω is alternating and
/// Gr is connected on each block, and that Ω(bᵢ, bⱼ) = 1 for bᵢ ∈ Bᵢ,
/// bⱼ ∈ Bⱼ, i ≠ j, only when j = i + 1. Every cross pair is checked.
pub fn validate_blocks(b: &GeneratingSet, blocks: Vec<Vec<usize>>) -> Result<BlockDecomposition> {
    let n = b.len();
    let mut block_of = vec![usize::MAX; n];
    for (j, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidBlocks(format!("block {} is empty", j + 1)));
        }
        for &i in block {
            if i >= n {
                return Err(Error::IndexOutOfRange(i));
            }
            if block_of[i] != usize::MAX {
                return Err(Error::InvalidBlocks(format!("generator {} appears twice", b.labels()[i])));
            }
            block_of[i] = j;
        }
    }
    if let Some(i) = block_of.iter().position(|&j| j == usize::MAX) {
        return Err(Error::InvalidBlocks(format!("generator {} is in no block", b.labels()[i])));
    }
    let vectors = b.vectors();
    for (j, block) in blocks.iter().enumerate() {
        let vs: Vec<F2Vector> = block.iter().map(|&i| vectors[i]).collect();
        if !b.form().is_alternating_on(&vs) {
            return Err(Error::InvalidBlocks(format!("form is not alternating on block {}", j + 1)));
        }
        if !b.subset(block)?.graph().is_connected() {
            return Err(Error::InvalidBlocks(format!("block {} is not connected", j + 1)));
        }
    }
    for p in 0..n {
        for q in 0..n {
            let (i, j) = (block_of[p], block_of[q]);
            if i != j && j != i + 1 && b.form().pair_bits(vectors[p].bits(), vectors[q].bits()) {
                return Err(Error::BlockConditionViolated {
                    i: i + 1,
                    j: j + 1,
                    bi: b.labels()[p].clone(),
                    bj: b.labels()[q].clone(),
                });
            }
        }
    }
    Ok(BlockDecomposition { b: b.clone(), blocks, block_of })
}

/// Least block index (0-based) containing a generator b with Ω(x, b) = 1.
pub fn first_active_block(d: &BlockDecomposition, x: &F2Vector) -> Result<usize> {
    d.b.form().check(x)?;
    (0..d.b.len()).filter(|&i| d.b.pairs_with(x.bits(), i)).map(|i| d.block_of[i]).min().ok_or(Error::AllFixed)
}

/// The orbit of x assembled from its first active block L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedOrbit {
    pub block: usize,
    /// x with its coordinates on the blocks after L cleared.
    pub base: F2Vector,
    /// Least Γ_{B_L}-fixed vector of base + span(B_L), when one exists; the
    /// block orbit is then this vector plus an orbit inside span(B_L).
    pub anchor: Option<F2Vector>,
    /// Γ_{B_L}(base), ascending.
    pub block_orbit: Vec<F2Vector>,
    /// Γ_{B_L}(base) + span(B_j : j > L), ascending.
    pub members: Vec<F2Vector>,
}

/// Γ_{B_L}(x') + span(B_j : j > L) where x' drops the coordinates of x on
/// the later blocks. Generators must be distinct label unit vectors and
/// Gr(B) must be connected.
pub fn predicted_orbit(d: &BlockDecomposition, x: &F2Vector) -> Result<PredictedOrbit> {
    if d.b.vectors().iter().any(|v| v.weight() != 1) {
        return Err(Error::InvalidBlocks("generators must be unit vectors of the label basis".into()));
    }
    if !d.b.graph().is_connected() {
        return Err(Error::NotConnected);
    }
    let block = first_active_block(d, x)?;
    let later = d.later_mask(block);
    let base = x.bits() & !later;
    let bl = d.b.subset(&d.blocks[block])?;
    let block_mask = bl.vectors().iter().fold(0, |m, v| m | v.bits());
    let anchor = BitIter(block_mask)
        .fold(vec![base & !block_mask], |acc, i| acc.iter().flat_map(|&y| [y, y | (1 << i)]).collect())
        .into_iter()
        .filter(|&y| bl.fixes_bits(y))
        .min();
    let mut block_orbit: Vec<u64> = orbit_bits(&bl, base).into_iter().collect();
    block_orbit.sort_unstable();
    let mut members = BTreeSet::new();
    let later_bits: Vec<u32> = BitIter(later).map(|i| i as u32).collect();
    for &y in &block_orbit {
        for s in 0..1u64 << later_bits.len() {
            let w = BitIter(s).fold(0u64, |m, k| m | (1 << later_bits[k]));
            members.insert(y | w);
        }
    }
    let dim = d.b.dim();
    Ok(PredictedOrbit {
        block,
        base: F2Vector::raw(dim, base),
        anchor: anchor.map(|a| F2Vector::raw(dim, a)),
        block_orbit: block_orbit.into_iter().map(|y| F2Vector::raw(dim, y)).collect(),
        members: members.into_iter().map(|y| F2Vector::raw(dim, y & mask(dim))).collect(),
    })
}

/// Outcome of evaluating the shortest-path lemma for (x, b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLemmaReport {
    /// T(x) = {b ∈ B : τ_b(x) ≠ x}, as generator indices.
    pub moved_by: Vec<usize>,
    /// Shortest path from T(x) to the target, as generator indices.
    pub path: Vec<usize>,
    /// Ω on the span of the path is not alternating (or the path is a single
    /// vertex) and Ω(pᵢ, pᵢ₊₁) = 1 along it.
    pub hypotheses_hold: bool,
    /// Whether x + b lies in the orbit of x; evaluated only when the
    /// hypotheses hold.
    pub in_orbit: Option<bool>,
}

/// Evaluates the lemma's hypotheses for x and generator `target`, and checks
/// its conclusion against the orbit of x when they hold.
pub fn path_lemma_check(b: &GeneratingSet, x: &F2Vector, target: usize) -> Result<PathLemmaReport> {
    b.form().check(x)?;
    if target >= b.len() {
        return Err(Error::IndexOutOfRange(target));
    }
    let moved_by: Vec<usize> = (0..b.len()).filter(|&i| b.pairs_with(x.bits(), i)).collect();
    if moved_by.is_empty() {
        return Err(Error::AllFixed);
    }
    let Some(path) = shortest_path(b, &moved_by, target) else {
        return Ok(PathLemmaReport { moved_by, path: Vec::new(), hypotheses_hold: false, in_orbit: None });
    };
    let vectors = b.vectors();
    let omega = |p: usize, q: usize| b.form().pair_bits(vectors[p].bits(), vectors[q].bits());
    let chained = path.windows(2).all(|w| omega(w[0], w[1]));
    let path_vectors: Vec<F2Vector> = path.iter().map(|&i| vectors[i]).collect();
    let not_alternating = path.len() == 1 || !b.form().is_alternating_on(&path_vectors);
    let hypotheses_hold = chained && not_alternating;
    let in_orbit = hypotheses_hold.then(|| orbit_bits(b, x.bits()).contains(&(x.bits() ^ vectors[target].bits())));
    Ok(PathLemmaReport { moved_by, path, hypotheses_hold, in_orbit })
}

/// Multi-source BFS in Gr(B); ties broken toward smaller indices.
fn shortest_path(b: &GeneratingSet, sources: &[usize], target: usize) -> Option<Vec<usize>> {
    let g = b.graph();
    let mut prev = vec![usize::MAX; b.len()];
    let mut seen = 0u64;
    let mut queue = VecDeque::new();
    for &s in sources {
        seen |= 1 << s;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if u == target {
            let mut path = vec![u];
            let mut cur = u;
            while prev[cur] != usize::MAX {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in BitIter(g.neighbors(u) & !seen) {
            seen |= 1 << w;
            prev[w] = u;
            queue.push_back(w);
        }
    }
    None
}
