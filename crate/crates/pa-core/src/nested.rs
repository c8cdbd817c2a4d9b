//! Building sets and nested-set combinatorics over the ground set
//! `[n+1] = {1, ..., n+1}`.
//!
//! The label family `B_1` consists of chains of blocks
//! `{ beta_max, ..., beta_min }` where each step above the minimum adds a
//! single element; such a chain is stored as its minimum block plus the
//! ordered list of added elements. Two facet labels share a vertex of the
//! realising polytope iff they are comparable or the union of their chains
//! is again a chain that is not itself a label.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rat::Int;
use crate::vec::IVec;

/// Non-empty subset of the ground set, 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Block(pub BTreeSet<usize>);

impl Block {
    pub fn new(elems: impl IntoIterator<Item = usize>) -> Block {
        Block(elems.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Block) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Block) -> Block {
        Block(self.0.union(&other.0).copied().collect())
    }

    pub fn intersects(&self, other: &Block) -> bool {
        self.0.intersection(&other.0).next().is_some()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    /// 0/1 indicator vector in `Z^{n+1}`.
    pub fn indicator(&self, n: usize) -> IVec {
        let mut v = vec![Int::from(0); n + 1];
        for &i in &self.0 {
            v[i - 1] = Int::from(1);
        }
        v
    }

    pub fn full(n: usize) -> Block {
        Block::new(1..=n + 1)
    }
}

/// A chain element of `B_1`: the minimum block (size `l+1`) together with
/// the ordered elements added one at a time going up the chain
/// (`tail.len() = k - 1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Beta {
    min_block: Block,
    tail: Vec<usize>,
}

impl Beta {
    pub fn new(min_block: Block, tail: Vec<usize>, n: usize) -> Result<Beta> {
        if min_block.is_empty() {
            return Err(Error::InvalidParameter("empty minimum block".into()));
        }
        let mut seen = min_block.0.clone();
        for &t in &tail {
            if !(1..=n + 1).contains(&t) || !seen.insert(t) {
                return Err(Error::InvalidParameter(
                    "tail must be distinct and disjoint from the minimum block".into(),
                ));
            }
        }
        if min_block.0.iter().any(|&i| !(1..=n + 1).contains(&i)) {
            return Err(Error::InvalidParameter("block element out of range".into()));
        }
        if min_block.len() + tail.len() > n {
            return Err(Error::InvalidParameter(
                "maximum block must have at most n elements".into(),
            ));
        }
        Ok(Beta { min_block, tail })
    }

    pub fn singleton(block: Block, n: usize) -> Result<Beta> {
        Beta::new(block, Vec::new(), n)
    }

    /// Number of blocks in the chain.
    pub fn k(&self) -> usize {
        self.tail.len() + 1
    }

    pub fn l(&self) -> usize {
        self.min_block.len() - 1
    }

    pub fn cardinality(&self) -> usize {
        self.k()
    }

    pub fn is_singleton(&self) -> bool {
        self.tail.is_empty()
    }

    pub fn beta_min(&self) -> &Block {
        &self.min_block
    }

    pub fn beta_max(&self) -> Block {
        let mut b = self.min_block.clone();
        b.0.extend(self.tail.iter().copied());
        b
    }

    /// The derived set of blocks, from the minimum upwards.
    pub fn chain(&self) -> Vec<Block> {
        let mut out = vec![self.min_block.clone()];
        let mut cur = self.min_block.clone();
        for &t in &self.tail {
            cur.0.insert(t);
            out.push(cur.clone());
        }
        out
    }

    pub fn chain_set(&self) -> BTreeSet<Block> {
        self.chain().into_iter().collect()
    }

    /// Union of the chain, i.e. the maximum block.
    pub fn union_block(&self) -> Block {
        self.beta_max()
    }

    /// Comparability of labels: inclusion between derived chains.
    pub fn comparable(&self, other: &Beta) -> bool {
        let a = self.chain_set();
        let b = other.chain_set();
        a.is_subset(&b) || b.is_subset(&a)
    }

    /// Integer vector of the linear functional attached to the label: the
    /// coefficient of coordinate `i` counts the chain blocks containing `i`.
    pub fn kappa_vec(&self, n: usize) -> IVec {
        let mut v = vec![Int::from(0); n + 1];
        for block in self.chain() {
            for &i in &block.0 {
                v[i - 1] += 1;
            }
        }
        v
    }

    /// Chain as lists, outermost (maximum) block first.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.chain()
            .into_iter()
            .rev()
            .map(|b| b.0.into_iter().collect())
            .collect()
    }

    /// Parses a chain given outermost-first; validates the shape (each step
    /// removes exactly one element down to the minimum).
    pub fn from_lists(lists: &[Vec<usize>], n: usize) -> Result<Beta> {
        let blocks: Vec<Block> = lists
            .iter()
            .map(|l| Block::new(l.iter().copied()))
            .collect();
        if blocks.is_empty() {
            return Err(Error::Parse("empty chain".into()));
        }
        for w in blocks.windows(2) {
            if !(w[1].is_subset(&w[0]) && w[1].len() + 1 == w[0].len()) {
                return Err(Error::Parse(
                    "chain must shrink by exactly one element per step".into(),
                ));
            }
        }
        if blocks.iter().any(|b| b.len() != b.0.len() || b.is_empty()) {
            return Err(Error::Parse("invalid block".into()));
        }
        if lists.iter().any(|l| {
            let set: BTreeSet<usize> = l.iter().copied().collect();
            set.len() != l.len()
        }) {
            return Err(Error::Parse("repeated element in a block".into()));
        }
        let min_block = blocks.last().unwrap().clone();
        let mut tail = Vec::new();
        for w in blocks.windows(2).rev() {
            let added: Vec<usize> = w[0].0.difference(&w[1].0).copied().collect();
            debug_assert_eq!(added.len(), 1);
            tail.push(added[0]);
        }
        Beta::new(min_block, tail, n)
    }
}

/// Collection of blocks over `[n+1]` closed under unions of intersecting
/// members and containing all singletons.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BuildingSet {
    pub ground: usize, // n+1
    pub blocks: BTreeSet<Block>,
}

impl BuildingSet {
    pub fn new(ground: usize, blocks: impl IntoIterator<Item = Block>) -> BuildingSet {
        BuildingSet {
            ground,
            blocks: blocks.into_iter().collect(),
        }
    }

    pub fn contains(&self, b: &Block) -> bool {
        self.blocks.contains(b)
    }
}

/// A 1-nested set: a set of labels whose antichains all have valid unions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct NestedSet1(pub BTreeSet<Beta>);

/// All singletons present and closed under unions of intersecting pairs.
/// A union equal to the whole ground set is exempt: that is the closure
/// condition of the boundary complex of the simplex, which is the complex
/// every building set here lives in.
pub fn is_building_set(blocks: &BTreeSet<Block>, n: usize) -> bool {
    (1..=n + 1).all(|v| blocks.contains(&Block::new([v])))
        && blocks.iter().all(|b1| {
            blocks.iter().all(|b2| {
                let u = b1.union(b2);
                !b1.intersects(b2) || u.len() == n + 1 || blocks.contains(&u)
            })
        })
}

/// All canonical labels for ground set `[n+1]`, sorted.
pub fn enumerate_b1(n: usize) -> Vec<Beta> {
    let ground: Vec<usize> = (1..=n + 1).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << (n + 1)) {
        let min: Vec<usize> = ground
            .iter()
            .filter(|&&v| mask >> (v - 1) & 1 == 1)
            .copied()
            .collect();
        if min.len() > n {
            continue;
        }
        let rest: Vec<usize> = ground
            .iter()
            .filter(|&&v| mask >> (v - 1) & 1 == 0)
            .copied()
            .collect();
        let max_tail = n - min.len();
        let mut tails: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_tail {
            let mut next = Vec::new();
            for t in &frontier {
                for &r in &rest {
                    if !t.contains(&r) {
                        let mut t2 = t.clone();
                        t2.push(r);
                        next.push(t2);
                    }
                }
            }
            tails.extend(next.iter().cloned());
            frontier = next;
        }
        for tail in tails {
            out.push(Beta::new(Block::new(min.iter().copied()), tail, n).unwrap());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The building set attached to a non-singleton label: its chain, all
/// proper subsets of the minimum, all proper supersets of the maximum, the
/// singletons, and the ground set itself.
pub fn b_beta(beta: &Beta, n: usize) -> Result<BuildingSet> {
    if beta.is_singleton() {
        return Err(Error::InvalidParameter(
            "building set is defined for non-singleton labels".into(),
        ));
    }
    let ground = n + 1;
    let bmin = beta.beta_min().clone();
    let bmax = beta.beta_max();
    let mut blocks: BTreeSet<Block> = beta.chain_set();
    for v in 1..=ground {
        blocks.insert(Block::new([v]));
    }
    for mask in 1u32..(1 << ground) {
        let b = Block::new((1..=ground).filter(|&v| mask >> (v - 1) & 1 == 1));
        if (b.is_subset(&bmin) && b != bmin) || (bmax.is_subset(&b) && b != bmax) {
            blocks.insert(b);
        }
    }
    Ok(BuildingSet::new(ground, blocks))
}

/// Nestedness of a block set with respect to a building set and a complex
/// membership predicate: the union of every antichain of two or more
/// mutually incomparable members must lie in the complex but outside the
/// building set.
pub fn is_nested<F>(n_set: &BTreeSet<Block>, building: &BTreeSet<Block>, in_complex: F) -> bool
where
    F: Fn(&Block) -> bool,
{
    let members: Vec<&Block> = n_set.iter().collect();
    let m = members.len();
    for mask in 1u32..(1 << m) {
        if mask.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<&Block> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| members[i])
            .collect();
        let antichain = chosen.iter().enumerate().all(|(i, a)| {
            chosen
                .iter()
                .skip(i + 1)
                .all(|b| !a.is_subset(b) && !b.is_subset(a))
        });
        if !antichain {
            continue;
        }
        let union = chosen
            .iter()
            .fold(Block::new([]), |acc, b| acc.union(b));
        if !in_complex(&union) || building.contains(&union) {
            return false;
        }
    }
    true
}

/// Nestedness for subsets of `building - {ground}` within the boundary
/// complex of the simplex: antichain unions must avoid the building set
/// (the ground set is a member, so unions equal to it are excluded too).
fn is_nested_in_c0(n_set: &BTreeSet<Block>, building: &BuildingSet) -> bool {
    is_nested(n_set, &building.blocks, |b| b.len() <= building.ground)
}

/// All maximal nested sets with respect to `building - {ground}`; each has
/// exactly `n = ground - 1` elements, and the count equals the vertex count
/// of the corresponding nestohedron.
pub fn maximal_nested_sets(building: &BuildingSet) -> Vec<BTreeSet<Block>> {
    let ground = Block::full(building.ground - 1);
    debug_assert!(building.contains(&ground));
    let elements: Vec<Block> = building
        .blocks
        .iter()
        .filter(|b| **b != ground)
        .cloned()
        .collect();
    let target = building.ground - 1;
    let mut out = Vec::new();
    let mut current: BTreeSet<Block> = BTreeSet::new();
    fn extend(
        elements: &[Block],
        start: usize,
        current: &mut BTreeSet<Block>,
        target: usize,
        building: &BuildingSet,
        out: &mut Vec<BTreeSet<Block>>,
    ) {
        if current.len() == target {
            out.push(current.clone());
            return;
        }
        for i in start..elements.len() {
            if elements.len() - i < target - current.len() {
                break;
            }
            current.insert(elements[i].clone());
            if is_nested_in_c0(current, building) {
                extend(elements, i + 1, current, target, building, out);
            }
            current.remove(&elements[i]);
        }
    }
    extend(&elements, 0, &mut current, target, building, &mut out);
    out
}

/// True when the blocks form a chain under inclusion.
pub fn is_chain(blocks: &BTreeSet<Block>) -> bool {
    let mut sorted: Vec<&Block> = blocks.iter().collect();
    sorted.sort_by_key(|b| b.len());
    sorted
        .windows(2)
        .all(|w| w[0].len() < w[1].len() && w[0].is_subset(w[1]))
}

/// True when a chain of blocks is itself a label: consecutive sizes differ
/// by exactly one and the maximum has at most `n` elements.
pub fn is_b1_shaped(blocks: &BTreeSet<Block>, n: usize) -> bool {
    if blocks.is_empty() || !is_chain(blocks) {
        return false;
    }
    let mut sorted: Vec<&Block> = blocks.iter().collect();
    sorted.sort_by_key(|b| b.len());
    sorted.last().unwrap().len() <= n
        && sorted.windows(2).all(|w| w[1].len() == w[0].len() + 1)
}

/// 1-nestedness: every antichain of labels must union to a chain of blocks
/// that is not itself a label.
pub fn is_1_nested(labels: &BTreeSet<Beta>, n: usize) -> bool {
    let members: Vec<&Beta> = labels.iter().collect();
    let m = members.len();
    for mask in 1u32..(1 << m) {
        if mask.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<&Beta> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| members[i])
            .collect();
        let antichain = chosen.iter().enumerate().all(|(i, a)| {
            chosen.iter().skip(i + 1).all(|b| !a.comparable(b))
        });
        if !antichain {
            continue;
        }
        let mut union: BTreeSet<Block> = BTreeSet::new();
        for beta in &chosen {
            union.extend(beta.chain());
        }
        if !is_chain(&union) || is_b1_shaped(&union, n) {
            return false;
        }
    }
    true
}

/// Facet-adjacency rule of the nested-set complex: two labels share a
/// vertex iff they are comparable or their union is 1-nested-valid.
pub fn labels_share_vertex(b1: &Beta, b2: &Beta, n: usize) -> bool {
    if b1 == b2 {
        return false;
    }
    let pair: BTreeSet<Beta> = [b1.clone(), b2.clone()].into();
    is_1_nested(&pair, n)
}

/// All maximal 1-nested sets, each of cardinality `n`, found by depth-first
/// extension over the canonical label order with pairwise pruning.
pub fn enumerate_maximal_1_nested(n: usize) -> Vec<NestedSet1> {
    let labels = enumerate_b1(n);
    let m = labels.len();
    let mut compat = Bitsquare::new(m);
    for i in 0..m {
        for j in i + 1..m {
            let pair: BTreeSet<Beta> = [labels[i].clone(), labels[j].clone()].into();
            if is_1_nested(&pair, n) {
                compat.set(i, j);
            }
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn extend(
        labels: &[Beta],
        compat: &Bitsquare,
        start: usize,
        current: &mut Vec<usize>,
        n: usize,
        out: &mut Vec<NestedSet1>,
    ) {
        if current.len() == n {
            out.push(NestedSet1(
                current.iter().map(|&i| labels[i].clone()).collect(),
            ));
            return;
        }
        for j in start..labels.len() {
            if labels.len() - j < n - current.len() {
                break;
            }
            if !current.iter().all(|&i| compat.get(i, j)) {
                continue;
            }
            current.push(j);
            let set: BTreeSet<Beta> = current.iter().map(|&i| labels[i].clone()).collect();
            if is_1_nested(&set, n) {
                extend(labels, compat, j + 1, current, n, out);
            }
            current.pop();
        }
    }
    extend(&labels, &compat, 0, &mut current, n, &mut out);
    out
}

/// Symmetric boolean matrix used for the pairwise compatibility prefilter.
struct Bitsquare {
    m: usize,
    bits: Vec<u64>,
}

impl Bitsquare {
    fn new(m: usize) -> Bitsquare {
        Bitsquare {
            m,
            bits: vec![0; (m * m).div_ceil(64)],
        }
    }
    fn set(&mut self, i: usize, j: usize) {
        for idx in [i * self.m + j, j * self.m + i] {
            self.bits[idx / 64] |= 1 << (idx % 64);
        }
    }
    fn get(&self, i: usize, j: usize) -> bool {
        let idx = i * self.m + j;
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }
}
