//! Tidy and tame orderings of A∖B and the sequential random-choice
//! procedure over them, with exact branch probabilities.
//!
//! A tidy ordering opens with a run of vertices connected to the core and
//! closes with vertices isolated in the completed set; a tame ordering
//! prepends a block of unconnected vertices of prescribed length. The
//! random procedure picks each next vertex uniformly among those that
//! still extend to a valid ordering, so every leaf probability is a
//! product of exact reciprocals.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::interval::{root_interval, sqrt_interval, RatInterval};
use crate::set::{factorial, isqrt, VertexSet};
use crate::{Error, Hypergraph, Result};

use super::pairs::{side_large_enough, ZThreshold};

/// Ordering flavor with its threshold parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceFlavor {
    Tidy { eps: BigRational },
    Tame { z: ZThreshold },
}

/// Ceilings for exhaustive tree work.
const TREE_MAX_N: usize = 10;
const TREE_MAX_A: usize = 6;
const LABELING_MAX_A: usize = 8;

fn validate_sequence(
    h: &Hypergraph,
    b: VertexSet,
    seq: &[usize],
    k: usize,
) -> Result<(usize, VertexSet)> {
    let n = h.vertex_count();
    if b.len() > k {
        return Err(Error::InvalidParameter(format!(
            "core of size {} larger than k = {k}",
            b.len()
        )));
    }
    let a = k - b.len();
    let mask = VertexSet::from_vertices(seq, n)?;
    if mask.len() != seq.len() {
        return Err(Error::DuplicateVertices);
    }
    if seq.len() != a {
        return Err(Error::InvalidParameter(format!(
            "sequence length {} differs from a = k - |B| = {a}",
            seq.len()
        )));
    }
    if !mask.intersection(b).is_empty() {
        return Err(Error::InvalidParameter(
            "sequence vertices must avoid the core".into(),
        ));
    }
    Ok((a, mask))
}

/// Tests a labeling of A∖B for tidiness; returns the split index when it
/// qualifies. The split must equal the number of connected vertices, so
/// it is returned rather than searched.
pub fn is_tidy(
    h: &Hypergraph,
    b: VertexSet,
    seq: &[usize],
    k: usize,
    ell: usize,
    r: usize,
    eps: &BigRational,
) -> Result<Option<usize>> {
    let (a, mask) = validate_sequence(h, b, seq, k)?;
    let full = b.union(mask);
    let profile = h.subset_profile(full)?;
    if profile.edges_within != ell {
        return Ok(None);
    }
    let mut run = 0usize;
    for &v in seq {
        if h.is_connected_to(v, b)? {
            run += 1;
        } else {
            break;
        }
    }
    if run < 1 || run > a.saturating_sub(1) {
        return Ok(None);
    }
    if !side_large_enough(run, eps, k, r) || !side_large_enough(a - run, eps, k, r) {
        return Ok(None);
    }
    for &v in &seq[run..] {
        if profile.within_degrees[&v] > 0 {
            return Ok(None);
        }
    }
    Ok(Some(run))
}

/// Tests a labeling of A∖B for tameness; returns the connected-run length
/// when it qualifies. Inapplicable when the block structure cannot exist
/// (a < 2s or s < 1).
pub fn is_tame(
    h: &Hypergraph,
    b: VertexSet,
    seq: &[usize],
    k: usize,
    ell: usize,
    z: &ZThreshold,
) -> Result<Option<usize>> {
    let (a, mask) = validate_sequence(h, b, seq, k)?;
    let s = isqrt(k) / 2;
    if s < 1 || a < 2 * s {
        return Err(Error::Inapplicable {
            what: "tame sequences".into(),
            requirement: "s = floor(sqrt(k)/2) >= 1 and a >= 2s".into(),
        });
    }
    let full = b.union(mask);
    let profile = h.subset_profile(full)?;
    if profile.edges_within != ell {
        return Ok(None);
    }
    // leading block: not connected to the core
    for &v in &seq[..a - s] {
        if h.is_connected_to(v, b)? {
            return Ok(None);
        }
    }
    let mut run = 0usize;
    for &v in &seq[a - s..] {
        if h.is_connected_to(v, b)? {
            run += 1;
        } else {
            break;
        }
    }
    if run < 1 || run > s || !z.le_count(run, k) {
        return Ok(None);
    }
    for &v in &seq[a - s + run..] {
        if profile.within_degrees[&v] > 0 {
            return Ok(None);
        }
    }
    Ok(Some(run))
}

fn permutations_of(members: &[usize], f: &mut impl FnMut(&[usize])) {
    fn rec(current: &mut Vec<usize>, rest: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if rest.is_empty() {
            f(current);
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            current.push(x);
            rec(current, rest, f);
            current.pop();
            rest.insert(i, x);
        }
    }
    rec(&mut Vec::new(), &mut members.to_vec(), f);
}

/// Number of labelings of A∖B that are tidy.
pub fn count_tidy_labelings(
    h: &Hypergraph,
    a: VertexSet,
    b: VertexSet,
    k: usize,
    ell: usize,
    r: usize,
    eps: &BigRational,
) -> Result<u64> {
    let members = a.difference(b).to_vec();
    if members.len() > LABELING_MAX_A {
        return Err(Error::TooManyVertices {
            n: members.len(),
            max: LABELING_MAX_A,
        });
    }
    let mut count = 0u64;
    let mut err = None;
    permutations_of(&members, &mut |order| {
        if err.is_some() {
            return;
        }
        match is_tidy(h, b, order, k, ell, r, eps) {
            Ok(Some(_)) => count += 1,
            Ok(None) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

/// Number of labelings of A∖B that are tame.
pub fn count_tame_labelings(
    h: &Hypergraph,
    a: VertexSet,
    b: VertexSet,
    k: usize,
    ell: usize,
    z: &ZThreshold,
) -> Result<u64> {
    let members = a.difference(b).to_vec();
    if members.len() > LABELING_MAX_A {
        return Err(Error::TooManyVertices {
            n: members.len(),
            max: LABELING_MAX_A,
        });
    }
    let mut count = 0u64;
    let mut err = None;
    permutations_of(&members, &mut |order| {
        if err.is_some() {
            return;
        }
        match is_tame(h, b, order, k, ell, z) {
            Ok(Some(_)) => count += 1,
            Ok(None) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

/// One complete sequence reachable by the random procedure.
#[derive(Clone, Debug)]
pub struct ProcedureLeaf {
    pub sequence: Vec<usize>,
    /// B together with the sequence vertices.
    pub set: VertexSet,
    /// Connected-run length of the leaf (the h of its pattern).
    pub connected_count: usize,
    pub probability: BigRational,
}

/// Exact law of the sequential uniform-choice procedure.
#[derive(Clone, Debug)]
pub struct ProcedureTree {
    pub core: VertexSet,
    pub a: usize,
    pub vertex_count: usize,
    pub node_count: u64,
    pub leaves: Vec<ProcedureLeaf>,
}

impl ProcedureTree {
    pub fn total_probability(&self) -> BigRational {
        self.leaves.iter().map(|l| l.probability.clone()).sum()
    }

    /// Per-leaf floor a^a / (h^h (a-h)^{a-h} n^a), exact.
    pub fn leaf_floor(&self, leaf: &ProcedureLeaf) -> BigRational {
        let a = self.a as u32;
        let h = leaf.connected_count as u32;
        debug_assert!(h >= 1 && h < a);
        let num = BigInt::from(self.a).pow(a);
        let den = BigInt::from(leaf.connected_count).pow(h)
            * BigInt::from(self.a - leaf.connected_count).pow(a - h)
            * BigInt::from(self.vertex_count).pow(a);
        BigRational::new(num, den)
    }

    /// Every leaf meets its per-leaf probability floor.
    pub fn leaf_floors_hold(&self) -> bool {
        self.leaves
            .iter()
            .all(|l| l.probability >= self.leaf_floor(l))
    }

    /// Total probability of reaching a specific completed set.
    pub fn mass_for_set(&self, set: VertexSet) -> BigRational {
        self.leaves
            .iter()
            .filter(|l| l.set == set)
            .map(|l| l.probability.clone())
            .sum()
    }
}

/// Per-set aggregate floor for pleasant pairs:
/// eps^{1/2} k^{1/4} / (2 r^{1/4}) * a!/n^a.
pub fn pleasant_aggregate_floor(
    eps: &BigRational,
    k: usize,
    r: usize,
    a: usize,
    n: usize,
    bits: u32,
) -> RatInterval {
    let scale = BigRational::new(
        BigInt::from(factorial(a)),
        BigInt::from(2) * BigInt::from(n).pow(a as u32),
    );
    sqrt_interval(eps, bits)
        .mul(&root_interval(&BigRational::from_integer(BigInt::from(k)), 4, bits))
        .mul(&root_interval(&BigRational::from_integer(BigInt::from(r)), 4, bits).recip())
        .scale(&scale)
}

/// Per-set aggregate floor for nice pairs: (3/4) sqrt(z) a!/n^a.
pub fn nice_aggregate_floor(
    z: &ZThreshold,
    k: usize,
    a: usize,
    n: usize,
    bits: u32,
) -> RatInterval {
    let scale = BigRational::new(
        BigInt::from(3u32) * BigInt::from(factorial(a)),
        BigInt::from(4) * BigInt::from(n).pow(a as u32),
    );
    z.sqrt_interval(k, bits).scale(&scale)
}

struct TreeBuilder<'a> {
    h: &'a Hypergraph,
    core: VertexSet,
    pool: Vec<usize>,
    connected: VertexSet,
    a: usize,
    ell: usize,
    /// tame block length; 0 marks the tidy flavor (whose run starts at 0)
    tame_s: usize,
    flavor: SequenceFlavor,
    k: usize,
    r: usize,
    memo: HashMap<(u128, u128), bool>,
    node_count: u64,
}

impl<'a> TreeBuilder<'a> {
    fn h_window_ok(&self, run: usize) -> bool {
        match &self.flavor {
            SequenceFlavor::Tidy { eps } => {
                run >= 1
                    && run + 1 <= self.a
                    && run != self.a
                    && side_large_enough(run, eps, self.k, self.r)
                    && side_large_enough(self.a - run, eps, self.k, self.r)
            }
            SequenceFlavor::Tame { z } => {
                run >= 1 && run <= self.tame_s && z.le_count(run, self.k)
            }
        }
    }

    /// Successor states of (mask, tail) when choosing v; None if the
    /// pattern forbids v at this position.
    fn step(&self, mask: VertexSet, tail: VertexSet, v: usize) -> Option<(VertexSet, VertexSet)> {
        let i = mask.len();
        let v_connected = self.connected.contains(v);
        let in_block1 = matches!(self.flavor, SequenceFlavor::Tame { .. }) && i < self.a - self.tame_s;
        let next_mask = mask.union(VertexSet::singleton(v));
        if in_block1 {
            if v_connected {
                return None;
            }
            return Some((next_mask, tail));
        }
        if tail.is_empty() {
            if v_connected {
                // run continues
                Some((next_mask, tail))
            } else {
                // tail opens with v
                Some((next_mask, VertexSet::singleton(v)))
            }
        } else {
            if v_connected {
                return None;
            }
            Some((next_mask, tail.union(VertexSet::singleton(v))))
        }
    }

    /// Monotone validity of a freshly extended state.
    fn state_valid(&self, mask: VertexSet, tail: VertexSet) -> bool {
        let set = self.core.union(mask);
        let profile = self.h.subset_profile(set).expect("in-range subset");
        if profile.edges_within > self.ell {
            return false;
        }
        // an opened tail freezes the edge count at ℓ
        if !tail.is_empty() && profile.edges_within != self.ell {
            return false;
        }
        tail.iter().all(|v| profile.within_degrees[&v] == 0)
    }

    fn run_len(&self, mask: VertexSet) -> usize {
        mask.intersection(self.connected).len()
    }

    fn can_complete(&mut self, mask: VertexSet, tail: VertexSet) -> bool {
        if mask.len() == self.a {
            let set = self.core.union(mask);
            let profile = self.h.subset_profile(set).expect("in-range subset");
            return profile.edges_within == self.ell && self.h_window_ok(self.run_len(mask));
        }
        let key = (mask.0, tail.0);
        if let Some(&cached) = self.memo.get(&key) {
            return cached;
        }
        let mut ok = false;
        for idx in 0..self.pool.len() {
            let v = self.pool[idx];
            if mask.contains(v) {
                continue;
            }
            if let Some((m2, t2)) = self.step(mask, tail, v) {
                if self.state_valid(m2, t2) && self.can_complete(m2, t2) {
                    ok = true;
                    break;
                }
            }
        }
        self.memo.insert(key, ok);
        ok
    }

    fn eligible(&mut self, mask: VertexSet, tail: VertexSet) -> Vec<(usize, VertexSet, VertexSet)> {
        let mut out = Vec::new();
        for idx in 0..self.pool.len() {
            let v = self.pool[idx];
            if mask.contains(v) {
                continue;
            }
            if let Some((m2, t2)) = self.step(mask, tail, v) {
                if self.state_valid(m2, t2) && self.can_complete(m2, t2) {
                    out.push((v, m2, t2));
                }
            }
        }
        out
    }

    fn build(
        &mut self,
        mask: VertexSet,
        tail: VertexSet,
        seq: &mut Vec<usize>,
        prob: BigRational,
        leaves: &mut Vec<ProcedureLeaf>,
    ) {
        self.node_count += 1;
        if mask.len() == self.a {
            leaves.push(ProcedureLeaf {
                sequence: seq.clone(),
                set: self.core.union(mask),
                connected_count: self.run_len(mask),
                probability: prob,
            });
            return;
        }
        let options = self.eligible(mask, tail);
        debug_assert!(!options.is_empty(), "interior nodes always extend");
        let share = prob / BigRational::from_integer(BigInt::from(options.len()));
        for (v, m2, t2) in options {
            seq.push(v);
            self.build(m2, t2, seq, share.clone(), leaves);
            seq.pop();
        }
    }
}

/// Builds the exact probability tree of the random tidy/tame procedure
/// for a fixed core. Errors with `DefinedEmpty` when no valid sequence
/// exists, and `Inapplicable` when the tame block structure cannot.
pub fn procedure_tree(
    h: &Hypergraph,
    b: VertexSet,
    k: usize,
    ell: usize,
    r: usize,
    flavor: SequenceFlavor,
) -> Result<ProcedureTree> {
    let n = h.vertex_count();
    if n > TREE_MAX_N {
        return Err(Error::TooManyVertices { n, max: TREE_MAX_N });
    }
    if b.len() > k {
        return Err(Error::InvalidParameter(format!(
            "core of size {} larger than k = {k}",
            b.len()
        )));
    }
    let a = k - b.len();
    if a > TREE_MAX_A {
        return Err(Error::TooManyVertices { n: a, max: TREE_MAX_A });
    }
    let tame_s = match &flavor {
        SequenceFlavor::Tidy { .. } => 0,
        SequenceFlavor::Tame { z } => {
            let s = isqrt(k) / 2;
            if s < 1 || a < 2 * s {
                return Err(Error::Inapplicable {
                    what: "tame procedure".into(),
                    requirement: "s = floor(sqrt(k)/2) >= 1 and a >= 2s".into(),
                });
            }
            if !z.is_positive() {
                return Err(Error::InvalidParameter("z must be positive".into()));
            }
            s
        }
    };
    if let SequenceFlavor::Tidy { eps } = &flavor {
        if !eps.is_positive() {
            return Err(Error::InvalidParameter("eps must be positive".into()));
        }
    }
    let pool: Vec<usize> = (0..n).filter(|&v| !b.contains(v)).collect();
    let mut connected = VertexSet::EMPTY;
    for &v in &pool {
        if h.is_connected_to(v, b)? {
            connected.insert(v);
        }
    }
    let mut builder = TreeBuilder {
        h,
        core: b,
        pool,
        connected,
        a,
        ell,
        tame_s,
        flavor,
        k,
        r,
        memo: HashMap::new(),
        node_count: 0,
    };
    if a == 0 || !builder.can_complete(VertexSet::EMPTY, VertexSet::EMPTY) {
        return Err(Error::DefinedEmpty(
            "no qualifying sequence for this core".into(),
        ));
    }
    let mut leaves = Vec::new();
    let mut seq = Vec::with_capacity(a);
    builder.build(
        VertexSet::EMPTY,
        VertexSet::EMPTY,
        &mut seq,
        BigRational::one(),
        &mut leaves,
    );
    Ok(ProcedureTree {
        core: b,
        a,
        vertex_count: n,
        node_count: builder.node_count,
        leaves,
    })
}
