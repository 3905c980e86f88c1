//! Exact and Monte Carlo computation of the induced edge-count
//! distribution of a uniformly random k-subset.
//!
//! The exact engine walks k-subsets in revolving-door (minimal-change)
//! order, so each step swaps a single vertex and e(A)/m(A) are maintained
//! incrementally. The combination space is partitioned by smallest vertex
//! index across workers; per-worker tables merge by addition, so results
//! are identical at any worker count.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::set::{binomial, binomial_f64};
use crate::{Error, Hypergraph, Result};

/// Exact joint counts of (ℓ, m) = (e(A), m(A)) over all k-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    pub n: usize,
    pub k: usize,
    /// (ℓ, m) -> number of k-subsets A with e(A) = ℓ and m(A) = m.
    pub counts: BTreeMap<(usize, usize), BigUint>,
}

impl JointDistribution {
    /// Total mass; equals C(n, k) when produced by the exact engine.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Marginal counts over ℓ.
    pub fn marginal(&self) -> BTreeMap<usize, BigUint> {
        let mut out: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (&(l, _), c) in &self.counts {
            *out.entry(l).or_default() += c;
        }
        out
    }

    /// Number of k-subsets with exactly ℓ edges.
    pub fn count_for_ell(&self, ell: usize) -> BigUint {
        self.counts
            .iter()
            .filter(|(&(l, _), _)| l == ell)
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// Exact probability of exactly ℓ edges.
    pub fn probability(&self, ell: usize) -> BigRational {
        let total = binomial(self.n, self.k);
        if total.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(
            BigInt::from(self.count_for_ell(ell)),
            BigInt::from(total),
        )
    }

    /// Sum of counts(ℓ, m) over integer m with m_lo <= m <= m_hi.
    pub fn count_in_m_range(
        &self,
        ell: usize,
        m_lo: &BigRational,
        m_hi: &BigRational,
    ) -> BigUint {
        self.counts
            .iter()
            .filter(|(&(l, m), _)| {
                l == ell && {
                    let m = BigRational::from_integer(BigInt::from(m));
                    &m >= m_lo && &m <= m_hi
                }
            })
            .map(|(_, c)| c.clone())
            .sum()
    }

    // ---- serialization ----------------------------------------------------

    pub fn to_json_value(&self) -> serde_json::Value {
        let counts: Vec<serde_json::Value> = self
            .counts
            .iter()
            .map(|(&(l, m), c)| serde_json::json!([l, m, c.to_string()]))
            .collect();
        serde_json::json!({ "n": self.n, "k": self.k, "counts": counts })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<JointDistribution> {
        let n = v["n"]
            .as_u64()
            .ok_or_else(|| Error::Parse("distribution missing n".into()))? as usize;
        let k = v["k"]
            .as_u64()
            .ok_or_else(|| Error::Parse("distribution missing k".into()))? as usize;
        let mut counts = BTreeMap::new();
        for row in v["counts"]
            .as_array()
            .ok_or_else(|| Error::Parse("distribution missing counts".into()))?
        {
            let l = row[0]
                .as_u64()
                .ok_or_else(|| Error::Parse("bad l".into()))? as usize;
            let m = row[1]
                .as_u64()
                .ok_or_else(|| Error::Parse("bad m".into()))? as usize;
            let c: BigUint = row[2]
                .as_str()
                .ok_or_else(|| Error::Parse("count must be a decimal string".into()))?
                .parse()
                .map_err(|_| Error::Parse("bad count".into()))?;
            counts.insert((l, m), c);
        }
        Ok(JointDistribution { n, k, counts })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("l,m,count\n");
        for (&(l, m), c) in &self.counts {
            out.push_str(&format!("{l},{m},{c}\n"));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<JointDistribution> {
        // header-free shape information: n and k are not part of the CSV
        // projection, which is why JSON is the canonical format.
        let mut counts = BTreeMap::new();
        for line in text.lines().skip(1) {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(Error::Parse(format!("bad csv row {line:?}")));
            }
            let l: usize = cols[0].parse().map_err(|_| Error::Parse("bad l".into()))?;
            let m: usize = cols[1].parse().map_err(|_| Error::Parse("bad m".into()))?;
            let c: BigUint = cols[2].parse().map_err(|_| Error::Parse("bad count".into()))?;
            counts.insert((l, m), c);
        }
        Ok(JointDistribution { n: 0, k: 0, counts })
    }
}

/// A seeded Monte Carlo estimate with a Wilson score interval.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleEstimate {
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
    pub level: f64,
}

// ---- incremental subset state ---------------------------------------------

/// Per-hypergraph indexes for the incremental engine.
struct EdgeIndex {
    members: Vec<Vec<u32>>,
    incident: Vec<Vec<u32>>,
}

impl EdgeIndex {
    fn new(h: &Hypergraph) -> EdgeIndex {
        let members: Vec<Vec<u32>> = h
            .edges()
            .iter()
            .map(|e| e.iter().map(|&v| v as u32).collect())
            .collect();
        let mut incident = vec![Vec::new(); h.vertex_count()];
        for (ei, e) in members.iter().enumerate() {
            for &v in e {
                incident[v as usize].push(ei as u32);
            }
        }
        EdgeIndex { members, incident }
    }
}

/// Mutable subset with e(A)/m(A) maintained under single-vertex swaps.
struct SubsetState<'a> {
    idx: &'a EdgeIndex,
    missing: Vec<u32>,
    active_at: Vec<u32>,
    edges_within: usize,
    non_isolated: usize,
}

impl<'a> SubsetState<'a> {
    fn new(idx: &'a EdgeIndex, n: usize) -> SubsetState<'a> {
        SubsetState {
            idx,
            missing: idx.members.iter().map(|e| e.len() as u32).collect(),
            active_at: vec![0; n],
            edges_within: 0,
            non_isolated: 0,
        }
    }

    fn add(&mut self, v: usize) {
        for &ei in &self.idx.incident[v] {
            let slot = &mut self.missing[ei as usize];
            *slot -= 1;
            if *slot == 0 {
                self.edges_within += 1;
                for &w in &self.idx.members[ei as usize] {
                    let c = &mut self.active_at[w as usize];
                    *c += 1;
                    if *c == 1 {
                        self.non_isolated += 1;
                    }
                }
            }
        }
    }

    fn remove(&mut self, v: usize) {
        for &ei in &self.idx.incident[v] {
            let slot = &mut self.missing[ei as usize];
            if *slot == 0 {
                self.edges_within -= 1;
                for &w in &self.idx.members[ei as usize] {
                    let c = &mut self.active_at[w as usize];
                    *c -= 1;
                    if *c == 0 {
                        self.non_isolated -= 1;
                    }
                }
            }
            *slot += 1;
        }
    }
}

// ---- revolving-door combination order --------------------------------------

/// Emits the swap steps of the revolving-door Gray sequence for k-subsets
/// of {0..m-1}, transforming {0..k-1} into {0..k-2, m-1}. Each emitted
/// step is (element out, element in).
fn revolving_door_steps<F: FnMut(usize, usize)>(m: usize, k: usize, forward: bool, emit: &mut F) {
    if k == 0 || k == m {
        return;
    }
    let pivot = if k >= 2 { k - 2 } else { m - 2 };
    if forward {
        revolving_door_steps(m - 1, k, true, emit);
        emit(pivot, m - 1);
        revolving_door_steps(m - 1, k - 1, false, emit);
    } else {
        revolving_door_steps(m - 1, k - 1, true, emit);
        emit(m - 1, pivot);
        revolving_door_steps(m - 1, k, false, emit);
    }
}

/// One step of the revolving-door walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoorEvent {
    /// Element joins the current subset.
    Add(usize),
    /// Element leaves the current subset.
    Remove(usize),
    /// The current subset is complete; record it.
    Visit,
}

/// Walks every k-subset of `pool` exactly once in revolving-door order,
/// reporting membership changes and completed subsets through `f`.
///
/// Between two `Visit` events exactly one element leaves and one enters.
pub fn revolving_door<F: FnMut(DoorEvent)>(pool: &[usize], k: usize, f: &mut F) {
    if k > pool.len() {
        return;
    }
    for &v in &pool[..k] {
        f(DoorEvent::Add(v));
    }
    f(DoorEvent::Visit);
    revolving_door_steps(pool.len(), k, true, &mut |out, inn| {
        f(DoorEvent::Remove(pool[out]));
        f(DoorEvent::Add(pool[inn]));
        f(DoorEvent::Visit);
    });
}

// ---- exact enumeration ------------------------------------------------------

fn check_enumeration_size(h: &Hypergraph, k: usize) -> Result<()> {
    let n = h.vertex_count();
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    if n > crate::set::VertexSet::MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: crate::set::VertexSet::MAX_VERTICES,
        });
    }
    let estimate = binomial_f64(n, k);
    let ceiling = crate::work_ceiling();
    if estimate > ceiling {
        return Err(Error::WorkCeiling { estimate, ceiling });
    }
    Ok(())
}

/// Exact joint (ℓ, m) counts over all C(n, k) subsets.
pub fn exact_joint_distribution(h: &Hypergraph, k: usize) -> Result<JointDistribution> {
    check_enumeration_size(h, k)?;
    let n = h.vertex_count();
    if k == 0 {
        let mut counts = BTreeMap::new();
        counts.insert((0, 0), BigUint::one());
        return Ok(JointDistribution { n, k, counts });
    }
    let idx = EdgeIndex::new(h);
    // partition by the smallest vertex of the subset
    let tables: Vec<BTreeMap<(usize, usize), u64>> = (0..=n - k)
        .into_par_iter()
        .map(|v0| {
            let mut state = SubsetState::new(&idx, n);
            let mut table: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            state.add(v0);
            if k == 1 {
                *table.entry((state.edges_within, state.non_isolated)).or_insert(0) += 1;
                return table;
            }
            let pool: Vec<usize> = (v0 + 1..n).collect();
            revolving_door(&pool, k - 1, &mut |ev| match ev {
                DoorEvent::Add(v) => state.add(v),
                DoorEvent::Remove(v) => state.remove(v),
                DoorEvent::Visit => {
                    *table
                        .entry((state.edges_within, state.non_isolated))
                        .or_insert(0) += 1;
                }
            });
            table
        })
        .collect();
    let mut counts: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    for t in tables {
        for (key, c) in t {
            *counts.entry(key).or_default() += BigUint::from(c);
        }
    }
    Ok(JointDistribution { n, k, counts })
}

/// I(G, k, ℓ): exact probability that a uniform k-subset has ℓ edges.
pub fn i_value(h: &Hypergraph, k: usize, ell: usize) -> Result<BigRational> {
    Ok(exact_joint_distribution(h, k)?.probability(ell))
}

/// Exact count of k-subsets with e(A) = ℓ and m(A) in [m_lo, m_hi].
pub fn count_with_m_range(
    h: &Hypergraph,
    k: usize,
    ell: usize,
    m_lo: &BigRational,
    m_hi: &BigRational,
) -> Result<BigUint> {
    Ok(exact_joint_distribution(h, k)?.count_in_m_range(ell, m_lo, m_hi))
}

/// Number of k-subsets inducing a forest with exactly ℓ edges (graphs only).
pub fn count_forest_subsets(h: &Hypergraph, k: usize, ell: usize) -> Result<BigUint> {
    if !h.is_graph() {
        return Err(Error::Inapplicable {
            what: "forest counting".into(),
            requirement: "a rank-2 graph".into(),
        });
    }
    check_enumeration_size(h, k)?;
    let n = h.vertex_count();
    if k == 0 {
        return Ok(if ell == 0 { BigUint::one() } else { BigUint::zero() });
    }
    let adj: Vec<u128> = {
        let mut adj = vec![0u128; n];
        for e in h.edges() {
            adj[e[0]] |= 1u128 << e[1];
            adj[e[1]] |= 1u128 << e[0];
        }
        adj
    };
    let total: u64 = (0..=n - k)
        .into_par_iter()
        .map(|v0| {
            let mut hits = 0u64;
            let pool: Vec<usize> = (v0 + 1..n).collect();
            let mut members: Vec<usize> = vec![v0];
            revolving_door(&pool, k - 1, &mut |ev| match ev {
                DoorEvent::Add(v) => members.push(v),
                DoorEvent::Remove(v) => {
                    let at = members.iter().position(|&w| w == v).unwrap();
                    members.swap_remove(at);
                }
                DoorEvent::Visit => {
                    if induces_forest_with(&adj, &members, ell) {
                        hits += 1;
                    }
                }
            });
            hits
        })
        .sum();
    Ok(BigUint::from(total))
}

/// Whether the induced subgraph on `members` is a forest with `ell` edges.
fn induces_forest_with(adj: &[u128], members: &[usize], ell: usize) -> bool {
    let mask: u128 = members.iter().fold(0, |m, &v| m | (1u128 << v));
    let mut edge_doubled = 0usize;
    for &v in members {
        edge_doubled += (adj[v] & mask).count_ones() as usize;
    }
    let edges = edge_doubled / 2;
    if edges != ell {
        return false;
    }
    // acyclic iff edges = |A| - components
    let mut seen = 0u128;
    let mut comps = 0usize;
    for &v in members {
        if seen & (1u128 << v) != 0 {
            continue;
        }
        comps += 1;
        let mut frontier = 1u128 << v;
        let mut comp = frontier;
        while frontier != 0 {
            let mut next = 0u128;
            let mut rest = frontier;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= adj[u] & mask;
            }
            frontier = next & !comp;
            comp |= next;
        }
        seen |= comp;
    }
    edges == members.len() - comps
}

// ---- Monte Carlo -------------------------------------------------------------

/// Samples are drawn in fixed-size chunks, one ChaCha8 stream per chunk,
/// so the estimate is reproducible at any worker count.
const MC_CHUNK: u64 = 4096;

/// Monte Carlo estimate of P[e(A) = ℓ] with a Wilson score interval.
///
/// The generator is ChaCha8 seeded from `seed`; chunk `c` of 4096 samples
/// uses stream `c`, which makes runs bit-reproducible for a fixed
/// (seed, samples) at any parallelism.
pub fn monte_carlo_estimate(
    h: &Hypergraph,
    k: usize,
    ell: usize,
    samples: u64,
    seed: u64,
    level: f64,
) -> Result<SampleEstimate> {
    let n = h.vertex_count();
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    if !(0.0 < level && level < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "confidence level {level} outside (0, 1)"
        )));
    }
    // edges indexed by their smallest member: each candidate edge is
    // examined once per sample that contains that member
    let mut edges_at_min: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (ei, e) in h.edges().iter().enumerate() {
        edges_at_min[e[0]].push(ei as u32);
    }
    let edges = h.edges();
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * MC_CHUNK;
            let hi = (lo + MC_CHUNK).min(samples);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let mut pool: Vec<u32> = (0..n as u32).collect();
            let mut in_sample = vec![false; n];
            let mut hits = 0u64;
            for _ in lo..hi {
                // partial Fisher-Yates, undone after the draw
                for i in 0..k {
                    let j = rng.gen_range(i..n);
                    pool.swap(i, j);
                }
                for &v in &pool[..k] {
                    in_sample[v as usize] = true;
                }
                let mut count = 0usize;
                for &v in &pool[..k] {
                    for &ei in &edges_at_min[v as usize] {
                        if edges[ei as usize].iter().all(|&w| in_sample[w]) {
                            count += 1;
                            if count > ell {
                                break;
                            }
                        }
                    }
                    if count > ell {
                        break;
                    }
                }
                if count == ell {
                    hits += 1;
                }
                for &v in &pool[..k] {
                    in_sample[v as usize] = false;
                }
            }
            hits
        })
        .sum();
    let (lo, hi) = wilson_interval(hits, samples, level);
    Ok(SampleEstimate {
        estimate: hits as f64 / samples as f64,
        lo,
        hi,
        samples,
        hits,
        seed,
        level,
    })
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(hits: u64, samples: u64, level: f64) -> (f64, f64) {
    use statrs::distribution::{ContinuousCDF, Normal};
    let z = Normal::new(0.0, 1.0)
        .unwrap()
        .inverse_cdf(0.5 + level / 2.0);
    let n = samples as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (
        ((center - half) / denom).max(0.0),
        ((center + half) / denom).min(1.0),
    )
}

/// Converts an exact probability to f64 for tolerance checks in reports.
pub fn probability_to_f64(p: &BigRational) -> f64 {
    debug_assert!(!p.is_negative());
    crate::interval::rational_to_f64(p)
}

/// Work estimate helper surfaced by refusal errors and the CLI.
pub fn enumeration_cost(n: usize, k: usize) -> f64 {
    binomial_f64(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::VertexSet;
    use std::collections::BTreeSet;

    fn path3() -> Hypergraph {
        Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn cycle5() -> Hypergraph {
        Hypergraph::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn revolving_door_is_a_gray_code() {
        for n in 0..=9usize {
            for k in 0..=n {
                let pool: Vec<usize> = (0..n).collect();
                let mut current: BTreeSet<usize> = BTreeSet::new();
                let mut visited: Vec<BTreeSet<usize>> = Vec::new();
                revolving_door(&pool, k, &mut |ev| match ev {
                    DoorEvent::Add(v) => {
                        assert!(current.insert(v));
                    }
                    DoorEvent::Remove(v) => {
                        assert!(current.remove(&v));
                    }
                    DoorEvent::Visit => {
                        assert_eq!(current.len(), k);
                        visited.push(current.clone());
                    }
                });
                let expected = crate::set::binomial(n, k);
                assert_eq!(BigUint::from(visited.len()), expected, "n={n} k={k}");
                let distinct: BTreeSet<_> = visited.iter().cloned().collect();
                assert_eq!(distinct.len(), visited.len(), "repeat at n={n} k={k}");
                for w in visited.windows(2) {
                    let diff = w[0].symmetric_difference(&w[1]).count();
                    assert_eq!(diff, 2, "non-minimal step at n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn joint_distribution_examples() {
        // P3, k=2: marginal {0: 1, 1: 2}
        let d = exact_joint_distribution(&path3(), 2).unwrap();
        let marg = d.marginal();
        assert_eq!(marg[&0], BigUint::from(1u32));
        assert_eq!(marg[&1], BigUint::from(2u32));
        assert_eq!(d.total(), BigUint::from(3u32));

        // 5-cycle, k=3: marginal {1: 5, 2: 5}
        let d = exact_joint_distribution(&cycle5(), 3).unwrap();
        let marg = d.marginal();
        assert_eq!(marg.get(&0), None);
        assert_eq!(marg[&1], BigUint::from(5u32));
        assert_eq!(marg[&2], BigUint::from(5u32));

        // empty graph: all mass at (0, 0)
        let h = Hypergraph::new(7, 2, vec![]).unwrap();
        let d = exact_joint_distribution(&h, 3).unwrap();
        assert_eq!(d.counts.len(), 1);
        assert_eq!(d.counts[&(0, 0)], crate::set::binomial(7, 3));
    }

    #[test]
    fn i_value_examples() {
        use num_traits::One;
        let v = i_value(&path3(), 2, 1).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(2), BigInt::from(3)));

        // complete graph: every k-subset is complete
        let mut pairs = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                pairs.push((u, v));
            }
        }
        let kn = Hypergraph::graph(6, &pairs).unwrap();
        assert!(i_value(&kn, 4, 6).unwrap().is_one());

        // 5-cycle has no independent triple
        assert!(i_value(&cycle5(), 3, 0).unwrap().is_zero());
    }

    #[test]
    fn m_range_examples() {
        let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
        let h = Hypergraph::new(6, 2, vec![]).unwrap();
        assert!(count_with_m_range(&h, 3, 1, &rat(0), &rat(6))
            .unwrap()
            .is_zero());

        // P3, k=3, ℓ=2, m-window [3,3]: the whole path
        assert_eq!(
            count_with_m_range(&path3(), 3, 2, &rat(3), &rat(3)).unwrap(),
            BigUint::one()
        );

        // 5-cycle, k=3, ℓ=1: every 1-edge triple has m=2
        assert_eq!(
            count_with_m_range(&cycle5(), 3, 1, &rat(2), &rat(2)).unwrap(),
            BigUint::from(5u32)
        );
    }

    #[test]
    fn forest_counts() {
        assert_eq!(
            count_forest_subsets(&path3(), 3, 2).unwrap(),
            BigUint::one()
        );
        let k3 = Hypergraph::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(count_forest_subsets(&k3, 3, 3).unwrap().is_zero());
        assert_eq!(
            count_forest_subsets(&cycle5(), 3, 2).unwrap(),
            BigUint::from(5u32)
        );
        // dominated by the plain ℓ-count
        for ell in 0..=2 {
            let forest = count_forest_subsets(&cycle5(), 3, ell).unwrap();
            let all = exact_joint_distribution(&cycle5(), 3)
                .unwrap()
                .count_for_ell(ell);
            assert!(forest <= all);
        }
    }

    #[test]
    fn joint_counts_respect_envelopes() {
        // counts(0, m) = 0 for m > 0 and the graph envelope of Claim 3.1
        let g = Hypergraph::graph(6, &[(0, 1), (1, 2), (3, 4), (1, 3)]).unwrap();
        for k in 1..=6 {
            let d = exact_joint_distribution(&g, k).unwrap();
            for (&(l, m), c) in &d.counts {
                if c.is_zero() {
                    continue;
                }
                if l == 0 {
                    assert_eq!(m, 0);
                } else {
                    assert!(m * m >= 2 * l, "sqrt(2l) <= m");
                    assert!(m <= 2 * l);
                }
            }
        }
    }

    #[test]
    fn monte_carlo_behaviour() {
        // complete graph: certain hit
        let mut pairs = Vec::new();
        for u in 0..8 {
            for v in u + 1..8 {
                pairs.push((u, v));
            }
        }
        let kn = Hypergraph::graph(8, &pairs).unwrap();
        let est = monte_carlo_estimate(&kn, 4, 6, 500, 7, 0.95).unwrap();
        assert_eq!(est.estimate, 1.0);
        assert!(est.hi >= 1.0 - 1e-12);

        // empty graph never hits ℓ=1
        let empty = Hypergraph::new(8, 2, vec![]).unwrap();
        let est = monte_carlo_estimate(&empty, 4, 1, 500, 7, 0.95).unwrap();
        assert_eq!(est.estimate, 0.0);

        // P3 converges to 2/3
        let est = monte_carlo_estimate(&path3(), 2, 1, 100_000, 42, 0.99).unwrap();
        assert!((est.estimate - 2.0 / 3.0).abs() < 0.01);
        assert!(est.lo <= 2.0 / 3.0 && 2.0 / 3.0 <= est.hi);

        // identical seed and sample count reproduce bit-identically
        let again = monte_carlo_estimate(&path3(), 2, 1, 100_000, 42, 0.99).unwrap();
        assert_eq!(est.hits, again.hits);
        assert_eq!(est.estimate.to_bits(), again.estimate.to_bits());
    }

    #[test]
    fn distribution_round_trips() {
        let d = exact_joint_distribution(&cycle5(), 3).unwrap();
        let j = d.to_json_value();
        assert_eq!(JointDistribution::from_json_value(&j).unwrap(), d);
        let csv = d.to_csv();
        let back = JointDistribution::from_csv(&csv).unwrap();
        assert_eq!(back.counts, d.counts);
    }

    #[test]
    fn ceiling_refusal() {
        let h = Hypergraph::new(60, 2, vec![]).unwrap();
        std::env::set_var("EDGESTAT_CEILING", "1000");
        let err = exact_joint_distribution(&h, 20).unwrap_err();
        std::env::remove_var("EDGESTAT_CEILING");
        match err {
            Error::WorkCeiling { estimate, ceiling } => {
                assert!(estimate > ceiling);
            }
            other => panic!("expected work ceiling refusal, got {other:?}"),
        }
    }

    #[test]
    fn profile_consistency_against_sets() {
        // incremental engine agrees with the direct per-subset profile
        let h = Hypergraph::new(
            7,
            3,
            vec![vec![0, 1, 2], vec![2, 3], vec![4], vec![3, 5, 6], vec![0, 6]],
        )
        .unwrap();
        for k in 1..=7 {
            let d = exact_joint_distribution(&h, k).unwrap();
            let mut expect: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            for a in crate::set::k_subsets_of(VertexSet::full(7), k) {
                let p = h.subset_profile(a).unwrap();
                *expect.entry((p.edges_within, p.non_isolated)).or_insert(0) += 1;
            }
            let expect: BTreeMap<(usize, usize), BigUint> = expect
                .into_iter()
                .map(|(k, v)| (k, BigUint::from(v)))
                .collect();
            assert_eq!(d.counts, expect, "k={k}");
        }
    }
}

