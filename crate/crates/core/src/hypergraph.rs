//! Hypergraphs with bounded edge size and the subset statistics every
//! other module consumes: e(W), m(W), within-subset degrees, the
//! connected-to-B predicate and the h/m/f pair statistics.
//!
//! A graph is the rank-2 case. Values are immutable after construction
//! and safe to share across threads; all operations here are pure.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::set::VertexSet;
use crate::{Error, Result};

/// A hypergraph on vertices `0..n` whose edges all have size in `1..=rank`.
///
/// Edges are stored sorted by (size, lexicographic member order) and
/// deduplicated, so iteration order is deterministic everywhere downstream.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    rank: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, validating every edge against the rank bound.
    ///
    /// Rank violations are rejected rather than repaired: a silently
    /// truncated edge would invalidate every bound check downstream.
    pub fn new(n: usize, rank: usize, edges: Vec<Vec<usize>>) -> Result<Hypergraph> {
        if rank == 0 {
            return Err(Error::InvalidParameter("rank must be at least 1".into()));
        }
        let mut cleaned: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(Error::EmptyEdge(e));
            }
            if e.len() > rank {
                return Err(Error::RankExceeded {
                    size: e.len(),
                    rank,
                    edge: e,
                });
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            cleaned.push(e);
        }
        cleaned.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        cleaned.dedup();
        Ok(Hypergraph {
            n,
            rank,
            edges: cleaned,
        })
    }

    /// A graph (rank 2) from a pair list.
    pub fn graph(n: usize, pairs: &[(usize, usize)]) -> Result<Hypergraph> {
        let edges = pairs.iter().map(|&(u, v)| vec![u, v]).collect();
        Hypergraph::new(n, 2, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_graph(&self) -> bool {
        self.rank == 2 && self.edges.iter().all(|e| e.len() == 2)
    }

    /// Degree of `v` in the whole hypergraph.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Complement graph; only defined for rank 2.
    pub fn complement(&self) -> Result<Hypergraph> {
        if !self.is_graph() {
            return Err(Error::Inapplicable {
                what: "complement".into(),
                requirement: "a rank-2 graph".into(),
            });
        }
        let mut pairs = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.edges.contains(&vec![u, v]) {
                    pairs.push((u, v));
                }
            }
        }
        Hypergraph::graph(self.n, &pairs)
    }

    fn check_mask_support(&self) -> Result<()> {
        if self.n > VertexSet::MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n: self.n,
                max: VertexSet::MAX_VERTICES,
            });
        }
        Ok(())
    }

    fn check_subset(&self, w: VertexSet) -> Result<()> {
        self.check_mask_support()?;
        if !w.is_subset_of(VertexSet::full(self.n)) {
            let v = w.difference(VertexSet::full(self.n)).iter().next().unwrap();
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Edge masks, in the same deterministic order as `edges()`.
    pub fn edge_masks(&self) -> Result<Vec<VertexSet>> {
        self.check_mask_support()?;
        Ok(self
            .edges
            .iter()
            .map(|e| VertexSet::from_iter(e.iter().copied()))
            .collect())
    }

    /// e(W): the number of edges contained in `W`.
    pub fn edges_within(&self, w: VertexSet) -> Result<usize> {
        self.check_subset(w)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| w.contains(v)))
            .count())
    }

    /// Full per-subset statistics: e(A), m(A) and within-subset degrees.
    pub fn subset_profile(&self, a: VertexSet) -> Result<SubsetProfile> {
        self.check_subset(a)?;
        let mut within_degrees: BTreeMap<usize, usize> = a.iter().map(|v| (v, 0)).collect();
        let mut edges_within = 0usize;
        for e in &self.edges {
            if e.iter().all(|&v| a.contains(v)) {
                edges_within += 1;
                for &v in e {
                    *within_degrees.get_mut(&v).unwrap() += 1;
                }
            }
        }
        let non_isolated = within_degrees.values().filter(|&&d| d > 0).count();
        Ok(SubsetProfile {
            subset: a,
            edges_within,
            non_isolated,
            within_degrees,
        })
    }

    /// The family { e \ {v} : v in e, e ⊆ W ∪ {v} } of partial edges at `v`.
    ///
    /// Its cardinality equals the degree of `v` inside `W ∪ {v}`; every
    /// member has size strictly below the rank bound.
    pub fn neighborhood_family(&self, v: usize, w: VertexSet) -> Result<Vec<VertexSet>> {
        self.check_subset(w)?;
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if w.contains(v) {
            return Err(Error::VertexInSet(v));
        }
        let wv = w.union(VertexSet::singleton(v));
        let mut fam: Vec<VertexSet> = self
            .edges
            .iter()
            .filter(|e| e.contains(&v) && e.iter().all(|&u| wv.contains(u)))
            .map(|e| VertexSet::from_iter(e.iter().copied().filter(|&u| u != v)))
            .collect();
        fam.sort_unstable();
        fam.dedup();
        Ok(fam)
    }

    /// Whether `v ∉ B` lies in an edge `e` with `e \ {v} ⊆ B`.
    ///
    /// When `{v}` itself is an edge, `v` is connected to every `B`.
    pub fn is_connected_to(&self, v: usize, b: VertexSet) -> Result<bool> {
        self.check_subset(b)?;
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if b.contains(v) {
            return Err(Error::VertexInSet(v));
        }
        Ok(self
            .edges
            .iter()
            .any(|e| e.contains(&v) && e.iter().all(|&u| u == v || b.contains(u))))
    }

    /// h(A,B), m(A,B), f(A,B) for nested subsets B ⊆ A.
    pub fn pair_stats(&self, a: VertexSet, b: VertexSet) -> Result<PairStats> {
        self.check_subset(a)?;
        if !b.is_subset_of(a) {
            return Err(Error::NotASubset(format!("B = {:?} of A = {:?}", b, a)));
        }
        let profile = self.subset_profile(a)?;
        let mut connected = 0usize;
        let mut non_isolated = 0usize;
        for v in a.difference(b).iter() {
            let active = profile.within_degrees[&v] > 0;
            if active {
                non_isolated += 1;
            }
            if self.is_connected_to(v, b)? {
                connected += 1;
                debug_assert!(active, "a vertex connected to B is non-isolated in A");
            }
        }
        Ok(PairStats {
            a,
            b,
            connected,
            non_isolated,
            stranded: non_isolated - connected,
        })
    }

    // ---- text format ----------------------------------------------------

    /// Serializes to the native text format: header `n r`, one edge per
    /// line as space-separated vertex indices. `extra_header` lines are
    /// emitted first as `#` comments.
    pub fn to_text(&self, extra_header: &[String]) -> String {
        let mut out = String::new();
        for line in extra_header {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{} {}", self.n, self.rank);
        for e in &self.edges {
            let words: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", words.join(" "));
        }
        out
    }

    /// Parses the native text format; `#` lines are comments.
    pub fn from_text(text: &str) -> Result<Hypergraph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n r` header line".into()))?;
        let mut words = header.split_whitespace();
        let n: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad vertex count in header {header:?}")))?;
        let rank: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad rank in header {header:?}")))?;
        if words.next().is_some() {
            return Err(Error::Parse(format!("trailing tokens in header {header:?}")));
        }
        let mut edges = Vec::new();
        for line in lines {
            let edge: std::result::Result<Vec<usize>, _> =
                line.split_whitespace().map(str::parse).collect();
            let edge = edge.map_err(|_| Error::Parse(format!("bad edge line {line:?}")))?;
            edges.push(edge);
        }
        Hypergraph::new(n, rank, edges)
    }

    /// Parses the plain adjacency-list graph format: one `u v` pair per
    /// line, vertex count inferred as max index + 1, rank 2.
    pub fn from_edge_list(text: &str) -> Result<Hypergraph> {
        let mut pairs = Vec::new();
        let mut max_v = 0usize;
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.len() != 2 {
                return Err(Error::Parse(format!("expected `u v`, got {line:?}")));
            }
            let u: usize = words[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex in {line:?}")))?;
            let v: usize = words[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex in {line:?}")))?;
            max_v = max_v.max(u).max(v);
            pairs.push((u, v));
        }
        Hypergraph::graph(max_v + 1, &pairs)
    }

    /// First `# construction: {...}` header payload, if present.
    pub fn construction_header(text: &str) -> Option<String> {
        text.lines()
            .map(str::trim)
            .take_while(|l| l.is_empty() || l.starts_with('#'))
            .find_map(|l| l.strip_prefix("# construction:"))
            .map(|s| s.trim().to_string())
    }
}

/// Statistics of one vertex subset A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetProfile {
    pub subset: VertexSet,
    /// e(A): edges fully inside A.
    pub edges_within: usize,
    /// m(A): vertices of A lying in some edge inside A.
    pub non_isolated: usize,
    /// Degree of each member of A in the sub-hypergraph induced by A.
    pub within_degrees: BTreeMap<usize, usize>,
}

impl SubsetProfile {
    /// Sum of within-subset degrees; equals the sum of |e| over edges
    /// inside A, which is 2 e(A) for graphs.
    pub fn degree_sum(&self) -> usize {
        self.within_degrees.values().sum()
    }
}

/// The h/m/f statistics of a nested pair B ⊆ A.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStats {
    pub a: VertexSet,
    pub b: VertexSet,
    /// h(A,B): vertices of A∖B connected to B.
    pub connected: usize,
    /// m(A,B): vertices of A∖B non-isolated in A.
    pub non_isolated: usize,
    /// f(A,B) = m(A,B) − h(A,B).
    pub stranded: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Hypergraph {
        Hypergraph::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path3() -> Hypergraph {
        Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn cycle5() -> Hypergraph {
        Hypergraph::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(matches!(
            Hypergraph::new(3, 2, vec![vec![0, 1, 2]]),
            Err(Error::RankExceeded { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, vec![vec![]]),
            Err(Error::EmptyEdge(_))
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, vec![vec![0, 7]]),
            Err(Error::VertexOutOfRange { .. })
        ));
        // duplicates collapse
        let h = Hypergraph::new(3, 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn edges_within_examples() {
        assert_eq!(triangle().edges_within(VertexSet::full(3)).unwrap(), 3);
        // path a-b-c on the non-adjacent pair {a, c}
        assert_eq!(
            path3().edges_within(VertexSet::from_iter([0, 2])).unwrap(),
            0
        );
        // 5-cycle on {0, 1, 3}: only the edge 01
        assert_eq!(
            cycle5().edges_within(VertexSet::from_iter([0, 1, 3])).unwrap(),
            1
        );
        assert!(triangle().edges_within(VertexSet::from_iter([5])).is_err());
    }

    #[test]
    fn subset_profile_examples() {
        let p = triangle().subset_profile(VertexSet::full(3)).unwrap();
        assert_eq!((p.edges_within, p.non_isolated), (3, 3));
        assert_eq!(p.degree_sum(), 2 * p.edges_within);

        // single edge {a,b} plus isolated c
        let h = Hypergraph::graph(3, &[(0, 1)]).unwrap();
        let p = h.subset_profile(VertexSet::full(3)).unwrap();
        assert_eq!((p.edges_within, p.non_isolated), (1, 2));
        assert_eq!(p.within_degrees[&2], 0);

        // rank-3 hypergraph with edges {0,1,2}, {2,3,4}
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let p = h.subset_profile(VertexSet::full(5)).unwrap();
        assert_eq!((p.edges_within, p.non_isolated), (2, 5));
        assert_eq!(p.degree_sum(), 6);
    }

    #[test]
    fn neighborhood_family_examples() {
        // path a-b-c, v = b, W = {a, c}
        let fam = path3()
            .neighborhood_family(1, VertexSet::from_iter([0, 2]))
            .unwrap();
        assert_eq!(
            fam,
            vec![VertexSet::singleton(0), VertexSet::singleton(2)]
        );

        // isolated vertex
        let h = Hypergraph::graph(3, &[(0, 1)]).unwrap();
        assert!(h
            .neighborhood_family(2, VertexSet::from_iter([0, 1]))
            .unwrap()
            .is_empty());

        // rank-3 edge {0,1,2}, v = 0, W = {1,2,3}
        let h = Hypergraph::new(4, 3, vec![vec![0, 1, 2]]).unwrap();
        let fam = h
            .neighborhood_family(0, VertexSet::from_iter([1, 2, 3]))
            .unwrap();
        assert_eq!(fam, vec![VertexSet::from_iter([1, 2])]);

        // v in W rejected
        assert!(path3().neighborhood_family(1, VertexSet::from_iter([1])).is_err());
    }

    #[test]
    fn neighborhood_family_counts_degree() {
        let h = Hypergraph::new(
            6,
            3,
            vec![vec![0, 1], vec![0, 2, 3], vec![0, 4], vec![1, 2], vec![0]],
        )
        .unwrap();
        for v in 0..6 {
            let pool = VertexSet::full(6).difference(VertexSet::singleton(v));
            for w in crate::set::k_subsets_of(pool, 3) {
                let fam = h.neighborhood_family(v, w).unwrap();
                let wv = w.union(VertexSet::singleton(v));
                let deg = h
                    .subset_profile(wv)
                    .unwrap()
                    .within_degrees[&v];
                assert_eq!(fam.len(), deg);
                assert!(fam.iter().all(|x| x.len() < h.rank()));
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        let h = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        assert!(h.is_connected_to(0, VertexSet::singleton(1)).unwrap());

        // singleton edge connects to every B, including the empty set
        let h = Hypergraph::new(2, 2, vec![vec![0]]).unwrap();
        assert!(h.is_connected_to(0, VertexSet::EMPTY).unwrap());
        assert!(h.is_connected_to(0, VertexSet::singleton(1)).unwrap());

        // rank-3 edge {v,x,y} with only x in B
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert!(!h.is_connected_to(0, VertexSet::singleton(1)).unwrap());
        assert!(h
            .is_connected_to(0, VertexSet::from_iter([1, 2]))
            .unwrap());

        assert!(h.is_connected_to(0, VertexSet::singleton(0)).is_err());
    }

    #[test]
    fn pair_stats_examples() {
        // path a-b-c with B = {b}: both a and c connected and non-isolated
        let s = path3()
            .pair_stats(VertexSet::full(3), VertexSet::singleton(1))
            .unwrap();
        assert_eq!((s.connected, s.non_isolated, s.stranded), (2, 2, 0));

        // B = A: empty difference
        let s = path3()
            .pair_stats(VertexSet::full(3), VertexSet::full(3))
            .unwrap();
        assert_eq!((s.connected, s.non_isolated, s.stranded), (0, 0, 0));

        // edge {a,b} + isolated c, B = ∅
        let h = Hypergraph::graph(3, &[(0, 1)]).unwrap();
        let s = h.pair_stats(VertexSet::full(3), VertexSet::EMPTY).unwrap();
        assert_eq!((s.connected, s.non_isolated, s.stranded), (0, 2, 2));

        assert!(path3()
            .pair_stats(VertexSet::from_iter([0, 1]), VertexSet::from_iter([2]))
            .is_err());
    }

    #[test]
    fn pair_stats_dominance() {
        let h = Hypergraph::new(
            6,
            3,
            vec![vec![0, 1], vec![1, 2, 3], vec![4], vec![2, 5]],
        )
        .unwrap();
        let full = VertexSet::full(6);
        for a in crate::set::k_subsets_of(full, 4) {
            let m_a = h.subset_profile(a).unwrap().non_isolated;
            for bsz in 0..=4 {
                for b in crate::set::k_subsets_of(a, bsz) {
                    let s = h.pair_stats(a, b).unwrap();
                    assert!(s.connected <= s.non_isolated);
                    assert!(s.non_isolated <= m_a.min(a.difference(b).len()));
                    assert_eq!(s.stranded, s.non_isolated - s.connected);
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![3, 4], vec![2]]).unwrap();
        let text = h.to_text(&["construction: {\"kind\":\"demo\"}".into()]);
        let parsed = Hypergraph::from_text(&text).unwrap();
        assert_eq!(parsed, h);
        assert_eq!(
            Hypergraph::construction_header(&text).as_deref(),
            Some("{\"kind\":\"demo\"}")
        );

        let g = Hypergraph::from_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(g, path3());
    }
}
