//! Isomorphism canonicalization and exhaustive generation of small
//! non-isomorphic graphs and uniform hypergraphs.
//!
//! Canonical labeling is iterative color refinement followed by a
//! backtracking minimization over the labelings consistent with the
//! refined color classes. At the supported sizes (n <= 8 for graphs,
//! n <= 5 for rank-3 hypergraphs) this needs no external machinery.

use std::collections::HashSet;

use crate::{Error, Hypergraph, Result};

/// Ceiling for generic hypergraph canonicalization.
pub const CANON_MAX_VERTICES: usize = 10;

// ---- generic canonical form -------------------------------------------------

/// Relabels a hypergraph into its canonical form: isomorphic inputs map to
/// the identical output.
pub fn canonical_form(h: &Hypergraph) -> Result<Hypergraph> {
    let n = h.vertex_count();
    if n > CANON_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: CANON_MAX_VERTICES,
        });
    }
    let edges = h.edges();
    let classes = refine_colors(n, edges);
    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    minimize_over_class_perms(&classes, 0, 0, &mut perm, &mut used, &mut |perm| {
        let mut relabeled: Vec<Vec<usize>> = edges
            .iter()
            .map(|e| {
                let mut e2: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
                e2.sort_unstable();
                e2
            })
            .collect();
        relabeled.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        match &best {
            Some(b) if *b <= relabeled => {}
            _ => best = Some(relabeled),
        }
    });
    Hypergraph::new(n, h.rank(), best.unwrap_or_default())
}

/// Refined color classes, ordered canonically; every labeling that sends
/// class i to the i-th position block is a candidate canonical labeling.
fn refine_colors(n: usize, edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut colors: Vec<usize> = vec![0; n];
    // initial color: multiset of incident edge sizes
    let mut keys: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        for &v in e {
            keys[v].push(e.len());
        }
    }
    for k in &mut keys {
        k.sort_unstable();
    }
    assign_ranks(&keys, &mut colors);
    loop {
        // new key: own color plus, per incident edge, the sorted colors of
        // the other members tagged by edge size
        let mut keys: Vec<Vec<usize>> = colors.iter().map(|&c| vec![c]).collect();
        for e in edges {
            for &v in e {
                let mut others: Vec<usize> =
                    e.iter().filter(|&&u| u != v).map(|&u| colors[u]).collect();
                others.sort_unstable();
                keys[v].push(e.len());
                keys[v].extend(others);
                keys[v].push(usize::MAX); // edge separator
            }
        }
        // incident-edge blocks must compare as multisets: sort the blocks
        let canon_keys: Vec<Vec<usize>> = keys
            .iter()
            .zip(colors.iter())
            .map(|(k, &c)| {
                let mut blocks: Vec<Vec<usize>> = Vec::new();
                let mut it = k.iter().skip(1).copied().peekable();
                let mut cur = Vec::new();
                while let Some(x) = it.next() {
                    if x == usize::MAX {
                        blocks.push(std::mem::take(&mut cur));
                    } else {
                        cur.push(x);
                    }
                }
                blocks.sort_unstable();
                let mut flat = vec![c];
                for b in blocks {
                    flat.extend(b);
                    flat.push(usize::MAX);
                }
                flat
            })
            .collect();
        let mut new_colors = vec![0; n];
        assign_ranks(&canon_keys, &mut new_colors);
        if new_colors == colors {
            break;
        }
        colors = new_colors;
    }
    let max_color = colors.iter().copied().max().unwrap_or(0);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); max_color + 1];
    for (v, &c) in colors.iter().enumerate() {
        classes[c].push(v);
    }
    classes.retain(|c| !c.is_empty());
    classes
}

fn assign_ranks(keys: &[Vec<usize>], colors: &mut [usize]) {
    let mut sorted: Vec<&Vec<usize>> = keys.iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    for (v, key) in keys.iter().enumerate() {
        colors[v] = sorted.binary_search(&key).unwrap();
    }
}

/// Backtracks over all labelings that fill position blocks class by class.
fn minimize_over_class_perms<F: FnMut(&[usize])>(
    classes: &[Vec<usize>],
    class_idx: usize,
    next_pos: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut F,
) {
    if class_idx == classes.len() {
        visit(perm);
        return;
    }
    let class = &classes[class_idx];
    fill_class(
        class, 0, classes, class_idx, next_pos, perm, used, visit,
    );
}

#[allow(clippy::too_many_arguments)]
fn fill_class<F: FnMut(&[usize])>(
    class: &[usize],
    offset: usize,
    classes: &[Vec<usize>],
    class_idx: usize,
    next_pos: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut F,
) {
    if offset == class.len() {
        minimize_over_class_perms(classes, class_idx + 1, next_pos + class.len(), perm, used, visit);
        return;
    }
    for &v in class {
        if !used[v] {
            used[v] = true;
            perm[v] = next_pos + offset;
            fill_class(class, offset + 1, classes, class_idx, next_pos, perm, used, visit);
            used[v] = false;
            perm[v] = usize::MAX;
        }
    }
}

// ---- specialized small-graph machinery ---------------------------------------

/// A graph on up to 8 vertices as adjacency bit rows.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct SmallGraph {
    n: usize,
    rows: [u8; 8],
}

impl SmallGraph {
    fn empty(n: usize) -> SmallGraph {
        SmallGraph { n, rows: [0; 8] }
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    fn code(&self) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.rows[i] & (1 << j) != 0 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    fn apply(&self, perm: &[usize]) -> SmallGraph {
        let mut out = SmallGraph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.rows[i] & (1 << j) != 0 {
                    out.set_edge(perm[i], perm[j]);
                }
            }
        }
        out
    }

    fn to_hypergraph(self) -> Hypergraph {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.rows[i] & (1 << j) != 0 {
                    pairs.push((i, j));
                }
            }
        }
        Hypergraph::graph(self.n, &pairs).expect("valid small graph")
    }
}

fn small_graph_classes(g: &SmallGraph) -> Vec<Vec<usize>> {
    let n = g.n;
    let mut colors: Vec<usize> = (0..n).map(|v| g.rows[v].count_ones() as usize).collect();
    normalize_colors(&mut colors);
    loop {
        let keys: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&u| g.rows[v] & (1 << u) != 0)
                    .map(|u| colors[u])
                    .collect();
                nb.sort_unstable();
                let mut key = vec![colors[v]];
                key.extend(nb);
                key
            })
            .collect();
        let mut new_colors = vec![0; n];
        assign_ranks(&keys, &mut new_colors);
        if new_colors == colors {
            break;
        }
        colors = new_colors;
    }
    let max_color = colors.iter().copied().max().unwrap_or(0);
    let mut classes = vec![Vec::new(); max_color + 1];
    for (v, &c) in colors.iter().enumerate() {
        classes[c].push(v);
    }
    classes.retain(|c| !c.is_empty());
    classes
}

fn normalize_colors(colors: &mut [usize]) {
    let mut vals: Vec<usize> = colors.to_vec();
    vals.sort_unstable();
    vals.dedup();
    for c in colors.iter_mut() {
        *c = vals.binary_search(c).unwrap();
    }
}

/// Canonical form of a small graph: the labeling minimizing the edge code
/// among all labelings consistent with the refined color classes.
fn canonical_small_graph(g: &SmallGraph) -> SmallGraph {
    let classes = small_graph_classes(g);
    let mut best: Option<(u64, SmallGraph)> = None;
    let mut perm = vec![usize::MAX; g.n];
    let mut used = vec![false; g.n];
    minimize_over_class_perms(&classes, 0, 0, &mut perm, &mut used, &mut |perm| {
        let cand = g.apply(perm);
        let code = cand.code();
        match &best {
            Some((b, _)) if *b <= code => {}
            _ => best = Some((code, cand)),
        }
    });
    best.expect("at least one labeling").1
}

/// All non-isomorphic graphs on exactly `n` vertices, canonically labeled
/// and sorted by (edge count, edge code). Supported for n <= 8, where the
/// counts are 1, 2, 4, 11, 34, 156, 1044, 12346.
pub fn all_graphs(n: usize) -> Result<Vec<Hypergraph>> {
    if n == 0 || n > 8 {
        return Err(Error::InvalidParameter(format!(
            "graph enumeration supports 1..=8 vertices, got {n}"
        )));
    }
    let mut level: Vec<SmallGraph> = vec![SmallGraph::empty(1)];
    for t in 1..n {
        let mut next: HashSet<SmallGraph> = HashSet::new();
        for g in &level {
            // attach vertex t with every possible neighborhood
            for nb in 0u32..(1 << t) {
                let mut g2 = *g;
                g2.n = t + 1;
                for u in 0..t {
                    if nb & (1 << u) != 0 {
                        g2.set_edge(u, t);
                    }
                }
                next.insert(canonical_small_graph(&g2));
            }
        }
        level = next.into_iter().collect();
    }
    let mut with_codes: Vec<(usize, u64, SmallGraph)> = level
        .into_iter()
        .map(|g| (g.code().count_ones() as usize, g.code(), g))
        .collect();
    with_codes.sort_unstable_by_key(|&(e, c, _)| (e, c));
    Ok(with_codes.into_iter().map(|(_, _, g)| g.to_hypergraph()).collect())
}

/// All non-isomorphic r-uniform hypergraphs on exactly `n` vertices.
///
/// Enumeration is by brute canonicalization of every edge subset, so the
/// ceiling is tight: n <= 5 and r <= n.
pub fn all_uniform_hypergraphs(n: usize, r: usize) -> Result<Vec<Hypergraph>> {
    if n == 0 || n > 5 {
        return Err(Error::InvalidParameter(format!(
            "uniform hypergraph enumeration supports 1..=5 vertices, got {n}"
        )));
    }
    if r < 1 || r > n {
        return Err(Error::InvalidParameter(format!(
            "uniform rank {r} out of range for n = {n}"
        )));
    }
    let all_sets: Vec<Vec<usize>> = crate::set::k_subsets_of(crate::set::VertexSet::full(n), r)
        .into_iter()
        .map(|s| s.to_vec())
        .collect();
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << all_sets.len()) {
        let edges: Vec<Vec<usize>> = all_sets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| e.clone())
            .collect();
        let h = Hypergraph::new(n, r, edges)?;
        let canon = canonical_form(&h)?;
        if seen.insert(canon.edges().to_vec()) {
            out.push(canon);
        }
    }
    out.sort_by(|a, b| {
        a.edge_count()
            .cmp(&b.edge_count())
            .then_with(|| a.edges().cmp(b.edges()))
    });
    Ok(out)
}
