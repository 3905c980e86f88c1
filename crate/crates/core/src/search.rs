//! Extremal search: exhaustive maximization of the exact ℓ-probability
//! over all small graphs (or uniform hypergraphs) up to isomorphism, and
//! seeded stochastic search over single-edge toggles at moderate sizes.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{all_graphs, all_uniform_hypergraphs, canonical_form};
use crate::enumerate::i_value;
use crate::interval::rational_to_f64;
use crate::{Error, Hypergraph, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Exhaustive,
    Local,
    Anneal,
}

/// Outcome of a search run; the witness is in canonical form and its
/// exact probability is the reported value.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub r: usize,
    pub method: SearchMethod,
    pub best_value: BigRational,
    pub witness: Hypergraph,
    /// Non-isomorphic instances visited (exhaustive only).
    pub canonical_count: Option<u64>,
    pub trajectory: Vec<TrajectoryStep>,
    pub seed: Option<u64>,
}

/// One accepted move of a stochastic run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryStep {
    pub iteration: u64,
    pub restart: u32,
    /// Toggled edge, as its sorted vertex list.
    pub edge: Vec<usize>,
    /// Exact value after the move, rendered as "p/q".
    pub value: String,
}

/// Knobs of the stochastic search; all defaults are documented here and
/// serializable from a JSON config file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    /// Proposals per restart.
    pub steps: u64,
    /// Independent seeded restarts.
    pub restarts: u32,
    /// Initial acceptance temperature for worse moves; 0 disables uphill
    /// rejection entirely (pure hill climb).
    pub initial_temperature: f64,
    /// Multiplicative cooling per step.
    pub cooling: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            steps: 400,
            restarts: 4,
            initial_temperature: 0.05,
            cooling: 0.995,
        }
    }
}

/// Exhaustive maximum of the exact ℓ-probability over all graphs
/// (r = 2, n <= 8) or 3-uniform hypergraphs (r = 3, n <= 5) up to
/// isomorphism; deterministic, ties broken toward fewer edges then
/// canonical edge order.
pub fn exhaustive_extremal(n: usize, k: usize, ell: usize, r: usize) -> Result<SearchResult> {
    let catalogue: Vec<Hypergraph> = match r {
        2 => {
            if n > 8 {
                return Err(Error::WorkCeiling {
                    estimate: 2f64.powi((n * (n - 1) / 2) as i32),
                    ceiling: 2f64.powi(28),
                });
            }
            all_graphs(n)?
        }
        3 => {
            if n > 5 {
                return Err(Error::WorkCeiling {
                    estimate: 2f64.powi(crate::set::binomial_f64(n, 3) as i32),
                    ceiling: 2f64.powi(10),
                });
            }
            all_uniform_hypergraphs(n, 3)?
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "exhaustive search supports r = 2 or 3, got {other}"
            )))
        }
    };
    let count = catalogue.len() as u64;
    let best = catalogue
        .into_par_iter()
        .map(|g| -> Result<(BigRational, Hypergraph)> {
            let value = i_value(&g, k, ell)?;
            Ok((value, g))
        })
        .try_reduce_with(|a, b| Ok(pick_better(a, b)))
        .transpose()?
        .ok_or_else(|| Error::InvalidParameter("empty catalogue".into()))?;
    Ok(SearchResult {
        n,
        k,
        ell,
        r,
        method: SearchMethod::Exhaustive,
        best_value: best.0,
        witness: best.1,
        canonical_count: Some(count),
        trajectory: Vec::new(),
        seed: None,
    })
}

/// Deterministic preference: larger value, then fewer edges, then
/// lexicographically smaller edge list.
fn pick_better(
    a: (BigRational, Hypergraph),
    b: (BigRational, Hypergraph),
) -> (BigRational, Hypergraph) {
    use std::cmp::Ordering::*;
    match a.0.cmp(&b.0) {
        Greater => a,
        Less => b,
        Equal => match a.1.edge_count().cmp(&b.1.edge_count()) {
            Less => a,
            Greater => b,
            Equal => {
                if a.1.edges() <= b.1.edges() {
                    a
                } else {
                    b
                }
            }
        },
    }
}

/// Stochastic search over single-edge toggles. Accepts strictly better
/// states (exact rational comparison; ties prefer fewer edges), and with
/// the annealing method also worse states with probability
/// exp(-loss/temperature).
pub fn local_search(
    n: usize,
    k: usize,
    ell: usize,
    r: usize,
    config: &SearchConfig,
    seed: u64,
    method: SearchMethod,
    start: Option<Hypergraph>,
) -> Result<SearchResult> {
    if method == SearchMethod::Exhaustive {
        return exhaustive_extremal(n, k, ell, r);
    }
    if !(2..=3).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "stochastic search supports r = 2 or 3, got {r}"
        )));
    }
    // candidate edges: all r-subsets of the vertex set
    let candidates: Vec<Vec<usize>> =
        crate::set::k_subsets_of(crate::set::VertexSet::full(n), r)
            .into_iter()
            .map(|s| s.to_vec())
            .collect();
    let start_state = match start {
        Some(g) => {
            if g.vertex_count() != n || g.rank() != r {
                return Err(Error::InvalidParameter(
                    "start graph shape differs from search parameters".into(),
                ));
            }
            g
        }
        None => Hypergraph::new(n, r, vec![])?,
    };
    let mut best_overall: Option<(BigRational, Hypergraph)> = None;
    let mut trajectory = Vec::new();
    for restart in 0..config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        let mut current = start_state.clone();
        let mut current_value = i_value(&current, k, ell)?;
        let mut temperature = config.initial_temperature;
        let mut best_local = (current_value.clone(), current.clone());
        for iteration in 0..config.steps {
            let edge = &candidates[rng.gen_range(0..candidates.len())];
            let proposal = toggle_edge(&current, edge)?;
            let value = i_value(&proposal, k, ell)?;
            let accept = match value.cmp(&current_value) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => proposal.edge_count() <= current.edge_count(),
                std::cmp::Ordering::Less => {
                    method == SearchMethod::Anneal && temperature > 0.0 && {
                        let loss = rational_to_f64(&(&current_value - &value));
                        rng.gen::<f64>() < (-loss / temperature).exp()
                    }
                }
            };
            if accept {
                current = proposal;
                current_value = value;
                trajectory.push(TrajectoryStep {
                    iteration,
                    restart,
                    edge: edge.clone(),
                    value: current_value.to_string(),
                });
                let cand = (current_value.clone(), current.clone());
                best_local = pick_better(best_local, cand);
            }
            temperature *= config.cooling;
        }
        best_overall = Some(match best_overall.take() {
            None => best_local,
            Some(prev) => pick_better_canonical(prev, best_local)?,
        });
    }
    let (best_value, witness) = best_overall.expect("at least one restart");
    let witness = canonical_form(&witness).unwrap_or(witness);
    Ok(SearchResult {
        n,
        k,
        ell,
        r,
        method,
        best_value,
        witness,
        canonical_count: None,
        trajectory,
        seed: Some(seed),
    })
}

/// Restart-level preference with canonical-order tie break.
fn pick_better_canonical(
    a: (BigRational, Hypergraph),
    b: (BigRational, Hypergraph),
) -> Result<(BigRational, Hypergraph)> {
    use std::cmp::Ordering::*;
    Ok(match a.0.cmp(&b.0) {
        Greater => a,
        Less => b,
        Equal => match a.1.edge_count().cmp(&b.1.edge_count()) {
            Less => a,
            Greater => b,
            Equal => {
                let ca = canonical_form(&a.1).unwrap_or_else(|_| a.1.clone());
                let cb = canonical_form(&b.1).unwrap_or_else(|_| b.1.clone());
                if ca.edges() <= cb.edges() {
                    a
                } else {
                    b
                }
            }
        },
    })
}

fn toggle_edge(g: &Hypergraph, edge: &[usize]) -> Result<Hypergraph> {
    let mut edges: Vec<Vec<usize>> = g.edges().to_vec();
    let sorted: Vec<usize> = {
        let mut e = edge.to_vec();
        e.sort_unstable();
        e
    };
    if let Some(at) = edges.iter().position(|e| *e == sorted) {
        edges.remove(at);
    } else {
        edges.push(sorted);
    }
    Hypergraph::new(g.vertex_count(), g.rank(), edges)
}

/// Report of the monotonicity sweep over n.
#[derive(Clone, Debug)]
pub struct MonotoneReport {
    pub k: usize,
    pub ell: usize,
    pub r: usize,
    pub values: Vec<(usize, BigRational)>,
    pub nonincreasing: bool,
    /// (n, construction label, construction value) entries that exceeded
    /// the exhaustive maximum; empty when all floors hold.
    pub floor_violations: Vec<(usize, String, BigRational)>,
}

/// Checks that the exhaustive maximum is nonincreasing over an n-range
/// and dominates every applicable construction value at each n.
pub fn verify_monotone_in_n(
    k: usize,
    ell: usize,
    r: usize,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<MonotoneReport> {
    let mut values = Vec::new();
    let mut floor_violations = Vec::new();
    for n in n_range {
        let result = exhaustive_extremal(n, k, ell, r)?;
        for (label, g) in applicable_constructions(n, k, ell, r) {
            let lower = i_value(&g, k, ell)?;
            if lower > result.best_value {
                floor_violations.push((n, label, lower));
            }
        }
        values.push((n, result.best_value));
    }
    let nonincreasing = values.windows(2).all(|w| w[0].1 >= w[1].1);
    Ok(MonotoneReport {
        k,
        ell,
        r,
        values,
        nonincreasing,
        floor_violations,
    })
}

fn applicable_constructions(
    n: usize,
    k: usize,
    ell: usize,
    r: usize,
) -> Vec<(String, Hypergraph)> {
    let mut out = Vec::new();
    if r == 2 {
        if let Ok(g) = crate::constructions::gnp_for_ell_one(n, k, 1) {
            out.push(("gnp_one(seed 1)".to_string(), g));
        }
        if n % k == 0 {
            if let Ok(g) = crate::constructions::bipartite_kminus1(n, k, false) {
                out.push(("bipartite_kminus1".to_string(), g));
            }
            if ell >= 1 && k >= ell + 1 {
                if let Ok(g) = crate::constructions::star_forest(n, k, ell) {
                    out.push(("star_forest".to_string(), g));
                }
            }
        }
        for m in 1..=k {
            if (n * m) % k == 0 {
                if let Ok(g) = crate::constructions::planted_clique(n, k, m, false) {
                    out.push((format!("planted_clique(m={m})"), g));
                }
            }
        }
        if let Ok(g) = crate::constructions::matching_gnp(n, k, ell.max(1), 1) {
            out.push(("matching_gnp(seed 1)".to_string(), g));
        }
    } else if r == 3 {
        for m in r..=k {
            if (n * m) % k == 0 {
                if let Ok(g) = crate::constructions::r_clique(n, k, m, r, false) {
                    out.push((format!("r_clique(m={m})"), g));
                }
            }
        }
    }
    out
}
