//! Closed-form bound evaluation and exact verification against
//! enumerated counts.
//!
//! Observed quantities are exact integers; bound values are outward
//! interval enclosures. A pass is certified (observed below the lower
//! end at the resolving precision), a fail is certified the same way,
//! and parameters outside a statement's hypotheses produce an explicit
//! inapplicable verdict instead of a hollow pass. Bounds that exceed the
//! total subset count (or probability 1) are flagged vacuous.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enumerate::JointDistribution;
use crate::interval::{
    certified_cmp, inv_e_interval, log2_interval, root_interval, sqrt_interval, RatInterval,
};
use crate::set::{big_to_rational, binomial, n_pow_k_over_k_fact};
use crate::{Error, Hypergraph, Result};

/// Identifier of a checked statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    ThmHyper1e,
    ThmGraphO1,
    ThmHyperO1,
    ThmForest,
    Propo1,
    Propo2,
    Propo3,
    CoroO1,
    LemmaPartnerPleasant,
    LemmaPartnerNice,
    LemmaPhi,
}

impl BoundId {
    pub fn name(self) -> &'static str {
        match self {
            BoundId::ThmHyper1e => "thm_hyper_1e",
            BoundId::ThmGraphO1 => "thm_graph_o1",
            BoundId::ThmHyperO1 => "thm_hyper_o1",
            BoundId::ThmForest => "thm_forest",
            BoundId::Propo1 => "propo1",
            BoundId::Propo2 => "propo2",
            BoundId::Propo3 => "propo3",
            BoundId::CoroO1 => "coro_o1",
            BoundId::LemmaPartnerPleasant => "lemma_B_pleasant",
            BoundId::LemmaPartnerNice => "lemma_B_nice",
            BoundId::LemmaPhi => "lemma_phi",
        }
    }
}

/// A statement instance to check: which bound, at which parameters.
#[derive(Clone, Debug)]
pub struct BoundSpec {
    pub id: BoundId,
    pub r: usize,
    pub k: usize,
    pub ell: usize,
    /// c for propo1/propo2.
    pub c: Option<BigRational>,
    /// c' for the corollary.
    pub cprime: Option<BigRational>,
    /// ε for propo3, the corollary window top and the o(1) theorems.
    pub eps: Option<BigRational>,
    /// Acknowledges an asymptotic "k sufficiently large" hypothesis.
    pub assume_large_k: bool,
}

impl BoundSpec {
    pub fn new(id: BoundId, r: usize, k: usize, ell: usize) -> BoundSpec {
        BoundSpec {
            id,
            r,
            k,
            ell,
            c: None,
            cprime: None,
            eps: None,
            assume_large_k: false,
        }
    }

    pub fn with_c(mut self, c: BigRational) -> Self {
        self.c = Some(c);
        self
    }

    pub fn with_cprime(mut self, c: BigRational) -> Self {
        self.cprime = Some(c);
        self
    }

    pub fn with_eps(mut self, eps: BigRational) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn assuming_large_k(mut self) -> Self {
        self.assume_large_k = true;
        self
    }

    pub fn params_for_report(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        out.insert("r".into(), self.r.to_string());
        out.insert("k".into(), self.k.to_string());
        out.insert("ell".into(), self.ell.to_string());
        if let Some(c) = &self.c {
            out.insert("c".into(), c.to_string());
        }
        if let Some(c) = &self.cprime {
            out.insert("cprime".into(), c.to_string());
        }
        if let Some(e) = &self.eps {
            out.insert("eps".into(), e.to_string());
        }
        if self.assume_large_k {
            out.insert("assume_large_k".into(), "true".into());
        }
        out
    }
}

/// Outcome of one bound check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

/// Result record for one (instance, statement) pair.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub id: BoundId,
    pub params: BTreeMap<String, String>,
    pub observed: Option<BigUint>,
    /// Certified enclosure of the bound value (count form), when applicable.
    pub bound: Option<RatInterval>,
    pub verdict: Verdict,
    /// Bound value at or above the trivial ceiling C(n, k).
    pub vacuous: bool,
    /// Conservative slack: certified lower bound end minus observed.
    pub slack: Option<BigRational>,
    pub note: Option<String>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn inapplicable(spec: &BoundSpec, why: &str) -> BoundReport {
        BoundReport {
            id: spec.id,
            params: spec.params_for_report(),
            observed: None,
            bound: None,
            verdict: Verdict::Inapplicable,
            vacuous: false,
            slack: None,
            note: Some(why.to_string()),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.id.name(),
            "params": self.params,
            "observed": self.observed.as_ref().map(|o| o.to_string()),
            "bound_lo": self.bound.as_ref().map(|b| b.lo.to_string()),
            "bound_hi": self.bound.as_ref().map(|b| b.hi.to_string()),
            "bound_approx": self.bound.as_ref().map(|b| b.to_f64()),
            "verdict": match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Inapplicable => "inapplicable",
            },
            "vacuous": self.vacuous,
            "slack": self.slack.as_ref().map(|s| s.to_string()),
            "note": self.note,
        })
    }

    /// One CSV row: `graph,spec,observed,bound,pass,slack`.
    pub fn csv_row(&self, graph: &str) -> String {
        format!(
            "{graph},{},{},{},{},{}\n",
            self.id.name(),
            self.observed
                .as_ref()
                .map(|o| o.to_string())
                .unwrap_or_default(),
            self.bound.as_ref().map(|b| format!("{:.6e}", b.to_f64())).unwrap_or_default(),
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Inapplicable => "inapplicable",
            },
            self.slack
                .as_ref()
                .map(|s| format!("{:.6e}", crate::interval::rational_to_f64(s)))
                .unwrap_or_default(),
        )
    }
}

fn rat_int(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

// ---- probability-form bound values ------------------------------------------

/// Theorem bound k/(k - rℓ) · 1/e as an enclosure; requires 1 <= ℓ < k/r.
pub fn bound_thm_hyper_1e(r: usize, k: usize, ell: usize, bits: u32) -> Result<RatInterval> {
    if ell < 1 || r * ell >= k {
        return Err(Error::Inapplicable {
            what: "hypergraph 1/e bound".into(),
            requirement: "1 <= ell < k/r".into(),
        });
    }
    let factor = BigRational::new(BigInt::from(k), BigInt::from(k - r * ell));
    Ok(inv_e_interval(bits).scale(&factor))
}

/// Which branch of the sublinear graph bound applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphO1Regime {
    /// ℓ <= k / log^4 k: bound 90 ℓ^{-1/4}.
    SmallEll,
    /// otherwise: bound 90 k^{-1/4} log k.
    LargeEll,
}

/// Sublinear graph bound with its regime; requires 1 <= ℓ <= (1-ε) k/2.
pub fn bound_thm_graph_o1(
    k: usize,
    ell: usize,
    eps: &BigRational,
    bits: u32,
) -> Result<(RatInterval, GraphO1Regime)> {
    if !(eps.is_positive() && eps < &BigRational::one()) {
        return Err(Error::InvalidParameter("eps must lie in (0, 1)".into()));
    }
    let top = (BigRational::one() - eps) * rat_int(k) / rat_int(2);
    if ell < 1 || rat_int(ell) > top {
        return Err(Error::Inapplicable {
            what: "sublinear graph bound".into(),
            requirement: "1 <= ell <= (1 - eps) k / 2".into(),
        });
    }
    // regime test: ell <= k / log2^4(k), i.e. ell * log2^4(k) <= k
    let ell_rat = rat_int(ell);
    let k_rat = rat_int(k);
    let regime = if k == 1 {
        GraphO1Regime::SmallEll
    } else {
        let cmp = certified_cmp(&k_rat, |b| {
            let lg = log2_interval(&rat_int(k), b);
            lg.mul(&lg).mul(&lg.mul(&lg)).scale(&ell_rat)
        })?;
        if cmp == std::cmp::Ordering::Less {
            GraphO1Regime::LargeEll
        } else {
            GraphO1Regime::SmallEll
        }
    };
    let ninety = rat_int(90);
    let value = match regime {
        GraphO1Regime::SmallEll => root_interval(&ell_rat, 4, bits).recip().scale(&ninety),
        GraphO1Regime::LargeEll => root_interval(&k_rat, 4, bits)
            .recip()
            .mul(&log2_interval(&k_rat, bits))
            .scale(&ninety),
    };
    Ok((value, regime))
}

/// Hypergraph o(1) bound 100 ℓ^{-1/(2r)}; requires r >= 3, 1 <= ℓ <= (1-ε)k/r.
pub fn bound_thm_hyper_o1(
    r: usize,
    k: usize,
    ell: usize,
    eps: &BigRational,
    bits: u32,
) -> Result<RatInterval> {
    if r < 3 {
        return Err(Error::Inapplicable {
            what: "hypergraph o(1) bound".into(),
            requirement: "r >= 3".into(),
        });
    }
    let top = (BigRational::one() - eps) * rat_int(k) / rat_int(r);
    if ell < 1 || rat_int(ell) > top {
        return Err(Error::Inapplicable {
            what: "hypergraph o(1) bound".into(),
            requirement: "1 <= ell <= (1 - eps) k / r".into(),
        });
    }
    Ok(root_interval(&rat_int(ell), 2 * r as u32, bits)
        .recip()
        .scale(&rat_int(100)))
}

// ---- Lemma 2.3: the scalar function behind the 1/e constant -----------------

/// x e^{-(k - rℓ) x}; requires k - rℓ > 0.
pub fn phi(x: f64, k: usize, r: usize, ell: usize) -> Result<f64> {
    if r * ell >= k {
        return Err(Error::Inapplicable {
            what: "phi".into(),
            requirement: "k - r*ell > 0".into(),
        });
    }
    if x < 0.0 {
        return Err(Error::InvalidParameter("x must be nonnegative".into()));
    }
    let d = (k - r * ell) as f64;
    Ok(x * (-d * x).exp())
}

/// Maximum of phi over x >= 0: 1/((k - rℓ) e), attained at x = 1/(k - rℓ).
pub fn phi_max(k: usize, r: usize, ell: usize) -> Result<f64> {
    if r * ell >= k {
        return Err(Error::Inapplicable {
            what: "phi_max".into(),
            requirement: "k - r*ell > 0".into(),
        });
    }
    let d = (k - r * ell) as f64;
    Ok(1.0 / (d * std::f64::consts::E))
}

// ---- count-form checks --------------------------------------------------------

/// Builds a certified report comparing an exact observed count against a
/// bound enclosure family; escalates precision until resolved.
fn certify_count_report(
    spec: &BoundSpec,
    observed: BigUint,
    total: &BigUint,
    make: impl Fn(u32) -> RatInterval,
    note: Option<String>,
) -> Result<BoundReport> {
    let obs_rat = big_to_rational(&observed);
    let cmp = certified_cmp(&obs_rat, &make)?;
    let verdict = if cmp == std::cmp::Ordering::Greater {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    let total_rat = big_to_rational(total);
    let vacuous = certified_cmp(&total_rat, &make)? != std::cmp::Ordering::Greater;
    let snapshot = make(256);
    let slack = &snapshot.lo - &obs_rat;
    Ok(BoundReport {
        id: spec.id,
        params: spec.params_for_report(),
        observed: Some(observed),
        bound: Some(snapshot),
        verdict,
        vacuous,
        slack: Some(slack),
        note,
    })
}

/// Count-form check of the 1/e theorem: the number of k-subsets with
/// exactly ℓ edges is at most k/(k-rℓ) · e^{-1} · n^k/k!.
pub fn check_thm_hyper_1e_counts(
    h: &Hypergraph,
    k: usize,
    ell: usize,
    r: usize,
) -> Result<BoundReport> {
    let dist = crate::enumerate::exact_joint_distribution(h, k)?;
    check_thm_hyper_1e_counts_with(&dist, ell, r)
}

/// Same check against a precomputed joint distribution.
pub fn check_thm_hyper_1e_counts_with(
    dist: &JointDistribution,
    ell: usize,
    r: usize,
) -> Result<BoundReport> {
    let spec = BoundSpec::new(BoundId::ThmHyper1e, r, dist.k, ell);
    if ell < 1 || r * ell >= dist.k {
        return Ok(BoundReport::inapplicable(&spec, "requires 1 <= ell < k/r"));
    }
    let observed = dist.count_for_ell(ell);
    let normalizer = n_pow_k_over_k_fact(dist.n, dist.k);
    let factor = BigRational::new(BigInt::from(dist.k), BigInt::from(dist.k - r * ell));
    let total = binomial(dist.n, dist.k);
    certify_count_report(
        &spec,
        observed,
        &total,
        |bits| inv_e_interval(bits).scale(&factor).scale(&normalizer),
        None,
    )
}

/// Largest integer window [m_lo, m_hi] for a spec, by exact comparisons.
///
/// Irrational endpoints (√k/2) are decided by squaring, never by rounding
/// toward a larger window.
fn m_window(spec: &BoundSpec, a_cap: usize) -> Result<Option<(usize, usize)>> {
    let k = spec.k;
    let in_window = |m: usize| -> Result<bool> {
        Ok(match spec.id {
            BoundId::Propo1 => {
                let c = spec.c.as_ref().expect("propo1 requires c");
                // c <= m and m <= sqrt(k)/2, i.e. 4 m^2 <= k
                rat_int(m) >= *c && 4 * m * m <= k
            }
            BoundId::Propo2 => {
                let c = spec.c.as_ref().expect("propo2 requires c");
                rat_int(m) >= *c && rat_int(m) <= c * rat_int(2)
            }
            BoundId::Propo3 => {
                let eps = spec.eps.as_ref().expect("propo3 requires eps");
                let m_rat = rat_int(m);
                m_rat >= eps * rat_int(k) && m_rat <= (BigRational::one() - eps) * rat_int(k)
            }
            BoundId::CoroO1 => {
                let cp = spec.cprime.as_ref().expect("coro requires cprime");
                let eps = spec.eps.as_ref().expect("coro requires eps");
                let m_rat = rat_int(m);
                m_rat >= *cp && m_rat <= (BigRational::one() - eps) * rat_int(k)
            }
            _ => unreachable!("m_window only serves the windowed lemmas"),
        })
    };
    let mut lo = None;
    let mut hi = None;
    for m in 0..=a_cap {
        if in_window(m)? {
            if lo.is_none() {
                lo = Some(m);
            }
            hi = Some(m);
        }
    }
    Ok(lo.map(|l| (l, hi.unwrap())))
}

/// Checks the windowed count lemmas (propo1/propo2/propo3/coro) against a
/// hypergraph, enumerating the joint distribution internally.
pub fn check_count_bound(h: &Hypergraph, spec: &BoundSpec) -> Result<BoundReport> {
    let dist = crate::enumerate::exact_joint_distribution(h, spec.k)?;
    check_count_bound_with(&dist, spec)
}

/// Windowed count lemma check against a precomputed distribution.
pub fn check_count_bound_with(dist: &JointDistribution, spec: &BoundSpec) -> Result<BoundReport> {
    let k = spec.k;
    let r = spec.r;
    if dist.k != k {
        return Err(Error::InvalidParameter(format!(
            "distribution is for k = {}, spec wants k = {k}",
            dist.k
        )));
    }
    // applicability of the real parameters
    let note = match spec.id {
        BoundId::Propo1 => {
            let c = spec
                .c
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("propo1 requires c".into()))?;
            if !c.is_positive() {
                return Ok(BoundReport::inapplicable(spec, "requires c > 0"));
            }
            // c >= sqrt(k)/2 leaves an empty window: trivially true, and
            // kept as a pass with observed 0 rather than inapplicable
            None
        }
        BoundId::Propo2 => {
            let c = spec
                .c
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("propo2 requires c".into()))?;
            let c2 = c * c * rat_int(4);
            if !(c2 >= rat_int(k) && c * rat_int(32 * r) <= rat_int(k)) {
                return Ok(BoundReport::inapplicable(
                    spec,
                    "requires sqrt(k)/2 <= c <= k/(32 r)",
                ));
            }
            None
        }
        BoundId::Propo3 => {
            let eps = spec
                .eps
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("propo3 requires eps".into()))?;
            if !(eps.is_positive() && eps * rat_int(2) < BigRational::one()) {
                return Ok(BoundReport::inapplicable(spec, "requires 0 < eps < 1/2"));
            }
            None
        }
        BoundId::CoroO1 => {
            let cp = spec
                .cprime
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("coro requires cprime".into()))?;
            if !cp.is_positive() {
                return Ok(BoundReport::inapplicable(spec, "requires cprime > 0"));
            }
            if spec.eps.is_none() {
                return Err(Error::InvalidParameter("coro requires eps".into()));
            }
            if !spec.assume_large_k {
                return Ok(BoundReport::inapplicable(
                    spec,
                    "asymptotic hypothesis; pass assume_large_k to acknowledge",
                ));
            }
            Some("k-sufficiently-large hypothesis acknowledged".to_string())
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "{} is not a windowed count lemma",
                other.name()
            )))
        }
    };
    let observed = match m_window(spec, k)? {
        None => BigUint::zero(),
        Some((lo, hi)) => dist.count_in_m_range(spec.ell, &rat_int(lo), &rat_int(hi)),
    };
    let normalizer = n_pow_k_over_k_fact(dist.n, k);
    let total = binomial(dist.n, dist.k);
    let spec2 = spec.clone();
    certify_count_report(
        spec,
        observed,
        &total,
        move |bits| count_lemma_bound(&spec2, bits).scale(&normalizer),
        note,
    )
}

/// The per-lemma coefficient in units of n^k/k!.
fn count_lemma_bound(spec: &BoundSpec, bits: u32) -> RatInterval {
    let k_rat = rat_int(spec.k);
    let r_rat = rat_int(spec.r);
    match spec.id {
        BoundId::Propo1 => {
            let c = spec.c.as_ref().unwrap();
            sqrt_interval(&r_rat, bits)
                .mul(&sqrt_interval(c, bits).recip())
                .scale(&rat_int(32))
        }
        BoundId::Propo2 => sqrt_interval(&r_rat, bits)
            .mul(&root_interval(&k_rat, 4, bits).recip())
            .scale(&rat_int(44)),
        BoundId::Propo3 => {
            let eps = spec.eps.as_ref().unwrap();
            root_interval(&r_rat, 4, bits)
                .mul(&sqrt_interval(eps, bits).recip())
                .mul(&root_interval(&k_rat, 4, bits).recip())
                .scale(&rat_int(8))
        }
        BoundId::CoroO1 => {
            let cp = spec.cprime.as_ref().unwrap();
            let first = sqrt_interval(&r_rat, bits)
                .mul(&sqrt_interval(cp, bits).recip())
                .scale(&rat_int(32));
            let second = sqrt_interval(&r_rat, bits)
                .mul(&root_interval(&k_rat, 4, bits).recip())
                .mul(&log2_interval(&k_rat, bits))
                .scale(&rat_int(23));
            first.add(&second)
        }
        other => unreachable!("no count coefficient for {}", other.name()),
    }
}

/// Forest-count bound: at most 50 ℓ^{-1/2} n^k/k! subsets inducing a
/// forest with exactly ℓ edges; requires 1 <= ℓ <= sqrt(k)/4 and rank 2.
pub fn check_forest_bound(h: &Hypergraph, k: usize, ell: usize) -> Result<BoundReport> {
    let spec = BoundSpec::new(BoundId::ThmForest, 2, k, ell);
    if !h.is_graph() {
        return Ok(BoundReport::inapplicable(&spec, "requires a rank-2 graph"));
    }
    // ℓ <= sqrt(k)/4  <=>  16 ℓ^2 <= k
    if ell < 1 || 16 * ell * ell > k {
        return Ok(BoundReport::inapplicable(
            &spec,
            "requires 1 <= ell <= sqrt(k)/4",
        ));
    }
    let observed = crate::enumerate::count_forest_subsets(h, k, ell)?;
    let normalizer = n_pow_k_over_k_fact(h.vertex_count(), k);
    let total = binomial(h.vertex_count(), k);
    let ell_rat = rat_int(ell);
    certify_count_report(
        &spec,
        observed,
        &total,
        move |bits| {
            sqrt_interval(&ell_rat, bits)
                .recip()
                .scale(&rat_int(50))
                .scale(&normalizer)
        },
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn rat(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    #[test]
    fn thm_hyper_1e_values() {
        // r=2, k=10, ℓ=1: (10/8) e^{-1} ≈ 0.4598493
        let iv = bound_thm_hyper_1e(2, 10, 1, 128).unwrap();
        let v = iv.to_f64();
        assert!((v - 0.45984930).abs() < 1e-7, "got {v}");

        // r=3, k=10, ℓ=3: 10 e^{-1} ≈ 3.6788 (vacuous in probability form)
        let iv = bound_thm_hyper_1e(3, 10, 3, 128).unwrap();
        assert!((iv.to_f64() - 3.6787944).abs() < 1e-6);
        assert!(iv.lo > BigRational::one());

        // limit toward e^{-1} as k grows
        let near = bound_thm_hyper_1e(2, 100_000, 1, 128).unwrap().to_f64();
        assert!((near - 0.36787944).abs() < 1e-4);

        assert!(bound_thm_hyper_1e(3, 9, 3, 64).is_err());
        // monotone increasing in ℓ at fixed k, r
        let mut prev = BigRational::zero();
        for ell in 1..5 {
            let iv = bound_thm_hyper_1e(2, 16, ell, 128).unwrap();
            assert!(iv.lo > prev);
            prev = iv.lo;
        }
    }

    #[test]
    fn thm_graph_o1_values() {
        let eps = rat("1/10");
        // k = 2^16: the regime boundary k/log^4 k is exactly 1, so ℓ=1
        // sits in the small regime with bound exactly 90 (vacuous)
        let (iv, regime) = bound_thm_graph_o1(1 << 16, 1, &eps, 128).unwrap();
        assert_eq!(regime, GraphO1Regime::SmallEll);
        assert_eq!(iv.lo, rat("90"));
        // at the same k, ℓ=2 crosses into the large regime
        let (_, regime) = bound_thm_graph_o1(1 << 16, 2, &eps, 128).unwrap();
        assert_eq!(regime, GraphO1Regime::LargeEll);

        // k = 2^20, ℓ = 2^10: large regime since k/log^4 k = 2^20/20^4 < 2^10
        let (iv, regime) = bound_thm_graph_o1(1 << 20, 1 << 10, &eps, 128).unwrap();
        assert_eq!(regime, GraphO1Regime::LargeEll);
        // 90 · 2^{-5} · 20 = 56.25
        assert!((iv.to_f64() - 56.25).abs() < 1e-9);
        // regime boundary computed exactly: 2^20/20^4 = 6.5536
        assert_eq!(rat_int(1 << 20) / rat_int(20usize.pow(4)), rat("65536/10000"));

        // both branches agree at the crossover: substituting
        // ℓ = k/log^4 k into 90 ℓ^{-1/4} yields 90 k^{-1/4} log k
        let k = 1 << 16;
        let ell_boundary = rat_int(k) / rat_int(16usize.pow(4));
        assert_eq!(ell_boundary, rat("1"));
        let (small_iv, _) = bound_thm_graph_o1(k, 1, &eps, 128).unwrap();
        let large = root_interval(&rat_int(k), 4, 128)
            .recip()
            .mul(&log2_interval(&rat_int(k), 128))
            .scale(&rat_int(90));
        assert_eq!(small_iv.lo, large.lo);
        assert_eq!(small_iv.hi, large.hi);

        // out of range
        assert!(matches!(
            bound_thm_graph_o1(10, 6, &eps, 64),
            Err(Error::Inapplicable { .. })
        ));
    }

    #[test]
    fn thm_hyper_o1_values() {
        let eps = rat("1/10");
        // r=3, ℓ=10^6: 100 · 10^{-1} = 10
        let iv = bound_thm_hyper_o1(3, 10_000_000, 1_000_000, &eps, 128).unwrap();
        assert_eq!(iv.lo, rat("10"));
        assert!(iv.is_exact());

        let iv1 = bound_thm_hyper_o1(3, 100, 1, &eps, 128).unwrap();
        assert_eq!(iv1.lo, rat("100"));

        // decreasing in ℓ
        let mut prev = rat("1000000");
        for ell in [1usize, 2, 5, 17, 60] {
            let iv = bound_thm_hyper_o1(3, 1000, ell, &eps, 128).unwrap();
            assert!(iv.hi < prev);
            prev = iv.hi;
        }

        assert!(bound_thm_hyper_o1(2, 100, 1, &eps, 64).is_err());
    }

    #[test]
    fn phi_behaviour() {
        assert_eq!(phi(0.0, 10, 2, 1).unwrap(), 0.0);
        // k - rℓ = 8 at the maximizer x = 1/8
        let v = phi(0.125, 10, 2, 1).unwrap();
        let vmax = phi_max(10, 2, 1).unwrap();
        assert!((v - vmax).abs() < 1e-15);
        assert!((vmax - 0.0459849).abs() < 1e-6);
        assert!(phi(1.0, 4, 2, 2).is_err());

        // grid sweep stays below the maximum
        for d in 1..=12usize {
            let k = 2 * d + 2;
            let vmax = phi_max(k, 2, 1).unwrap();
            let mut x = 0.0;
            while x <= 10.0 {
                assert!(phi(x, k, 2, 1).unwrap() <= vmax + 1e-12);
                x += 0.01;
            }
        }
    }

    #[test]
    fn count_checks_on_small_graphs() {
        // empty graph: observed 0, pass, vacuous or not it holds
        let empty = Hypergraph::new(6, 2, vec![]).unwrap();
        let spec = BoundSpec::new(BoundId::Propo3, 2, 4, 1).with_eps(rat("3/10"));
        let rep = check_count_bound(&empty, &spec).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.observed.unwrap().is_zero());

        // propo1 empty window: c=1 puts [1, sqrt(3)/2] below 1
        let p3 = Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let spec = BoundSpec::new(BoundId::Propo1, 2, 3, 1).with_c(rat("1"));
        let rep = check_count_bound(&p3, &spec).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.observed.unwrap().is_zero());

        // 1/e count form on P3 with k=2: k/r = 1, no valid ℓ
        let rep = check_thm_hyper_1e_counts(&p3, 2, 1, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Inapplicable);

        // complete graph, ℓ=1 < C(k,2): observed 0
        let mut pairs = vec![];
        for u in 0..6 {
            for v in u + 1..6 {
                pairs.push((u, v));
            }
        }
        let kn = Hypergraph::graph(6, &pairs).unwrap();
        let rep = check_thm_hyper_1e_counts(&kn, 5, 1, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.observed.unwrap().is_zero());
    }

    #[test]
    fn forest_bound_applicability() {
        // k=16, ℓ=1 is the boundary sqrt(16)/4 = 1: applicable
        let g = crate::constructions::star_forest(16, 16, 1).unwrap();
        let rep = check_forest_bound(&g, 16, 1).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.observed, Some(BigUint::one()));

        // k=15: sqrt(15)/4 < 1, inapplicable
        let g2 = Hypergraph::new(15, 2, vec![]).unwrap();
        let rep = check_forest_bound(&g2, 15, 1).unwrap();
        assert_eq!(rep.verdict, Verdict::Inapplicable);
    }

    #[test]
    fn vacuous_flagging() {
        // tiny n makes every count bound exceed C(n,k)
        let p3 = Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let rep = check_thm_hyper_1e_counts(&p3, 3, 1, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.vacuous);
    }
}
